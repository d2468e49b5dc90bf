//! Riemann–Roch space `L(λP)` via its monomial basis, evaluation at the
//! points, and the generator matrix.

use serde::Serialize;

use crate::algebra::{Fe, Gf, Poly, ProductForm, Var};
use crate::curve::{AffinePoint, CurveSpec};
use crate::linalg;
use crate::orbits::OrbitDecomposition;
use crate::{Error, Result};

/// `x^beta · y^gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub beta: u64,
    pub gamma: u64,
}

impl Monomial {
    pub fn new(beta: u64, gamma: u64) -> Self {
        Monomial { beta, gamma }
    }

    pub fn pole_order(&self, a: u64, b: u64) -> u64 {
        self.beta * a + self.gamma * b
    }

    pub fn eval(&self, p: AffinePoint, gf: &Gf) -> Fe {
        let xb = pow_u(gf, p.x, self.beta);
        let yg = pow_u(gf, p.y, self.gamma);
        gf.mul(xb, yg)
    }
}

fn pow_u(gf: &Gf, v: Fe, e: u64) -> Fe {
    if e == 0 {
        Fe::ONE
    } else if v.is_zero() {
        Fe::ZERO
    } else {
        gf.pow(v, e as i64).expect("nonzero base")
    }
}

/// Functions that can be evaluated at affine points.
#[derive(Clone, Debug)]
pub enum PointFunction {
    Monomial(Monomial),
    Product(ProductForm),
    /// A polynomial in x or y alone.
    Univariate(Poly),
    Combination(Vec<(Fe, PointFunction)>),
}

impl PointFunction {
    pub fn eval(&self, p: AffinePoint, gf: &Gf) -> Result<Fe> {
        Ok(match self {
            PointFunction::Monomial(m) => m.eval(p, gf),
            PointFunction::Product(f) => f.eval(p.x, p.y, gf)?,
            PointFunction::Univariate(poly) => match poly.var() {
                Var::X => poly.eval(p.x, gf),
                Var::Y => poly.eval(p.y, gf),
                Var::T => {
                    return Err(crate::algebra::AlgebraError::VariableMismatch {
                        expected: "x or y",
                        found: Var::T,
                    }
                    .into())
                }
            },
            PointFunction::Combination(terms) => {
                let mut acc = Fe::ZERO;
                for (c, f) in terms {
                    acc = gf.add(acc, gf.mul(*c, f.eval(p, gf)?));
                }
                acc
            }
        })
    }
}

/// One monomial per element of `⟨a, b⟩` up to λ, sorted by pole order.
/// Exponents lie in the window `gamma < a` when `a < b`, else `beta < b`.
pub fn monomial_basis(spec: &CurveSpec, lambda: u64) -> Vec<Monomial> {
    let (a, b) = (spec.a(), spec.b());
    let mut out = Vec::new();
    if a < b {
        for gamma in 0..a {
            let mut beta = 0;
            while beta * a + gamma * b <= lambda {
                out.push(Monomial::new(beta, gamma));
                beta += 1;
            }
        }
    } else {
        for beta in 0..b {
            let mut gamma = 0;
            while beta * a + gamma * b <= lambda {
                out.push(Monomial::new(beta, gamma));
                gamma += 1;
            }
        }
    }
    out.sort_by_key(|m| m.pole_order(a, b));
    out
}

pub type Codeword = Vec<Fe>;

/// Values at the points in codeword order.
pub fn evaluate_codeword(func: &PointFunction, decomp: &OrbitDecomposition, gf: &Gf) -> Result<Codeword> {
    decomp.points().map(|p| func.eval(p, gf)).collect()
}

/// Evaluation matrix of the monomial basis of `L(λP)`.
#[derive(Clone, Debug, Serialize)]
pub struct GenMatrix {
    pub lambda: u64,
    pub monomials: Vec<Monomial>,
    pub rows: Vec<Vec<Fe>>,
    pub n: usize,
}

impl GenMatrix {
    pub fn k_rows(&self) -> usize {
        self.rows.len()
    }
}

/// Rejects λ ≥ n, where injectivity of evaluation is not guaranteed.
pub fn generator_matrix(spec: &CurveSpec, decomp: &OrbitDecomposition, lambda: u64) -> Result<GenMatrix> {
    let n = decomp.n();
    if lambda >= n as u64 {
        return Err(Error::LambdaTooLarge { lambda, n });
    }
    let gf = spec.field();
    let monomials = monomial_basis(spec, lambda);
    let points: Vec<AffinePoint> = decomp.points().collect();
    let rows = monomials
        .iter()
        .map(|m| points.iter().map(|&p| m.eval(p, gf)).collect())
        .collect();
    Ok(GenMatrix {
        lambda,
        monomials,
        rows,
        n,
    })
}

/// Rank of the generator matrix.
pub fn code_dim(g: &GenMatrix, gf: &Gf) -> usize {
    linalg::rank(gf, &g.rows, g.n)
}
