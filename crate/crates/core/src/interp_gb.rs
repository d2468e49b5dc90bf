//! Interpolating functions on long orbits and the fast (non-reduced) POT
//! Gröbner basis built from a root diagram.
//!
//! For long orbit `i`:
//! - `M_i(y) = Π_{y' ∈ Y_i} (y − y')` vanishes on `O_i` and is a nonzero
//!   constant on every other orbit;
//! - `B_{i,j}` vanishes on `O_i \ {P_{i,j}}` and not at `P_{i,j}`;
//! - `f_i = F_i/c_i · Σ_j a_j B_{i,j}/B_{i,j}(P_{i,j})` with
//!   `F_i = M_1 ⋯ M_{i−1}` and `c_i = F_i(O_i)`, where `Σ a_j t^j` is the
//!   monic polynomial of the marked roots of row `i`.

use crate::algebra::{Fe, Gf, Poly, ProductForm, Var};
use crate::curve::{AffinePoint, CurveSpec};
use crate::diagram::{CodeTails, RootDiagram};
use crate::orbits::{OrbitDecomposition, Rho};
use crate::potmod::{codeword_to_module, GroebnerBasis, ModuleElement, Provenance};
use crate::rrspace::GenMatrix;
use crate::{Error, Result};

/// The values of a function on every orbit must be constant there.
fn constant_on(values: impl Iterator<Item = Fe>) -> Option<Fe> {
    let mut it = values;
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

/// `M_i` for 0-based long row `row`, verified against every orbit.
pub fn build_m(decomp: &OrbitDecomposition, row: usize, gf: &Gf) -> Result<Poly> {
    let o = decomp.orbit(row);
    if !o.is_long() {
        return Err(Error::Interpolant(format!("row {} is not a long orbit", row + 1)));
    }
    let m = Poly::from_roots(&o.ys, Var::Y, gf)?;
    for other in decomp.orbits() {
        let vals = other.points.iter().map(|p| m.eval(p.y, gf));
        match constant_on(vals) {
            Some(v) if other.index == o.index && v.is_zero() => {}
            Some(v) if other.index != o.index && !v.is_zero() => {}
            _ => {
                return Err(Error::Interpolant(format!(
                    "M_{} is not {} on orbit {}",
                    o.index,
                    if other.index == o.index { "zero" } else { "a nonzero constant" },
                    other.index
                )))
            }
        }
    }
    Ok(m)
}

/// `B_{i,j}`: y-factors for the other y values of the orbit, x-factors for
/// the other points sharing `y_{i,j}`. Verified on all of `O_i`.
pub fn build_b(decomp: &OrbitDecomposition, row: usize, j: usize, gf: &Gf) -> Result<ProductForm> {
    let o = decomp.orbit(row);
    let p = o.points[j];
    let mut factors: Vec<(Var, Fe)> = o.ys.iter().filter(|&&y| y != p.y).map(|&y| (Var::Y, y)).collect();
    factors.extend(o.points.iter().filter(|q| q.y == p.y && q.x != p.x).map(|q| (Var::X, q.x)));
    let b = ProductForm::new(Fe::ONE, factors);
    for (k, q) in o.points.iter().enumerate() {
        let v = b.eval(q.x, q.y, gf)?;
        if (k == j) == v.is_zero() {
            return Err(Error::Interpolant(format!(
                "B_{},{j} {} at P_{},{k}",
                o.index,
                if k == j { "vanishes" } else { "does not vanish" },
                o.index
            )));
        }
    }
    Ok(b)
}

/// Interpolants for one long orbit.
#[derive(Clone, Debug)]
pub struct LongRowInterpolants {
    pub m: Poly,
    /// `F_i` as the factors `M_1, …, M_{i−1}`.
    pub prefix: Vec<Poly>,
    /// `c_i = F_i(P)` for `P ∈ O_i`.
    pub c: Fe,
    pub b: Vec<ProductForm>,
    /// `B_{i,j}(P_{i,j})`.
    pub b_at: Vec<Fe>,
}

#[derive(Clone, Debug)]
pub struct OrbitInterpolants {
    pub rows: Vec<LongRowInterpolants>,
}

impl OrbitInterpolants {
    pub fn build(decomp: &OrbitDecomposition, rho: &Rho, gf: &Gf) -> Result<OrbitInterpolants> {
        let ms = (0..decomp.r()).map(|i| build_m(decomp, i, gf)).collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::with_capacity(decomp.r());
        for (i, m) in ms.iter().enumerate() {
            if m.degree() != Some(rho.rho1 as usize) {
                return Err(Error::Interpolant(format!("deg M_{} differs from rho1 = {}", i + 1, rho.rho1)));
            }
            let o = decomp.orbit(i);
            let prefix = ms[..i].to_vec();
            let base = o.base();
            let c = prefix.iter().fold(Fe::ONE, |acc, mk| gf.mul(acc, mk.eval(base.y, gf)));
            if c.is_zero() {
                return Err(Error::Interpolant(format!("c_{} is zero", i + 1)));
            }
            let mut b = Vec::with_capacity(o.len());
            let mut b_at = Vec::with_capacity(o.len());
            for j in 0..o.len() {
                let bij = build_b(decomp, i, j, gf)?;
                if bij.degree_in(Var::Y) as u64 != rho.rho3 || bij.degree_in(Var::X) as u64 != rho.rho2 {
                    return Err(Error::Interpolant(format!(
                        "B_{},{j} has {} y- and {} x-factors, expected {} and {}",
                        i + 1,
                        bij.degree_in(Var::Y),
                        bij.degree_in(Var::X),
                        rho.rho3,
                        rho.rho2
                    )));
                }
                let p = o.points[j];
                b_at.push(bij.eval(p.x, p.y, gf)?);
                b.push(bij);
            }
            rows.push(LongRowInterpolants {
                m: m.clone(),
                prefix,
                c,
                b,
                b_at,
            });
        }
        Ok(OrbitInterpolants { rows })
    }
}

/// `f_i` for one non-full long row, kept as precomputed factors.
#[derive(Clone, Debug)]
pub struct RowFunction {
    pub row: usize,
    /// Monic polynomial of the marked roots, `Σ a_j t^j`.
    pub p: Poly,
    prefix: Vec<Poly>,
    inv_c: Fe,
    /// `(a_j / B_{i,j}(P_{i,j}), B_{i,j})` for the nonzero `a_j`.
    terms: Vec<(Fe, ProductForm)>,
}

impl RowFunction {
    pub fn eval(&self, p: AffinePoint, gf: &Gf) -> Result<Fe> {
        let mut f = self.inv_c;
        for m in &self.prefix {
            f = gf.mul(f, m.eval(p.y, gf));
            if f.is_zero() {
                return Ok(Fe::ZERO);
            }
        }
        let mut sum = Fe::ZERO;
        for (coef, b) in &self.terms {
            sum = gf.add(sum, gf.mul(*coef, b.eval(p.x, p.y, gf)?));
        }
        Ok(gf.mul(f, sum))
    }
}

/// Assembles `f_i` from the marked roots of 0-based long row `row`.
pub fn build_f_i(
    decomp: &OrbitDecomposition,
    interp: &OrbitInterpolants,
    row: usize,
    marked_roots: &[Fe],
    gf: &Gf,
) -> Result<RowFunction> {
    let o = decomp.orbit(row);
    if marked_roots.len() >= o.len() {
        return Err(Error::FullRow(row + 1));
    }
    let li = interp
        .rows
        .get(row)
        .ok_or_else(|| Error::Interpolant(format!("row {} has no interpolants", row + 1)))?;
    let p = Poly::from_roots(marked_roots, Var::T, gf)?;
    let mut terms = Vec::new();
    for (j, &a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        terms.push((gf.div(a, li.b_at[j])?, li.b[j].clone()));
    }
    Ok(RowFunction {
        row,
        p,
        prefix: li.prefix.clone(),
        inv_c: gf.inv(li.c)?,
        terms,
    })
}

/// `Evaluate[i, P]`: the value of `f_i` at a point of the decomposition.
pub fn evaluate_proc(f: &RowFunction, point: AffinePoint, decomp: &OrbitDecomposition, gf: &Gf) -> Result<Fe> {
    if decomp.locate(point).is_none() {
        return Err(Error::UnknownPoint(point));
    }
    f.eval(point, gf)
}

/// Non-reduced POT basis from the diagram. Full rows give `(t^{|O_i|} − 1) e_i`; non-full long rows
/// evaluate `f_i` on orbits `i, i+1, …`; non-full short rows interpolate a
/// codeword vanishing on the earlier orbits whose block `i` is the marked
/// polynomial.
pub fn fast_gb(
    spec: &CurveSpec,
    decomp: &OrbitDecomposition,
    rho: Option<&Rho>,
    diagram: &RootDiagram,
    genmat: &GenMatrix,
) -> Result<GroebnerBasis> {
    let gf = spec.field();
    let nrows = decomp.rows();
    if diagram.rows.len() != nrows {
        return Err(Error::LengthMismatch {
            expected: nrows,
            found: diagram.rows.len(),
        });
    }
    let needs_interp = diagram.rows.iter().take(decomp.r()).any(|r| !r.is_full());
    let interp = match (needs_interp, rho) {
        (true, Some(rho)) => Some(OrbitInterpolants::build(decomp, rho, gf)?),
        (true, None) => return Err(Error::NoLongOrbits),
        (false, _) => None,
    };
    let mut tails: Option<CodeTails> = None;
    let mut elements = Vec::with_capacity(nrows);
    let mut provenance = Vec::with_capacity(nrows);
    for (i, drow) in diagram.rows.iter().enumerate() {
        let len = decomp.orbit(i).len();
        if drow.is_full() {
            elements.push(ModuleElement::unit(nrows, i, Poly::cyclic_modulus(gf, Var::T, len)));
            provenance.push(Provenance::Kernel);
            continue;
        }
        let marked = drow.marked_roots();
        let (element, tag) = if decomp.orbit(i).is_long() {
            let f = build_f_i(decomp, interp.as_ref().expect("built above"), i, &marked, gf)?;
            let mut rows = vec![Poly::zero(Var::T); nrows];
            for (k, slot) in rows.iter_mut().enumerate().skip(i) {
                let coeffs = decomp
                    .orbit(k)
                    .points
                    .iter()
                    .map(|&p| evaluate_proc(&f, p, decomp, gf))
                    .collect::<Result<Vec<_>>>()?;
                *slot = Poly::new(Var::T, coeffs);
            }
            let e = ModuleElement::new(rows);
            if e.row(i) != &f.p {
                return Err(Error::Interpolant(format!("row {} of ev(f_{}) is not the marked polynomial", i + 1, i + 1)));
            }
            (e, Provenance::Fast)
        } else {
            let p = drow.marked_poly(gf);
            let t = tails.get_or_insert_with(|| CodeTails::new(genmat, gf));
            let c = t.interpolate(decomp, i, &p, gf).ok_or_else(|| {
                Error::Interpolant(format!("no codeword vanishing before row {} has block {p}", i + 1))
            })?;
            (codeword_to_module(&c, decomp)?, Provenance::Interpolated)
        };
        elements.push(element);
        provenance.push(tag);
    }
    GroebnerBasis::new(elements, false, provenance)
}
