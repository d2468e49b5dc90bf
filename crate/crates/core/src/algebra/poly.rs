//! Univariate polynomials over a [`Gf`], plus unexpanded products of linear
//! factors in `x` and `y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Fe, Gf};
use super::AlgebraError;

/// Name of the indeterminate a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    T,
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`, and the
/// vector never ends in a zero (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(var: Var, coeffs: Vec<Fe>) -> Poly {
        let mut p = Poly { var, coeffs };
        p.trim();
        p
    }

    pub fn zero(var: Var) -> Poly {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Poly {
        Poly::constant(var, Fe::ONE)
    }

    pub fn constant(var: Var, c: Fe) -> Poly {
        Poly::new(var, vec![c])
    }

    /// c·var^d
    pub fn monomial(var: Var, c: Fe, d: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(var, coeffs)
    }

    /// var^len − 1
    pub fn cyclic_modulus(gf: &Gf, var: Var, len: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; len + 1];
        coeffs[len] = Fe::ONE;
        coeffs[0] = gf.add(coeffs[0], gf.neg(Fe::ONE));
        Poly::new(var, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// Coefficient of var^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Fe::ONE
    }

    pub fn add(&self, other: &Poly, gf: &Gf) -> Poly {
        debug_assert_eq!(self.var, other.var);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| gf.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(self.var, coeffs)
    }

    pub fn sub(&self, other: &Poly, gf: &Gf) -> Poly {
        debug_assert_eq!(self.var, other.var);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| gf.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(self.var, coeffs)
    }

    pub fn neg(&self, gf: &Gf) -> Poly {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|&c| gf.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: Fe, gf: &Gf) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|&a| gf.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, gf: &Gf) -> Poly {
        debug_assert_eq!(self.var, other.var);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.var);
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = gf.add(out[i + j], gf.mul(a, b));
            }
        }
        Poly::new(self.var, out)
    }

    /// self − c·var^shift·other, in place.
    pub fn sub_scaled_shifted(&mut self, other: &Poly, c: Fe, shift: usize, gf: &Gf) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Fe::ZERO);
        }
        let neg_c = gf.neg(c);
        for (j, &b) in other.coeffs.iter().enumerate() {
            let k = j + shift;
            self.coeffs[k] = gf.add(self.coeffs[k], gf.mul(neg_c, b));
        }
        self.trim();
    }

    /// Euclidean division: `self = quot·divisor + rem`, `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly, gf: &Gf) -> Result<(Poly, Poly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::ZeroDivisor)?;
        let lead_inv = gf.inv(divisor.leading_coeff())?;
        let mut rem = self.clone();
        let mut quot = vec![Fe::ZERO; self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = gf.mul(rem.leading_coeff(), lead_inv);
            quot[dr - dd] = c;
            rem.sub_scaled_shifted(divisor, c, dr - dd, gf);
        }
        Ok((Poly::new(self.var, quot), rem))
    }

    pub fn rem(&self, divisor: &Poly, gf: &Gf) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(divisor, gf)?.1)
    }

    /// Reduction modulo var^len − 1 by folding exponents mod `len`.
    pub fn reduce_cyclic(&self, len: usize, gf: &Gf) -> Poly {
        if self.coeffs.len() <= len {
            return self.clone();
        }
        let mut out = vec![Fe::ZERO; len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % len] = gf.add(out[i % len], c);
        }
        Poly::new(self.var, out)
    }

    /// Monic scalar multiple; zero stays zero.
    pub fn monic(&self, gf: &Gf) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = gf.inv(self.leading_coeff()).expect("nonzero leading coefficient");
        self.scale(inv, gf)
    }

    /// Horner evaluation.
    pub fn eval(&self, v: Fe, gf: &Gf) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| gf.add(gf.mul(acc, v), c))
    }

    /// Monic polynomial with exactly the given (pairwise distinct) roots.
    pub fn from_roots(roots: &[Fe], var: Var, gf: &Gf) -> Result<Poly, AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for &r in roots {
            if !seen.insert(r) {
                return Err(AlgebraError::RepeatedRoot(r));
            }
        }
        let mut coeffs = vec![Fe::ONE];
        for &r in roots {
            // multiply by (var − r)
            let neg_r = gf.neg(r);
            let mut next = vec![Fe::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = gf.add(next[i + 1], c);
                next[i] = gf.add(next[i], gf.mul(c, neg_r));
            }
            coeffs = next;
        }
        Ok(Poly::new(var, coeffs))
    }

    /// Every root in the field, by exhaustive scan, in integer-code order.
    pub fn roots_in_field(&self, gf: &Gf) -> Result<Vec<Fe>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(gf.elements().filter(|&v| self.eval(v, gf).is_zero()).collect())
    }

    /// Integer codes of the coefficients, ascending in degree.
    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn from_codes(var: Var, codes: &[u32], gf: &Gf) -> Result<Poly, AlgebraError> {
        let coeffs = codes.iter().map(|&c| gf.element(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(var, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(f, "[{}]", c.0)?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, _) => write!(f, "[{}]{}", c.0, self.var)?,
                (_, 1) => write!(f, "{}^{}", self.var, i)?,
                _ => write!(f, "[{}]{}^{}", c.0, self.var, i)?,
            }
        }
        Ok(())
    }
}

/// `scalar · Π (var_k − root_k)` with each factor in `x` or `y`, kept
/// unexpanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    pub scalar: Fe,
    pub factors: Vec<(Var, Fe)>,
}

impl ProductForm {
    pub fn new(scalar: Fe, factors: Vec<(Var, Fe)>) -> ProductForm {
        ProductForm { scalar, factors }
    }

    pub fn degree_in(&self, var: Var) -> usize {
        self.factors.iter().filter(|(v, _)| *v == var).count()
    }

    /// Value at the point (x, y).
    pub fn eval(&self, x: Fe, y: Fe, gf: &Gf) -> Result<Fe, AlgebraError> {
        let mut acc = self.scalar;
        for &(var, root) in &self.factors {
            let v = match var {
                Var::X => x,
                Var::Y => y,
                Var::T => return Err(AlgebraError::VariableMismatch { expected: "x or y", found: var }),
            };
            acc = gf.mul(acc, gf.sub(v, root));
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Gf {
        Gf::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn eval_and_cyclic() {
        let f = Gf::new(3, 2, None).unwrap();
        let p = Poly::cyclic_modulus(&f, Var::T, 3);
        assert_eq!(p.eval(Fe::ONE, &f), Fe::ZERO);
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn eval_linear_gf4() {
        let f = gf4();
        let w = f.generator();
        let w2 = f.mul(w, w);
        // (y − w) at y = w^2 is 1
        let p = Poly::new(Var::Y, vec![f.neg(w), Fe::ONE]);
        assert_eq!(p.eval(w2, &f), Fe::ONE);
    }

    #[test]
    fn product_form_gf4() {
        let f = gf4();
        let w = f.generator();
        let w2 = f.mul(w, w);
        let pf = ProductForm::new(Fe::ONE, vec![(Var::X, Fe::ONE), (Var::X, w)]);
        // (w^2 − 1)(w^2 − w) = w·1 = w
        let direct = f.mul(f.sub(w2, Fe::ONE), f.sub(w2, w));
        assert_eq!(direct, w);
        assert_eq!(pf.eval(w2, Fe::ZERO, &f).unwrap(), w);
        assert_eq!(pf.degree_in(Var::X), 2);
        assert_eq!(pf.degree_in(Var::Y), 0);
        let bad = ProductForm::new(Fe::ONE, vec![(Var::T, Fe::ONE)]);
        assert!(matches!(bad.eval(w, w, &f), Err(AlgebraError::VariableMismatch { .. })));
    }

    #[test]
    fn from_roots_cases() {
        let f = gf4();
        assert_eq!(Poly::from_roots(&[], Var::T, &f).unwrap(), Poly::one(Var::T));
        let all: Vec<Fe> = (1..4).map(Fe).collect();
        assert_eq!(Poly::from_roots(&all, Var::T, &f).unwrap(), Poly::cyclic_modulus(&f, Var::T, 3));
        let g9 = Gf::new(3, 2, None).unwrap();
        let p = Poly::from_roots(&[Fe::ONE], Var::T, &g9).unwrap();
        assert_eq!(p.coeffs(), &[g9.neg(Fe::ONE), Fe::ONE]);
        assert_eq!(
            Poly::from_roots(&[Fe::ONE, Fe::ONE], Var::T, &f),
            Err(AlgebraError::RepeatedRoot(Fe::ONE))
        );
    }

    #[test]
    fn roots_cases() {
        let f = gf4();
        let w = f.generator();
        let w2 = f.mul(w, w);
        let p = Poly::new(Var::T, vec![Fe::ONE, Fe::ONE, Fe::ONE]);
        let mut r = p.roots_in_field(&f).unwrap();
        r.sort();
        let mut expect = vec![w, w2];
        expect.sort();
        assert_eq!(r, expect);
        let lin = Poly::new(Var::T, vec![Fe::ONE, Fe::ONE]);
        assert_eq!(lin.roots_in_field(&f).unwrap(), vec![Fe::ONE]);
        assert_eq!(Poly::zero(Var::T).roots_in_field(&f), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn roots_of_unity() {
        let f = Gf::new(3, 2, None).unwrap();
        let p = Poly::cyclic_modulus(&f, Var::T, 4);
        let r = p.roots_in_field(&f).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert_eq!(f.pow(z, 4).unwrap(), Fe::ONE);
        }
    }

    #[test]
    fn div_rem_recombines() {
        let f = Gf::new(5, 2, None).unwrap();
        let a = Poly::new(Var::T, (1..9).map(Fe).collect());
        let b = Poly::new(Var::T, vec![Fe(3), Fe(0), Fe(7)]);
        let (q, r) = a.div_rem(&b, &f).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert_eq!(a.div_rem(&Poly::zero(Var::T), &f), Err(AlgebraError::ZeroDivisor));
    }

    #[test]
    fn cyclic_reduction_folds() {
        let f = gf4();
        let t3 = Poly::monomial(Var::T, Fe::ONE, 3);
        assert_eq!(t3.reduce_cyclic(3, &f), Poly::one(Var::T));
    }
}
