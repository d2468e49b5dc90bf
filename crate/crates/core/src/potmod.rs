//! Submodules of `F_q[t]^{r+s}` under the POT order.
//!
//! A codeword `c` maps to `(h_1, …, h_{r+s})` with `h_i = Σ_j c_{i,j} t^j`.
//! `C̄` is the preimage of the code, so it contains every
//! `q_i = (t^{|O_i|} − 1) e_i`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Fe, Gf, Poly, Var};
use crate::orbits::OrbitDecomposition;
use crate::rrspace::GenMatrix;
use crate::{Error, Result};

/// `t^deg · e_{row+1}`. Ordered by POT: lower row index is larger, then
/// higher degree is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModMonomial {
    /// 0-based row.
    pub row: usize,
    pub deg: usize,
}

impl ModMonomial {
    pub fn new(row: usize, deg: usize) -> Self {
        ModMonomial { row, deg }
    }
}

impl Ord for ModMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.row.cmp(&self.row).then(self.deg.cmp(&other.deg))
    }
}

impl PartialOrd for ModMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.deg {
            0 => write!(f, "e{}", self.row + 1),
            1 => write!(f, "t e{}", self.row + 1),
            d => write!(f, "t^{d} e{}", self.row + 1),
        }
    }
}

/// A tuple of polynomials in t.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    rows: Vec<Poly>,
}

impl ModuleElement {
    pub fn new(rows: Vec<Poly>) -> Self {
        ModuleElement { rows }
    }

    pub fn zero(nrows: usize) -> Self {
        ModuleElement {
            rows: vec![Poly::zero(Var::T); nrows],
        }
    }

    /// `p · e_row`.
    pub fn unit(nrows: usize, row: usize, p: Poly) -> Self {
        let mut e = Self::zero(nrows);
        e.rows[row] = p;
        e
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Poly {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Poly::is_zero)
    }

    /// Smallest row index with a nonzero entry.
    pub fn leading_position(&self) -> Option<usize> {
        self.rows.iter().position(|p| !p.is_zero())
    }

    pub fn leading_monomial(&self) -> Option<ModMonomial> {
        let row = self.leading_position()?;
        Some(ModMonomial::new(row, self.rows[row].degree().unwrap_or(0)))
    }

    /// Coefficient of `t^m.deg e_m.row`.
    pub fn coeff(&self, m: ModMonomial) -> Fe {
        self.rows[m.row].coeff(m.deg)
    }

    pub fn add(&self, other: &Self, gf: &Gf) -> Self {
        Self::new(self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b, gf)).collect())
    }

    pub fn sub(&self, other: &Self, gf: &Gf) -> Self {
        Self::new(self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b, gf)).collect())
    }

    pub fn scale(&self, c: Fe, gf: &Gf) -> Self {
        Self::new(self.rows.iter().map(|p| p.scale(c, gf)).collect())
    }

    pub fn mul_poly(&self, p: &Poly, gf: &Gf) -> Self {
        Self::new(self.rows.iter().map(|r| r.mul(p, gf)).collect())
    }

    /// self −= c·t^shift·other, touching rows from `from` on.
    fn sub_scaled_shifted_from(&mut self, other: &Self, c: Fe, shift: usize, from: usize, gf: &Gf) {
        for (mine, theirs) in self.rows[from..].iter_mut().zip(&other.rows[from..]) {
            mine.sub_scaled_shifted(theirs, c, shift, gf);
        }
    }

    /// Row `i` reduced modulo `t^{lengths[i]} − 1`.
    pub fn canonical(&self, lengths: &[usize], gf: &Gf) -> Self {
        Self::new(self.rows.iter().zip(lengths).map(|(p, &l)| p.reduce_cyclic(l, gf)).collect())
    }

    fn canonicalize_from(&mut self, from: usize, lengths: &[usize], gf: &Gf) {
        for (p, &l) in self.rows[from..].iter_mut().zip(&lengths[from..]) {
            if p.coeffs().len() > l {
                *p = p.reduce_cyclic(l, gf);
            }
        }
    }

    pub fn codes(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(Poly::codes).collect()
    }

    pub fn from_codes(rows: &[Vec<u32>], gf: &Gf) -> Result<Self> {
        Ok(Self::new(
            rows.iter()
                .map(|r| Poly::from_codes(Var::T, r, gf))
                .collect::<std::result::Result<_, _>>()?,
        ))
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `h_i(t) = Σ_j c[offset_i + j] t^j`.
pub fn codeword_to_module(c: &[Fe], decomp: &OrbitDecomposition) -> Result<ModuleElement> {
    if c.len() != decomp.n() {
        return Err(Error::LengthMismatch {
            expected: decomp.n(),
            found: c.len(),
        });
    }
    Ok(ModuleElement::new(
        decomp
            .orbits()
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let off = decomp.offset(i);
                Poly::new(Var::T, c[off..off + o.len()].to_vec())
            })
            .collect(),
    ))
}

/// Left inverse of [`codeword_to_module`], folding exponents with `t^{|O_i|} = 1`.
pub fn module_to_codeword(m: &ModuleElement, decomp: &OrbitDecomposition, gf: &Gf) -> Vec<Fe> {
    let mut out = Vec::with_capacity(decomp.n());
    for (p, o) in m.rows().iter().zip(decomp.orbits()) {
        let len = o.len();
        let reduced = p.reduce_cyclic(len, gf);
        out.extend((0..len).map(|j| reduced.coeff(j)));
    }
    out
}

/// How a basis element was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Triangularisation of generators.
    Oracle,
    /// Closed-form interpolation on a long orbit.
    Fast,
    /// Linear interpolation over the code for a short orbit.
    Interpolated,
    /// The kernel generator `(t^{|O_i|} − 1) e_i` of a full row.
    Kernel,
}

/// Triangular POT Gröbner basis: element `i` is zero on rows before `i` and
/// nonzero on row `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<ModuleElement>,
    reduced: bool,
    provenance: Vec<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct GbJson {
    reduced: bool,
    elements: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    provenance: Vec<Provenance>,
}

impl GroebnerBasis {
    pub fn new(elements: Vec<ModuleElement>, reduced: bool, provenance: Vec<Provenance>) -> Result<Self> {
        let n = elements.len();
        if provenance.len() != n {
            return Err(Error::MalformedBasis(format!("{} provenance tags for {n} elements", provenance.len())));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.nrows() != n {
                return Err(Error::MalformedBasis(format!("element {} has {} rows, expected {n}", i + 1, e.nrows())));
            }
            if e.leading_position() != Some(i) {
                return Err(Error::MalformedBasis(format!("element {} does not lead in row {}", i + 1, i + 1)));
            }
        }
        Ok(GroebnerBasis {
            elements,
            reduced,
            provenance,
        })
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ModuleElement {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// `g_i^{(i)}(t)`.
    pub fn leading_poly(&self, i: usize) -> &Poly {
        self.elements[i].row(i)
    }

    /// `d_i = deg g_i^{(i)}` per row.
    pub fn leading_degrees(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.leading_poly(i).degree().unwrap_or(0)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GbJson {
            reduced: self.reduced,
            elements: self.elements.iter().map(ModuleElement::codes).collect(),
            provenance: self.provenance.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value, gf: &Gf) -> Result<Self> {
        let raw: GbJson = serde_json::from_value(v.clone()).map_err(|e| Error::MalformedBasis(e.to_string()))?;
        let elements = raw
            .elements
            .iter()
            .map(|e| ModuleElement::from_codes(e, gf))
            .collect::<Result<Vec<_>>>()?;
        let provenance = if raw.provenance.is_empty() {
            vec![Provenance::Oracle; elements.len()]
        } else {
            raw.provenance
        };
        Self::new(elements, raw.reduced, provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: ModuleElement,
}

/// Division by a triangular basis, rows in POT order. The remainder's row
/// `i` has degree below `d_i`.
pub fn divide(f: &ModuleElement, g: &GroebnerBasis, gf: &Gf) -> Result<Division> {
    if f.nrows() != g.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            found: f.nrows(),
        });
    }
    let mut rem = f.clone();
    let mut quotients = Vec::with_capacity(g.len());
    for (i, gi) in g.elements.iter().enumerate() {
        let lead = gi.row(i);
        let d = lead.degree().ok_or_else(|| Error::MalformedBasis(format!("element {} has zero leading row", i + 1)))?;
        let inv = gf.inv(lead.leading_coeff())?;
        let mut quot = vec![Fe::ZERO; rem.rows[i].coeffs().len().saturating_sub(d)];
        while let Some(deg) = rem.rows[i].degree() {
            if deg < d {
                break;
            }
            let c = gf.mul(rem.rows[i].leading_coeff(), inv);
            quot[deg - d] = c;
            rem.sub_scaled_shifted_from(gi, c, deg - d, i, gf);
        }
        quotients.push(Poly::new(Var::T, quot));
    }
    Ok(Division {
        quotients,
        remainder: rem,
    })
}

/// Σ a_i g^(i) + R, for replaying a division.
pub fn recombine(d: &Division, g: &GroebnerBasis, gf: &Gf) -> ModuleElement {
    d.quotients
        .iter()
        .zip(g.elements())
        .fold(d.remainder.clone(), |acc, (a, gi)| acc.add(&gi.mul_poly(a, gf), gf))
}

pub fn contains(g: &GroebnerBasis, f: &ModuleElement, gf: &Gf) -> Result<bool> {
    Ok(divide(f, g, gf)?.remainder.is_zero())
}

/// Each basis reduces to zero against the other. Sound as an equality test
/// when at least one side is known to be a Gröbner basis of its module.
pub fn same_module(g1: &GroebnerBasis, g2: &GroebnerBasis, gf: &Gf) -> Result<bool> {
    for e in g1.elements() {
        if !contains(g2, e, gf)? {
            return Ok(false);
        }
    }
    for e in g2.elements() {
        if !contains(g1, e, gf)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pivot_key(e: &ModuleElement, row: usize) -> (usize, Vec<Vec<u32>>) {
    (e.row(row).degree().unwrap_or(usize::MAX), e.codes())
}

/// Reduced POT Gröbner basis of `C̄`, by Hermite-style elimination over
/// `F_q[t]` of the generator-matrix images together with the kernel
/// generators. Independent of the diagram and interpolation machinery.
pub fn oracle_gb(decomp: &OrbitDecomposition, genmat: &GenMatrix, gf: &Gf) -> Result<GroebnerBasis> {
    let lengths = decomp.lengths();
    let nrows = lengths.len();
    let mut work = genmat
        .rows
        .iter()
        .map(|c| codeword_to_module(c, decomp))
        .collect::<Result<Vec<_>>>()?;
    let mut basis: Vec<ModuleElement> = Vec::with_capacity(nrows);

    for i in 0..nrows {
        let (mut here, rest): (Vec<_>, Vec<_>) =
            work.into_iter().filter(|e| !e.is_zero()).partition(|e| e.leading_position() == Some(i));
        work = rest;
        here.push(ModuleElement::unit(nrows, i, Poly::cyclic_modulus(gf, Var::T, lengths[i])));
        loop {
            here.sort_by_cached_key(|e| pivot_key(e, i));
            let pivot = here[0].clone();
            let pd = pivot.row(i).degree().expect("row is nonzero");
            let inv = gf.inv(pivot.row(i).leading_coeff())?;
            let mut survivors = vec![pivot.clone()];
            for mut e in here.drain(1..) {
                while let Some(deg) = e.rows[i].degree() {
                    if deg < pd {
                        break;
                    }
                    let c = gf.mul(e.rows[i].leading_coeff(), inv);
                    e.sub_scaled_shifted_from(&pivot, c, deg - pd, i, gf);
                }
                e.canonicalize_from(i + 1, &lengths, gf);
                if !e.rows[i].is_zero() {
                    survivors.push(e);
                } else if !e.is_zero() {
                    work.push(e);
                }
            }
            here = survivors;
            if here.len() == 1 {
                break;
            }
        }
        let mut pivot = here.pop().expect("pivot");
        pivot.canonicalize_from(i + 1, &lengths, gf);
        basis.push(pivot);
    }

    interreduce(&mut basis, gf)?;
    GroebnerBasis::new(basis, true, vec![Provenance::Oracle; nrows])
}

/// Makes every leading polynomial monic and every entry right of the
/// diagonal reduced against the corresponding leading polynomial.
fn interreduce(basis: &mut [ModuleElement], gf: &Gf) -> Result<()> {
    let nrows = basis.len();
    for i in (0..nrows).rev() {
        let inv = gf.inv(basis[i].row(i).leading_coeff())?;
        basis[i] = basis[i].scale(inv, gf);
        for j in i + 1..nrows {
            let (head, tail) = basis.split_at_mut(j);
            let gj = &tail[0];
            let d = gj.row(j).degree().expect("nonzero leading row");
            let e = &mut head[i];
            while let Some(deg) = e.rows[j].degree() {
                if deg < d {
                    break;
                }
                let c = e.rows[j].leading_coeff();
                e.sub_scaled_shifted_from(gj, c, deg - d, j, gf);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Preset;
    use crate::orbits::decompose;
    use crate::rrspace::generator_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hermitian2(lambda: u64) -> (Gf, OrbitDecomposition, GenMatrix) {
        let spec = Preset::XQ2r { q: 2, r: 1 }.build().unwrap();
        let d = decompose(&spec, &spec.enumerate_points()).unwrap();
        let g = generator_matrix(&spec, &d, lambda).unwrap();
        (spec.field().clone(), d, g)
    }

    #[test]
    fn pot_order() {
        assert!(ModMonomial::new(0, 0) > ModMonomial::new(1, 5));
        assert!(ModMonomial::new(1, 3) > ModMonomial::new(1, 2));
        let mut v = vec![ModMonomial::new(1, 2), ModMonomial::new(0, 1), ModMonomial::new(0, 2)];
        v.sort_by(|a, b| b.cmp(a));
        assert_eq!(v, vec![ModMonomial::new(0, 2), ModMonomial::new(0, 1), ModMonomial::new(1, 2)]);
        assert_eq!(ModMonomial::new(1, 2).to_string(), "t^2 e2");
    }

    #[test]
    fn codeword_module_maps() {
        let (gf, d, _) = hermitian2(4);
        let ones = vec![Fe::ONE; 8];
        let m = codeword_to_module(&ones, &d).unwrap();
        let one_t = Poly::new(Var::T, vec![Fe::ONE; 3]);
        assert_eq!(m.rows(), &[one_t.clone(), one_t, Poly::one(Var::T), Poly::one(Var::T)]);
        assert!(codeword_to_module(&[Fe::ZERO; 8], &d).unwrap().is_zero());
        assert!(codeword_to_module(&[Fe::ZERO; 7], &d).is_err());
        let t3 = ModuleElement::unit(4, 0, Poly::monomial(Var::T, Fe::ONE, 3));
        let e1 = ModuleElement::unit(4, 0, Poly::one(Var::T));
        assert_eq!(module_to_codeword(&t3, &d, &gf), module_to_codeword(&e1, &d, &gf));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let c: Vec<Fe> = (0..8).map(|_| Fe(rng.gen_range(0..4))).collect();
            assert_eq!(module_to_codeword(&codeword_to_module(&c, &d).unwrap(), &d, &gf), c);
        }
    }

    #[test]
    fn oracle_on_hermitian_q2() {
        let (gf, d, g) = hermitian2(4);
        let gb = oracle_gb(&d, &g, &gf).unwrap();
        assert!(gb.is_reduced());
        assert_eq!(gb.leading_degrees(), vec![0, 2, 1, 1]);
        for i in 0..4 {
            let q = Poly::cyclic_modulus(&gf, Var::T, d.orbit(i).len());
            assert!(q.rem(gb.leading_poly(i), &gf).unwrap().is_zero());
            assert!(gb.leading_poly(i).is_monic());
            assert!(contains(&gb, &ModuleElement::unit(4, i, q), &gf).unwrap());
        }
        for row in &g.rows {
            assert!(contains(&gb, &codeword_to_module(row, &d).unwrap(), &gf).unwrap());
        }
        // e4 alone is not a codeword image: k = 4 and the code is not the whole space
        assert!(!contains(&gb, &ModuleElement::unit(4, 3, Poly::one(Var::T)), &gf).unwrap());
    }

    #[test]
    fn repetition_code_has_one_nonstandard_monomial() {
        let (gf, d, g) = hermitian2(0);
        let gb = oracle_gb(&d, &g, &gf).unwrap();
        let lens = d.lengths();
        let empty: usize = gb.leading_degrees().iter().zip(&lens).map(|(dg, l)| l - dg).sum();
        assert_eq!(empty, 1);
    }

    #[test]
    fn division_replays_exactly() {
        let (gf, d, g) = hermitian2(4);
        let gb = oracle_gb(&d, &g, &gf).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let rows = (0..4)
                .map(|_| Poly::new(Var::T, (0..rng.gen_range(0..7)).map(|_| Fe(rng.gen_range(0..4))).collect()))
                .collect();
            let f = ModuleElement::new(rows);
            let div = divide(&f, &gb, &gf).unwrap();
            assert_eq!(recombine(&div, &gb, &gf), f);
            for (i, dg) in gb.leading_degrees().into_iter().enumerate() {
                assert!(div.remainder.row(i).degree().is_none_or(|x| x < dg));
            }
            assert_eq!(divide(&f, &gb, &gf).unwrap(), div);
        }
        let div = divide(gb.element(0), &gb, &gf).unwrap();
        assert!(div.remainder.is_zero());
        assert_eq!(div.quotients[0], Poly::one(Var::T));
    }

    #[test]
    fn json_round_trip() {
        let (gf, d, g) = hermitian2(4);
        let gb = oracle_gb(&d, &g, &gf).unwrap();
        let back = GroebnerBasis::from_json(&gb.to_json(), &gf).unwrap();
        assert_eq!(back, gb);
    }

    #[test]
    fn malformed_basis_rejected() {
        let e = ModuleElement::unit(2, 1, Poly::one(Var::T));
        assert!(GroebnerBasis::new(vec![e.clone(), e], false, vec![Provenance::Oracle; 2]).is_err());
    }
}
