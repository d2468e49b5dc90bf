//! Systematic encoding by division with a POT Gröbner basis, the
//! generator-matrix baseline over the same information positions, and a
//! storage comparison between the two.

use serde::Serialize;

use crate::algebra::{Fe, Gf, Poly, Var};
use crate::linalg::Echelon;
use crate::orbits::OrbitDecomposition;
use crate::potmod::{divide, module_to_codeword, GroebnerBasis, ModMonomial, ModuleElement};
use crate::rrspace::{Codeword, GenMatrix};
use crate::{Error, Result};

/// The nonstandard monomials `t^l e_j`, `d_j ≤ l < |O_j|`, in decreasing
/// POT order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoPositions {
    pub monomials: Vec<ModMonomial>,
}

impl InfoPositions {
    pub fn k(&self) -> usize {
        self.monomials.len()
    }

    /// Codeword coordinates of the positions.
    pub fn columns(&self, decomp: &OrbitDecomposition) -> Vec<usize> {
        self.monomials.iter().map(|m| decomp.offset(m.row) + m.deg).collect()
    }
}

pub fn info_positions(gb: &GroebnerBasis, decomp: &OrbitDecomposition) -> InfoPositions {
    let mut monomials: Vec<ModMonomial> = gb
        .leading_degrees()
        .into_iter()
        .enumerate()
        .flat_map(|(j, d)| (d..decomp.orbit(j).len()).map(move |l| ModMonomial::new(j, l)))
        .collect();
    monomials.sort_by(|a, b| b.cmp(a));
    InfoPositions { monomials }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `f = Σ w_l m_l`, `R` its remainder modulo `G`, codeword of `f − R`.
pub fn encode(
    w: &[Fe],
    gb: &GroebnerBasis,
    positions: &InfoPositions,
    decomp: &OrbitDecomposition,
    gf: &Gf,
) -> Result<Codeword> {
    check_len(positions.k(), w.len())?;
    let lengths = decomp.lengths();
    let mut rows: Vec<Vec<Fe>> = lengths.iter().map(|&l| vec![Fe::ZERO; l]).collect();
    for (&sym, m) in w.iter().zip(&positions.monomials) {
        rows[m.row][m.deg] = sym;
    }
    let f = ModuleElement::new(rows.into_iter().map(|r| Poly::new(Var::T, r)).collect());
    let r = divide(&f, gb, gf)?.remainder;
    let diff = f.sub(&r, gf);
    for (p, &l) in diff.rows().iter().zip(&lengths) {
        assert!(p.coeffs().len() <= l, "f - R is not a canonical representative");
    }
    Ok(module_to_codeword(&diff, decomp, gf))
}

/// Symbols at the information positions. Not a membership test: on a
/// non-codeword this is just a projection.
pub fn extract_message(c: &[Fe], positions: &InfoPositions, decomp: &OrbitDecomposition) -> Result<Vec<Fe>> {
    check_len(decomp.n(), c.len())?;
    Ok(positions.columns(decomp).into_iter().map(|col| c[col]).collect())
}

/// Generator matrix in reduced echelon form over the information columns:
/// `rows[l]` has a 1 at `columns[l]` and 0 at every other information column.
#[derive(Clone, Debug)]
pub struct SystematicGenMatrix {
    pub rows: Vec<Vec<Fe>>,
    pub columns: Vec<usize>,
}

pub fn systematic_genmatrix(
    genmat: &GenMatrix,
    positions: &InfoPositions,
    decomp: &OrbitDecomposition,
    gf: &Gf,
) -> Result<SystematicGenMatrix> {
    let columns = positions.columns(decomp);
    let ech = Echelon::new(gf, &genmat.rows, genmat.n, Some(&columns));
    if ech.rank() != columns.len() || ech.pivots != columns || genmat.rows.len() != columns.len() {
        return Err(Error::SingularInfoColumns);
    }
    Ok(SystematicGenMatrix { rows: ech.rows, columns })
}

/// `Σ w_l rows[l]`.
pub fn encode_genmatrix(w: &[Fe], sys: &SystematicGenMatrix, gf: &Gf) -> Result<Codeword> {
    check_len(sys.rows.len(), w.len())?;
    let n = sys.rows.first().map_or(0, Vec::len);
    Ok(crate::linalg::vec_mat(gf, w, &sys.rows, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StorageReport {
    pub k: usize,
    pub n: usize,
    /// Number of basis elements, `r + s`.
    pub rows: usize,
    /// Σ over basis elements of Σ over nonzero entries of (degree + 1).
    pub gb_coeffs: usize,
    /// `k · n`.
    pub genmat_coeffs: usize,
    /// `k · (n − k)`, the non-identity part of a systematic generator matrix.
    pub systematic_coeffs: usize,
    /// `(r + s) · (n − k)`.
    pub gb_order: usize,
}

impl StorageReport {
    /// With k = 0 there is nothing to compare.
    pub fn comparable(&self) -> bool {
        self.k > 0
    }

    pub fn gb_smaller(&self) -> bool {
        self.gb_coeffs < self.genmat_coeffs
    }
}

pub fn storage_report(gb: &GroebnerBasis, k: usize, n: usize) -> StorageReport {
    let gb_coeffs = gb
        .elements()
        .iter()
        .flat_map(|e| e.rows().iter())
        .filter_map(|p| p.degree().map(|d| d + 1))
        .sum();
    StorageReport {
        k,
        n,
        rows: gb.len(),
        gb_coeffs,
        genmat_coeffs: k * n,
        systematic_coeffs: k * (n - k),
        gb_order: gb.len() * (n - k),
    }
}
