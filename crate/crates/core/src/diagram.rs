//! Root diagrams: per row, the roots of `t^{|O_i|} − 1` with the roots of
//! `g_i^{(i)}(t)` marked. The number of unmarked (empty) boxes is the code
//! dimension.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{Fe, Gf, Poly, Var};
use crate::curve::{semigroup_dim, CurveSpec};
use crate::linalg::Echelon;
use crate::orbits::{OrbitDecomposition, Rho};
use crate::potmod::GroebnerBasis;
use crate::rrspace::GenMatrix;
use crate::{Error, Result};

/// How a row of a diagram was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowSource {
    /// Roots of the leading polynomial of a reduced Gröbner basis.
    Oracle,
    /// Closed form: no box marked.
    ClosedEmpty,
    /// Closed form: the empty boxes are exactly `E_i`.
    ClosedPartial,
    /// Common zeros of the row-`i` blocks of codewords vanishing on the
    /// earlier orbits.
    RowSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramRow {
    pub long: bool,
    /// Roots of `t^len − 1`, by ascending generator exponent.
    pub boxes: Vec<Fe>,
    pub marked: Vec<bool>,
    pub source: RowSource,
}

impl DiagramRow {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.marked.iter().any(|&m| m)
    }

    pub fn is_full(&self) -> bool {
        self.marked.iter().all(|&m| m)
    }

    pub fn empty_count(&self) -> usize {
        self.marked.iter().filter(|&&m| !m).count()
    }

    pub fn marked_roots(&self) -> Vec<Fe> {
        self.boxes.iter().zip(&self.marked).filter(|(_, &m)| m).map(|(&b, _)| b).collect()
    }

    pub fn empty_roots(&self) -> Vec<Fe> {
        self.boxes.iter().zip(&self.marked).filter(|(_, &m)| !m).map(|(&b, _)| b).collect()
    }

    /// Monic polynomial whose roots are the marked boxes.
    pub fn marked_poly(&self, gf: &Gf) -> Poly {
        Poly::from_roots(&self.marked_roots(), Var::T, gf).expect("boxes are distinct")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDiagram {
    pub rows: Vec<DiagramRow>,
}

#[derive(Serialize)]
struct RowJson {
    row: usize,
    kind: &'static str,
    boxes: usize,
    marked_exponents: Vec<u32>,
    empty: usize,
    source: RowSource,
}

impl RootDiagram {
    pub fn empty_boxes(&self) -> usize {
        empty_boxes(self)
    }

    /// One line per row; `X` marked, `.` empty.
    pub fn render_text(&self) -> String {
        let width = self.rows.len().to_string().len();
        let mut out = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            let cells: Vec<&str> = r.marked.iter().map(|&m| if m { "X" } else { "." }).collect();
            let kind = if r.long { "long" } else { "short" };
            let _ = writeln!(out, "{:>width$} {:<5} {}", i + 1, kind, cells.join(" "));
        }
        out
    }

    /// Marked roots listed by generator exponent.
    pub fn to_json(&self, gf: &Gf) -> serde_json::Value {
        let rows: Vec<RowJson> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| RowJson {
                row: i + 1,
                kind: if r.long { "long" } else { "short" },
                boxes: r.len(),
                marked_exponents: r.marked_roots().iter().map(|&z| gf.log(z).expect("roots are nonzero")).collect(),
                empty: r.empty_count(),
                source: r.source,
            })
            .collect();
        serde_json::json!({ "rows": rows, "empty_boxes": self.empty_boxes() })
    }

    /// Rows whose marks differ, as `(row index 0-based, self marks, other marks)`.
    pub fn diff(&self, other: &RootDiagram) -> Vec<(usize, Vec<bool>, Vec<bool>)> {
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .filter(|(_, (a, b))| a.marked != b.marked)
            .map(|(i, (a, b))| (i, a.marked.clone(), b.marked.clone()))
            .collect()
    }

    /// Marks agree on every long row.
    pub fn long_rows_match(&self, other: &RootDiagram) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).filter(|(a, _)| a.long).all(|(a, b)| a.marked == b.marked)
    }
}

/// Σ over rows of the unmarked boxes.
pub fn empty_boxes(d: &RootDiagram) -> usize {
    d.rows.iter().map(DiagramRow::empty_count).sum()
}

/// The `len`-th roots of unity by ascending generator exponent.
pub fn row_boxes(gf: &Gf, len: usize) -> Result<Vec<Fe>> {
    let order = gf.order() as usize - 1;
    if len == 0 || !order.is_multiple_of(len) {
        return Err(Error::Unsupported(format!("orbit length {len} does not divide q - 1 = {order}")));
    }
    let step = (order / len) as i64;
    Ok((0..len as i64).map(|e| gf.gen_pow(e * step)).collect())
}

/// Marks read off the leading polynomials of a reduced basis.
pub fn diagram_from_gb(decomp: &OrbitDecomposition, gb: &GroebnerBasis, gf: &Gf) -> Result<RootDiagram> {
    let mut rows = Vec::with_capacity(decomp.rows());
    for (i, o) in decomp.orbits().iter().enumerate() {
        let boxes = row_boxes(gf, o.len())?;
        let lead = gb.leading_poly(i);
        let marked: Vec<bool> = boxes.iter().map(|&z| lead.eval(z, gf).is_zero()).collect();
        let count = marked.iter().filter(|&&m| m).count();
        if Some(count) != lead.degree() {
            return Err(Error::MalformedBasis(format!(
                "leading polynomial of row {} has degree {:?} but {count} roots among the boxes",
                i + 1,
                lead.degree()
            )));
        }
        rows.push(DiagramRow {
            long: o.is_long(),
            boxes,
            marked,
            source: RowSource::Oracle,
        });
    }
    Ok(RootDiagram { rows })
}

/// Diagram from the reduced oracle Gröbner basis.
pub fn diagram_oracle(decomp: &OrbitDecomposition, genmat: &GenMatrix, gf: &Gf) -> Result<RootDiagram> {
    let gb = crate::potmod::oracle_gb(decomp, genmat, gf)?;
    diagram_from_gb(decomp, &gb, gf)
}

/// Codewords vanishing on orbits `1..i-1`, for each row `i`, read off a
/// single reduced row echelon form of the generator matrix (codeword order
/// is orbit-major, so a row whose pivot lies in block `i` or later vanishes
/// on every earlier block).
pub struct CodeTails {
    ech: Echelon,
}

impl CodeTails {
    pub fn new(genmat: &GenMatrix, gf: &Gf) -> Self {
        CodeTails {
            ech: Echelon::new(gf, &genmat.rows, genmat.n, None),
        }
    }

    /// Basis of the codewords vanishing on every block before `row`.
    pub fn tail_basis(&self, decomp: &OrbitDecomposition, row: usize) -> Vec<&[Fe]> {
        let start = decomp.offset(row);
        self.ech
            .rows
            .iter()
            .zip(&self.ech.pivots)
            .filter(|(_, &p)| p >= start)
            .map(|(r, _)| r.as_slice())
            .collect()
    }

    /// Boxes where every row-`row` block of [`Self::tail_basis`] vanishes.
    pub fn row_marks(&self, decomp: &OrbitDecomposition, row: usize, gf: &Gf) -> Result<Vec<bool>> {
        let boxes = row_boxes(gf, decomp.orbit(row).len())?;
        let (start, len) = (decomp.offset(row), decomp.orbit(row).len());
        let blocks: Vec<Poly> = self
            .tail_basis(decomp, row)
            .into_iter()
            .map(|c| Poly::new(Var::T, c[start..start + len].to_vec()))
            .collect();
        Ok(boxes.iter().map(|&z| blocks.iter().all(|b| b.eval(z, gf).is_zero())).collect())
    }

    /// A codeword vanishing before `row` whose block `row` equals the
    /// coefficients of `p` (which must have degree below the orbit length).
    pub fn interpolate(&self, decomp: &OrbitDecomposition, row: usize, p: &Poly, gf: &Gf) -> Option<Vec<Fe>> {
        let (start, len) = (decomp.offset(row), decomp.orbit(row).len());
        if p.coeffs().len() > len {
            return None;
        }
        let basis = self.tail_basis(decomp, row);
        let blocks: Vec<Vec<Fe>> = basis.iter().map(|c| c[start..start + len].to_vec()).collect();
        let target: Vec<Fe> = (0..len).map(|j| p.coeff(j)).collect();
        let x = Echelon::new(gf, &blocks, len, None).solve(gf, &target)?;
        let mut out = vec![Fe::ZERO; decomp.n()];
        for (c, row) in x.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(row.iter()) {
                *o = gf.add(*o, gf.mul(*c, v));
            }
        }
        Some(out)
    }
}

/// The closed-form empty set `E_i` for 0-based long row `row`, as box
/// indices, or `None` if the closed form does not apply (candidate-full row).
/// Errors if two exponent pairs land on the same root.
pub fn closed_form_row(
    spec: &CurveSpec,
    rho: &Rho,
    lambda: u64,
    row: usize,
    boxes: &[Fe],
) -> Result<Option<(RowSource, Vec<bool>)>> {
    let (a, b) = (spec.a(), spec.b());
    let shift = row as u64 * rho.rho1 * b;
    if lambda < shift {
        return Ok(None);
    }
    if lambda >= rho.selector_pole_order(a, b) + shift {
        return Ok(Some((RowSource::ClosedEmpty, vec![false; boxes.len()])));
    }
    let gf = spec.field();
    let position: HashMap<Fe, usize> = boxes.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let mut marked = vec![true; boxes.len()];
    let mut origin: HashMap<usize, (u64, u64)> = HashMap::new();
    for beta in 0..b {
        for gamma in 0..rho.rho1 {
            if shift + beta * a + gamma * b > lambda {
                continue;
            }
            let e = beta + spec.t_exp() * gamma;
            let root = gf.pow(spec.alpha(), -((e % spec.nu()?) as i64))?;
            let &idx = position.get(&root).ok_or_else(|| {
                Error::FastDiagram(format!("alpha^-({e}) is not a root of t^{} - 1 (row {})", boxes.len(), row + 1))
            })?;
            if let Some(prev) = origin.insert(idx, (beta, gamma)) {
                return Err(Error::FastDiagram(format!(
                    "row {}: exponent pairs {prev:?} and ({beta}, {gamma}) give the same root",
                    row + 1
                )));
            }
            marked[idx] = false;
        }
    }
    Ok(Some((RowSource::ClosedPartial, marked)))
}

/// Long rows from the closed forms where they apply; other rows from the
/// codeword row space. Fails if the assembled diagram does not have
/// `semigroup_dim(a, b, λ)` empty boxes.
pub fn diagram_fast(
    spec: &CurveSpec,
    decomp: &OrbitDecomposition,
    rho: &Rho,
    lambda: u64,
    genmat: &GenMatrix,
) -> Result<RootDiagram> {
    let gf = spec.field();
    let nu = decomp.nu();
    if nu != rho.rho1 * (rho.rho2 + 1) {
        return Err(Error::FastDiagram(format!(
            "nu = {nu} differs from rho1 (rho2 + 1) = {}",
            rho.rho1 * (rho.rho2 + 1)
        )));
    }
    let mut tails: Option<CodeTails> = None;
    let mut rows = Vec::with_capacity(decomp.rows());
    for (i, o) in decomp.orbits().iter().enumerate() {
        let boxes = row_boxes(gf, o.len())?;
        let closed = if o.is_long() { closed_form_row(spec, rho, lambda, i, &boxes)? } else { None };
        let (source, marked) = match closed {
            Some(c) => c,
            None => {
                let t = tails.get_or_insert_with(|| CodeTails::new(genmat, gf));
                (RowSource::RowSpace, t.row_marks(decomp, i, gf)?)
            }
        };
        rows.push(DiagramRow {
            long: o.is_long(),
            boxes,
            marked,
            source,
        });
    }
    let d = RootDiagram { rows };
    let expected = semigroup_dim(spec.a(), spec.b(), lambda) as usize;
    if d.empty_boxes() != expected {
        return Err(Error::FastDiagram(format!(
            "{} empty boxes, but L(lambda P) has dimension {expected}",
            d.empty_boxes()
        )));
    }
    Ok(d)
}
