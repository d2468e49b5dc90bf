//! Dense Gaussian elimination over a [`Gf`].

use crate::algebra::{Fe, Gf};

/// Row-reduced basis of a row space, remembering how each reduced row was
/// assembled from the input rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows; row `i` has a 1 in column `pivots[i]` and zeros in every
    /// other pivot column.
    pub rows: Vec<Vec<Fe>>,
    pub pivots: Vec<usize>,
    /// `combos[i]` expresses `rows[i]` in terms of the input rows.
    pub combos: Vec<Vec<Fe>>,
    width: usize,
}

impl Echelon {
    /// Reduces `input` visiting columns in `col_order` (all columns, ascending,
    /// when `None`).
    pub fn new(gf: &Gf, input: &[Vec<Fe>], width: usize, col_order: Option<&[usize]>) -> Echelon {
        let natural: Vec<usize>;
        let order = match col_order {
            Some(o) => o,
            None => {
                natural = (0..width).collect();
                &natural
            }
        };
        let k = input.len();
        let mut rows: Vec<Vec<Fe>> = input.to_vec();
        let mut combos: Vec<Vec<Fe>> = (0..k)
            .map(|i| {
                let mut e = vec![Fe::ZERO; k];
                e[i] = Fe::ONE;
                e
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for &col in order {
            if next == k {
                break;
            }
            let Some(found) = (next..k).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, found);
            combos.swap(next, found);
            let inv = gf.inv(rows[next][col]).expect("pivot is nonzero");
            scale_row(gf, &mut rows[next], inv);
            scale_row(gf, &mut combos[next], inv);
            for r in 0..k {
                if r == next {
                    continue;
                }
                let c = rows[r][col];
                if c.is_zero() {
                    continue;
                }
                let (src, dst) = pick(&mut rows, next, r);
                axpy(gf, dst, src, c);
                let (src, dst) = pick(&mut combos, next, r);
                axpy(gf, dst, src, c);
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        combos.truncate(next);
        Echelon {
            rows,
            pivots,
            combos,
            width,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// coefficients (over the reduced rows) that were subtracted.
    pub fn reduce(&self, gf: &Gf, v: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let mut res = v.to_vec();
        let mut coeffs = vec![Fe::ZERO; self.rows.len()];
        for (i, (&col, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            let c = res[col];
            if c.is_zero() {
                continue;
            }
            coeffs[i] = c;
            axpy(gf, &mut res, row, c);
        }
        (res, coeffs)
    }

    pub fn contains(&self, gf: &Gf, v: &[Fe]) -> bool {
        self.reduce(gf, v).0.iter().all(|c| c.is_zero())
    }

    /// Coefficients `x` over the original input rows with `x · input = v`.
    pub fn solve(&self, gf: &Gf, v: &[Fe]) -> Option<Vec<Fe>> {
        let (res, coeffs) = self.reduce(gf, v);
        if res.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let k = self.combos.first().map_or(0, Vec::len);
        let mut x = vec![Fe::ZERO; k];
        for (c, combo) in coeffs.iter().zip(&self.combos) {
            if c.is_zero() {
                continue;
            }
            for (xi, &w) in x.iter_mut().zip(combo) {
                *xi = gf.add(*xi, gf.mul(*c, w));
            }
        }
        Some(x)
    }
}

fn scale_row(gf: &Gf, row: &mut [Fe], c: Fe) {
    for v in row {
        *v = gf.mul(*v, c);
    }
}

/// dst −= c·src
pub(crate) fn axpy(gf: &Gf, dst: &mut [Fe], src: &[Fe], c: Fe) {
    let neg = gf.neg(c);
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = gf.add(*d, gf.mul(neg, s));
        }
    }
}

fn pick(rows: &mut [Vec<Fe>], src: usize, dst: usize) -> (&[Fe], &mut [Fe]) {
    if src < dst {
        let (a, b) = rows.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

pub fn rank(gf: &Gf, rows: &[Vec<Fe>], width: usize) -> usize {
    Echelon::new(gf, rows, width, None).rank()
}

/// w · M for a row vector w.
pub fn vec_mat(gf: &Gf, w: &[Fe], m: &[Vec<Fe>], width: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; width];
    for (&c, row) in w.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(row) {
            *o = gf.add(*o, gf.mul(c, v));
        }
    }
    out
}
