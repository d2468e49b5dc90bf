//! σ-orbits of the affine points and the canonical codeword order.
//!
//! Long orbits (both coordinates nonzero) come first, then short ones; each
//! group is sorted by base point, the smallest `(x, y)` code pair in the
//! orbit. Within an orbit `P_{i,j} = σ^j(P_{i,0})`. Codeword position of
//! `P_{i,j}` is `offset(i) + j`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::Fe;
use crate::curve::{AffinePoint, CurveSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Long,
    Short,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    /// 1-based row index.
    pub index: usize,
    pub kind: OrbitKind,
    pub points: Vec<AffinePoint>,
    /// Distinct y values, ascending by code.
    pub ys: Vec<Fe>,
    /// Distinct x values, ascending by code.
    pub xs: Vec<Fe>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn base(&self) -> AffinePoint {
        self.points[0]
    }

    pub fn is_long(&self) -> bool {
        self.kind == OrbitKind::Long
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rho {
    pub rho1: u64,
    pub rho2: u64,
    pub rho3: u64,
}

impl Rho {
    /// Pole order `ρ2·a + ρ3·b` of the single-point selectors.
    pub fn selector_pole_order(&self, a: u64, b: u64) -> u64 {
        self.rho2 * a + self.rho3 * b
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitDecomposition {
    orbits: Vec<Orbit>,
    r: usize,
    s: usize,
    n: usize,
    nu: u64,
    #[serde(skip)]
    offsets: Vec<usize>,
    #[serde(skip)]
    lookup: HashMap<AffinePoint, (usize, usize)>,
}

impl OrbitDecomposition {
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Orbit by 0-based row.
    pub fn orbit(&self, row: usize) -> &Orbit {
        &self.orbits[row]
    }

    pub fn rows(&self) -> usize {
        self.orbits.len()
    }

    /// Number of long orbits.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of short orbits.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ord(α).
    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn offset(&self, row: usize) -> usize {
        self.offsets[row]
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::len).collect()
    }

    /// `(row, j)` with `point = P_{row, j}` (0-based row).
    pub fn locate(&self, point: AffinePoint) -> Option<(usize, usize)> {
        self.lookup.get(&point).copied()
    }

    /// Points in codeword order.
    pub fn points(&self) -> impl Iterator<Item = AffinePoint> + '_ {
        self.orbits.iter().flat_map(|o| o.points.iter().copied())
    }

    /// The σ action on codewords: position `(i, j)` takes the value at
    /// `(i, j + 1)`, i.e. `c ↦ ev(f∘σ)` for `c = ev(f)`.
    pub fn rotate(&self, c: &[Fe]) -> Vec<Fe> {
        let mut out = Vec::with_capacity(c.len());
        for (o, &off) in self.orbits.iter().zip(&self.offsets) {
            let block = &c[off..off + o.len()];
            out.extend_from_slice(&block[1..]);
            out.push(block[0]);
        }
        out
    }
}

/// Partitions `points` (as returned by `enumerate_points`) into σ-orbits.
pub fn decompose(spec: &CurveSpec, points: &[AffinePoint]) -> Result<OrbitDecomposition> {
    let nu = spec.nu()?;
    let index: HashMap<AffinePoint, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen = vec![false; points.len()];
    let mut sorted: Vec<&AffinePoint> = points.iter().collect();
    sorted.sort();
    let (mut long, mut short) = (Vec::new(), Vec::new());
    for &&start in &sorted {
        if seen[index[&start]] {
            continue;
        }
        let mut orbit = vec![start];
        seen[index[&start]] = true;
        let mut p = spec.sigma(start);
        while p != start {
            let Some(&i) = index.get(&p) else {
                return Err(Error::OrbitEscapes { point: p });
            };
            if seen[i] {
                // σ is not injective on this set
                return Err(Error::OrbitEscapes { point: p });
            }
            seen[i] = true;
            orbit.push(p);
            p = spec.sigma(p);
        }
        let kind = if start.x.is_zero() || start.y.is_zero() { OrbitKind::Short } else { OrbitKind::Long };
        let distinct = |f: fn(&AffinePoint) -> Fe| {
            orbit.iter().map(f).collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>()
        };
        let built = Orbit {
            index: 0,
            kind,
            ys: distinct(|p| p.y),
            xs: distinct(|p| p.x),
            points: orbit,
        };
        match kind {
            OrbitKind::Long => long.push(built),
            OrbitKind::Short => short.push(built),
        }
    }
    let (r, s) = (long.len(), short.len());
    let mut orbits = long;
    orbits.extend(short);
    let mut offsets = Vec::with_capacity(orbits.len());
    let mut lookup = HashMap::with_capacity(points.len());
    let mut n = 0;
    for (row, o) in orbits.iter_mut().enumerate() {
        o.index = row + 1;
        if o.is_long() && o.len() as u64 != nu {
            return Err(Error::LongOrbitLength {
                index: o.index,
                len: o.len(),
                nu,
            });
        }
        offsets.push(n);
        n += o.len();
        for (j, &p) in o.points.iter().enumerate() {
            lookup.insert(p, (row, j));
        }
    }
    Ok(OrbitDecomposition {
        orbits,
        r,
        s,
        n,
        nu,
        offsets,
        lookup,
    })
}

/// ρ1 = |Y_i|, ρ2 = ν/ρ1 − 1, ρ3 = ρ1 − 1, checked uniform across long orbits.
pub fn derive_rho(decomp: &OrbitDecomposition, spec: &CurveSpec) -> Result<Rho> {
    let long = &decomp.orbits[..decomp.r];
    let first = long.first().ok_or(Error::NoLongOrbits)?;
    let rho1 = first.ys.len() as u64;
    let ord_alpha_t = spec.field().element_order(spec.alpha_t())?;
    if rho1 != ord_alpha_t {
        return Err(Error::Unsupported(format!(
            "orbit 1 has {rho1} distinct y values but ord(alpha^t) = {ord_alpha_t}"
        )));
    }
    let nu = decomp.nu;
    if !nu.is_multiple_of(rho1) {
        return Err(Error::Unsupported(format!("rho1 = {rho1} does not divide nu = {nu}")));
    }
    let per_y = nu / rho1;
    for o in long {
        if o.ys.len() as u64 != rho1 {
            return Err(Error::Unsupported(format!(
                "orbit {} has {} distinct y values, orbit 1 has {rho1}",
                o.index,
                o.ys.len()
            )));
        }
        if o.xs.len() != o.len() {
            return Err(Error::Unsupported(format!("orbit {} repeats an x value", o.index)));
        }
        for &y in &o.ys {
            let count = o.points.iter().filter(|p| p.y == y).count() as u64;
            if count != per_y {
                return Err(Error::Unsupported(format!(
                    "orbit {} has {count} points with y = {y}, expected {per_y}",
                    o.index
                )));
            }
        }
    }
    Ok(Rho {
        rho1,
        rho2: per_y - 1,
        rho3: rho1 - 1,
    })
}

/// Compares derived ρ with a preset's published triple. The published
/// labels may swap ρ2 and ρ3, so the selector pole order and the multiset
/// `{ρ2, ρ3}` are compared rather than the raw triple.
pub fn matches_preset_rho(spec: &CurveSpec, rho: &Rho) -> Option<bool> {
    let info = spec.preset()?;
    let (p1, p2, p3) = info.rho;
    let mut derived = [rho.rho2, rho.rho3];
    let mut published = [p2, p3];
    derived.sort_unstable();
    published.sort_unstable();
    Some(
        p1 == rho.rho1
            && derived == published
            && rho.selector_pole_order(spec.a(), spec.b()) == info.selector_pole_order,
    )
}
