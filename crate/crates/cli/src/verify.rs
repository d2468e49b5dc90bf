//! End-to-end checks on one curve and one λ.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use agcode_core::algebra::{Fe, Poly, Var};
use agcode_core::curve::{semigroup_dim, CurveSpec};
use agcode_core::diagram::{diagram_fast, diagram_from_gb};
use agcode_core::encoder::{encode, encode_genmatrix, extract_message, info_positions, systematic_genmatrix};
use agcode_core::interp_gb::fast_gb;
use agcode_core::linalg::Echelon;
use agcode_core::orbits::{decompose, derive_rho, matches_preset_rho};
use agcode_core::potmod::{codeword_to_module, contains, oracle_gb, same_module, ModuleElement};
use agcode_core::rrspace::{code_dim, generator_matrix};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub curve: String,
    pub lambda: u64,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name,
            pass,
            detail: detail.into(),
        });
        pass
    }
}

/// Runs the pipeline in order and stops at the first check that leaves
/// nothing to build on.
pub fn verify(spec: &CurveSpec, source: &str, lambda: u64, seed: u64, trials: usize) -> VerifyReport {
    let mut rec = Recorder { checks: Vec::new() };
    run_checks(spec, lambda, seed, trials, &mut rec);
    VerifyReport {
        curve: source.to_string(),
        lambda,
        seed,
        checks: rec.checks,
    }
}

fn run_checks(spec: &CurveSpec, lambda: u64, seed: u64, trials: usize, rec: &mut Recorder) {
    let gf = spec.field();
    let report = spec.validate();
    let errors: Vec<String> = report.errors().map(|d| format!("[{}] {d}", d.code())).collect();
    if !rec.record("validate", errors.is_empty(), if errors.is_empty() { "curve valid".into() } else { errors.join("; ") }) {
        return;
    }

    let points = spec.enumerate_points();
    let expected = spec.preset().map(|p| p.point_count);
    let pts_ok = expected.is_none_or(|e| e == points.len() as u64);
    rec.record(
        "points",
        pts_ok,
        match expected {
            Some(e) => format!("{} affine points (preset expects {e})", points.len()),
            None => format!("{} affine points", points.len()),
        },
    );

    let decomp = match decompose(spec, &points) {
        Ok(d) => d,
        Err(e) => {
            rec.record("orbits", false, e.to_string());
            return;
        }
    };
    let rho = if decomp.r() > 0 {
        match derive_rho(&decomp, spec) {
            Ok(r) => Some(r),
            Err(e) => {
                rec.record("orbits", false, e.to_string());
                return;
            }
        }
    } else {
        None
    };
    let preset_rho = rho.as_ref().and_then(|r| matches_preset_rho(spec, r));
    rec.record(
        "orbits",
        preset_rho != Some(false) && decomp.n() == points.len(),
        format!(
            "r={} s={} n={} lengths={:?} rho={}",
            decomp.r(),
            decomp.s(),
            decomp.n(),
            decomp.lengths(),
            rho.map_or("-".into(), |r| format!("({}, {}, {})", r.rho1, r.rho2, r.rho3))
        ),
    );

    let g = match generator_matrix(spec, &decomp, lambda) {
        Ok(g) => g,
        Err(e) => {
            rec.record("genmat rank", false, e.to_string());
            return;
        }
    };
    let k = code_dim(&g, gf);
    let sg = semigroup_dim(spec.a(), spec.b(), lambda) as usize;
    if !rec.record("genmat rank", k == sg && k == g.rows.len(), format!("rank {k}, semigroup count {sg}")) {
        return;
    }

    let oracle = match oracle_gb(&decomp, &g, gf) {
        Ok(gb) => gb,
        Err(e) => {
            rec.record("oracle gb", false, e.to_string());
            return;
        }
    };
    let mut gb_ok = true;
    for i in 0..decomp.rows() {
        let q = Poly::cyclic_modulus(gf, Var::T, decomp.orbit(i).len());
        gb_ok &= q.rem(oracle.leading_poly(i), gf).map(|r| r.is_zero()).unwrap_or(false);
        gb_ok &= contains(&oracle, &ModuleElement::unit(decomp.rows(), i, q), gf).unwrap_or(false);
    }
    for row in &g.rows {
        gb_ok &= codeword_to_module(row, &decomp).and_then(|m| contains(&oracle, &m, gf)).unwrap_or(false);
    }
    rec.record("oracle gb", gb_ok, format!("leading degrees {:?}", oracle.leading_degrees()));

    let oracle_diag = match diagram_from_gb(&decomp, &oracle, gf) {
        Ok(d) => d,
        Err(e) => {
            rec.record("diagram fast vs oracle", false, e.to_string());
            return;
        }
    };
    let fast_diag = match rho.as_ref() {
        Some(r) => diagram_fast(spec, &decomp, r, lambda, &g),
        None => Err(agcode_core::Error::NoLongOrbits),
    };
    let fast_diag = match fast_diag {
        Ok(d) => d,
        Err(e) => {
            rec.record("diagram fast vs oracle", false, e.to_string());
            return;
        }
    };
    let diff = fast_diag.diff(&oracle_diag);
    rec.record(
        "diagram fast vs oracle",
        diff.is_empty(),
        if diff.is_empty() {
            "all rows agree".to_string()
        } else {
            format!("rows {:?} differ", diff.iter().map(|d| d.0 + 1).collect::<Vec<_>>())
        },
    );

    match fast_gb(spec, &decomp, rho.as_ref(), &fast_diag, &g) {
        Ok(fast) => {
            let same = same_module(&fast, &oracle, gf).unwrap_or(false);
            let lt = fast.leading_degrees() == oracle.leading_degrees();
            rec.record(
                "fast gb vs oracle",
                same && lt,
                format!("same module: {same}, leading degrees equal: {lt}"),
            );
        }
        Err(e) => {
            rec.record("fast gb vs oracle", false, e.to_string());
        }
    }

    let empty = oracle_diag.empty_boxes();
    rec.record("empty boxes = k", empty == k, format!("{empty} empty boxes, k = {k}"));

    let pos = info_positions(&oracle, &decomp);
    let sys = match systematic_genmatrix(&g, &pos, &decomp, gf) {
        Ok(s) => s,
        Err(e) => {
            rec.record("systematic encoding", false, e.to_string());
            return;
        }
    };
    let row_space = Echelon::new(gf, &g.rows, g.n, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = gf.order();
    let mut enc_ok = true;
    let mut first_bad = None;
    for t in 0..trials {
        let w: Vec<Fe> = (0..pos.k()).map(|_| Fe(rng.gen_range(0..q))).collect();
        let c = match encode(&w, &oracle, &pos, &decomp, gf) {
            Ok(c) => c,
            Err(_) => {
                enc_ok = false;
                first_bad.get_or_insert(t);
                break;
            }
        };
        let good = extract_message(&c, &pos, &decomp).map(|m| m == w).unwrap_or(false)
            && row_space.contains(gf, &c)
            && row_space.contains(gf, &decomp.rotate(&c))
            && encode_genmatrix(&w, &sys, gf).map(|c2| c2 == c).unwrap_or(false);
        if !good {
            enc_ok = false;
            first_bad.get_or_insert(t);
        }
    }
    rec.record(
        "systematic encoding",
        enc_ok,
        match first_bad {
            None => format!("{trials} random messages round-trip, are codewords, and match the generator-matrix encoder"),
            Some(t) => format!("trial {t} failed"),
        },
    );
}
