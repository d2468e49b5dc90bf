//! Plane curves `f(y) = g(x)` with a diagonal automorphism
//! `σ(x, y) = (αx, α^t y)`.
//!
//! `a = deg f` and `b = deg g` are taken as the pole orders of `x` and `y` at
//! the point at infinity, whose Weierstrass semigroup is assumed to be
//! `⟨a, b⟩`. Presets cover `y^q + y = x^{q^r+1}` over GF(q^{2r}) and the
//! Hermitian quotient `y^q + y = x^m` over GF(q^2).

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{gcd, is_prime, AlgebraError, Fe, Gf, Poly, Var};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid preset parameters: {0}")]
    InvalidPreset(String),
    #[error("malformed curve config: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("curve failed validation: {0}")]
    Invalid(String),
}

/// An affine rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: Fe,
    pub y: Fe,
}

impl AffinePoint {
    pub fn new(x: Fe, y: Fe) -> Self {
        AffinePoint { x, y }
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Named curve families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `y^q + y = x^{q+1}` over GF(q^2).
    Hermitian { q: u32 },
    /// `y^q + y = x^{q^r+1}` over GF(q^{2r}), r odd.
    XQ2r { q: u32, r: u32 },
    /// `y^q + y = x^m` over GF(q^2), m > 2 dividing q + 1.
    QuotientHermitian { q: u32, m: u32 },
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Preset::Hermitian { q } => write!(f, "hermitian({q})"),
            Preset::XQ2r { q, r } => write!(f, "x_q2r({q},{r})"),
            Preset::QuotientHermitian { q, m } => write!(f, "quotient_hermitian({q},{m})"),
        }
    }
}

/// The preset curves with q ≤ 5. `quotient_hermitian(q, q+1)` is the same
/// curve as `x_q2r(q, 1)`; one such case is kept to exercise the quotient
/// constructor.
pub const SMALL_PRESETS: &[Preset] = &[
    Preset::XQ2r { q: 2, r: 1 },
    Preset::XQ2r { q: 3, r: 1 },
    Preset::XQ2r { q: 4, r: 1 },
    Preset::XQ2r { q: 5, r: 1 },
    Preset::XQ2r { q: 2, r: 3 },
    Preset::QuotientHermitian { q: 5, m: 3 },
    Preset::QuotientHermitian { q: 3, m: 4 },
];

impl Preset {
    /// Parses `name(args)` or `name:args`, e.g. `x_q2r(2,1)`, `hermitian:3`.
    pub fn parse(s: &str) -> Result<Preset, CurveError> {
        let s = s.trim();
        let (name, args) = match s.find(['(', ':']) {
            Some(i) => (&s[..i], s[i + 1..].trim_end_matches(')')),
            None => (s, ""),
        };
        let nums = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CurveError::InvalidPreset(format!("{s}: {e}")))?;
        Self::from_parts(name, &nums)
    }

    fn from_parts(name: &str, nums: &[u32]) -> Result<Preset, CurveError> {
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(CurveError::InvalidPreset(format!("{name} takes {n} parameter(s), got {}", nums.len())))
            }
        };
        match name {
            "hermitian" => {
                arity(1)?;
                Ok(Preset::Hermitian { q: nums[0] })
            }
            "x_q2r" => {
                arity(2)?;
                Ok(Preset::XQ2r { q: nums[0], r: nums[1] })
            }
            "quotient_hermitian" | "quotient" => {
                arity(2)?;
                Ok(Preset::QuotientHermitian { q: nums[0], m: nums[1] })
            }
            other => Err(CurveError::UnknownPreset(other.to_string())),
        }
    }

    /// Builds the curve.
    pub fn build(self) -> Result<CurveSpec, CurveError> {
        match self {
            Preset::Hermitian { q } => {
                let mut spec = Preset::XQ2r { q, r: 1 }.build()?;
                if let Some(info) = spec.preset.as_mut() {
                    info.preset = self;
                }
                Ok(spec)
            }
            Preset::XQ2r { q, r } => build_x_q2r(self, q, r),
            Preset::QuotientHermitian { q, m } => build_quotient(self, q, m),
        }
    }
}

/// Published invariants attached to a preset, used only as cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetInfo {
    pub preset: Preset,
    pub point_count: u64,
    pub genus: u64,
    pub sigma_order: u64,
    /// (ρ1, ρ2, ρ3) as published for the family.
    pub rho: (u64, u64, u64),
    /// Pole order ρ2·a + ρ3·b of the single-point selectors.
    pub selector_pole_order: u64,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p as u64)).then_some((p, e))
}

/// `y^q + y` as a polynomial in y.
fn artin_schreier(q: u32) -> Poly {
    let mut coeffs = vec![Fe::ZERO; q as usize + 1];
    coeffs[1] = Fe::ONE;
    coeffs[q as usize] = Fe::ONE;
    Poly::new(Var::Y, coeffs)
}

fn build_x_q2r(preset: Preset, q: u32, r: u32) -> Result<CurveSpec, CurveError> {
    let (p, e) = prime_power(q).ok_or_else(|| CurveError::InvalidPreset(format!("q = {q} is not a prime power")))?;
    if r == 0 || r.is_multiple_of(2) {
        return Err(CurveError::InvalidPreset(format!("r = {r} must be odd")));
    }
    let field = Arc::new(Gf::new(p, 2 * r * e, None)?);
    let qr = (q as u64).pow(r);
    let b = qr + 1;
    let nu = b * (q as u64 - 1);
    let order = field.order() as u64 - 1;
    let alpha = field.gen_pow((order / nu) as i64);
    let g = Poly::monomial(Var::X, Fe::ONE, b as usize);
    let q64 = q as u64;
    let info = PresetInfo {
        preset,
        point_count: qr * qr * q64,
        genus: qr * (q64 - 1) / 2,
        sigma_order: nu,
        rho: (q64 - 1, qr, q64 - 2),
        selector_pole_order: q64 * qr + (q64 - 2) * (qr + 1),
    };
    let mut spec = CurveSpec::new(field, artin_schreier(q), g, alpha, b)?;
    spec.preset = Some(info);
    Ok(spec)
}

fn build_quotient(preset: Preset, q: u32, m: u32) -> Result<CurveSpec, CurveError> {
    let (p, e) = prime_power(q).ok_or_else(|| CurveError::InvalidPreset(format!("q = {q} is not a prime power")))?;
    if m <= 2 || !(q + 1).is_multiple_of(m) {
        return Err(CurveError::InvalidPreset(format!("m = {m} must exceed 2 and divide q + 1 = {}", q + 1)));
    }
    let field = Arc::new(Gf::new(p, 2 * e, None)?);
    let k = (q + 1) / m;
    // σ(x) = g^k x, σ(y) = g^{q+1} y = (g^k)^m y
    let alpha = field.gen_pow(k as i64);
    let g = Poly::monomial(Var::X, Fe::ONE, m as usize);
    let (q64, m64) = (q as u64, m as u64);
    let info = PresetInfo {
        preset,
        point_count: q64 * (1 + m64 * (q64 - 1)),
        genus: (q64 - 1) * (m64 - 1) / 2,
        sigma_order: m64 * (q64 - 1),
        rho: (q64 - 1, q64 - 2, m64 - 1),
        selector_pole_order: (q64 - 2) * m64 + (m64 - 1) * q64,
    };
    let mut spec = CurveSpec::new(field, artin_schreier(q), g, alpha, m as u64)?;
    spec.preset = Some(info);
    Ok(spec)
}

/// The curve `f(y) = g(x)` together with `σ(x, y) = (αx, α^t y)`.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    field: Arc<Gf>,
    f: Poly,
    g: Poly,
    a: u64,
    b: u64,
    alpha: Fe,
    alpha_t: Fe,
    t_exp: u64,
    preset: Option<PresetInfo>,
}

impl CurveSpec {
    /// `f` must be a polynomial in y and `g` one in x, both nonconstant.
    pub fn new(field: Arc<Gf>, f: Poly, g: Poly, alpha: Fe, t_exp: u64) -> Result<CurveSpec, CurveError> {
        if f.var() != Var::Y || g.var() != Var::X {
            return Err(CurveError::Config("f must be in y and g in x".into()));
        }
        let a = f.degree().filter(|&d| d > 0).ok_or_else(|| CurveError::Config("f must be nonconstant".into()))?;
        let b = g.degree().filter(|&d| d > 0).ok_or_else(|| CurveError::Config("g must be nonconstant".into()))?;
        field.element(alpha.0)?;
        let alpha_t = field.pow(alpha, t_exp as i64)?;
        Ok(CurveSpec {
            field,
            f,
            g,
            a: a as u64,
            b: b as u64,
            alpha,
            alpha_t,
            t_exp,
            preset: None,
        })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Gf> {
        Arc::clone(&self.field)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// Pole order of x.
    pub fn a(&self) -> u64 {
        self.a
    }

    /// Pole order of y.
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn alpha(&self) -> Fe {
        self.alpha
    }

    /// α^t, the multiplier σ applies to y.
    pub fn alpha_t(&self) -> Fe {
        self.alpha_t
    }

    pub fn t_exp(&self) -> u64 {
        self.t_exp
    }

    pub fn preset(&self) -> Option<&PresetInfo> {
        self.preset.as_ref()
    }

    /// ν = ord(α); zero α has no order.
    pub fn nu(&self) -> Result<u64, AlgebraError> {
        self.field.element_order(self.alpha)
    }

    /// Genus as the number of gaps of ⟨a, b⟩, when gcd(a, b) = 1.
    pub fn genus(&self) -> Option<u64> {
        gaps(self.a, self.b).map(|g| g.len() as u64)
    }

    pub fn on_curve(&self, p: AffinePoint) -> bool {
        self.f.eval(p.y, &self.field) == self.g.eval(p.x, &self.field)
    }

    pub fn sigma(&self, p: AffinePoint) -> AffinePoint {
        AffinePoint::new(self.field.mul(self.alpha, p.x), self.field.mul(self.alpha_t, p.y))
    }

    /// Every affine rational point, ordered by x code then y code.
    pub fn enumerate_points(&self) -> Vec<AffinePoint> {
        let gf = &self.field;
        let mut by_value: Vec<Vec<Fe>> = vec![Vec::new(); gf.order() as usize];
        for y in gf.elements() {
            by_value[self.f.eval(y, gf).0 as usize].push(y);
        }
        let mut pts = Vec::new();
        for x in gf.elements() {
            for &y in &by_value[self.g.eval(x, gf).0 as usize] {
                pts.push(AffinePoint::new(x, y));
            }
        }
        pts
    }

    /// Sufficient symbolic test: some c with f(α^t Y) = c·f(Y) and g(αX) = c·g(X).
    pub fn symbolic_automorphism_check(&self) -> bool {
        let gf = &*self.field;
        let twist = |p: &Poly, m: Fe| -> Vec<Fe> {
            let mut pw = Fe::ONE;
            p.coeffs()
                .iter()
                .map(|&c| {
                    let v = gf.mul(c, pw);
                    pw = gf.mul(pw, m);
                    v
                })
                .collect()
        };
        let ft = twist(&self.f, self.alpha_t);
        let gt = twist(&self.g, self.alpha);
        let c = match gf.div(*ft.last().unwrap(), self.f.leading_coeff()) {
            Ok(c) => c,
            Err(_) => return false,
        };
        let scaled_matches = |tw: &[Fe], orig: &Poly| tw.iter().zip(orig.coeffs()).all(|(&t, &o)| t == gf.mul(c, o));
        scaled_matches(&ft, &self.f) && scaled_matches(&gt, &self.g)
    }

    /// Checks every invariant, pointwise where possible.
    pub fn validate(&self) -> ValidationReport {
        let mut diags = Vec::new();
        let (a, b) = (self.a, self.b);
        if gcd(a, b) != 1 {
            diags.push(Diagnostic::GcdNotOne { a, b });
        }
        if a >= b {
            diags.push(Diagnostic::PoleOrdersSwapped { a, b });
        }
        let nu = self.nu().ok();
        if nu.is_none() {
            diags.push(Diagnostic::AlphaZero);
        }
        let genus = self.genus();
        if let Some(g) = genus {
            if 2 * g != (a - 1) * (b - 1) {
                diags.push(Diagnostic::GenusMismatch { gaps: g, formula: (a - 1) * (b - 1) / 2 });
            }
        }
        if !self.symbolic_automorphism_check() {
            diags.push(Diagnostic::SymbolicCheckInconclusive);
        }

        let points = self.enumerate_points();
        if points.is_empty() {
            diags.push(Diagnostic::NoAffinePoints);
        }
        for &p in &points {
            let s = self.sigma(p);
            if !self.on_curve(s) {
                diags.push(Diagnostic::NotAutomorphism { point: p });
                break;
            }
            if (p.x.is_zero() != s.x.is_zero()) || (p.y.is_zero() != s.y.is_zero()) {
                diags.push(Diagnostic::AxisNotPreserved { point: p });
                break;
            }
        }
        if let Some(info) = &self.preset {
            if info.point_count != points.len() as u64 {
                diags.push(Diagnostic::PresetPointCount {
                    expected: info.point_count,
                    found: points.len() as u64,
                });
            }
            if nu.is_some_and(|n| n != info.sigma_order) {
                diags.push(Diagnostic::PresetSigmaOrder {
                    expected: info.sigma_order,
                    found: nu.unwrap_or(0),
                });
            }
        }
        diags.push(Diagnostic::SemigroupAssumed { a, b });

        ValidationReport {
            diagnostics: diags,
            nu,
            sigma_order: nu,
            point_count: points.len() as u64,
            genus,
        }
    }

    /// The explicit config describing this curve.
    pub fn to_config(&self) -> CurveConfig {
        CurveConfig::Explicit {
            p: self.field.characteristic(),
            m: self.field.degree(),
            modulus: Some(self.field.modulus().to_vec()),
            f: self.f.codes(),
            g: self.g.codes(),
            alpha: AlphaSpec::Code(self.alpha.0),
            t_exp: self.t_exp,
        }
    }
}

/// Gaps of ⟨a, b⟩; `None` unless gcd(a, b) = 1.
pub fn gaps(a: u64, b: u64) -> Option<Vec<u64>> {
    if a == 0 || b == 0 || gcd(a, b) != 1 {
        return None;
    }
    let conductor = (a - 1) * (b - 1);
    let mut member = vec![false; conductor as usize + 1];
    for beta in 0..=conductor / a {
        let mut n = beta * a;
        while n <= conductor {
            member[n as usize] = true;
            n += b;
        }
    }
    Some((0..conductor).filter(|&n| !member[n as usize]).collect())
}

/// #{n ∈ ⟨a, b⟩ : n ≤ λ}, counted as pairs (β, γ) with 0 ≤ β < b and
/// βa + γb ≤ λ.
pub fn semigroup_dim(a: u64, b: u64, lambda: u64) -> u64 {
    (0..b)
        .filter(|&beta| beta * a <= lambda)
        .map(|beta| (lambda - beta * a) / b + 1)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    GcdNotOne { a: u64, b: u64 },
    PoleOrdersSwapped { a: u64, b: u64 },
    AlphaZero,
    GenusMismatch { gaps: u64, formula: u64 },
    SymbolicCheckInconclusive,
    NoAffinePoints,
    NotAutomorphism { point: AffinePoint },
    AxisNotPreserved { point: AffinePoint },
    PresetPointCount { expected: u64, found: u64 },
    PresetSigmaOrder { expected: u64, found: u64 },
    SemigroupAssumed { a: u64, b: u64 },
}

impl Diagnostic {
    pub fn severity(&self) -> Severity {
        match self {
            Diagnostic::PoleOrdersSwapped { .. } | Diagnostic::SymbolicCheckInconclusive => Severity::Warning,
            Diagnostic::SemigroupAssumed { .. } => Severity::Note,
            _ => Severity::Error,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::GcdNotOne { .. } => "gcd",
            Diagnostic::PoleOrdersSwapped { .. } => "a-not-less-than-b",
            Diagnostic::AlphaZero => "alpha-zero",
            Diagnostic::GenusMismatch { .. } => "genus",
            Diagnostic::SymbolicCheckInconclusive => "symbolic-precheck",
            Diagnostic::NoAffinePoints => "no-points",
            Diagnostic::NotAutomorphism { .. } => "sigma-not-automorphism",
            Diagnostic::AxisNotPreserved { .. } => "sigma-axes",
            Diagnostic::PresetPointCount { .. } => "preset-point-count",
            Diagnostic::PresetSigmaOrder { .. } => "preset-sigma-order",
            Diagnostic::SemigroupAssumed { .. } => "semigroup-assumed",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::GcdNotOne { a, b } => write!(f, "gcd(a, b) = gcd({a}, {b}) != 1"),
            Diagnostic::PoleOrdersSwapped { a, b } => {
                write!(f, "a = {a} >= b = {b}; semigroup window uses beta in [0, b-1]")
            }
            Diagnostic::AlphaZero => write!(f, "alpha is zero"),
            Diagnostic::GenusMismatch { gaps, formula } => {
                write!(f, "gap count {gaps} differs from (a-1)(b-1)/2 = {formula}")
            }
            Diagnostic::SymbolicCheckInconclusive => {
                write!(f, "no c with f(a^t Y) = c f(Y), g(aX) = c g(X); relying on pointwise check")
            }
            Diagnostic::NoAffinePoints => write!(f, "the curve has no affine rational points"),
            Diagnostic::NotAutomorphism { point } => write!(f, "sigma maps {point} off the curve"),
            Diagnostic::AxisNotPreserved { point } => write!(f, "sigma moves {point} across an axis"),
            Diagnostic::PresetPointCount { expected, found } => {
                write!(f, "preset expects {expected} affine points, found {found}")
            }
            Diagnostic::PresetSigmaOrder { expected, found } => {
                write!(f, "preset expects sigma of order {expected}, found {found}")
            }
            Diagnostic::SemigroupAssumed { a, b } => {
                write!(f, "Weierstrass semigroup at infinity assumed to be <{a}, {b}> (not verified)")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    pub nu: Option<u64>,
    pub sigma_order: Option<u64>,
    pub point_count: u64,
    pub genus: Option<u64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.severity() == Severity::Error)
    }

    pub fn into_result(self) -> Result<ValidationReport, CurveError> {
        if self.is_valid() {
            Ok(self)
        } else {
            let msg = self.errors().map(|d| format!("[{}] {d}", d.code())).collect::<Vec<_>>().join("; ");
            Err(CurveError::Invalid(msg))
        }
    }
}

/// α as an integer code or as `gen^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Code(u32),
    Expr(String),
}

/// Curve config file contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveConfig {
    Preset {
        preset: String,
        q: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
    },
    Explicit {
        p: u32,
        m: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        f: Vec<u32>,
        g: Vec<u32>,
        alpha: AlphaSpec,
        t_exp: u64,
    },
}

impl CurveConfig {
    pub fn from_json(text: &str) -> Result<CurveConfig, CurveError> {
        serde_json::from_str(text).map_err(|e| CurveError::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<CurveConfig, CurveError> {
        let text = std::fs::read_to_string(path).map_err(|source| CurveError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> Result<CurveSpec, CurveError> {
        match self {
            CurveConfig::Preset { preset, q, r, m } => {
                let preset = match preset.as_str() {
                    "hermitian" => Preset::Hermitian { q: *q },
                    "x_q2r" => Preset::XQ2r { q: *q, r: r.unwrap_or(1) },
                    "quotient_hermitian" | "quotient" => Preset::QuotientHermitian {
                        q: *q,
                        m: m.ok_or_else(|| CurveError::InvalidPreset("quotient_hermitian needs m".into()))?,
                    },
                    other => return Err(CurveError::UnknownPreset(other.to_string())),
                };
                preset.build()
            }
            CurveConfig::Explicit {
                p,
                m,
                modulus,
                f,
                g,
                alpha,
                t_exp,
            } => {
                let field = Arc::new(Gf::new(*p, *m, modulus.as_deref())?);
                let fp = Poly::from_codes(Var::Y, f, &field)?;
                let gp = Poly::from_codes(Var::X, g, &field)?;
                let alpha = match alpha {
                    AlphaSpec::Code(c) => field.element(*c)?,
                    AlphaSpec::Expr(s) => {
                        let e = s
                            .trim()
                            .strip_prefix("gen^")
                            .and_then(|e| e.trim().parse::<i64>().ok())
                            .ok_or_else(|| CurveError::Config(format!("alpha `{s}` is not of the form gen^e")))?;
                        field.gen_pow(e)
                    }
                };
                CurveSpec::new(field, fp, gp, alpha, *t_exp)
            }
        }
    }
}

/// Resolves a curve source: an existing file path, or a preset string.
pub fn load_curve(source: &str) -> Result<CurveSpec, CurveError> {
    let path = Path::new(source);
    if path.is_file() {
        CurveConfig::from_file(path)?.build()
    } else {
        Preset::parse(source)?.build()
    }
}
