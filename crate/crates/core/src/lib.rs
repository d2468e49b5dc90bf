//! One-point algebraic-geometry codes on curves `f(y) = g(x)` with a
//! diagonal automorphism: orbit decomposition, root diagrams, POT Gröbner
//! bases of the associated `F_q[t]`-module, and systematic encoding.
//!
//! The usual pipeline is [`OnePointCode::new`], which validates the curve,
//! decomposes its points into σ-orbits and builds the generator matrix.

pub mod algebra;
pub mod curve;
pub mod diagram;
pub mod encoder;
pub mod interp_gb;
pub mod linalg;
pub mod orbits;
pub mod potmod;
pub mod rrspace;

use thiserror::Error;

use crate::algebra::{AlgebraError, Fe};
use crate::curve::{AffinePoint, CurveError, CurveSpec};
use crate::orbits::{OrbitDecomposition, Rho};
use crate::rrspace::GenMatrix;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("orbit of {point} leaves the point set")]
    OrbitEscapes { point: AffinePoint },
    #[error("long orbit {index} has length {len}, expected ord(alpha) = {nu}")]
    LongOrbitLength { index: usize, len: usize, nu: u64 },
    #[error("no long orbits; rho parameters undefined")]
    NoLongOrbits,
    #[error("orbit structure outside the supported class: {0}")]
    Unsupported(String),
    #[error("lambda = {lambda} must be below n = {n}")]
    LambdaTooLarge { lambda: u64, n: usize },
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed Groebner basis: {0}")]
    MalformedBasis(String),
    #[error("fast diagram inconsistent: {0}")]
    FastDiagram(String),
    #[error("interpolant check failed: {0}")]
    Interpolant(String),
    #[error("row {0} is full; it has no interpolating function")]
    FullRow(usize),
    #[error("point {0} is not in the orbit decomposition")]
    UnknownPoint(AffinePoint),
    #[error("information columns are linearly dependent in the generator matrix")]
    SingularInfoColumns,
    #[error("symbol {0} is outside the field")]
    BadSymbol(u32),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A validated curve, its orbit decomposition and the generator matrix of
/// `C(D, λP)`.
#[derive(Clone, Debug)]
pub struct OnePointCode {
    pub spec: CurveSpec,
    pub decomp: OrbitDecomposition,
    pub rho: Option<Rho>,
    pub lambda: u64,
    pub genmat: GenMatrix,
    pub k: usize,
}

impl OnePointCode {
    pub fn new(spec: CurveSpec, lambda: u64) -> Result<OnePointCode> {
        spec.validate().into_result()?;
        let points = spec.enumerate_points();
        let decomp = orbits::decompose(&spec, &points)?;
        Self::with_decomposition(spec, decomp, lambda)
    }

    /// Reuses an existing decomposition (for λ sweeps).
    pub fn with_decomposition(spec: CurveSpec, decomp: OrbitDecomposition, lambda: u64) -> Result<OnePointCode> {
        let rho = if decomp.r() > 0 { Some(orbits::derive_rho(&decomp, &spec)?) } else { None };
        let genmat = rrspace::generator_matrix(&spec, &decomp, lambda)?;
        let k = rrspace::code_dim(&genmat, spec.field());
        Ok(OnePointCode {
            spec,
            decomp,
            rho,
            lambda,
            genmat,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.decomp.n()
    }

    /// Checks that `symbols` are valid field codes and returns them as elements.
    pub fn message(&self, symbols: &[u32]) -> Result<Vec<Fe>> {
        symbols
            .iter()
            .map(|&s| self.spec.field().element(s).map_err(|_| Error::BadSymbol(s)))
            .collect()
    }
}
