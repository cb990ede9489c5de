//! Exact engine for the monoidal category of thin flat surfaces: planar
//! cobordisms with corners between finite unions of intervals, their
//! classification data (genus, holes, boundary cycles), and the linear theory
//! of recognizable two-variable evaluations built on top of it (syntactic
//! algebras, skein reduction, trace forms, commuting-matrix charts).
//!
//! All arithmetic is exact. The math layers are generic over a [`Scalar`]
//! field bound; the crate instantiates them at the arbitrary-precision
//! rational alias [`Rat`] and never at floating point, because every rank and
//! degeneracy decision here is discontinuous.

pub mod cobordism;
pub mod expr;
pub mod gligible;
pub mod hilbert;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod skein;

pub use cobordism::{Cobordism, CobordismError, FloatingComponent, FloatingSet, GenKind, Side, Token, ViewableComponent};
pub use scalar::Scalar;

/// Exact rational scalar used by the CLI, the JSON layer and the tests.
pub type Rat = num::BigRational;
/// Exact rational matrix.
pub type Mat = linalg::Matrix<Rat>;
/// Exact rational series in closed rational form.
pub type RatForm = series::RationalForm<Rat>;

/// Runtime knobs shared by the enumeration-bound operations.
#[derive(Clone, Debug)]
pub struct Config {
    /// Hard bound on n + m for basis enumeration (37633 minimal shapes at 7).
    pub cap: usize,
    /// How Gram pairings are computed; raw closure is the reference path.
    pub gram_path: gligible::GramPath,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: 7, gram_path: gligible::GramPath::RawClosure }
    }
}
