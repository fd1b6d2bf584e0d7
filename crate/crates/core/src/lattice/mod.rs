//! Lattice maps on polygon windows: skew pentagram maps, the heat map and
//! shifts, evaluated on finite intervals of `ℤ` or on closed `n`-gons.

use thiserror::Error;

use crate::geometry::GeometryError;

mod dominance;
mod params;
mod rule;
mod window;

pub use dominance::{dominance_test, rank_mod_p};
pub use params::{Classification, SkewParams};
pub use rule::{apply_rule, apply_rule_each, iterate_rule, rule_degree, LocalRule, RawVertices};
pub use window::{window_from_json, window_to_json, Indexing, PolygonWindow};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("parameter {0} is repeated")]
    RepeatedParameter(i64),
    #[error("({0}) is truly skew; only equal-length maps are inverted")]
    NotEqualLength(SkewParams),
    #[error("({0}) is not written with a < b, a < c, c < d")]
    NotConventional(SkewParams),
    #[error("neighborhood of {rule} is not distinct modulo {n}")]
    NotDistinctModN { rule: LocalRule, n: usize },
    #[error("window of length {len} is too small for a rule of width {width}")]
    WindowTooSmall { len: usize, width: i64 },
    #[error("window is empty")]
    EmptyWindow,
    #[error("expected {expected} vertices, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("rule undefined at vertex {index}: {source}")]
    Indeterminate { index: i64, source: GeometryError },
    #[error("rule undefined at step {step}, vertex {index}: {source}")]
    IndeterminateAtStep {
        step: usize,
        index: i64,
        source: GeometryError,
    },
    #[error("cannot parse {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
