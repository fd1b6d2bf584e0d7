//! Heights of rational points and polygons, and their growth under skew
//! pentagram maps.
//!
//! The height of `[x₀:x₁:x₂]` is `max |xⱼ|` after clearing denominators and
//! common factors; its logarithm is the usual Weil height. Heights stay
//! exact integers and logarithms are only taken for reporting, which works
//! for numbers far beyond `f64` range.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{primitive_integer_triple, Rational};
use crate::geometry::ProjPoint;
use crate::lattice::{apply_rule, LatticeError, LocalRule, PolygonWindow, SkewParams};
use crate::octagon::octagon_from_moduli;
use crate::sample::{random_affine_rational, small_rational, trial_rng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeightError {
    #[error("iterate {step} is undefined at vertex {index}")]
    Indeterminate { step: usize, index: i64 },
    #[error("no starting polygon survived {steps} steps in {attempts} attempts")]
    NoGenericStart { steps: usize, attempts: u64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `max |xⱼ|` over the primitive integer representative.
pub fn height(p: &ProjPoint<Rational>) -> BigInt {
    primitive_integer_triple(p.coords())
        .iter()
        .map(|x| x.abs())
        .max()
        .expect("three coordinates")
}

/// `log₁₀ n` for a positive integer of any size.
pub fn log10(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "logarithm of a non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").log10();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64 bits");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Largest vertex height of a polygon.
pub fn polygon_height(w: &PolygonWindow<Rational>) -> BigInt {
    w.vertices()
        .iter()
        .map(height)
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Heights of one iterate of a polygon.
#[derive(Clone, Debug, Serialize)]
pub struct HeightRecord {
    pub map: SkewParams,
    pub n: usize,
    pub m: usize,
    /// `log₁₀` of each vertex height, in window order.
    pub vertex_log10: Vec<f64>,
    /// `log₁₀` of the polygon height.
    pub log10_height: f64,
    /// `h_m / h_{m−1}` of the logarithmic polygon heights; absent at `m = 0`
    /// or when `h_{m−1} = 0`.
    pub ratio: Option<f64>,
}

fn log_ratio(now: f64, before: f64) -> Option<f64> {
    (before > 0.0).then(|| now / before)
}

/// Iterates `params` on `start` exactly over ℚ for `m_max` steps and records
/// the heights after every step, starting with `m = 0`.
pub fn height_growth_experiment(
    params: SkewParams,
    start: &PolygonWindow<Rational>,
    m_max: usize,
) -> Result<Vec<HeightRecord>, HeightError> {
    let [a, b, c, d] = params.as_array();
    let rule = LocalRule::skew(a, b, c, d)?;
    let n = start.len();
    let mut records = Vec::with_capacity(m_max + 1);
    let mut w = start.clone();
    for m in 0..=m_max {
        if m > 0 {
            w = apply_rule(&rule, &w).map_err(|e| match e {
                LatticeError::Indeterminate { index, .. } => {
                    HeightError::Indeterminate { step: m, index }
                }
                other => other.into(),
            })?;
        }
        let vertex_log10: Vec<f64> = w.vertices().iter().map(|v| log10(&height(v))).collect();
        let log10_height = log10(&polygon_height(&w));
        let ratio = records
            .last()
            .and_then(|r: &HeightRecord| log_ratio(log10_height, r.log10_height));
        records.push(HeightRecord {
            map: params,
            n,
            m,
            vertex_log10,
            log10_height,
            ratio,
        });
    }
    Ok(records)
}

/// Closed `n`-gon with single-digit rational coordinates.
pub fn random_polygon(n: usize, rng: &mut impl Rng) -> PolygonWindow<Rational> {
    let pts = (0..n).map(|_| random_affine_rational(rng)).collect();
    PolygonWindow::cyclic(pts).expect("nonempty")
}

/// Normalized rotationally symmetric octagon whose second vertex has
/// single-digit rational coordinates.
pub fn random_symmetric_octagon(rng: &mut impl Rng) -> PolygonWindow<Rational> {
    let p = ProjPoint::affine(small_rational(rng), small_rational(rng));
    octagon_from_moduli(&p).expect("affine point")
}

/// Number of fresh starting polygons tried before giving up.
pub const START_ATTEMPTS: u64 = 32;

/// Runs [`height_growth_experiment`] from polygons drawn by `draw`, taking
/// the first one that stays defined for `m_max` steps. Attempt `k` uses the
/// stream `trial_rng(seed, n, k)`.
pub fn seeded_height_run<D>(
    params: SkewParams,
    n: usize,
    m_max: usize,
    seed: u64,
    draw: D,
) -> Result<Vec<HeightRecord>, HeightError>
where
    D: Fn(&mut rand_chacha::ChaCha8Rng) -> PolygonWindow<Rational>,
{
    for attempt in 0..START_ATTEMPTS {
        let mut rng = trial_rng(seed, n as u64, attempt);
        match height_growth_experiment(params, &draw(&mut rng), m_max) {
            Err(HeightError::Indeterminate { .. }) => continue,
            other => return other,
        }
    }
    Err(HeightError::NoGenericStart {
        steps: m_max,
        attempts: START_ATTEMPTS,
    })
}
