//! The Schwarzian octahedron (dSKP) recurrence on the lattice
//! `𝓛 = {(i, j, k) : i + j + k even}`, and the embedding of equal-length
//! pentagram orbits into it.
//!
//! For the map `T_{0,b,c,b+c}` with `gcd(b, c) = 1`, the linear map `η`
//! with `η(1,−1,0) = (b,0)`, `η(−1,−1,0) = (c,0)`, `η(0,−1,1) = (0,1)` sends
//! the six neighbours of an odd point to an affine Menelaus configuration
//! of the orbit, so `w_r = x(v_{η(r)})` solves the recurrence.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{rational, Field, Projective, Rational};
use crate::geometry::{menelaus_residual_coord, GeometryError, ProjPoint};
use crate::lattice::{apply_rule, LatticeError, LocalRule, PolygonWindow};
use crate::sample::trial_rng;

pub type LatticePoint = [i64; 3];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DskpError {
    #[error("gcd({b}, {c}) is not 1")]
    NotCoprime { b: i64, c: i64 },
    #[error("b and c must be positive and distinct, got ({b}, {c})")]
    BadParameters { b: i64, c: i64 },
    #[error("{0:?} has odd coordinate sum")]
    NotInLattice(LatticePoint),
    #[error("{0:?} has even coordinate sum; residuals live at odd points")]
    EvenPoint(LatticePoint),
    #[error("no value at {0:?}")]
    MissingValue(LatticePoint),
    #[error("vanishing denominator at {0:?}")]
    VanishingDenominator(LatticePoint),
    #[error("orbit has no vertex {i} at step {m}")]
    MissingVertex { i: i64, m: usize },
    #[error("vertex {i} at step {m} is not affine")]
    NotAffine { i: i64, m: usize },
    #[error("patch contains no odd point with all six neighbours")]
    NothingToTest,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn in_lattice(r: LatticePoint) -> bool {
    (r[0] + r[1] + r[2]).rem_euclid(2) == 0
}

fn offset(r: LatticePoint, axis: usize, sign: i64) -> LatticePoint {
    let mut s = r;
    s[axis] += sign;
    s
}

/// A finite partial solution `r ↦ w_r`, with values in an affine chart.
#[derive(Clone, Debug, PartialEq)]
pub struct DskpPatch<F> {
    values: BTreeMap<LatticePoint, F>,
}

impl<F> Default for DskpPatch<F> {
    fn default() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }
}

impl<F: Field> DskpPatch<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, r: LatticePoint, w: F) -> Result<(), DskpError> {
        if !in_lattice(r) {
            return Err(DskpError::NotInLattice(r));
        }
        self.values.insert(r, w);
        Ok(())
    }

    pub fn get(&self, r: LatticePoint) -> Option<&F> {
        self.values.get(&r)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &F)> {
        self.values.iter()
    }

    /// Odd points whose six neighbours all carry values, in lexicographic
    /// order.
    pub fn testable_points(&self) -> Vec<LatticePoint> {
        let mut out: Vec<LatticePoint> = self
            .values
            .keys()
            .map(|&r| offset(r, 0, 1))
            .filter(|&r| {
                (0..3).all(|a| {
                    [-1, 1]
                        .iter()
                        .all(|&s| self.values.contains_key(&offset(r, a, s)))
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Applies `w ↦ (αw + β)/(γw + δ)` to every value; `None` if some value
    /// is sent to infinity.
    pub fn chart_change(&self, alpha: &F, beta: &F, gamma: &F, delta: &F) -> Option<Self> {
        let mut values = BTreeMap::new();
        for (&r, w) in &self.values {
            let num = alpha.clone() * w.clone() + beta.clone();
            let den = gamma.clone() * w.clone() + delta.clone();
            values.insert(r, num.div(&den).ok()?);
        }
        Some(Self { values })
    }
}

/// `w_{(i,j,k)} = μ₁i + μ₂j + μ₃k` on the lattice points of the cube
/// `[−bound, bound]³`.
pub fn linear_patch<F: Field>(mu: [F; 3], bound: i64) -> DskpPatch<F> {
    let mut patch = DskpPatch::new();
    for r in lattice_box(bound) {
        let w = (0..3).fold(mu[0].zero_like(), |acc, a| {
            acc + mu[a].clone() * mu[a].from_i64_like(r[a])
        });
        patch.insert(r, w).expect("box points are in the lattice");
    }
    patch
}

fn lattice_box(bound: i64) -> impl Iterator<Item = LatticePoint> {
    let range = move || -bound..=bound;
    range()
        .flat_map(move |i| range().flat_map(move |j| range().map(move |k| [i, j, k])))
        .filter(|&r| in_lattice(r))
}

/// The dSKP ratio at an odd point `r`:
///
/// `(w_{r−e3} − w_{r+e2})(w_{r−e1} − w_{r+e3})(w_{r−e2} − w_{r+e1})`
/// divided by
/// `(w_{r+e2} − w_{r−e1})(w_{r+e3} − w_{r−e2})(w_{r+e1} − w_{r−e3})`,
/// which equals −1 for a solution.
pub fn dskp_residual<F: Field>(patch: &DskpPatch<F>, r: LatticePoint) -> Result<F, DskpError> {
    if in_lattice(r) {
        return Err(DskpError::EvenPoint(r));
    }
    let w = |axis: usize, sign: i64| {
        let s = offset(r, axis, sign);
        patch.get(s).cloned().ok_or(DskpError::MissingValue(s))
    };
    let (p1, m1) = (w(0, 1)?, w(0, -1)?);
    let (p2, m2) = (w(1, 1)?, w(1, -1)?);
    let (p3, m3) = (w(2, 1)?, w(2, -1)?);
    let num = (m3.clone() - p2.clone()) * (m1.clone() - p3.clone()) * (m2.clone() - p1.clone());
    let den = (p2 - m1) * (p3 - m2) * (p1 - m3);
    num.div(&den)
        .map_err(|_| DskpError::VanishingDenominator(r))
}

/// The index map `η : 𝓛 → ℤ²` for the pair `(b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaMap {
    b: i64,
    c: i64,
}

impl EtaMap {
    pub fn new(b: i64, c: i64) -> Result<Self, DskpError> {
        if b <= 0 || c <= 0 || b == c {
            return Err(DskpError::BadParameters { b, c });
        }
        if b.gcd(&c) != 1 {
            return Err(DskpError::NotCoprime { b, c });
        }
        Ok(Self { b, c })
    }

    /// `η(i, j, k) = (((b − c)i − (b + c)(j + k)) / 2, k)`.
    pub fn apply(&self, r: LatticePoint) -> Result<(i64, i64), DskpError> {
        if !in_lattice(r) {
            return Err(DskpError::NotInLattice(r));
        }
        let twice = (self.b - self.c) * r[0] - (self.b + self.c) * (r[1] + r[2]);
        Ok((twice / 2, r[2]))
    }

    /// Lattice points mapping to `(1, 0)` and `(0, 1)`, which shows that
    /// `η` is onto.
    pub fn surjectivity_witness(&self) -> (LatticePoint, LatticePoint) {
        let e = self.b.extended_gcd(&self.c);
        // x·(1,−1,0) + y·(−1,−1,0) with x·b + y·c = 1.
        let (x, y) = (e.x * e.gcd, e.y * e.gcd);
        ([x - y, -x - y, 0], [0, -1, 1])
    }
}

/// An orbit of `T_{0,b,c,b+c}` on an interval window: `iterates[m]` is
/// `T^m` of the initial window.
#[derive(Clone, Debug)]
pub struct EqualLengthOrbit<F> {
    b: i64,
    c: i64,
    iterates: Vec<PolygonWindow<F>>,
}

impl<F: Field + Projective> EqualLengthOrbit<F> {
    pub fn new(b: i64, c: i64, initial: PolygonWindow<F>, steps: usize) -> Result<Self, DskpError> {
        let rule = LocalRule::skew(0, b, c, b + c)?;
        if b <= 0 || c <= 0 {
            return Err(DskpError::BadParameters { b, c });
        }
        let mut iterates = vec![initial];
        for _ in 0..steps {
            let next = apply_rule(&rule, iterates.last().unwrap())?;
            iterates.push(next);
        }
        Ok(Self { b, c, iterates })
    }

    /// Wraps precomputed windows without checking that they form an orbit.
    pub fn from_iterates(
        b: i64,
        c: i64,
        iterates: Vec<PolygonWindow<F>>,
    ) -> Result<Self, DskpError> {
        if b <= 0 || c <= 0 || b == c {
            return Err(DskpError::BadParameters { b, c });
        }
        if iterates.is_empty() {
            return Err(LatticeError::EmptyWindow.into());
        }
        Ok(Self { b, c, iterates })
    }

    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn iterates(&self) -> &[PolygonWindow<F>] {
        &self.iterates
    }

    pub fn vertex(&self, i: i64, m: usize) -> Result<&ProjPoint<F>, DskpError> {
        self.iterates
            .get(m)
            .and_then(|w| w.get(i))
            .ok_or(DskpError::MissingVertex { i, m })
    }

    /// Affine coordinate `k` (0 = x, 1 = y) of `v_{i,m}`.
    pub fn coord(&self, i: i64, m: usize, k: usize) -> Result<F, DskpError> {
        self.vertex(i, m)?
            .affine_coord(k)
            .ok_or(DskpError::NotAffine { i, m })
    }

    /// The six points `(A, B, C, D, E, F)` =
    /// `(v_{i+b+c,m}, v_{i+c,m+1}, v_{i+b+c,m+1}, v_{i,m+2}, v_{i+b,m+1}, v_{i,m+1})`.
    pub fn menelaus_points(&self, i: i64, m: usize) -> Result<[&ProjPoint<F>; 6], DskpError> {
        let (b, c) = (self.b, self.c);
        Ok([
            self.vertex(i + b + c, m)?,
            self.vertex(i + c, m + 1)?,
            self.vertex(i + b + c, m + 1)?,
            self.vertex(i, m + 2)?,
            self.vertex(i + b, m + 1)?,
            self.vertex(i, m + 1)?,
        ])
    }

    /// Pulls coordinate `k` back along `η` to every lattice point of the
    /// cube `[−bound, bound]³` that lands inside the orbit.
    pub fn to_dskp(&self, k: usize, bound: i64) -> Result<DskpPatch<F>, DskpError> {
        let eta = EtaMap::new(self.b, self.c)?;
        let mut patch = DskpPatch::new();
        for r in lattice_box(bound) {
            let (i, m) = eta.apply(r)?;
            if m < 0
                || m as usize >= self.iterates.len()
                || self.iterates[m as usize].get(i).is_none()
            {
                continue;
            }
            patch.insert(r, self.coord(i, m as usize, k)?)?;
        }
        Ok(patch)
    }
}

/// The Menelaus product for the configuration at `(i, m)` of an
/// equal-length orbit, on coordinate `k`; −1 on genuine orbits.
pub fn menelaus_orbit_check<F: Field + Projective>(
    orbit: &EqualLengthOrbit<F>,
    i: i64,
    m: usize,
    k: usize,
) -> Result<F, DskpError> {
    Ok(menelaus_residual_coord(orbit.menelaus_points(i, m)?, k)?)
}

/// Attempts at drawing a generic rational orbit.
pub const ORBIT_ATTEMPTS: u64 = 20;

/// Rational with numerator up to 999 and denominator up to 99.
pub fn wide_rational(rng: &mut impl Rng) -> Rational {
    rational(rng.gen_range(-999..=999), rng.gen_range(1..=99))
}

/// Random orbit of `T_{0,b,c,b+c}` on an interval window of `len` vertices
/// whose dSKP pullbacks (both coordinates, cube of radius `bound`) have no
/// vanishing denominator. Coordinates come from `draw`; attempt `k` uses
/// the stream `trial_rng(seed, 0, k)`.
pub fn generic_orbit<F, D>(
    b: i64,
    c: i64,
    len: usize,
    steps: usize,
    bound: i64,
    seed: u64,
    draw: D,
) -> Result<EqualLengthOrbit<F>, DskpError>
where
    F: Field + Projective,
    D: Fn(&mut ChaCha8Rng) -> F,
{
    let mut last = DskpError::NothingToTest;
    for attempt in 0..ORBIT_ATTEMPTS {
        let mut rng = trial_rng(seed, 0, attempt);
        let pts: Vec<_> = (0..len)
            .map(|_| {
                let x = draw(&mut rng);
                let y = draw(&mut rng);
                ProjPoint::new([x.clone(), y, x.one_like()]).expect("z = 1")
            })
            .collect();
        let orbit = match EqualLengthOrbit::new(b, c, PolygonWindow::interval(0, pts)?, steps) {
            Ok(o) => o,
            Err(e @ (DskpError::NotCoprime { .. } | DskpError::BadParameters { .. })) => {
                return Err(e)
            }
            Err(e) => {
                last = e;
                continue;
            }
        };
        let generic = (0..2).try_fold(true, |ok, k| {
            let patch = match orbit.to_dskp(k, bound) {
                Ok(p) => p,
                Err(e @ DskpError::NotAffine { .. }) => {
                    last = e;
                    return Ok(false);
                }
                Err(e) => return Err(e),
            };
            Ok::<_, DskpError>(
                ok && !matches!(
                    all_residuals(&patch),
                    Err(DskpError::VanishingDenominator(_))
                ),
            )
        })?;
        if generic {
            return Ok(orbit);
        }
    }
    Err(last)
}

/// [`generic_orbit`] over ℚ with [`wide_rational`] coordinates.
pub fn generic_rational_orbit(
    b: i64,
    c: i64,
    len: usize,
    steps: usize,
    bound: i64,
    seed: u64,
) -> Result<EqualLengthOrbit<Rational>, DskpError> {
    generic_orbit(b, c, len, steps, bound, seed, wide_rational)
}

/// Residuals at every testable odd point of a patch.
pub fn all_residuals<F: Field>(patch: &DskpPatch<F>) -> Result<Vec<(LatticePoint, F)>, DskpError> {
    let points = patch.testable_points();
    if points.is_empty() {
        return Err(DskpError::NothingToTest);
    }
    points
        .into_iter()
        .map(|r| Ok((r, dskp_residual(patch, r)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn minus_one() -> Rational {
        rational(-1, 1)
    }

    #[test]
    fn eta_on_basis() {
        let eta = EtaMap::new(3, 1).unwrap();
        assert_eq!(eta.apply([1, -1, 0]).unwrap(), (3, 0));
        assert_eq!(eta.apply([-1, -1, 0]).unwrap(), (1, 0));
        assert_eq!(eta.apply([0, -1, 1]).unwrap(), (0, 1));
        assert!(eta.apply([1, 0, 0]).is_err());
    }

    #[test]
    fn eta_is_onto() {
        for (b, c) in [(2, 1), (3, 1), (3, 2), (5, 3), (7, 4)] {
            let eta = EtaMap::new(b, c).unwrap();
            let (r1, r2) = eta.surjectivity_witness();
            assert_eq!(eta.apply(r1).unwrap(), (1, 0));
            assert_eq!(eta.apply(r2).unwrap(), (0, 1));
        }
    }

    #[test]
    fn eta_rejects_common_factor() {
        assert_eq!(
            EtaMap::new(2, 2),
            Err(DskpError::BadParameters { b: 2, c: 2 })
        );
        assert_eq!(EtaMap::new(4, 2), Err(DskpError::NotCoprime { b: 4, c: 2 }));
    }

    #[test]
    fn linear_solution() {
        let mu = [rational(3, 1), rational(-5, 2), rational(7, 3)];
        let patch = linear_patch(mu, 3);
        let res = all_residuals(&patch).unwrap();
        assert!(res.len() > 20);
        assert!(res.iter().all(|(_, w)| *w == minus_one()));
    }

    #[test]
    fn linear_solution_over_fp() {
        let p = 10009;
        let patch = linear_patch([Fp::new(17, p), Fp::new(-44, p), Fp::new(901, p)], 2);
        assert!(all_residuals(&patch)
            .unwrap()
            .iter()
            .all(|(_, w)| *w == Fp::new(-1, p)));
    }

    #[test]
    fn generic_values_fail() {
        let mut patch = DskpPatch::new();
        let r = [0, 0, 1];
        for (n, (a, s)) in [(0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1)]
            .into_iter()
            .enumerate()
        {
            patch
                .insert(offset(r, a, s), rational([2, 7, -3, 11, 5, 1][n], 1))
                .unwrap();
        }
        assert_ne!(dskp_residual(&patch, r).unwrap(), minus_one());
    }

    #[test]
    fn residual_errors() {
        let patch = linear_patch([rational(1, 1), rational(0, 1), rational(0, 1)], 2);
        assert_eq!(
            dskp_residual(&patch, [0, 0, 0]),
            Err(DskpError::EvenPoint([0, 0, 0]))
        );
        assert!(matches!(
            dskp_residual(&patch, [2, 2, 1]),
            Err(DskpError::MissingValue(_))
        ));
        // With μ = (1,0,0) the values at r ± e3 and r ± e2 all agree.
        assert_eq!(
            dskp_residual(&patch, [0, 0, 1]),
            Err(DskpError::VanishingDenominator([0, 0, 1]))
        );
    }

    #[test]
    fn chart_change_preserves_ratio() {
        let patch = linear_patch([rational(2, 1), rational(-1, 3), rational(5, 7)], 2);
        let moved = patch
            .chart_change(
                &rational(2, 1),
                &rational(1, 1),
                &rational(1, 5),
                &rational(3, 1),
            )
            .unwrap();
        for (r, w) in all_residuals(&moved).unwrap() {
            assert_eq!(w, minus_one(), "{r:?}");
        }
    }
}
