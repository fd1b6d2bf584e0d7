//! Exhaustive scans of `ℙ²(F_q)`: fibers of `f` and its indeterminacy
//! locus.
//!
//! Points are enumerated in the normal form with last nonzero coordinate
//! 1: `[x:y:1]`, then `[x:1:0]`, then `[1:0:0]`. The work is split by the
//! first coordinate and merged in order, so results do not depend on the
//! thread schedule.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::formula::ExplicitMapF;
use super::OctagonError;
use crate::field::{Field, Gf, GfContext, Monomial, Ring, UniPoly};

/// A point of `ℙ²(F_q)` in normal form.
pub type ScanPoint = [Gf; 3];

/// Coordinates of `f` over `F_q`, flattened for fast evaluation.
#[derive(Clone, Debug)]
pub struct CompiledMap {
    ctx: GfContext,
    terms: [Vec<(Monomial, Gf)>; 3],
    max_exponent: usize,
    imaginary_unit: Option<Gf>,
}

fn sqrt_minus_one(ctx: &GfContext) -> Option<Gf> {
    let minus_one = ctx.from_i64(-1);
    ctx.elements().find(|x| *x * *x == minus_one)
}

impl CompiledMap {
    pub fn new(map: &ExplicitMapF, ctx: GfContext) -> Result<Self, OctagonError> {
        let zero = ctx.zero();
        let imaginary_unit = sqrt_minus_one(&ctx);
        let polys = map.over(&zero, imaginary_unit.as_ref())?;
        let terms = polys.map(|p| p.terms().map(|(m, c)| (*m, *c)).collect::<Vec<_>>());
        let max_exponent = terms
            .iter()
            .flatten()
            .flat_map(|(m, _)| m.iter().map(|&e| e as usize))
            .max()
            .unwrap_or(0);
        Ok(Self {
            ctx,
            terms,
            max_exponent,
            imaginary_unit,
        })
    }

    pub fn context(&self) -> &GfContext {
        &self.ctx
    }

    /// A square root of −1 in `F_q`, if there is one.
    pub fn imaginary_unit(&self) -> Option<Gf> {
        self.imaginary_unit
    }

    pub fn eval(&self, v: &ScanPoint) -> ScanPoint {
        let one = self.ctx.from_i64(1);
        let mut powers = [[one; 16]; 3];
        for k in 0..3 {
            for e in 1..=self.max_exponent {
                powers[k][e] = powers[k][e - 1] * v[k];
            }
        }
        std::array::from_fn(|j| {
            self.terms[j].iter().fold(self.ctx.zero(), |acc, (m, c)| {
                acc + *c
                    * powers[0][m[0] as usize]
                    * powers[1][m[1] as usize]
                    * powers[2][m[2] as usize]
            })
        })
    }

    /// Coordinate `j` of `f` restricted to `p + t·q`.
    fn restrict(&self, j: usize, p: &ScanPoint, q: &ScanPoint) -> UniPoly<Gf> {
        let zero = self.ctx.zero();
        let coords: [UniPoly<Gf>; 3] = std::array::from_fn(|k| UniPoly::linear(p[k], q[k]));
        let mut powers: [Vec<UniPoly<Gf>>; 3] =
            std::array::from_fn(|_| vec![UniPoly::constant(zero.one_like())]);
        for k in 0..3 {
            for e in 1..=self.max_exponent {
                let next = powers[k][e - 1].clone() * coords[k].clone();
                powers[k].push(next);
            }
        }
        self.terms[j]
            .iter()
            .fold(UniPoly::zero(&zero), |acc, (m, c)| {
                let t = powers[0][m[0] as usize].clone()
                    * powers[1][m[1] as usize].clone()
                    * powers[2][m[2] as usize].clone();
                acc + t.scale(c)
            })
    }

    /// Whether `v` is one of `[0:0:1], [1:i:0], [1:−i:0]`; the last two are
    /// the points at infinity with `X² + Y² = 0`.
    pub fn is_rotation_fixed_point(&self, v: &ScanPoint) -> bool {
        let [x, y, z] = *v;
        if x.is_zero() && y.is_zero() {
            return true;
        }
        z.is_zero() && (x * x + y * y).is_zero()
    }
}

/// Scales so the last nonzero coordinate is 1.
pub fn normalize(v: ScanPoint) -> ScanPoint {
    match v.iter().rposition(|c| !c.is_zero()) {
        Some(k) => {
            let s = v[k].inv().expect("nonzero");
            v.map(|c| c * s)
        }
        None => v,
    }
}

fn key(v: &ScanPoint) -> [u64; 3] {
    v.map(|c| c.index())
}

/// Every point of `ℙ²(F_q)` with first coordinate of index `a` (in the
/// normal form), plus `[1:0:0]` for `a = q`.
fn slice(ctx: &GfContext, a: u64) -> Vec<ScanPoint> {
    let q = ctx.order();
    let (zero, one) = (ctx.zero(), ctx.from_i64(1));
    if a == q {
        return vec![[one, zero, zero]];
    }
    let x = ctx.element(a);
    let mut out: Vec<ScanPoint> = ctx.elements().map(|y| [x, y, one]).collect();
    out.push([x, one, zero]);
    out
}

/// Image counts of `f` over all of `ℙ²(F_q)` outside `Ind f`.
#[derive(Clone, Debug)]
pub struct ImageHistogram {
    pub q: u64,
    counts: HashMap<[u64; 3], usize>,
    /// Points where all three coordinates vanish, in scan order.
    pub indeterminate: Vec<ScanPoint>,
}

impl ImageHistogram {
    /// Number of points of `ℙ²(F_q) ∖ Ind f` mapping to `target`.
    pub fn fiber(&self, target: &ScanPoint) -> usize {
        self.counts
            .get(&key(&normalize(*target)))
            .copied()
            .unwrap_or(0)
    }

    /// Largest fiber over all targets other than the three fixed points of
    /// the rotation.
    pub fn max_fiber(&self, map: &CompiledMap) -> usize {
        self.distribution(map)
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
    }

    /// Fiber size ↦ number of targets with that fiber size (targets other
    /// than the rotation fixed points; empty fibers not counted).
    pub fn distribution(&self, map: &CompiledMap) -> BTreeMap<usize, usize> {
        let ctx = map.context();
        let mut out = BTreeMap::new();
        for (k, &n) in &self.counts {
            let t = k.map(|i| ctx.element(i));
            if !map.is_rotation_fixed_point(&t) {
                *out.entry(n).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Evaluates `f` at every point of `ℙ²(F_q)`.
pub fn image_histogram(map: &CompiledMap) -> ImageHistogram {
    let ctx = *map.context();
    let q = ctx.order();
    let parts: Vec<(Vec<[u64; 3]>, Vec<ScanPoint>)> = (0..=q)
        .into_par_iter()
        .map(|a| {
            let mut images = Vec::new();
            let mut ind = Vec::new();
            for v in slice(&ctx, a) {
                let w = map.eval(&v);
                if w.iter().all(|c| c.is_zero()) {
                    ind.push(v);
                } else {
                    images.push(key(&normalize(w)));
                }
            }
            (images, ind)
        })
        .collect();
    let mut counts = HashMap::new();
    let mut indeterminate = Vec::new();
    for (images, ind) in parts {
        for k in images {
            *counts.entry(k).or_insert(0) += 1;
        }
        indeterminate.extend(ind);
    }
    ImageHistogram {
        q,
        counts,
        indeterminate,
    }
}

/// Number of points of `ℙ²(F_q) ∖ Ind f` mapped to `target`, by a full scan.
/// Rejects the three fixed points of the rotation as targets.
pub fn fiber_count(map: &CompiledMap, target: &ScanPoint) -> Result<usize, OctagonError> {
    fiber_count_where(map, target, |_| true)
}

/// As [`fiber_count`], counting only source points satisfying `keep`.
pub fn fiber_count_where(
    map: &CompiledMap,
    target: &ScanPoint,
    keep: impl Fn(&ScanPoint) -> bool + Sync,
) -> Result<usize, OctagonError> {
    if target.iter().all(|c| c.is_zero()) {
        return Err(OctagonError::Indeterminate);
    }
    if map.is_rotation_fixed_point(target) {
        return Err(OctagonError::ExcludedTarget);
    }
    let ctx = *map.context();
    let t = normalize(*target);
    Ok((0..=ctx.order())
        .into_par_iter()
        .map(|a| {
            slice(&ctx, a)
                .into_iter()
                .filter(|v| keep(v))
                .filter(|v| {
                    let w = map.eval(v);
                    !w.iter().all(|c| c.is_zero()) && normalize(w) == t
                })
                .count()
        })
        .sum())
}

/// Number of distinct roots in `F_q` of a nonzero polynomial.
fn distinct_roots(g: &UniPoly<Gf>, q: u64) -> usize {
    match g.degree() {
        None => panic!("zero polynomial has every root"),
        Some(0) => 0,
        Some(_) => {
            let t = UniPoly::t(g.field_zero());
            let frob = t.pow_mod(q, g);
            UniPoly::gcd(&(frob - t), g).degree().unwrap_or(0)
        }
    }
}

/// Number of common zeros of `f₀, f₁, f₂` in `ℙ²(F_q)`, line by line: on
/// each line `X = x` the common zeros are the `F_q`-roots of the gcd of the
/// restrictions, counted as `deg gcd(g, Yᵠ − Y)`.
pub fn count_common_zeros(map: &CompiledMap) -> usize {
    let ctx = *map.context();
    let q = ctx.order();
    let (zero, one) = (ctx.zero(), ctx.from_i64(1));
    let on_line = |p: ScanPoint, dir: ScanPoint| {
        let g = (0..3).fold(UniPoly::zero(&zero), |acc, j| {
            UniPoly::gcd(&acc, &map.restrict(j, &p, &dir))
        });
        distinct_roots(&g, q)
    };
    let affine: usize = (0..q)
        .into_par_iter()
        .map(|a| on_line([ctx.element(a), zero, one], [zero, one, zero]))
        .sum();
    let infinite = on_line([one, zero, zero], [zero, one, zero]);
    let last = usize::from(map.eval(&[zero, one, zero]).iter().all(|c| c.is_zero()));
    affine + infinite + last
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub p: u64,
    pub k: usize,
    pub count: usize,
}

/// Indeterminacy counts over `F_{p^k}` for every prime and every
/// `k ≤ max_extension`.
pub fn indeterminacy_census(
    map: &ExplicitMapF,
    primes: &[u64],
    max_extension: usize,
) -> Result<Vec<CensusEntry>, OctagonError> {
    let mut out = Vec::new();
    for &p in primes {
        for k in 1..=max_extension {
            let ctx =
                GfContext::new(p, k).map_err(|e| OctagonError::NotRepresentable(e.to_string()))?;
            let compiled = CompiledMap::new(map, ctx)?;
            out.push(CensusEntry {
                p,
                k,
                count: count_common_zeros(&compiled),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octagon::formula::printed_f;

    fn compiled(p: u64, k: usize) -> CompiledMap {
        CompiledMap::new(&printed_f(), GfContext::new(p, k).unwrap()).unwrap()
    }

    #[test]
    fn line_count_matches_point_scan() {
        for (p, k) in [(5, 1), (13, 1), (7, 2), (5, 2)] {
            let m = compiled(p, k);
            assert_eq!(
                count_common_zeros(&m),
                image_histogram(&m).indeterminate.len(),
                "p={p} k={k}"
            );
        }
    }

    #[test]
    fn histogram_accounts_for_every_point() {
        let m = compiled(13, 1);
        let h = image_histogram(&m);
        let total: usize = h.counts.values().sum();
        assert_eq!(total + h.indeterminate.len(), 13 * 13 + 13 + 1);
    }

    #[test]
    fn rotation_fixed_points() {
        let m = compiled(13, 1);
        let ctx = *m.context();
        let i = m.imaginary_unit().unwrap();
        let (zero, one) = (ctx.zero(), ctx.from_i64(1));
        assert!(m.is_rotation_fixed_point(&[zero, zero, one]));
        assert!(m.is_rotation_fixed_point(&[one, i, zero]));
        assert!(m.is_rotation_fixed_point(&[one + one, -(i + i), zero]));
        assert!(!m.is_rotation_fixed_point(&[one, one, one]));
        assert_eq!(
            fiber_count(&m, &[zero, zero, one]),
            Err(OctagonError::ExcludedTarget)
        );
        assert!(compiled(7, 1).imaginary_unit().is_none());
    }
}
