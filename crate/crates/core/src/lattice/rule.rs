use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{reduce_triple, Fp, Projective, UniPoly};
use crate::geometry::{cross, join, meet, GeometryError, ProjPoint};
use crate::sample::{random_fp_triple, trial_rng};

use super::{Indexing, LatticeError, PolygonWindow, SkewParams};

/// Local rule of a lattice map on `(ℙ²)^ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalRule {
    /// `v'_i = v_{i+a}v_{i+b} ∩ v_{i+c}v_{i+d}`.
    Skew(SkewParams),
    /// The heat map: with `P = v_i v_{i+2} ∩ v_{i+1} v_{i+3}` and
    /// `Q = v_i v_{i+1} ∩ v_{i+2} v_{i+3}`, the new vertex is where `PQ`
    /// crosses the side `v_{i+1} v_{i+2}`.
    Heat,
    /// `v'_i = v_{i+j}`.
    Shift(i64),
}

impl LocalRule {
    pub fn skew(a: i64, b: i64, c: i64, d: i64) -> Result<Self, LatticeError> {
        Ok(LocalRule::Skew(SkewParams::new(a, b, c, d)?))
    }

    /// Offsets read by the rule, in slot order.
    pub fn neighborhood(&self) -> Vec<i64> {
        match self {
            LocalRule::Skew(p) => p.as_array().to_vec(),
            LocalRule::Heat => vec![0, 1, 2, 3],
            LocalRule::Shift(j) => vec![*j],
        }
    }

    pub fn arity(&self) -> usize {
        self.neighborhood().len()
    }

    /// `(min S, max S)`.
    pub fn span(&self) -> (i64, i64) {
        let s = self.neighborhood();
        (*s.iter().min().unwrap(), *s.iter().max().unwrap())
    }

    /// `max S − min S`.
    pub fn width(&self) -> i64 {
        let (lo, hi) = self.span();
        hi - lo
    }

    /// Degree of the reduced local formula, as established by
    /// [`rule_degree`]; used as metadata only.
    pub fn nominal_degree(&self) -> usize {
        match self {
            LocalRule::Skew(_) | LocalRule::Heat => 4,
            LocalRule::Shift(_) => 1,
        }
    }

    /// Applies the rule to the points in slot order, returning homogeneous
    /// coordinates of the new vertex without canonicalizing them.
    pub fn evaluate_raw<R: Projective>(
        &self,
        v: &[&ProjPoint<R>],
    ) -> Result<[R; 3], GeometryError> {
        match self {
            LocalRule::Skew(_) => {
                let l = join(v[0], v[1])?;
                let m = join(v[2], v[3])?;
                nonzero_cross(&l.0, &m.0)
            }
            LocalRule::Heat => {
                let p = meet(&join(v[0], v[2])?, &join(v[1], v[3])?)?;
                let q = meet(&join(v[0], v[1])?, &join(v[2], v[3])?)?;
                let pq = join(&p, &q)?;
                let side = join(v[1], v[2])?;
                nonzero_cross(&pq.0, &side.0)
            }
            LocalRule::Shift(_) => Ok(v[0].0.clone()),
        }
    }

    pub fn evaluate<R: Projective>(
        &self,
        v: &[&ProjPoint<R>],
    ) -> Result<ProjPoint<R>, GeometryError> {
        Ok(ProjPoint(R::normalize_triple(self.evaluate_raw(v)?)))
    }

    /// Output index set when applied to a window with the given indexing.
    pub fn output_indexing(&self, indexing: Indexing) -> Result<Indexing, LatticeError> {
        match indexing {
            Indexing::Interval(lo, hi) => {
                let (smin, smax) = self.span();
                let (olo, ohi) = (lo - smin, hi - smax);
                if ohi < olo {
                    return Err(LatticeError::WindowTooSmall {
                        len: indexing.len(),
                        width: self.width(),
                    });
                }
                Ok(Indexing::Interval(olo, ohi))
            }
            Indexing::Cyclic(n) => {
                let s = self.neighborhood();
                let r: Vec<i64> = s.iter().map(|x| x.rem_euclid(n as i64)).collect();
                let distinct = (0..r.len()).all(|i| (i + 1..r.len()).all(|j| r[i] != r[j]));
                if !distinct {
                    return Err(LatticeError::NotDistinctModN { rule: *self, n });
                }
                Ok(indexing)
            }
        }
    }
}

impl fmt::Display for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalRule::Skew(p) => write!(f, "skew({p})"),
            LocalRule::Heat => write!(f, "heat"),
            LocalRule::Shift(j) => write!(f, "shift({j})"),
        }
    }
}

fn nonzero_cross<R: Projective>(l: &[R; 3], m: &[R; 3]) -> Result<[R; 3], GeometryError> {
    let c = cross(l, m);
    if c.iter().all(|x| x.is_zero()) {
        return Err(GeometryError::CoincidentLines);
    }
    Ok(c)
}

/// Unnormalized output coordinates of each vertex, or why it is undefined.
pub type RawVertices<R> = Vec<Result<[R; 3], GeometryError>>;

/// Raw output of every vertex, with per-vertex errors.
pub fn apply_rule_each<R: Projective>(
    rule: &LocalRule,
    window: &PolygonWindow<R>,
) -> Result<(Indexing, RawVertices<R>), LatticeError> {
    let out = rule.output_indexing(window.indexing())?;
    let s = rule.neighborhood();
    let results = out
        .indices()
        .into_iter()
        .map(|i| {
            let pts: Vec<&ProjPoint<R>> = s
                .iter()
                .map(|o| window.get(i + o).expect("index in window"))
                .collect();
            rule.evaluate_raw(&pts)
        })
        .collect();
    Ok((out, results))
}

/// Applies the rule at every output index; fails at the first vertex where
/// it is undefined.
pub fn apply_rule<R: Projective>(
    rule: &LocalRule,
    window: &PolygonWindow<R>,
) -> Result<PolygonWindow<R>, LatticeError> {
    let (out, results) = apply_rule_each(rule, window)?;
    let indices = out.indices();
    let mut vertices = Vec::with_capacity(results.len());
    for (i, r) in indices.into_iter().zip(results) {
        match r {
            Ok(c) => vertices.push(ProjPoint(R::normalize_triple(c))),
            Err(source) => return Err(LatticeError::Indeterminate { index: i, source }),
        }
    }
    PolygonWindow::new(out, vertices)
}

/// Applies the rule `m` times.
pub fn iterate_rule<R: Projective>(
    rule: &LocalRule,
    window: &PolygonWindow<R>,
    m: usize,
) -> Result<PolygonWindow<R>, LatticeError> {
    let mut w = window.clone();
    for step in 0..m {
        w = apply_rule(rule, &w).map_err(|e| match e {
            LatticeError::Indeterminate { index, source } => LatticeError::IndeterminateAtStep {
                step: step + 1,
                index,
                source,
            },
            other => other,
        })?;
    }
    Ok(w)
}

/// Large prime used for symbolic degree probes.
const PROBE_PRIME: u64 = 2_147_483_647;

/// Degree of the local formula after cancelling common factors.
///
/// Every slot moves along its own random line `a_j + t·b_j` over a large
/// prime field; the reduced output has `t`-degree equal to the total degree
/// of the reduced multihomogeneous formula unless the specialization is
/// unlucky, which can only lower it, so the maximum over a few probes is
/// taken.
pub fn rule_degree(rule: &LocalRule) -> usize {
    let p = PROBE_PRIME;
    (0..3)
        .filter_map(|trial| {
            let mut rng = trial_rng(0x5eed, p, trial);
            let pts: Vec<ProjPoint<UniPoly<Fp>>> = (0..rule.arity())
                .map(|_| {
                    let a = random_fp_triple(&mut rng, p);
                    let b = random_fp_triple(&mut rng, p);
                    ProjPoint(std::array::from_fn(|k| UniPoly::linear(a[k], b[k])))
                })
                .collect();
            let refs: Vec<&ProjPoint<UniPoly<Fp>>> = pts.iter().collect();
            let [x, y, z] = rule.evaluate_raw(&refs).ok()?;
            reduce_triple(x, y, z).ok().map(|r| r.degree())
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational};

    fn q(x: i64, y: i64) -> ProjPoint<Rational> {
        ProjPoint::affine(rational(x, 1), rational(y, 1))
    }

    #[test]
    fn degrees() {
        assert_eq!(rule_degree(&LocalRule::skew(0, 2, 1, 3).unwrap()), 4);
        assert_eq!(rule_degree(&LocalRule::skew(0, 2, 1, 4).unwrap()), 4);
        assert_eq!(rule_degree(&LocalRule::Heat), 4);
        assert_eq!(rule_degree(&LocalRule::Shift(3)), 1);
    }

    #[test]
    fn interval_shrinks() {
        let w = PolygonWindow::interval(0, (0..10).map(|i| q(i, i * i)).collect()).unwrap();
        let r = LocalRule::skew(0, 2, 1, 4).unwrap();
        let out = apply_rule(&r, &w).unwrap();
        assert_eq!(out.indexing(), Indexing::Interval(0, 5));
        let r = LocalRule::skew(-3, -2, -1, 0).unwrap();
        assert_eq!(
            apply_rule(&r, &w).unwrap().indexing(),
            Indexing::Interval(3, 9)
        );
    }

    #[test]
    fn repeated_vertex_reports_index() {
        let mut pts: Vec<_> = (0..8).map(|i| q(i, i * i + 1)).collect();
        pts[5] = pts[3].clone();
        let w = PolygonWindow::interval(0, pts).unwrap();
        let r = LocalRule::skew(0, 2, 1, 4).unwrap();
        match apply_rule(&r, &w) {
            Err(LatticeError::Indeterminate { index, source }) => {
                assert_eq!(index, 3);
                assert_eq!(source, GeometryError::CoincidentPoints);
            }
            other => panic!("expected indeterminacy, got {other:?}"),
        }
    }

    #[test]
    fn cyclic_requires_distinct_offsets() {
        let w = PolygonWindow::cyclic((0..4).map(|i| q(i, i * i)).collect()).unwrap();
        let r = LocalRule::skew(0, 2, 1, 4).unwrap();
        assert!(matches!(
            apply_rule(&r, &w),
            Err(LatticeError::NotDistinctModN { n: 4, .. })
        ));
    }
}
