use crate::field::{Dual, Field, Fp, Ring};
use crate::geometry::ProjPoint;
use crate::sample::{random_fp, trial_rng};

use super::{apply_rule, LocalRule, PolygonWindow};

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<Fp>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col] * inv;
                for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = *x - f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Jacobian of the closed-polygon map in affine charts at one point, or
/// `None` if the map or a chart is undefined there.
fn jacobian_at(rule: &LocalRule, xy: &[(Fp, Fp)]) -> Option<Vec<Vec<Fp>>> {
    let n = xy.len();
    let mut columns = Vec::with_capacity(2 * n);
    for var in 0..2 * n {
        let pts: Vec<ProjPoint<Dual<Fp>>> = xy
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| {
                let lift = |v: Fp, k: usize| {
                    if var == 2 * i + k {
                        Dual::variable(v)
                    } else {
                        Dual::constant(v)
                    }
                };
                ProjPoint([lift(x, 0), lift(y, 1), Dual::constant(x.one_like())])
            })
            .collect();
        let w = PolygonWindow::cyclic(pts).ok()?;
        let out = apply_rule(rule, &w).ok()?;
        let mut col = Vec::with_capacity(2 * n);
        for p in out.vertices() {
            let zi = p.0[2].inv()?;
            col.push((p.0[0].clone() * zi.clone()).slope);
            col.push((p.0[1].clone() * zi).slope);
        }
        columns.push(col);
    }
    Some(columns)
}

/// Looks for a point of `(𝔸²)^n(F_p)` where the differential of the
/// closed-polygon map has full rank `2n`.
///
/// `true` certifies dominance; `false` only means no witness was found.
pub fn dominance_test(rule: &LocalRule, n: usize, prime: u64, trials: usize, seed: u64) -> bool {
    if rule.output_indexing(super::Indexing::Cyclic(n)).is_err() {
        return false;
    }
    (0..trials as u64).any(|trial| {
        let mut rng = trial_rng(seed, prime, trial);
        let xy: Vec<(Fp, Fp)> = (0..n)
            .map(|_| (random_fp(&mut rng, prime), random_fp(&mut rng, prime)))
            .collect();
        jacobian_at(rule, &xy).is_some_and(|j| rank_mod_p(j) == 2 * n)
    })
}
