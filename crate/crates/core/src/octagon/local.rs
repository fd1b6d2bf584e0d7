//! Local invariants of plane curves at a point: order of vanishing and
//! intersection multiplicity.
//!
//! The multiplicity of `(g₁, g₂)` at `P` is `dim O_P / (g₁, g₂)`. It is
//! computed as the colength of `(g₁, g₂) + m^k` for growing `k`, which only
//! needs linear algebra on polynomials of degree below `k`. Once two
//! consecutive colengths agree, `m^k ⊂ (g₁, g₂) + m^{k+1}`, so by Nakayama
//! `m^k` already lies in the ideal and the value is final.

use std::collections::HashMap;

use super::OctagonError;
use crate::field::{Field, MPoly, Projective};
use crate::geometry::ProjPoint;

/// Largest truncation degree tried before giving up.
pub const MULTIPLICITY_CAP: usize = 8;

/// Rank of a matrix over a field, by row reduction.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let pivot_row: Vec<F> = rows[r].iter().map(|x| x.clone() * inv.clone()).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// Affine chart around `point`: the index of the coordinate set to 1 and
/// the polynomial translated so the point sits at the origin.
fn localize<F: Field + Projective>(poly: &MPoly<F>, point: &ProjPoint<F>) -> (usize, MPoly<F>) {
    let c = point.coords();
    let k = [2, 0, 1]
        .into_iter()
        .find(|&k| !c[k].is_zero())
        .expect("point is nonzero");
    let s = c[k].inv().expect("nonzero");
    let mut shift: [F; 3] = std::array::from_fn(|j| c[j].clone() * s.clone());
    shift[k] = s.zero_like();
    (k, poly.dehomogenize(k).translate(&shift))
}

/// Order of vanishing of a homogeneous polynomial at a point: the lowest
/// total degree after moving the point to the origin of an affine chart.
/// `None` for the zero polynomial.
pub fn vanishing_order<F: Field + Projective>(
    poly: &MPoly<F>,
    point: &ProjPoint<F>,
) -> Option<usize> {
    localize(poly, point).1.min_degree()
}

/// Local intersection multiplicity of two homogeneous polynomials at a
/// point (0 if the point is not on both curves).
pub fn local_intersection_multiplicity<F: Field + Projective>(
    g1: &MPoly<F>,
    g2: &MPoly<F>,
    point: &ProjPoint<F>,
) -> Result<usize, OctagonError> {
    let (k, h1) = localize(g1, point);
    let (_, h2) = localize(g2, point);
    if h1.min_degree() == Some(0) || h2.min_degree() == Some(0) {
        return Ok(0);
    }
    let vars: Vec<usize> = (0..3).filter(|&j| j != k).collect();
    let mut last = Vec::new();
    for d in 1..=MULTIPLICITY_CAP {
        let c = colength(&[&h1, &h2], &vars, d);
        if last.last() == Some(&c) {
            return Ok(c);
        }
        last.push(c);
    }
    Err(OctagonError::NoStabilization {
        cap: MULTIPLICITY_CAP,
        last,
    })
}

/// `dim k[u,v] / (I + m^d)` for `I` generated by `gens`.
fn colength<F: Field>(gens: &[&MPoly<F>], vars: &[usize], d: usize) -> usize {
    let monomials: Vec<(usize, usize)> = (0..d)
        .flat_map(|t| (0..=t).map(move |a| (a, t - a)))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let zero = gens[0].field_zero().clone();
    let mut rows = Vec::new();
    for g in gens {
        for &(a, b) in &monomials {
            let mut row = vec![zero.clone(); monomials.len()];
            for (m, c) in g.terms() {
                let e = (m[vars[0]] as usize + a, m[vars[1]] as usize + b);
                if let Some(&i) = index.get(&e) {
                    row[i] = row[i].clone() + c.clone();
                }
            }
            rows.push(row);
        }
    }
    monomials.len() - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational};

    fn vars() -> [MPoly<Rational>; 3] {
        MPoly::vars(&rational(0, 1))
    }

    fn origin() -> ProjPoint<Rational> {
        ProjPoint::affine(rational(0, 1), rational(0, 1))
    }

    #[test]
    fn orders() {
        let [x, y, z] = vars();
        let f = x.pow(2) * z.clone() + y.pow(3);
        assert_eq!(vanishing_order(&f, &origin()), Some(2));
        assert_eq!(
            vanishing_order(&(x.clone() + z.clone()), &origin()),
            Some(0)
        );
        let p = ProjPoint::affine(rational(-1, 1), rational(0, 1));
        assert_eq!(vanishing_order(&(x + z).pow(3), &p), Some(3));
        assert_eq!(vanishing_order(&MPoly::zero(&rational(0, 1)), &p), None);
    }

    #[test]
    fn classical_multiplicities() {
        let [x, y, z] = vars();
        // Transverse lines, tangent line to a conic, cusp against its tangent.
        assert_eq!(
            local_intersection_multiplicity(&x, &y, &origin()).unwrap(),
            1
        );
        let conic = y.clone() * z.clone() - x.pow(2);
        assert_eq!(
            local_intersection_multiplicity(&conic, &y, &origin()).unwrap(),
            2
        );
        let cusp = y.pow(2) * z.clone() - x.pow(3);
        assert_eq!(
            local_intersection_multiplicity(&cusp, &y, &origin()).unwrap(),
            3
        );
        let node = y.pow(2) * z.clone() - x.pow(2) * (x.clone() + z.clone());
        assert_eq!(
            local_intersection_multiplicity(&node, &cusp, &origin()).unwrap(),
            4
        );
        assert_eq!(
            local_intersection_multiplicity(&(x.clone() - z.clone()), &y, &origin()).unwrap(),
            0
        );
    }

    #[test]
    fn multiplicity_at_infinity() {
        let [x, y, z] = vars();
        let p = ProjPoint::new([rational(1, 1), rational(0, 1), rational(0, 1)]).unwrap();
        let conic = y.clone() * x.clone() - z.pow(2);
        assert_eq!(local_intersection_multiplicity(&conic, &y, &p).unwrap(), 2);
    }

    #[test]
    fn no_stabilization_is_an_error() {
        let [_, y, _] = vars();
        let err = local_intersection_multiplicity(&y.pow(2), &y, &origin()).unwrap_err();
        assert!(matches!(
            err,
            OctagonError::NoStabilization {
                cap: MULTIPLICITY_CAP,
                ..
            }
        ));
    }

    #[test]
    fn rank_basic() {
        let r = |v: &[i64]| v.iter().map(|&x| rational(x, 1)).collect::<Vec<_>>();
        assert_eq!(rank(vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])]), 2);
        assert_eq!(rank::<Rational>(vec![]), 0);
    }
}
