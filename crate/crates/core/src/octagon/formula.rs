//! The closed form of `f`, both transcribed and rederived from the octagon.

use num_traits::ToPrimitive;

use super::{octagon_from_moduli, rotate, OctagonError};
use crate::field::{Field, GaussianRational, MPoly, Monomial, Projective, Rational, Ring, UniPoly};
use crate::geometry::ProjPoint;
use crate::lattice::{apply_rule, LocalRule};

type Gq = GaussianRational;

fn g(n: i64) -> Gq {
    Gq::from_ints(n, 0)
}

fn xyz() -> [MPoly<Gq>; 3] {
    MPoly::vars(&g(0))
}

fn c(n: i64) -> MPoly<Gq> {
    MPoly::constant(g(n))
}

fn gc(re: i64, im: i64) -> MPoly<Gq> {
    MPoly::constant(Gq::from_ints(re, im))
}

/// Homogeneous degree-5 triple `[f₀ : f₁ : f₂]` over ℚ(i).
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitMapF {
    pub components: [MPoly<Gq>; 3],
}

impl ExplicitMapF {
    pub fn degree(&self) -> Option<usize> {
        self.components
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
    }

    /// Coordinates of `f` mapped into another field; `i` is needed only
    /// when a coefficient is not real.
    pub fn over<F: Field>(&self, like: &F, i: Option<&F>) -> Result<[MPoly<F>; 3], OctagonError> {
        let mut out: [MPoly<F>; 3] = std::array::from_fn(|_| MPoly::zero(like));
        for (k, p) in self.components.iter().enumerate() {
            let terms: Result<Vec<(Monomial, F)>, OctagonError> = p
                .terms()
                .map(|(m, c)| Ok((*m, gaussian_to_field(c, like, i)?)))
                .collect();
            out[k] = MPoly::from_terms(like, terms?);
        }
        Ok(out)
    }

    pub fn eval(&self, p: &[Gq; 3]) -> [Gq; 3] {
        std::array::from_fn(|k| self.components[k].eval(p))
    }

    /// Composition with a parametrization `[x(s) : y(s) : z(s)]`.
    pub fn compose(&self, param: &[MPoly<Gq>; 3]) -> [MPoly<Gq>; 3] {
        std::array::from_fn(|k| self.components[k].substitute(param))
    }

    /// Complex conjugate of every coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            components: self
                .components
                .clone()
                .map(|p| p.map_coeffs(&g(0), Gq::conj)),
        }
    }

    /// A line on which the three components have no common zero, which
    /// rules out a common polynomial factor: such a factor would vanish
    /// somewhere on every line.
    ///
    /// Returns the line as `(p, q)` with points `p + t·q`, `t = ∞` giving `q`.
    pub fn coprimality_witness(&self) -> Option<([Gq; 3], [Gq; 3])> {
        let candidates = [
            ([1, 2, 3], [-2, 5, 1]),
            ([3, -1, 2], [1, 1, 7]),
            ([2, 7, -5], [4, -3, 1]),
        ];
        candidates.into_iter().find_map(|(p, q)| {
            let (p, q) = (p.map(g), q.map(g));
            let restricted = self.components.iter().map(|f| f.restrict_to_line(&p, &q));
            let common = restricted.fold(UniPoly::zero(&g(0)), |acc, r| UniPoly::gcd(&acc, &r));
            let at_infinity = self.eval(&q);
            (common.degree() == Some(0) && at_infinity.iter().any(|x| !x.is_zero()))
                .then_some((p, q))
        })
    }
}

/// Image of `x = a + b·i` in `like`'s field, with `i ↦ i`.
pub fn gaussian_to_field<F: Field>(x: &Gq, like: &F, i: Option<&F>) -> Result<F, OctagonError> {
    let part = |r: &Rational| -> Result<F, OctagonError> {
        let bad = || OctagonError::NotRepresentable(x.to_string());
        let n = r.numer().to_i64().ok_or_else(bad)?;
        let d = r.denom().to_i64().ok_or_else(bad)?;
        like.from_i64_like(n)
            .div(&like.from_i64_like(d))
            .map_err(|_| bad())
    };
    let re = part(&x.re)?;
    if x.is_real() {
        return Ok(re);
    }
    let i = i.ok_or_else(|| OctagonError::NotRepresentable(x.to_string()))?;
    Ok(re + part(&x.im)? * i.clone())
}

/// `f` as printed, built from its factored form.
pub fn printed_f() -> ExplicitMapF {
    let [x, y, z] = xyz();
    let a = -(x.clone() * y.clone() * z.clone()) - x.pow(2) * z.clone()
        + x.pow(3)
        + x.clone() * y.pow(2);
    let b = x.pow(2) * y.clone() + c(2) * x.pow(2) * z.clone() + y.pow(3) + y.pow(2) * z.clone()
        - x.clone() * y.clone() * z.clone();
    let l1 = x.clone() + y.clone() + z.clone();
    let m = x.clone() - y.clone() + z.clone();
    let f0 = l1.clone() * (m.clone() * a.clone() + c(2) * y.clone() * b.clone());
    let f1 = l1 * (c(-2) * y.clone() * a + m * b);
    let [_, l2, l3] = contracted_lines();
    let f2 = l2 * l3 * (x.pow(2) + y.pow(2) + x.clone() * z.clone() + y * z.clone()) * z;
    ExplicitMapF {
        components: [f0, f1, f2],
    }
}

/// `L₁ = X + Y + Z`, `L₂ = X − (1+2i)Y + Z`, `L₃ = X − (1−2i)Y + Z`.
pub fn contracted_lines() -> [MPoly<Gq>; 3] {
    let [x, y, z] = xyz();
    [
        x.clone() + y.clone() + z.clone(),
        x.clone() - gc(1, 2) * y.clone() + z.clone(),
        x - gc(1, -2) * y + z,
    ]
}

const C4_TERMS: [(i64, [u16; 3]); 47] = [
    (-1, [9, 0, 0]),
    (-3, [8, 1, 0]),
    (-2, [7, 2, 0]),
    (-6, [6, 3, 0]),
    (2, [3, 6, 0]),
    (6, [2, 7, 0]),
    (1, [1, 8, 0]),
    (3, [0, 9, 0]),
    (2, [8, 0, 1]),
    (-22, [7, 1, 1]),
    (-4, [6, 2, 1]),
    (-58, [5, 3, 1]),
    (-20, [4, 4, 1]),
    (-50, [3, 5, 1]),
    (-20, [2, 6, 1]),
    (-14, [1, 7, 1]),
    (-6, [0, 8, 1]),
    (13, [7, 0, 2]),
    (-25, [6, 1, 2]),
    (9, [5, 2, 2]),
    (-93, [4, 3, 2]),
    (-25, [3, 4, 2]),
    (-83, [2, 5, 2]),
    (-21, [1, 6, 2]),
    (-15, [0, 7, 2]),
    (4, [6, 0, 3]),
    (-12, [5, 1, 3]),
    (-36, [4, 2, 3]),
    (16, [3, 3, 3]),
    (-36, [2, 4, 3]),
    (-12, [1, 5, 3]),
    (4, [0, 6, 3]),
    (-15, [5, 0, 4]),
    (-21, [4, 1, 4]),
    (-68, [3, 2, 4]),
    (-4, [2, 3, 4]),
    (-25, [1, 4, 4]),
    (13, [0, 5, 4]),
    (-6, [4, 0, 5]),
    (-14, [3, 1, 5]),
    (-8, [2, 2, 5]),
    (-22, [1, 3, 5]),
    (2, [0, 4, 5]),
    (3, [3, 0, 6]),
    (1, [2, 1, 6]),
    (-3, [1, 2, 6]),
    (-1, [0, 3, 6]),
];

/// The degree-9 curve `C₄` of the Jacobian locus, as printed.
pub fn printed_c4() -> MPoly<Gq> {
    MPoly::from_terms(&g(0), C4_TERMS.iter().map(|&(c, m)| (m, g(c))))
}

/// `det Df` of a homogeneous triple.
pub fn jacobian_determinant(f: &[MPoly<Gq>; 3]) -> MPoly<Gq> {
    let d: [[MPoly<Gq>; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|k| f[r].partial(k)));
    let minor =
        |a: usize, b: usize| d[1][a].clone() * d[2][b].clone() - d[1][b].clone() * d[2][a].clone();
    d[0][0].clone() * minor(1, 2) - d[0][1].clone() * minor(0, 2) + d[0][2].clone() * minor(0, 1)
}

/// Intermediate and final results of the geometric derivation of `f`.
#[derive(Clone, Debug)]
pub struct Derivation {
    /// First and second vertices of the image octagon, as computed.
    pub v1_image: [MPoly<Gq>; 3],
    pub v2_image: [MPoly<Gq>; 3],
    /// Whether the image octagon is again symmetric under the quarter turn.
    pub image_symmetric: bool,
    /// Entries of the normalizer `[[P₁, −P₂, 0], [P₂, P₁, 0], [0, 0, P₃]]`.
    pub normalizer: [MPoly<Gq>; 3],
    pub derived: ExplicitMapF,
    /// `derived = scalar · printed`, if the two agree up to scale.
    pub scalar: Option<Gq>,
}

fn proportional(a: &[MPoly<Gq>; 3], b: &[MPoly<Gq>; 3]) -> bool {
    (0..3).all(|j| (0..3).all(|k| a[j].clone() * b[k].clone() == a[k].clone() * b[j].clone()))
}

/// The scalar `s` with `a = s·b`, if there is one.
pub fn proportionality_scalar(a: &[MPoly<Gq>; 3], b: &[MPoly<Gq>; 3]) -> Option<Gq> {
    if !proportional(a, b) {
        return None;
    }
    let k = (0..3).find(|&k| !b[k].is_zero())?;
    let (m, bc) = b[k].terms().next()?;
    let s = a[k].coeff(m).div(bc).ok()?;
    (0..3).all(|j| a[j] == b[j].scale(&s)).then_some(s)
}

/// Builds the normalized octagon with symbolic second vertex `[X:Y:Z]`,
/// applies `Skew(0,2,1,4)` with polynomial coordinates, renormalizes with
/// the rotation-commuting matrix fixed by the first image vertex, and reads
/// off the second vertex.
pub fn derive_f() -> Derivation {
    let v2 = ProjPoint::new(xyz()).expect("variables are nonzero");
    let octagon = octagon_from_moduli(&v2).expect("Z is a nonzero polynomial");
    let rule = LocalRule::skew(0, 2, 1, 4).expect("valid parameters");
    let image = apply_rule(&rule, &octagon).expect("generic octagon is in the domain");
    let vertex = |i: i64| image.get(i).expect("cyclic").clone();
    let image_symmetric = (0..8).all(|i| rotate(&vertex(i)).same_as(&vertex(i + 2)));
    let [a, b, cc] = vertex(0).0;
    // M·(a, b, c) ∝ (1, 0, 1) with M of the rotation-commuting shape.
    let p1 = a.clone() * cc.clone();
    let p2 = -(b.clone() * cc.clone());
    let p3 = a.clone() * a.clone() + b.clone() * b.clone();
    let [u, v, w] = vertex(1).0;
    let derived = ExplicitMapF {
        components: [
            p1.clone() * u.clone() - p2.clone() * v.clone(),
            p2.clone() * u + p1.clone() * v,
            p3.clone() * w,
        ],
    };
    let scalar = proportionality_scalar(&derived.components, &printed_f().components);
    Derivation {
        v1_image: [a, b, cc],
        v2_image: vertex(1).0,
        image_symmetric,
        normalizer: [p1, p2, p3],
        derived,
        scalar,
    }
}

/// Printed intermediate values: `v′₁` and `(P₁, P₂, P₃)`.
pub fn printed_intermediates() -> ([MPoly<Gq>; 3], [MPoly<Gq>; 3]) {
    let [x, y, z] = xyz();
    let l1 = x.clone() + y.clone() + z.clone();
    let m = x.clone() - y.clone() + z.clone();
    let v1 = [m.clone(), c(2) * y.clone(), l1.clone()];
    let [_, l2, l3] = contracted_lines();
    (v1, [l1.clone() * m, c(-2) * y * l1, l2 * l3])
}

/// `f(point)`; fails on the indeterminacy locus.
pub fn eval_f<F: Field + Projective>(
    map: &ExplicitMapF,
    point: &ProjPoint<F>,
) -> Result<ProjPoint<F>, OctagonError> {
    let like = point.x();
    let f = map.over(like, None)?;
    let v: [F; 3] = std::array::from_fn(|k| f[k].eval(point.coords()));
    ProjPoint::new(v).map_err(|_| OctagonError::Indeterminate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Fp};

    #[test]
    fn printed_formula_has_degree_five_and_real_coefficients() {
        let f = printed_f();
        for p in &f.components {
            assert!(p.is_homogeneous());
            assert_eq!(p.total_degree(), Some(5));
            assert!(p.terms().all(|(_, c)| c.is_real()));
        }
        assert!(f.coprimality_witness().is_some());
    }

    #[test]
    fn c4_is_homogeneous_of_degree_nine() {
        let c4 = printed_c4();
        assert!(c4.is_homogeneous());
        assert_eq!(c4.total_degree(), Some(9));
        assert_eq!(c4.num_terms(), 47);
    }

    #[test]
    fn derivation_reproduces_intermediates() {
        let d = derive_f();
        let (v1, p) = printed_intermediates();
        assert!(d.image_symmetric);
        assert!(proportionality_scalar(&d.v1_image, &v1).is_some());
        assert_eq!(d.normalizer, p);
        assert_eq!(d.scalar, Some(g(1)));
    }

    #[test]
    fn two_cycle() {
        let f = printed_f();
        let a = ProjPoint::new([rational(1, 1), rational(0, 1), rational(1, 1)]).unwrap();
        let b = eval_f(&f, &a).unwrap();
        assert!(
            b.same_as(&ProjPoint::new([rational(0, 1), rational(1, 1), rational(1, 1)]).unwrap())
        );
        assert!(eval_f(&f, &b).unwrap().same_as(&a));
    }

    #[test]
    fn origin_is_indeterminate() {
        let p = ProjPoint::new([Fp::new(0, 97), Fp::new(0, 97), Fp::new(1, 97)]).unwrap();
        assert_eq!(eval_f(&printed_f(), &p), Err(OctagonError::Indeterminate));
    }

    #[test]
    fn field_embedding() {
        let i = Fp::new(22, 97);
        assert_eq!(i * i, Fp::new(-1, 97));
        let x = Gq::new(rational(1, 2), rational(3, 1));
        let y = gaussian_to_field(&x, &i, Some(&i)).unwrap();
        assert_eq!(y * Fp::new(2, 97), Fp::new(1, 97) + Fp::new(6, 97) * i);
        assert!(gaussian_to_field(&x, &i, None).is_err());
        assert!(gaussian_to_field(&Gq::new(rational(1, 97), rational(0, 1)), &i, None).is_err());
    }
}
