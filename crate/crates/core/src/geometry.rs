//! Points and lines of the projective plane over an exact coordinate ring.
//!
//! Join and meet are both the cross product; a vanishing cross product means
//! the two inputs coincide and the operation is undefined. Everything here is
//! generic over [`Projective`], so the same code runs on field elements, on
//! polynomials in a specialization parameter and on dual numbers.

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{
    Field, FieldElem, FieldError, Fp, GaussianRational, Projective, QuadExt, Rational, Ring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("points coincide, their join is undefined")]
    CoincidentPoints,
    #[error("lines coincide, their meet is undefined")]
    CoincidentLines,
    #[error("all three coordinates are zero")]
    ZeroTriple,
    #[error("point {0} lies on the line at infinity")]
    NotAffine(usize),
    #[error("vanishing denominator between points {0} and {1}")]
    VanishingDenominator(usize, usize),
    #[error("points are not in general linear position")]
    Degenerate,
    #[error("malformed coordinate: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Homogeneous coordinates `[X:Y:Z]`.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPoint<R>(pub [R; 3]);

/// Line `αX + βY + γZ = 0` stored as `[α:β:γ]`.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjLine<R>(pub [R; 3]);

pub fn cross<R: Ring>(u: &[R; 3], v: &[R; 3]) -> [R; 3] {
    [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

pub fn dot<R: Ring>(u: &[R; 3], v: &[R; 3]) -> R {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone() + u[2].clone() * v[2].clone()
}

pub fn det3<R: Ring>(a: &[R; 3], b: &[R; 3], c: &[R; 3]) -> R {
    dot(a, &cross(b, c))
}

fn all_zero<R: Ring>(v: &[R; 3]) -> bool {
    v.iter().all(|c| c.is_zero())
}

impl<R: Projective> ProjPoint<R> {
    /// Canonicalizes the coordinates; rejects the zero triple.
    pub fn new(coords: [R; 3]) -> Result<Self, GeometryError> {
        if all_zero(&coords) {
            return Err(GeometryError::ZeroTriple);
        }
        Ok(Self(R::normalize_triple(coords)))
    }

    pub fn coords(&self) -> &[R; 3] {
        &self.0
    }

    pub fn x(&self) -> &R {
        &self.0[0]
    }

    pub fn y(&self) -> &R {
        &self.0[1]
    }

    pub fn z(&self) -> &R {
        &self.0[2]
    }

    /// Equality up to scale.
    pub fn same_as(&self, other: &Self) -> bool {
        all_zero(&cross(&self.0, &other.0))
    }

    pub fn is_affine(&self) -> bool {
        !self.0[2].is_zero()
    }

    pub fn lies_on(&self, line: &ProjLine<R>) -> bool {
        dot(&self.0, &line.0).is_zero()
    }

    pub fn map<S: Projective>(&self, f: impl Fn(&R) -> S) -> ProjPoint<S> {
        ProjPoint(std::array::from_fn(|k| f(&self.0[k])))
    }
}

impl<F: Field + Projective> ProjPoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        let one = x.one_like();
        Self::new([x, y, one]).expect("z = 1")
    }

    /// Affine coordinates `(X/Z, Y/Z)`.
    pub fn to_affine(&self) -> Option<(F, F)> {
        let zi = self.0[2].inv()?;
        Some((self.0[0].clone() * zi.clone(), self.0[1].clone() * zi))
    }

    /// Affine coordinate `k` (0 for x, 1 for y).
    pub fn affine_coord(&self, k: usize) -> Option<F> {
        let zi = self.0[2].inv()?;
        Some(self.0[k].clone() * zi)
    }
}

impl<R: Projective> ProjLine<R> {
    pub fn new(coords: [R; 3]) -> Result<Self, GeometryError> {
        if all_zero(&coords) {
            return Err(GeometryError::ZeroTriple);
        }
        Ok(Self(R::normalize_triple(coords)))
    }

    pub fn coords(&self) -> &[R; 3] {
        &self.0
    }

    pub fn same_as(&self, other: &Self) -> bool {
        all_zero(&cross(&self.0, &other.0))
    }
}

/// Line through two distinct points.
pub fn join<R: Projective>(
    p: &ProjPoint<R>,
    q: &ProjPoint<R>,
) -> Result<ProjLine<R>, GeometryError> {
    let c = cross(&p.0, &q.0);
    if all_zero(&c) {
        return Err(GeometryError::CoincidentPoints);
    }
    Ok(ProjLine(R::normalize_triple(c)))
}

/// Intersection point of two distinct lines.
pub fn meet<R: Projective>(
    l: &ProjLine<R>,
    m: &ProjLine<R>,
) -> Result<ProjPoint<R>, GeometryError> {
    let c = cross(&l.0, &m.0);
    if all_zero(&c) {
        return Err(GeometryError::CoincidentLines);
    }
    Ok(ProjPoint(R::normalize_triple(c)))
}

/// `meet(join(p, q), join(r, s))` without canonicalizing the result.
pub fn meet_of_joins_raw<R: Projective>(
    p: &ProjPoint<R>,
    q: &ProjPoint<R>,
    r: &ProjPoint<R>,
    s: &ProjPoint<R>,
) -> Result<[R; 3], GeometryError> {
    let l = join(p, q)?;
    let m = join(r, s)?;
    let c = cross(&l.0, &m.0);
    if all_zero(&c) {
        return Err(GeometryError::CoincidentLines);
    }
    Ok(c)
}

pub fn collinear<R: Ring>(p: &ProjPoint<R>, q: &ProjPoint<R>, r: &ProjPoint<R>) -> bool {
    det3(&p.0, &q.0, &r.0).is_zero()
}

/// Pairwise distinct and no three collinear.
pub fn general_linear_position<R: Projective>(points: &[ProjPoint<R>]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i].same_as(&points[j]) {
                return false;
            }
            for k in j + 1..n {
                if collinear(&points[i], &points[j], &points[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Invertible 3×3 matrix acting on points, up to scale.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjTransform<F> {
    m: [[F; 3]; 3],
}

impl<F: Field + Projective> ProjTransform<F> {
    pub fn new(m: [[F; 3]; 3]) -> Result<Self, GeometryError> {
        let t = Self { m };
        if t.det().is_zero() {
            return Err(GeometryError::Degenerate);
        }
        Ok(t)
    }

    pub fn identity(like: &F) -> Self {
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                if r == c {
                    like.one_like()
                } else {
                    like.zero_like()
                }
            })
        });
        Self { m }
    }

    pub fn matrix(&self) -> &[[F; 3]; 3] {
        &self.m
    }

    fn column(&self, c: usize) -> [F; 3] {
        std::array::from_fn(|r| self.m[r][c].clone())
    }

    pub fn det(&self) -> F {
        det3(&self.m[0], &self.m[1], &self.m[2])
    }

    pub fn apply_raw(&self, v: &[F; 3]) -> [F; 3] {
        std::array::from_fn(|r| dot(&self.m[r], v))
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint::new(self.apply_raw(&p.0)).expect("invertible map sends nonzero to nonzero")
    }

    /// Image of a line: the inverse transpose acts on dual coordinates.
    pub fn apply_line(&self, l: &ProjLine<F>) -> ProjLine<F> {
        let adj = self.adjugate();
        let v: [F; 3] = std::array::from_fn(|c| {
            (0..3).fold(l.0[0].zero_like(), |acc, r| {
                acc + adj.m[r][c].clone() * l.0[r].clone()
            })
        });
        ProjLine::new(v).expect("invertible map sends nonzero to nonzero")
    }

    /// Adjugate matrix, which is the inverse up to the scalar `det`.
    pub fn adjugate(&self) -> Self {
        let cols = [self.column(0), self.column(1), self.column(2)];
        // Row r of the adjugate is the cross product of the other two columns.
        let rows = [
            cross(&cols[1], &cols[2]),
            cross(&cols[2], &cols[0]),
            cross(&cols[0], &cols[1]),
        ];
        Self { m: rows }
    }

    pub fn inverse(&self) -> Self {
        self.adjugate()
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &Self) -> Self {
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                (0..3).fold(self.m[0][0].zero_like(), |acc, k| {
                    acc + self.m[r][k].clone() * rhs.m[k][c].clone()
                })
            })
        });
        Self { m }
    }

    /// Equality up to a nonzero scalar.
    pub fn same_as(&self, other: &Self) -> bool {
        let a: Vec<F> = self.m.iter().flatten().cloned().collect();
        let b: Vec<F> = other.m.iter().flatten().cloned().collect();
        let Some(k) = a.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if b[k].is_zero() {
            return false;
        }
        (0..9).all(|j| (a[j].clone() * b[k].clone() - b[j].clone() * a[k].clone()).is_zero())
    }

    /// Rescales so the first nonzero entry is one.
    pub fn normalized(&self) -> Self {
        let s = self
            .m
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .and_then(|x| x.inv())
            .expect("invertible matrix has a nonzero entry");
        Self {
            m: self.m.clone().map(|row| row.map(|x| x * s.clone())),
        }
    }
}

/// Matrix sending the standard frame `e1, e2, e3, e1+e2+e3` to `frame`.
fn from_standard_frame<F: Field + Projective>(
    frame: &[ProjPoint<F>; 4],
) -> Result<ProjTransform<F>, GeometryError> {
    let p: [&[F; 3]; 4] = std::array::from_fn(|k| &frame[k].0);
    let d = det3(p[0], p[1], p[2]);
    let d_inv = d.inv().ok_or(GeometryError::Degenerate)?;
    // Cramer: p4 = λ1 p1 + λ2 p2 + λ3 p3.
    let lambda = [
        det3(p[3], p[1], p[2]) * d_inv.clone(),
        det3(p[0], p[3], p[2]) * d_inv.clone(),
        det3(p[0], p[1], p[3]) * d_inv,
    ];
    if lambda.iter().any(|l| l.is_zero()) {
        return Err(GeometryError::Degenerate);
    }
    let m = std::array::from_fn(|r| std::array::from_fn(|c| lambda[c].clone() * p[c][r].clone()));
    Ok(ProjTransform { m })
}

/// The unique projective transformation with `A·source_i = target_i`.
pub fn transform_to_frame<F: Field + Projective>(
    source: &[ProjPoint<F>; 4],
    target: &[ProjPoint<F>; 4],
) -> Result<ProjTransform<F>, GeometryError> {
    if !general_linear_position(source) || !general_linear_position(target) {
        return Err(GeometryError::Degenerate);
    }
    let s = from_standard_frame(source)?;
    let t = from_standard_frame(target)?;
    Ok(t.compose(&s.inverse()).normalized())
}

/// The Menelaus product
/// `(A−F)/(F−B) · (B−D)/(D−C) · (C−E)/(E−A)` on coordinate `k` (0 = x,
/// 1 = y) of six affine points.
pub fn menelaus_residual_coord<F: Field + Projective>(
    pts: [&ProjPoint<F>; 6],
    k: usize,
) -> Result<F, GeometryError> {
    let mut c = Vec::with_capacity(6);
    for (idx, p) in pts.iter().enumerate() {
        c.push(p.affine_coord(k).ok_or(GeometryError::NotAffine(idx))?);
    }
    let (a, b, cc, d, e, f) = (&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]);
    let ratio = |num: F, den: F, i: usize, j: usize| -> Result<F, GeometryError> {
        num.div(&den)
            .map_err(|_| GeometryError::VanishingDenominator(i, j))
    };
    let r1 = ratio(a.clone() - f.clone(), f.clone() - b.clone(), 5, 1)?;
    let r2 = ratio(b.clone() - d.clone(), d.clone() - cc.clone(), 3, 2)?;
    let r3 = ratio(cc.clone() - e.clone(), e.clone() - a.clone(), 4, 0)?;
    Ok(r1 * r2 * r3)
}

/// Menelaus product on x-coordinates for points `A, B, C, D, E, F`.
pub fn menelaus_residual<F: Field + Projective>(
    a: &ProjPoint<F>,
    b: &ProjPoint<F>,
    c: &ProjPoint<F>,
    d: &ProjPoint<F>,
    e: &ProjPoint<F>,
    f: &ProjPoint<F>,
) -> Result<F, GeometryError> {
    menelaus_residual_coord([a, b, c, d, e, f], 0)
}

/// Builds the Menelaus configuration from four points: `A = BF ∩ CE`,
/// `D = BC ∩ EF`.
pub fn menelaus_configuration<R: Projective>(
    b: &ProjPoint<R>,
    c: &ProjPoint<R>,
    e: &ProjPoint<R>,
    f: &ProjPoint<R>,
) -> Result<(ProjPoint<R>, ProjPoint<R>), GeometryError> {
    let a = meet(&join(b, f)?, &join(c, e)?)?;
    let d = meet(&join(b, c)?, &join(e, f)?)?;
    Ok((a, d))
}

/// Which exact field a JSON coordinate should be parsed into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Gaussian,
    Prime(u64),
}

impl FieldKind {
    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            FieldKind::Rational => FieldElem::Rational(crate::field::rational(n, 1)),
            FieldKind::Gaussian => FieldElem::Gaussian(GaussianRational::from_ints(n, 0)),
            FieldKind::Prime(p) => FieldElem::Prime(Fp::new(n, *p)),
        }
    }
}

fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn rational_from_json(v: &Value) -> Result<Rational, GeometryError> {
    let bad = || GeometryError::Parse(v.to_string());
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| bad()),
        Value::Number(n) => n
            .as_i64()
            .map(|n| crate::field::rational(n, 1))
            .ok_or_else(bad),
        _ => Err(bad()),
    }
}

pub fn elem_to_json(x: &FieldElem) -> Value {
    match x {
        FieldElem::Rational(q) => rational_to_json(q),
        FieldElem::Gaussian(z) => {
            json!({"re": rational_to_json(&z.re), "im": rational_to_json(&z.im)})
        }
        FieldElem::Prime(a) => json!(a.value()),
        FieldElem::Quad(q) => {
            let (a, b) = q.parts();
            json!({"a": a.value(), "b": b.value()})
        }
    }
}

pub fn elem_from_json(v: &Value, kind: FieldKind) -> Result<FieldElem, GeometryError> {
    let bad = || GeometryError::Parse(v.to_string());
    match kind {
        FieldKind::Rational => Ok(FieldElem::Rational(rational_from_json(v)?)),
        FieldKind::Gaussian => match v {
            Value::Object(o) => {
                let re = o.get("re").map(rational_from_json).transpose()?;
                let im = o.get("im").map(rational_from_json).transpose()?;
                let zero = crate::field::rational(0, 1);
                Ok(FieldElem::Gaussian(GaussianRational::new(
                    re.unwrap_or_else(|| zero.clone()),
                    im.unwrap_or(zero),
                )))
            }
            _ => Ok(FieldElem::Gaussian(rational_from_json(v)?.into())),
        },
        FieldKind::Prime(p) => match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| FieldElem::Prime(Fp::new(n, p)))
                .ok_or_else(bad),
            Value::String(s) => s
                .trim()
                .parse::<i64>()
                .map(|n| FieldElem::Prime(Fp::new(n, p)))
                .map_err(|_| bad()),
            _ => Err(bad()),
        },
    }
}

pub fn point_to_json(p: &ProjPoint<FieldElem>) -> Value {
    Value::Array(p.0.iter().map(elem_to_json).collect())
}

pub fn point_from_json(v: &Value, kind: FieldKind) -> Result<ProjPoint<FieldElem>, GeometryError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| GeometryError::Parse(v.to_string()))?;
    let c = [
        elem_from_json(&arr[0], kind)?,
        elem_from_json(&arr[1], kind)?,
        elem_from_json(&arr[2], kind)?,
    ];
    ProjPoint::new(c)
}

/// Raw quadratic-extension pair, used only for display.
pub fn quad_parts(q: &QuadExt) -> (u64, u64) {
    let (a, b) = q.parts();
    (a.value(), b.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn q(x: i64, y: i64, z: i64) -> ProjPoint<Rational> {
        ProjPoint::new([rational(x, 1), rational(y, 1), rational(z, 1)]).unwrap()
    }

    fn fp(x: i64, y: i64, z: i64) -> ProjPoint<Fp> {
        let p = 10009;
        ProjPoint::new([Fp::new(x, p), Fp::new(y, p), Fp::new(z, p)]).unwrap()
    }

    #[test]
    fn join_and_meet_of_axes() {
        let l = join(&q(1, 0, 0), &q(0, 1, 0)).unwrap();
        assert_eq!(l.0, q(0, 0, 1).0);
        let lx = ProjLine::new([rational(1, 1), rational(0, 1), rational(0, 1)]).unwrap();
        let ly = ProjLine::new([rational(0, 1), rational(1, 1), rational(0, 1)]).unwrap();
        assert_eq!(meet(&lx, &ly).unwrap(), q(0, 0, 1));
    }

    #[test]
    fn coincident_inputs_rejected() {
        assert_eq!(
            join(&q(1, 2, 3), &q(2, 4, 6)),
            Err(GeometryError::CoincidentPoints)
        );
        let l = join(&q(1, 0, 0), &q(0, 1, 0)).unwrap();
        assert_eq!(meet(&l, &l), Err(GeometryError::CoincidentLines));
    }

    #[test]
    fn canonical_rational_representative() {
        let p = ProjPoint::new([rational(-2, 3), rational(4, 3), rational(0, 1)]).unwrap();
        assert_eq!(p, q(1, -2, 0));
        assert_eq!(ProjPoint::new(p.0.clone()).unwrap(), p);
    }

    #[test]
    fn frame_positions() {
        let frame = [q(1, 0, 0), q(0, 1, 0), q(0, 0, 1), q(1, 1, 1)];
        assert!(general_linear_position(&frame));
        assert!(!general_linear_position(&[
            q(1, 0, 0),
            q(0, 1, 0),
            q(2, 0, 0)
        ]));
        assert!(!general_linear_position(&[
            q(1, 0, 0),
            q(1, 1, 0),
            q(0, 1, 0)
        ]));
        let t = transform_to_frame(&frame, &frame).unwrap();
        assert!(t.same_as(&ProjTransform::identity(&rational(0, 1))));
    }

    #[test]
    fn frame_round_trip() {
        let f = [fp(3, 1, 4), fp(1, 5, 9), fp(2, 6, 5), fp(3, 5, 8)];
        let g = [fp(2, 7, 1), fp(8, 2, 8), fp(1, 8, 2), fp(8, 4, 5)];
        let a = transform_to_frame(&f, &g).unwrap();
        for k in 0..4 {
            assert!(a.apply(&f[k]).same_as(&g[k]));
        }
        let b = transform_to_frame(&g, &f).unwrap();
        assert!(b
            .compose(&a)
            .same_as(&ProjTransform::identity(&Fp::new(0, 10009))));
    }

    #[test]
    fn mirrored_menelaus_configuration() {
        // x(C) = −x(B), x(E) = −x(F).
        let b = ProjPoint::affine(rational(1, 1), rational(2, 1));
        let c = ProjPoint::affine(rational(-1, 1), rational(5, 1));
        let e = ProjPoint::affine(rational(-3, 1), rational(-1, 1));
        let f = ProjPoint::affine(rational(3, 1), rational(4, 1));
        let (a, d) = menelaus_configuration(&b, &c, &e, &f).unwrap();
        assert_eq!(
            menelaus_residual(&a, &b, &c, &d, &e, &f).unwrap(),
            rational(-1, 1)
        );
    }

    #[test]
    fn fully_symmetric_frame_collapses() {
        // Also forcing A and D onto the y-axis puts all four points on one
        // line, so the configuration is undefined.
        let b = ProjPoint::affine(rational(1, 1), rational(2, 1));
        let c = ProjPoint::affine(rational(-1, 1), rational(4, 1));
        let e = ProjPoint::affine(rational(-3, 1), rational(6, 1));
        let f = ProjPoint::affine(rational(3, 1), rational(0, 1));
        assert!(!general_linear_position(&[
            b.clone(),
            c.clone(),
            e.clone(),
            f.clone()
        ]));
        assert!(menelaus_configuration(&b, &c, &e, &f).is_err());
    }

    #[test]
    fn shared_x_coordinate_rejected() {
        let b = ProjPoint::affine(rational(1, 1), rational(2, 1));
        let f = ProjPoint::affine(rational(1, 1), rational(5, 1));
        let o = ProjPoint::affine(rational(7, 1), rational(3, 1));
        let r = menelaus_residual(&o, &b, &o, &o, &o, &f);
        assert!(matches!(r, Err(GeometryError::VanishingDenominator(5, 1))));
    }

    #[test]
    fn json_round_trip() {
        let p = ProjPoint::new([
            FieldElem::Rational(rational(1, 2)),
            FieldElem::Rational(rational(-3, 1)),
            FieldElem::Rational(rational(1, 1)),
        ])
        .unwrap();
        let v = point_to_json(&p);
        assert_eq!(v, json!(["1", "-6", "2"]));
        assert_eq!(point_from_json(&v, FieldKind::Rational).unwrap(), p);
        let g = json!([{"re": "1", "im": "2"}, "0", {"re": "1"}]);
        let pg = point_from_json(&g, FieldKind::Gaussian).unwrap();
        assert_eq!(
            point_from_json(&point_to_json(&pg), FieldKind::Gaussian).unwrap(),
            pg
        );
    }
}
