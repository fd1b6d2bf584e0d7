//! Contracted curves of `f`, and the lift `f̂` to the blowup `𝒳` of the
//! plane at the three fixed points `p₁ = [0:0:1]`, `p₂ = [1:i:0]`,
//! `p₃ = [1:−i:0]` of the quarter turn.
//!
//! Curves are pushed forward symbolically. A curve is given by a family
//! `γ_ε(t)` in which `ε` is a local equation of the curve, so `γ_0` traces
//! the curve itself. Composing with `f` and a target chart gives ratios of
//! polynomials in `(t, ε)`; the value on the curve is the ratio of the
//! lowest `ε`-coefficients, and the difference of `ε`-orders of a chart's
//! first coordinate is the vanishing order of the exceptional divisor's
//! equation along the curve.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::formula::{contracted_lines, jacobian_determinant, printed_c4, ExplicitMapF};
use super::local::vanishing_order;
use super::OctagonError;
use crate::field::{
    charpoly, integer_roots, Field, GaussianRational, IntMatrix, MPoly, Ring, UniPoly,
};
use crate::geometry::ProjPoint;
use crate::sample::trial_rng;

type Gq = GaussianRational;

fn g(n: i64) -> Gq {
    Gq::from_ints(n, 0)
}

fn gc(re: i64, im: i64) -> MPoly<Gq> {
    MPoly::constant(Gq::from_ints(re, im))
}

fn vars() -> [MPoly<Gq>; 3] {
    MPoly::vars(&g(0))
}

/// Affine charts of `𝒳` around the three exceptional divisors; in each,
/// the divisor is `u = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlowupChart {
    /// `(u, v) = (X/Z, Y/X)` at `p₁`.
    P1,
    /// `(u, v) = (Z/X, (Y − iX)/Z)` at `p₂`.
    P2,
    /// `(u, v) = (Z/X, (Y + iX)/Z)` at `p₃`.
    P3,
}

impl BlowupChart {
    pub const ALL: [BlowupChart; 3] = [BlowupChart::P1, BlowupChart::P2, BlowupChart::P3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["E1", "E2", "E3"][self.index()]
    }

    fn unit(self) -> i64 {
        match self {
            BlowupChart::P2 => 1,
            _ => -1,
        }
    }

    /// The blown-up point.
    pub fn center(self) -> ProjPoint<Gq> {
        let c = match self {
            BlowupChart::P1 => [g(0), g(0), g(1)],
            _ => [g(1), Gq::from_ints(0, self.unit()), g(0)],
        };
        ProjPoint::new(c).expect("nonzero")
    }

    /// `u` and `v` as `(numerator, denominator)` in `X, Y, Z`.
    pub fn forward(self) -> [(MPoly<Gq>, MPoly<Gq>); 2] {
        let [x, y, z] = vars();
        match self {
            BlowupChart::P1 => [(x.clone(), z), (y, x)],
            _ => [(z.clone(), x.clone()), (y - gc(0, self.unit()) * x, z)],
        }
    }

    /// Homogeneous coordinates of the chart point `(u, v)`, with `u` and `v`
    /// given as polynomials in whatever variables the caller uses.
    pub fn backward(self, u: &MPoly<Gq>, v: &MPoly<Gq>) -> [MPoly<Gq>; 3] {
        let one = MPoly::constant(g(1));
        match self {
            BlowupChart::P1 => [u.clone(), u.clone() * v.clone(), one],
            _ => [one, gc(0, self.unit()) + u.clone() * v.clone(), u.clone()],
        }
    }

    /// `forward ∘ backward = id`, checked as polynomial identities in
    /// `(u, v) = (x₀, x₁)`.
    pub fn round_trip_holds(self) -> bool {
        let [u, v, _] = vars();
        let back = self.backward(&u, &v);
        let [(un, ud), (vn, vd)] = self.forward();
        un.substitute(&back) == u * ud.substitute(&back)
            && vn.substitute(&back) == v * vd.substitute(&back)
    }
}

/// The six curves of `𝒳` that could be contracted by `f̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestCurve {
    C1,
    C2,
    C3,
    E1,
    E2,
    E3,
}

impl TestCurve {
    pub const ALL: [TestCurve; 6] = [
        TestCurve::C1,
        TestCurve::C2,
        TestCurve::C3,
        TestCurve::E1,
        TestCurve::E2,
        TestCurve::E3,
    ];

    pub fn name(self) -> &'static str {
        ["C1^", "C2^", "C3^", "E1", "E2", "E3"][self as usize]
    }

    /// `γ_ε(t)` as homogeneous coordinates in `t = x₀`, `ε = x₁`. For the
    /// strict transforms `ε` moves off the line in the `x` direction; for
    /// the exceptional divisors it is the chart coordinate `u`.
    pub fn family(self) -> [MPoly<Gq>; 3] {
        let [t, e, _] = vars();
        let one = MPoly::constant(g(1));
        match self {
            TestCurve::C1 => [t.clone(), gc(-1, 0) - t + e, one],
            TestCurve::C2 => [gc(1, 2) * t.clone() - one.clone() + e, t, one],
            TestCurve::C3 => [gc(1, -2) * t.clone() - one.clone() + e, t, one],
            TestCurve::E1 => BlowupChart::P1.backward(&e, &t),
            TestCurve::E2 => BlowupChart::P2.backward(&e, &t),
            TestCurve::E3 => BlowupChart::P3.backward(&e, &t),
        }
    }

    /// Divisor class in the basis `π*H, E₁, E₂, E₃`.
    pub fn class(self) -> [i64; 4] {
        match self {
            TestCurve::E1 => [0, 1, 0, 0],
            TestCurve::E2 => [0, 0, 1, 0],
            TestCurve::E3 => [0, 0, 0, 1],
            _ => {
                let line = &contracted_lines()[self as usize];
                let mut c = [1, 0, 0, 0];
                for chart in BlowupChart::ALL {
                    let m = vanishing_order(line, &chart.center()).expect("nonzero line");
                    c[chart.index() + 1] = -(m as i64);
                }
                c
            }
        }
    }
}

/// Lowest power of `ε = x₁` and its coefficient as a polynomial in `t = x₀`.
fn leading_in_eps(p: &MPoly<Gq>) -> Option<(usize, UniPoly<Gq>)> {
    let a = p.min_degree_in(1)?;
    let part = p.coeff_in(1, a as u16);
    let deg = part.degree_in(0).unwrap_or(0);
    let coeffs = (0..=deg).map(|e| part.coeff(&[e as u16, 0, 0])).collect();
    Some((a, UniPoly::new(coeffs)))
}

fn reduce(num: UniPoly<Gq>, den: UniPoly<Gq>) -> (UniPoly<Gq>, UniPoly<Gq>) {
    let common = UniPoly::gcd(&num, &den);
    let (mut n, mut d) = (
        num.div_exact(&common).expect("gcd divides"),
        den.div_exact(&common).expect("gcd divides"),
    );
    // Clear the denominator's content so outputs are canonical up to sign.
    if let Some(lc) = d.leading().cloned() {
        let s = lc.inv().expect("nonzero leading coefficient");
        n = n.scale(&s);
        d = d.scale(&s);
    }
    (n, d)
}

/// Where a curve goes under `f̂`.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CurveImage {
    /// Onto (or into) an exceptional divisor, with `(u, v) = (0, v(t))`
    /// in its chart.
    Exceptional {
        chart: BlowupChart,
        v_num: UniPoly<Gq>,
        v_den: UniPoly<Gq>,
        /// Vanishing order of `u ∘ f̂` along the curve.
        order: usize,
    },
    /// Onto a curve of the plane away from the blown-up points.
    Plane(Vec<UniPoly<Gq>>),
}

/// One row of the non-contraction table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub curve: TestCurve,
    pub image: CurveImage,
}

impl Table1Row {
    /// Degree of `t ↦ v(t)`, 0 if the curve is contracted.
    pub fn degree(&self) -> usize {
        match &self.image {
            CurveImage::Exceptional { v_num, v_den, .. } => {
                if v_num.is_zero() {
                    0
                } else {
                    v_num.degree().unwrap_or(0).max(v_den.degree().unwrap_or(0))
                }
            }
            CurveImage::Plane(_) => 1,
        }
    }

    pub fn is_contracted(&self) -> bool {
        self.degree() == 0
    }

    /// Whether `v(t) = num/den` as rational functions.
    pub fn v_equals(&self, num: &UniPoly<Gq>, den: &UniPoly<Gq>) -> bool {
        match &self.image {
            CurveImage::Exceptional { v_num, v_den, .. } => {
                v_num.clone() * den.clone() == num.clone() * v_den.clone()
            }
            CurveImage::Plane(_) => false,
        }
    }

    pub fn describe(&self) -> String {
        match &self.image {
            CurveImage::Exceptional {
                chart,
                v_num,
                v_den,
                ..
            } => {
                format!(
                    "(0, ({}) / ({})) on {}",
                    format_poly(v_num),
                    format_poly(v_den),
                    chart.name()
                )
            }
            CurveImage::Plane(p) => format!("plane curve {:?}", p),
        }
    }
}

/// `c_d t^d + … + c_0` with Gaussian rational coefficients.
pub fn format_poly(p: &UniPoly<Gq>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let t = match e {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{e}"),
        };
        parts.push(if e > 0 && c.is_one() {
            t
        } else if e > 0 {
            format!("{c} {t}")
        } else {
            c.to_string()
        });
    }
    parts.join(" + ")
}

fn constant_point(coords: &[UniPoly<Gq>; 3]) -> Option<ProjPoint<Gq>> {
    let k = (0..3).find(|&k| !coords[k].is_zero())?;
    let c = &coords[k];
    // Proportional to a constant vector iff each coordinate is a constant
    // multiple of the nonzero one.
    let lead = c.leading()?.clone();
    let inv = lead.inv().expect("nonzero leading coefficient");
    let pt: Vec<Gq> = coords
        .iter()
        .map(|p| p.leading().map_or(g(0), |l| l.clone() * inv.clone()))
        .collect();
    let consistent = coords.iter().zip(&pt).all(|(p, s)| *p == c.scale(s));
    consistent
        .then(|| ProjPoint::new([pt[0].clone(), pt[1].clone(), pt[2].clone()]).expect("nonzero"))
}

/// Pushes one curve through `f̂`.
pub fn push_curve(map: &ExplicitMapF, curve: TestCurve) -> Result<Table1Row, OctagonError> {
    let image = map.compose(&curve.family());
    let degenerate = || OctagonError::Degenerate(curve.name().into());
    let a = image
        .iter()
        .filter_map(|p| p.min_degree_in(1))
        .min()
        .ok_or_else(degenerate)?;
    let limit: [UniPoly<Gq>; 3] = std::array::from_fn(|k| {
        leading_in_eps(&image[k])
            .filter(|(e, _)| *e == a)
            .map_or_else(|| UniPoly::zero(&g(0)), |(_, c)| c)
    });
    let chart = constant_point(&limit).and_then(|p| {
        BlowupChart::ALL
            .into_iter()
            .find(|c| c.center().same_as(&p))
    });
    let Some(chart) = chart else {
        return Ok(Table1Row {
            curve,
            image: CurveImage::Plane(limit.to_vec()),
        });
    };
    let [(un, ud), (vn, vd)] = chart.forward();
    let lead = |p: &MPoly<Gq>| leading_in_eps(&p.substitute(&image)).ok_or_else(degenerate);
    let ((oun, _), (oud, _)) = (lead(&un)?, lead(&ud)?);
    let ((ovn, cvn), (ovd, cvd)) = (lead(&vn)?, lead(&vd)?);
    if oun <= oud || ovn < ovd {
        return Err(degenerate());
    }
    let (v_num, v_den) = if ovn > ovd {
        (UniPoly::zero(&g(0)), UniPoly::constant(g(1)))
    } else {
        reduce(cvn, cvd)
    };
    Ok(Table1Row {
        curve,
        image: CurveImage::Exceptional {
            chart,
            v_num,
            v_den,
            order: oun - oud,
        },
    })
}

/// Pushes all six curves through `f̂`.
pub fn table1_reproduce(map: &ExplicitMapF) -> Result<Vec<Table1Row>, OctagonError> {
    TestCurve::ALL
        .into_iter()
        .map(|c| push_curve(map, c))
        .collect()
}

/// Which affine coordinate on the exceptional divisor a printed row uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Slope {
    /// The chart's own `v`.
    Chart,
    /// `1/v`. The printed `E₁` row is written in `x/y` although its chart
    /// column says `y/x`; every other chart choice breaks the `Ĉ₁` row.
    Inverted,
}

#[derive(Clone, Debug)]
pub struct PrintedRow {
    pub curve: TestCurve,
    pub num: UniPoly<Gq>,
    pub den: UniPoly<Gq>,
    pub slope: Slope,
}

impl PrintedRow {
    /// Exact equality of the image maps into the exceptional divisor.
    pub fn matches(&self, row: &Table1Row) -> bool {
        row.curve == self.curve
            && match self.slope {
                Slope::Chart => row.v_equals(&self.num, &self.den),
                Slope::Inverted => row.v_equals(&self.den, &self.num),
            }
    }
}

/// Printed second coordinates that can be compared exactly. The `E₂` and
/// `E₃` entries are left out because the printed `E₂` denominator is
/// malformed.
pub fn printed_table_rows() -> Vec<PrintedRow> {
    let p = |c: &[(i64, i64)]| UniPoly::new(c.iter().map(|&(a, b)| Gq::from_ints(a, b)).collect());
    let r = |c: &[i64]| p(&c.iter().map(|&x| (x, 0)).collect::<Vec<_>>());
    let row = |curve, num, den, slope| PrintedRow {
        curve,
        num,
        den,
        slope,
    };
    vec![
        row(TestCurve::C1, r(&[1, 1]), r(&[1, 1, 2]), Slope::Chart),
        row(
            TestCurve::C2,
            p(&[(0, 2), (11, -3), (-9, -17), (-8, 6)]),
            p(&[(0, 0), (2, 0), (-4, -2)]),
            Slope::Chart,
        ),
        row(
            TestCurve::C3,
            p(&[(0, -2), (11, 3), (-9, 17), (-8, -6)]),
            p(&[(0, 0), (2, 0), (-4, 2)]),
            Slope::Chart,
        ),
        row(TestCurve::E1, r(&[-1, -1]), r(&[2, -1, 1]), Slope::Inverted),
    ]
}

#[derive(Clone, Debug)]
pub struct ContractedCurve {
    pub name: &'static str,
    pub line: MPoly<Gq>,
    /// Image of the curve if it is a single point.
    pub image: Option<ProjPoint<Gq>>,
    pub expected: ProjPoint<Gq>,
}

impl ContractedCurve {
    pub fn passes(&self) -> bool {
        self.image
            .as_ref()
            .is_some_and(|p| p.same_as(&self.expected))
    }
}

#[derive(Clone, Debug)]
pub struct ContractedCurvesReport {
    pub curves: Vec<ContractedCurve>,
    /// `det Df / (L₁L₂L₃·q₄)`, when the division is exact and constant.
    pub jacobian_unit: Option<Gq>,
    /// Each `Lᵢ` divides `det Df` exactly once.
    pub simple_factors: bool,
    /// `[1:0:1]` and `[0:1:1]` lie on `C₄` and have distinct images.
    pub c4_not_contracted: bool,
}

impl ContractedCurvesReport {
    pub fn passes(&self) -> bool {
        self.curves.iter().all(ContractedCurve::passes)
            && self.jacobian_unit.is_some()
            && self.simple_factors
            && self.c4_not_contracted
    }
}

/// Parametrizations `t ↦ γ(t)` of `C₁, C₂, C₃`, in `t = x₀`.
fn line_parametrizations() -> [[MPoly<Gq>; 3]; 3] {
    let [t, _, _] = vars();
    let one = MPoly::constant(g(1));
    [
        [t.clone(), gc(-1, 0) - t.clone(), one.clone()],
        [gc(1, 2) * t.clone() - one.clone(), t.clone(), one.clone()],
        [gc(1, -2) * t.clone() - one.clone(), t, one],
    ]
}

fn to_uni(p: &MPoly<Gq>) -> UniPoly<Gq> {
    let deg = p.degree_in(0).unwrap_or(0);
    UniPoly::new((0..=deg).map(|e| p.coeff(&[e as u16, 0, 0])).collect())
}

pub fn contracted_curves_check(map: &ExplicitMapF) -> ContractedCurvesReport {
    let lines = contracted_lines();
    let curves = line_parametrizations()
        .iter()
        .zip(BlowupChart::ALL)
        .enumerate()
        .map(|(k, (param, chart))| {
            let image = map.compose(param).map(|p| to_uni(&p));
            ContractedCurve {
                name: ["C1", "C2", "C3"][k],
                line: lines[k].clone(),
                image: constant_point(&image),
                expected: chart.center(),
            }
        })
        .collect();
    let jac = jacobian_determinant(&map.components);
    let mut rest = Some(jac);
    let mut simple_factors = true;
    for l in &lines {
        rest = rest.and_then(|r| r.div_exact(l));
        if let Some(r) = &rest {
            simple_factors &= r.div_exact(l).is_none();
        }
    }
    let jacobian_unit = rest
        .and_then(|r| r.div_exact(&printed_c4()))
        .filter(|u| u.total_degree() == Some(0))
        .map(|u| u.coeff(&[0, 0, 0]));
    let c4 = printed_c4();
    let (a, b) = ([g(1), g(0), g(1)], [g(0), g(1), g(1)]);
    let on_c4 = c4.eval(&a).is_zero() && c4.eval(&b).is_zero();
    let (fa, fb) = (map.eval(&a), map.eval(&b));
    let distinct = match (ProjPoint::new(fa), ProjPoint::new(fb)) {
        (Ok(p), Ok(q)) => !p.same_as(&q),
        _ => false,
    };
    ContractedCurvesReport {
        curves,
        jacobian_unit,
        simple_factors,
        c4_not_contracted: on_c4 && distinct,
    }
}

/// Derivation of the pullback matrix on `Num 𝒳`.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub matrix: IntMatrix,
    pub degree: usize,
    /// Order of a generic member of `f*H` at `p₁, p₂, p₃`.
    pub generic_orders: [usize; 3],
    /// Orders of each `fⱼ` at `p₁, p₂, p₃` (rows by point).
    pub component_orders: [[usize; 3]; 3],
    pub rows: Vec<Table1Row>,
}

/// The matrix of `f̂*` in the basis `π*H, E₁, E₂, E₃`, column by column:
/// the first from the degree of `f` and the orders of a generic `f*H` at
/// the blown-up points, the others from the curves sent into each `Eⱼ`
/// weighted by the vanishing order of `Eⱼ`'s equation along them.
///
/// Only the six curves of the table can map into an exceptional divisor,
/// because `C₁, C₂, C₃` are the only contracted curves of `f`.
pub fn pullback_matrix(map: &ExplicitMapF, seed: u64) -> Result<PullbackReport, OctagonError> {
    let degree = map
        .degree()
        .ok_or_else(|| OctagonError::Degenerate("f".into()))?;
    let mut rng = trial_rng(seed, 0, 0);
    let generic = map.components.iter().fold(MPoly::zero(&g(0)), |acc, p| {
        acc + p.scale(&g(rng.gen_range(1..=97)))
    });
    let order =
        |p: &MPoly<Gq>, c: BlowupChart| vanishing_order(p, &c.center()).unwrap_or(usize::MAX);
    let generic_orders = BlowupChart::ALL.map(|c| order(&generic, c));
    let component_orders =
        BlowupChart::ALL.map(|c| std::array::from_fn(|j| order(&map.components[j], c)));
    let mut m = IntMatrix::zeros(4, 4);
    m.set(0, 0, BigInt::from(degree));
    for (j, o) in generic_orders.iter().enumerate() {
        m.set(j + 1, 0, BigInt::from(-(*o as i64)));
    }
    let rows = table1_reproduce(map)?;
    for row in &rows {
        if let CurveImage::Exceptional { chart, order, .. } = &row.image {
            let col = chart.index() + 1;
            for (r, c) in row.curve.class().iter().enumerate() {
                let v = m.get(r, col) + BigInt::from(c * *order as i64);
                m.set(r, col, v);
            }
        }
    }
    Ok(PullbackReport {
        matrix: m,
        degree,
        generic_orders,
        component_orders,
        rows,
    })
}

/// The expected matrix of `f̂*` in the basis `π*H, E₁, E₂, E₃`.
pub fn printed_pullback_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![5, 1, 1, 1],
        vec![-1, 1, 0, 0],
        vec![-1, 0, 1, 0],
        vec![-1, 0, 0, 1],
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    /// Characteristic polynomial coefficients, constant term first.
    pub charpoly: Vec<i64>,
    /// Integer eigenvalues with multiplicity.
    pub integer_roots: Vec<(i64, usize)>,
    /// Largest absolute eigenvalue, when every eigenvalue is an integer.
    pub spectral_radius: Option<i64>,
    /// `(f̂*)^m` applied to the ample class `3π*H − E₁ − E₂ − E₃`.
    pub ample_orbit: Vec<[i64; 4]>,
    /// Successive ratios of the `π*H` coefficient of `ample_orbit`.
    pub ratios: Vec<f64>,
}

pub const AMPLE_CLASS: [i64; 4] = [3, -1, -1, -1];

pub fn spectral_data(matrix: &IntMatrix, m_max: usize) -> Result<SpectralData, OctagonError> {
    let cp = charpoly(matrix).map_err(|e| OctagonError::NotRepresentable(e.to_string()))?;
    let to_i64 = |x: &BigInt| x.to_i64().expect("small entries");
    let charpoly = cp
        .coeffs()
        .iter()
        .map(|c| to_i64(&c.to_integer()))
        .collect();
    let roots: Vec<(i64, usize)> = integer_roots(&cp)
        .iter()
        .map(|(r, k)| (to_i64(r), *k))
        .collect();
    let n: usize = roots.iter().map(|(_, k)| k).sum();
    let spectral_radius = (n == matrix.rows())
        .then(|| roots.iter().map(|(r, _)| r.abs()).max())
        .flatten();
    let mut v: Vec<BigInt> = AMPLE_CLASS.iter().map(|&x| BigInt::from(x)).collect();
    let mut ample_orbit = Vec::new();
    for _ in 0..m_max {
        v = matrix.mul_vec(&v);
        ample_orbit.push(std::array::from_fn(|k| to_i64(&v[k])));
    }
    let ratios = ample_orbit
        .windows(2)
        .map(|w| w[1][0] as f64 / w[0][0] as f64)
        .collect();
    Ok(SpectralData {
        charpoly,
        integer_roots: roots,
        spectral_radius,
        ample_orbit,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octagon::formula::printed_f;

    #[test]
    fn charts_round_trip() {
        for c in BlowupChart::ALL {
            assert!(c.round_trip_holds(), "{c:?}");
        }
    }

    #[test]
    fn strict_transform_classes() {
        for c in [TestCurve::C1, TestCurve::C2, TestCurve::C3] {
            assert_eq!(c.class(), [1, 0, 0, 0]);
        }
    }

    #[test]
    fn printed_rows_match() {
        let f = printed_f();
        for printed in printed_table_rows() {
            let row = push_curve(&f, printed.curve).unwrap();
            assert!(
                printed.matches(&row),
                "{}: {}",
                printed.curve.name(),
                row.describe()
            );
        }
    }

    #[test]
    fn e1_row_is_the_reciprocal_in_the_chart_slope() {
        let f = printed_f();
        let row = push_curve(&f, TestCurve::E1).unwrap();
        let r = |c: &[i64]| UniPoly::new(c.iter().map(|&x| g(x)).collect());
        assert!(row.v_equals(&r(&[-2, 1, -1]), &r(&[1, 1])));
        assert!(!row.v_equals(&r(&[-1, -1]), &r(&[2, -1, 1])));
    }

    #[test]
    fn exceptional_rows_of_p2_and_p3_are_conjugate() {
        let f = printed_f();
        let e2 = push_curve(&f, TestCurve::E2).unwrap();
        let e3 = push_curve(&f, TestCurve::E3).unwrap();
        let (
            CurveImage::Exceptional { v_num, v_den, .. },
            CurveImage::Exceptional {
                v_num: n3,
                v_den: d3,
                ..
            },
        ) = (&e2.image, &e3.image)
        else {
            panic!("not exceptional");
        };
        let conj = |p: &UniPoly<Gq>| UniPoly::new(p.coeffs().iter().map(|c| c.conj()).collect());
        assert_eq!(conj(v_num) * d3.clone(), n3.clone() * conj(v_den));
        // (i−1)t² + (i−2)t over (1−i)t − i.
        let p =
            |c: &[(i64, i64)]| UniPoly::new(c.iter().map(|&(a, b)| Gq::from_ints(a, b)).collect());
        assert!(e2.v_equals(&p(&[(0, 0), (-2, 1), (-1, 1)]), &p(&[(0, -1), (1, -1)])));
    }

    #[test]
    fn no_row_is_contracted() {
        let rows = table1_reproduce(&printed_f()).unwrap();
        assert_eq!(rows.len(), 6);
        let degrees: Vec<usize> = rows.iter().map(Table1Row::degree).collect();
        assert_eq!(degrees, [2, 3, 3, 2, 2, 2]);
        assert!(rows.iter().all(|r| !r.is_contracted()));
    }

    #[test]
    fn orders_and_matrix() {
        let r = pullback_matrix(&printed_f(), 1).unwrap();
        assert_eq!(r.component_orders[0], [2, 2, 1]);
        assert_eq!(r.component_orders[1], [1, 1, 2]);
        assert_eq!(r.generic_orders, [1, 1, 1]);
        let expected = IntMatrix::from_rows(&[
            vec![5, 1, 1, 1],
            vec![-1, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![-1, 0, 0, 1],
        ]);
        assert_eq!(r.matrix, expected);
    }

    #[test]
    fn spectrum() {
        let m = IntMatrix::from_rows(&[
            vec![5, 1, 1, 1],
            vec![-1, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![-1, 0, 0, 1],
        ]);
        let s = spectral_data(&m, 10).unwrap();
        assert_eq!(s.integer_roots, vec![(1, 2), (2, 1), (4, 1)]);
        assert_eq!(s.spectral_radius, Some(4));
        // (x−4)(x−2)(x−1)² = x⁴ − 8x³ + 21x² − 22x + 8
        assert_eq!(s.charpoly, vec![8, -22, 21, -8, 1]);
        assert!((s.ratios.last().unwrap() - 4.0).abs() < 0.01);
    }
}
