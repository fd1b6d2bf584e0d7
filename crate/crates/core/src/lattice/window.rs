use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::field::{Field, FieldElem, Projective};
use crate::geometry::{point_from_json, point_to_json, FieldKind, ProjPoint, ProjTransform};

use super::LatticeError;

/// Index set of a polygon window: a closed integer interval, or `ℤ/nℤ`.
///
/// Serialized as `{"interval": [lo, hi]}` or `{"cyclic": n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    Interval(i64, i64),
    Cyclic(usize),
}

impl Indexing {
    pub fn len(&self) -> usize {
        match *self {
            Indexing::Interval(lo, hi) => (hi - lo + 1).max(0) as usize,
            Indexing::Cyclic(n) => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indices in storage order.
    pub fn indices(&self) -> Vec<i64> {
        match *self {
            Indexing::Interval(lo, hi) => (lo..=hi).collect(),
            Indexing::Cyclic(n) => (0..n as i64).collect(),
        }
    }

    /// Storage position of index `i`, if present.
    pub fn position(&self, i: i64) -> Option<usize> {
        match *self {
            Indexing::Interval(lo, hi) => (lo..=hi).contains(&i).then(|| (i - lo) as usize),
            Indexing::Cyclic(n) => Some(i.rem_euclid(n as i64) as usize),
        }
    }
}

/// Finite indexed family of points.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonWindow<R> {
    indexing: Indexing,
    vertices: Vec<ProjPoint<R>>,
}

impl<R: Projective> PolygonWindow<R> {
    pub fn new(indexing: Indexing, vertices: Vec<ProjPoint<R>>) -> Result<Self, LatticeError> {
        match indexing {
            Indexing::Cyclic(0) => return Err(LatticeError::EmptyWindow),
            Indexing::Interval(lo, hi) if hi < lo => return Err(LatticeError::EmptyWindow),
            _ => {}
        }
        if vertices.len() != indexing.len() {
            return Err(LatticeError::CountMismatch {
                expected: indexing.len(),
                found: vertices.len(),
            });
        }
        Ok(Self { indexing, vertices })
    }

    pub fn cyclic(vertices: Vec<ProjPoint<R>>) -> Result<Self, LatticeError> {
        Self::new(Indexing::Cyclic(vertices.len()), vertices)
    }

    /// Interval window starting at index `lo`.
    pub fn interval(lo: i64, vertices: Vec<ProjPoint<R>>) -> Result<Self, LatticeError> {
        let hi = lo + vertices.len() as i64 - 1;
        Self::new(Indexing::Interval(lo, hi), vertices)
    }

    pub fn indexing(&self) -> Indexing {
        self.indexing
    }

    pub fn vertices(&self) -> &[ProjPoint<R>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<ProjPoint<R>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn indices(&self) -> Vec<i64> {
        self.indexing.indices()
    }

    /// Vertex at index `i` (wrapping for cyclic windows).
    pub fn get(&self, i: i64) -> Option<&ProjPoint<R>> {
        self.indexing.position(i).map(|k| &self.vertices[k])
    }

    /// `(Σ_j v)_i = v_{i+j}`.
    pub fn shift(&self, j: i64) -> Self {
        match self.indexing {
            Indexing::Interval(lo, hi) => Self {
                indexing: Indexing::Interval(lo - j, hi - j),
                vertices: self.vertices.clone(),
            },
            Indexing::Cyclic(n) => {
                let vertices = (0..n as i64)
                    .map(|i| self.get(i + j).unwrap().clone())
                    .collect();
                Self {
                    indexing: self.indexing,
                    vertices,
                }
            }
        }
    }

    /// `w_i = v_{−i}`.
    pub fn reversed(&self) -> Self {
        match self.indexing {
            Indexing::Interval(lo, hi) => {
                let mut vertices = self.vertices.clone();
                vertices.reverse();
                Self {
                    indexing: Indexing::Interval(-hi, -lo),
                    vertices,
                }
            }
            Indexing::Cyclic(n) => {
                let vertices = (0..n as i64)
                    .map(|i| self.get(-i).unwrap().clone())
                    .collect();
                Self {
                    indexing: self.indexing,
                    vertices,
                }
            }
        }
    }

    /// For a cyclic window of size `k·m`, the subsequence `i ≡ r (mod k)` as a
    /// cyclic window of size `m`.
    pub fn residue_class(&self, k: usize, r: usize) -> Result<Self, LatticeError> {
        match self.indexing {
            Indexing::Cyclic(n) if k > 0 && n % k == 0 => {
                let vertices = (0..n / k)
                    .map(|i| self.vertices[r % k + i * k].clone())
                    .collect();
                Self::cyclic(vertices)
            }
            _ => Err(LatticeError::EmptyWindow),
        }
    }

    pub fn map_points<S: Projective>(
        &self,
        f: impl Fn(&ProjPoint<R>) -> ProjPoint<S>,
    ) -> PolygonWindow<S> {
        PolygonWindow {
            indexing: self.indexing,
            vertices: self.vertices.iter().map(f).collect(),
        }
    }
}

impl<F: Field + Projective> PolygonWindow<F> {
    pub fn transformed(&self, a: &ProjTransform<F>) -> Self {
        self.map_points(|p| a.apply(p))
    }

    /// Vertex-by-vertex equality up to scale.
    pub fn same_as(&self, other: &Self) -> bool {
        self.indexing == other.indexing
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(p, q)| p.same_as(q))
    }
}

pub fn window_to_json(w: &PolygonWindow<FieldElem>) -> Value {
    json!({
        "indexing": serde_json::to_value(w.indexing()).expect("indexing serializes"),
        "vertices": w.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn window_from_json(
    v: &Value,
    kind: FieldKind,
) -> Result<PolygonWindow<FieldElem>, LatticeError> {
    let bad = |what: &str| LatticeError::Parse(format!("polygon: {what}"));
    let indexing: Indexing = serde_json::from_value(
        v.get("indexing")
            .cloned()
            .ok_or_else(|| bad("missing indexing"))?,
    )
    .map_err(|e| bad(&e.to_string()))?;
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing vertices"))?;
    let vertices = verts
        .iter()
        .map(|p| point_from_json(p, kind))
        .collect::<Result<Vec<_>, _>>()?;
    PolygonWindow::new(indexing, vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational};

    fn pts(n: i64) -> Vec<ProjPoint<Rational>> {
        (0..n)
            .map(|i| ProjPoint::affine(rational(i, 1), rational(i * i, 1)))
            .collect()
    }

    #[test]
    fn shifts() {
        let w = PolygonWindow::interval(0, pts(6)).unwrap();
        assert_eq!(w.shift(0), w);
        let s = w.shift(2);
        assert_eq!(s.indexing(), Indexing::Interval(-2, 3));
        assert_eq!(s.vertices(), w.vertices());
        let c = PolygonWindow::cyclic(pts(8)).unwrap();
        assert_eq!(c.shift(8), c);
        assert_eq!(c.shift(3).get(0), c.get(3));
        assert_eq!(c.shift(3).shift(-3), c);
    }

    #[test]
    fn count_must_match() {
        assert!(matches!(
            PolygonWindow::new(Indexing::Cyclic(5), pts(4)),
            Err(LatticeError::CountMismatch {
                expected: 5,
                found: 4
            })
        ));
    }

    #[test]
    fn indexing_json_shape() {
        assert_eq!(
            serde_json::to_value(Indexing::Cyclic(8)).unwrap(),
            json!({"cyclic": 8})
        );
        assert_eq!(
            serde_json::to_value(Indexing::Interval(-2, 3)).unwrap(),
            json!({"interval": [-2, 3]})
        );
    }

    #[test]
    fn polygon_json_round_trip() {
        let w = PolygonWindow::interval(-1, pts(3))
            .unwrap()
            .map_points(|p| p.map(|c| FieldElem::Rational(c.clone())));
        let v = window_to_json(&w);
        assert_eq!(window_from_json(&v, FieldKind::Rational).unwrap(), w);
    }
}
