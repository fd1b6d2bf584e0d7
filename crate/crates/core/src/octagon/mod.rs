//! The map `Skew(0,2,1,4)` on rotationally symmetric closed octagons.
//!
//! An octagon with `v_{k+2} = R v_k` for the quarter turn
//! `R[X:Y:Z] = [−Y:X:Z]` is fixed up to projective equivalence by its second
//! vertex once the odd vertices sit at `(1,0), (0,1), (−1,0), (0,−1)`. The
//! induced map on that vertex is a degree-5 rational self-map `f` of the
//! plane. This module derives `f`, evaluates it, scans it over finite fields
//! and computes its action on the blowup at the three fixed points of `R`.
//!
//! Windows are `Cyclic(8)` with index `k` holding the vertex usually called
//! `v_{k+1}`, so the moduli point is the vertex at index 1.

use thiserror::Error;

use crate::field::{Field, Projective};
use crate::geometry::{transform_to_frame, GeometryError, ProjPoint};
use crate::lattice::{Indexing, LatticeError, PolygonWindow};

mod blowup;
mod formula;
mod local;
mod scan;

pub use blowup::{
    contracted_curves_check, format_poly, printed_pullback_matrix, printed_table_rows,
    pullback_matrix, push_curve, spectral_data, table1_reproduce, BlowupChart, ContractedCurve,
    ContractedCurvesReport, CurveImage, PrintedRow, PullbackReport, Slope, SpectralData, Table1Row,
    TestCurve, AMPLE_CLASS,
};
pub use formula::{
    contracted_lines, derive_f, eval_f, gaussian_to_field, jacobian_determinant, printed_c4,
    printed_f, printed_intermediates, proportionality_scalar, Derivation, ExplicitMapF,
};
pub use local::{local_intersection_multiplicity, rank, vanishing_order, MULTIPLICITY_CAP};
pub use scan::{
    count_common_zeros, fiber_count, fiber_count_where, image_histogram, indeterminacy_census,
    normalize, CensusEntry, CompiledMap, ImageHistogram, ScanPoint,
};

/// Moduli point `[X:Y:Z]`: the second vertex `(X/Z, Y/Z)` of the normalized
/// octagon.
pub type ModuliPoint<R> = ProjPoint<R>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OctagonError {
    #[error("expected a closed octagon, got indexing {0:?}")]
    NotOctagon(Indexing),
    #[error("vertex {0} is not the quarter turn of vertex {1}")]
    NotRotationSymmetric(i64, i64),
    #[error("odd vertices are not at (1,0), (0,1), (-1,0), (0,-1)")]
    NotNormalized,
    #[error("moduli point lies on the line at infinity")]
    NotAffine,
    #[error("point is indeterminate for f")]
    Indeterminate,
    #[error("target is one of the fixed points of the rotation")]
    ExcludedTarget,
    #[error("coefficient {0} has no image in the target field")]
    NotRepresentable(String),
    #[error(
        "local multiplicity did not stabilize by truncation degree {cap} (last values {last:?})"
    )]
    NoStabilization { cap: usize, last: Vec<usize> },
    #[error("curve {0} could not be pushed forward")]
    Degenerate(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Quarter turn `[X:Y:Z] ↦ [−Y:X:Z]`.
pub fn rotate<R: Projective>(p: &ProjPoint<R>) -> ProjPoint<R> {
    let [x, y, z] = p.coords().clone();
    ProjPoint::new([-y, x, z]).expect("rotation keeps a nonzero triple nonzero")
}

/// The four odd vertices `(1,0), (0,1), (−1,0), (0,−1)` of a normalized
/// octagon, over the ring of `like`.
pub fn normalized_odd_vertices<R: Projective>(like: &R) -> [ProjPoint<R>; 4] {
    let (o, z) = (like.one_like(), like.zero_like());
    let first = ProjPoint::new([o.clone(), z.clone(), o]).expect("nonzero");
    let second = rotate(&first);
    let third = rotate(&second);
    let fourth = rotate(&third);
    [first, second, third, fourth]
}

/// Normalized rotationally symmetric octagon with second vertex `point`.
///
/// Works over any coordinate ring, so the same code builds the symbolic
/// octagon over polynomials.
pub fn octagon_from_moduli<R: Projective>(
    point: &ModuliPoint<R>,
) -> Result<PolygonWindow<R>, OctagonError> {
    if point.z().is_zero() {
        return Err(OctagonError::NotAffine);
    }
    let odd = normalized_odd_vertices(point.z());
    let mut even = point.clone();
    let mut vertices = Vec::with_capacity(8);
    for v in odd {
        vertices.push(v);
        let next = rotate(&even);
        vertices.push(std::mem::replace(&mut even, next));
    }
    Ok(PolygonWindow::cyclic(vertices)?)
}

fn check_symmetric<F: Projective>(w: &PolygonWindow<F>) -> Result<(), OctagonError> {
    if w.indexing() != Indexing::Cyclic(8) {
        return Err(OctagonError::NotOctagon(w.indexing()));
    }
    for i in 0..8 {
        let (v, next) = (w.get(i).expect("cyclic"), w.get(i + 2).expect("cyclic"));
        if !rotate(v).same_as(next) {
            return Err(OctagonError::NotRotationSymmetric((i + 2) % 8, i));
        }
    }
    Ok(())
}

/// Inverse of [`octagon_from_moduli`] on normalized symmetric octagons.
pub fn moduli_from_octagon<F: Field + Projective>(
    w: &PolygonWindow<F>,
) -> Result<ModuliPoint<F>, OctagonError> {
    check_symmetric(w)?;
    let odd = normalized_odd_vertices(w.get(0).expect("cyclic").x());
    if !w.get(0).expect("cyclic").same_as(&odd[0]) {
        return Err(OctagonError::NotNormalized);
    }
    Ok(w.get(1).expect("cyclic").clone())
}

/// Moves the odd vertices of a symmetric octagon to the normalized
/// positions. The normalizing transformation commutes with `R`, so the
/// result is again symmetric.
pub fn normalize_octagon<F: Field + Projective>(
    w: &PolygonWindow<F>,
) -> Result<PolygonWindow<F>, OctagonError> {
    check_symmetric(w)?;
    let source: [ProjPoint<F>; 4] =
        std::array::from_fn(|k| w.get(2 * k as i64).expect("cyclic").clone());
    let target = normalized_odd_vertices(source[0].x());
    let m = transform_to_frame(&source, &target)?;
    Ok(w.transformed(&m))
}

/// Moduli point of any symmetric octagon in general position.
pub fn moduli_of<F: Field + Projective>(
    w: &PolygonWindow<F>,
) -> Result<ModuliPoint<F>, OctagonError> {
    moduli_from_octagon(&normalize_octagon(w)?)
}
