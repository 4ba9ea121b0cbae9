//! Positive-definite forms on a cocharacter lattice, the loop-torus
//! representation they define, and the Voronoi/Delaunay geometry behind the
//! fan of the loop-torus closure.

mod cells;
mod form;
mod ltfan;
mod rep;

use thiserror::Error;

use crate::lattice::LatticeError;

pub use cells::{
    closest_points, delaunay_cell, lattice_points_in_ellipsoid, relevant_vectors, voronoi_cell,
    DelaunayCell, VoronoiCell, VoronoiFacet,
};
pub use form::QuadraticForm;
pub use ltfan::{lt_fan, lt_fan_vs_minimizers_check, LtClass, LtFan, LtFanCheck, CLASS_DISCLAIMER};
pub use rep::{
    cocycle_eval, exponent_f, lt_weight_action, minimizer_set, z_q, CocycleValue, LoopTorusElement,
    LtActionRecord, LtWeight,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoronoiError {
    #[error("Gram matrix must be square and nonempty")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not integral as a map into the character lattice")]
    NotIntegral,
    #[error("level t must be positive, got {0}")]
    NonPositiveLevel(i64),
    #[error("weight {0:?} is not in the image of Q")]
    OutsideImage(Vec<i64>),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cell vertices are only computed up to rank {max}, got rank {rank}")]
    RankTooLarge { rank: usize, max: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Largest rank for which cell vertices (and hence the fan) are built.
pub const MAX_VERTEX_RANK: usize = 3;

pub(crate) fn check_len(q: &QuadraticForm, v: usize) -> Result<(), VoronoiError> {
    if v != q.rank() {
        return Err(VoronoiError::DimensionMismatch {
            expected: q.rank(),
            found: v,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
