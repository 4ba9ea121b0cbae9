//! Stacky fans attached to Weyl chambers and alcoves, the cone `C_Δ`,
//! validity of embedding fans, orbit posets and Picard presentations.

mod cdelta;
mod embedding;
mod orbits;

use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineError, AffineRootDatum};
use crate::lattice::rational::{primitive_of, rat, Rat};
use crate::lattice::{cokernel, Cone, Fan, FiniteAbelianGroup, IntMatrix, LatticeError};
use crate::root::{classify, RootDatum, RootError};

pub use cdelta::{c_delta, CDeltaCertificate};
pub use embedding::{
    check_embedding_fan, monoid_lift, EmbeddingDescriptor, EmbeddingReport, Violation,
};
pub use orbits::{
    birkhoff_strata_index, orbit_poset, orbit_stabilizer_descriptor, BirkhoffTriple,
    OrbitAnnotation, OrbitPoset, StabilizerDescriptor,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("beta has infinite cokernel (free rank {0})")]
    InfiniteCokernel(usize),
    #[error("image of monoid generator {0:?} is not in M")]
    NotInMonoid(Vec<i64>),
    #[error("no integral lift of beta' through beta")]
    NoIntegralLift,
    #[error("index set {0:?} is not a subset of the nodes")]
    ImproperSubset(Vec<usize>),
    #[error("the full node set does not give a finite parabolic subgroup")]
    FullNodeSet,
}

/// Which of the two compactifications is meant: the adjoint wonderful
/// variety or the stack built from the group itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingFlavor {
    Adjoint,
    Stacky,
}

/// A finite root datum (nodes `1..=r`) or an affine one (nodes `0..=r`).
#[derive(Clone, Copy, Debug)]
pub enum Datum<'a> {
    Finite(&'a RootDatum),
    Affine(&'a AffineRootDatum),
}

impl Datum<'_> {
    pub fn is_affine(&self) -> bool {
        matches!(self, Datum::Affine(_))
    }

    pub fn base(&self) -> &RootDatum {
        match self {
            Datum::Finite(rd) => rd,
            Datum::Affine(ard) => ard.base(),
        }
    }

    pub fn nodes(&self) -> Vec<usize> {
        let r = self.base().rank();
        match self {
            Datum::Finite(_) => (1..=r).collect(),
            Datum::Affine(_) => (0..=r).collect(),
        }
    }

    /// Validated, sorted copy of an index set.
    pub(crate) fn index_set(&self, j: &[usize]) -> Result<Vec<usize>, FanError> {
        let nodes = self.nodes();
        let mut out = j.to_vec();
        out.sort_unstable();
        out.dedup();
        if out.len() != j.len() || out.iter().any(|n| !nodes.contains(n)) {
            return Err(FanError::ImproperSubset(j.to_vec()));
        }
        Ok(out)
    }

    /// Type of the sub-diagram on `nodes`; the whole affine diagram is
    /// written with the `^(1)` suffix.
    pub fn subdiagram_label(&self, nodes: &[usize]) -> Result<String, FanError> {
        if nodes.is_empty() {
            return Ok("T".to_string());
        }
        match self {
            Datum::Finite(rd) => {
                let idx: Vec<usize> = nodes.iter().map(|n| n - 1).collect();
                Ok(classify(&rd.cartan().select(&idx, &idx))?.to_string())
            }
            Datum::Affine(ard) => {
                if nodes.len() == ard.rank() + 1 {
                    Ok(format!("{}^(1)", ard.base().dynkin_type()))
                } else {
                    Ok(ard.subdiagram_type(nodes)?.to_string())
                }
            }
        }
    }
}

/// A fan `Σ` in `L` together with a finite-index map `β : L → N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StackyFan {
    pub fan: Fan,
    pub beta: IntMatrix,
}

impl StackyFan {
    pub fn new(fan: Fan, beta: IntMatrix) -> Result<Self, FanError> {
        if beta.cols() != fan.ambient_dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: fan.ambient_dim(),
                found: beta.cols(),
            }
            .into());
        }
        let c = cokernel(&beta);
        if c.free_rank > 0 {
            return Err(FanError::InfiniteCokernel(c.free_rank));
        }
        Ok(StackyFan { fan, beta })
    }
}

/// `(C', β)`: the standard orthant in `Z^r` with `β(e_i) = u_i`, the
/// primitive ray generators of the dominant chamber.
pub fn weyl_chamber_stacky_fan(rd: &RootDatum) -> StackyFan {
    let r = rd.rank();
    let beta = IntMatrix::from_columns(&rd.chamber_rays(), r);
    let fan = Fan::new(r, vec![Cone::orthant(r)]).expect("a single cone is a fan");
    StackyFan::new(fan, beta).expect("the chamber rays span V_T")
}

/// `Z(β)`: the cokernel of `β`, which must be finite.
pub fn z_beta(sf: &StackyFan) -> Result<FiniteAbelianGroup, FanError> {
    z_of_matrix(&sf.beta)
}

pub(crate) fn z_of_matrix(beta: &IntMatrix) -> Result<FiniteAbelianGroup, FanError> {
    let c = cokernel(beta);
    if c.free_rank > 0 {
        return Err(FanError::InfiniteCokernel(c.free_rank));
    }
    Ok(c.torsion)
}

/// Ray generators of the cone over `−Al₀` at height one in `V_T ⊕ Z`:
/// the primitive vectors on `(−η_j, 1)`, `j = 0..=r`, as columns.
pub fn alcove_ray_map(ard: &AffineRootDatum) -> IntMatrix {
    let r = ard.rank();
    let cols: Vec<Vec<i64>> = ard
        .alcove_vertices()
        .iter()
        .map(|(_, eta)| {
            let mut v: Vec<Rat> = eta.iter().map(|x| -x).collect();
            v.push(rat(1));
            primitive_of(&v).expect("height one is nonzero")
        })
        .collect();
    IntMatrix::from_columns(&cols, r + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardPresentation {
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
    /// Boundary divisors freely generating the free part, `D_j` by node.
    pub generators: Vec<String>,
}

/// `0 → Z^{divisors} → Pic → Hom(Z(β), C^×) → 0`, read off combinatorially.
pub fn picard_presentation(
    datum: Datum<'_>,
    flavor: EmbeddingFlavor,
) -> Result<PicardPresentation, FanError> {
    let nodes = datum.nodes();
    let torsion = match (flavor, datum) {
        (EmbeddingFlavor::Adjoint, _) => FiniteAbelianGroup::trivial(),
        (EmbeddingFlavor::Stacky, Datum::Finite(rd)) => z_beta(&weyl_chamber_stacky_fan(rd))?,
        (EmbeddingFlavor::Stacky, Datum::Affine(ard)) => z_of_matrix(&alcove_ray_map(ard))?,
    };
    Ok(PicardPresentation {
        free_rank: nodes.len(),
        torsion,
        generators: nodes.iter().map(|j| format!("D{j}")).collect(),
    })
}
