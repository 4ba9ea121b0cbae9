//! Exact integer and rational linear algebra, Smith normal form, and
//! rational polyhedral cones and fans.
//!
//! No floating point is used anywhere in this module.

mod cone;
mod fan;
mod int_matrix;
pub mod rational;
mod smith;

use thiserror::Error;

pub use cone::{cone_preimage, dual_cone, primitive, Cone};
pub use fan::{is_refinement, Fan};
pub use int_matrix::IntMatrix;
pub use rational::{Rat, RatMatrix, RatVector};
pub use smith::{
    cokernel, integer_kernel, smith_normal_form, solve_integral, Cokernel, FiniteAbelianGroup,
    SmithDecomposition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("fans live in different ambient lattices")]
    AmbientMismatch,
    #[error("fan cones must be strongly convex")]
    NotPointed,
    #[error("not a fan: {0}")]
    NotAFan(String),
}

/// Serde helpers writing rationals as JSON integers or `"p/q"` strings.
pub mod serde_rat {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::rational::{fmt_rat, parse_rat, Rat};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    fn to_repr(q: &Rat) -> Repr {
        match super::rational::to_int(q) {
            Some(n) => Repr::Int(n),
            None => Repr::Str(fmt_rat(q)),
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<Rat, E> {
        match r {
            Repr::Int(n) => Ok(Rat::from_integer(n as i128)),
            Repr::Str(s) => parse_rat(&s).ok_or_else(|| E::custom(format!("bad rational {s:?}"))),
        }
    }

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        to_repr(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(from_repr::<D::Error>)
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(to_repr).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            Option::<Repr>::deserialize(d)?
                .map(from_repr::<D::Error>)
                .transpose()
        }
    }

    pub mod vecvec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(|r| r.iter().map(to_repr).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
            Vec::<Vec<Repr>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(from_repr::<D::Error>).collect())
                .collect()
        }
    }
}

#[cfg(test)]
mod proptests;
