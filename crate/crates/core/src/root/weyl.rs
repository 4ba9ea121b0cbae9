use std::collections::HashMap;

use serde::Serialize;

use super::{RootDatum, RootError};
use crate::lattice::IntMatrix;

/// A Weyl group element with a reduced word (1-based generator labels) and
/// its matrices on `X` and `V_T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    word: Vec<usize>,
    #[serde(rename = "matrix")]
    on_weights: IntMatrix,
    #[serde(skip)]
    on_coweights: IntMatrix,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            on_weights: IntMatrix::identity(rank),
            on_coweights: IntMatrix::identity(rank),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(−1)^ℓ(w)`, the determinant on `X`.
    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.on_weights
    }

    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.on_coweights
    }

    pub fn act_on_weight(&self, mu: &[i64]) -> Vec<i64> {
        self.on_weights.mul_vec(mu)
    }

    pub fn act_on_coweight(&self, eta: &[i64]) -> Vec<i64> {
        self.on_coweights.mul_vec(eta)
    }

    /// `self · s_i` (generator `i` 1-based); the word is not re-reduced.
    pub fn times_generator(&self, rd: &RootDatum, i: usize) -> WeylElement {
        let mut word = self.word.clone();
        word.push(i);
        WeylElement {
            word,
            on_weights: self.on_weights.mul(&rd.reflection_on_weights(i - 1)),
            on_coweights: self.on_coweights.mul(&rd.reflection_on_coweights(i - 1)),
        }
    }

    /// Group product `self · other`, words concatenated (not reduced).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            on_weights: self.on_weights.mul(&other.on_weights),
            on_coweights: self.on_coweights.mul(&other.on_coweights),
        }
    }

    /// Inverse: the reversed word.
    pub fn inverse(&self, rd: &RootDatum) -> WeylElement {
        let mut w = WeylElement::identity(rd.rank());
        for &i in self.word.iter().rev() {
            w = w.times_generator(rd, i);
        }
        w
    }
}

/// Breadth-first enumeration of the subgroup generated by `gens` (1-based).
/// Words come out shortlex-minimal because generators are tried in
/// increasing order and the frontier is processed in discovery order.
pub(super) fn enumerate(
    rd: &RootDatum,
    gens: &[usize],
    cap: usize,
) -> Result<Vec<WeylElement>, RootError> {
    let mut gens = gens.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let id = WeylElement::identity(rd.rank());
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    index.insert(id.on_weights.clone(), 0);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for &g in &gens {
            let next = out[k].times_generator(rd, g);
            if index.contains_key(&next.on_weights) {
                continue;
            }
            if out.len() >= cap {
                return Err(RootError::CapExceeded { cap });
            }
            index.insert(next.on_weights.clone(), out.len());
            out.push(next);
        }
        k += 1;
    }
    Ok(out)
}
