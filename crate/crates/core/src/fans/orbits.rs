use std::collections::BTreeSet;

use serde::Serialize;

use super::{Datum, FanError};
use crate::affine::{AffineRootDatum, CosetSide, DEFAULT_AFFINE_CAP};

/// Orbits of the compactification indexed by subsets `J` of the nodes,
/// `J` recording the coordinates that degenerate. Closure order is
/// inclusion: `Orbit(e_J')` lies in the closure of `Orbit(e_J)` iff `J ⊆ J'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPoset {
    pub affine: bool,
    /// Sorted index sets, by size and then lexicographically.
    pub elements: Vec<Vec<usize>>,
    /// `(J, J ∪ {k})` pairs.
    pub cover_relations: Vec<(Vec<usize>, Vec<usize>)>,
    pub annotations: Vec<OrbitAnnotation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitAnnotation {
    pub j: Vec<usize>,
    pub codimension: usize,
    pub is_divisor: bool,
    /// Type of `L_J`, the sub-diagram on the nodes outside `J`.
    pub levi_type: String,
}

impl OrbitPoset {
    pub fn index_of(&self, j: &[usize]) -> Option<usize> {
        self.elements.iter().position(|e| e == j)
    }

    /// `J ≤ J'` in the closure order.
    pub fn leq(&self, j: &[usize], k: &[usize]) -> bool {
        j.iter().all(|x| k.contains(x))
    }

    pub fn meet(&self, j: &[usize], k: &[usize]) -> Vec<usize> {
        j.iter().copied().filter(|x| k.contains(x)).collect()
    }

    pub fn join(&self, j: &[usize], k: &[usize]) -> Vec<usize> {
        let s: BTreeSet<usize> = j.iter().chain(k).copied().collect();
        s.into_iter().collect()
    }

    /// The boundary divisors `D_i`: the singletons.
    pub fn divisors(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .filter(|e| e.len() == 1)
            .cloned()
            .collect()
    }

    /// Orbits in the closure of the stratum `J`.
    pub fn closure(&self, j: &[usize]) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .filter(|e| self.leq(j, e))
            .cloned()
            .collect()
    }
}

fn subsets(nodes: &[usize]) -> Vec<Vec<usize>> {
    let n = nodes.len();
    let mut out: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| nodes[b])
                .collect()
        })
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

pub fn orbit_poset(datum: Datum<'_>) -> Result<OrbitPoset, FanError> {
    let nodes = datum.nodes();
    let elements = subsets(&nodes);
    let mut cover_relations = Vec::new();
    let mut annotations = Vec::with_capacity(elements.len());
    for j in &elements {
        for &k in &nodes {
            if !j.contains(&k) {
                let mut up = j.clone();
                up.push(k);
                up.sort_unstable();
                cover_relations.push((j.clone(), up));
            }
        }
        let rest: Vec<usize> = nodes.iter().copied().filter(|n| !j.contains(n)).collect();
        annotations.push(OrbitAnnotation {
            j: j.clone(),
            codimension: j.len(),
            is_divisor: j.len() == 1,
            levi_type: datum.subdiagram_label(&rest)?,
        });
    }
    cover_relations.sort();
    Ok(OrbitPoset {
        affine: datum.is_affine(),
        elements,
        cover_relations,
        annotations,
    })
}

/// Shape of `Stab(e_J) = T(J)·S(J)` with `S(J) = Δ(L_J) ⋉ (U_J × U_J⁻)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerDescriptor {
    pub j: Vec<usize>,
    /// Nodes of `L_J`: the complement of `J`.
    pub levi_nodes: Vec<usize>,
    pub levi_type: String,
    /// Dimension of `∩_{k ∉ J} ker α_k`, which is `|J|`.
    pub center_torus_rank: usize,
    /// `U_J` and `U_J⁻` are trivial exactly for the open orbit.
    pub unipotent_trivial: bool,
}

pub fn orbit_stabilizer_descriptor(
    datum: Datum<'_>,
    j: &[usize],
) -> Result<StabilizerDescriptor, FanError> {
    let j = datum.index_set(j)?;
    let levi_nodes: Vec<usize> = datum
        .nodes()
        .into_iter()
        .filter(|n| !j.contains(n))
        .collect();
    Ok(StabilizerDescriptor {
        levi_type: datum.subdiagram_label(&levi_nodes)?,
        center_torus_rank: j.len(),
        unipotent_trivial: j.is_empty(),
        levi_nodes,
        j,
    })
}

/// Index `(w₁, w₂, w₃)` of a stratum `B⁻ w₁ e_J w₃ w₂ B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BirkhoffTriple {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub w3: Vec<usize>,
}

/// Triples with `w₁` minimal in `W^aff/W_J`, `w₂` minimal in `W_J\W^aff`
/// and `w₃ ∈ W_J`, each of length at most `bound`.
pub fn birkhoff_strata_index(
    ard: &AffineRootDatum,
    j: &[usize],
    bound: usize,
) -> Result<Vec<BirkhoffTriple>, FanError> {
    let j = Datum::Affine(ard).index_set(j)?;
    if j.len() == ard.rank() + 1 {
        return Err(FanError::FullNodeSet);
    }
    let left = ard.coset_representatives(&j, CosetSide::Left, bound, DEFAULT_AFFINE_CAP)?;
    let right = ard.coset_representatives(&j, CosetSide::Right, bound, DEFAULT_AFFINE_CAP)?;
    let wj = ard.enumerate_generated(&j, bound, DEFAULT_AFFINE_CAP)?;
    let mut out = Vec::with_capacity(left.len() * right.len() * wj.len());
    for a in &left {
        for b in &right {
            for c in &wj {
                out.push(BirkhoffTriple {
                    w1: a.word.clone(),
                    w2: b.word.clone(),
                    w3: c.word.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}
