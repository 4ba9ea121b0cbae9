use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::lattice::IntMatrix;

/// Arrow on a multiple bond, pointing at the shorter root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Arrow {
    #[serde(rename = "none")]
    None,
    /// `i ⇒ j`: `α_j` is the shorter root.
    #[serde(rename = "->")]
    Forward,
    /// `i ⇐ j`: `α_i` is the shorter root.
    #[serde(rename = "<-")]
    Backward,
}

/// An edge `i - j` (`i < j`) with multiplicity `a_ij·a_ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub multiplicity: i64,
    pub arrow: Arrow,
}

impl Serialize for Bond {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(4)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.j)?;
        t.serialize_element(&self.multiplicity)?;
        t.serialize_element(&self.arrow)?;
        t.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineDynkinDiagram {
    pub nodes: Vec<usize>,
    pub bonds: Vec<Bond>,
    /// Node permutations `π` with `a_π(i)π(j) = a_ij`, as images of `0..=r`,
    /// sorted with the identity first.
    pub automorphisms: Vec<Vec<usize>>,
}

impl AffineDynkinDiagram {
    pub fn from_cartan(a: &IntMatrix) -> Self {
        let n = a.rows();
        let mut bonds = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (aij, aji) = (a.get(i, j), a.get(j, i));
                if aij == 0 {
                    continue;
                }
                let arrow = match aij.abs().cmp(&aji.abs()) {
                    std::cmp::Ordering::Equal => Arrow::None,
                    // |a_ij| > |a_ji|: α_i is short
                    std::cmp::Ordering::Greater => Arrow::Backward,
                    std::cmp::Ordering::Less => Arrow::Forward,
                };
                bonds.push(Bond {
                    i,
                    j,
                    multiplicity: aij * aji,
                    arrow,
                });
            }
        }
        let mut automorphisms = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        extend(a, &mut perm, &mut used, &mut automorphisms);
        automorphisms.sort();
        AffineDynkinDiagram {
            nodes: (0..n).collect(),
            bonds,
            automorphisms,
        }
    }

    pub fn automorphism_group_order(&self) -> usize {
        self.automorphisms.len()
    }

    /// `0 => 2 <= 1` style rendering: one token per bond.
    pub fn bond_strings(&self) -> Vec<String> {
        self.bonds
            .iter()
            .map(|b| {
                let link = match (b.multiplicity, b.arrow) {
                    (1, _) => "-",
                    (2, Arrow::Forward) => "=>",
                    (2, Arrow::Backward) => "<=",
                    (3, Arrow::Forward) => "=>>",
                    (3, Arrow::Backward) => "<<=",
                    (4, _) => "<=>",
                    _ => "?",
                };
                format!("{} {} {}", b.i, link, b.j)
            })
            .collect()
    }
}

fn extend(a: &IntMatrix, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let n = a.rows();
    let k = perm.len();
    if k == n {
        out.push(perm.clone());
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..k)
            .all(|i| a.get(perm[i], cand) == a.get(i, k) && a.get(cand, perm[i]) == a.get(k, i));
        if ok {
            used[cand] = true;
            perm.push(cand);
            extend(a, perm, used, out);
            perm.pop();
            used[cand] = false;
        }
    }
}
