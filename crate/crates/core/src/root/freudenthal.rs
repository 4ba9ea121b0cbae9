use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{RootDatum, Weight};
use crate::lattice::rational::{rat, to_int, to_rat_vec, Rat};
use crate::lattice::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub weight: Weight,
    pub multiplicity: u64,
}

/// Weights of the irreducible module `V(λ)` with multiplicities, sorted by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMultiplicityTable {
    pub highest_weight: Weight,
    pub weights: Vec<WeightEntry>,
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.weights
            .binary_search_by(|e| e.weight.as_slice().cmp(mu))
            .map_or(0, |i| self.weights[i].multiplicity)
    }

    pub fn dimension(&self) -> u64 {
        self.weights.iter().map(|e| e.multiplicity).sum()
    }

    pub fn as_map(&self) -> BTreeMap<Weight, u64> {
        self.weights
            .iter()
            .map(|e| (e.weight.clone(), e.multiplicity))
            .collect()
    }
}

/// Freudenthal's recursion, run in fundamental-weight coordinates over
/// weights ordered by depth below `λ`.
pub(super) fn multiplicities(rd: &RootDatum, lambda: &[i64]) -> WeightMultiplicityTable {
    let r = rd.rank();
    let a = rd.cartan();
    let a_rat = RatMatrix::from_int(a);
    let a_inv = a_rat.inverse().expect("finite type");
    // (ω_j, ω_k) = ε_j (A⁻¹)_jk
    let mut form = RatMatrix::zeros(r, r);
    for j in 0..r {
        for k in 0..r {
            form.set(j, k, rd.symmetrizer()[j] * a_inv.get(j, k));
        }
    }
    let inner = |x: &[i64], y: &[i64]| form.bilinear(&to_rat_vec(x), &to_rat_vec(y));
    let add = |x: &[i64], y: &[i64], k: i64| -> Vec<i64> {
        x.iter().zip(y).map(|(p, q)| p + k * q).collect()
    };

    let top = rd.dynkin_labels(lambda);
    let rho = vec![1i64; r];
    let top_rho = add(&top, &rho, 1);
    let c = inner(&top_rho, &top_rho);

    // positive roots as labels, with heights
    let roots: Vec<(Vec<i64>, i64)> = rd
        .positive_root_coords()
        .iter()
        .map(|p| (a.mul_vec(p), p.iter().sum()))
        .collect();
    let simple_labels: Vec<Vec<i64>> = (0..r).map(|i| a.col(i)).collect();

    let is_weight = |mu: &[i64]| -> bool {
        let dom = dominant_conjugate(mu, &simple_labels);
        let diff = to_rat_vec(&add(&top, &dom, -1));
        a_inv
            .mul_vec(&diff)
            .iter()
            .all(|x| x.is_integer() && !x.is_negative())
    };

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(top.clone(), 1);
    let mut level = vec![top.clone()];
    let mut depth = 0i64;
    while !level.is_empty() {
        depth += 1;
        let mut next: Vec<Vec<i64>> = Vec::new();
        for mu in &level {
            for s in &simple_labels {
                let nu = add(mu, s, -1);
                if mult.contains_key(&nu) || next.contains(&nu) || !is_weight(&nu) {
                    continue;
                }
                next.push(nu);
            }
        }
        next.sort();
        for nu in &next {
            let mut sum = Rat::zero();
            for (alpha, height) in &roots {
                let mut k = 1;
                while depth - k * height >= 0 {
                    let shifted = add(nu, alpha, k);
                    if let Some(&m) = mult.get(&shifted) {
                        sum += rat(m as i128) * inner(&shifted, alpha);
                    }
                    k += 1;
                }
            }
            let nr = add(nu, &rho, 1);
            let denom = c - inner(&nr, &nr);
            let m = rat(2) * sum / denom;
            let m = to_int(&m).expect("multiplicities are integers");
            mult.insert(nu.clone(), m as u64);
        }
        level = next;
    }

    let mut weights: Vec<WeightEntry> = mult
        .into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(labels, m)| WeightEntry {
            weight: rd
                .weight_from_labels(&labels)
                .expect("weights of V(λ) lie in X"),
            multiplicity: m,
        })
        .collect();
    weights.sort_by(|x, y| x.weight.cmp(&y.weight));
    WeightMultiplicityTable {
        highest_weight: lambda.to_vec(),
        weights,
    }
}

fn dominant_conjugate(mu: &[i64], simple_labels: &[Vec<i64>]) -> Vec<i64> {
    let mut v = mu.to_vec();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        let c = v[i];
        for (x, s) in v.iter_mut().zip(&simple_labels[i]) {
            *x -= c * s;
        }
    }
    v
}
