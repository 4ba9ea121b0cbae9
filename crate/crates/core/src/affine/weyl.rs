use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use super::{AffineError, AffineRootDatum};
use crate::lattice::rational::{dot, rat, to_rat_vec, Rat};
use crate::lattice::IntMatrix;
use crate::root::Coweight;

/// Element cap for affine Weyl group enumerations.
pub const DEFAULT_AFFINE_CAP: usize = 200_000;

/// `x = (w, η)` acting on `V_T ⊗ R` by `ζ ↦ w(ζ + η)`, so that
/// `(w₁, η₁)(w₂, η₂) = (w₁w₂, w₂⁻¹η₁ + η₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineWeylElement {
    /// Reduced word in the generators `s₀..s_r`.
    pub word: Vec<usize>,
    pub length: usize,
    /// Linear part `w` on `V_T`.
    pub linear: IntMatrix,
    /// Translation part `η ∈ V_T`.
    pub translation: Coweight,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            word: Vec::new(),
            length: 0,
            linear: IntMatrix::identity(rank),
            translation: vec![0; rank],
        }
    }

    pub fn apply(&self, zeta: &[Rat]) -> Vec<Rat> {
        let shifted: Vec<Rat> = zeta
            .iter()
            .zip(&self.translation)
            .map(|(z, &e)| z + rat(e as i128))
            .collect();
        mul_rat(&self.linear, &shifted)
    }

    /// The product `self · other`; the word is the concatenation and the
    /// length is recomputed by counting separating walls.
    pub fn compose(&self, other: &AffineWeylElement, ard: &AffineRootDatum) -> AffineWeylElement {
        let w2_inv = ard.linear_inverse(&other.linear);
        let moved = w2_inv.mul_vec(&self.translation);
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        let mut x = AffineWeylElement {
            word,
            length: 0,
            linear: self.linear.mul(&other.linear),
            translation: moved
                .iter()
                .zip(&other.translation)
                .map(|(a, b)| a + b)
                .collect(),
        };
        x.length = ard.inversion_length(&x);
        x
    }
}

fn mul_rat(m: &IntMatrix, v: &[Rat]) -> Vec<Rat> {
    (0..m.rows())
        .map(|i| dot(&to_rat_vec(m.row(i)), v))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CosetSide {
    /// `W^aff / W_J`: minimal `w` with `ℓ(w s_j) > ℓ(w)` for `j ∈ J`.
    Left,
    /// `W_J \ W^aff`: minimal `w` with `ℓ(s_j w) > ℓ(w)` for `j ∈ J`.
    Right,
}

impl AffineRootDatum {
    /// The generator `s_i` as `(w, η)`: `s₀ = (s_θ, −θ∨)` is the reflection
    /// in the wall `θ = 1`.
    pub fn generator(&self, i: usize) -> AffineWeylElement {
        let rd = self.base();
        let r = self.rank();
        let (linear, translation) = if i == 0 {
            let mut m = IntMatrix::identity(r);
            for a in 0..r {
                for b in 0..r {
                    m.set(a, b, m.get(a, b) - self.theta_coroot()[a] * self.theta()[b]);
                }
            }
            (m, self.theta_coroot().iter().map(|x| -x).collect())
        } else {
            (rd.reflection_on_coweights(i - 1), vec![0; r])
        };
        AffineWeylElement {
            word: vec![i],
            length: 1,
            linear,
            translation,
        }
    }

    /// The affine reflection `s_i` applied to a point of `V_T ⊗ Q`.
    pub fn reflect_point(&self, i: usize, zeta: &[Rat]) -> Vec<Rat> {
        let (root, coroot, level) = if i == 0 {
            (self.theta().clone(), self.theta_coroot().clone(), rat(1))
        } else {
            let rd = self.base();
            (
                rd.simple_roots()[i - 1].clone(),
                rd.simple_coroots()[i - 1].clone(),
                rat(0),
            )
        };
        let c = dot(&to_rat_vec(&root), zeta) - level;
        zeta.iter()
            .zip(&coroot)
            .map(|(z, &a)| z - c * rat(a as i128))
            .collect()
    }

    /// Inverse of a finite Weyl group element acting on `V_T`.
    pub(crate) fn linear_inverse(&self, w: &IntMatrix) -> IntMatrix {
        // w has finite order, so w⁻¹ is a power of w
        let id = IntMatrix::identity(self.rank());
        let mut prev = id.clone();
        let mut cur = w.clone();
        while cur != id {
            prev = cur.clone();
            cur = cur.mul(w);
        }
        prev
    }

    /// Number of walls `{α = k}` (`α > 0`, `k ∈ Z`) separating the
    /// fundamental alcove from its image under `x`.
    pub fn inversion_length(&self, x: &AffineWeylElement) -> usize {
        let p = self.alcove().barycenter();
        self.length_at(x, &p)
    }

    fn length_at(&self, x: &AffineWeylElement, p: &[Rat]) -> usize {
        self.separating_walls(&x.apply(p))
    }

    /// Walls separating the barycenter of the fundamental alcove from a point
    /// `q` lying in the interior of some alcove.
    fn separating_walls(&self, q: &[Rat]) -> usize {
        let rd = self.base();
        rd.positive_roots()
            .iter()
            .map(|alpha| {
                let v = dot(&to_rat_vec(alpha), q);
                v.numer().div_floor(v.denom()).unsigned_abs() as usize
            })
            .sum()
    }

    /// All elements of length at most `bound`, each with its shortlex-minimal
    /// reduced word, ordered by length and then word. Lengths come from the
    /// breadth-first search and are checked against the wall count.
    pub fn affine_weyl_enumerate(
        &self,
        bound: usize,
        cap: usize,
    ) -> Result<Vec<AffineWeylElement>, AffineError> {
        let gens: Vec<usize> = (0..=self.rank()).collect();
        self.enumerate_generated(&gens, bound, cap)
    }

    /// Breadth-first enumeration of the subgroup generated by `gens` up to length `bound`.
    pub(crate) fn enumerate_generated(
        &self,
        gens: &[usize],
        bound: usize,
        cap: usize,
    ) -> Result<Vec<AffineWeylElement>, AffineError> {
        for &g in gens {
            self.check_node(g)?;
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let generators: Vec<AffineWeylElement> = gens.iter().map(|&g| self.generator(g)).collect();
        let p = self.alcove().barycenter();
        let id = AffineWeylElement::identity(self.rank());
        let mut seen: HashMap<(IntMatrix, Coweight), usize> = HashMap::new();
        seen.insert((id.linear.clone(), id.translation.clone()), 0);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            if out[k].length >= bound {
                k += 1;
                continue;
            }
            for g in &generators {
                let x = &out[k];
                let linear = x.linear.mul(&g.linear);
                // g is an involution, so g⁻¹ = g on the linear part
                let moved = g.linear.mul_vec(&x.translation);
                let translation: Coweight = moved
                    .iter()
                    .zip(&g.translation)
                    .map(|(a, b)| a + b)
                    .collect();
                let key = (linear, translation);
                if seen.contains_key(&key) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(AffineError::CapExceeded { cap });
                }
                let mut word = x.word.clone();
                word.extend_from_slice(&g.word);
                let next = AffineWeylElement {
                    length: x.length + 1,
                    word,
                    linear: key.0.clone(),
                    translation: key.1.clone(),
                };
                debug_assert_eq!(self.length_at(&next, &p), next.length);
                seen.insert(key, out.len());
                out.push(next);
            }
            k += 1;
        }
        Ok(out)
    }

    /// Minimal-length coset representatives for the parabolic subgroup
    /// `W_J` among elements of length at most `bound`.
    pub fn coset_representatives(
        &self,
        j: &[usize],
        side: CosetSide,
        bound: usize,
        cap: usize,
    ) -> Result<Vec<AffineWeylElement>, AffineError> {
        for &n in j {
            self.check_node(n)?;
        }
        let mut nodes = j.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.len() == self.rank() + 1 {
            return Err(AffineError::FullNodeSet);
        }
        let p = self.alcove().barycenter();
        let all = self.affine_weyl_enumerate(bound, cap)?;
        Ok(all
            .into_iter()
            .filter(|x| {
                nodes.iter().all(|&s| {
                    let q = match side {
                        CosetSide::Left => x.apply(&self.reflect_point(s, &p)),
                        CosetSide::Right => self.reflect_point(s, &x.apply(&p)),
                    };
                    self.separating_walls(&q) > x.length
                })
            })
            .collect())
    }
}
