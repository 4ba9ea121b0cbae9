//! Rational polyhedral cones kept in synchronized V- and H-description.
//!
//! Facets are found by exhaustive enumeration over generator subsets, which
//! is fine for the ambient dimensions this crate works in (≤ 6 in practice).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{dot, primitive_of, rat, to_rat_vec, Rat, RatMatrix, RatVector};
use super::{IntMatrix, LatticeError};

/// A cone `{x : n·x ≥ 0 for every normal n}` = nonnegative span of its generators.
///
/// Generators and normals are primitive integer vectors, deduplicated and
/// sorted. The normals contain both signs of every linear equation of the
/// span, so the dual cone is simply the cone generated by the normals.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<i64>>,
    normals: Vec<Vec<i64>>,
    span_dim: usize,
}

fn int_dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

fn rat_matrix(rows: &[Vec<i64>], ncols: usize) -> RatMatrix {
    if rows.is_empty() {
        return RatMatrix::zeros(0, ncols);
    }
    RatMatrix::from_rows(&rows.iter().map(|r| to_rat_vec(r)).collect::<Vec<_>>())
}

/// Calls `f` for every `k`-subset of `0..n`, in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Cone {
    /// The cone generated by `gens` in `Q^dim`.
    pub fn from_generators(dim: usize, gens: &[RatVector]) -> Result<Cone, LatticeError> {
        let mut ints = Vec::with_capacity(gens.len());
        for g in gens {
            if g.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if let Some(p) = primitive_of(&g.0) {
                ints.push(p);
            }
        }
        Ok(Self::build(dim, ints))
    }

    pub fn from_int_generators(dim: usize, gens: &[Vec<i64>]) -> Result<Cone, LatticeError> {
        let rv: Vec<RatVector> = gens.iter().map(|g| RatVector::from_ints(g)).collect();
        Self::from_generators(dim, &rv)
    }

    /// `{x : n·x ≥ 0}` for every given normal.
    pub fn from_inequalities(dim: usize, normals: &[Vec<i64>]) -> Result<Cone, LatticeError> {
        Ok(Self::from_int_generators(dim, normals)?.dual())
    }

    pub fn zero(dim: usize) -> Cone {
        Self::build(dim, Vec::new())
    }

    pub fn whole_space(dim: usize) -> Cone {
        Self::zero(dim).dual()
    }

    /// First orthant spanned by the coordinate vectors.
    pub fn orthant(dim: usize) -> Cone {
        let gens: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::build(dim, gens)
    }

    fn build(dim: usize, mut gens: Vec<Vec<i64>>) -> Cone {
        gens.sort();
        gens.dedup();
        let gm = rat_matrix(&gens, dim);
        let span_dim = gm.rank();
        // equations of the linear span
        let equations: Vec<Vec<i64>> = gm.kernel().iter().filter_map(|v| primitive_of(v)).collect();

        let mut facets = BTreeSet::new();
        if span_dim > 0 {
            for_each_subset(gens.len(), span_dim - 1, |subset| {
                let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
                rows.extend(equations.iter().cloned());
                let sys = rat_matrix(&rows, dim);
                if sys.rank() != dim - 1 {
                    return;
                }
                let kernel = sys.kernel();
                let Some(h) = primitive_of(&kernel[0]) else {
                    return;
                };
                let vals: Vec<i128> = gens.iter().map(|g| int_dot(&h, g)).collect();
                if vals.iter().all(|&v| v >= 0) {
                    facets.insert(h);
                } else if vals.iter().all(|&v| v <= 0) {
                    facets.insert(h.iter().map(|x| -x).collect());
                }
            });
        }
        let mut normals: BTreeSet<Vec<i64>> = facets;
        for e in &equations {
            normals.insert(e.clone());
            normals.insert(e.iter().map(|x| -x).collect());
        }

        let mut cone = Cone {
            dim,
            generators: gens,
            normals: normals.into_iter().collect(),
            span_dim,
        };
        if cone.is_pointed() {
            cone.generators = cone.extreme_rays_of_generators();
        }
        cone
    }

    fn extreme_rays_of_generators(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .filter(|g| {
                let tight: Vec<Vec<i64>> = self
                    .normals
                    .iter()
                    .filter(|n| int_dot(n, g) == 0)
                    .cloned()
                    .collect();
                rat_matrix(&tight, self.dim).rank() + 1 == self.dim
            })
            .cloned()
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.span_dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// H-description normals (facets plus both signs of each span equation).
    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    /// Facet normals only: the normals that are not span equations.
    pub fn facet_normals(&self) -> Vec<Vec<i64>> {
        self.normals
            .iter()
            .filter(|n| !self.generators.iter().all(|g| int_dot(n, g) == 0))
            .cloned()
            .collect()
    }

    pub fn lineality_dim(&self) -> usize {
        self.dim - rat_matrix(&self.normals, self.dim).rank()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Extreme rays; only meaningful for pointed cones.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.normals
            .iter()
            .all(|n| !dot(&to_rat_vec(n), x).is_negative())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.normals.iter().all(|n| int_dot(n, x) >= 0)
    }

    /// Strict interior relative to the span.
    pub fn relative_interior_contains(&self, x: &[Rat]) -> bool {
        let facets = self.facet_normals();
        self.contains(x) && facets.iter().all(|n| dot(&to_rat_vec(n), x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        self.dim == other.dim && other.generators.iter().all(|g| self.contains_int(g))
    }

    /// Set equality.
    pub fn same_set(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    pub fn dual(&self) -> Cone {
        Self::build(self.dim, self.normals.clone())
    }

    pub fn intersection(&self, other: &Cone) -> Result<Cone, LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::AmbientMismatch);
        }
        let mut ns = self.normals.clone();
        ns.extend(other.normals.iter().cloned());
        Cone::from_inequalities(self.dim, &ns)
    }

    /// Image of the cone under `f : Q^dim → Q^(f.rows)`.
    pub fn image(&self, f: &IntMatrix) -> Result<Cone, LatticeError> {
        if f.cols() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                found: f.cols(),
            });
        }
        let gens: Vec<Vec<i64>> = self.generators.iter().map(|g| f.mul_vec(g)).collect();
        Cone::from_int_generators(f.rows(), &gens)
    }

    /// Face cut out by the facet normals vanishing on every vector in `on`.
    fn face_through(&self, on: &[Vec<i64>]) -> Cone {
        let tight: Vec<Vec<i64>> = self
            .facet_normals()
            .into_iter()
            .filter(|n| on.iter().all(|v| int_dot(n, v) == 0))
            .collect();
        let gens: Vec<Vec<i64>> = self
            .generators
            .iter()
            .filter(|g| tight.iter().all(|n| int_dot(n, g) == 0))
            .cloned()
            .collect();
        Self::build(self.dim, gens)
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.face_through(&self.generators).same_set(self)
    }

    /// All faces, including `{0}` (or the lineality space) and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let facets = self.facet_normals();
        let all: BTreeSet<usize> = (0..self.generators.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![all];
        while let Some(face) = stack.pop() {
            if !seen.insert(face.clone()) {
                continue;
            }
            for n in &facets {
                if face.iter().all(|&i| int_dot(n, &self.generators[i]) == 0) {
                    continue;
                }
                let sub: BTreeSet<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| int_dot(n, &self.generators[i]) == 0)
                    .collect();
                stack.push(sub);
            }
        }
        seen.into_iter()
            .map(|idx| {
                let gens: Vec<Vec<i64>> = idx.iter().map(|&i| self.generators[i].clone()).collect();
                Self::build(self.dim, gens)
            })
            .collect()
    }

    /// Canonical key for pointed cones: the sorted primitive extreme rays.
    pub fn key(&self) -> Vec<Vec<i64>> {
        self.generators.clone()
    }

    /// An integer point in the relative interior (sum of generators).
    pub fn interior_point(&self) -> Vec<Rat> {
        let mut p = vec![rat(0); self.dim];
        for g in &self.generators {
            for (a, b) in p.iter_mut().zip(g) {
                *a += rat(*b as i128);
            }
        }
        p
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other)
    }
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cone", 3)?;
        st.serialize_field("dimension", &self.span_dim)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("normals", &self.normals)?;
        st.end()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(i64::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "cone⟨{}⟩", gens.join(", "))
    }
}

/// `f⁻¹(C)` for a linear map `f` from the domain lattice into the ambient of `C`.
pub fn cone_preimage(c: &Cone, f: &IntMatrix) -> Result<Cone, LatticeError> {
    if f.rows() != c.ambient_dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: c.ambient_dim(),
            found: f.rows(),
        });
    }
    let ft = f.transpose();
    let pulled: Vec<Vec<i64>> = c.normals().iter().map(|n| ft.mul_vec(n)).collect();
    Cone::from_inequalities(f.cols(), &pulled)
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

/// Unique primitive integer vector on the ray through `v`.
pub fn primitive(v: &RatVector) -> Result<Vec<i64>, LatticeError> {
    primitive_of(&v.0).ok_or(LatticeError::ZeroVector)
}
