//! Affine root data: simple affine roots, the fundamental alcove, the affine
//! Weyl group `W ⋉ V_T`, the affine Dynkin diagram and parahoric Levi data.
//!
//! Nodes are numbered `0..=r`, node 0 being the affine node `α₀ = (1, −θ, 0)`.

mod diagram;
mod weyl;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::rational::{dot, fmt_rat, rat, to_int_vec, to_rat_vec, Rat};
use crate::lattice::{cokernel, FiniteAbelianGroup, IntMatrix, RatMatrix};
use crate::root::{classify, Coweight, DynkinType, RootDatum, RootError, Weight};
use crate::voronoi::QuadraticForm;

pub use diagram::{AffineDynkinDiagram, Arrow, Bond};
pub use weyl::{AffineWeylElement, CosetSide, DEFAULT_AFFINE_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("node {node} is out of range 0..={max}")]
    NodeOutOfRange { node: usize, max: usize },
    #[error("the full node set does not generate a finite parabolic subgroup")]
    FullNodeSet,
    #[error("result {0:?} is not integral in the character lattice")]
    NonIntegral(Vec<String>),
    #[error("enumeration produced more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// An affine character `(n, λ, h)`: loop-rotation weight, finite weight and level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineCharacter {
    #[serde(with = "crate::lattice::serde_rat")]
    pub n: Rat,
    pub lambda: Weight,
    #[serde(with = "crate::lattice::serde_rat")]
    pub h: Rat,
}

impl AffineCharacter {
    pub fn new(n: Rat, lambda: Weight, h: Rat) -> Self {
        AffineCharacter { n, lambda, h }
    }
}

/// `linear · ζ + constant ≥ 0`, the half-space on which the simple affine
/// root `node` is nonnegative. `linear` is in `X` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcoveFacet {
    pub node: usize,
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub linear: Vec<Rat>,
    #[serde(with = "crate::lattice::serde_rat")]
    pub constant: Rat,
}

impl AlcoveFacet {
    pub fn eval(&self, zeta: &[Rat]) -> Rat {
        dot(&self.linear, zeta) + self.constant
    }
}

/// A wall of a rank-2 alcove drawn in simple-coroot coordinates `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line2 {
    pub node: usize,
    /// `None` for a vertical line.
    #[serde(with = "opt_rat")]
    pub slope: Option<Rat>,
    /// The `y`-intercept, or the `x`-value of a vertical line.
    #[serde(with = "crate::lattice::serde_rat")]
    pub intercept: Rat,
    pub equation: String,
}

mod opt_rat {
    use serde::Serializer;

    use crate::lattice::rational::Rat;

    pub fn serialize<S: Serializer>(q: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => crate::lattice::serde_rat::serialize(q, s),
            None => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcoveVertex {
    /// The unique simple affine root that is positive here.
    pub node: usize,
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub coords: Vec<Rat>,
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub coroot_coords: Vec<Rat>,
}

/// The fundamental alcove `{ζ : α_i(ζ) ≥ 0, i = 0..r}` in `V_T ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alcove {
    pub facets: Vec<AlcoveFacet>,
    /// Facets rewritten in simple-coroot coordinates.
    pub coroot_facets: Vec<AlcoveFacet>,
    pub vertices: Vec<AlcoveVertex>,
}

impl Alcove {
    pub fn contains(&self, zeta: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|f| f.eval(zeta) >= Rat::from_integer(0))
    }

    pub fn interior_contains(&self, zeta: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|f| f.eval(zeta) > Rat::from_integer(0))
    }

    /// Barycenter of the vertices, an interior point.
    pub fn barycenter(&self) -> Vec<Rat> {
        let r = self.vertices[0].coords.len();
        let k = rat(self.vertices.len() as i128);
        (0..r)
            .map(|i| self.vertices.iter().map(|v| v.coords[i]).sum::<Rat>() / k)
            .collect()
    }

    /// Rank-2 walls as lines in simple-coroot coordinates.
    pub fn lines_in_coroot_basis(&self) -> Option<Vec<Line2>> {
        if self.coroot_facets.first()?.linear.len() != 2 {
            return None;
        }
        Some(self.coroot_facets.iter().map(line_of).collect())
    }
}

fn line_of(f: &AlcoveFacet) -> Line2 {
    let (a, b, c) = (f.linear[0], f.linear[1], f.constant);
    let zero = Rat::from_integer(0);
    if b == zero {
        let x0 = -c / a;
        Line2 {
            node: f.node,
            slope: None,
            intercept: x0,
            equation: format!("x = {}", fmt_rat(&x0)),
        }
    } else {
        let m = -a / b;
        let k = -c / b;
        Line2 {
            node: f.node,
            slope: Some(m),
            intercept: k,
            equation: format!("y = {}", affine_expr(m, k)),
        }
    }
}

/// `m x + k` written the way one would by hand: `x`, `x/2`, `-2x/3 + 1/2`.
fn affine_expr(m: Rat, k: Rat) -> String {
    let zero = Rat::from_integer(0);
    let mut out = String::new();
    if m != zero {
        let (p, q) = (*m.numer(), *m.denom());
        let sign = if p < 0 { "-" } else { "" };
        let p = p.abs();
        let coef = if p == 1 { String::new() } else { p.to_string() };
        out.push_str(sign);
        out.push_str(&coef);
        out.push('x');
        if q != 1 {
            out.push_str(&format!("/{q}"));
        }
    }
    if k != zero || out.is_empty() {
        if out.is_empty() {
            out.push_str(&fmt_rat(&k));
        } else if k > zero {
            out.push_str(&format!(" + {}", fmt_rat(&k)));
        } else {
            out.push_str(&format!(" - {}", fmt_rat(&-k)));
        }
    }
    out
}

/// A finite root datum together with its highest root and affine Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRootDatum {
    base: RootDatum,
    theta: Weight,
    theta_coords: Vec<i64>,
    theta_coroot: Coweight,
    affine_cartan: IntMatrix,
}

impl AffineRootDatum {
    pub fn new(base: RootDatum) -> Result<Self, AffineError> {
        let theta_coords = base.highest_root_coords()?;
        let theta = base.weight_from_root_coords(&theta_coords);
        let theta_coroot = base.coroot_in_lattice(&theta_coords);
        let r = base.rank();
        let mut a = IntMatrix::zeros(r + 1, r + 1);
        a.set(0, 0, 2);
        for j in 1..=r {
            a.set(0, j, -base.pair(&base.simple_roots()[j - 1], &theta_coroot));
            a.set(j, 0, -base.pair(&theta, &base.simple_coroots()[j - 1]));
            for i in 1..=r {
                a.set(i, j, base.cartan().get(i - 1, j - 1));
            }
        }
        Ok(AffineRootDatum {
            base,
            theta,
            theta_coords,
            theta_coroot,
            affine_cartan: a,
        })
    }

    pub fn parse(kind: &str, flavor: &str) -> Result<Self, AffineError> {
        Self::new(RootDatum::parse(kind, flavor)?)
    }

    pub fn base(&self) -> &RootDatum {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Highest root θ in `X`.
    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    /// Marks: θ in simple-root coordinates.
    pub fn theta_coords(&self) -> &[i64] {
        &self.theta_coords
    }

    /// θ∨ in `V_T`.
    pub fn theta_coroot(&self) -> &Coweight {
        &self.theta_coroot
    }

    /// `(r+1) × (r+1)` matrix with `a_ij = ⟨α_j, α_i∨⟩`, node 0 first.
    pub fn affine_cartan(&self) -> &IntMatrix {
        &self.affine_cartan
    }

    pub(crate) fn check_node(&self, j: usize) -> Result<(), AffineError> {
        if j > self.rank() {
            Err(AffineError::NodeOutOfRange {
                node: j,
                max: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn affine_simple_roots(&self) -> Vec<AffineCharacter> {
        let one = rat(1);
        let zero = rat(0);
        let mut out = vec![AffineCharacter::new(
            one,
            self.theta.iter().map(|x| -x).collect(),
            zero,
        )];
        for alpha in self.base.simple_roots() {
            out.push(AffineCharacter::new(zero, alpha.clone(), zero));
        }
        out
    }

    /// The half-space functionals of the alcove, node by node.
    fn facets(&self) -> Vec<AlcoveFacet> {
        let mut out = vec![AlcoveFacet {
            node: 0,
            linear: self.theta.iter().map(|&x| rat(-x as i128)).collect(),
            constant: rat(1),
        }];
        for (i, alpha) in self.base.simple_roots().iter().enumerate() {
            out.push(AlcoveFacet {
                node: i + 1,
                linear: to_rat_vec(alpha),
                constant: rat(0),
            });
        }
        out
    }

    pub fn alcove(&self) -> Alcove {
        let facets = self.facets();
        let coroot_facets = facets
            .iter()
            .map(|f| {
                let mu = to_int_vec(&f.linear).expect("roots are integral");
                AlcoveFacet {
                    node: f.node,
                    linear: to_rat_vec(&self.base.dynkin_labels(&mu)),
                    constant: f.constant,
                }
            })
            .collect();
        let r = self.rank();
        let mut vertices = Vec::with_capacity(r + 1);
        for j in 0..=r {
            let others: Vec<&AlcoveFacet> = facets.iter().filter(|f| f.node != j).collect();
            let m =
                RatMatrix::from_rows(&others.iter().map(|f| f.linear.clone()).collect::<Vec<_>>());
            let rhs: Vec<Rat> = others.iter().map(|f| -f.constant).collect();
            let coords = m.solve(&rhs).expect("alcove walls are in general position");
            debug_assert!(facets[j].eval(&coords) > rat(0));
            vertices.push(AlcoveVertex {
                node: j,
                coroot_coords: self.base.coroot_coords(&coords),
                coords,
            });
        }
        Alcove {
            facets,
            coroot_facets,
            vertices,
        }
    }

    /// The alcove vertices `η_j`, node by node.
    pub fn alcove_vertices(&self) -> Vec<(usize, Vec<Rat>)> {
        self.alcove()
            .vertices
            .into_iter()
            .map(|v| (v.node, v.coords))
            .collect()
    }

    /// Translation by `η ∈ V_T` acting on an affine character, using the
    /// basic form `Q`:
    /// `(n, λ, h) ↦ (n − λ(η) + (h/2)·Q(η,η), λ − h·Q(η,·), h)`.
    pub fn affine_weyl_action(
        &self,
        eta: &[i64],
        chi: &AffineCharacter,
    ) -> Result<AffineCharacter, AffineError> {
        let q = self.base.basic_form()?;
        translate(&q, eta, chi)
    }

    /// Type of the sub-diagram on the given nodes of the affine diagram.
    pub fn subdiagram_type(&self, nodes: &[usize]) -> Result<DynkinType, AffineError> {
        for &j in nodes {
            self.check_node(j)?;
        }
        if nodes.is_empty() {
            return Ok(DynkinType { components: vec![] });
        }
        if nodes.len() == self.rank() + 1 {
            return Err(AffineError::FullNodeSet);
        }
        let sub = self.affine_cartan.select(nodes, nodes);
        Ok(classify(&sub)?)
    }

    /// Levi type of the maximal parahoric `P_j`: the diagram with node `j` removed.
    pub fn parahoric_levi_type(&self, j: usize) -> Result<DynkinType, AffineError> {
        self.check_node(j)?;
        let rest: Vec<usize> = (0..=self.rank()).filter(|&i| i != j).collect();
        self.subdiagram_type(&rest)
    }

    /// Generators of the root lattice of `L_j` in simple-root coordinates:
    /// `α_i` for `i ≠ j` and, unless `j = 0`, the finite part `−θ` of `α₀`.
    fn levi_root_generators(&self, j: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut gens: Vec<Vec<i64>> = (1..=r)
            .filter(|&i| i != j)
            .map(|i| (0..r).map(|k| i64::from(k + 1 == i)).collect())
            .collect();
        if j != 0 {
            gens.push(self.theta_coords.iter().map(|x| -x).collect());
        }
        gens
    }

    /// `Z(L_j)`: torsion of `X / (root lattice of L_j)`.
    pub fn levi_center(&self, j: usize) -> Result<FiniteAbelianGroup, AffineError> {
        self.check_node(j)?;
        let r = self.rank();
        let cols: Vec<Vec<i64>> = self
            .levi_root_generators(j)
            .iter()
            .map(|p| self.base.weight_from_root_coords(p))
            .collect();
        Ok(cokernel(&IntMatrix::from_columns(&cols, r)).torsion)
    }

    /// `Z(G)`: torsion of `X / R`.
    pub fn center(&self) -> FiniteAbelianGroup {
        let r = self.rank();
        let m = IntMatrix::from_columns(self.base.simple_roots(), r);
        cokernel(&m).torsion
    }

    /// `Z_j = Z(L_j)/Z(G)`, computed as `R / R_j` where `R_j` is the root
    /// lattice of `L_j` inside the root lattice `R` of `G`.
    pub fn levi_center_quotient(&self, j: usize) -> Result<FiniteAbelianGroup, AffineError> {
        self.check_node(j)?;
        let m = IntMatrix::from_columns(&self.levi_root_generators(j), self.rank());
        let c = cokernel(&m);
        debug_assert_eq!(c.free_rank, 0);
        Ok(c.torsion)
    }

    pub fn affine_dynkin(&self) -> AffineDynkinDiagram {
        AffineDynkinDiagram::from_cartan(&self.affine_cartan)
    }
}

/// The translation action of `η` on affine characters for an arbitrary form `Q`.
pub fn translate(
    q: &QuadraticForm,
    eta: &[i64],
    chi: &AffineCharacter,
) -> Result<AffineCharacter, AffineError> {
    let r = q.rank();
    for v in [eta, chi.lambda.as_slice()] {
        if v.len() != r {
            return Err(AffineError::DimensionMismatch {
                expected: r,
                found: v.len(),
            });
        }
    }
    let eta_r = to_rat_vec(eta);
    let q_eta = q.apply(&eta_r);
    let lambda_eta = rat(chi.lambda.iter().zip(eta).map(|(a, b)| a * b).sum::<i64>() as i128);
    let n = chi.n - lambda_eta + chi.h / rat(2) * q.norm(&eta_r);
    let lambda: Vec<Rat> = chi
        .lambda
        .iter()
        .zip(&q_eta)
        .map(|(&l, x)| rat(l as i128) - chi.h * x)
        .collect();
    let lambda = to_int_vec(&lambda)
        .ok_or_else(|| AffineError::NonIntegral(lambda.iter().map(fmt_rat).collect()))?;
    Ok(AffineCharacter::new(n, lambda, chi.h))
}

#[cfg(test)]
mod tests;
