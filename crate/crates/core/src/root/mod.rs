//! Finite-type root data.
//!
//! Coordinates: the character lattice `X` and the cocharacter lattice `V_T`
//! are both `Z^r`, in mutually dual bases, so the pairing `⟨μ, η⟩` is the dot
//! product. The basis of `X` is recorded by the matrix `B` whose columns are
//! its vectors in fundamental-weight coordinates: `B = I` for the simply
//! connected datum (`V_T` = coroot lattice), `B = A` for the adjoint one
//! (`X` = root lattice, `V_T` = coweight lattice).
//!
//! Simple roots are numbered `1..=r` when they appear as node labels (sets
//! `J`, words in the Weyl group); vectors are indexed from 0 as usual.

mod cartan;
mod freudenthal;
mod weyl;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::rational::{primitive_of, rat, to_int, to_int_vec, to_rat_vec, Rat};
use crate::lattice::{Cone, Fan, IntMatrix, LatticeError, RatMatrix};
use crate::voronoi::QuadraticForm;

pub use cartan::{
    classify, components, symmetrized, symmetrizer, validate_finite_cartan, CartanType, DynkinType,
    Family,
};
pub use freudenthal::WeightMultiplicityTable;
pub use weyl::WeylElement;

/// Coordinates in the character lattice `X`.
pub type Weight = Vec<i64>;
/// Coordinates in the cocharacter lattice `V_T`.
pub type Coweight = Vec<i64>;

/// Enough for every rank ≤ 8 type except E7 and E8.
pub const DEFAULT_WEYL_CAP: usize = 60_000;
/// Largest Weyl group for which torus closure fans are materialized.
pub const TORUS_FAN_CAP: usize = 1_152;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("rank {rank} is out of range for type {family:?}")]
    RankOutOfRange { family: Family, rank: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid lattice flavor: {0}")]
    InvalidFlavor(String),
    #[error("operation needs an irreducible root datum")]
    Reducible,
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight {0:?} is not regular dominant")]
    NotRegular(Vec<i64>),
    #[error("coweight {0:?} is not in the negative chamber")]
    OutsideNegativeChamber(Vec<i64>),
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which lattice between the root and weight lattices is `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "sc")]
    SimplyConnected,
    #[serde(rename = "ad")]
    Adjoint,
    /// Columns are a basis of `X` in fundamental-weight coordinates.
    #[serde(rename = "explicit")]
    Explicit(IntMatrix),
}

impl FromStr for Flavor {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simply_connected" => Ok(Flavor::SimplyConnected),
            "ad" | "adjoint" => Ok(Flavor::Adjoint),
            other => Err(RootError::InvalidFlavor(other.to_string())),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::SimplyConnected => write!(f, "sc"),
            Flavor::Adjoint => write!(f, "ad"),
            Flavor::Explicit(_) => write!(f, "explicit"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RootDatumRepr", into = "RootDatumRepr")]
pub struct RootDatum {
    cartan: IntMatrix,
    dynkin: DynkinType,
    label: Option<CartanType>,
    flavor: Flavor,
    eps: Vec<Rat>,
    basis: IntMatrix,
    basis_inv: RatMatrix,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
    /// Positive roots in simple-root coordinates, by height then lexicographically.
    positive: Vec<Vec<i64>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.basis == other.basis
    }
}

impl Eq for RootDatum {}

#[derive(Serialize, Deserialize)]
struct RootDatumRepr {
    #[serde(rename = "type")]
    kind: String,
    rank: usize,
    flavor: Flavor,
    cartan: IntMatrix,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
}

impl From<RootDatum> for RootDatumRepr {
    fn from(rd: RootDatum) -> Self {
        let kind = match rd.label {
            Some(t) => t.family.letter().to_string(),
            None => rd.dynkin.to_string(),
        };
        RootDatumRepr {
            kind,
            rank: rd.rank(),
            flavor: rd.flavor.clone(),
            cartan: rd.cartan.clone(),
            simple_roots: rd.simple_roots.clone(),
            simple_coroots: rd.simple_coroots.clone(),
        }
    }
}

impl TryFrom<RootDatumRepr> for RootDatum {
    type Error = RootError;

    fn try_from(r: RootDatumRepr) -> Result<Self, Self::Error> {
        let mut rd = RootDatum::from_cartan(&r.cartan, r.flavor)?;
        if let Ok(family) = r.kind.parse::<Family>() {
            let t = CartanType::new(family, r.rank)?;
            if t.cartan_matrix() == rd.cartan {
                rd.label = Some(t);
            }
        }
        if rd.rank() != r.rank
            || rd.simple_roots != r.simple_roots
            || rd.simple_coroots != r.simple_coroots
        {
            return Err(RootError::InvalidCartan(
                "serialized roots do not match the Cartan matrix and flavor".into(),
            ));
        }
        Ok(rd)
    }
}

impl RootDatum {
    pub fn build(family: Family, rank: usize, flavor: Flavor) -> Result<Self, RootError> {
        let t = CartanType::new(family, rank)?;
        let mut rd = Self::from_cartan(&t.cartan_matrix(), flavor)?;
        rd.label = Some(t);
        Ok(rd)
    }

    /// Convenience: `RootDatum::parse("B2", "sc")`.
    pub fn parse(kind: &str, flavor: &str) -> Result<Self, RootError> {
        let t: CartanType = kind.parse()?;
        Self::build(t.family, t.rank, flavor.parse()?)
    }

    pub fn from_cartan(cartan: &IntMatrix, flavor: Flavor) -> Result<Self, RootError> {
        let eps = validate_finite_cartan(cartan)?;
        let dynkin = classify(cartan)?;
        let r = cartan.rows();
        let basis = match &flavor {
            Flavor::SimplyConnected => IntMatrix::identity(r),
            Flavor::Adjoint => cartan.clone(),
            Flavor::Explicit(b) => {
                if b.rows() != r || b.cols() != r {
                    return Err(RootError::InvalidFlavor(format!(
                        "lattice basis must be {r}x{r}"
                    )));
                }
                b.clone()
            }
        };
        let basis_inv = RatMatrix::from_int(&basis)
            .inverse()
            .ok_or_else(|| RootError::InvalidFlavor("lattice basis is singular".into()))?;
        let mut simple_roots = Vec::with_capacity(r);
        for j in 0..r {
            let coords = basis_inv.mul_vec(&to_rat_vec(&cartan.col(j)));
            let root = to_int_vec(&coords).ok_or_else(|| {
                RootError::InvalidFlavor("lattice does not contain the root lattice".into())
            })?;
            simple_roots.push(root);
        }
        let simple_coroots = basis.to_rows();
        let positive = positive_root_closure(cartan);
        Ok(RootDatum {
            cartan: cartan.clone(),
            dynkin,
            label: None,
            flavor,
            eps,
            basis,
            basis_inv,
            simple_roots,
            simple_coroots,
            positive,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn dynkin_type(&self) -> &DynkinType {
        &self.dynkin
    }

    /// The type this datum was built from, if it was built from a type label.
    pub fn cartan_type(&self) -> Option<CartanType> {
        self.label
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    /// `ε_i = (α_i, α_i)/2` with long roots normalized to 1.
    pub fn symmetrizer(&self) -> &[Rat] {
        &self.eps
    }

    /// Columns: basis of `X` in fundamental-weight coordinates.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_irreducible(&self) -> bool {
        self.dynkin.components.len() == 1
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn pair(&self, mu: &[i64], eta: &[i64]) -> i64 {
        mu.iter().zip(eta).map(|(a, b)| a * b).sum()
    }

    fn check_len(&self, v: &[i64]) -> Result<(), RootError> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(RootError::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            })
        }
    }

    /// `⟨μ, α_i∨⟩` for every `i` (fundamental-weight coordinates).
    pub fn dynkin_labels(&self, mu: &[i64]) -> Vec<i64> {
        self.basis.mul_vec(mu)
    }

    /// The weight with the given labels, if it lies in `X`.
    pub fn weight_from_labels(&self, labels: &[i64]) -> Option<Weight> {
        to_int_vec(&self.basis_inv.mul_vec(&to_rat_vec(labels)))
    }

    /// Fundamental weights in `X ⊗ Q` coordinates.
    pub fn fundamental_weights(&self) -> Vec<Vec<Rat>> {
        (0..self.rank()).map(|i| self.basis_inv.col(i)).collect()
    }

    /// `Σ p_j α_j` for simple-root coordinates `p`.
    pub fn weight_from_root_coords(&self, p: &[i64]) -> Weight {
        let mut mu = vec![0; self.rank()];
        for (pj, alpha) in p.iter().zip(&self.simple_roots) {
            for (m, a) in mu.iter_mut().zip(alpha) {
                *m += pj * a;
            }
        }
        mu
    }

    /// Coordinates of `μ` in the simple-root basis of `X ⊗ Q`.
    pub fn root_coords(&self, mu: &[i64]) -> Vec<Rat> {
        let labels = to_rat_vec(&self.dynkin_labels(mu));
        RatMatrix::from_int(&self.cartan)
            .solve(&labels)
            .expect("Cartan matrices of finite type are invertible")
    }

    /// Coordinates of `η ∈ V_T ⊗ Q` in the simple-coroot basis: `c_i = ⟨ω_i, η⟩`.
    pub fn coroot_coords(&self, eta: &[Rat]) -> Vec<Rat> {
        self.basis_inv.transpose().mul_vec(eta)
    }

    /// `Σ c_i α_i∨` in `V_T` coordinates.
    pub fn coweight_from_coroot_coords(&self, c: &[Rat]) -> Vec<Rat> {
        RatMatrix::from_int(&self.basis).transpose().mul_vec(c)
    }

    /// Fundamental coweights `ω_i∨` (dual to the simple roots) in `V_T ⊗ Q`.
    pub fn fundamental_coweights(&self) -> Vec<Vec<Rat>> {
        let at_inv = RatMatrix::from_int(&self.cartan.transpose())
            .inverse()
            .expect("invertible");
        (0..self.rank())
            .map(|i| self.coweight_from_coroot_coords(&at_inv.col(i)))
            .collect()
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots as weights in `X`.
    pub fn positive_roots(&self) -> Vec<Weight> {
        self.positive
            .iter()
            .map(|p| self.weight_from_root_coords(p))
            .collect()
    }

    /// `(β, β)/2` for a root in simple-root coordinates.
    pub fn half_norm(&self, p: &[i64]) -> Rat {
        let s = symmetrized(&self.cartan, &self.eps);
        let pr = to_rat_vec(p);
        s.bilinear(&pr, &pr) / rat(2)
    }

    /// Coroot `β∨` of a root given in simple-root coordinates, in simple-coroot coordinates.
    pub fn coroot_of(&self, p: &[i64]) -> Vec<i64> {
        let eb = self.half_norm(p);
        p.iter()
            .zip(&self.eps)
            .map(|(&pi, e)| to_int(&(rat(pi as i128) * e / eb)).expect("coroots are integral"))
            .collect()
    }

    /// Coroot `β∨` in `V_T` coordinates.
    pub fn coroot_in_lattice(&self, p: &[i64]) -> Coweight {
        let c = to_rat_vec(&self.coroot_of(p));
        to_int_vec(&self.coweight_from_coroot_coords(&c)).expect("coroots lie in V_T")
    }

    /// Highest root θ in simple-root coordinates.
    pub fn highest_root_coords(&self) -> Result<Vec<i64>, RootError> {
        if !self.is_irreducible() {
            return Err(RootError::Reducible);
        }
        let theta = self.positive.last().expect("nonempty root system").clone();
        debug_assert!(self
            .positive
            .iter()
            .all(|b| theta.iter().zip(b).all(|(t, x)| t >= x)));
        Ok(theta)
    }

    pub fn highest_root(&self) -> Result<Weight, RootError> {
        Ok(self.weight_from_root_coords(&self.highest_root_coords()?))
    }

    /// `s_i` on `X` (index `i` from 0).
    pub fn reflection_on_weights(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for a in 0..r {
            for b in 0..r {
                m.set(
                    a,
                    b,
                    m.get(a, b) - self.simple_roots[i][a] * self.simple_coroots[i][b],
                );
            }
        }
        m
    }

    /// `s_i` on `V_T` (index `i` from 0).
    pub fn reflection_on_coweights(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for a in 0..r {
            for b in 0..r {
                m.set(
                    a,
                    b,
                    m.get(a, b) - self.simple_coroots[i][a] * self.simple_roots[i][b],
                );
            }
        }
        m
    }

    pub fn weyl_order(&self) -> u64 {
        self.dynkin.weyl_order()
    }

    /// Every Weyl group element with its shortlex-minimal reduced word,
    /// ordered by length and then by word.
    pub fn weyl_group(&self, cap: usize) -> Result<Vec<WeylElement>, RootError> {
        let all: Vec<usize> = (1..=self.rank()).collect();
        weyl::enumerate(self, &all, cap)
    }

    /// The parabolic subgroup generated by the simple reflections in `nodes` (1-based).
    pub fn parabolic_subgroup(
        &self,
        nodes: &[usize],
        cap: usize,
    ) -> Result<Vec<WeylElement>, RootError> {
        weyl::enumerate(self, nodes, cap)
    }

    /// `C = {η : ⟨α_i, η⟩ ≥ 0}` in `V_T ⊗ Q`.
    pub fn dominant_chamber(&self) -> Cone {
        Cone::from_inequalities(self.rank(), &self.simple_roots).expect("dimensions agree")
    }

    /// Primitive generators `u_j ∈ V_T` of the rays of `C`, in node order.
    pub fn chamber_rays(&self) -> Vec<Coweight> {
        self.fundamental_coweights()
            .iter()
            .map(|w| primitive_of(w).expect("fundamental coweights are nonzero"))
            .collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.dynkin_labels(lambda).iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self, lambda: &[i64]) -> bool {
        self.dynkin_labels(lambda).iter().all(|&x| x > 0)
    }

    pub fn freudenthal_multiplicities(
        &self,
        lambda: &[i64],
    ) -> Result<WeightMultiplicityTable, RootError> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(RootError::NotDominant(lambda.to_vec()));
        }
        Ok(freudenthal::multiplicities(self, lambda))
    }

    /// Normal fan of the weight polytope `conv(W·λ)` for regular dominant `λ`,
    /// with the minimizing convention: the cone at the vertex `wλ` is the set
    /// of `η` on which `⟨·, η⟩` is minimized at `wλ`, which is `w(−C)`.
    pub fn torus_closure_fan(&self, lambda: &[i64]) -> Result<Fan, RootError> {
        self.check_len(lambda)?;
        if !self.is_regular_dominant(lambda) {
            return Err(RootError::NotRegular(lambda.to_vec()));
        }
        let group = self.weyl_group(TORUS_FAN_CAP)?;
        let mut cones = Vec::with_capacity(group.len());
        for w in &group {
            let v = w.act_on_weight(lambda);
            // edges of the polytope at wλ lead to w s_i λ
            let normals: Vec<Vec<i64>> = (0..self.rank())
                .map(|i| {
                    let s = self.reflection_on_weights(i).mul_vec(lambda);
                    let ws = w.act_on_weight(&s);
                    ws.iter().zip(&v).map(|(a, b)| a - b).collect()
                })
                .collect();
            cones.push(Cone::from_inequalities(self.rank(), &normals)?);
        }
        Ok(Fan::from_cones_unchecked(self.rank(), cones))
    }

    /// `J = {i : ⟨α_i, η⟩ < 0}` for `η` in the closed negative chamber.
    pub fn one_param_limit_j(&self, eta: &[i64]) -> Result<BTreeSet<usize>, RootError> {
        self.check_len(eta)?;
        let pairings: Vec<i64> = self
            .simple_roots
            .iter()
            .map(|a| self.pair(a, eta))
            .collect();
        if pairings.iter().any(|&p| p > 0) {
            return Err(RootError::OutsideNegativeChamber(eta.to_vec()));
        }
        Ok((1..=self.rank()).filter(|&i| pairings[i - 1] < 0).collect())
    }

    /// Gram matrix of the basic invariant form in the simple-coroot basis:
    /// `(α_i∨, α_j∨) = a_ij / ε_j`, so coroots of long roots have square length 2.
    pub fn coroot_gram(&self) -> RatMatrix {
        let r = self.rank();
        let mut g = RatMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g.set(i, j, rat(self.cartan.get(i, j) as i128) / self.eps[j]);
            }
        }
        g
    }

    /// The W-invariant form on `V_T` normalized by `(θ∨, θ∨) = 2`.
    pub fn basic_form(&self) -> Result<QuadraticForm, RootError> {
        if !self.is_irreducible() {
            return Err(RootError::Reducible);
        }
        // columns of P: the V_T basis in simple-coroot coordinates
        let p = self.basis_inv.transpose();
        let gram = p.transpose().mul(&self.coroot_gram()).mul(&p);
        Ok(QuadraticForm::new(gram).expect("basic form is positive definite"))
    }

    /// Index of the root lattice in `X`: the order of the center of the group.
    pub fn center_order(&self) -> u64 {
        let m = RatMatrix::from_int(&self.cartan).det() / RatMatrix::from_int(&self.basis).det();
        let n = to_int(&m).expect("integral index");
        n.unsigned_abs()
    }
}

/// Positive roots in simple-root coordinates via closure under simple
/// reflections (a positive root other than `α_i` stays positive under `s_i`).
fn positive_root_closure(cartan: &IntMatrix) -> Vec<Vec<i64>> {
    let r = cartan.rows();
    let simple: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue = simple;
    let mut k = 0;
    while k < queue.len() {
        let beta = queue[k].clone();
        k += 1;
        for i in 0..r {
            if beta
                .iter()
                .enumerate()
                .all(|(j, &b)| b == i64::from(i == j))
            {
                continue;
            }
            let pairing: i64 = (0..r).map(|j| beta[j] * cartan.get(i, j)).sum();
            let mut next = beta.clone();
            next[i] -= pairing;
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    queue.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    queue
}
