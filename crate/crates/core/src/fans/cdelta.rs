use serde::Serialize;

use super::weyl_chamber_stacky_fan;
use crate::lattice::rational::{dot, primitive_of, to_rat_vec, Rat};
use crate::lattice::{cone_preimage, dual_cone, Cone, IntMatrix};
use crate::root::RootDatum;

/// The cone `C_Δ ⊂ V_T ⊕ Z^r` together with the check that its dual is
/// generated by `(0, a_i)` and `(±ω_i, ±w_i)`, where `a_i = β*(α_i)` and
/// `w_i = β*(ω_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct CDeltaCertificate {
    pub cone: Cone,
    pub dual: Cone,
    /// The predicted dual generators, primitive and sorted.
    pub expected_generators: Vec<Vec<i64>>,
    /// `cone(expected) = C_Δ∨` as sets.
    pub generates_dual: bool,
    /// No predicted generator lies in the cone of the others.
    pub irredundant: bool,
    pub lineality_dim: usize,
    pub dual_lineality_dim: usize,
}

impl CDeltaCertificate {
    pub fn holds(&self) -> bool {
        self.generates_dual && self.irredundant && self.dual_lineality_dim == self.cone.dimension()
    }
}

/// `C_Δ`, the preimage under `(id, β) : V_T ⊕ Z^r → V_T ⊕ V_T` of the
/// antidiagonal copy `{(−c, c) : c ∈ C}` of the chamber.
pub fn c_delta(rd: &RootDatum) -> CDeltaCertificate {
    let r = rd.rank();
    let sf = weyl_chamber_stacky_fan(rd);
    let beta = &sf.beta;
    let f = IntMatrix::identity(r).direct_sum(beta);
    let anti: Vec<Vec<i64>> = rd
        .chamber_rays()
        .iter()
        .map(|u| u.iter().map(|x| -x).chain(u.iter().copied()).collect())
        .collect();
    let target = Cone::from_int_generators(2 * r, &anti).expect("dimensions agree");
    let cone = cone_preimage(&target, &f).expect("dimensions agree");
    let dual = dual_cone(&cone);

    // β* on X ⊗ Q: x ↦ βᵀ x
    let bt = beta.transpose();
    let pull =
        |mu: &[Rat]| -> Vec<Rat> { (0..r).map(|i| dot(&to_rat_vec(bt.row(i)), mu)).collect() };
    let mut expected: Vec<Vec<i64>> = Vec::new();
    for alpha in rd.simple_roots() {
        let a = pull(&to_rat_vec(alpha));
        let mut v = vec![Rat::from_integer(0); r];
        v.extend(a);
        expected.push(primitive_of(&v).expect("a_i is nonzero"));
    }
    for omega in rd.fundamental_weights() {
        let w = pull(&omega);
        let mut v = omega.clone();
        v.extend(w);
        let p = primitive_of(&v).expect("ω_i is nonzero");
        expected.push(p.iter().map(|x| -x).collect());
        expected.push(p);
    }
    expected.sort();
    expected.dedup();

    let span = Cone::from_int_generators(2 * r, &expected).expect("dimensions agree");
    let generates_dual = span.same_set(&dual);
    let irredundant = (0..expected.len()).all(|k| {
        let rest: Vec<Vec<i64>> = expected
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let c = Cone::from_int_generators(2 * r, &rest).expect("dimensions agree");
        !c.contains_int(&expected[k])
    });
    CDeltaCertificate {
        lineality_dim: cone.lineality_dim(),
        dual_lineality_dim: dual.lineality_dim(),
        cone,
        dual,
        expected_generators: expected,
        generates_dual,
        irredundant,
    }
}
