use serde::Serialize;

use super::{alcove_ray_map, weyl_chamber_stacky_fan, EmbeddingFlavor, FanError};
use crate::affine::AffineRootDatum;
use crate::lattice::rational::{to_int_vec, to_rat_vec};
use crate::lattice::{
    integer_kernel, solve_integral, Cone, Fan, IntMatrix, LatticeError, RatMatrix,
};
use crate::root::RootDatum;

/// A candidate fan `Σ₀` for a toroidal embedding. In the finite case it
/// lives in `V_T`; in the loop case in `V_T ⊕ Z` with the height last.
#[derive(Clone, Debug)]
pub struct EmbeddingDescriptor {
    pub fan: Fan,
    pub flavor: EmbeddingFlavor,
    pub affine: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    AmbientMismatch {
        expected: usize,
        found: usize,
    },
    /// A ray of the cone leaves the negative chamber (or the cone on `−Al₀`).
    SupportOutsideChamber {
        cone: Vec<Vec<i64>>,
        ray: Vec<i64>,
    },
    /// A lattice point of the cone that is not in `−M`.
    LatticePointOutsideMonoid {
        cone: Vec<Vec<i64>>,
        witness: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl EmbeddingReport {
    fn ok() -> Self {
        EmbeddingReport {
            valid: true,
            violation: None,
        }
    }

    fn fail(v: Violation) -> Self {
        EmbeddingReport {
            valid: false,
            violation: Some(v),
        }
    }
}

/// The map `β` whose columns generate the monoid `M`.
fn monoid_map(rd: &RootDatum, affine: Option<&AffineRootDatum>) -> IntMatrix {
    match affine {
        None => weyl_chamber_stacky_fan(rd).beta,
        Some(ard) => alcove_ray_map(ard),
    }
}

/// Checks that `Σ₀` is supported in `−C` (or the cone on `−Al₀`) and, for
/// the stacky flavor, that every lattice point of `|Σ₀|` lies in `−M`,
/// `M` being the monoid generated by the ray generators.
///
/// Because `β` is injective, a point `p` of the chamber is in `M` iff
/// `β⁻¹p` is integral. So `σ ∩ N ⊆ −M` iff `N ∩ span(σ) ⊆ β(Z^k)`, which is
/// decided on a basis of the saturated lattice `N ∩ span(σ)`.
pub fn check_embedding_fan(
    desc: &EmbeddingDescriptor,
    rd: &RootDatum,
) -> Result<EmbeddingReport, FanError> {
    let ard = if desc.affine {
        Some(AffineRootDatum::new(rd.clone())?)
    } else {
        None
    };
    let beta = monoid_map(rd, ard.as_ref());
    let n = beta.rows();
    if desc.fan.ambient_dim() != n {
        return Ok(EmbeddingReport::fail(Violation::AmbientMismatch {
            expected: n,
            found: desc.fan.ambient_dim(),
        }));
    }
    // the alcove rays already point to the negative side
    let sign = if desc.affine { 1 } else { -1 };
    let rays: Vec<Vec<i64>> = (0..beta.cols())
        .map(|j| beta.col(j).iter().map(|x| sign * x).collect())
        .collect();
    let support = Cone::from_int_generators(n, &rays)?;
    for sigma in desc.fan.cones() {
        if let Some(ray) = sigma.generators().iter().find(|g| !support.contains_int(g)) {
            return Ok(EmbeddingReport::fail(Violation::SupportOutsideChamber {
                cone: sigma.generators().to_vec(),
                ray: ray.clone(),
            }));
        }
    }
    if desc.flavor == EmbeddingFlavor::Adjoint {
        return Ok(EmbeddingReport::ok());
    }
    let beta_inv = RatMatrix::from_int(&beta)
        .inverse()
        .ok_or(FanError::InfiniteCokernel(0))?;
    let in_image = |p: &[i64]| to_int_vec(&beta_inv.mul_vec(&to_rat_vec(p))).is_some();
    let index = {
        let d = RatMatrix::from_int(&beta).det();
        d.numer().unsigned_abs() as i64
    };
    for sigma in desc.fan.cones() {
        if sigma.is_zero() {
            continue;
        }
        let equations: Vec<Vec<i64>> = sigma
            .normals()
            .iter()
            .filter(|nv| sigma.generators().iter().all(|g| dot_i(nv, g) == 0))
            .cloned()
            .collect();
        let basis = if equations.is_empty() {
            IntMatrix::identity(n).to_rows()
        } else {
            integer_kernel(&IntMatrix::from_rows(&equations))
        };
        if let Some(b) = basis.iter().find(|b| !in_image(b)) {
            let witness = witness_in_cone(sigma, b, index);
            debug_assert!(!in_image(&witness));
            return Ok(EmbeddingReport::fail(
                Violation::LatticePointOutsideMonoid {
                    cone: sigma.generators().to_vec(),
                    witness,
                },
            ));
        }
    }
    Ok(EmbeddingReport::ok())
}

fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A lattice point of `σ` congruent to `b` modulo `index · N`: `b + k·s`
/// with `s` the sum of the rays and `k` a multiple of the index of the
/// image lattice, so the class of `b` modulo that lattice is kept.
fn witness_in_cone(sigma: &Cone, b: &[i64], index: i64) -> Vec<i64> {
    let s: Vec<i64> = (0..b.len())
        .map(|i| sigma.generators().iter().map(|g| g[i]).sum())
        .collect();
    let mut k = index;
    loop {
        let p: Vec<i64> = b.iter().zip(&s).map(|(x, y)| x + k * y).collect();
        if sigma.contains_int(&p) {
            return p;
        }
        k += index;
    }
}

/// Lifts `β' : L → V_T` through the chamber map `β : Z^r → V_T`: returns the
/// integer matrix `l` with `β ∘ l = β'`, after checking that `β'` sends each
/// given generator of `M'` into `M`. Then `l(M') ⊆ C'` automatically.
pub fn monoid_lift(
    beta_prime: &IntMatrix,
    m_prime: &[Vec<i64>],
    rd: &RootDatum,
) -> Result<IntMatrix, FanError> {
    let beta = weyl_chamber_stacky_fan(rd).beta;
    if beta_prime.rows() != beta.rows() {
        return Err(LatticeError::DimensionMismatch {
            expected: beta.rows(),
            found: beta_prime.rows(),
        }
        .into());
    }
    let beta_inv = RatMatrix::from_int(&beta)
        .inverse()
        .expect("β is invertible over Q");
    for m in m_prime {
        if m.len() != beta_prime.cols() {
            return Err(LatticeError::DimensionMismatch {
                expected: beta_prime.cols(),
                found: m.len(),
            }
            .into());
        }
        let image = beta_prime.mul_vec(m);
        let coeffs = beta_inv.mul_vec(&to_rat_vec(&image));
        let ok = to_int_vec(&coeffs).is_some_and(|c| c.iter().all(|&x| x >= 0));
        if !ok {
            return Err(FanError::NotInMonoid(m.clone()));
        }
    }
    let l = solve_integral(&beta, beta_prime).ok_or(FanError::NoIntegralLift)?;
    debug_assert!(m_prime.iter().all(|m| l.mul_vec(m).iter().all(|&x| x >= 0)));
    Ok(l)
}
