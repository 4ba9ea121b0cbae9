use serde::Serialize;

use super::cells::lattice_points_in_ellipsoid;
use super::{check_len, QuadraticForm, VoronoiError};
use crate::lattice::rational::{dot, rat, to_int_vec, to_rat_vec, Rat};
use crate::lattice::{cokernel, FiniteAbelianGroup};

/// `Z_Q`, computed as the torsion of the cokernel of `Q : V_T → X`.
pub fn z_q(q: &QuadraticForm) -> Result<FiniteAbelianGroup, VoronoiError> {
    let g = q.integral_gram().ok_or(VoronoiError::NotIntegral)?;
    Ok(cokernel(&g).torsion)
}

/// `c_Q(η, H, r) = Q(η, H) + r·Q(η, η)/2`, kept in pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleValue {
    /// `Q(η, ·)` in dual coordinates.
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub weight: Vec<Rat>,
    /// `Q(η, H)`.
    #[serde(with = "crate::lattice::serde_rat")]
    pub character_part: Rat,
    /// `Q(η, η)/2`.
    #[serde(with = "crate::lattice::serde_rat")]
    pub central_exponent: Rat,
    /// `character_part + r·central_exponent`.
    #[serde(with = "crate::lattice::serde_rat")]
    pub value: Rat,
}

pub fn cocycle_eval(
    q: &QuadraticForm,
    eta: &[i64],
    h: &[Rat],
    r: Rat,
) -> Result<CocycleValue, VoronoiError> {
    check_len(q, eta.len())?;
    check_len(q, h.len())?;
    let eta = to_rat_vec(eta);
    let weight = q.apply(&eta);
    let character_part = dot(&weight, h);
    let central_exponent = q.norm(&eta) / rat(2);
    Ok(CocycleValue {
        value: character_part + r * central_exponent,
        weight,
        character_part,
        central_exponent,
    })
}

/// A weight of `V₁`, which lies in `Q(V_T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtWeight {
    pub mu: Vec<i64>,
    /// The cocharacter `a` with `Q(a) = μ`.
    pub preimage: Vec<i64>,
}

impl LtWeight {
    pub fn new(q: &QuadraticForm, mu: &[i64]) -> Result<Self, VoronoiError> {
        check_len(q, mu.len())?;
        let a = q
            .gram()
            .solve(&to_rat_vec(mu))
            .expect("positive definite forms are invertible");
        let preimage = to_int_vec(&a).ok_or_else(|| VoronoiError::OutsideImage(mu.to_vec()))?;
        Ok(LtWeight {
            mu: mu.to_vec(),
            preimage,
        })
    }

    /// `Q(η)`.
    pub fn image_of(q: &QuadraticForm, eta: &[i64]) -> Result<Self, VoronoiError> {
        check_len(q, eta.len())?;
        let mu = q.apply_int(eta).ok_or(VoronoiError::NotIntegral)?;
        Ok(LtWeight {
            mu,
            preimage: eta.to_vec(),
        })
    }
}

/// `u · exp(H) · η` in `C^× ⋉ (T × V_T)`, with the torus part in
/// logarithmic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopTorusElement {
    pub rotation: bool,
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub torus_log: Vec<Rat>,
    pub eta: Vec<i64>,
}

/// The image of `v_μ`: a multiple of `v_{μ'}` with `μ' = μ + Q(η)`, the
/// scalar being `exp(μ'(H))` times `u^{Q*(μ',μ')/2}` when `u` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtActionRecord {
    pub weight: LtWeight,
    #[serde(with = "crate::lattice::serde_rat")]
    pub torus_exponent: Rat,
    #[serde(with = "crate::lattice::serde_rat::option")]
    pub rotation_exponent: Option<Rat>,
}

pub fn lt_weight_action(
    q: &QuadraticForm,
    g: &LoopTorusElement,
    mu: &LtWeight,
) -> Result<LtActionRecord, VoronoiError> {
    check_len(q, g.eta.len())?;
    check_len(q, g.torus_log.len())?;
    let shift = q.apply_int(&g.eta).ok_or(VoronoiError::NotIntegral)?;
    let new_mu: Vec<i64> = mu.mu.iter().zip(&shift).map(|(a, b)| a + b).collect();
    let preimage: Vec<i64> = mu.preimage.iter().zip(&g.eta).map(|(a, b)| a + b).collect();
    let weight = LtWeight {
        mu: new_mu,
        preimage,
    };
    let mu_rat = to_rat_vec(&weight.mu);
    let torus_exponent = dot(&mu_rat, &g.torus_log);
    // Q*(Q a, Q a) = Q(a, a)
    let rotation_exponent = g
        .rotation
        .then(|| q.norm(&to_rat_vec(&weight.preimage)) / rat(2));
    Ok(LtActionRecord {
        weight,
        torus_exponent,
        rotation_exponent,
    })
}

fn check_level(t: i64) -> Result<(), VoronoiError> {
    if t <= 0 {
        return Err(VoronoiError::NonPositiveLevel(t));
    }
    Ok(())
}

/// `f(η) = t·Q(η,η)/2 + Q(β,η)`.
pub fn exponent_f(
    q: &QuadraticForm,
    t: i64,
    beta: &[i64],
    eta: &[i64],
) -> Result<Rat, VoronoiError> {
    check_level(t)?;
    check_len(q, beta.len())?;
    check_len(q, eta.len())?;
    Ok(f_unchecked(q, t, beta, eta))
}

fn f_unchecked(q: &QuadraticForm, t: i64, beta: &[i64], eta: &[i64]) -> Rat {
    rat(t as i128) * q.eval_int(eta, eta) / rat(2) + q.eval_int(beta, eta)
}

/// Minimizers of [`exponent_f`] over `V_T`.
///
/// With `c = −β/t`, `f(η) = (t/2)·Q(η−c, η−c) + f(c)`, so any `η` with
/// `f(η) ≤ f(η₀)` lies in the ellipsoid `Q(η−c) ≤ 2(f(η₀) − f(c))/t`; `η₀` is
/// the coordinatewise rounding of `c`.
pub fn minimizer_set(
    q: &QuadraticForm,
    t: i64,
    beta: &[i64],
) -> Result<Vec<Vec<i64>>, VoronoiError> {
    check_level(t)?;
    check_len(q, beta.len())?;
    let tr = rat(t as i128);
    let c: Vec<Rat> = beta.iter().map(|&b| -rat(b as i128) / tr).collect();
    let eta0: Vec<i64> = c.iter().map(|x| x.round().to_integer() as i64).collect();
    let f_c = tr * q.norm(&c) / rat(2) + q.eval(&to_rat_vec(beta), &c);
    let radius = (f_unchecked(q, t, beta, &eta0) - f_c) * rat(2) / tr;
    let window = lattice_points_in_ellipsoid(q, &c, &radius);
    let values: Vec<Rat> = window.iter().map(|e| f_unchecked(q, t, beta, e)).collect();
    let best = values.iter().min().copied().expect("η₀ is in the window");
    Ok(window
        .into_iter()
        .zip(values)
        .filter(|(_, v)| *v == best)
        .map(|(e, _)| e)
        .collect())
}
