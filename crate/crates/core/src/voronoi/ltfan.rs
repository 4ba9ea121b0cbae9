use std::collections::BTreeMap;

use serde::Serialize;

use super::cells::{cell_from_relevant, lattice_points_in_ellipsoid, relevant_vectors};
use super::rep::minimizer_set;
use super::{QuadraticForm, VoronoiError, MAX_VERTEX_RANK};
use crate::lattice::rational::{dot, rat, to_rat_vec, Rat, RatVector};
use crate::lattice::{Cone, Fan};

pub const CLASS_DISCLAIMER: &str =
    "classes are computed on the finite window of beta only; the fan itself is infinite";

/// The cone on the Voronoi diagram: one maximal cone `R≥0·(C_n × {1})` per
/// center `n` of the window, in `V_T ⊕ Z` with the height last.
#[derive(Clone, Debug, Serialize)]
pub struct LtFan {
    pub form: QuadraticForm,
    pub window: i64,
    /// Always `"last"`: the final coordinate is the loop-rotation direction.
    pub height: &'static str,
    pub centers: Vec<Vec<i64>>,
    #[serde(flatten)]
    pub fan: Fan,
}

fn box_points(n: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-w..=w).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn lt_fan(q: &QuadraticForm, window: i64) -> Result<LtFan, VoronoiError> {
    let n = q.rank();
    if n > MAX_VERTEX_RANK {
        return Err(VoronoiError::RankTooLarge {
            rank: n,
            max: MAX_VERTEX_RANK,
        });
    }
    let relevant = relevant_vectors(q);
    let centers = box_points(n, window.max(0));
    let mut cones = Vec::with_capacity(centers.len());
    for c in &centers {
        let cell = cell_from_relevant(q, &relevant, c);
        let gens: Vec<RatVector> = cell
            .vertices
            .expect("rank is at most 3")
            .into_iter()
            .map(|mut v| {
                v.push(rat(1));
                RatVector(v)
            })
            .collect();
        cones.push(Cone::from_generators(n + 1, &gens)?);
    }
    Ok(LtFan {
        form: q.clone(),
        window: window.max(0),
        height: "last",
        centers,
        fan: Fan::from_cones_unchecked(n + 1, cones),
    })
}

/// One class `C(β)`: the `β` of the window sharing a minimizer set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtClass {
    pub minimizers: Vec<Vec<i64>>,
    pub betas: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtFanCheck {
    pub t: i64,
    pub window: i64,
    pub betas_checked: usize,
    /// Classes by equal minimizer sets of the exponent function.
    pub classes: Vec<LtClass>,
    /// Number of classes by the set of cells containing `−β/t`.
    pub voronoi_class_count: usize,
    pub agree: bool,
    /// `β` whose minimizer set differs from its set of cells.
    pub mismatches: Vec<Vec<i64>>,
    pub disclaimer: &'static str,
}

/// Compares the classes `C(β)` of equal minimizer sets with the
/// classification of `−β/t` by the closed Voronoi cells containing it,
/// for all `|β|∞ ≤ window`. The cell side uses only the relevant-vector
/// inequalities.
pub fn lt_fan_vs_minimizers_check(
    q: &QuadraticForm,
    t: i64,
    window: i64,
) -> Result<LtFanCheck, VoronoiError> {
    let relevant = relevant_vectors(q);
    let normals: Vec<(Vec<Rat>, Rat)> = relevant
        .iter()
        .map(|v| {
            let vr = to_rat_vec(v);
            (q.apply(&vr), q.norm(&vr) / rat(2))
        })
        .collect();
    let in_cell = |s: &[i64], x: &[Rat]| -> bool {
        let d: Vec<Rat> = x.iter().zip(s).map(|(a, b)| a - rat(*b as i128)).collect();
        normals.iter().all(|(nv, h)| dot(nv, &d) <= *h)
    };
    let tr = rat(t as i128);
    let mut by_min: BTreeMap<Vec<Vec<i64>>, Vec<Vec<i64>>> = BTreeMap::new();
    let mut by_cell: BTreeMap<Vec<Vec<i64>>, Vec<Vec<i64>>> = BTreeMap::new();
    let mut mismatches = Vec::new();
    let betas = box_points(q.rank(), window.max(0));
    for beta in &betas {
        let mins = minimizer_set(q, t, beta)?;
        let c: Vec<Rat> = beta.iter().map(|&b| -rat(b as i128) / tr).collect();
        // a cell containing c has its center no farther than the rounding of c
        let s0: Vec<Rat> = c.iter().map(|x| x.round()).collect();
        let d: Vec<Rat> = s0.iter().zip(&c).map(|(a, b)| a - b).collect();
        let cells: Vec<Vec<i64>> = lattice_points_in_ellipsoid(q, &c, &q.norm(&d))
            .into_iter()
            .filter(|s| in_cell(s, &c))
            .collect();
        if cells != mins {
            mismatches.push(beta.clone());
        }
        by_min.entry(mins).or_default().push(beta.clone());
        by_cell.entry(cells).or_default().push(beta.clone());
    }
    let partition = |m: &BTreeMap<Vec<Vec<i64>>, Vec<Vec<i64>>>| -> Vec<Vec<Vec<i64>>> {
        let mut p: Vec<Vec<Vec<i64>>> = m.values().cloned().collect();
        p.sort();
        p
    };
    let agree = mismatches.is_empty() && partition(&by_min) == partition(&by_cell);
    Ok(LtFanCheck {
        t,
        window: window.max(0),
        betas_checked: betas.len(),
        voronoi_class_count: by_cell.len(),
        classes: by_min
            .into_iter()
            .map(|(minimizers, betas)| LtClass { minimizers, betas })
            .collect(),
        agree,
        mismatches,
        disclaimer: CLASS_DISCLAIMER,
    })
}
