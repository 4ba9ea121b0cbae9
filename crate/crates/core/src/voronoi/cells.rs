use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{check_len, QuadraticForm, VoronoiError, MAX_VERTEX_RANK};
use crate::lattice::rational::{dot, floor_sqrt, fmt_rat, rat, to_rat_vec, Rat};
use crate::lattice::RatMatrix;

/// All `x ∈ Z^n` with `Q(x − c, x − c) ≤ r2`, in lexicographic order.
///
/// The box comes from `(x_i − c_i)² ≤ Q(x−c, x−c)·(Q⁻¹)_ii`.
pub fn lattice_points_in_ellipsoid(q: &QuadraticForm, c: &[Rat], r2: &Rat) -> Vec<Vec<i64>> {
    if *r2 < rat(0) {
        return Vec::new();
    }
    let inv = q.dual_gram();
    let ranges: Vec<(i64, i64)> = (0..q.rank())
        .map(|i| {
            let s = rat(floor_sqrt(&(r2 * inv.get(i, i))) + 1);
            (
                (c[i] - s).floor().to_integer() as i64,
                (c[i] + s).ceil().to_integer() as i64,
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let d: Vec<Rat> = x.iter().zip(c).map(|(a, b)| rat(*a as i128) - b).collect();
        if q.norm(&d) <= *r2 {
            out.push(x.clone());
        }
        // odometer, last coordinate fastest
        let mut k = x.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < ranges[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = ranges[k].0;
        }
    }
}

/// Squared `Q`-distance from `p` to `V_T` and the lattice points attaining it.
pub fn closest_points(q: &QuadraticForm, p: &[Rat]) -> (Rat, Vec<Vec<i64>>) {
    let s0: Vec<Rat> = p.iter().map(|x| x.round()).collect();
    let diff = |s: &[Rat]| -> Vec<Rat> { s.iter().zip(p).map(|(a, b)| a - b).collect() };
    let d0 = q.norm(&diff(&s0));
    let cands = lattice_points_in_ellipsoid(q, p, &d0);
    let dists: Vec<Rat> = cands
        .iter()
        .map(|s| q.norm(&diff(&to_rat_vec(s))))
        .collect();
    let best = dists
        .iter()
        .min()
        .copied()
        .expect("the rounding of p is a candidate");
    let pts = cands
        .into_iter()
        .zip(dists)
        .filter(|(_, d)| *d == best)
        .map(|(s, _)| s)
        .collect();
    (best, pts)
}

/// Voronoi-relevant vectors: `v` is relevant iff `±v` are the only shortest
/// vectors of the coset `v + 2·Z^n`.
///
/// Every nonzero coset has a 0/1 representative, so its minimum is at most
/// the largest `Q(c, c)` over 0/1 vectors `c`; the search ball uses the
/// larger of that and `4·max Q_ii`.
pub fn relevant_vectors(q: &QuadraticForm) -> Vec<Vec<i64>> {
    let n = q.rank();
    let mut bound = (0..n).map(|i| q.gram().get(i, i)).max().expect("rank ≥ 1") * rat(4);
    for mask in 1u64..1 << n {
        let c: Vec<i64> = (0..n).map(|b| (mask >> b & 1) as i64).collect();
        bound = bound.max(q.eval_int(&c, &c));
    }
    let origin = vec![rat(0); n];
    let mut cosets: BTreeMap<Vec<i64>, (Rat, Vec<Vec<i64>>)> = BTreeMap::new();
    for v in lattice_points_in_ellipsoid(q, &origin, &bound) {
        let key: Vec<i64> = v.iter().map(|x| x.rem_euclid(2)).collect();
        if key.iter().all(|&x| x == 0) {
            continue;
        }
        let norm = q.eval_int(&v, &v);
        let e = cosets.entry(key).or_insert((norm, Vec::new()));
        match norm.cmp(&e.0) {
            Ordering::Less => *e = (norm, vec![v]),
            Ordering::Equal => e.1.push(v),
            Ordering::Greater => {}
        }
    }
    let mut out: Vec<Vec<i64>> = cosets
        .into_values()
        .filter(|(_, vs)| vs.len() == 2)
        .flat_map(|(_, vs)| vs)
        .collect();
    out.sort();
    out
}

/// The half-space `Q(x, v) ≤ rhs` bounding a cell against its neighbour
/// `center + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiFacet {
    pub vector: Vec<i64>,
    /// `Q(v, ·)` in dual coordinates.
    pub normal: Vec<Rat>,
    pub rhs: Rat,
}

impl VoronoiFacet {
    pub fn slack(&self, x: &[Rat]) -> Rat {
        self.rhs - dot(&self.normal, x)
    }
}

/// `C_s = {x : Q(x−s, x−s) ≤ Q(x−s', x−s') for all s' ∈ V_T}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiCell {
    pub center: Vec<i64>,
    pub facets: Vec<VoronoiFacet>,
    /// Computed for rank ≤ 3; in angular order in rank 2.
    pub vertices: Option<Vec<Vec<Rat>>>,
}

impl VoronoiCell {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.slack(x) >= rat(0))
    }

    pub fn interior_contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.slack(x) > rat(0))
    }
}

impl Serialize for VoronoiCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>();
        let facets: Vec<(Vec<i64>, String)> = self
            .facets
            .iter()
            .map(|f| (f.vector.clone(), fmt_rat(&f.rhs)))
            .collect();
        let mut st = s.serialize_struct("VoronoiCell", 3)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("facets", &facets)?;
        let verts: Option<Vec<Vec<String>>> = self
            .vertices
            .as_ref()
            .map(|vs| vs.iter().map(|v| strs(v)).collect());
        st.serialize_field("vertices", &verts)?;
        st.end()
    }
}

pub fn voronoi_cell(q: &QuadraticForm, center: &[i64]) -> Result<VoronoiCell, VoronoiError> {
    check_len(q, center.len())?;
    Ok(cell_from_relevant(q, &relevant_vectors(q), center))
}

pub(crate) fn cell_from_relevant(
    q: &QuadraticForm,
    relevant: &[Vec<i64>],
    center: &[i64],
) -> VoronoiCell {
    let c = to_rat_vec(center);
    let facets: Vec<VoronoiFacet> = relevant
        .iter()
        .map(|v| {
            let vr = to_rat_vec(v);
            let normal = q.apply(&vr);
            let rhs = q.norm(&vr) / rat(2) + dot(&normal, &c);
            VoronoiFacet {
                vector: v.clone(),
                normal,
                rhs,
            }
        })
        .collect();
    let mut cell = VoronoiCell {
        center: center.to_vec(),
        facets,
        vertices: None,
    };
    if q.rank() <= MAX_VERTEX_RANK {
        cell.vertices = Some(cell_vertices(&cell));
    }
    cell
}

fn cell_vertices(cell: &VoronoiCell) -> Vec<Vec<Rat>> {
    let n = cell.center.len();
    let m = cell.facets.len();
    let mut found: Vec<Vec<Rat>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let a = RatMatrix::from_rows(
            &idx.iter()
                .map(|&i| cell.facets[i].normal.clone())
                .collect::<Vec<_>>(),
        );
        let b: Vec<Rat> = idx.iter().map(|&i| cell.facets[i].rhs).collect();
        if a.rank() == n {
            if let Some(x) = a.solve(&b) {
                if cell.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        // next n-subset of 0..m
        let mut k = n;
        loop {
            if k == 0 {
                if n == 2 {
                    sort_angular(&mut found, &to_rat_vec(&cell.center));
                } else {
                    found.sort();
                }
                return found;
            }
            k -= 1;
            if idx[k] < m - n + k {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Counterclockwise around `c`, starting from the positive first axis.
fn sort_angular(pts: &mut [Vec<Rat>], c: &[Rat]) {
    let zero = rat(0);
    let half = |d: &[Rat]| -> u8 {
        if d[1] > zero || (d[1] == zero && d[0] > zero) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|a, b| {
        let da = [a[0] - c[0], a[1] - c[1]];
        let db = [b[0] - c[0], b[1] - c[1]];
        half(&da).cmp(&half(&db)).then_with(|| {
            let cross = da[0] * db[1] - da[1] * db[0];
            zero.cmp(&cross)
        })
    });
}

/// `P(p)`: the lattice points nearest to `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelaunayCell {
    #[serde(with = "crate::lattice::serde_rat::vec")]
    pub witness: Vec<Rat>,
    /// `r(p)²`.
    #[serde(with = "crate::lattice::serde_rat")]
    pub radius_sq: Rat,
    pub vertices: Vec<Vec<i64>>,
}

pub fn delaunay_cell(q: &QuadraticForm, p: &[Rat]) -> Result<DelaunayCell, VoronoiError> {
    check_len(q, p.len())?;
    let (radius_sq, vertices) = closest_points(q, p);
    Ok(DelaunayCell {
        witness: p.to_vec(),
        radius_sq,
        vertices,
    })
}
