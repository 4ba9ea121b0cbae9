use proptest::prelude::*;

use super::*;
use crate::lattice::rational::{frac, rat, to_rat_vec, Rat};
use crate::lattice::{Cone, Fan, FiniteAbelianGroup};
use crate::root::RootDatum;

fn q(rows: &[Vec<i64>]) -> QuadraticForm {
    QuadraticForm::from_rows(rows).unwrap()
}

fn sl2() -> QuadraticForm {
    q(&[vec![2]])
}

fn a2() -> QuadraticForm {
    q(&[vec![2, -1], vec![-1, 2]])
}

fn norm_to(q: &QuadraticForm, p: &[Rat], s: &[i64]) -> Rat {
    let d: Vec<Rat> = s.iter().zip(p).map(|(a, b)| rat(*a as i128) - b).collect();
    q.norm(&d)
}

fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

// plain box search around round(p), sized in floating point
fn brute_nearest(q: &QuadraticForm, p: &[Rat]) -> (Rat, Vec<Vec<i64>>) {
    let n = q.rank();
    let inv = q.dual_gram();
    let diag_sum: f64 = (0..n)
        .map(|i| {
            let g = q.gram().get(i, i);
            *g.numer() as f64 / *g.denom() as f64
        })
        .sum();
    let radius = (0..n)
        .map(|i| {
            let v = inv.get(i, i);
            (diag_sum * *v.numer() as f64 / *v.denom() as f64).sqrt()
        })
        .fold(0.0, f64::max)
        .ceil() as i64
        + 1;
    let base: Vec<i64> = p.iter().map(|x| x.round().to_integer() as i64).collect();
    let mut best: Option<Rat> = None;
    let mut pts = Vec::new();
    for off in grid(n, -radius, radius) {
        let s: Vec<i64> = base.iter().zip(&off).map(|(a, b)| a + b).collect();
        let d = norm_to(q, p, &s);
        match best {
            Some(b) if d > b => {}
            Some(b) if d == b => pts.push(s),
            _ => {
                best = Some(d);
                pts = vec![s];
            }
        }
    }
    pts.sort();
    (best.unwrap(), pts)
}

fn pd_gram(max_rank: usize, bound: i64) -> impl Strategy<Value = QuadraticForm> {
    (1..=max_rank)
        .prop_flat_map(move |n| {
            prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |e| (n, e))
        })
        .prop_filter_map("positive definite", |(n, e)| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    rows[i][j] = e[k];
                    rows[j][i] = e[k];
                    k += 1;
                }
            }
            QuadraticForm::from_rows(&rows).ok()
        })
}

#[test]
fn z_q_examples() {
    assert_eq!(z_q(&sl2()).unwrap(), FiniteAbelianGroup::cyclic(2));
    assert!(z_q(&q(&[vec![1]])).unwrap().is_trivial());
    let basic = RootDatum::parse("A2", "sc").unwrap().basic_form().unwrap();
    assert_eq!(z_q(&basic).unwrap(), FiniteAbelianGroup::cyclic(3));
    let half =
        QuadraticForm::new(crate::lattice::RatMatrix::from_rows(&[vec![frac(1, 2)]])).unwrap();
    assert_eq!(z_q(&half), Err(VoronoiError::NotIntegral));
}

// For a non-simply-laced type every invariant form is a multiple of one
// primitive form, so the cokernel order is a square times a constant.
#[test]
fn z_q_of_basic_form_non_simply_laced() {
    let b2 = RootDatum::parse("B2", "sc").unwrap().basic_form().unwrap();
    assert_eq!(z_q(&b2).unwrap().invariant_factors(), &[2, 2]);
    let g2 = RootDatum::parse("G2", "sc").unwrap().basic_form().unwrap();
    assert_eq!(z_q(&g2).unwrap(), FiniteAbelianGroup::cyclic(3));
}

#[test]
fn cocycle_examples() {
    let c = cocycle_eval(&sl2(), &[0], &[rat(5)], rat(3)).unwrap();
    assert_eq!(
        (c.character_part, c.central_exponent, c.value),
        (rat(0), rat(0), rat(0))
    );
    // Gram [2], η = H = 1: Q(η, H) = 2, Q(η, η)/2 = 1
    let c = cocycle_eval(&sl2(), &[1], &[rat(1)], rat(1)).unwrap();
    assert_eq!(c.character_part, rat(2));
    assert_eq!(c.central_exponent, rat(1));
    assert_eq!(c.value, rat(3));
    assert_eq!(c.weight, vec![rat(2)]);
    // odd diagonal gives a half-integral exponent
    let c = cocycle_eval(&q(&[vec![3]]), &[1], &[rat(0)], rat(0)).unwrap();
    assert_eq!(c.central_exponent, frac(3, 2));
    assert!(cocycle_eval(&sl2(), &[1, 0], &[rat(0)], rat(0)).is_err());
}

#[test]
fn lt_weight_action_examples() {
    let form = sl2();
    let zero = LtWeight::new(&form, &[0]).unwrap();
    let id = LoopTorusElement {
        rotation: false,
        torus_log: vec![frac(1, 3)],
        eta: vec![0],
    };
    let rec = lt_weight_action(&form, &id, &LtWeight::new(&form, &[4]).unwrap()).unwrap();
    assert_eq!(rec.weight.mu, vec![4]);
    assert_eq!(rec.torus_exponent, frac(4, 3));
    assert_eq!(rec.rotation_exponent, None);
    let g = LoopTorusElement {
        rotation: true,
        torus_log: vec![rat(0)],
        eta: vec![1],
    };
    let rec = lt_weight_action(&form, &g, &zero).unwrap();
    assert_eq!(rec.weight.mu, vec![2]);
    assert_eq!(rec.weight.preimage, vec![1]);
    assert_eq!(rec.rotation_exponent, Some(rat(1)));
    assert_eq!(
        LtWeight::new(&form, &[1]),
        Err(VoronoiError::OutsideImage(vec![1]))
    );
    assert_eq!(LtWeight::image_of(&form, &[3]).unwrap().mu, vec![6]);
}

#[test]
fn exponent_f_examples() {
    let form = sl2();
    for eta in -3..=3 {
        // 1-D oracle: t·eta² + 2·β·eta for Gram [2]
        let expect = |t: i64, b: i64| rat((t * eta * eta + 2 * b * eta) as i128);
        assert_eq!(exponent_f(&form, 1, &[1], &[eta]).unwrap(), expect(1, 1));
        assert_eq!(exponent_f(&form, 2, &[1], &[eta]).unwrap(), expect(2, 1));
        assert_eq!(exponent_f(&form, 3, &[0], &[eta]).unwrap(), expect(3, 0));
    }
    assert_eq!(
        exponent_f(&form, 0, &[1], &[0]),
        Err(VoronoiError::NonPositiveLevel(0))
    );
    assert_eq!(
        minimizer_set(&form, -1, &[1]),
        Err(VoronoiError::NonPositiveLevel(-1))
    );
}

#[test]
fn minimizer_examples() {
    let form = sl2();
    assert_eq!(minimizer_set(&form, 1, &[0]).unwrap(), vec![vec![0]]);
    assert_eq!(minimizer_set(&form, 1, &[1]).unwrap(), vec![vec![-1]]);
    assert_eq!(
        minimizer_set(&form, 2, &[1]).unwrap(),
        vec![vec![-1], vec![0]]
    );
    assert_eq!(
        minimizer_set(&form, 2, &[-1]).unwrap(),
        vec![vec![0], vec![1]]
    );
    assert_eq!(minimizer_set(&a2(), 3, &[0, 0]).unwrap(), vec![vec![0, 0]]);
}

#[test]
fn sl2_cells() {
    let form = sl2();
    assert_eq!(relevant_vectors(&form), vec![vec![-1], vec![1]]);
    for n in -10..=10i64 {
        let cell = voronoi_cell(&form, &[n]).unwrap();
        let lo = rat(n as i128) - frac(1, 2);
        let hi = rat(n as i128) + frac(1, 2);
        assert_eq!(cell.vertices, Some(vec![vec![lo], vec![hi]]));
        assert!(cell.contains(&[lo]) && cell.contains(&[hi]));
        assert!(!cell.contains(&[hi + frac(1, 100)]));
        assert!(cell.interior_contains(&[rat(n as i128)]));
    }
}

#[test]
fn square_and_hexagonal_cells() {
    let sq = q(&[vec![2, 0], vec![0, 2]]);
    assert_eq!(
        relevant_vectors(&sq),
        vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
    );
    let cell = voronoi_cell(&sq, &[0, 0]).unwrap();
    let h = frac(1, 2);
    let mut v = cell.vertices.clone().unwrap();
    v.sort();
    assert_eq!(v, vec![vec![-h, -h], vec![-h, h], vec![h, -h], vec![h, h]]);

    let hex = voronoi_cell(&a2(), &[0, 0]).unwrap();
    assert_eq!(hex.facets.len(), 6);
    let mut rel = relevant_vectors(&a2());
    rel.sort();
    let mut roots = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    roots.extend(
        roots
            .clone()
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    roots.sort();
    assert_eq!(rel, roots);
    let verts = hex.vertices.unwrap();
    assert_eq!(verts.len(), 6);
    for v in &verts {
        let (_, near) = brute_nearest(&a2(), v);
        assert_eq!(near.len(), 3, "{v:?}");
    }
    assert!(verts.contains(&vec![frac(2, 3), frac(1, 3)]));
}

#[test]
fn delaunay_examples() {
    let form = sl2();
    let d = delaunay_cell(&form, &[rat(3)]).unwrap();
    assert_eq!((d.radius_sq, d.vertices), (rat(0), vec![vec![3]]));
    let d = delaunay_cell(&form, &[frac(1, 2)]).unwrap();
    assert_eq!(d.vertices, vec![vec![0], vec![1]]);
    assert_eq!(d.radius_sq, frac(1, 2));
    let sq = q(&[vec![2, 0], vec![0, 2]]);
    let d = delaunay_cell(&sq, &[frac(1, 2), frac(1, 2)]).unwrap();
    assert_eq!(
        d.vertices,
        vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
    );
}

#[test]
fn sl2_lt_fan() {
    let f = lt_fan(&sl2(), 3).unwrap();
    assert_eq!(f.height, "last");
    let rays = f.fan.rays();
    let expect: Vec<Vec<i64>> = (-4..=3).map(|n| vec![2 * n + 1, 2]).collect();
    let mut sorted = rays.clone();
    sorted.sort();
    assert_eq!(sorted, expect);
    assert!(rays.iter().all(|r| r[1] > 0));
    assert!(f.fan.support_contains_int(&[0, 1]));
    assert!(!f.fan.support_contains_int(&[1, 0]));
    assert!(!f.fan.support_contains_int(&[-1, 0]));
    // the checked constructor accepts the same cones
    let maximal: Vec<Cone> = f.fan.maximal_cones().into_iter().cloned().collect();
    assert!(Fan::new(2, maximal).is_ok());
}

#[test]
fn rank_two_lt_fan_is_a_fan() {
    for form in [
        a2(),
        q(&[vec![2, 0], vec![0, 2]]),
        q(&[vec![4, -2], vec![-2, 2]]),
    ] {
        let f = lt_fan(&form, 1).unwrap();
        let maximal: Vec<Cone> = f.fan.maximal_cones().into_iter().cloned().collect();
        assert_eq!(maximal.len(), 9);
        assert!(Fan::new(3, maximal).is_ok());
        assert!(f.fan.rays().iter().all(|r| r[2] > 0));
    }
    assert!(matches!(
        lt_fan(
            &q(&[
                vec![2, 0, 0, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 2, 0],
                vec![0, 0, 0, 2]
            ]),
            1
        ),
        Err(VoronoiError::RankTooLarge { rank: 4, .. })
    ));
}

// Reflections preserve the basic form, so they permute relevant vectors
// and fix the cell of the origin.
#[test]
fn basic_form_cells_are_weyl_invariant() {
    for kind in ["A2", "B2", "G2", "A3"] {
        let rd = RootDatum::parse(kind, "sc").unwrap();
        let form = rd.basic_form().unwrap();
        let rel = relevant_vectors(&form);
        let cell = voronoi_cell(&form, &vec![0; rd.rank()]).unwrap();
        let mut verts = cell.vertices.clone().unwrap();
        verts.sort();
        for i in 0..rd.rank() {
            let s = rd.reflection_on_coweights(i);
            let mut img: Vec<Vec<i64>> = rel.iter().map(|v| s.mul_vec(v)).collect();
            img.sort();
            assert_eq!(img, rel, "{kind} s{i}");
            let sr = crate::lattice::RatMatrix::from_int(&s);
            let mut vimg: Vec<Vec<Rat>> = verts.iter().map(|v| sr.mul_vec(v)).collect();
            vimg.sort();
            assert_eq!(vimg, verts, "{kind} s{i}");
        }
    }
}

#[test]
fn minimizer_check_sl2() {
    let form = sl2();
    let c = lt_fan_vs_minimizers_check(&form, 1, 5).unwrap();
    assert!(c.agree);
    assert_eq!(c.betas_checked, 11);
    assert!(c.classes.iter().all(|cl| cl.betas.len() == 1));
    let c = lt_fan_vs_minimizers_check(&form, 2, 5).unwrap();
    assert!(c.agree);
    let find = |b: i64| {
        c.classes
            .iter()
            .find(|cl| cl.betas.contains(&vec![b]))
            .unwrap()
    };
    assert_eq!(find(1).minimizers, vec![vec![-1], vec![0]]);
    assert_eq!(find(-1).minimizers, vec![vec![0], vec![1]]);
    assert_eq!(find(0).betas, vec![vec![0]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimizers_are_nearest_points(form in pd_gram(2, 4), t in 1i64..=3, b0 in -5i64..=5, b1 in -5i64..=5) {
        let beta: Vec<i64> = [b0, b1][..form.rank()].to_vec();
        let mins = minimizer_set(&form, t, &beta).unwrap();
        let c: Vec<Rat> = beta.iter().map(|&b| rat(-(b as i128)) / rat(t as i128)).collect();
        prop_assert_eq!(&mins, &brute_nearest(&form, &c).1);
        // and they minimize f over a plain box
        let best = mins.iter().map(|m| exponent_f(&form, t, &beta, m).unwrap()).next().unwrap();
        for eta in grid(form.rank(), -8, 8) {
            prop_assert!(exponent_f(&form, t, &beta, &eta).unwrap() >= best);
        }
    }

    #[test]
    fn relevant_vectors_match_midpoint_criterion(form in pd_gram(3, 6)) {
        let rel = relevant_vectors(&form);
        prop_assert!(rel.len() >= 2 * form.rank());
        prop_assert!(rel.len() <= 2 * ((1 << form.rank()) - 1));
        for v in &rel {
            let mid: Vec<Rat> = v.iter().map(|&x| frac(x as i128, 2)).collect();
            let (_, near) = brute_nearest(&form, &mid);
            let zero = vec![0; form.rank()];
            prop_assert_eq!(near.len(), 2);
            prop_assert!(near.contains(&zero) && near.contains(v));
        }
    }

    #[test]
    fn cells_tile_by_nearest_point(
        form in pd_gram(3, 6),
        num in prop::collection::vec(-30i128..=30, 3),
        den in 1i128..=7,
    ) {
        let n = form.rank();
        let p: Vec<Rat> = num[..n].iter().map(|&x| Rat::new(x, den)).collect();
        let (_, near) = brute_nearest(&form, &p);
        let base: Vec<i64> = p.iter().map(|x| x.round().to_integer() as i64).collect();
        let rel = relevant_vectors(&form);
        let mut hits = Vec::new();
        for off in grid(n, -2, 2) {
            let s: Vec<i64> = base.iter().zip(&off).map(|(a, b)| a + b).collect();
            let cell = super::cells::cell_from_relevant(&form, &rel, &s);
            if cell.contains(&p) {
                hits.push(s);
            }
        }
        for s in &near {
            prop_assert!(voronoi_cell(&form, s).unwrap().contains(&p));
        }
        // every hit inside the small box is a nearest point
        prop_assert!(hits.iter().all(|s| near.contains(s)));
        let dc = delaunay_cell(&form, &p).unwrap();
        prop_assert_eq!(dc.vertices, near);
    }

    #[test]
    fn cell_center_is_interior(form in pd_gram(3, 6), c in prop::collection::vec(-4i64..=4, 3)) {
        let center = &c[..form.rank()];
        let cell = voronoi_cell(&form, center).unwrap();
        prop_assert!(cell.interior_contains(&to_rat_vec(center)));
        for v in cell.vertices.clone().unwrap() {
            prop_assert!(cell.contains(&v));
            let (_, near) = brute_nearest(&form, &v);
            prop_assert!(near.len() > form.rank());
            prop_assert!(near.contains(&center.to_vec()));
        }
    }

    #[test]
    fn commutator_pairing_is_symmetric_bilinear(
        form in pd_gram(3, 6),
        a in prop::collection::vec(-5i64..=5, 3),
        b in prop::collection::vec(-5i64..=5, 3),
        c in prop::collection::vec(-5i64..=5, 3),
    ) {
        let n = form.rank();
        let (a, b, c) = (&a[..n], &b[..n], &c[..n]);
        let pair = |x: &[i64], y: &[i64]| {
            cocycle_eval(&form, x, &to_rat_vec(y), rat(0)).unwrap().character_part
        };
        prop_assert_eq!(pair(a, b), pair(b, a));
        let bc: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
        prop_assert_eq!(pair(a, &bc), pair(a, b) + pair(a, c));
    }

    #[test]
    fn translation_action_is_additive(
        form in pd_gram(2, 4),
        e1 in prop::collection::vec(-5i64..=5, 2),
        e2 in prop::collection::vec(-5i64..=5, 2),
        a in prop::collection::vec(-5i64..=5, 2),
    ) {
        let n = form.rank();
        let Some(mu) = LtWeight::image_of(&form, &a[..n]).ok() else { return Ok(()) };
        let g = |e: &[i64]| LoopTorusElement { rotation: true, torus_log: vec![rat(0); n], eta: e.to_vec() };
        let step = lt_weight_action(&form, &g(&e1[..n]), &mu).unwrap();
        let two = lt_weight_action(&form, &g(&e2[..n]), &step.weight).unwrap();
        let sum: Vec<i64> = e1[..n].iter().zip(&e2[..n]).map(|(x, y)| x + y).collect();
        let one = lt_weight_action(&form, &g(&sum), &mu).unwrap();
        prop_assert_eq!(&two.weight, &one.weight);
        prop_assert_eq!(two.rotation_exponent, one.rotation_exponent);
        // transport identity for the rotation exponent
        let p = to_rat_vec(&one.weight.preimage);
        prop_assert_eq!(one.rotation_exponent.unwrap(), form.norm(&p) / rat(2));
    }
}
