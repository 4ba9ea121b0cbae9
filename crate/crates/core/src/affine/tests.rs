use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::lattice::rational::frac;
use crate::root::{CartanType, Family};

fn all_types() -> Vec<CartanType> {
    let mut out = Vec::new();
    for (f, ranks) in [
        (Family::A, 1..=5),
        (Family::B, 2..=5),
        (Family::C, 2..=5),
        (Family::D, 4..=6),
        (Family::E, 6..=8),
        (Family::F, 4..=4),
        (Family::G, 2..=2),
    ] {
        for r in ranks {
            out.push(CartanType::new(f, r).unwrap());
        }
    }
    out
}

fn so5() -> AffineRootDatum {
    AffineRootDatum::parse("B2", "ad").unwrap()
}

fn words(xs: &[AffineWeylElement]) -> Vec<Vec<usize>> {
    xs.iter().map(|x| x.word.clone()).collect()
}

#[test]
fn a1_simple_affine_roots() {
    let ard = AffineRootDatum::parse("A1", "sc").unwrap();
    let roots = ard.affine_simple_roots();
    assert_eq!(roots[0], AffineCharacter::new(rat(1), vec![-2], rat(0)));
    assert_eq!(roots[1], AffineCharacter::new(rat(0), vec![2], rat(0)));
    assert!(roots.iter().all(|c| c.h == rat(0)));
}

#[test]
fn b2_affine_node_uses_highest_root() {
    let ard = so5();
    assert_eq!(ard.theta_coords(), &[1, 2]);
    assert_eq!(
        ard.affine_cartan(),
        &IntMatrix::from_rows(&[vec![2, 0, -1], vec![0, 2, -1], vec![-2, -2, 2]])
    );
    let a0 = &ard.affine_simple_roots()[0];
    assert_eq!(a0.n, rat(1));
    assert_eq!(
        a0.lambda,
        ard.theta().iter().map(|x| -x).collect::<Vec<_>>()
    );
}

#[test]
fn affine_cartan_has_null_root_kernel() {
    // δ = α₀ + θ pairs to zero with every coroot
    for t in all_types() {
        let ard = AffineRootDatum::parse(&t.to_string(), "sc").unwrap();
        let a = ard.affine_cartan();
        let mut delta = vec![1];
        delta.extend_from_slice(ard.theta_coords());
        assert!(a.mul_vec(&delta).iter().all(|&x| x == 0), "{t}");
        assert_eq!(RatMatrix::from_int(a).rank(), t.rank, "{t}");
    }
}

#[test]
fn deleting_any_node_leaves_finite_type() {
    for t in all_types() {
        let ard = AffineRootDatum::parse(&t.to_string(), "sc").unwrap();
        for j in 0..=t.rank {
            let levi = ard.parahoric_levi_type(j).unwrap();
            assert_eq!(levi.rank(), t.rank, "{t} node {j}");
        }
        assert_eq!(
            ard.parahoric_levi_type(0).unwrap(),
            classify(&t.cartan_matrix()).unwrap()
        );
    }
}

#[test]
fn a1_alcove_is_half_coroot_segment() {
    let ard = AffineRootDatum::parse("A1", "sc").unwrap();
    let verts = ard.alcove_vertices();
    assert_eq!(verts, vec![(0, vec![rat(0)]), (1, vec![frac(1, 2)])]);
    let alc = ard.alcove();
    assert!(alc.contains(&[frac(1, 4)]));
    assert!(!alc.contains(&[frac(3, 4)]));
}

#[test]
fn so5_alcove_walls_in_coroot_basis() {
    let lines = so5().alcove().lines_in_coroot_basis().unwrap();
    let eqs: BTreeSet<String> = lines.iter().map(|l| l.equation.clone()).collect();
    let expected: BTreeSet<String> = ["y = x", "y = x/2", "y = 1/2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(eqs, expected);
    let pairs: BTreeSet<(Option<Rat>, Rat)> =
        lines.iter().map(|l| (l.slope, l.intercept)).collect();
    assert!(pairs.contains(&(Some(rat(1)), rat(0))));
    assert!(pairs.contains(&(Some(frac(1, 2)), rat(0))));
    assert!(pairs.contains(&(Some(rat(0)), frac(1, 2))));
}

#[test]
fn so5_vertices_are_pairwise_wall_intersections() {
    // η₁ lies on y = x/2 and y = 1/2, η₂ on y = x and y = 1/2
    let alc = so5().alcove();
    let got: Vec<(usize, Vec<Rat>)> = alc
        .vertices
        .iter()
        .map(|v| (v.node, v.coroot_coords.clone()))
        .collect();
    assert_eq!(
        got,
        vec![
            (0, vec![rat(0), rat(0)]),
            (1, vec![rat(1), frac(1, 2)]),
            (2, vec![frac(1, 2), frac(1, 2)]),
        ]
    );
}

#[test]
fn vertices_are_fundamental_coweights_over_marks() {
    for t in all_types() {
        for flavor in ["sc", "ad"] {
            let ard = AffineRootDatum::parse(&t.to_string(), flavor).unwrap();
            let alc = ard.alcove();
            let cw = ard.base().fundamental_coweights();
            for v in &alc.vertices {
                for f in &alc.facets {
                    let val = f.eval(&v.coords);
                    if f.node == v.node {
                        assert!(val > rat(0));
                    } else {
                        assert_eq!(val, rat(0));
                    }
                }
                if v.node == 0 {
                    assert!(v.coords.iter().all(|x| *x == rat(0)));
                } else {
                    let c = rat(ard.theta_coords()[v.node - 1] as i128);
                    let expect: Vec<Rat> = cw[v.node - 1].iter().map(|x| x / c).collect();
                    assert_eq!(v.coords, expect, "{t} {flavor}");
                }
            }
        }
    }
}

#[test]
fn action_examples() {
    let ard = AffineRootDatum::parse("A1", "sc").unwrap();
    let chi = AffineCharacter::new(rat(0), vec![0], rat(1));
    // Q(α∨, α∨) = 2 and Q(α∨, ·) = α
    assert_eq!(
        ard.affine_weyl_action(&[1], &chi).unwrap(),
        AffineCharacter::new(rat(1), vec![-2], rat(1))
    );
    let chi0 = AffineCharacter::new(rat(3), vec![4], rat(0));
    assert_eq!(
        ard.affine_weyl_action(&[2], &chi0).unwrap(),
        AffineCharacter::new(rat(3 - 8), vec![4], rat(0))
    );
    assert_eq!(ard.affine_weyl_action(&[0], &chi).unwrap(), chi);
}

fn random_character(rng: &mut ChaCha8Rng, r: usize, h: i64) -> AffineCharacter {
    AffineCharacter::new(
        rat(rng.gen_range(-5..=5)),
        (0..r).map(|_| rng.gen_range(-6..=6)).collect(),
        rat(h as i128),
    )
}

#[test]
fn action_is_additive_and_keeps_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in ["A1", "A2", "B2", "G2"] {
        let ard = AffineRootDatum::parse(kind, "sc").unwrap();
        let r = ard.rank();
        for _ in 0..100 {
            let h = rng.gen_range(-2..=2);
            let chi = random_character(&mut rng, r, h);
            let e1: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
            let e2: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
            let sum: Vec<i64> = e1.iter().zip(&e2).map(|(a, b)| a + b).collect();
            let step = ard.affine_weyl_action(&e2, &chi).unwrap();
            let twice = ard.affine_weyl_action(&e1, &step).unwrap();
            assert_eq!(twice, ard.affine_weyl_action(&sum, &chi).unwrap());
            assert_eq!(step.h, chi.h);
        }
    }
}

#[test]
fn action_preserves_shifted_norm() {
    // 2n − Q*(λ, λ) with Q* dual to h·Q
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for kind in ["A1", "A2", "B2", "G2"] {
        let ard = AffineRootDatum::parse(kind, "sc").unwrap();
        let q = ard.base().basic_form().unwrap();
        let r = ard.rank();
        for h in [1, 2] {
            let dual = q.scaled(rat(h as i128)).dual_gram();
            let inv = |c: &AffineCharacter| {
                let l = to_rat_vec(&c.lambda);
                rat(2) * c.n - dual.bilinear(&l, &l)
            };
            for _ in 0..50 {
                let chi = random_character(&mut rng, r, h);
                let eta: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
                let out = ard.affine_weyl_action(&eta, &chi).unwrap();
                assert_eq!(inv(&out), inv(&chi), "{kind} h={h}");
            }
        }
    }
}

#[test]
fn a1_words_up_to_length_two() {
    let ard = AffineRootDatum::parse("A1", "sc").unwrap();
    let xs = ard.affine_weyl_enumerate(2, DEFAULT_AFFINE_CAP).unwrap();
    assert_eq!(
        words(&xs),
        vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]]
    );
    assert_eq!(
        words(&ard.affine_weyl_enumerate(0, DEFAULT_AFFINE_CAP).unwrap()),
        vec![Vec::<usize>::new()]
    );
}

/// Coefficients of `∏ (1 − q^{m+1}) / ((1 − q)(1 − q^m))` over the exponents
/// `m`, the length generating function of the affine Weyl group.
fn bott_series(exponents: &[usize], n: usize) -> Vec<i64> {
    let mut series = vec![0i64; n + 1];
    series[0] = 1;
    for &m in exponents {
        // multiply by 1 + q + … + q^m
        let mut next = vec![0i64; n + 1];
        for (i, &c) in series.iter().enumerate() {
            for k in 0..=m {
                if i + k <= n {
                    next[i + k] += c;
                }
            }
        }
        // divide by 1 − q^m
        for i in m..=n {
            next[i] += next[i - m];
        }
        series = next;
    }
    series
}

#[test]
fn length_counts_match_poincare_series() {
    let cases: [(&str, Vec<usize>, usize); 6] = [
        ("A1", vec![1], 8),
        ("A2", vec![1, 2], 6),
        ("B2", vec![1, 3], 6),
        ("G2", vec![1, 5], 7),
        ("A3", vec![1, 2, 3], 4),
        ("B3", vec![1, 3, 5], 4),
    ];
    for (kind, exps, bound) in cases {
        let ard = AffineRootDatum::parse(kind, "sc").unwrap();
        let xs = ard
            .affine_weyl_enumerate(bound, DEFAULT_AFFINE_CAP)
            .unwrap();
        let mut counts = vec![0i64; bound + 1];
        for x in &xs {
            counts[x.length] += 1;
            assert_eq!(x.length, x.word.len());
            assert_eq!(ard.inversion_length(x), x.length);
        }
        assert_eq!(counts, bott_series(&exps, bound), "{kind}");
    }
}

/// Independent model: affine reflections as homogeneous rational matrices.
fn homogeneous_generators(ard: &AffineRootDatum) -> Vec<RatMatrix> {
    let rd = ard.base();
    let r = rd.rank();
    let mut data: Vec<(Vec<i64>, Vec<i64>, i64)> = vec![(
        rd.highest_root().unwrap(),
        rd.coroot_in_lattice(&rd.highest_root_coords().unwrap()),
        1,
    )];
    for i in 0..r {
        data.push((
            rd.simple_roots()[i].clone(),
            rd.simple_coroots()[i].clone(),
            0,
        ));
    }
    data.iter()
        .map(|(a, c, k)| {
            let mut m = RatMatrix::identity(r + 1);
            for x in 0..r {
                for y in 0..r {
                    m.set(x, y, m.get(x, y) - rat((c[x] * a[y]) as i128));
                }
                m.set(x, r, rat((c[x] * k) as i128));
            }
            m
        })
        .collect()
}

#[test]
fn enumeration_matches_word_model() {
    for (kind, bound) in [("B2", 3), ("A2", 4), ("G2", 4)] {
        let ard = AffineRootDatum::parse(kind, "sc").unwrap();
        let gens = homogeneous_generators(&ard);
        let mut seen: HashSet<Vec<Vec<Rat>>> = HashSet::new();
        let mut frontier = vec![RatMatrix::identity(ard.rank() + 1)];
        seen.insert(frontier[0].to_rows());
        for _ in 0..bound {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let p = m.mul(g);
                    if seen.insert(p.to_rows()) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        let xs = ard
            .affine_weyl_enumerate(bound, DEFAULT_AFFINE_CAP)
            .unwrap();
        assert_eq!(xs.len(), seen.len(), "{kind}");
        // and each element acts like the product of its word
        let p = ard.alcove().barycenter();
        for x in &xs {
            let mut q = p.clone();
            for &g in x.word.iter().rev() {
                q = ard.reflect_point(g, &q);
            }
            assert_eq!(x.apply(&p), q);
        }
    }
}

#[test]
fn composition_law() {
    let ard = AffineRootDatum::parse("B2", "sc").unwrap();
    let xs = ard.affine_weyl_enumerate(3, DEFAULT_AFFINE_CAP).unwrap();
    let z = vec![frac(1, 7), frac(-2, 5)];
    for a in xs.iter().step_by(3) {
        for b in xs.iter().step_by(5) {
            let ab = a.compose(b, &ard);
            assert_eq!(ab.apply(&z), a.apply(&b.apply(&z)));
        }
    }
}

#[test]
fn coset_representatives_a1() {
    let ard = AffineRootDatum::parse("A1", "sc").unwrap();
    let left = ard
        .coset_representatives(&[1], CosetSide::Left, 2, DEFAULT_AFFINE_CAP)
        .unwrap();
    assert_eq!(words(&left), vec![vec![], vec![0], vec![1, 0]]);
    let right = ard
        .coset_representatives(&[1], CosetSide::Right, 2, DEFAULT_AFFINE_CAP)
        .unwrap();
    assert_eq!(words(&right), vec![vec![], vec![0], vec![0, 1]]);
    let all = ard.affine_weyl_enumerate(2, DEFAULT_AFFINE_CAP).unwrap();
    let none = ard
        .coset_representatives(&[], CosetSide::Left, 2, DEFAULT_AFFINE_CAP)
        .unwrap();
    assert_eq!(none, all);
    assert_eq!(
        ard.coset_representatives(&[0, 1], CosetSide::Left, 2, DEFAULT_AFFINE_CAP),
        Err(AffineError::FullNodeSet)
    );
}

#[test]
fn coset_representatives_are_minimal() {
    let ard = AffineRootDatum::parse("A2", "sc").unwrap();
    let bound = 4;
    for j in [vec![1], vec![0, 2], vec![1, 2]] {
        let reps = ard
            .coset_representatives(&j, CosetSide::Left, bound, DEFAULT_AFFINE_CAP)
            .unwrap();
        let wj = ard.enumerate_generated(&j, 10, DEFAULT_AFFINE_CAP).unwrap();
        let mut covered = HashSet::new();
        for rep in &reps {
            for w in &wj {
                let x = rep.compose(w, &ard);
                assert!(x.length >= rep.length);
                // different representatives give disjoint cosets
                assert!(covered.insert((x.linear.clone(), x.translation.clone())));
            }
        }
    }
}

#[test]
fn alcove_is_fundamental_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (kind, range, bound) in [("A1", 3, 8), ("A2", 1, 8), ("B2", 1, 8)] {
        let ard = AffineRootDatum::parse(kind, "sc").unwrap();
        let xs = ard
            .affine_weyl_enumerate(bound, DEFAULT_AFFINE_CAP)
            .unwrap();
        let alc = ard.alcove();
        let rd = ard.base();
        let mut tried = 0;
        while tried < 40 {
            let c: Vec<Rat> = (0..ard.rank())
                .map(|_| frac(rng.gen_range(-range * 11..=range * 11), 11))
                .collect();
            let zeta = rd.coweight_from_coroot_coords(&c);
            let generic = rd.positive_roots().iter().all(|a| {
                let v = dot(&to_rat_vec(a), &zeta);
                !v.is_integer()
            });
            if !generic {
                continue;
            }
            tried += 1;
            let hits = xs
                .iter()
                .filter(|x| alc.interior_contains(&x.apply(&zeta)))
                .count();
            assert_eq!(hits, 1, "{kind} {c:?}");
        }
    }
}

#[test]
fn so5_diagram() {
    let d = so5().affine_dynkin();
    assert_eq!(d.nodes, vec![0, 1, 2]);
    assert_eq!(
        d.bonds,
        vec![
            Bond {
                i: 0,
                j: 2,
                multiplicity: 2,
                arrow: Arrow::Forward
            },
            Bond {
                i: 1,
                j: 2,
                multiplicity: 2,
                arrow: Arrow::Forward
            },
        ]
    );
    assert_eq!(d.bond_strings(), vec!["0 => 2", "1 => 2"]);
    assert_eq!(d.automorphisms, vec![vec![0, 1, 2], vec![1, 0, 2]]);
    let json = serde_json::to_string(&d).unwrap();
    assert_eq!(
        json,
        r#"{"nodes":[0,1,2],"bonds":[[0,2,2,"->"],[1,2,2,"->"]],"automorphisms":[[0,1,2],[1,0,2]]}"#
    );
}

#[test]
fn a1_and_a2_diagrams() {
    let d = AffineRootDatum::parse("A1", "sc").unwrap().affine_dynkin();
    assert_eq!(
        d.bonds,
        vec![Bond {
            i: 0,
            j: 1,
            multiplicity: 4,
            arrow: Arrow::None
        }]
    );
    assert_eq!(d.automorphism_group_order(), 2);
    let d = AffineRootDatum::parse("A2", "sc").unwrap().affine_dynkin();
    assert_eq!(d.bonds.len(), 3);
    assert_eq!(d.automorphism_group_order(), 6);
}

#[test]
fn automorphism_group_orders() {
    let expected = |t: &CartanType| -> usize {
        match (t.family, t.rank) {
            (Family::A, 1) => 2,
            (Family::A, n) => 2 * (n + 1),
            (Family::B, _) | (Family::C, _) => 2,
            (Family::D, 4) => 24,
            (Family::D, _) => 8,
            (Family::E, 6) => 6,
            (Family::E, 7) => 2,
            (Family::E, _) => 1,
            (Family::F, _) | (Family::G, _) => 1,
        }
    };
    for t in all_types() {
        let ard = AffineRootDatum::parse(&t.to_string(), "sc").unwrap();
        let d = ard.affine_dynkin();
        assert_eq!(d.automorphism_group_order(), expected(&t), "{t}");
        let a = ard.affine_cartan();
        for p in &d.automorphisms {
            for i in 0..=t.rank {
                for j in 0..=t.rank {
                    assert_eq!(a.get(p[i], p[j]), a.get(i, j));
                }
            }
        }
    }
}

#[test]
fn so5_parahoric_levis() {
    let ard = so5();
    assert_eq!(ard.parahoric_levi_type(2).unwrap().to_string(), "A1xA1");
    assert_eq!(ard.parahoric_levi_type(1).unwrap().to_string(), "B2");
    assert_eq!(ard.parahoric_levi_type(0).unwrap().to_string(), "B2");
    assert_eq!(
        ard.parahoric_levi_type(3),
        Err(AffineError::NodeOutOfRange { node: 3, max: 2 })
    );
}

#[test]
fn so5_center_quotients() {
    let ard = so5();
    assert_eq!(
        ard.levi_center_quotient(2).unwrap(),
        FiniteAbelianGroup::cyclic(2)
    );
    assert!(ard.levi_center_quotient(0).unwrap().is_trivial());
    assert!(ard.levi_center_quotient(1).unwrap().is_trivial());
}

#[test]
fn sl_n_center_quotients_are_trivial() {
    for n in 1..=5 {
        let ard = AffineRootDatum::parse(&format!("A{n}"), "sc").unwrap();
        for j in 0..=n {
            assert!(ard.levi_center_quotient(j).unwrap().is_trivial());
        }
    }
}

#[test]
fn center_quotient_orders_are_marks() {
    for t in all_types() {
        for flavor in ["sc", "ad"] {
            let ard = AffineRootDatum::parse(&t.to_string(), flavor).unwrap();
            let zg = ard.center().order();
            assert_eq!(
                zg,
                if flavor == "sc" {
                    ard.base().center_order()
                } else {
                    1
                }
            );
            for j in 0..=t.rank {
                let zj = ard.levi_center_quotient(j).unwrap().order();
                let mark = if j == 0 {
                    1
                } else {
                    ard.theta_coords()[j - 1] as u64
                };
                assert_eq!(zj, mark, "{t} {flavor} {j}");
                assert_eq!(
                    ard.levi_center(j).unwrap().order(),
                    zg * zj,
                    "{t} {flavor} {j}"
                );
            }
        }
    }
}

#[test]
fn e8_marks() {
    let ard = AffineRootDatum::parse("E8", "sc").unwrap();
    assert_eq!(ard.theta_coords(), &[2, 3, 4, 6, 5, 4, 3, 2]);
}
