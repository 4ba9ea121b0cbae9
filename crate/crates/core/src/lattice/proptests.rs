use proptest::prelude::*;

use super::rational::{rat, to_rat_vec, Rat};
use super::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
        .prop_map(|r| IntMatrix::from_rows(&r))
}

fn generators(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=5)
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 12)
}

// the order of the torsion of coker(m) for square m is |det m| when nonzero
fn leibniz_det(m: &IntMatrix) -> i64 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        total += sign * (0..n).map(|i| m.get(i, perm[i])).product::<i64>();
        // next permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return total;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_certificate(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(leibniz_det(&s.u).abs(), 1);
        prop_assert_eq!(leibniz_det(&s.v).abs(), 1);
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn cokernel_order_is_determinant(m in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let d = leibniz_det(&m);
        let c = cokernel(&m);
        if d == 0 {
            prop_assert!(c.free_rank > 0);
        } else {
            prop_assert_eq!(c.free_rank, 0);
            prop_assert_eq!(c.torsion.order() as i64, d.abs());
        }
    }

    #[test]
    fn integer_kernel_is_a_kernel(m in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len() + smith_normal_form(&m).rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cone_ignores_generator_order_and_scaling(
        g in (1usize..=3).prop_flat_map(generators),
        k in 1i64..=4,
    ) {
        let dim = g[0].len();
        let a = Cone::from_int_generators(dim, &g).unwrap();
        let mut rev = g.clone();
        rev.reverse();
        let scaled: Vec<Vec<i64>> = rev.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        let b = Cone::from_int_generators(dim, &scaled).unwrap();
        prop_assert!(a.same_set(&b));
        prop_assert_eq!(a.key(), b.key());
    }

    #[test]
    fn double_dual_is_identity(g in (1usize..=3).prop_flat_map(generators)) {
        let dim = g[0].len();
        let c = Cone::from_int_generators(dim, &g).unwrap();
        prop_assert!(dual_cone(&dual_cone(&c)).same_set(&c));
        prop_assert_eq!(c.dimension() + dual_cone(&c).lineality_dim(), dim);
        for x in c.generators() {
            for y in dual_cone(&c).generators() {
                prop_assert!(x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() >= 0);
            }
        }
    }

    #[test]
    fn preimage_membership(
        g in generators(2),
        f in matrix(2, 3),
        pts in points(3),
    ) {
        let c = Cone::from_int_generators(2, &g).unwrap();
        let pre = cone_preimage(&c, &f).unwrap();
        for p in &pts {
            prop_assert_eq!(pre.contains_int(p), c.contains_int(&f.mul_vec(p)));
        }
    }

    #[test]
    fn dual_membership_is_nonnegative_pairing(
        g in (1usize..=3).prop_flat_map(generators),
        seed in prop::collection::vec(-4i64..=4, 3),
    ) {
        let dim = g[0].len();
        let c = Cone::from_int_generators(dim, &g).unwrap();
        let y = &seed[..dim];
        let pairs_ok = g.iter().all(|x| x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() >= 0);
        prop_assert_eq!(dual_cone(&c).contains_int(y), pairs_ok);
    }

    #[test]
    fn primitive_is_scale_invariant(v in prop::collection::vec(-9i64..=9, 1..=4), num in 1i128..=6, den in 1i128..=6) {
        let r = to_rat_vec(&v);
        let s: Vec<Rat> = r.iter().map(|x| x * Rat::new(num, den)).collect();
        prop_assert_eq!(rational::primitive_of(&r), rational::primitive_of(&s));
        if let Some(p) = rational::primitive_of(&r) {
            let g = p.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
            prop_assert_eq!(g, 1);
            prop_assert!(r.iter().zip(&p).all(|(a, &b)| (*a > rat(0)) == (b > 0) && (*a < rat(0)) == (b < 0)));
        }
    }
}
