//! Smith normal form and the finite abelian groups it produces.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .filter(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d.get(i, j) != 0)
            .min_by_key(|&(i, j)| d.get(i, j).abs());
        let Some((pi, pj)) = pivot else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = d.get(t, t);
            for i in t + 1..rows {
                let q = d.get(i, t).div_euclid(p);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_euclid(p);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
            }

            let remainder = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| d.get(i, j) != 0)
                .min_by_key(|&(i, j)| d.get(i, j).abs());
            if let Some((i, j)) = remainder {
                if i != t {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }

            // row and column are clear; enforce divisibility of the block
            let p = d.get(t, t);
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| d.get(i, j) % p != 0);
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// Finite abelian group in invariant-factor form `Z/d₁ × … × Z/dₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    /// Normalizes an arbitrary product of cyclic groups `Z/n₁ × Z/n₂ × …`.
    /// Zero orders are rejected because the result would be infinite.
    pub fn from_orders(orders: &[u64]) -> Self {
        assert!(orders.iter().all(|&n| n > 0), "Z/0 is not finite");
        let diag: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&diag));
        FiniteAbelianGroup {
            invariant_factors: snf
                .invariant_factors()
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| d as u64)
                .collect(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Cokernel of the lattice map `Z^cols → Z^rows` given by `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    Cokernel {
        free_rank: m.rows() - factors.len(),
        torsion: FiniteAbelianGroup {
            invariant_factors: factors
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| d as u64)
                .collect(),
        },
    }
}

/// Integer solution `X` of `A · X = B`, if one exists.
pub fn solve_integral(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "row mismatch in integral solve");
    // A = U⁻¹ D V⁻¹, so A X = B  ⇔  D (V⁻¹ X) = U B
    let snf = smith_normal_form(a);
    let ub = snf.u.mul(b);
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        let di = if i < a.cols() { snf.d.get(i, i) } else { 0 };
        for j in 0..b.cols() {
            let rhs = ub.get(i, j);
            if di == 0 {
                if rhs != 0 {
                    return None;
                }
            } else {
                if rhs % di != 0 {
                    return None;
                }
                y.set(i, j, rhs / di);
            }
        }
    }
    Some(snf.v.mul(&y))
}

/// Basis of the lattice `{x ∈ Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    (rank..m.cols()).map(|j| snf.v.col(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        let f = s.invariant_factors();
        assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        s
    }

    #[test]
    fn identity_case() {
        let s = check(&IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn two_and_three_combine_to_six() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, IntMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn one_by_one_two() {
        let s = check(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![2]]));
    }

    #[test]
    fn rectangular_and_singular() {
        check(&IntMatrix::from_rows(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, -4, -16],
        ]));
        let s = check(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4], vec![3, 6]]));
        assert_eq!(s.invariant_factors(), vec![1]);
        check(&IntMatrix::zeros(2, 3));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!((c.free_rank, c.torsion.order()), (0, 2));
        let c = cokernel(&IntMatrix::identity(3));
        assert_eq!(c.free_rank, 0);
        assert!(c.torsion.is_trivial());
        let c = cokernel(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(c.torsion, FiniteAbelianGroup::cyclic(6));
        let c = cokernel(&IntMatrix::from_rows(&[vec![1], vec![0]]));
        assert_eq!(c.free_rank, 1);
    }

    #[test]
    fn group_normalization() {
        let g = FiniteAbelianGroup::from_orders(&[2, 2, 3]);
        assert_eq!(g.invariant_factors(), &[2, 6]);
        assert_eq!(g.order(), 12);
        assert_eq!(g.to_string(), "Z/2 x Z/6");
        assert_eq!(FiniteAbelianGroup::from_orders(&[1]).to_string(), "0");
    }

    #[test]
    fn integral_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        let x = IntMatrix::from_rows(&[vec![3], vec![-1]]);
        let b = a.mul(&x);
        assert_eq!(solve_integral(&a, &b), Some(x));
        // (1, 0) is not in the image of [[2,1],[1,2]] over Z
        assert_eq!(
            solve_integral(&a, &IntMatrix::from_rows(&[vec![1], vec![0]])),
            None
        );
    }
}
