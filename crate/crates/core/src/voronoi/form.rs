use serde::{Deserialize, Serialize};

use super::VoronoiError;
use crate::lattice::rational::{dot, to_int, to_rat_vec, Rat};
use crate::lattice::{IntMatrix, RatMatrix};

/// Positive-definite symmetric form on a lattice `Z^n`, given by its Gram matrix.
///
/// Read as a lattice map `η ↦ Q(η, ·)` into the dual lattice, the Gram rows
/// are the coordinates of the image in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GramRepr", into = "GramRepr")]
pub struct QuadraticForm {
    gram: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct GramRepr {
    #[serde(with = "crate::lattice::serde_rat::vecvec")]
    gram: Vec<Vec<Rat>>,
}

impl TryFrom<GramRepr> for QuadraticForm {
    type Error = VoronoiError;

    fn try_from(r: GramRepr) -> Result<Self, Self::Error> {
        if r.gram.is_empty() || r.gram.iter().any(|row| row.len() != r.gram.len()) {
            return Err(VoronoiError::NotSquare);
        }
        QuadraticForm::new(RatMatrix::from_rows(&r.gram))
    }
}

impl From<QuadraticForm> for GramRepr {
    fn from(q: QuadraticForm) -> Self {
        GramRepr {
            gram: q.gram.to_rows(),
        }
    }
}

impl QuadraticForm {
    pub fn new(gram: RatMatrix) -> Result<Self, VoronoiError> {
        if gram.rows() != gram.cols() || gram.rows() == 0 {
            return Err(VoronoiError::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(VoronoiError::NotSymmetric);
        }
        if !gram.is_positive_definite() {
            return Err(VoronoiError::NotPositiveDefinite);
        }
        Ok(QuadraticForm { gram })
    }

    pub fn from_int(gram: &IntMatrix) -> Result<Self, VoronoiError> {
        Self::new(RatMatrix::from_int(gram))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, VoronoiError> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
            return Err(VoronoiError::NotSquare);
        }
        Self::from_int(&IntMatrix::from_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// The Gram matrix if every entry is an integer.
    pub fn integral_gram(&self) -> Option<IntMatrix> {
        self.gram.to_int()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_gram().is_some()
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.gram.bilinear(x, y)
    }

    pub fn eval_int(&self, x: &[i64], y: &[i64]) -> Rat {
        self.eval(&to_rat_vec(x), &to_rat_vec(y))
    }

    pub fn norm(&self, x: &[Rat]) -> Rat {
        self.eval(x, x)
    }

    /// `Q(η, ·)` in dual coordinates.
    pub fn apply(&self, eta: &[Rat]) -> Vec<Rat> {
        self.gram.mul_vec(eta)
    }

    /// `Q(η, ·)` for integral η, provided the result is integral.
    pub fn apply_int(&self, eta: &[i64]) -> Option<Vec<i64>> {
        self.apply(&to_rat_vec(eta)).iter().map(to_int).collect()
    }

    /// Inverse Gram matrix: the transported form on the image `Q(Z^n)`,
    /// `Q*(Q a, Q b) = Q(a, b)`.
    pub fn dual_gram(&self) -> RatMatrix {
        self.gram
            .inverse()
            .expect("positive definite forms are invertible")
    }

    pub fn dual_eval(&self, mu: &[Rat], nu: &[Rat]) -> Rat {
        dot(mu, &self.dual_gram().mul_vec(nu))
    }

    pub fn scaled(&self, c: Rat) -> QuadraticForm {
        let n = self.rank();
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.gram.get(i, j) * c);
            }
        }
        QuadraticForm { gram: g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::rat;

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        assert_eq!(
            QuadraticForm::from_rows(&[vec![1, 2], vec![2, 1]]),
            Err(VoronoiError::NotPositiveDefinite)
        );
        assert_eq!(
            QuadraticForm::from_rows(&[vec![2, 1], vec![0, 2]]),
            Err(VoronoiError::NotSymmetric)
        );
    }

    #[test]
    fn dual_transport() {
        let q = QuadraticForm::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let a = to_rat_vec(&[1, 3]);
        let b = to_rat_vec(&[-2, 1]);
        assert_eq!(q.dual_eval(&q.apply(&a), &q.apply(&b)), q.eval(&a, &b));
        assert_eq!(q.apply_int(&[1, 0]), Some(vec![2, -1]));
        assert_eq!(q.norm(&a), rat(2 - 6 + 18));
    }

    #[test]
    fn json_round_trip() {
        let q = QuadraticForm::new(RatMatrix::from_rows(&[vec![Rat::new(1, 2)]])).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"gram":[["1/2"]]}"#);
        assert_eq!(serde_json::from_str::<QuadraticForm>(&s).unwrap(), q);
    }
}
