use crate::rational::{self, Rational};

/// `p -> matrix * p + offset` on R^4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Rational; 4]; 4],
    pub offset: [Rational; 4],
}

impl AffineMap {
    pub fn identity() -> Self {
        Self::linear(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { rational::one() } else { rational::zero() })
        }))
    }

    pub fn linear(matrix: [[Rational; 4]; 4]) -> Self {
        Self {
            matrix,
            offset: std::array::from_fn(|_| rational::zero()),
        }
    }

    pub fn translation(offset: [Rational; 4]) -> Self {
        Self {
            offset,
            ..Self::identity()
        }
    }

    /// The map whose linear part has the given columns.
    pub fn from_columns(columns: &[[Rational; 4]; 4], offset: [Rational; 4]) -> Self {
        Self {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| columns[j][i].clone())),
            offset,
        }
    }

    pub fn apply(&self, p: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(self.offset[i].clone(), |acc, j| acc + &self.matrix[i][j] * &p[j])
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let matrix = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4).fold(rational::zero(), |acc, k| acc + &self.matrix[i][k] * &inner.matrix[k][j])
            })
        });
        AffineMap {
            matrix,
            offset: self.apply(&inner.offset),
        }
    }
}
