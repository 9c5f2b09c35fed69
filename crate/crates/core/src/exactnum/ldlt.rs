use std::cmp::Ordering;

use super::{ExactField, Matrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite; zero pivots had vanishing columns below them.
    Semidefinite {
        rank: usize,
    },
    /// Elimination stopped at `pivot` (negative pivot, or zero pivot with a nonzero column).
    Indefinite {
        pivot: usize,
    },
}

/// `G = L·D·Lᵀ` with `L` unit lower-triangular.
#[derive(Debug, Clone)]
pub struct Ldlt<F> {
    pub l: Matrix<F>,
    pub d: Vec<F>,
    pub definiteness: Definiteness,
}

impl<F: ExactField> Ldlt<F> {
    pub fn is_positive_definite(&self) -> bool {
        self.definiteness == Definiteness::PositiveDefinite
    }

    /// `L·D·Lᵀ`, rebuilt from the factors.
    pub fn reconstruct(&self) -> Matrix<F> {
        let n = self.l.len();
        let mut g = vec![vec![F::zero(); n]; n];
        for (i, gi) in g.iter_mut().enumerate() {
            for (j, gij) in gi.iter_mut().enumerate() {
                let mut acc = F::zero();
                for k in 0..self.d.len().min(i.min(j) + 1) {
                    acc = acc.add(&self.l[i][k].mul(&self.d[k]).mul(&self.l[j][k]));
                }
                *gij = acc;
            }
        }
        g
    }
}

/// Square-root-free symmetric factorization.
///
/// Stops at the first pivot that makes the matrix indefinite. Zero pivots whose
/// remaining column is zero are accepted and reported as semidefinite, which is
/// how the rank-2 plane projection Grams factor.
pub fn ldlt<F: ExactField>(g: &Matrix<F>) -> Result<Ldlt<F>> {
    let n = g.len();
    for (i, row) in g.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for j in 0..i {
            if row[j] != g[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut l: Matrix<F> =
        (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
    let mut d: Vec<F> = Vec::with_capacity(n);
    let mut rank = 0;
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            dj = dj.sub(&l[j][k].mul(&l[j][k]).mul(&d[k]));
        }
        let residual = |l: &Matrix<F>, d: &[F], i: usize| {
            let mut v = g[i][j].clone();
            for k in 0..j {
                v = v.sub(&l[i][k].mul(&l[j][k]).mul(&d[k]));
            }
            v
        };
        match dj.signum() {
            Ordering::Less => {
                d.push(dj);
                return Ok(Ldlt { l, d, definiteness: Definiteness::Indefinite { pivot: j } });
            }
            Ordering::Equal => {
                if (j + 1..n).any(|i| !residual(&l, &d, i).is_zero()) {
                    d.push(dj);
                    return Ok(Ldlt { l, d, definiteness: Definiteness::Indefinite { pivot: j } });
                }
                d.push(dj);
            }
            Ordering::Greater => {
                for i in j + 1..n {
                    let v = residual(&l, &d, i);
                    l[i][j] = v.div(&dj)?;
                }
                d.push(dj);
                rank += 1;
            }
        }
    }
    let definiteness = if rank == n { Definiteness::PositiveDefinite } else { Definiteness::Semidefinite { rank } };
    Ok(Ldlt { l, d, definiteness })
}
