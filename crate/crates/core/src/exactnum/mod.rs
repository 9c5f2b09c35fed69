//! Exact arithmetic over ℚ and ℚ(√3).

mod ldlt;
mod rational;
mod scalar;

pub use ldlt::{ldlt, Definiteness, Ldlt};
pub use rational::{q, Rational};
pub use scalar::{qs, ExactScalar};

use std::cmp::Ordering;

use crate::error::Result;

/// The operations shared by [`Rational`] and [`ExactScalar`] that generic
/// linear algebra needs.
pub trait ExactField: Clone + Ord + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn signum(&self) -> Ordering;
    fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }
}

impl ExactField for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn signum(&self) -> Ordering {
        Rational::signum(self)
    }
}

impl ExactField for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn signum(&self) -> Ordering {
        ExactScalar::signum(self)
    }
}

/// Square matrix over an exact field, row-major.
pub type Matrix<F> = Vec<Vec<F>>;

/// `xᵀ M y`.
pub fn bilinear<F: ExactField>(m: &Matrix<F>, x: &[F], y: &[F]) -> F {
    let mut acc = F::zero();
    for (i, row) in m.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        let mut r = F::zero();
        for (j, mij) in row.iter().enumerate() {
            if !y[j].is_zero() && !mij.is_zero() {
                r = r.add(&mij.mul(&y[j]));
            }
        }
        acc = acc.add(&x[i].mul(&r));
    }
    acc
}

/// Exact determinant by plain Gaussian elimination over the field.
pub fn determinant<F: ExactField>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = F::zero().sub(&det);
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&p).expect("nonzero pivot");
            for c in col..n {
                let v = a[r][c].sub(&f.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    det
}

/// Inverse by Gauss–Jordan; `None` when singular.
pub fn inverse<F: ExactField>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv: Matrix<F> =
        (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].div(&p).ok()?;
            inv[col][c] = inv[col][c].div(&p).ok()?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                inv[r][c] = inv[r][c].sub(&f.mul(&inv[col][c]));
            }
        }
    }
    Some(inv)
}
