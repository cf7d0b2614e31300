//! Multiplication in the Cayley–Dickson algebras of dimension 1, 2, 4, 8
//! (reals, complex numbers, quaternions, octonions) over any ring.
//!
//! Elements are coordinate slices in the basis `1, e1, ..., e_{d-1}`. The
//! doubling rule is `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`, which
//! gives the usual quaternion table `i^2 = j^2 = k^2 = ijk = -1` with
//! `(1, i, j, k)` as the basis order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::linalg::IntMatrix;

pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

pub fn conj<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut out = x.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -c.clone();
    }
    out
}

/// Product `x * y`; both slices must have the same power-of-two length.
pub fn mul<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    assert_eq!(x.len(), y.len(), "operands of different dimension");
    assert!(
        x.len().is_power_of_two(),
        "dimension must be a power of two"
    );
    if x.len() == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let left: Vec<T> = sub(&mul(a, c), &mul(&conj(d), b));
    let right: Vec<T> = add(&mul(d, a), &mul(b, &conj(c)));
    left.into_iter().chain(right).collect()
}

fn add<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.clone() + b.clone())
        .collect()
}

fn sub<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.clone() - b.clone())
        .collect()
}

/// Matrix of `v -> e_unit * v` in the algebra of dimension `dim`.
pub fn left_multiplication(dim: usize, unit: usize) -> IntMatrix {
    let basis = |k: usize| -> Vec<i64> { (0..dim).map(|i| i64::from(i == k)).collect() };
    let e = basis(unit);
    let mut m = IntMatrix::zeros(dim, dim);
    for k in 0..dim {
        let col = mul(&e, &basis(k));
        for (i, v) in col.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    m
}
