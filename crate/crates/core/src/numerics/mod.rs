//! Small dense linear algebra: vectors in R² and R³, a row-major matrix,
//! symmetric matrices with a Jacobi eigensolver, and the tolerance policy.

mod eigen;
mod matrix;
mod tolerances;

pub use eigen::{sym_eigen, EigenDecomp, MAX_SWEEPS};
pub use matrix::{Matrix, SymMatrix};
pub use tolerances::Tolerances;

use crate::scalar::Scalar;

pub type Vec2<T> = [T; 2];
pub type Vec3<T> = [T; 3];

#[inline]
pub fn dot<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm<T: Scalar, const N: usize>(a: &[T; N]) -> T {
    dot(a, a).sqrt()
}

/// `a / ‖a‖`, or `None` for the zero vector.
pub fn normalize<T: Scalar, const N: usize>(a: &[T; N]) -> Option<[T; N]> {
    let n = norm(a);
    if n == T::zero() || !n.is_finite() {
        return None;
    }
    Some(a.map(|x| x / n))
}

#[inline]
pub fn scale<T: Scalar, const N: usize>(a: &[T; N], s: T) -> [T; N] {
    a.map(|x| x * s)
}

#[inline]
pub fn sub<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

#[inline]
pub fn add<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Cross product. Zero exactly when the inputs are parallel.
#[inline]
pub fn cross<T: Scalar>(u: &Vec3<T>, v: &Vec3<T>) -> Vec3<T> {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// `det[a b]` for column vectors in R².
#[inline]
pub fn det2<T: Scalar>(a: &Vec2<T>, b: &Vec2<T>) -> T {
    a[0] * b[1] - a[1] * b[0]
}
