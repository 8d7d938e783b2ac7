//! Degree-four Lobatto polynomials vanishing at ±1, their H¹₀ inner product,
//! and the certificate that no nonnegative H¹₀-orthonormal basis of that
//! space exists.
//!
//! With `q(x) = 1 − x²` the orthonormal Lobatto polynomials factor as
//! `φ_j = q · r_j`:
//!
//! ```text
//! r₂(x) = √6/4      r₃(x) = √10/4 · x      r₄(x) = √14/16 · (5x² − 1)
//! ```
//!
//! A nonnegative orthonormal basis exists iff the curve `Φ = (φ₂, φ₃, φ₄)`
//! can be rotated into the nonnegative octant. Since `q ≥ 0`, the curve
//! `R = (r₂, r₃, r₄)` has the same directions, and four of them already
//! fail.

use std::ops::{Add, Mul};

use crate::embed3d::{embed_octant, EmbedFailure, EmbedResult};
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Tolerances, Vec3};
use crate::scalar::Scalar;

/// Polynomial in the monomial basis, lowest degree first, trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PolyCoeffs<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| *c == T::zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::lit(k as f64))
                .collect(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `∫₋₁¹ p(x) dx`: odd monomials vanish, `x^{2k}` gives `2/(2k+1)`.
    pub fn integrate_symmetric(&self) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .step_by(2)
            .fold(T::zero(), |acc, (k, &c)| acc + c * T::lit(2.0 / (k as f64 + 1.0)))
    }
}

impl<T: Scalar> Add for &PolyCoeffs<T> {
    type Output = PolyCoeffs<T>;

    fn add(self, rhs: Self) -> PolyCoeffs<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &PolyCoeffs<T>, k: usize| p.coeffs.get(k).copied().unwrap_or_else(T::zero);
        PolyCoeffs::new((0..n).map(|k| at(self, k) + at(rhs, k)).collect())
    }
}

impl<T: Scalar> Mul for &PolyCoeffs<T> {
    type Output = PolyCoeffs<T>;

    fn mul(self, rhs: Self) -> PolyCoeffs<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyCoeffs::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        PolyCoeffs::new(out)
    }
}

/// H¹₀ inner product `∫₋₁¹ p′(x) q′(x) dx`, evaluated on coefficients.
pub fn h10_inner<T: Scalar>(p: &PolyCoeffs<T>, q: &PolyCoeffs<T>) -> T {
    (&p.derivative() * &q.derivative()).integrate_symmetric()
}

/// The orthonormal Lobatto polynomials and their factors `φ_j = q · r_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LobattoBasis<T> {
    pub phi2: PolyCoeffs<T>,
    pub phi3: PolyCoeffs<T>,
    pub phi4: PolyCoeffs<T>,
    pub q: PolyCoeffs<T>,
    pub r2: PolyCoeffs<T>,
    pub r3: PolyCoeffs<T>,
    pub r4: PolyCoeffs<T>,
}

fn radicals<T: Scalar>() -> (T, T, T) {
    (T::lit(6.0).sqrt(), T::lit(10.0).sqrt(), T::lit(14.0).sqrt())
}

impl<T: Scalar> LobattoBasis<T> {
    pub fn new() -> Self {
        let (s6, s10, s14) = radicals::<T>();
        let quarter = T::lit(0.25);
        let sixteenth = T::lit(1.0 / 16.0);
        let z = T::zero();
        let q = PolyCoeffs::new(vec![T::one(), z, -T::one()]);
        let r2 = PolyCoeffs::new(vec![s6 * quarter]);
        let r3 = PolyCoeffs::new(vec![z, s10 * quarter]);
        let r4 = PolyCoeffs::new(vec![-s14 * sixteenth, z, T::lit(5.0) * s14 * sixteenth]);
        Self {
            phi2: &q * &r2,
            phi3: &q * &r3,
            phi4: &q * &r4,
            q,
            r2,
            r3,
            r4,
        }
    }

    pub fn phis(&self) -> [&PolyCoeffs<T>; 3] {
        [&self.phi2, &self.phi3, &self.phi4]
    }

    /// 3×3 matrix of H¹₀ inner products of `(φ₂, φ₃, φ₄)`.
    pub fn gram(&self) -> [[T; 3]; 3] {
        let phis = self.phis();
        std::array::from_fn(|i| std::array::from_fn(|j| h10_inner(phis[i], phis[j])))
    }
}

impl<T: Scalar> Default for LobattoBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn check_domain<T: Scalar>(x: T) -> Result<()> {
    if x >= -T::one() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain { value: x.to_f64_lossy() })
    }
}

/// `R(x) = (r₂(x), r₃(x), r₄(x))` for `x ∈ [−1, 1]`.
pub fn r<T: Scalar>(x: T) -> Result<Vec3<T>> {
    check_domain(x)?;
    let (s6, s10, s14) = radicals::<T>();
    Ok([
        s6 * T::lit(0.25),
        s10 * T::lit(0.25) * x,
        s14 * T::lit(1.0 / 16.0) * (T::lit(5.0) * x * x - T::one()),
    ])
}

/// `Φ(x) = q(x) · R(x)`, zero at both ends of the interval.
pub fn phi<T: Scalar>(x: T) -> Result<Vec3<T>> {
    let q = T::one() - x * x;
    Ok(r(x)?.map(|c| q * c))
}

fn nodes<T: Scalar>(ell: usize) -> Vec<T> {
    let l = T::lit(ell as f64);
    (0..=2 * ell)
        .map(|j| -T::one() + T::lit(j as f64) / l)
        .collect()
}

/// `Φ(x_j)` at `x_j = −1 + j/ℓ`, `j = 0..=2ℓ`. The two end points are zero.
pub fn sample_curve<T: Scalar>(ell: usize) -> Vec<Vec3<T>> {
    assert!(ell >= 1, "sample size ell must be positive");
    nodes::<T>(ell)
        .into_iter()
        .map(|x| phi(x).expect("nodes lie in [-1, 1]"))
        .collect()
}

/// `R(x_j)` on the same nodes: the sampled directions of the curve,
/// including the limits at `±1` where `Φ` itself vanishes.
pub fn sample_directions<T: Scalar>(ell: usize) -> Vec<Vec3<T>> {
    assert!(ell >= 1, "sample size ell must be positive");
    nodes::<T>(ell)
        .into_iter()
        .map(|x| r(x).expect("nodes lie in [-1, 1]"))
        .collect()
}

/// `diag(√6, √10, √14) · [[1, 1, 1, 1], [−1, −½, ½, 1], [1, 1/16, 1/16, 1]]`,
/// whose columns are `4R(−1), 4R(−½), 4R(½), 4R(1)`.
pub fn four_point_matrix<T: Scalar>() -> Matrix<T> {
    let (s6, s10, s14) = radicals::<T>();
    let half = T::lit(0.5);
    let sixteenth = T::lit(1.0 / 16.0);
    Matrix::from_columns(&[
        [s6, -s10, s14],
        [s6, -s10 * half, s14 * sixteenth],
        [s6, s10 * half, s14 * sixteenth],
        [s6, s10, s14],
    ])
}

/// Columns of a 3×p matrix as points.
pub fn columns3<T: Scalar>(m: &Matrix<T>) -> Vec<Vec3<T>> {
    (0..m.cols()).map(|j| [m[(0, j)], m[(1, j)], m[(2, j)]]).collect()
}

/// Orthogonal `Q` with `Ψ = QΦ`: rows `(2/√6, 0, −1/√3)`,
/// `(1/√6, 1/√2, 1/√3)`, `(1/√6, −1/√2, 1/√3)`.
pub fn psi_rotation<T: Scalar>() -> [[T; 3]; 3] {
    let s2 = T::lit(2.0).sqrt();
    let s3 = T::lit(3.0).sqrt();
    let s6 = T::lit(6.0).sqrt();
    let one = T::one();
    let two = T::lit(2.0);
    [
        [two / s6, T::zero(), -one / s3],
        [one / s6, one / s2, one / s3],
        [one / s6, -one / s2, one / s3],
    ]
}

/// `Ψ(x) = QΦ(x)`.
pub fn psi_transform<T: Scalar>(x: T) -> Result<Vec3<T>> {
    let p = phi(x)?;
    let q = psi_rotation::<T>();
    Ok(q.map(|row| row[0] * p[0] + row[1] * p[1] + row[2] * p[2]))
}

/// `ψ₂, ψ₃, ψ₄` as polynomials.
pub fn psi_polys<T: Scalar>() -> [PolyCoeffs<T>; 3] {
    let basis = LobattoBasis::<T>::new();
    let phis = basis.phis();
    let q = psi_rotation::<T>();
    q.map(|row| {
        let a = phis[0].scale(row[0]);
        let b = phis[1].scale(row[1]);
        let c = phis[2].scale(row[2]);
        &(&a + &b) + &c
    })
}

/// Smallest component of `Ψ` on the grid `−1, −1 + h, …, 1`.
pub fn psi_min_scan<T: Scalar>(grid_step: T) -> Result<T> {
    if !(grid_step > T::zero() && grid_step <= T::lit(0.01)) {
        return Err(Error::Domain {
            value: grid_step.to_f64_lossy(),
        });
    }
    let steps = (T::lit(2.0) / grid_step).ceil().to_usize().unwrap_or(0);
    let mut lowest = T::infinity();
    for j in 0..=steps {
        let x = (-T::one() + T::lit(j as f64) * grid_step).min(T::one());
        let v = psi_transform(x)?;
        lowest = lowest.min(v[0]).min(v[1]).min(v[2]);
    }
    Ok(lowest)
}

/// Certificates that neither the four-point set nor the `ℓ = 2` curve
/// sample can be rotated into the nonnegative octant.
#[derive(Debug, Clone, PartialEq)]
pub struct Disproof<T> {
    pub four_point: EmbedFailure<T>,
    pub curve_sample: EmbedFailure<T>,
}

fn expect_failure<T: Scalar>(what: &str, res: EmbedResult<T>) -> Result<EmbedFailure<T>> {
    match res {
        EmbedResult::Failure(f) => Ok(f),
        other => Err(Error::InvariantBroken(format!("{what} unexpectedly embeds ({})", other.kind()))),
    }
}

/// Runs the octant decision on the four-point matrix and on the sampled
/// directions for `ℓ = 2`; both must fail.
pub fn disprove_basis<T: Scalar>(tol: &Tolerances<T>) -> Result<Disproof<T>> {
    let four = columns3(&four_point_matrix::<T>());
    let four_point = expect_failure("four-point set", embed_octant(&four, tol))?;
    let curve_sample = expect_failure("curve sample", embed_octant(&sample_directions::<T>(2), tol))?;
    Ok(Disproof {
        four_point,
        curve_sample,
    })
}
