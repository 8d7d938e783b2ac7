//! Completely positive factorization `A = BBᵀ`, `B ≥ 0`, for matrices whose
//! cp-rank equals their rank and is at most three.

use crate::embed2d::embed_quadrant;
use crate::embed3d::{embed_octant, EmbedFailure, EmbedResult};
use crate::error::Error;
use crate::gram_factor::factor_psd;
use crate::numerics::{sym_eigen, Matrix, SymMatrix, Tolerances};
use crate::scalar::Scalar;

/// Why a matrix was not factorized.
#[derive(Debug, Clone, PartialEq)]
pub enum Refusal<T> {
    NotSymmetric,
    /// The most negative eigenvalue.
    NotPsd(T),
    /// First entry below `-eps_nn · ‖A‖_max`.
    NotNonneg(usize, usize),
    RankTooHigh(usize),
    /// The rows of `C` admit no rotation into the nonnegative orthant, so the
    /// cp-rank exceeds three or `A` is not completely positive.
    EmbedFailed(Box<EmbedFailure<T>>),
}

impl<T> Refusal<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Self::NotSymmetric => "not_symmetric",
            Self::NotPsd(_) => "not_psd",
            Self::NotNonneg(..) => "not_nonneg",
            Self::RankTooHigh(_) => "rank_too_high",
            Self::EmbedFailed(_) => "embed_failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<T> {
    /// `n × rank` nonnegative factor.
    pub b: Matrix<T>,
    pub rank: usize,
    /// `‖A − BBᵀ‖_max`.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CpResult<T> {
    Factorized(Factorization<T>),
    Refused(Refusal<T>),
}

impl<T> CpResult<T> {
    pub fn is_factorized(&self) -> bool {
        matches!(self, Self::Factorized(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Factorized(_) => "factorized",
            Self::Refused(r) => r.name(),
        }
    }
}

/// Outcome of the doubly-nonnegative test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DnnVerdict<T> {
    DoublyNonnegative,
    NegativeEntry { i: usize, j: usize },
    NotPsd { eigenvalue: T },
}

impl<T> DnnVerdict<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Self::DoublyNonnegative)
    }
}

fn negative_entry<T: Scalar>(a: &SymMatrix<T>, tol: &Tolerances<T>) -> Option<(usize, usize)> {
    let floor = -tol.eps_nn * a.max_abs();
    let n = a.n();
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .find(|&(i, j)| a[(i, j)] < floor)
}

/// Entrywise nonnegativity first, then positive semidefiniteness.
pub fn is_doubly_nonnegative<T: Scalar>(a: &SymMatrix<T>, tol: &Tolerances<T>) -> DnnVerdict<T> {
    if let Some((i, j)) = negative_entry(a, tol) {
        return DnnVerdict::NegativeEntry { i, j };
    }
    match sym_eigen(a) {
        Ok(eig) => {
            let spread = eig.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
            match eig.values.last() {
                Some(&low) if low < -tol.eps_rank * spread => DnnVerdict::NotPsd { eigenvalue: low },
                _ => DnnVerdict::DoublyNonnegative,
            }
        }
        Err(_) => DnnVerdict::NotPsd {
            eigenvalue: T::nan(),
        },
    }
}

/// Checks symmetry of a dense square matrix, then factorizes.
pub fn cp_factorize_dense<T: Scalar>(a: &Matrix<T>, tol: &Tolerances<T>) -> CpResult<T> {
    match SymMatrix::from_matrix(a, tol.eps_orth) {
        Ok(s) => cp_factorize_rank3(&s, tol),
        Err(_) => CpResult::Refused(Refusal::NotSymmetric),
    }
}

/// Factorizes `A = BBᵀ` with `B ≥ 0` and `rank(A)` columns, or says why not.
///
/// After `A = CCᵀ` from the spectral decomposition, the rows of `C` are
/// rotated into the nonnegative orthant of `R^rank`: trivially for rank one,
/// by the planar procedure for rank two and by [`embed_octant`] for rank
/// three. Since the rotation is orthogonal, `B = C·F` keeps `BBᵀ = CCᵀ`.
pub fn cp_factorize_rank3<T: Scalar>(a: &SymMatrix<T>, tol: &Tolerances<T>) -> CpResult<T> {
    if let Some((i, j)) = negative_entry(a, tol) {
        return CpResult::Refused(Refusal::NotNonneg(i, j));
    }
    let factor = match factor_psd(a, tol) {
        Ok(f) => f,
        Err(Error::NotPsd { eigenvalue }) => return CpResult::Refused(Refusal::NotPsd(T::lit(eigenvalue))),
        Err(_) => return CpResult::Refused(Refusal::NotPsd(T::nan())),
    };
    let n = a.n();
    let c = &factor.c;
    let b = match factor.rank {
        0 => Matrix::zeros(n, 0),
        1 => {
            let col = c.column(0);
            let pivot = col.iter().copied().fold(T::zero(), |m, x| if x.abs() > m.abs() { x } else { m });
            let sign = if pivot < T::zero() { -T::one() } else { T::one() };
            let b = Matrix::from_fn(n, 1, |i, _| col[i] * sign);
            let floor = -tol.eps_nn * a.max_abs().sqrt();
            if let Some(i) = (0..n).find(|&i| b[(i, 0)] < floor) {
                return CpResult::Refused(Refusal::NotNonneg(i, i));
            }
            b
        }
        2 => {
            let rows: Vec<[T; 2]> = (0..n).map(|i| c.row_array::<2>(i)).collect();
            match embed_quadrant(&rows, tol) {
                Some(q) => Matrix::from_fn(n, 2, |i, k| q.apply(&rows[i])[k]),
                None => {
                    let pts: Vec<[T; 3]> = (0..n).map(|i| factor.point3(i)).collect();
                    let failure = match embed_octant(&pts, tol) {
                        EmbedResult::Failure(f) => f,
                        _ => EmbedFailure {
                            reports: Vec::new(),
                            gram_violation: None,
                        },
                    };
                    return CpResult::Refused(Refusal::EmbedFailed(Box::new(failure)));
                }
            }
        }
        3 => {
            let pts: Vec<[T; 3]> = (0..n).map(|i| factor.point3(i)).collect();
            match embed_octant(&pts, tol) {
                EmbedResult::Failure(f) => return CpResult::Refused(Refusal::EmbedFailed(Box::new(f))),
                res => {
                    let e = res.embedding().expect("non-failure carries an embedding");
                    // row i of B is the coordinate column of point i
                    Matrix::from_fn(n, 3, |i, k| e.coords[(k, i)])
                }
            }
        }
        k => return CpResult::Refused(Refusal::RankTooHigh(k)),
    };
    let residual = b.gram_rows().as_matrix().max_abs_diff(a.as_matrix());
    CpResult::Factorized(Factorization {
        rank: factor.rank,
        b,
        residual,
    })
}

/// Nonnegative 4×4 matrix whose columns realize the Gram matrix of the
/// half-octahedron vectors `(2,0,0), (0,2,0), (1,1,±√2)` inside `R⁴≥0`.
pub fn cp_lift_fixture<T: Scalar>() -> Matrix<T> {
    let r = T::lit(2.0).sqrt();
    let z = T::zero();
    Matrix::from_columns(&[[r, r, z, z], [z, z, r, r], [z, r, r, z], [r, z, z, r]])
}

/// Gram matrix of the half-octahedron vectors.
pub fn half_octahedron_gram<T: Scalar>() -> SymMatrix<T> {
    let v = |x: f64| T::lit(x);
    let rows = [
        [v(4.0), v(0.0), v(2.0), v(2.0)],
        [v(0.0), v(4.0), v(2.0), v(2.0)],
        [v(2.0), v(2.0), v(4.0), v(0.0)],
        [v(2.0), v(2.0), v(0.0), v(4.0)],
    ];
    SymMatrix::from_fn(4, |i, j| rows[i][j])
}

/// Whether `n` is entrywise nonnegative with `nᵀn` equal to the
/// half-octahedron Gram matrix within `1e-12`.
pub fn verify_cp_lift(n: &Matrix<f64>) -> bool {
    if n.rows() != 4 || n.cols() != 4 || n.min_entry() < 0.0 {
        return false;
    }
    let ntn = n.transpose().matmul(n);
    ntn.max_abs_diff(half_octahedron_gram::<f64>().as_matrix()) <= 1e-12
}

/// Checks the stored lift: a 4-column nonnegative factor of a rank-3 matrix
/// that no 3-column nonnegative factor exists for.
pub fn verify_cp_lift_fixture() -> bool {
    verify_cp_lift(&cp_lift_fixture())
}
