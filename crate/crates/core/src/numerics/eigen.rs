use crate::error::{Error, Result};
use crate::numerics::{Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Sweep budget for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `A = V Λ Vᵀ` with eigenvalues in descending order
/// and eigenvectors stored as the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomp<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> EigenDecomp<T> {
    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix<T> {
        let v = &self.vectors;
        SymMatrix::from_fn(v.rows(), |i, j| {
            (0..self.values.len()).fold(T::zero(), |acc, k| {
                acc + v[(i, k)] * self.values[k] * v[(j, k)]
            })
        })
    }

    /// `‖VᵀV − I‖_max`.
    pub fn orthonormality_residual(&self) -> T {
        let vtv = self.vectors.transpose().matmul(&self.vectors);
        vtv.max_abs_diff(&Matrix::identity(vtv.rows()))
    }

    pub fn vector(&self, k: usize) -> Vec<T> {
        self.vectors.column(k)
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Each sweep annihilates every off-diagonal entry once with a plane
/// rotation; the sweep loop stops once the off-diagonal Frobenius norm drops
/// below machine precision relative to the whole matrix.
pub fn sym_eigen<T: Scalar>(a: &SymMatrix<T>) -> Result<EigenDecomp<T>> {
    let n = a.n();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::<T>::identity(n);

    let frob = |m: &Matrix<T>| {
        let mut total = T::zero();
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)] * m[(i, j)];
                total = total + x;
                if i != j {
                    off = off + x;
                }
            }
        }
        (total.sqrt(), off.sqrt())
    };

    let two = T::lit(2.0);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let (total, off) = frob(&m);
        if off <= T::epsilon() * total || off == T::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (two * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let s = t * c;

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenDecomp { values, vectors })
}
