//! Rank-revealing factorization `A = C Cᵀ` of a positive semidefinite matrix.

use crate::error::{Error, Result};
use crate::numerics::{sym_eigen, Matrix, SymMatrix, Tolerances};
use crate::scalar::Scalar;

/// `C` has exactly `rank` columns; its rows are the points whose Gram matrix
/// is `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorC<T> {
    pub c: Matrix<T>,
    pub rank: usize,
    pub lambda_max: T,
}

impl<T: Scalar> FactorC<T> {
    /// Row `i` of `C`, zero-padded to three components.
    pub fn point3(&self, i: usize) -> [T; 3] {
        std::array::from_fn(|k| if k < self.rank { self.c[(i, k)] } else { T::zero() })
    }
}

/// Factors `A = C Cᵀ` with `C = V_k diag(√λ₁..√λ_k)`, keeping the eigenvalues
/// above `eps_rank · λ_max`.
///
/// Fails with [`Error::NotPsd`] when some eigenvalue is below
/// `-eps_rank · max|λ|`. The zero matrix yields `rank = 0` and an empty `C`.
pub fn factor_psd<T: Scalar>(a: &SymMatrix<T>, tol: &Tolerances<T>) -> Result<FactorC<T>> {
    let n = a.n();
    let eig = sym_eigen(a)?;
    let lambda_max = eig.values.first().copied().unwrap_or_else(T::zero);
    let spread = eig.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    if let Some(&lowest) = eig.values.last() {
        if lowest < -tol.eps_rank * spread {
            return Err(Error::NotPsd {
                eigenvalue: lowest.to_f64_lossy(),
            });
        }
    }
    let cutoff = tol.eps_rank * lambda_max;
    let rank = eig.values.iter().take_while(|&&v| v > cutoff).count();
    let roots: Vec<T> = eig.values[..rank].iter().map(|v| v.sqrt()).collect();
    let c = Matrix::from_fn(n, rank, |i, k| eig.vectors[(i, k)] * roots[k]);
    Ok(FactorC {
        c,
        rank,
        lambda_max: lambda_max.max(T::zero()),
    })
}
