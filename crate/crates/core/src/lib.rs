//! Isometric embedding of finite point sets in R³ into the nonnegative
//! octant, and exact-rank completely positive factorization built on it.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the double precision instantiation used by the CLI.
//!
//! ```
//! use cpembed::{embed_octant, EmbedResult, Tolerances};
//!
//! let pts = [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]];
//! let res = embed_octant(&pts, &Tolerances::default());
//! assert!(matches!(res, EmbedResult::Success(_)));
//! ```

pub mod cli;
pub mod cp3;
pub mod embed2d;
pub mod embed3d;
mod error;
pub mod gram_factor;
pub mod lobatto;
pub mod numerics;
mod scalar;
pub mod sphere_hull;

pub use cp3::{cp_factorize_dense, cp_factorize_rank3, is_doubly_nonnegative, verify_cp_lift_fixture, CpResult, Refusal};
pub use embed2d::{embed_quadrant, extend_extreme_pair, ExtremePair, Rotation2};
pub use embed3d::{
    check_candidate, embed_octant, fc1_candidates, fc2_candidates, gram_nonneg, Candidate, CandidateReport,
    CandidateSource, CandidateVerdict, EmbedFailure, EmbedResult, Embedding,
};
pub use error::{Error, Result};
pub use gram_factor::{factor_psd, FactorC};
pub use numerics::{cross, sym_eigen, EigenDecomp, Matrix, SymMatrix, Tolerances};
pub use scalar::Scalar;
pub use sphere_hull::{hull_order, project_dedupe, HullOrder, UnitSet};

pub type Vector3 = numerics::Vec3<f64>;
pub type Matrix64 = Matrix<f64>;
pub type SymMatrix64 = SymMatrix<f64>;
pub type Tolerances64 = Tolerances<f64>;
pub type EmbedResult64 = EmbedResult<f64>;
pub type EmbedFailure64 = EmbedFailure<f64>;
pub type CpResult64 = CpResult<f64>;
pub type Candidate64 = Candidate<f64>;
pub type CandidateReport64 = CandidateReport<f64>;

pub type Vector3f = numerics::Vec3<f32>;
pub type Tolerances32 = Tolerances<f32>;
pub type EmbedResult32 = EmbedResult<f32>;
pub type CpResult32 = CpResult<f32>;
