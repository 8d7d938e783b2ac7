use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Numeric thresholds behind every verdict.
///
/// `eps_rank` is relative to the largest eigenvalue, `eps_dedup` is an angle
/// in radians, and the other two are absolute on unit-scaled quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub eps_rank: T,
    pub eps_nn: T,
    pub eps_orth: T,
    pub eps_dedup: T,
}

impl<T: Scalar> Tolerances<T> {
    pub const UPPER: f64 = 1e-2;

    pub fn new(eps_rank: T, eps_nn: T, eps_orth: T, eps_dedup: T) -> Result<Self> {
        let t = Self {
            eps_rank,
            eps_nn,
            eps_orth,
            eps_dedup,
        };
        t.validate()?;
        Ok(t)
    }

    /// Every threshold set to `eps`.
    pub fn uniform(eps: T) -> Result<Self> {
        Self::new(eps, eps, eps, eps)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.named() {
            if !(value > T::zero() && value < T::lit(Self::UPPER)) {
                return Err(Error::InvalidTolerance {
                    name,
                    value: value.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, T); 4] {
        [
            ("eps_rank", self.eps_rank),
            ("eps_nn", self.eps_nn),
            ("eps_orth", self.eps_orth),
            ("eps_dedup", self.eps_dedup),
        ]
    }
}

impl<T: Scalar> Default for Tolerances<T> {
    /// `1e-10 / 1e-9 / 1e-9 / 1e-9` in double precision; in single precision
    /// each threshold is raised to `1000 ε` of the type.
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(1e3);
        Self {
            eps_rank: T::lit(1e-10).max(floor),
            eps_nn: T::lit(1e-9).max(floor),
            eps_orth: T::lit(1e-9).max(floor),
            eps_dedup: T::lit(1e-9).max(floor),
        }
    }
}
