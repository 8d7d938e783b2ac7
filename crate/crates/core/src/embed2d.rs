//! Rotating a finite set in R² into the nonnegative quadrant.
//!
//! A set fits into the quadrant exactly when no two of its vectors make an
//! obtuse angle. The procedure below tracks the pair of vectors spanning the
//! largest mutual angle while scanning the set once, using four inner
//! products per new vector, and rotates the first vector of the final pair
//! onto the positive `e₁` axis.

use crate::error::{Error, Result};
use crate::numerics::{det2, dot, norm, Tolerances, Vec2};
use crate::scalar::Scalar;

/// Pair `(i, j)` spanning the largest mutual angle seen so far, oriented so
/// that `det[u_i u_j] ≥ 0`. `i == j` while only one direction has been seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremePair<T> {
    pub i: usize,
    pub j: usize,
    /// Cosine of the angle between `u_i` and `u_j`.
    pub cos_omega: T,
}

impl<T: Scalar> ExtremePair<T> {
    /// Pair for a single direction.
    pub fn single(i: usize) -> Self {
        Self {
            i,
            j: i,
            cos_omega: T::one(),
        }
    }
}

/// Outcome of adding one vector to an extreme pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extension<T> {
    Pair(ExtremePair<T>),
    /// `u_i` and `u_j` make an obtuse angle; `i < j`.
    Obtuse { i: usize, j: usize },
}

/// Proper rotation `[[c, s], [-s, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation2<T> {
    pub cos: T,
    pub sin: T,
}

impl<T: Scalar> Rotation2<T> {
    pub fn identity() -> Self {
        Self {
            cos: T::one(),
            sin: T::zero(),
        }
    }

    /// The rotation taking the direction of `u` onto `e₁`.
    pub fn aligning(u: &Vec2<T>) -> Option<Self> {
        let n = norm(u);
        if n == T::zero() {
            return None;
        }
        Some(Self {
            cos: u[0] / n,
            sin: u[1] / n,
        })
    }

    pub fn matrix(&self) -> [[T; 2]; 2] {
        [[self.cos, self.sin], [-self.sin, self.cos]]
    }

    #[inline]
    pub fn apply(&self, v: &Vec2<T>) -> Vec2<T> {
        [
            self.cos * v[0] + self.sin * v[1],
            -self.sin * v[0] + self.cos * v[1],
        ]
    }

    pub fn det(&self) -> T {
        self.cos * self.cos + self.sin * self.sin
    }
}

/// Verdict of the quadrant procedure, with the pair that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadrantVerdict<T> {
    /// `pair` is `None` when every vector was (treated as) zero.
    Embedded {
        rotation: Rotation2<T>,
        pair: Option<ExtremePair<T>>,
    },
    Obtuse {
        i: usize,
        j: usize,
    },
}

/// One step of the incremental procedure on `vectors`, where `u_p` is taken
/// to have index `vectors.len()`.
///
/// Computes `α₁ = u₁ᵀu_p`, `α₂ = u₂ᵀu_p` and, if neither is negative beyond
/// `eps_nn · ‖u₁‖‖u_p‖`, the signed areas `β₁ = det[u_p u₂]`,
/// `β₂ = det[u₁ u_p]`. A negative `β₁` means `u_p` lies past `u₂` and
/// replaces it; a negative `β₂` means `u_p` lies before `u₁` and replaces
/// that. `β = 0` keeps the pair.
pub fn extend_extreme_pair<T: Scalar>(
    pair: &ExtremePair<T>,
    vectors: &[Vec2<T>],
    u_p: &Vec2<T>,
    tol: &Tolerances<T>,
) -> Result<Extension<T>> {
    let p = vectors.len();
    let np = norm(u_p);
    if np == T::zero() {
        return Err(Error::ZeroVector);
    }
    let norms = |k: usize| if k == p { np } else { norm(&vectors[k]) };
    let at = |k: usize| if k == p { u_p } else { &vectors[k] };
    let (ext, _) = extend_counted(pair, p, &at, &norms, &norms, tol.eps_nn);
    Ok(ext)
}

/// The step itself, returning the number of inner products it evaluated.
/// `scale` sets the obtuseness threshold and `norms` the reported cosine.
pub(crate) fn extend_counted<'a, T: Scalar>(
    pair: &ExtremePair<T>,
    p: usize,
    at: &impl Fn(usize) -> &'a Vec2<T>,
    norms: &impl Fn(usize) -> T,
    scale: &impl Fn(usize) -> T,
    eps_nn: T,
) -> (Extension<T>, usize) {
    let (u1, u2, up) = (at(pair.i), at(pair.j), at(p));
    let alpha1 = dot(u1, up);
    let alpha2 = dot(u2, up);
    let slack1 = alpha1 + eps_nn * scale(pair.i) * scale(p);
    let slack2 = alpha2 + eps_nn * scale(pair.j) * scale(p);
    if slack1 < T::zero() || slack2 < T::zero() {
        let c1 = alpha1 / (norms(pair.i) * norms(p));
        let c2 = alpha2 / (norms(pair.j) * norms(p));
        let other = if slack1 < T::zero() && (slack2 >= T::zero() || c1 <= c2) {
            pair.i
        } else {
            pair.j
        };
        return (
            Extension::Obtuse {
                i: other.min(p),
                j: other.max(p),
            },
            2,
        );
    }
    let beta1 = det2(up, u2);
    let beta2 = det2(u1, up);
    let next = if beta1 < T::zero() {
        ExtremePair {
            i: pair.i,
            j: p,
            cos_omega: alpha1 / (norms(pair.i) * norms(p)),
        }
    } else if beta2 < T::zero() {
        ExtremePair {
            i: p,
            j: pair.j,
            cos_omega: alpha2 / (norms(p) * norms(pair.j)),
        }
    } else {
        *pair
    };
    (Extension::Pair(next), 4)
}

/// Runs the incremental procedure over `vectors`.
///
/// `scales[k]` replaces `‖u_k‖` in the thresholds: a vector with
/// `‖u_k‖ ≤ eps_nn · scales[k]` is skipped as zero, and a pair is obtuse when
/// its inner product is below `-eps_nn · scales[i] · scales[j]`. With
/// `scales[k] = ‖u_k‖` only exact zeros are skipped and the test is on the
/// cosine.
pub fn decide_quadrant<T: Scalar>(
    vectors: &[Vec2<T>],
    scales: &[T],
    eps_nn: T,
) -> (QuadrantVerdict<T>, usize) {
    assert_eq!(vectors.len(), scales.len());
    let norms: Vec<T> = vectors.iter().map(norm).collect();
    let active: Vec<usize> = (0..vectors.len())
        .filter(|&k| norms[k] > eps_nn * scales[k] && norms[k] > T::zero())
        .collect();
    let Some((&first, rest)) = active.split_first() else {
        return (
            QuadrantVerdict::Embedded {
                rotation: Rotation2::identity(),
                pair: None,
            },
            0,
        );
    };

    let at = |k: usize| &vectors[k];
    let nrm = |k: usize| norms[k];
    let scl = |k: usize| scales[k];
    let mut pair = ExtremePair::single(first);
    let mut products = 0;
    for &p in rest {
        let (ext, used) = extend_counted(&pair, p, &at, &nrm, &scl, eps_nn);
        products += used;
        match ext {
            Extension::Pair(next) => pair = next,
            Extension::Obtuse { i, j } => return (QuadrantVerdict::Obtuse { i, j }, products),
        }
    }

    let rotation = Rotation2::aligning(&vectors[pair.i]).unwrap_or_else(Rotation2::identity);
    let fits = active.iter().all(|&k| {
        let img = rotation.apply(&vectors[k]);
        let floor = -eps_nn * scales[k];
        img[0] >= floor && img[1] >= floor
    });
    if fits {
        return (
            QuadrantVerdict::Embedded {
                rotation,
                pair: Some(pair),
            },
            products,
        );
    }
    // Accumulated rounding pushed some image out of the quadrant: report the
    // most obtuse pair instead.
    let (i, j) = most_obtuse_pair(vectors, &active, &norms);
    (QuadrantVerdict::Obtuse { i, j }, products)
}

fn most_obtuse_pair<T: Scalar>(vectors: &[Vec2<T>], active: &[usize], norms: &[T]) -> (usize, usize) {
    let mut best = (active[0], active[0]);
    let mut worst = T::infinity();
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            let c = dot(&vectors[i], &vectors[j]) / (norms[i] * norms[j]);
            if c < worst {
                worst = c;
                best = (i, j);
            }
        }
    }
    best
}

/// The rotation taking `vectors` into the nonnegative quadrant, or `None`
/// when two of them make an obtuse angle. Zero vectors are ignored.
pub fn embed_quadrant<T: Scalar>(vectors: &[Vec2<T>], tol: &Tolerances<T>) -> Option<Rotation2<T>> {
    let scales: Vec<T> = vectors.iter().map(norm).collect();
    match decide_quadrant(vectors, &scales, tol.eps_nn).0 {
        QuadrantVerdict::Embedded { rotation, .. } => Some(rotation),
        QuadrantVerdict::Obtuse { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn interior_vector_keeps_pair() {
        let vs = [[1.0, 0.0], [0.0, 1.0]];
        let pair = ExtremePair { i: 0, j: 1, cos_omega: 0.0 };
        let h = 0.5f64.sqrt();
        let ext = extend_extreme_pair(&pair, &vs, &[h, h], &tol()).unwrap();
        assert_eq!(ext, Extension::Pair(pair));
    }

    #[test]
    fn obtuse_projection_detected() {
        let r2 = 2f64.sqrt();
        let vs = [[2.0, 0.0], [1.0, r2]];
        let pair = ExtremePair { i: 0, j: 1, cos_omega: 1.0 / 3f64.sqrt() };
        let ext = extend_extreme_pair(&pair, &vs, &[1.0, -r2], &tol()).unwrap();
        assert_eq!(ext, Extension::Obtuse { i: 1, j: 2 });
    }

    #[test]
    fn wider_vector_replaces_second() {
        let h = 0.5f64.sqrt();
        let vs = [[1.0, 0.0], [h, h]];
        let pair = ExtremePair { i: 0, j: 1, cos_omega: h };
        match extend_extreme_pair(&pair, &vs, &[0.0, 1.0], &tol()).unwrap() {
            Extension::Pair(p) => {
                assert_eq!((p.i, p.j), (0, 2));
                assert!(p.cos_omega.abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vector_before_first_replaces_first() {
        let h = 0.5f64.sqrt();
        let vs = [[h, h], [0.0, 1.0]];
        let pair = ExtremePair { i: 0, j: 1, cos_omega: h };
        match extend_extreme_pair(&pair, &vs, &[1.0, 0.05], &tol()).unwrap() {
            Extension::Pair(p) => assert_eq!((p.i, p.j), (2, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_vector_is_an_error() {
        let pair = ExtremePair::single(0);
        assert_eq!(
            extend_extreme_pair(&pair, &[[1.0, 0.0]], &[0.0, 0.0], &tol()),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn step_uses_at_most_four_products() {
        let vs = [[1.0, 0.0], [0.3, 1.0], [0.5, 0.5]];
        let n = |k: usize| norm(&vs[k]);
        let at = |k: usize| &vs[k];
        let (_, used) = extend_counted(&ExtremePair::single(0), 1, &at, &n, &n, 1e-9);
        assert!(used <= 4);
        let (_, used) = extend_counted(&ExtremePair { i: 0, j: 1, cos_omega: 0.0 }, 2, &at, &n, &n, 1e-9);
        assert!(used <= 4);
    }

    #[test]
    fn basis_needs_no_rotation() {
        let q = embed_quadrant(&[[1.0, 0.0], [0.0, 1.0]], &tol()).unwrap();
        assert_eq!(q, Rotation2::identity());
    }

    #[test]
    fn diagonal_pair_rotates_by_minus_45_degrees() {
        let q = embed_quadrant(&[[1.0, 1.0], [-1.0, 1.0]], &tol()).unwrap();
        let r2 = 2f64.sqrt();
        let a = q.apply(&[1.0, 1.0]);
        let b = q.apply(&[-1.0, 1.0]);
        assert!((a[0] - r2).abs() < 1e-15 && a[1].abs() < 1e-15);
        assert!(b[0].abs() < 1e-15 && (b[1] - r2).abs() < 1e-15);
        assert!((q.sin - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn projected_half_octahedron_does_not_fit() {
        let r2 = 2f64.sqrt();
        assert!(embed_quadrant(&[[2.0, 0.0], [1.0, r2], [1.0, -r2]], &tol()).is_none());
    }

    #[test]
    fn zeros_and_empty_sets() {
        assert_eq!(embed_quadrant::<f64>(&[], &tol()), Some(Rotation2::identity()));
        let q = embed_quadrant(&[[0.0, 0.0], [0.0, -3.0]], &tol()).unwrap();
        let img = q.apply(&[0.0, -3.0]);
        assert!((img[0] - 3.0).abs() < 1e-15 && img[1].abs() < 1e-15);
    }

    #[test]
    fn right_angle_is_embeddable() {
        assert!(embed_quadrant(&[[1.0, 2.0], [-2.0, 1.0], [0.5, 1.5]], &tol()).is_some());
    }
}
