//! Deciding whether a finite set in R³ can be isometrically mapped into the
//! nonnegative octant.
//!
//! The set embeds iff some unit `g` satisfies `UᵀU ≥ Uᵀg gᵀU ≥ 0`: all points
//! lie on one side of `g⊥` and their projections onto `g⊥` make no obtuse
//! angle. It suffices to try the normals of the planes through consecutive
//! vertices of the spherical hull of the directions, plus, as a shortcut,
//! the directions of points having an orthogonal partner.

use crate::embed2d::{decide_quadrant, QuadrantVerdict};
use crate::error::Result;
use crate::numerics::{cross, dot, norm, normalize, sym_eigen, Matrix, SymMatrix, Tolerances, Vec3};
use crate::scalar::Scalar;
use crate::sphere_hull::{hull_order, project_dedupe, UnitSet};

/// Where a candidate normal came from. Indices refer to the input points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    /// Normal of the plane through two hull-adjacent points.
    HullPair(usize, usize),
    /// Direction of a point that is orthogonal to some other point.
    Axis(usize),
    /// Normal of the plane containing every point (rank ≤ 2 input).
    PlaneNormal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<T> {
    pub g: Vec3<T>,
    pub source: CandidateSource,
}

/// Orthonormal basis of R³ stored by columns `f₁, f₂, f₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis<T> {
    pub columns: [Vec3<T>; 3],
}

impl<T: Scalar> Basis<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            columns: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    /// The 3×3 matrix `F` with the basis vectors as columns.
    pub fn matrix(&self) -> Matrix<T> {
        Matrix::from_columns(&self.columns)
    }

    /// Coordinates of `u` in this basis, `Fᵀu`.
    pub fn coords_of(&self, u: &Vec3<T>) -> Vec3<T> {
        self.columns.map(|f| dot(&f, u))
    }

    /// `Fᵀ U` as a 3×p matrix.
    pub fn coords(&self, points: &[Vec3<T>]) -> Matrix<T> {
        let cs: Vec<Vec3<T>> = points.iter().map(|u| self.coords_of(u)).collect();
        Matrix::from_columns(&cs)
    }

    /// `‖FᵀF − I‖_max`.
    pub fn orthonormality_residual(&self) -> T {
        let mut worst = T::zero();
        for a in 0..3 {
            for b in 0..3 {
                let target = if a == b { T::one() } else { T::zero() };
                worst = worst.max((dot(&self.columns[a], &self.columns[b]) - target).abs());
            }
        }
        worst
    }
}

/// Outcome of testing one candidate normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CandidateVerdict<T> {
    /// Both inequalities hold; `basis` has the candidate as `f₁`.
    Pass { basis: Basis<T> },
    /// Points `i` and `j` lie strictly on opposite sides of `g⊥`.
    HalfSpaceFail { i: usize, j: usize },
    /// The projections of points `i` and `j` onto `g⊥` make an obtuse angle.
    ProjectionObtuse { i: usize, j: usize },
    /// The planar step produced no rotation passing verification.
    Quadrant2DFail,
}

impl<T> CandidateVerdict<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateReport<T> {
    pub candidate: Candidate<T>,
    pub verdict: CandidateVerdict<T>,
    /// Inner products between projected vectors spent by the planar step.
    pub projected_inner_products: usize,
}

/// A verified embedding: `coords = Fᵀ U` over every input point.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<T> {
    pub basis: Basis<T>,
    pub coords: Matrix<T>,
    pub witness: Option<Candidate<T>>,
}

impl<T: Scalar> Embedding<T> {
    fn new(basis: Basis<T>, points: &[Vec3<T>], witness: Option<Candidate<T>>) -> Self {
        Self {
            coords: basis.coords(points),
            basis,
            witness,
        }
    }

    /// Smallest coordinate, `+∞` for no points.
    pub fn min_coord(&self) -> T {
        self.coords.min_entry()
    }
}

/// Exhaustive record of a negative verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedFailure<T> {
    /// One report per candidate, in the order they were tried.
    pub reports: Vec<CandidateReport<T>>,
    /// Set when two input points already make an obtuse angle; no candidate
    /// is tried in that case.
    pub gram_violation: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialReason {
    /// At most one direction after dropping zeros and merging multiples.
    SingleDirection,
    /// All points lie in a plane, which is then rotated onto the `e₁e₂` plane.
    Planar,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedResult<T> {
    Success(Embedding<T>),
    TriviallyEmbeddable {
        reason: TrivialReason,
        embedding: Embedding<T>,
    },
    Failure(EmbedFailure<T>),
}

impl<T: Scalar> EmbedResult<T> {
    pub fn embedding(&self) -> Option<&Embedding<T>> {
        match self {
            Self::Success(e) | Self::TriviallyEmbeddable { embedding: e, .. } => Some(e),
            Self::Failure(_) => None,
        }
    }

    pub fn is_embeddable(&self) -> bool {
        self.embedding().is_some()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Success(_) => "success",
            Self::TriviallyEmbeddable { .. } => "trivially_embeddable",
            Self::Failure(_) => "failure",
        }
    }
}

/// Norms of `points` and the threshold under which a point counts as zero.
fn norms_and_floor<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> (Vec<T>, T) {
    let norms: Vec<T> = points.iter().map(norm).collect();
    let max = norms.iter().fold(T::zero(), |m, &n| m.max(n));
    (norms, tol.eps_nn * max)
}

/// First pair `(i, j)`, `i < j`, with `u_iᵀu_j < -eps_nn ‖u_i‖‖u_j‖`.
pub fn gram_violation<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> Option<(usize, usize)> {
    let (norms, floor) = norms_and_floor(points, tol);
    let live: Vec<usize> = (0..points.len()).filter(|&k| norms[k] > floor).collect();
    for (a, &i) in live.iter().enumerate() {
        for &j in &live[a + 1..] {
            if dot(&points[i], &points[j]) < -tol.eps_nn * norms[i] * norms[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether no two points make an obtuse angle.
pub fn gram_nonneg<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> bool {
    gram_violation(points, tol).is_none()
}

fn fc1_from_units<T: Scalar>(us: &UnitSet<T>, tol: &Tolerances<T>) -> Vec<Candidate<T>> {
    let p = us.len();
    let mut seen = vec![false; p];
    let mut out = Vec::new();
    for i in 0..p {
        for j in (i + 1)..p {
            if dot(&us.units[i], &us.units[j]).abs() > tol.eps_nn {
                continue;
            }
            for k in [i, j] {
                if !seen[k] {
                    seen[k] = true;
                    out.push(Candidate {
                        g: us.units[k],
                        source: CandidateSource::Axis(us.representative(k)),
                    });
                }
            }
        }
    }
    out
}

/// Directions of points that have an orthogonal partner, each once, in order
/// of first appearance.
pub fn fc1_candidates<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> Vec<Candidate<T>> {
    fc1_from_units(&project_dedupe(points, tol), tol)
}

/// Unit normal of `span(a, b)` oriented towards the bulk of `units`. When
/// every unit lies in the plane, the largest component is made positive.
fn oriented_normal<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>, units: &[Vec3<T>]) -> Option<Vec3<T>> {
    let g = normalize(&cross(a, b))?;
    let side = units.iter().fold(T::zero(), |acc, u| acc + dot(&g, u));
    let flat = side.abs() <= T::epsilon() * T::lit(64.0) * T::lit(units.len() as f64);
    let flip = if flat {
        let big = g.iter().copied().fold(T::zero(), |m, x| if x.abs() > m.abs() { x } else { m });
        big < T::zero()
    } else {
        side < T::zero()
    };
    Some(if flip { g.map(|x| -x) } else { g })
}

fn fc2_from_units<T: Scalar>(us: &UnitSet<T>, tol: &Tolerances<T>) -> Result<Vec<Candidate<T>>> {
    let hull = hull_order(us, tol)?;
    Ok(hull
        .adjacent_pairs()
        .into_iter()
        .filter_map(|(a, b)| {
            let g = oriented_normal(&us.units[a], &us.units[b], &us.units)?;
            Some(Candidate {
                g,
                source: CandidateSource::HullPair(us.representative(a), us.representative(b)),
            })
        })
        .collect())
}

/// Normals of the planes through consecutive hull vertices, one per hull
/// edge, each oriented so that `Σ_k gᵀu_k ≥ 0` over the unit directions.
///
/// Expects no obtuse pair; fails with
/// [`Error::DegenerateHull`](crate::Error::DegenerateHull) otherwise.
pub fn fc2_candidates<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> Result<Vec<Candidate<T>>> {
    fc2_from_units(&project_dedupe(points, tol), tol)
}

/// Completes unit `g` to an orthonormal frame: Gram–Schmidt of the two
/// standard axes least aligned with `g`.
pub fn complement_frame<T: Scalar>(g: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let mut axes = [0usize, 1, 2];
    axes.sort_by(|&a, &b| g[a].abs().partial_cmp(&g[b].abs()).unwrap_or(std::cmp::Ordering::Equal));
    let axis = |k: usize| -> Vec3<T> { std::array::from_fn(|i| if i == k { T::one() } else { T::zero() }) };
    let reject = |v: Vec3<T>, d: &Vec3<T>| {
        let c = dot(&v, d);
        [v[0] - c * d[0], v[1] - c * d[1], v[2] - c * d[2]]
    };
    let h2 = normalize(&reject(axis(axes[0]), g)).expect("least aligned axis is not parallel to g");
    let h3 = normalize(&reject(reject(axis(axes[1]), g), &h2)).unwrap_or_else(|| cross(g, &h2));
    (h2, h3)
}

/// Tests one candidate normal against both inequalities.
///
/// `g` is first oriented so that the normalized heights `gᵀu_k/‖u_k‖` sum to
/// a nonnegative value. Points of norm at most `eps_nn` times the largest norm
/// are treated as zero. On success the report carries `F = [g | f₂ f₃]`.
pub fn check_candidate<T: Scalar>(
    candidate: &Candidate<T>,
    points: &[Vec3<T>],
    tol: &Tolerances<T>,
) -> CandidateReport<T> {
    let (norms, floor) = norms_and_floor(points, tol);
    let live: Vec<usize> = (0..points.len()).filter(|&k| norms[k] > floor).collect();
    let report = |verdict, used| CandidateReport {
        candidate: *candidate,
        verdict,
        projected_inner_products: used,
    };

    let mut g = normalize(&candidate.g).unwrap_or(candidate.g);
    let mut heights: Vec<T> = points.iter().map(|u| dot(&g, u)).collect();
    let side = live.iter().fold(T::zero(), |acc, &k| acc + heights[k] / norms[k]);
    if side < T::zero() {
        g = g.map(|x| -x);
        heights.iter_mut().for_each(|h| *h = -*h);
    }

    // right inequality: every height nonnegative
    let lowest = live
        .iter()
        .copied()
        .min_by(|&a, &b| {
            (heights[a] / norms[a])
                .partial_cmp(&(heights[b] / norms[b]))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
    if let Some(j) = lowest {
        if heights[j] < -tol.eps_nn * norms[j] {
            let i = live
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    (heights[a] / norms[a])
                        .partial_cmp(&(heights[b] / norms[b]))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(j);
            return report(CandidateVerdict::HalfSpaceFail { i: i.min(j), j: i.max(j) }, 0);
        }
    }

    // left inequality: projected angles, decided in the plane g⊥
    let (h2, h3) = complement_frame(&g);
    let planar: Vec<[T; 2]> = points
        .iter()
        .enumerate()
        .map(|(k, u)| {
            if norms[k] > floor {
                [dot(&h2, u), dot(&h3, u)]
            } else {
                [T::zero(); 2]
            }
        })
        .collect();
    let (verdict, used) = decide_quadrant(&planar, &norms, tol.eps_nn);
    let rotation = match verdict {
        QuadrantVerdict::Obtuse { i, j } => {
            return report(CandidateVerdict::ProjectionObtuse { i, j }, used);
        }
        QuadrantVerdict::Embedded { rotation, .. } => rotation,
    };
    let (c, s) = (rotation.cos, rotation.sin);
    let f2 = std::array::from_fn(|k| c * h2[k] + s * h3[k]);
    let f3 = std::array::from_fn(|k| -s * h2[k] + c * h3[k]);
    let basis = Basis { columns: [g, f2, f3] };
    if verify_basis(&basis, points, tol) {
        report(CandidateVerdict::Pass { basis }, used)
    } else {
        report(CandidateVerdict::Quadrant2DFail, used)
    }
}

/// `‖FᵀF − I‖_max ≤ eps_orth` and `min(FᵀU) ≥ -eps_nn · max‖u‖`.
pub fn verify_basis<T: Scalar>(basis: &Basis<T>, points: &[Vec3<T>], tol: &Tolerances<T>) -> bool {
    let (_, floor) = norms_and_floor(points, tol);
    basis.orthonormality_residual() <= tol.eps_orth
        && points
            .iter()
            .all(|u| basis.coords_of(u).iter().all(|&x| x >= -floor))
}

/// Basis with `f₁` along the single direction `u`.
fn frame_along<T: Scalar>(u: &Vec3<T>) -> Basis<T> {
    let (h2, h3) = complement_frame(u);
    Basis { columns: [*u, h2, h3] }
}

/// Normal of the best-fit plane through the units when they are coplanar.
fn plane_normal<T: Scalar>(units: &[Vec3<T>], tol: &Tolerances<T>) -> Option<Vec3<T>> {
    let scatter = SymMatrix::from_fn(3, |a, b| units.iter().fold(T::zero(), |acc, u| acc + u[a] * u[b]));
    let eig = sym_eigen(&scatter).ok()?;
    if eig.values[2] > tol.eps_rank * eig.values[0] {
        return None;
    }
    let n = eig.vector(2);
    normalize(&[n[0], n[1], n[2]])
}

/// Every pair normal, used only if the hull cannot be formed.
fn all_pair_candidates<T: Scalar>(us: &UnitSet<T>) -> Vec<Candidate<T>> {
    let mut out = Vec::new();
    for a in 0..us.len() {
        for b in (a + 1)..us.len() {
            if let Some(g) = oriented_normal(&us.units[a], &us.units[b], &us.units) {
                out.push(Candidate {
                    g,
                    source: CandidateSource::HullPair(us.representative(a), us.representative(b)),
                });
            }
        }
    }
    out
}

/// Decides whether `points` embed isometrically into the nonnegative octant.
///
/// Zeros are dropped and positive multiples merged. A single direction, or a
/// coplanar set without obtuse pairs, is trivially embeddable. Otherwise the
/// axis candidates are tried first and then one normal per hull edge; the
/// first candidate that passes yields the basis, and if none does every
/// report is returned. Coordinates always cover all input points.
pub fn embed_octant<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> EmbedResult<T> {
    if let Some(pair) = gram_violation(points, tol) {
        return EmbedResult::Failure(EmbedFailure {
            reports: Vec::new(),
            gram_violation: Some(pair),
        });
    }
    let us = project_dedupe(points, tol);
    if us.len() <= 1 {
        let basis = us.units.first().map_or_else(Basis::identity, frame_along);
        return EmbedResult::TriviallyEmbeddable {
            reason: TrivialReason::SingleDirection,
            embedding: Embedding::new(basis, points, None),
        };
    }

    if let Some(n) = plane_normal(&us.units, tol) {
        let candidate = Candidate {
            g: n,
            source: CandidateSource::PlaneNormal,
        };
        let report = check_candidate(&candidate, points, tol);
        return match report.verdict {
            CandidateVerdict::Pass { basis } => {
                // move the plane onto e₁e₂: F = [f₂ f₃ g]
                let [g, f2, f3] = basis.columns;
                let planar = Basis { columns: [f2, f3, g] };
                EmbedResult::TriviallyEmbeddable {
                    reason: TrivialReason::Planar,
                    embedding: Embedding::new(planar, points, Some(candidate)),
                }
            }
            _ => EmbedResult::Failure(EmbedFailure {
                reports: vec![report],
                gram_violation: None,
            }),
        };
    }

    let mut candidates = fc1_from_units(&us, tol);
    match fc2_from_units(&us, tol) {
        Ok(c) => candidates.extend(c),
        Err(_) => candidates.extend(all_pair_candidates(&us)),
    }

    let mut reports = Vec::with_capacity(candidates.len());
    for candidate in &candidates {
        let report = check_candidate(candidate, points, tol);
        if let CandidateVerdict::Pass { basis } = report.verdict {
            let witness = Candidate {
                g: basis.columns[0],
                source: candidate.source,
            };
            return EmbedResult::Success(Embedding::new(basis, points, Some(witness)));
        }
        reports.push(report);
    }
    EmbedResult::Failure(EmbedFailure {
        reports,
        gram_violation: None,
    })
}
