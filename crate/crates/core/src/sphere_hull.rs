//! Directions on S² and the cyclic vertex order of their spherical convex hull.
//!
//! Points inside an open hemisphere are sent by central (gnomonic) projection
//! onto the tangent plane at the hemisphere's pole. Great circles become
//! straight lines there, so the planar hull computed by Andrew's monotone
//! chain lists the spherical hull vertices in traversal order.

use crate::error::{Error, Result};
use crate::numerics::{cross, dot, norm, normalize, Tolerances, Vec3};
use crate::scalar::Scalar;

/// Unit directions with bookkeeping back to the input indices.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSet<T> {
    pub units: Vec<Vec3<T>>,
    /// Input indices merged into each unit, ascending.
    pub origin_index: Vec<Vec<usize>>,
    /// Input indices of vectors treated as zero.
    pub dropped_zeros: Vec<usize>,
}

impl<T: Scalar> UnitSet<T> {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// First input index of unit `k`.
    pub fn representative(&self, k: usize) -> usize {
        self.origin_index[k][0]
    }
}

/// Cyclic list of hull vertices, as indices into [`UnitSet::units`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullOrder {
    pub vertex_indices: Vec<usize>,
}

impl HullOrder {
    pub fn len(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_indices.is_empty()
    }

    /// Consecutive vertex pairs `(k_j, k_{j+1})` including the wrap-around;
    /// a single pair for two vertices and none for one.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let v = &self.vertex_indices;
        match v.len() {
            0 | 1 => Vec::new(),
            2 => vec![(v[0], v[1])],
            m => (0..m).map(|j| (v[j], v[(j + 1) % m])).collect(),
        }
    }
}

/// Normalizes `points`, dropping zeros and merging positive multiples.
///
/// A point counts as zero when its norm is at most `eps_nn` times the largest
/// norm. Two directions merge when they are within `eps_dedup` radians;
/// antiparallel directions stay distinct.
pub fn project_dedupe<T: Scalar>(points: &[Vec3<T>], tol: &Tolerances<T>) -> UnitSet<T> {
    let norms: Vec<T> = points.iter().map(norm).collect();
    let max_norm = norms.iter().fold(T::zero(), |m, &n| m.max(n));
    let zero_floor = tol.eps_nn * max_norm;
    // chord length 2 sin(θ/2) for the merge angle
    let chord = T::lit(2.0) * (tol.eps_dedup / T::lit(2.0)).sin();

    let mut set = UnitSet {
        units: Vec::new(),
        origin_index: Vec::new(),
        dropped_zeros: Vec::new(),
    };
    for (idx, p) in points.iter().enumerate() {
        if norms[idx] <= zero_floor || norms[idx] == T::zero() {
            set.dropped_zeros.push(idx);
            continue;
        }
        let Some(u) = normalize(p) else {
            set.dropped_zeros.push(idx);
            continue;
        };
        let hit = set.units.iter().position(|v| {
            let d = [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
            norm(&d) <= chord
        });
        match hit {
            Some(k) => set.origin_index[k].push(idx),
            None => {
                set.units.push(u);
                set.origin_index.push(vec![idx]);
            }
        }
    }
    set
}

/// Orthonormal `(t₁, t₂)` completing `c` to an orthonormal frame.
pub(crate) fn tangent_frame<T: Scalar>(c: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    // Seed with the axis least aligned with c.
    let k = (0..3)
        .min_by(|&a, &b| c[a].abs().partial_cmp(&c[b].abs()).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap_or(0);
    let mut e = [T::zero(); 3];
    e[k] = T::one();
    let t1 = normalize(&cross(c, &e)).unwrap_or([T::one(), T::zero(), T::zero()]);
    let t2 = cross(c, &t1);
    (t1, t2)
}

/// Hull vertices of `us` in counterclockwise order around the mean direction.
///
/// Requires every unit to lie strictly inside the hemisphere centred at the
/// normalized sum, which holds whenever no pair is obtuse; otherwise returns
/// [`Error::DegenerateHull`]. Collinear boundary points are not vertices.
pub fn hull_order<T: Scalar>(us: &UnitSet<T>, _tol: &Tolerances<T>) -> Result<HullOrder> {
    let units = &us.units;
    match units.len() {
        0 => return Ok(HullOrder { vertex_indices: vec![] }),
        1 => return Ok(HullOrder { vertex_indices: vec![0] }),
        _ => {}
    }
    let sum = units
        .iter()
        .fold([T::zero(); 3], |acc, u| [acc[0] + u[0], acc[1] + u[1], acc[2] + u[2]]);
    let center = normalize(&sum).ok_or(Error::DegenerateHull)?;
    let (t1, t2) = tangent_frame(&center);

    let mut planar = Vec::with_capacity(units.len());
    for (k, u) in units.iter().enumerate() {
        let h = dot(u, &center);
        if h.is_nan() || h <= T::zero() {
            return Err(Error::DegenerateHull);
        }
        planar.push(([dot(u, &t1) / h, dot(u, &t2) / h], k));
    }
    Ok(HullOrder {
        vertex_indices: monotone_chain(planar),
    })
}

fn turn<T: Scalar>(o: &[T; 2], a: &[T; 2], b: &[T; 2]) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; returns the labels of strict hull vertices in
/// counterclockwise order.
fn monotone_chain<T: Scalar>(mut pts: Vec<([T; 2], usize)>) -> Vec<usize> {
    pts.sort_by(|(a, _), (b, _)| {
        a[0].partial_cmp(&b[0])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a[1].partial_cmp(&b[1]).unwrap_or(std::cmp::Ordering::Equal))
    });
    pts.dedup_by(|(a, _), (b, _)| a == b);
    if pts.len() <= 2 {
        return pts.into_iter().map(|(_, k)| k).collect();
    }

    let mut hull: Vec<([T; 2], usize)> = Vec::with_capacity(2 * pts.len());
    for p in &pts {
        while hull.len() >= 2 && turn(&hull[hull.len() - 2].0, &hull[hull.len() - 1].0, &p.0) <= T::zero() {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(&hull[hull.len() - 2].0, &hull[hull.len() - 1].0, &p.0) <= T::zero() {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    hull.into_iter().map(|(_, k)| k).collect()
}
