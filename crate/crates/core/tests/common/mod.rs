//! Random generators and a brute-force rotation search shared by the
//! integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type V3 = [f64; 3];
pub type M3 = [[f64; 3]; 3];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn mat_vec(m: &M3, v: &V3) -> V3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul(a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn rot_x(t: f64) -> M3 {
    let (s, c) = t.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
}

pub fn rot_y(t: f64) -> M3 {
    let (s, c) = t.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub fn rot_z(t: f64) -> M3 {
    let (s, c) = t.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

/// Uniformly distributed rotation from a random unit quaternion.
pub fn random_rotation(r: &mut impl Rng) -> M3 {
    let q = loop {
        let q: [f64; 4] = std::array::from_fn(|_| r.gen_range(-1.0..1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break q.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

pub fn random_reflection_or_rotation(r: &mut impl Rng) -> M3 {
    let mut m = random_rotation(r);
    if r.gen_bool(0.5) {
        m[2] = m[2].map(|x| -x);
    }
    m
}

pub fn rotate_all(m: &M3, pts: &[V3]) -> Vec<V3> {
    pts.iter().map(|u| mat_vec(m, u)).collect()
}

/// Nonnegative points; each coordinate is zeroed with probability `zero_p`.
pub fn octant_points(r: &mut impl Rng, p: usize, zero_p: f64) -> Vec<V3> {
    (0..p)
        .map(|_| loop {
            let u: V3 = std::array::from_fn(|_| if r.gen_bool(zero_p) { 0.0 } else { r.gen_range(0.0..1.0) });
            if norm(&u) > 1e-3 {
                break u;
            }
        })
        .collect()
}

/// Points with directions uniform in the spherical cap of half-angle `theta`
/// around a random axis, with random lengths.
pub fn cap_points(r: &mut impl Rng, p: usize, theta: f64) -> Vec<V3> {
    let m = random_rotation(r);
    let cmin = theta.cos();
    (0..p)
        .map(|_| {
            let z: f64 = r.gen_range(cmin..=1.0);
            let phi: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - z * z).max(0.0).sqrt();
            let len = r.gen_range(0.2..3.0);
            mat_vec(&m, &[len * s * phi.cos(), len * s * phi.sin(), len * z])
        })
        .collect()
}

pub fn gram_nonneg(pts: &[V3]) -> bool {
    pts.iter()
        .enumerate()
        .all(|(i, a)| pts[i + 1..].iter().all(|b| dot(a, b) >= -1e-12 * norm(a) * norm(b)))
}

fn unit_points(pts: &[V3]) -> Vec<V3> {
    pts.iter()
        .filter(|u| norm(u) > 0.0)
        .map(|u| {
            let n = norm(u);
            u.map(|x| x / n)
        })
        .collect()
}

/// Smallest coordinate of `R u / |u|` over the units.
pub fn score(m: &M3, units: &[V3]) -> f64 {
    units
        .iter()
        .map(|u| {
            let v = mat_vec(m, u);
            v[0].min(v[1]).min(v[2])
        })
        .fold(f64::INFINITY, f64::min)
}

/// Verdict of the rotation search.
#[derive(Debug, Clone, Copy)]
pub enum OracleVerdict {
    /// A rotation with score at least `-slack`.
    Affirmative { score: f64, rotation: M3 },
    /// Every rotation scores below `-slack`.
    Negative,
    /// Budget exhausted; `best` is the best score seen.
    Undecided { best: f64 },
}

impl OracleVerdict {
    pub fn is_affirmative(&self) -> bool {
        matches!(self, Self::Affirmative { .. })
    }
}

/// Box of Euler angles `center ± half` in every coordinate with an upper
/// bound on the score of every rotation inside.
#[derive(Debug, Clone, Copy)]
struct Cell {
    ub: f64,
    center: [f64; 3],
    half: f64,
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.ub.total_cmp(&o.ub).is_eq()
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.ub.total_cmp(&o.ub)
    }
}

/// Does some rotation `R` give `min_k min_i (R u_k)_i / |u_k| ≥ −slack`?
///
/// Scans `R = Rz(γ) Ry(β) Rz(α)` on a grid of `step_deg` degrees, then runs
/// best-first branch and bound on boxes of Euler angles. Moving the three
/// angles by `(δα, δβ, δγ)` moves `R` by a rotation of angle at most
/// `|δα| + |δβ| + |δγ|`, which bounds the change of every unit coordinate,
/// so a box whose centre scores `s` contains no rotation scoring above
/// `s + 3·half`.
pub fn rotation_oracle(pts: &[V3], step_deg: f64, slack: f64, budget: usize) -> OracleVerdict {
    let units = unit_points(pts);
    if units.is_empty() {
        return OracleVerdict::Affirmative {
            score: f64::INFINITY,
            rotation: rot_z(0.0),
        };
    }
    let step = step_deg.to_radians();
    let na = (360.0 / step_deg).round() as usize;
    let nb = (180.0 / step_deg).round() as usize;
    let trig: Vec<(f64, f64)> = (0..na).map(|k| (k as f64 * step).sin_cos()).collect();
    let slop = 1.5 * step;
    let mut heap = std::collections::BinaryHeap::new();
    let mut best = f64::NEG_INFINITY;
    let mut w = vec![[0.0; 3]; units.len()];

    for (ia, &(sa, ca)) in trig.iter().enumerate() {
        for ib in 0..=nb {
            let (sb, cb) = (ib as f64 * step).sin_cos();
            let mut hmin = f64::INFINITY;
            for (k, u) in units.iter().enumerate() {
                // Ry(β) Rz(α) u
                let x = ca * u[0] - sa * u[1];
                let y = sa * u[0] + ca * u[1];
                w[k] = [cb * x + sb * u[2], y, -sb * x + cb * u[2]];
                hmin = hmin.min(w[k][2]);
            }
            if hmin + slop < -slack {
                continue;
            }
            for (ig, &(sg, cg)) in trig.iter().enumerate() {
                let mut s = hmin;
                for wk in &w {
                    s = s.min(cg * wk[0] - sg * wk[1]).min(sg * wk[0] + cg * wk[1]);
                    if s + slop < -slack {
                        break;
                    }
                }
                if s + slop < -slack {
                    continue;
                }
                let center = [ia as f64 * step, ib as f64 * step, ig as f64 * step];
                if s >= -slack {
                    return OracleVerdict::Affirmative {
                        score: s,
                        rotation: euler(center),
                    };
                }
                best = best.max(s);
                heap.push(Cell {
                    ub: s + slop,
                    center,
                    half: step / 2.0,
                });
            }
        }
    }

    let mut evaluations = 0;
    while let Some(cell) = heap.pop() {
        if evaluations >= budget {
            return OracleVerdict::Undecided { best };
        }
        let h = cell.half / 2.0;
        for corner in 0..8 {
            let center: [f64; 3] =
                std::array::from_fn(|d| cell.center[d] + if corner >> d & 1 == 1 { h } else { -h });
            let rot = euler(center);
            let s = score(&rot, &units);
            evaluations += 1;
            if s >= -slack {
                return OracleVerdict::Affirmative { score: s, rotation: rot };
            }
            best = best.max(s);
            if s + 3.0 * h >= -slack {
                heap.push(Cell {
                    ub: s + 3.0 * h,
                    center,
                    half: h,
                });
            }
        }
    }
    OracleVerdict::Negative
}

fn euler([a, b, g]: [f64; 3]) -> M3 {
    mat_mul(&rot_z(g), &mat_mul(&rot_y(b), &rot_z(a)))
}

pub fn axis_angle(k: &V3, t: f64) -> M3 {
    let (s, c) = t.sin_cos();
    let v = 1.0 - c;
    let [x, y, z] = *k;
    [
        [c + x * x * v, x * y * v - z * s, x * z * v + y * s],
        [y * x * v + z * s, c + y * y * v, y * z * v - x * s],
        [z * x * v - y * s, z * y * v + x * s, c + z * z * v],
    ]
}

/// Random `n × k` matrix with entries in `[0, 1)`.
pub fn nonneg_factor(r: &mut impl Rng, n: usize, k: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..k).map(|_| r.gen_range(0.0..1.0)).collect()).collect()
}

pub fn gram_of_rows(b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    b.iter()
        .map(|x| b.iter().map(|y| x.iter().zip(y).map(|(p, q)| p * q).sum()).collect())
        .collect()
}

/// Smallest eigenvalue of a symmetric 3×3 matrix via the trigonometric
/// formula for the characteristic cubic.
pub fn min_eig3(a: &M3) -> f64 {
    let p1 = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return q;
    }
    let b: M3 = std::array::from_fn(|i| {
        std::array::from_fn(|j| (a[i][j] - if i == j { q } else { 0.0 }) / p)
    });
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos()
}
