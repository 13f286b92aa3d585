//! Fincke-Pohst enumeration of shifted lattice points in a 4-dimensional ellipsoid.

use crate::majorant::{quad_form, Mat4};

/// Cholesky factor `L` with `Q = L Lᵀ`; `None` if `Q` is not positive definite.
pub fn cholesky(q: &Mat4) -> Option<Mat4> {
    let mut l = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = q[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (q[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

pub fn is_positive_definite(q: &Mat4) -> bool {
    cholesky(q).is_some()
}

pub fn min_eigenvalue(q: &Mat4) -> f64 {
    // Jacobi rotations; 4×4 symmetric
    let mut a = *q;
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for r in p + 1..4 {
                if a[p][r].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
            }
        }
    }
    (0..4).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub x: [i64; 4],
    /// `Q[x + u]`.
    pub norm: f64,
}

/// All `x ∈ ℤ⁴` with `Q[x + u] <= bound`, sorted by norm and then lexicographically.
pub fn enumerate(q: &Mat4, u: &[f64; 4], bound: f64) -> Vec<LatticePoint> {
    let l = cholesky(q).expect("form must be positive definite");
    // Q[y] = Σ_i d_i (y_i + Σ_{j>i} mu_ij y_j)^2
    let d: [f64; 4] = std::array::from_fn(|i| l[i][i] * l[i][i]);
    let mu: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| if j > i { l[j][i] / l[i][i] } else { 0.0 }));
    let mut out = Vec::new();
    let mut x = [0i64; 4];
    let slack = 1e-9 * (1.0 + bound);
    recurse(3, bound + slack, &d, &mu, u, &mut x, &mut out);
    for p in &mut out {
        let y: [f64; 4] = std::array::from_fn(|i| p.x[i] as f64 + u[i]);
        p.norm = quad_form(q, &y);
    }
    out.retain(|p| p.norm <= bound);
    out.sort_by(|a, b| a.norm.total_cmp(&b.norm).then(a.x.cmp(&b.x)));
    out
}

fn recurse(
    i: usize,
    budget: f64,
    d: &[f64; 4],
    mu: &Mat4,
    u: &[f64; 4],
    x: &mut [i64; 4],
    out: &mut Vec<LatticePoint>,
) {
    let c: f64 = -(i + 1..4).map(|j| mu[i][j] * (x[j] as f64 + u[j])).sum::<f64>();
    let r = (budget.max(0.0) / d[i]).sqrt();
    let lo = (c - u[i] - r).ceil() as i64;
    let hi = (c - u[i] + r).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let t = xi as f64 + u[i] - c;
        let rest = budget - d[i] * t * t;
        if rest < 0.0 {
            continue;
        }
        if i == 0 {
            out.push(LatticePoint { x: *x, norm: 0.0 });
        } else {
            recurse(i - 1, rest, d, mu, u, x, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_sum_of_four_squares() {
        let id: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64));
        let pts = enumerate(&id, &[0.0; 4], 2.0);
        // r4(0) + r4(1) + r4(2) = 1 + 8 + 24
        assert_eq!(pts.len(), 33);
        assert_eq!(pts[0].x, [0, 0, 0, 0]);
        let shifted = enumerate(&id, &[0.5; 4], 1.0);
        assert_eq!(shifted.len(), 16);
    }

    #[test]
    fn eigen_and_cholesky() {
        let q: Mat4 = [[2.0, 1.0, 0.0, 0.0], [1.0, 2.0, 0.0, 0.0], [0.0, 0.0, 5.0, 0.0], [0.0, 0.0, 0.0, 0.5]];
        assert!((min_eigenvalue(&q) - 0.5).abs() < 1e-12);
        assert!(is_positive_definite(&q));
        let mut bad = q;
        bad[3][3] = -1.0;
        assert!(!is_positive_definite(&bad));
    }
}
