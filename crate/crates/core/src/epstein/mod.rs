//! Epstein zeta functions with characteristics over positive definite 4×4 forms.
//!
//! `ζ(s, u, v, Q) = Σ_{λ+u≠0} e^{2πi v·λ} Q[λ+u]^{-s}` with shift `u` and phase `v`;
//! the completed function is `ζ*(s, u, v, Q) = π^{-s} Γ(s) ζ(s, u, v, Q)`.

pub mod lattice;
pub mod periodic;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::majorant::{det4, inv4, Mat4};
use crate::special::{gamma, scaled_upper_gamma};
pub use lattice::{cholesky, enumerate, is_positive_definite, min_eigenvalue, LatticePoint};
pub use periodic::{periodic_completed, shortest_nonzero, PeriodicMode, PeriodicWeight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EpsteinError {
    #[error("form is not positive definite")]
    NotPositive,
    #[error("direct series diverges for Re(s) = {0} <= 2")]
    Divergent(f64),
    #[error("s = {0} is a pole")]
    Pole(Complex64),
    #[error("tail bound {0:e} exceeds tolerance {1:e}")]
    TailTooLarge(f64, f64),
    #[error("enumeration would need about {0:e} lattice points")]
    TooManyPoints(f64),
}

/// Cutoff on `π A[y]` for the incomplete-gamma sums: `x^{-1} e^{-x}` is below `1e-19` there.
pub(crate) const GAMMA_CUTOFF: f64 = 42.0;
pub(crate) const MAX_POINTS: f64 = 6.0e7;

#[derive(Debug, Clone, PartialEq)]
pub struct EpsteinParams {
    pub q: Mat4,
    pub u: [f64; 4],
    pub v: [f64; 4],
    pub s: Complex64,
    /// Radius `R` of the truncation `Q[λ+u] <= R²`; chosen automatically when `None`.
    pub truncation_radius: Option<f64>,
    /// Working precision in bits; only 53 is supported.
    pub precision: u32,
}

impl EpsteinParams {
    pub fn new(q: Mat4, u: [f64; 4], v: [f64; 4], s: Complex64) -> Self {
        Self { q, u, v, s, truncation_radius: None, precision: 53 }
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.truncation_radius = Some(r);
        self
    }

    fn check(&self) -> Result<(), EpsteinError> {
        if !is_positive_definite(&self.q) {
            return Err(EpsteinError::NotPositive);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsteinValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirectMode {
    /// Plain truncation `Q[λ+u] <= R²` with an asymptotic tail estimate.
    Plain,
    /// Incomplete-gamma smoothing with the exact analytic correction; the neglected
    /// dual-side mass is the reported tail.
    #[default]
    Smoothed,
}

pub(crate) fn is_integral(x: &[f64; 4]) -> bool {
    x.iter().all(|t| (t - t.round()).abs() < 1e-12)
}

pub(crate) fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (0..4).map(|i| a[i] * b[i]).sum()
}

/// `e^{2πi t}`, reducing `t` mod 1 first.
pub(crate) fn e(t: f64) -> Complex64 {
    let t = t - t.floor();
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

pub(crate) fn scale_form(q: &Mat4, c: f64) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| c * q[i][j]))
}

pub(crate) fn estimated_points(q: &Mat4, bound: f64) -> f64 {
    // volume of the 4-ball of radius sqrt(bound) in the metric Q
    PI * PI / 2.0 * bound * bound / det4(q).sqrt() + 1.0
}

/// `Σ_{points} weight(x) · G(a, π A[x+u])` in the deterministic shell order.
pub(crate) fn gamma_sum<F>(pts: &[LatticePoint], a: Complex64, skip: Option<[i64; 4]>, weight: F) -> Complex64
where
    F: Fn(&[i64; 4]) -> Complex64 + Sync,
{
    let terms: Vec<Complex64> = pts
        .par_iter()
        .map(|p| {
            if Some(p.x) == skip || p.norm <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let w = weight(&p.x);
            if w == Complex64::new(0.0, 0.0) {
                return w;
            }
            w * scaled_upper_gamma(a, PI * p.norm)
        })
        .collect();
    terms.iter().sum()
}

fn nearest_int(u: &[f64; 4]) -> [i64; 4] {
    std::array::from_fn(|i| u[i].round() as i64)
}

/// Completed `ζ*(s, u, v, Q)` by theta splitting at the balanced scale `det(Q)^{-1/4}`.
pub fn epstein_continued(params: &EpsteinParams) -> Result<EpsteinValue, EpsteinError> {
    params.check()?;
    let EpsteinParams { q, u, v, s, .. } = params;
    let u_int = is_integral(u);
    let v_int = is_integral(v);
    let one = Complex64::new(1.0, 0.0);
    if (v_int && (s - 2.0).norm() < 1e-12) || (u_int && s.norm() < 1e-12) {
        return Err(EpsteinError::Pole(*s));
    }
    let c = det4(q).powf(-0.25);
    let a = scale_form(q, c);
    let ai = inv4(&a);
    let det_a = det4(&a);
    let bound = (GAMMA_CUTOFF + 2.0 * s.re.abs()) / PI;
    let est = estimated_points(&a, bound) + estimated_points(&ai, bound);
    if est > MAX_POINTS {
        return Err(EpsteinError::TooManyPoints(est));
    }

    let direct_pts = enumerate(&a, u, bound);
    let skip = if u_int { Some(nearest_int(u).map(|t| -t)) } else { None };
    let direct = gamma_sum(&direct_pts, *s, skip, |x| {
        let xf = x.map(|t| t as f64);
        e(dot(v, &xf))
    });

    // dual lattice: μ − v with μ ∈ ℤ⁴
    let mv = v.map(|t| -t);
    let dual_pts = enumerate(&ai, &mv, bound);
    let skip_dual = if v_int { Some(nearest_int(v)) } else { None };
    let dual = gamma_sum(&dual_pts, 2.0 - s, skip_dual, |mu| {
        let y: [f64; 4] = std::array::from_fn(|i| mu[i] as f64 - v[i]);
        e(dot(&y, u))
    }) / det_a.sqrt();

    let mut total = direct + dual;
    if v_int {
        total += one / (det_a.sqrt() * (s - 2.0));
    }
    if u_int {
        total -= e(-dot(v, u)) / s;
    }
    // ζ*(s; Q) = c^s ζ*(s; cQ)
    let value = total * (s * c.ln()).exp();
    let tail = tail_estimate(bound, *s, det_a) * (s.re * c.ln()).exp();
    Ok(EpsteinValue { value, tail_bound: tail, terms_used: direct_pts.len() + dual_pts.len() })
}

pub(crate) fn tail_estimate(bound: f64, s: Complex64, det_a: f64) -> f64 {
    // shell density π² T / sqrt(det) times the term size e^{-πT}/(πT), both sides
    let x = PI * bound;
    let shells = PI * PI * bound / det_a.sqrt().min(1.0) + 1.0;
    shells * (-x).exp() * (1.0 + s.norm())
}

/// Uncompleted `ζ(s, u, v, Q)` for `Re(s) > 2`.
pub fn epstein_direct(params: &EpsteinParams, mode: DirectMode) -> Result<EpsteinValue, EpsteinError> {
    params.check()?;
    let s = params.s;
    if s.re <= 2.0 {
        return Err(EpsteinError::Divergent(s.re));
    }
    match mode {
        DirectMode::Plain => direct_plain(params),
        DirectMode::Smoothed => direct_smoothed(params),
    }
}

/// `π^{-s} Γ(s) ζ(s, u, v, Q)` from the direct series.
pub fn epstein_direct_completed(params: &EpsteinParams, mode: DirectMode) -> Result<EpsteinValue, EpsteinError> {
    let r = epstein_direct(params, mode)?;
    let s = params.s;
    let f = (-s * PI.ln()).exp() * gamma(s);
    Ok(EpsteinValue { value: r.value * f, tail_bound: r.tail_bound * f.norm(), ..r })
}

fn direct_plain(params: &EpsteinParams) -> Result<EpsteinValue, EpsteinError> {
    let EpsteinParams { q, u, v, s, .. } = params;
    let r = params.truncation_radius.unwrap_or(12.0);
    let bound = r * r;
    let est = estimated_points(q, bound);
    if est > MAX_POINTS {
        return Err(EpsteinError::TooManyPoints(est));
    }
    let pts = enumerate(q, u, bound);
    let skip = is_integral(u).then(|| nearest_int(u).map(|t| -t));
    let terms: Vec<Complex64> = pts
        .par_iter()
        .map(|p| {
            if Some(p.x) == skip || p.norm <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xf = p.x.map(|t| t as f64);
            e(dot(v, &xf)) * (-s * p.norm.ln()).exp()
        })
        .collect();
    let value: Complex64 = terms.iter().sum();
    // ∫_{R²}^∞ π² T det^{-1/2} T^{-σ} dT
    let tail = PI * PI / det4(q).sqrt() * bound.powf(2.0 - s.re) / (s.re - 2.0);
    Ok(EpsteinValue { value, tail_bound: tail, terms_used: pts.len() })
}

/// Smallest `Q⁻¹[μ − v]` over `μ ∈ ℤ⁴` with `μ ≠ v`.
fn dual_minimum(qi: &Mat4, v: &[f64; 4]) -> f64 {
    let mv = v.map(|t| -t);
    let skip = is_integral(v).then(|| nearest_int(v));
    let mut bound = min_eigenvalue(qi).max(1e-300) * 1.0001;
    loop {
        let pts = enumerate(qi, &mv, bound);
        if let Some(p) = pts.iter().find(|p| Some(p.x) != skip && p.norm > 1e-24) {
            return p.norm;
        }
        bound *= 2.0;
    }
}

fn direct_smoothed(params: &EpsteinParams) -> Result<EpsteinValue, EpsteinError> {
    let EpsteinParams { q, u, v, s, .. } = params;
    let s = *s;
    let qi = inv4(q);
    let det_q = det4(q);
    // t ≥ a gives the direct incomplete-gamma part; the dual part lives at t < a and is
    // suppressed by e^{-π d_min / a}
    let d_min = dual_minimum(&qi, v);
    let a = PI * d_min / (GAMMA_CUTOFF - 6.0);
    let bound = match params.truncation_radius {
        Some(r) => r * r,
        None => (GAMMA_CUTOFF + 2.0 * s.re.abs()) / (PI * a),
    };
    let est = estimated_points(q, bound);
    if est > MAX_POINTS {
        return Err(EpsteinError::TooManyPoints(est));
    }
    let pts = enumerate(q, u, bound);
    let u_int = is_integral(u);
    let v_int = is_integral(v);
    let skip = u_int.then(|| nearest_int(u).map(|t| -t));
    let terms: Vec<Complex64> = pts
        .par_iter()
        .map(|p| {
            if Some(p.x) == skip || p.norm <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xf = p.x.map(|t| t as f64);
            // Q^{-s} Γ(s, πaQ) = (πa)^s G(s, πaQ)
            e(dot(v, &xf)) * scaled_upper_gamma(s, PI * a * p.norm)
        })
        .collect();
    let sum: Complex64 = terms.iter().sum();
    let pia_s = (s * (PI * a).ln()).exp();
    let gs = gamma(s);
    let mut value = sum * pia_s / gs;
    let pi_s = (s * PI.ln()).exp();
    if v_int {
        value += pi_s / gs * (s - 2.0).inv() * (((s - 2.0) * a.ln()).exp() / det_q.sqrt());
    }
    if u_int {
        value -= pi_s / gs * e(-dot(v, u)) * (s * a.ln()).exp() / s;
    }
    // neglected dual side: π^σ/|Γ(s)| det^{-1/2} Σ_{μ≠v} ∫_0^a t^{σ-3} e^{-π d_μ/t} dt
    let dual_tail = (s.re * PI.ln()).exp() / gs.norm() / det_q.sqrt()
        * a.powf(s.re - 2.0)
        * (-PI * d_min / a).exp()
        * (1.0 + estimated_points(&qi, 4.0 * d_min));
    let direct_tail = tail_estimate(bound * a, s, det4(&scale_form(q, a))) * pia_s.norm() / gs.norm();
    Ok(EpsteinValue { value, tail_bound: dual_tail + direct_tail, terms_used: pts.len() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub error: f64,
}

/// `ζ*(s, u, v, Q)` against `e^{-2πi u·v} det(Q)^{-1/2} ζ*(2−s, v, −u, Q⁻¹)`.
pub fn epstein_functional_check(params: &EpsteinParams) -> Result<FunctionalCheck, EpsteinError> {
    let lhs = epstein_continued(params)?.value;
    let dual =
        EpsteinParams { q: inv4(&params.q), u: params.v, v: params.u.map(|t| -t), s: 2.0 - params.s, ..params.clone() };
    let r = epstein_continued(&dual)?.value;
    let rhs = r * e(-dot(&params.u, &params.v)) / det4(&params.q).sqrt();
    Ok(FunctionalCheck { lhs, rhs, error: (lhs - rhs).norm() })
}

/// Numeric residue of `ζ*` at `s = 2` by the symmetric difference `(h/2)(ζ*(2+h) − ζ*(2−h))`.
pub fn epstein_residue_at_2(q: &Mat4, u: &[f64; 4], v: &[f64; 4], h: f64) -> Result<Complex64, EpsteinError> {
    let at = |s: f64| epstein_continued(&EpsteinParams::new(*q, *u, *v, Complex64::new(s, 0.0)));
    let hi = at(2.0 + h)?.value;
    let lo = at(2.0 - h)?.value;
    Ok((hi - lo) * (h / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id() -> Mat4 {
        std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64))
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn four_squares_at_three() {
        let p = EpsteinParams::new(id(), [0.0; 4], [0.0; 4], c(3.0));
        let d = epstein_direct(&p, DirectMode::Smoothed).unwrap();
        assert!((d.value.re - 14.829_783).abs() < 1e-5, "{}", d.value);
        let cont = epstein_continued(&p).unwrap().value;
        let comp = epstein_direct_completed(&p, DirectMode::Smoothed).unwrap().value;
        assert!((cont - comp).norm() < 1e-10 * comp.norm());
    }

    #[test]
    fn shifted_and_phased_overlap() {
        let q: Mat4 = [[2.0, 0.3, 0.1, 0.0], [0.3, 1.5, -0.2, 0.1], [0.1, -0.2, 1.0, 0.25], [0.0, 0.1, 0.25, 0.7]];
        let p =
            EpsteinParams::new(q, [0.5, 0.0, 1.0 / 3.0, 0.0], [0.25, 0.0, 0.0, 2.0 / 3.0], Complex64::new(2.5, 0.4));
        let cont = epstein_continued(&p).unwrap().value;
        let comp = epstein_direct_completed(&p, DirectMode::Smoothed).unwrap().value;
        assert!((cont - comp).norm() < 1e-9 * (1.0 + comp.norm()), "{cont} vs {comp}");
    }

    #[test]
    fn functional_equation_generic() {
        let q: Mat4 = [[1.2, 0.3, 0.0, 0.1], [0.3, 0.9, 0.2, 0.0], [0.0, 0.2, 1.4, -0.3], [0.1, 0.0, -0.3, 0.8]];
        let p = EpsteinParams::new(q, [0.2, 0.0, 0.5, 0.0], [0.0, 1.0 / 3.0, 0.0, 0.75], Complex64::new(0.7, 1.3));
        let fc = epstein_functional_check(&p).unwrap();
        assert!(fc.error < 1e-9 * (1.0 + fc.lhs.norm()), "{fc:?}");
    }

    #[test]
    fn residue_is_inverse_sqrt_det() {
        let q = scale_form(&id(), 1.7);
        let r = epstein_residue_at_2(&q, &[0.0; 4], &[0.0; 4], 1e-4).unwrap();
        assert!((r.re - 1.0 / 1.7f64.powi(2)).abs() < 1e-6, "{r}");
    }

    #[test]
    fn plain_mode_is_close() {
        let p = EpsteinParams::new(id(), [0.0; 4], [0.0; 4], c(4.0)).with_radius(10.0);
        let d = epstein_direct(&p, DirectMode::Plain).unwrap();
        let exact = epstein_direct(&p.clone(), DirectMode::Smoothed).unwrap();
        assert!((d.value - exact.value).norm() < 2.0 * d.tail_bound);
    }

    #[test]
    fn direct_rejects_divergent() {
        let p = EpsteinParams::new(id(), [0.0; 4], [0.0; 4], c(2.0));
        assert!(matches!(epstein_direct(&p, DirectMode::Plain), Err(EpsteinError::Divergent(_))));
    }
}
