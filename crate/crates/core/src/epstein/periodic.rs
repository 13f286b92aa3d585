//! `F(s; Q, w) = Σ_{λ∈ℤ⁴∖0} w(λ) Q[λ]^{-s}` for a weight `w` periodic modulo `M = (M₁,…,M₄)`.
//!
//! Every finite combination `Σ_j c_j ζ(s, u_j, v_j, Q)` with rational characteristics is of
//! this shape after rescaling `λ + u_j` to an integral lattice, so one evaluation covers a
//! whole family of Epstein terms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{
    enumerate, estimated_points, gamma_sum, min_eigenvalue, scale_form, tail_estimate, EpsteinError, EpsteinValue,
    GAMMA_CUTOFF, MAX_POINTS,
};
use crate::majorant::{det4, inv4, Mat4};

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicWeight {
    period: [usize; 4],
    w: Vec<Complex64>,
}

impl PeriodicWeight {
    pub fn new(period: [usize; 4]) -> Self {
        assert!(period.iter().all(|&m| m > 0));
        let n = period.iter().product();
        Self { period, w: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn from_fn<F: Fn([i64; 4]) -> Complex64>(period: [usize; 4], f: F) -> Self {
        let mut pw = Self::new(period);
        for idx in 0..pw.w.len() {
            let x = pw.coords(idx);
            pw.w[idx] = f(x);
        }
        pw
    }

    pub fn period(&self) -> [usize; 4] {
        self.period
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    fn coords(&self, mut idx: usize) -> [i64; 4] {
        let mut x = [0i64; 4];
        for i in (0..4).rev() {
            x[i] = (idx % self.period[i]) as i64;
            idx /= self.period[i];
        }
        x
    }

    pub fn index(&self, x: &[i64; 4]) -> usize {
        let mut idx = 0usize;
        for i in 0..4 {
            let m = self.period[i] as i64;
            idx = idx * self.period[i] + x[i].rem_euclid(m) as usize;
        }
        idx
    }

    pub fn add(&mut self, x: [i64; 4], c: Complex64) {
        let i = self.index(&x);
        self.w[i] += c;
    }

    pub fn get(&self, x: &[i64; 4]) -> Complex64 {
        self.w[self.index(x)]
    }

    pub fn max_abs(&self) -> f64 {
        self.w.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `ŵ(m) = Σ_{x mod M} w(x) e^{2πi Σ m_i x_i / M_i}`.
    pub fn hat(&self) -> PeriodicWeight {
        let mut data = self.w.clone();
        let mut planner = FftPlanner::<f64>::new();
        let p = self.period;
        let strides = [p[1] * p[2] * p[3], p[2] * p[3], p[3], 1];
        let mut line = Vec::new();
        for axis in 0..4 {
            let n = p[axis];
            if n == 1 {
                continue;
            }
            let fft = planner.plan_fft_inverse(n);
            let stride = strides[axis];
            for base in 0..data.len() {
                // base enumerates line starts: the axis coordinate must be 0
                if !(base / stride).is_multiple_of(n) {
                    continue;
                }
                line.clear();
                line.extend((0..n).map(|k| data[base + k * stride]));
                fft.process(&mut line);
                for (k, z) in line.iter().enumerate() {
                    data[base + k * stride] = *z;
                }
            }
        }
        PeriodicWeight { period: p, w: data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeriodicMode {
    /// Both sides at the balanced scale; valid for every `s` off the poles.
    #[default]
    Continued,
    /// Scale chosen so that the dual side is negligible; `Re(s) > 2` only.
    Direct,
}

/// `min_{m ∈ ℤ⁴∖0} Q[m]`.
pub fn shortest_nonzero(q: &Mat4) -> f64 {
    let mut bound = min_eigenvalue(q) * 1.0001;
    loop {
        let pts = enumerate(q, &[0.0; 4], bound);
        if let Some(p) = pts.iter().find(|p| p.x != [0; 4]) {
            return p.norm;
        }
        bound *= 2.0;
    }
}

/// Completed `π^{-s} Γ(s) F(s; Q, w)`, meromorphically continued.
pub fn periodic_completed(
    s: Complex64,
    q: &Mat4,
    weight: &PeriodicWeight,
    mode: PeriodicMode,
) -> Result<EpsteinValue, EpsteinError> {
    if super::cholesky(q).is_none() {
        return Err(EpsteinError::NotPositive);
    }
    let m = weight.period();
    let vol: f64 = m.iter().map(|&t| t as f64).product();
    let det_q = det4(q);
    let x_cut = GAMMA_CUTOFF + 2.0 * s.re.abs().max((2.0 - s.re).abs());
    let c = match mode {
        PeriodicMode::Continued => (det_q.powf(-0.5) / vol.sqrt()).sqrt(),
        PeriodicMode::Direct => {
            if s.re <= 2.0 {
                return Err(EpsteinError::Divergent(s.re));
            }
            let qi = inv4(q);
            let qd: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| qi[i][j] / (m[i] * m[j]) as f64));
            PI * shortest_nonzero(&qd) / x_cut
        }
    };
    let w0 = weight.get(&[0; 4]);
    let hat = weight.hat();
    let hat0 = hat.get(&[0; 4]);
    if (hat0.norm() > 0.0 && (s - 2.0).norm() < 1e-12) || (w0.norm() > 0.0 && s.norm() < 1e-12) {
        return Err(EpsteinError::Pole(s));
    }
    let a = scale_form(q, c);
    let det_a = det4(&a);
    let bound = x_cut / PI;
    let est = estimated_points(&a, bound);
    if est > MAX_POINTS {
        return Err(EpsteinError::TooManyPoints(est));
    }
    let pts = enumerate(&a, &[0.0; 4], bound);
    let direct = gamma_sum(&pts, s, Some([0; 4]), |x| weight.get(x));
    let mut terms = pts.len();

    let mut dual = Complex64::new(0.0, 0.0);
    let mut tail = tail_estimate(bound, s, det_a) * weight.max_abs();
    if mode == PeriodicMode::Continued {
        // dual points m ∈ ℤ⁴ with form diag(1/M) A⁻¹ diag(1/M)
        let ai = inv4(&a);
        let qd: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| ai[i][j] / (m[i] * m[j]) as f64));
        let est = estimated_points(&qd, bound);
        if est > MAX_POINTS {
            return Err(EpsteinError::TooManyPoints(est));
        }
        let dpts = enumerate(&qd, &[0.0; 4], bound);
        dual = gamma_sum(&dpts, 2.0 - s, Some([0; 4]), |x| hat.get(x)) / (det_a.sqrt() * vol);
        terms += dpts.len();
        tail += tail_estimate(bound, 2.0 - s, det4(&qd)) * hat.max_abs() / (det_a.sqrt() * vol);
    } else {
        let ai = inv4(&a);
        let qd: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| ai[i][j] / (m[i] * m[j]) as f64));
        let dmin = PI * shortest_nonzero(&qd);
        tail += hat.max_abs() / (det_a.sqrt() * vol) * (-dmin).exp() * (1.0 + estimated_points(&inv4(&a), 4.0));
    }
    let mut total = direct + dual + hat0 / (det_a.sqrt() * vol * (s - 2.0));
    total -= w0 / s;
    let cs = (s * c.ln()).exp();
    Ok(EpsteinValue { value: total * cs, tail_bound: tail * cs.norm(), terms_used: terms })
}

#[cfg(test)]
mod tests {
    use super::super::{epstein_continued, EpsteinParams};
    use super::*;

    #[test]
    fn hat_matches_naive_dft() {
        let w = PeriodicWeight::from_fn([2, 3, 1, 4], |x| Complex64::new((x[0] + 2 * x[1]) as f64, x[3] as f64));
        let h = w.hat();
        let m = [2i64, 3, 1, 4];
        let k = [1i64, 2, 0, 3];
        let mut naive = Complex64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..3 {
                for d in 0..4 {
                    let x = [a, b, 0, d];
                    let ph: f64 = (0..4).map(|i| (k[i] * x[i]) as f64 / m[i] as f64).sum();
                    naive += w.get(&x) * Complex64::from_polar(1.0, 2.0 * PI * ph);
                }
            }
        }
        assert!((h.get(&k) - naive).norm() < 1e-12);
    }

    #[test]
    fn single_character_pair_matches_term_engine() {
        // ζ(s, u, v, Q) with u = (1/2, 0, 0, 1/3), v = (0, 1/4, 0, 0): rescale by D = (2,1,1,3)
        let q: Mat4 = [[1.3, 0.2, 0.0, 0.1], [0.2, 1.1, 0.1, 0.0], [0.0, 0.1, 0.9, 0.2], [0.1, 0.0, 0.2, 1.6]];
        let u = [0.5, 0.0, 0.0, 1.0 / 3.0];
        let v = [0.0, 0.25, 0.0, 0.0];
        let d = [2i64, 1, 1, 3];
        let qp: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| q[i][j] / (d[i] * d[j]) as f64));
        let mut w = PeriodicWeight::new([2, 4, 1, 3]);
        for l2 in 0..4 {
            let y = [1, l2, 0, 1];
            w.add(y, Complex64::from_polar(1.0, 2.0 * PI * 0.25 * l2 as f64));
        }
        for s in [Complex64::new(2.7, 0.0), Complex64::new(-0.3, 0.8)] {
            let f = periodic_completed(s, &qp, &w, PeriodicMode::Continued).unwrap().value;
            let z = epstein_continued(&EpsteinParams::new(q, u, v, s)).unwrap().value;
            assert!((f - z).norm() < 1e-10 * (1.0 + z.norm()), "{s}: {f} vs {z}");
        }
        // shift-only weight for the direct mode
        let mut w = PeriodicWeight::new([2, 1, 1, 3]);
        w.add([1, 0, 0, 1], Complex64::new(1.0, 0.0));
        let s = Complex64::new(3.1, 0.2);
        let z = epstein_continued(&EpsteinParams::new(q, u, [0.0; 4], s)).unwrap().value;
        let dir = periodic_completed(s, &qp, &w, PeriodicMode::Direct).unwrap().value;
        let con = periodic_completed(s, &qp, &w, PeriodicMode::Continued).unwrap().value;
        assert!((dir - con).norm() < 1e-10 * (1.0 + con.norm()));
        assert!((con - z).norm() < 1e-10 * (1.0 + z.norm()));
    }
}
