//! Rankin-type Dirichlet series on abstract coefficient data and the functional-equation factors.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::is_prime;
use crate::characters::{e_frac, gauss_sum, DirichletCharacter};
use crate::special::{dirichlet_l, gamma};

#[derive(Debug, Error)]
pub enum ConvError {
    #[error("series diverges for Re(s) = {re} <= {bound}")]
    Divergent { re: f64, bound: f64 },
    #[error("pole of a gamma or zeta factor at s = {0}")]
    Pole(Complex64),
    #[error("character is not primitive")]
    NotPrimitive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coefficients `c_m`, `m >= 1`, with `|c_m| <= C m^g` on the stored prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeries {
    coefficients: Vec<Complex64>,
    pub weight: i64,
    pub growth_exponent: f64,
    growth_constant: f64,
}

impl CoeffSeries {
    /// `coefficients[0]` is `c_1`.
    pub fn new(coefficients: Vec<Complex64>, weight: i64, growth_exponent: f64) -> Self {
        let growth_constant = coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() / ((i + 1) as f64).powf(growth_exponent))
            .fold(0.0, f64::max);
        Self { coefficients, weight, growth_exponent, growth_constant }
    }

    pub fn from_fn(len: usize, weight: i64, growth_exponent: f64, f: impl Fn(u64) -> Complex64) -> Self {
        Self::new((1..=len as u64).map(f).collect(), weight, growth_exponent)
    }

    /// Lines `m re im`; missing indices are zero, `#` starts a comment.
    pub fn parse(text: &str, weight: i64, growth_exponent: f64) -> Result<Self, ConvError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| ConvError::Parse { line: i + 1, msg: msg.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err("expected `m re im`"));
            }
            let m: usize = parts[0].parse().map_err(|_| err("bad index"))?;
            if m == 0 {
                return Err(err("index must be >= 1"));
            }
            let re: f64 = parts[1].parse().map_err(|_| err("bad real part"))?;
            let im: f64 = parts[2].parse().map_err(|_| err("bad imaginary part"))?;
            entries.push((m, Complex64::new(re, im)));
        }
        let len = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        for (m, z) in entries {
            c[m - 1] = z;
        }
        Ok(Self::new(c, weight, growth_exponent))
    }

    pub fn load(path: &Path, weight: i64, growth_exponent: f64) -> Result<Self, ConvError> {
        Self::parse(&std::fs::read_to_string(path)?, weight, growth_exponent)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn growth_constant(&self) -> f64 {
        self.growth_constant
    }

    /// `c_m` for `m >= 1`, zero past the prefix.
    pub fn get(&self, m: u64) -> Complex64 {
        self.coefficients.get(m as usize - 1).copied().unwrap_or_default()
    }

    fn map(&self, f: impl Fn(u64, Complex64) -> Complex64) -> Self {
        let c = self.coefficients.iter().enumerate().map(|(i, &c)| f(i as u64 + 1, c)).collect();
        Self::new(c, self.weight, self.growth_exponent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

/// `Σ_{m <= M} χ(m) c_m m^{-s}` with `M = min(cutoff, len)`.
pub fn dirichlet_d(
    c: &CoeffSeries,
    chi: &DirichletCharacter,
    s: Complex64,
    cutoff: usize,
) -> Result<SeriesValue, ConvError> {
    let g = c.growth_exponent;
    if s.re <= g + 1.0 {
        return Err(ConvError::Divergent { re: s.re, bound: g + 1.0 });
    }
    let m = cutoff.min(c.len());
    // fixed chunking keeps the reduction order independent of the thread count
    let value = c.coefficients[..m]
        .par_chunks(4096)
        .enumerate()
        .map(|(k, chunk)| {
            chunk
                .iter()
                .enumerate()
                .map(|(i, &cm)| {
                    let n = (k * 4096 + i + 1) as u64;
                    chi.eval(n as i64) * cm * (-s * (n as f64).ln()).exp()
                })
                .sum::<Complex64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    // Σ_{n>M} C n^{g-σ} <= C M^{g+1-σ}/(σ-g-1)
    let e = s.re - g - 1.0;
    let tail_bound = c.growth_constant * (m.max(1) as f64).powf(-e) / e;
    Ok(SeriesValue { value, tail_bound, terms_used: m })
}

/// `(2π/N)^{-2s} Γ(s) Γ(s−k+2) L(2s−2k+4, χ²)` (genus 2).
pub fn completion_factor(chi: &DirichletCharacter, k: i64, s: Complex64) -> Result<Complex64, ConvError> {
    let n = chi.modulus() as f64;
    let a = s - (k - 2) as f64;
    for z in [s, a] {
        if z.im.abs() < 1e-14 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-14 {
            return Err(ConvError::Pole(s));
        }
    }
    let l_arg = 2.0 * a;
    let chi2 = chi.pow(2);
    if chi2.is_principal() && (l_arg - 1.0).norm() < 1e-14 {
        return Err(ConvError::Pole(s));
    }
    let pre = (-2.0 * s * (2.0 * PI / n).ln()).exp();
    Ok(pre * gamma(s) * gamma(a) * dirichlet_l(l_arg, &chi2))
}

pub fn completed_d(
    c: &CoeffSeries,
    chi: &DirichletCharacter,
    s: Complex64,
    cutoff: usize,
) -> Result<SeriesValue, ConvError> {
    let d = dirichlet_d(c, chi, s, cutoff)?;
    let f = completion_factor(chi, c.weight, s)?;
    Ok(SeriesValue { value: f * d.value, tail_bound: f.norm() * d.tail_bound, terms_used: d.terms_used })
}

/// `c_m ↦ χ(m) c_m`.
pub fn twist_coeffs(c: &CoeffSeries, chi: &DirichletCharacter) -> CoeffSeries {
    c.map(|m, z| chi.eval(m as i64) * z)
}

/// The twist as an average of phase-shifted series: `(1/N) Σ_{ν,μ (N)} χ(ν) e^{−2πiνμ/N} c_m e^{2πimμ/N}`.
pub fn twist_averaged(c: &CoeffSeries, chi: &DirichletCharacter) -> CoeffSeries {
    let n = chi.modulus() as i64;
    c.map(|m, z| {
        let mut acc = Complex64::new(0.0, 0.0);
        for nu in 0..n {
            let x = chi.eval(nu);
            if x.norm() == 0.0 {
                continue;
            }
            for mu in 0..n {
                acc += x * e_frac((m as i64 - nu) * mu, n);
            }
        }
        acc * z / n as f64
    })
}

/// Gauss-sum form for primitive `χ`: `G_χ̄^{-1} Σ_{μ (N)} χ̄(μ) e^{2πimμ/N} c_m`.
pub fn twist_gauss(c: &CoeffSeries, chi: &DirichletCharacter) -> Result<CoeffSeries, ConvError> {
    if !chi.is_primitive() {
        return Err(ConvError::NotPrimitive);
    }
    let n = chi.modulus() as i64;
    let cb = chi.conj();
    let g = gauss_sum(&cb);
    Ok(c.map(|m, z| {
        let k: Complex64 = (0..n).map(|mu| cb.eval(mu) * e_frac(m as i64 * mu, n)).sum();
        k / g * z
    }))
}

fn cpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// Factor `c` in `𝔻_{χ}(s) = c · 𝔻_{χ̄}(2k−2−s)`:
/// `G_χ⁴/N² · p^{3(k−s−1)} (1 + p^{−(k−s)}) (1 + p^{−(s−k+2)})^{−1}`.
pub fn fe_factor(chi: &DirichletCharacter, p: u64, k: i64, s: Complex64) -> Result<Complex64, ConvError> {
    let n = chi.modulus();
    if !chi.is_primitive() {
        return Err(ConvError::NotPrimitive);
    }
    if !is_prime(p) || (p as i64 - 1) % n as i64 != 0 {
        return Err(ConvError::Precondition(format!("p = {p} must be a prime ≡ 1 mod {n}")));
    }
    let pf = p as f64;
    let kf = k as f64;
    let den = 1.0 + cpow(pf, -(s - kf + 2.0));
    if den.norm() < 1e-14 {
        return Err(ConvError::Pole(s));
    }
    let g4 = gauss_sum(chi).powi(4) / (n * n) as f64;
    Ok(g4 * cpow(pf, 3.0 * (kf - s - 1.0)) * (1.0 + cpow(pf, -(kf - s))) / den)
}

/// `(−1)^k G_χ⁴/N²`.
pub fn spinor_fe_factor(chi: &DirichletCharacter, k: i64) -> Result<Complex64, ConvError> {
    if !chi.is_primitive() {
        return Err(ConvError::NotPrimitive);
    }
    let n = chi.modulus() as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * gauss_sum(chi).powi(4) / (n * n))
}

/// `p^{−s} (1 − p^{k−2−s}) (p + (−1)^k p^{k−s})`.
pub fn euler_factor_gritsenko(p: u64, k: i64, s: Complex64) -> Complex64 {
    let pf = p as f64;
    let kf = k as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    cpow(pf, -s) * (1.0 - cpow(pf, kf - 2.0 - s)) * (pf + sign * cpow(pf, kf - s))
}

/// Least prime `p <= bound` with `p ≡ 1 (N)`.
pub fn find_prime(n: u64, bound: u64) -> Option<u64> {
    let n = n.max(1);
    (1..).map(|j| j * n + 1).take_while(|&p| p <= bound).find(|&p| is_prime(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(4, 100), Some(5));
        assert_eq!(find_prime(6, 100), Some(7));
        assert_eq!(find_prime(12, 100), Some(13));
        assert_eq!(find_prime(1, 100), Some(2));
        assert_eq!(find_prime(50, 100), None);
    }

    #[test]
    fn parse_coefficients() {
        let c = CoeffSeries::parse("# header\n1 1 0\n3 0.5 -2\n", 10, 1.0).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.get(2), Complex64::new(0.0, 0.0));
        assert_eq!(c.get(3), Complex64::new(0.5, -2.0));
        assert!(CoeffSeries::parse("0 1 1", 10, 1.0).is_err());
    }

    #[test]
    fn gauss_twist_matches_plain() {
        let chi = enumerate_characters(5).into_iter().find(|c| c.order() == 4).unwrap();
        let c = CoeffSeries::from_fn(100, 10, 1.0, |m| Complex64::new(m as f64, 1.0 / m as f64));
        let a = twist_coeffs(&c, &chi);
        let b = twist_gauss(&c, &chi).unwrap();
        let v = twist_averaged(&c, &chi);
        for m in 1..=100 {
            assert!((a.get(m) - b.get(m)).norm() < 1e-9);
            assert!((a.get(m) - v.get(m)).norm() < 1e-9);
        }
    }
}
