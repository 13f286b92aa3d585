//! Gamma, upper incomplete gamma, Hurwitz zeta and Dirichlet L-values.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::characters::DirichletCharacter;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` (principal branch for `Re z >= 1/2`, reflection below).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (PI * z).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    ln_gamma(z).exp()
}

fn near_nonpositive_integer(a: Complex64) -> bool {
    a.re < 0.5 && (a.re - a.re.round()).abs() < 1e-3 && a.im.abs() < 1e-3
}

/// Upper incomplete gamma `Γ(a, x)` for complex `a` and real `x > 0`.
pub fn upper_gamma(a: Complex64, x: f64) -> Complex64 {
    assert!(x > 0.0, "upper_gamma needs x > 0");
    if x > a.re + 1.0 || near_nonpositive_integer(a) {
        upper_gamma_cf(a, x)
    } else {
        gamma(a) - lower_gamma_series(a, x)
    }
}

/// `x^{-a} Γ(a, x)`, the form in which lattice terms appear.
pub fn scaled_upper_gamma(a: Complex64, x: f64) -> Complex64 {
    if x > a.re + 1.0 || near_nonpositive_integer(a) {
        let (h, _) = lentz(a, x);
        h * (-x).exp()
    } else {
        (gamma(a) - lower_gamma_series(a, x)) * (-a * x.ln()).exp()
    }
}

fn lower_gamma_series(a: Complex64, x: f64) -> Complex64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..1000 {
        term *= x / (a + n as f64);
        sum += term;
        if term.norm() < sum.norm() * 1e-17 {
            break;
        }
    }
    sum * (a * x.ln() - x).exp()
}

/// Legendre continued fraction for `e^{x} x^{-a} Γ(a, x)`, modified Lentz.
fn lentz(a: Complex64, x: f64) -> (Complex64, usize) {
    let tiny = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - a;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    let max_iter = if x < 1.0 { 100_000 } else { 5_000 };
    for i in 1..max_iter {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return (h, i);
        }
    }
    (h, max_iter)
}

fn upper_gamma_cf(a: Complex64, x: f64) -> Complex64 {
    let (h, _) = lentz(a, x);
    h * (a * x.ln() - x).exp()
}

const BERNOULLI_2K: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k>=0} (k + a)^{-s}` for `a > 0`, `s ≠ 1`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    assert!(a > 0.0);
    let k_cut = 30usize + s.im.abs() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..k_cut {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let x = k_cut as f64 + a;
    let lx = x.ln();
    sum += (-(s - 1.0) * lx).exp() / (s - 1.0);
    sum += 0.5 * (-s * lx).exp();
    // Σ B_{2j}/(2j)! s(s+1)…(s+2j−2) x^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut xpow = (-(s + 1.0) * lx).exp();
    for (j, &b) in BERNOULLI_2K.iter().enumerate() {
        let j = j + 1;
        let term = b / fact * rising * xpow;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        let m = 2 * j as u32;
        rising *= (s + (m - 1) as f64) * (s + m as f64);
        fact *= ((m + 1) * (m + 2)) as f64;
        xpow /= x * x;
    }
    sum
}

pub fn riemann_zeta(s: Complex64) -> Complex64 {
    hurwitz_zeta(s, 1.0)
}

/// `L(s, χ) = N^{-s} Σ_{a mod N} χ(a) ζ(s, a/N)`.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Complex64 {
    let n = chi.modulus() as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=chi.modulus() as i64 {
        let c = chi.eval(a);
        if c.norm() == 0.0 {
            continue;
        }
        sum += c * hurwitz_zeta(s, a as f64 / n);
    }
    sum * (-s * n.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(c(5.0)) - 24.0).norm() < 1e-12);
        assert!((gamma(c(0.5)) - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(-0.5)) + 2.0 * PI.sqrt()).norm() < 1e-13);
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let g = gamma(Complex64::new(0.5, 2.0));
        assert!((g.norm_sqr() - PI / (2.0 * PI).cosh()).abs() < 1e-15);
    }

    #[test]
    fn incomplete_gamma_values() {
        // Γ(1, x) = e^{-x}; Γ(2, x) = (1 + x) e^{-x}; Γ(0.5, x) = √π erfc(√x)
        for &x in &[0.1, 0.7, 1.9, 5.0, 30.0] {
            assert!((upper_gamma(c(1.0), x) - (-x).exp()).norm() < 1e-14);
            assert!((upper_gamma(c(2.0), x) - (1.0 + x) * (-x).exp()).norm() < 1e-14);
        }
        // Γ(0, x) = E1(x); E1(1) = 0.219383934395520...
        assert!((upper_gamma(c(0.0), 1.0) - 0.219_383_934_395_520_3).norm() < 1e-13);
        // Γ(-1, x) = E2(x)/x; E2(1) = 0.148495506775922
        assert!((upper_gamma(c(-1.0), 1.0) - 0.148_495_506_775_922).norm() < 1e-13);
    }

    #[test]
    fn series_and_fraction_agree() {
        let a = Complex64::new(-0.4, 0.3);
        for &x in &[0.3, 0.6, 0.9] {
            let s = gamma(a) - lower_gamma_series(a, x);
            let f = upper_gamma_cf(a, x);
            assert!((s - f).norm() < 1e-11 * s.norm(), "{x}: {s} vs {f}");
        }
    }

    #[test]
    fn zeta_values() {
        assert!((riemann_zeta(c(2.0)) - PI * PI / 6.0).norm() < 1e-14);
        assert!((riemann_zeta(c(4.0)) - PI.powi(4) / 90.0).norm() < 1e-14);
        // L(2, χ_{-4}) = Catalan's constant
        let chi4 = &crate::characters::enumerate_characters(4)[1];
        assert!((dirichlet_l(c(2.0), chi4) - 0.915_965_594_177_219).norm() < 1e-14);
    }
}
