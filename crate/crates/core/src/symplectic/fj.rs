//! Conjugators used to read off Fourier-Jacobi expansions of `f | W M_{d,Cγ} M_λ D_ε`.

use super::{make_generator, pre, preserves_j, Generator, GroupError, SpMatrix};
use crate::arith::gcd;
use crate::qfield::{rat, rat_int, QuadExt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FjParams {
    pub n: i64,
    pub nu: i64,
    pub p: i64,
    pub p_star: i64,
    pub c: i64,
    pub gamma: i64,
    pub gamma_star: i64,
    pub mu: i64,
    pub mu_star: i64,
    pub d: i64,
    pub eps_gamma: i64,
}

impl FjParams {
    pub fn r(&self) -> i64 {
        (self.eps_gamma - self.gamma_star) / self.nu
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let FjParams { n, nu, p, p_star, c, gamma, gamma_star, mu, mu_star, d, eps_gamma } = *self;
        pre(c > 0 && (n * nu) % c == 0, || "C must divide Nν".into())?;
        let m1 = n * nu / c;
        pre((gamma * gamma_star - 1).rem_euclid(m1) == 0, || "γγ* ≢ 1 (Nν/C)".into())?;
        pre((p * p_star - 1).rem_euclid(m1) == 0, || "pp* ≢ 1 (Nν/C)".into())?;
        pre((n * d * mu) % c == 0, || "C ∤ Ndμ".into())?;
        let m2 = n * d * mu * p / c;
        pre((mu * mu_star - 1).rem_euclid(m2) == 0, || "μμ* ≢ 1 (Ndμp/C)".into())?;
        pre((eps_gamma - gamma_star) % nu == 0, || "(ε_γ − γ*)/ν is not integral".into())?;
        pre(gcd(gamma, m1) == 1, || "gcd(γ, Nν/C) != 1".into())?;
        Ok(())
    }
}

fn qr(n: i64, d: i64) -> QuadExt {
    rat(n, d).into()
}

/// `(H₁, H₂, H₃, H₄)`, each checked to be integral and `J₁`-symplectic.
pub fn build_fj_conjugators(f: &FjParams) -> Result<[SpMatrix; 4], GroupError> {
    f.validate()?;
    let FjParams { n, nu, p, p_star, c, gamma, gamma_star, mu, mu_star, d, eps_gamma } = *f;
    let r = f.r();

    let mut h1 = SpMatrix::identity();
    h1.set(1, 1, qr((1 - p * gamma * p_star * gamma_star) * c, n * nu));
    h1.set(1, 3, qr(p_star * gamma_star, 1));
    h1.set(3, 1, qr(-p * gamma, 1));
    h1.set(3, 3, qr(n * nu, c));

    let ndpm = n * d * p * mu;
    let mut h2 = SpMatrix::zero();
    h2.set(0, 0, qr(mu, 1));
    h2.set(0, 1, qr(ndpm, c));
    h2.set(1, 0, qr((mu * mu_star - 1) * c, ndpm));
    h2.set(1, 1, qr(mu_star, 1));
    h2.set(2, 2, qr(mu_star, 1));
    h2.set(2, 3, qr((1 - mu * mu_star) * c, ndpm));
    h2.set(3, 2, qr(-ndpm, c));
    h2.set(3, 3, qr(mu, 1));

    let off = d * p * p_star * mu_star * mu * r;
    let mut h3 = SpMatrix::identity();
    h3.set(0, 2, qr(n * d * d * p * p * p_star * mu * mu * r, c));
    h3.set(0, 3, qr(off, 1));
    h3.set(1, 2, qr(off, 1));

    let mut h4 = SpMatrix::identity();
    h4.set(0, 2, qr(n * d * d * p * p * p_star * eps_gamma, c * nu));

    let hs = [h1, h2, h3, h4];
    for (i, h) in hs.iter().enumerate() {
        pre(h.is_integral(), || format!("H{} is not integral", i + 1))?;
        pre(preserves_j(h, 1), || format!("H{} is not symplectic", i + 1))?;
    }
    Ok(hs)
}

/// Last row `(0, 0, 0, ±1)`: the shape that yields a Fourier-Jacobi expansion in `z`.
pub fn is_klingen_parabolic(m: &SpMatrix) -> bool {
    (1..=3).all(|j| m.at(4, j).is_zero()) && matches!(m.at(4, 4).as_i64(), Some(1 | -1))
}

/// `−H₃H₂H₁ · W · W_{Nνp} M_{d,Cγ} M_λ D_ε`, with the middle `W` supplied by the caller.
pub fn fj_product(f: &FjParams, w: &SpMatrix, lambda: [i64; 2], eps: i64) -> Result<SpMatrix, GroupError> {
    let [h1, h2, h3, _] = build_fj_conjugators(f)?;
    let wn = make_generator(&Generator::WEta(rat_int(f.n * f.nu * f.p)))?;
    let mdg = make_generator(&Generator::MDGamma {
        n: f.n as u64,
        p: f.p as u64,
        d: f.d as u64,
        theta: (f.n / f.nu) as u64,
        gamma: f.c * f.gamma,
    })?;
    let ml = make_generator(&Generator::MLambda(lambda))?;
    let de = make_generator(&Generator::DEta(rat_int(eps)))?;
    let mut acc = h3.try_mul(&h2)?.try_mul(&h1)?;
    for m in [w, &wn, &mdg, &ml, &de] {
        acc = acc.try_mul(m)?;
    }
    Ok(acc.scale_rational(&rat_int(-1)))
}
