//! Completed paramodular Klingen-Eisenstein series of weight 0 and the difference series.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use thiserror::Error;

use crate::arith::{divisors, euler_phi, gcd, moebius};
use crate::characters::{decompose, gauss_sum, DirichletCharacter};
use crate::epstein::{periodic_completed, EpsteinError, EpsteinValue, PeriodicMode, PeriodicWeight};
use crate::majorant::{pz_form, siegel_action, w_eta_action, MajorantError, Mat4, SiegelPoint};
use crate::qfield::{rat_int, QuadExt};
use crate::special::gamma;
use crate::symplectic::{make_generator, make_hp, Generator, GroupContext, GroupError, SpMatrix};

#[derive(Debug, Error)]
pub enum EisError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Epstein(#[from] EpsteinError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Majorant(#[from] MajorantError),
}

fn pre(ok: bool, msg: impl FnOnce() -> String) -> Result<(), EisError> {
    if ok {
        Ok(())
    } else {
        Err(EisError::Precondition(msg()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinParams {
    pub ctx: GroupContext,
    pub chi: DirichletCharacter,
    pub z: SiegelPoint,
    pub s: Complex64,
}

impl EisensteinParams {
    pub fn new(
        p: u64,
        n: u64,
        kappa: u64,
        chi: DirichletCharacter,
        z: SiegelPoint,
        s: Complex64,
    ) -> Result<Self, EisError> {
        let ctx = GroupContext::new(p, n, kappa)?;
        pre(chi.modulus() == n, || format!("character modulus {} != N = {n}", chi.modulus()))?;
        Ok(Self { ctx, chi, z, s })
    }

    pub fn at(&self, z: SiegelPoint, s: Complex64) -> Self {
        Self { z, s, ..self.clone() }
    }

    fn npk(&self) -> (u64, u64, u64) {
        (self.ctx.n, self.ctx.p, self.ctx.kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Lattice,
    Second,
    Third,
}

/// How the residue class `δ` enters the last shift in the second and third representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaShift {
    /// `(δ + N²g)/(N²p)`, as obtained from the λ-sum.
    #[default]
    Derived,
    /// `(pδ + N²g)/(N²p)` (and `pα`, `pγ` in the third representation), as displayed;
    /// differs from `Derived` by `χ(p)`.
    AsDisplayed,
}

pub(crate) fn cpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

fn scale(v: EpsteinValue, c: Complex64) -> EpsteinValue {
    EpsteinValue { value: v.value * c, tail_bound: v.tail_bound * c.norm(), terms_used: v.terms_used }
}

fn add(a: EpsteinValue, b: EpsteinValue) -> EpsteinValue {
    EpsteinValue {
        value: a.value + b.value,
        tail_bound: a.tail_bound + b.tail_bound,
        terms_used: a.terms_used + b.terms_used,
    }
}

fn congruent(p: &Mat4, d: &[f64; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| d[i] * p[i][j] * d[j]))
}

/// `π^{-s} Γ(s) Σ_{λ∈ℤ⁴∖0} ψ(λ₄) P[diag(d) λ]^{-s}` for `ψ` periodic mod `period`.
pub fn char_lattice_sum<F: Fn(i64) -> Complex64>(
    s: Complex64,
    p: &Mat4,
    d: [f64; 4],
    period: u64,
    psi: F,
) -> Result<EpsteinValue, EisError> {
    let w = PeriodicWeight::from_fn([1, 1, 1, period as usize], |x| psi(x[3]));
    Ok(periodic_completed(s, &congruent(p, &d), &w, PeriodicMode::Continued)?)
}

/// `𝔼` from the λ-sum, continued by theta splitting.
pub fn eis_lattice_continued(params: &EisensteinParams) -> Result<EpsteinValue, EisError> {
    let (n, p, k) = params.npk();
    let s = params.s;
    let pz = pz_form(&params.z).p;
    let (nf, pf) = (n as f64, p as f64);
    let b = (n * n * p) as f64 / k as f64;
    let chi = |m: i64| params.chi.eval(m);
    let l1 = char_lattice_sum(s, &pz, [nf, b, nf, 1.0], n, chi)?;
    let l2 = char_lattice_sum(s, &pz, [nf * pf, b, nf * pf, 1.0], n, chi)?;
    let pre = cpow(pf, 1.5 * s) * cpow(nf, 2.0 * s);
    Ok(scale(add(scale(l1, cpow(pf, -s)), l2), pre))
}

/// First representation `π^{-s} p^{3s/2} N^{2s} Γ(s) Σ χ(λ₄)(p^{-s} P_Z[…]^{-s} + P_Z[…]^{-s})`.
pub fn eis_lattice_rep(params: &EisensteinParams) -> Result<EpsteinValue, EisError> {
    if params.s.re <= 2.0 {
        return Err(EpsteinError::Divergent(params.s.re).into());
    }
    eis_lattice_continued(params)
}

fn form_over(p: &Mat4, d: &[u64; 4]) -> Mat4 {
    congruent(p, &d.map(|x| 1.0 / x as f64))
}

/// `Σ_{α,β,γ,δ} χ(δ) Σ_{h (p)} ζ*(s, shift (α/N, pβ/κ, γ/N, δ/N²), phase (0, κh/p, 0, 0))`.
fn second_phase_family(params: &EisensteinParams) -> Result<EpsteinValue, EisError> {
    let (n, p, k) = params.npk();
    let d = [n, k, n, n * n];
    let mut w = PeriodicWeight::new([n as usize, (k * p) as usize, n as usize, (n * n) as usize]);
    let (ni, pi, ki) = (n as i64, p as i64, k as i64);
    for delta in 0..ni * ni {
        let c = params.chi.eval(delta);
        if c.norm() == 0.0 {
            continue;
        }
        for alpha in 0..ni {
            for beta in 0..ki {
                for gam in 0..ni {
                    for h in 0..pi {
                        for l2 in 0..pi {
                            let phase = crate::characters::e_frac(ki * h * l2, pi);
                            w.add([alpha, ki * l2 + pi * beta, gam, delta], c * phase);
                        }
                    }
                }
            }
        }
    }
    let q = form_over(&pz_form(&params.z).p, &d);
    Ok(periodic_completed(params.s, &q, &w, PeriodicMode::Continued)?)
}

/// `Σ χ(δ) Σ_{g (p)} ζ*(s, shift (α/N, β/κ, γ/N, (δ + N²g)/(N²p)), 0)`.
fn second_shift_family(params: &EisensteinParams, conv: DeltaShift) -> Result<EpsteinValue, EisError> {
    let (n, p, k) = params.npk();
    let d = [n, k, n, n * n * p];
    let mut w = PeriodicWeight::new(d.map(|x| x as usize));
    let (ni, pi, ki) = (n as i64, p as i64, k as i64);
    let dm = if conv == DeltaShift::Derived { 1 } else { pi };
    for delta in 0..ni * ni {
        let c = params.chi.eval(delta);
        if c.norm() == 0.0 {
            continue;
        }
        for alpha in 0..ni {
            for beta in 0..ki {
                for gam in 0..ni {
                    for g in 0..pi {
                        w.add([alpha, beta, gam, dm * delta + ni * ni * g], c);
                    }
                }
            }
        }
    }
    let q = form_over(&pz_form(&params.z).p, &d);
    Ok(periodic_completed(params.s, &q, &w, PeriodicMode::Continued)?)
}

/// `Σ χ(δ) Σ_{h₁,h₂,h₃ (p)} ζ*(s, shift ((α+Nh₁)/(Np), β/κ, (γ+Nh₂)/(Np), (δ+N²h₃)/(N²p)), 0)`.
fn third_shift_family(params: &EisensteinParams, conv: DeltaShift) -> Result<EpsteinValue, EisError> {
    let (n, p, k) = params.npk();
    let d = [n * p, k, n * p, n * n * p];
    let mut w = PeriodicWeight::new(d.map(|x| x as usize));
    let (ni, pi, ki) = (n as i64, p as i64, k as i64);
    let m = if conv == DeltaShift::Derived { 1 } else { pi };
    for delta in 0..ni * ni {
        let c = params.chi.eval(delta);
        if c.norm() == 0.0 {
            continue;
        }
        for alpha in 0..ni {
            for beta in 0..ki {
                for gam in 0..ni {
                    for h1 in 0..pi {
                        for h2 in 0..pi {
                            for h3 in 0..pi {
                                w.add([m * alpha + ni * h1, beta, m * gam + ni * h2, m * delta + ni * ni * h3], c);
                            }
                        }
                    }
                }
            }
        }
    }
    let q = form_over(&pz_form(&params.z).p, &d);
    Ok(periodic_completed(params.s, &q, &w, PeriodicMode::Continued)?)
}

/// Second or third representation: residue-class sums of completed Epstein functions.
pub fn eis_epstein_rep_with(
    params: &EisensteinParams,
    rep: Representation,
    conv: DeltaShift,
) -> Result<EpsteinValue, EisError> {
    let (n, p, _) = params.npk();
    let s = params.s;
    let pf = p as f64;
    let outer = cpow(n as f64, -2.0 * s);
    let shift = second_shift_family(params, conv)?;
    let v = match rep {
        Representation::Lattice => return eis_lattice_continued(params),
        Representation::Second => {
            let ph = second_phase_family(params)?;
            add(scale(ph, cpow(pf, 0.5 * s - 1.0)), scale(shift, cpow(pf, -0.5 * s)))
        }
        Representation::Third => {
            let t = third_shift_family(params, conv)?;
            add(scale(t, cpow(pf, -1.5 * s)), scale(shift, cpow(pf, -0.5 * s)))
        }
    };
    Ok(scale(v, outer))
}

pub fn eis_epstein_rep(params: &EisensteinParams, rep: Representation) -> Result<EpsteinValue, EisError> {
    eis_epstein_rep_with(params, rep, DeltaShift::Derived)
}

/// Last rows of the four types with `|λ|_∞ <= height` and the extended character value.
pub fn coset_rows(params: &EisensteinParams, height: i64) -> Result<Vec<([f64; 4], Complex64)>, EisError> {
    let (n, p, k) = params.npk();
    let (ni, pi) = (n as i64, p as i64);
    let b = pi * ni * ni / k as i64;
    let sp = (p as f64).sqrt();
    let hinv = make_hp(p, n)?.inverse().map_err(GroupError::from)?;
    let mut out = Vec::new();
    let range = -height..=height;
    for l1 in range.clone() {
        for l2 in range.clone() {
            for l3 in range.clone() {
                for l4 in range.clone() {
                    let l = [l1, l2, l3, l4];
                    if l.iter().fold(0, |g, &x| gcd(g, x)) != 1 || gcd(l4, ni) != 1 {
                        continue;
                    }
                    if l4 % pi != 0 {
                        let r = [pi * ni * l1, b * l2, pi * ni * l3, l4];
                        out.push((r.map(|x| x as f64), params.chi.eval(l4)));
                    }
                    if l2 % pi != 0 {
                        let r = [pi * ni * l1, b * l2, pi * ni * l3, pi * l4];
                        out.push((r.map(|x| x as f64), params.chi.eval(pi * l4)));
                    }
                    for (flag, r) in [(l1, [ni * l1, b * l2, ni * l3, l4]), (l3, [pi * ni * l1, b * l2, ni * l3, l4])] {
                        if flag % pi == 0 {
                            continue;
                        }
                        // χ⁺(M) = χ((M H_p⁻¹)₄₄) on the √p-coset
                        let row: [QuadExt; 4] = r.map(|x| QuadExt::surd(rat_int(x), p));
                        let mut m = SpMatrix::zero();
                        for (j, x) in row.into_iter().enumerate() {
                            m.set(3, j, x);
                        }
                        let d = m.try_mul(&hinv).map_err(GroupError::from)?.at(4, 4).clone();
                        let d = d.as_i64().ok_or(GroupError::NotInGroup)?;
                        out.push((r.map(|x| x as f64 * sp), params.chi.eval(d)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Uncompleted `E = Σ_M χ⁺(M) (det Im M⟨Z⟩ / (Im M⟨Z⟩)₁)^s` over rows of height `<= height`.
pub fn eis_coset_rep(params: &EisensteinParams, height: i64) -> Result<Complex64, EisError> {
    if params.s.re <= 2.0 {
        return Err(EpsteinError::Divergent(params.s.re).into());
    }
    let pz = pz_form(&params.z);
    let rows = coset_rows(params, height)?;
    Ok(rows.iter().map(|(r, c)| c * (-params.s * pz.eval(r).ln()).exp()).sum())
}

/// `(1+p^{-s}) L(2s, χ)` times the coset sum, against the λ-sums it should equal.
pub fn coset_first_statement(params: &EisensteinParams, height: i64) -> Result<(Complex64, Complex64), EisError> {
    let s = params.s;
    let e = eis_coset_rep(params, height)?;
    let l = crate::special::dirichlet_l(2.0 * s, &params.chi);
    let lhs = (1.0 + cpow(params.ctx.p as f64, -s)) * l * e;
    let full = eis_lattice_continued(params)?.value;
    let (n, p, _) = params.npk();
    // undo π^{-s} p^{3s/2} N^{2s} Γ(s)
    let rhs = full / (cpow(PI, -s) * cpow(p as f64, 1.5 * s) * cpow(n as f64, 2.0 * s) * gamma(s));
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidueMethod {
    /// `(1/2πi)∮ 𝔼 ds` over a circle of radius 1/4 around `s = 2`, trapezoidal rule.
    #[default]
    Contour,
    /// `(s−2)𝔼` at `s = 2 + ε`, extrapolated over `ε ∈ {1e-2, 5e-3, 2.5e-3}`.
    Richardson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueReport {
    pub numeric: f64,
    pub expected: f64,
    pub method: ResidueMethod,
}

/// `2κφ(N)/N` for trivial `χ`, else 0.
pub fn expected_residue(params: &EisensteinParams) -> f64 {
    let (n, _, k) = params.npk();
    if params.chi.is_principal() {
        2.0 * k as f64 * euler_phi(n) as f64 / n as f64
    } else {
        0.0
    }
}

pub fn eis_residue_with(params: &EisensteinParams, method: ResidueMethod) -> Result<ResidueReport, EisError> {
    let eval = |s: Complex64| -> Result<Complex64, EisError> {
        Ok(eis_epstein_rep(&params.at(params.z, s), Representation::Second)?.value)
    };
    let numeric = match method {
        ResidueMethod::Richardson => {
            let eps = [1e-2, 5e-3, 2.5e-3];
            let mut f = [0.0; 3];
            for (i, &e) in eps.iter().enumerate() {
                f[i] = e * eval(Complex64::new(2.0 + e, 0.0))?.re;
            }
            let a = 2.0 * f[1] - f[0];
            let b = 2.0 * f[2] - f[1];
            (4.0 * b - a) / 3.0
        }
        ResidueMethod::Contour => {
            let (k, r) = (48, 0.25);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..k {
                let d = Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / k as f64);
                acc += eval(2.0 + d)? * d;
            }
            (acc / k as f64).re
        }
    };
    Ok(ResidueReport { numeric, expected: expected_residue(params), method })
}

pub fn eis_residue(params: &EisensteinParams) -> Result<ResidueReport, EisError> {
    eis_residue_with(params, ResidueMethod::default())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tail_bound: f64,
}

impl Check {
    pub fn new(lhs: Complex64, rhs: Complex64, tail_bound: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        Self { lhs, rhs, abs_err, rel_err: abs_err / (1.0 + lhs.norm()), tail_bound }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeForm {
    Proposition,
    Corollary,
}

fn ctx_params(
    p: u64,
    n: u64,
    kappa: u64,
    chi: DirichletCharacter,
    z: SiegelPoint,
    s: Complex64,
) -> Result<EisensteinParams, EisError> {
    EisensteinParams::new(p, n, kappa, chi, z, s)
}

/// `𝔼(Z, 2−s)` against the functional-equation right-hand side.
pub fn eis_fe_check(params: &EisensteinParams, form: FeForm) -> Result<Check, EisError> {
    let (n, p, k) = params.npk();
    pre((p as i64 - 1) % n as i64 == 0, || format!("p = {p} is not ≡ 1 mod N = {n}"))?;
    let dec = decompose(&params.chi);
    let (l, r_big) = (dec.conductor, dec.r);
    let chi_l = dec.primitive_core;
    if form == FeForm::Corollary {
        pre(l % k == 0, || format!("κ = {k} does not divide L = {l}"))?;
    }
    let s = params.s;
    let lhs = eis_epstein_rep(&params.at(params.z, 2.0 - s), Representation::Second)?;
    let w = w_eta_action((n * p) as f64, &params.z);
    let pw = pz_form(&w).p;
    let g = gauss_sum(&chi_l.conj());
    let pref = Complex64::new(euler_phi(r_big) as f64 / r_big as f64 * k as f64, 0.0) / g;
    let (pf, kf) = (p as f64, k as f64);
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut tail = lhs.tail_bound;
    for r in divisors(r_big) {
        let mu = moebius(r);
        if mu == 0 {
            continue;
        }
        let coef = chi_l.eval(r as i64) * (mu as f64 / euler_phi(r) as f64);
        let lr = l * r;
        let psi = chi_l.induce(lr).conj();
        let term = match form {
            FeForm::Proposition => {
                let lrf = lr as f64;
                let f = |x: i64| psi.eval(x);
                let a = char_lattice_sum(s, &pw, [lrf * pf, lrf * kf * pf, lrf * pf, 1.0], lr, f)?;
                let b = char_lattice_sum(s, &pw, [lrf, lrf * kf * pf, lrf, 1.0], lr, f)?;
                scale(add(scale(a, cpow(pf, 1.5 * s)), scale(b, cpow(pf, 0.5 * s))), cpow(lrf, 2.0 * s))
            }
            FeForm::Corollary => {
                let e = ctx_params(p, lr, lr / k, psi, w, s)?;
                eis_epstein_rep(&e, Representation::Second)?
            }
        };
        rhs += coef * term.value;
        tail += term.tail_bound * coef.norm();
    }
    Ok(Check::new(lhs.value, pref * rhs, tail * pref.norm()))
}

/// Which principal character accompanies `χ_L` in the θ-indexed sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrincipalPart {
    /// `𝟙_{R/θ} χ_L`, a character mod `LR/θ`.
    #[default]
    RoverTheta,
    /// `𝟙_R χ_L` for every `θ`.
    R,
}

/// `Σ_{θ|R} μ(θ)φ(θ)/θ · 𝔼_{(LR/θ)p, …}(W⟨Z⟩, 2−s)` against `μ(R)/R · χ_L(R)/G · κ · 𝔼_{LRp, …}(Z, s)`.
pub fn smart_sum_check(params: &EisensteinParams, principal: PrincipalPart) -> Result<Check, EisError> {
    let (n, p, k) = params.npk();
    pre((p as i64 - 1) % n as i64 == 0, || format!("p = {p} is not ≡ 1 mod N = {n}"))?;
    let dec = decompose(&params.chi);
    let (l, r_big) = (dec.conductor, dec.r);
    pre(l % k == 0, || format!("κ = {k} does not divide L = {l}"))?;
    let chi_l = dec.primitive_core;
    let s = params.s;
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for theta in divisors(r_big) {
        let mu = moebius(theta);
        if mu == 0 {
            continue;
        }
        let coef = mu as f64 * euler_phi(theta) as f64 / theta as f64;
        let nt = l * r_big / theta;
        let w = w_eta_action((nt * p) as f64, &params.z);
        let v = match principal {
            PrincipalPart::RoverTheta => {
                let e = ctx_params(p, nt, k, chi_l.induce(nt).conj(), w, 2.0 - s)?;
                eis_epstein_rep(&e, Representation::Second)?
            }
            PrincipalPart::R => {
                // 𝟙_R χ_L has period LR, which need not divide N_θ: use the λ-sum
                let psi = chi_l.induce(l * r_big).conj();
                let e = EisensteinParams { ctx: GroupContext::new(p, nt, k)?, chi: psi, z: w, s: 2.0 - s };
                eis_lattice_continued(&e)?
            }
        };
        lhs += coef * v.value;
        tail += coef.abs() * v.tail_bound;
    }
    let g = gauss_sum(&chi_l.conj());
    let pref = chi_l.eval(r_big as i64) * (moebius(r_big) as f64 * k as f64 / r_big as f64) / g;
    let lr = l * r_big;
    let e = ctx_params(p, lr, lr / k, chi_l.induce(lr).conj(), params.z, s)?;
    let rv = eis_epstein_rep(&e, Representation::Second)?;
    Ok(Check::new(lhs, pref * rv.value, tail + pref.norm() * rv.tail_bound))
}

/// Exact check that `Σ_{θ|R} μ(θ)φ(θ)/θ · φ(R/θ)/(R/θ)` restricted to `θ | R/r` equals
/// `φ(R)/R · Σ_{θ|R/r} μ(θ)`, and that the latter is `[r = R]`, for every `r | R`.
pub fn moebius_telescoping(r_big: u64) -> bool {
    let q = |a: u64, b: u64| Ratio::new(a as i64, b as i64);
    divisors(r_big).into_iter().all(|r| {
        let m = r_big / r;
        let lhs: Ratio<i64> =
            divisors(m).into_iter().map(|t| q(euler_phi(t), t) * moebius(t) * q(euler_phi(r_big / t), r_big / t)).sum();
        let inner: i64 = divisors(m).into_iter().map(moebius).sum();
        lhs == q(euler_phi(r_big), r_big) * inner && inner == (r == r_big) as i64
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffSeriesParams {
    pub base: EisensteinParams,
    pub q: u64,
    pub r: u64,
}

impl DiffSeriesParams {
    pub fn new(base: EisensteinParams, q: u64, r: u64) -> Result<Self, EisError> {
        pre(crate::arith::is_prime(q), || format!("q = {q} is not prime"))?;
        let (n, p, _) = base.npk();
        pre(r >= 1 && gcd(p as i64, (n * q * r) as i64) == 1, || "gcd(p, Nqr) != 1".into())?;
        Ok(Self { base, q, r })
    }

    pub fn at(&self, z: SiegelPoint) -> Self {
        Self { base: self.base.at(z, self.base.s), ..self.clone() }
    }
}

/// Lattice form of the difference series.
pub fn diff_series_eval(dp: &DiffSeriesParams) -> Result<EpsteinValue, EisError> {
    let (n, p, k) = dp.base.npk();
    let (q, r) = (dp.q, dp.r);
    let s = dp.base.s;
    let pz = pz_form(&dp.base.z).p;
    let a = (n * q * r) as f64;
    let b = (n * n * q * q * r * r * p) as f64 / k as f64;
    let pf = p as f64;
    let psi = |x: i64| dp.base.chi.eval(q as i64 * x);
    let f1 = char_lattice_sum(s, &pz, [a, b, a, q as f64], n, psi)?;
    let f2 = char_lattice_sum(s, &pz, [a * pf, b, a * pf, q as f64], n, psi)?;
    Ok(scale(add(scale(f1, cpow(pf, 0.5 * s)), scale(f2, cpow(pf, 1.5 * s))), cpow(a, 2.0 * s)))
}

/// The two terms `𝔼_{Np}(W_{Np}⟨Z'⟩)` and `𝔼_{Nqp, 𝟙_q χ}(W_{Nqp}⟨Z'⟩)` at `Z' = W_{Nqrp}⟨Z⟩`.
pub fn diff_series_defining_parts(dp: &DiffSeriesParams) -> Result<(EpsteinValue, EpsteinValue), EisError> {
    let (n, p, k) = dp.base.npk();
    let (q, r) = (dp.q, dp.r);
    let zp = w_eta_action((n * q * r * p) as f64, &dp.base.z);
    let e1 = dp.base.at(w_eta_action((n * p) as f64, &zp), dp.base.s);
    let chi_q = dp.base.chi.induce(n * q);
    let e2 = ctx_params(p, n * q, k, chi_q, w_eta_action((n * q * p) as f64, &zp), dp.base.s)?;
    Ok((eis_lattice_continued(&e1)?, eis_lattice_continued(&e2)?))
}

/// Difference of the two parts.
pub fn diff_series_defining(dp: &DiffSeriesParams) -> Result<EpsteinValue, EisError> {
    let (a, b) = diff_series_defining_parts(dp)?;
    Ok(add(a, scale(b, Complex64::new(-1.0, 0.0))))
}

/// `M^tr_η` with `η = N²r²qp/κ`.
pub fn diff_translation(dp: &DiffSeriesParams) -> Result<SpMatrix, EisError> {
    let (n, p, k) = dp.base.npk();
    let eta = crate::qfield::rat((n * n * dp.r * dp.r * dp.q * p) as i64, k as i64);
    Ok(make_generator(&Generator::MEta(eta))?.transpose())
}

/// Five elements of `Γ_{2,1}(A, A²)`, `A = Nqrp`, inside `Sp_4(ℤ)`.
pub fn diff_symmetry_elements(dp: &DiffSeriesParams) -> Vec<SpMatrix> {
    let (n, p, _) = dp.base.npk();
    let a = (n * dp.q * dp.r * p) as i64;
    let u = unit_with_upper(a);
    let blk = SpMatrix::from_ints([
        [u[0][0], u[0][1], 0, 0],
        [u[1][0], u[1][1], 0, 0],
        [0, 0, u[1][1], -u[1][0]],
        [0, 0, -u[0][1], u[0][0]],
    ]);
    let trans = SpMatrix::from_ints([[1, 0, 1, 1], [0, 1, 1, 2], [0, 0, 1, 0], [0, 0, 0, 1]]);
    let lower = SpMatrix::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [5, a, 1, 0], [a, a * a, 0, 1]]);
    let s1 = SpMatrix::from_ints([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]]);
    let prod = s1.clone() * trans.clone() * s1.clone();
    vec![blk, trans, lower, s1, prod]
}

/// `[[u, A], [c, d]]` with `u` the least integer `> 1` coprime to `A` and `ud − Ac = 1`.
fn unit_with_upper(a: i64) -> [[i64; 2]; 2] {
    let u = (2..).find(|&u| gcd(u, a) == 1).unwrap();
    let (_, x, y) = crate::arith::ext_gcd(u, a);
    // u x + a y = 1
    [[u, a], [-y, x]]
}

/// Value at `M⟨Z⟩` and the character factor `χ̄(M₄₄)` expected for weight 0.
pub fn diff_symmetry_check(dp: &DiffSeriesParams, m: &SpMatrix) -> Result<Check, EisError> {
    let mz = siegel_action(m, &dp.base.z)?;
    let at = diff_series_eval(&dp.at(mz))?;
    let here = diff_series_eval(dp)?;
    let d = m.at(4, 4).as_i64().ok_or(GroupError::NotInGroup)?;
    let factor = dp.base.chi.conj().eval(d);
    Ok(Check::new(at.value, factor * here.value, at.tail_bound + here.tail_bound))
}

/// For prime `q | N` and primitive `χ`: the `q` sums `Σ_λ χ(λ₄ + Nν/q) P_Z[…]^{-s}` and their total.
pub fn vanishing_sum(params: &EisensteinParams, q: u64) -> Result<(Vec<Complex64>, Complex64), EisError> {
    let (n, p, k) = params.npk();
    pre(n % q == 0 && crate::arith::is_prime(q), || format!("q = {q} must be a prime dividing N"))?;
    let pz = pz_form(&params.z).p;
    let nf = n as f64;
    let b = (n * n * p) as f64 / k as f64;
    let shift = (n / q) as i64;
    let mut parts = Vec::new();
    for nu in 0..q as i64 {
        let v = char_lattice_sum(params.s, &pz, [nf, b, nf, 1.0], n, |x| params.chi.eval(x + shift * nu))?;
        parts.push(v.value);
    }
    let total = parts.iter().sum();
    Ok((parts, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    fn generic_z() -> SiegelPoint {
        SiegelPoint::from_six([0.13, -0.21, 0.34, 1.1, 0.27, 0.9]).unwrap()
    }

    #[test]
    fn level_one_second_rep_matches_lattice() {
        let chi = DirichletCharacter::principal(1);
        let e = EisensteinParams::new(5, 1, 1, chi, SiegelPoint::i_identity(), Complex64::new(2.6, 0.0)).unwrap();
        let a = eis_lattice_rep(&e).unwrap().value;
        let b = eis_epstein_rep(&e, Representation::Second).unwrap().value;
        let c = eis_epstein_rep(&e, Representation::Third).unwrap().value;
        assert!((a - b).norm() < 1e-9 * a.norm(), "{a} {b}");
        assert!((a - c).norm() < 1e-9 * a.norm(), "{a} {c}");
    }

    #[test]
    fn displayed_delta_shift_differs_by_chi_p() {
        // even character with χ(p) = −1: quadratic mod 5, p = 7
        let chi = enumerate_characters(5).into_iter().find(|c| c.order() == 2).unwrap();
        assert_eq!(chi.eval(7).re, -1.0);
        let e = EisensteinParams::new(7, 5, 1, chi, generic_z(), Complex64::new(2.7, 0.0)).unwrap();
        let lat = eis_lattice_rep(&e).unwrap().value;
        let der = eis_epstein_rep_with(&e, Representation::Second, DeltaShift::Derived).unwrap().value;
        let shown = eis_epstein_rep_with(&e, Representation::Second, DeltaShift::AsDisplayed).unwrap().value;
        assert!(lat.norm() > 1e-6);
        assert!((lat - der).norm() < 1e-8 * lat.norm(), "{lat} {der}");
        assert!((lat - shown).norm() > 1e-3 * lat.norm(), "{lat} {shown}");
    }

    #[test]
    fn telescoping_is_exact() {
        for r in [1, 2, 3, 6, 10, 30, 210] {
            assert!(moebius_telescoping(r));
        }
    }

    #[test]
    fn translation_invariance_in_x() {
        let chi = DirichletCharacter::principal(2);
        let e = EisensteinParams::new(3, 2, 1, chi, generic_z(), Complex64::new(2.6, 0.0)).unwrap();
        let m = make_generator(&Generator::MEta(rat_int(1))).unwrap();
        let mz = siegel_action(&m, &e.z).unwrap();
        let a = eis_lattice_rep(&e).unwrap().value;
        let b = eis_lattice_rep(&e.at(mz, e.s)).unwrap().value;
        assert!((a - b).norm() < 1e-9 * a.norm());
    }
}
