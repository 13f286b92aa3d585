//! Paramodular groups of degree 2: generators, membership, last rows, cosets.
//!
//! Groups are realised inside `Sp_4(ℚ(√p))` with respect to `J_1`; the paramodular
//! group of level `t` is the stabiliser of the lattice pattern
//! `[[ℤ, tℤ, ℤ, ℤ], [ℤ, ℤ, ℤ, ℤ/t], [ℤ, tℤ, ℤ, ℤ], [tℤ, tℤ, tℤ, ℤ]]`.

mod fj;
mod matrix;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use fj::{build_fj_conjugators, fj_product, is_klingen_parabolic, FjParams};
pub use matrix::{j_form, SpMatrix};

use crate::arith::{divisors, ext_gcd, gcd, inv_mod};
use crate::characters::{reduce_angle, Angle, DirichletCharacter};
use crate::qfield::{rat, rat_int, QfError, QuadExt, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] QfError),
    #[error("last row fits no row type: {0}")]
    NoRowType(String),
    #[error("matrix is not in the extended group")]
    NotInGroup,
}

fn pre(ok: bool, msg: impl FnOnce() -> String) -> Result<(), GroupError> {
    if ok {
        Ok(())
    } else {
        Err(GroupError::Precondition(msg()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    pub p: u64,
    /// Polarization of the paramodular group (usually `p`, or 1 for `Sp_4(ℤ)`).
    pub t: u64,
    pub n: u64,
    pub kappa: u64,
    pub nu: Option<u64>,
    pub theta: Option<u64>,
}

impl GroupContext {
    pub fn new(p: u64, n: u64, kappa: u64) -> Result<Self, GroupError> {
        pre(crate::arith::is_prime(p), || format!("{p} is not prime"))?;
        pre(n >= 1 && gcd(p as i64, n as i64) == 1, || format!("gcd({p}, {n}) != 1"))?;
        pre(kappa >= 1 && n.is_multiple_of(kappa), || format!("κ = {kappa} does not divide N = {n}"))?;
        Ok(Self { p, t: p, n, kappa, nu: None, theta: None })
    }

    pub fn with_t(mut self, t: u64) -> Self {
        self.t = t;
        self
    }

    pub fn with_nu_theta(mut self, nu: u64, theta: u64) -> Result<Self, GroupError> {
        pre(self.n.is_multiple_of(nu) && self.n.is_multiple_of(theta), || "ν, θ must divide N".into())?;
        pre(nu * theta == self.n, || "ν·θ must equal N".into())?;
        self.nu = Some(nu);
        self.theta = Some(theta);
        Ok(self)
    }
}

/// `√d` as an element of `ℚ(√d')`, `d'` the square-free part of `d`.
pub fn sqrt_int(d: u64) -> QuadExt {
    let mut k = 1i64;
    let mut sf = 1u64;
    for (q, e) in crate::arith::factorize(d) {
        k *= (q as i64).pow(e / 2);
        if e % 2 == 1 {
            sf *= q;
        }
    }
    if sf == 1 {
        QuadExt::from_int(k)
    } else {
        QuadExt::surd(rat_int(k), sf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    MEta(Rational),
    WEta(Rational),
    DEta(Rational),
    Pdt { d: u64, t: u64, x: i64, y: i64 },
    MLambda([i64; 2]),
    MDGamma { n: u64, p: u64, d: u64, theta: u64, gamma: i64 },
    J,
}

/// Canonical Bézout pair for `P_{d,t}`: `x d − y t/d = 1` with `0 <= x < t/d`.
pub fn pdt_bezout(d: u64, t: u64) -> Result<(i64, i64), GroupError> {
    pre(d >= 1 && t.is_multiple_of(d), || format!("{d} does not divide {t}"))?;
    let e = (t / d) as i64;
    pre(gcd(d as i64, e) == 1, || format!("gcd({d}, {e}) != 1"))?;
    let x = inv_mod(d as i64, e).expect("coprime");
    let y = (x * d as i64 - 1) / e;
    Ok((x, y))
}

fn q(n: i64) -> QuadExt {
    QuadExt::from_int(n)
}

pub fn make_generator(g: &Generator) -> Result<SpMatrix, GroupError> {
    let mut m = SpMatrix::identity();
    match g {
        Generator::MEta(eta) => m.set(1, 3, eta.clone().into()),
        Generator::WEta(eta) => {
            pre(!eta.is_zero(), || "η = 0".into())?;
            m = SpMatrix::zero();
            m.set(0, 2, q(1));
            m.set(1, 3, eta.recip().into());
            m.set(2, 0, q(-1));
            m.set(3, 1, (-eta.clone()).into());
        }
        Generator::J => return make_generator(&Generator::WEta(rat_int(1))),
        Generator::DEta(eta) => {
            pre(!eta.is_zero(), || "η = 0".into())?;
            m.set(1, 1, eta.clone().into());
            m.set(3, 3, eta.recip().into());
        }
        Generator::Pdt { d, t, x, y } => {
            let (d, t) = (*d, *t);
            pre(d >= 1 && t % d == 0, || format!("{d} does not divide {t}"))?;
            pre(gcd(d as i64, (t / d) as i64) == 1, || "gcd(d, t/d) != 1".into())?;
            pre(x * d as i64 - y * (t / d) as i64 == 1, || "x d − y t/d != 1".into())?;
            let sd = sqrt_int(d);
            let inv = sd.inverse()?;
            m = SpMatrix::zero();
            m.set(0, 0, sd.scale(&rat_int(*x)));
            m.set(0, 1, inv.scale(&rat_int(-(t as i64))));
            m.set(1, 0, inv.scale(&rat_int(-*y)));
            m.set(1, 1, sd.clone());
            m.set(2, 2, sd.clone());
            m.set(2, 3, inv.scale(&rat_int(*y)));
            m.set(3, 2, inv.scale(&rat_int(t as i64)));
            m.set(3, 3, sd.scale(&rat_int(*x)));
        }
        Generator::MLambda([l1, l2]) => {
            let (g, x, y) = ext_gcd(*l1, *l2);
            pre(g == 1, || format!("λ = ({l1}, {l2}) is not primitive"))?;
            // [[y, -x], [l1, l2]] has determinant x l1 + y l2 = 1
            m.set(0, 0, q(y));
            m.set(0, 2, q(-x));
            m.set(2, 0, q(*l1));
            m.set(2, 2, q(*l2));
        }
        Generator::MDGamma { n, p, d, theta, gamma } => {
            pre(*theta >= 1 && n % theta == 0, || "θ must divide N".into())?;
            let ndp = (n * d * p) as i64;
            m.set(0, 1, q(-ndp));
            m.set(3, 1, q((n * n / theta * p) as i64 * gamma));
            m.set(3, 2, q(ndp));
        }
    }
    Ok(m)
}

/// `M J_t M^tr = J_t`.
pub fn preserves_j(m: &SpMatrix, t: i64) -> bool {
    let j = j_form(t);
    m.try_mul(&j).and_then(|mj| mj.try_mul(&m.transpose())).map(|r| r == j).unwrap_or(false)
}

fn divisible(x: &QuadExt, f: &Rational) -> bool {
    x.is_rational() && (x.a() / f).is_integer()
}

/// Membership in the paramodular group of level `t`.
pub fn is_paramodular(m: &SpMatrix, t: u64) -> bool {
    let t = rat_int(t as i64);
    let one = Rational::one();
    let pattern = [[&one, &t, &one, &one], [&one, &one, &one, &t.recip()], [&one, &t, &one, &one], [&t, &t, &t, &one]];
    (0..4).all(|i| (0..4).all(|j| divisible(m.get(i, j), pattern[i][j]))) && preserves_j(m, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// `M J_t M^tr = J_t` with `t` from the context.
    Sp,
    Paramodular,
    Gamma21,
    Gamma21Level,
    Gamma21Level1,
    GammaStar,
}

fn row_ok(m: &SpMatrix, ctx: &GroupContext) -> bool {
    let (p, n, k) = (ctx.p as i64, ctx.n as i64, ctx.kappa as i64);
    divisible(m.at(4, 1), &rat_int(n * p))
        && divisible(m.at(4, 2), &rat(p * n * n, k))
        && divisible(m.at(4, 3), &rat_int(n * p))
}

pub fn similitude_member(m: &SpMatrix, group: Group, ctx: &GroupContext) -> bool {
    match group {
        Group::Sp => preserves_j(m, ctx.t as i64),
        Group::Paramodular => is_paramodular(m, ctx.t),
        Group::Gamma21 => {
            is_paramodular(m, ctx.t)
                && m.at(4, 1).is_zero()
                && m.at(4, 2).is_zero()
                && m.at(4, 3).is_zero()
                && m.at(4, 4).as_i64() == Some(1)
        }
        Group::Gamma21Level => is_paramodular(m, ctx.t) && row_ok(m, ctx),
        Group::Gamma21Level1 => {
            similitude_member(m, Group::Gamma21Level, ctx)
                && m.at(4, 4).as_i64().is_some_and(|d| {
                    let n = ctx.n as i64;
                    (d - 1).rem_euclid(n) == 0 || (d + 1).rem_euclid(n) == 0
                })
        }
        Group::GammaStar => {
            similitude_member(m, Group::Gamma21Level, ctx)
                || make_hp(ctx.p, ctx.n)
                    .and_then(|h| Ok(m.try_mul(&h.inverse()?)?))
                    .is_ok_and(|mh| similitude_member(&mh, Group::Gamma21Level, ctx))
        }
    }
}

/// Least positive inverse of `p` mod `N` (1 when `N = 1`).
pub fn p_star(p: u64, n: u64) -> u64 {
    match inv_mod(p as i64, n as i64) {
        Some(0) | None => 1,
        Some(x) => x as u64,
    }
}

/// `H_p(N) = diag(U^{-tr}, U)·P_{p,p}` with `x = 1`, `y = p − 1`.
pub fn make_hp(p: u64, n: u64) -> Result<SpMatrix, GroupError> {
    pre(gcd(p as i64, n as i64) == 1, || format!("gcd({p}, {n}) != 1"))?;
    let ps = p_star(p, n) as i64;
    let pi = p as i64;
    let u = [[1 + ps * pi, -1], [-ps * pi, 1]];
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    debug_assert_eq!(det, 1);
    // U^{-tr} for det U = 1
    let uit = [[u[1][1], -u[1][0]], [-u[0][1], u[0][0]]];
    let mut blk = SpMatrix::zero();
    for i in 0..2 {
        for j in 0..2 {
            blk.set(i, j, q(uit[i][j]));
            blk.set(i + 2, j + 2, q(u[i][j]));
        }
    }
    let pp = make_generator(&Generator::Pdt { d: p, t: p, x: 1, y: pi - 1 })?;
    let h = blk.try_mul(&pp)?;
    let corner = h.at(4, 3).try_mul(&sqrt_int(p))?;
    debug_assert!(corner.as_i64().is_some_and(|c| c % n as i64 == 0));
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowVariant {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowType {
    pub variant: RowVariant,
    pub lambda: [i64; 4],
    /// 1-based index of the entry of λ that is coprime to `p`.
    pub unit_flag: usize,
}

fn int_of(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

/// Which patterns the last row matches; a valid group element matches exactly one.
pub fn row_matches(m: &SpMatrix, ctx: &GroupContext) -> Vec<RowType> {
    let (p, n, k) = (ctx.p as i64, ctx.n as i64, ctx.kappa as i64);
    let row = m.last_row();
    let rational = row.iter().all(QuadExt::is_rational);
    let surd = row.iter().all(|x| x.a().is_zero());
    let mut out = Vec::new();
    let pn2k = rat(p * n * n, k);
    let check = |variant, vals: [Rational; 4], divs: [Rational; 4], flag: usize, out: &mut Vec<RowType>| {
        let lam: Option<Vec<i64>> = vals.iter().zip(&divs).map(|(v, d)| int_of(&(v / d))).collect();
        let Some(l) = lam else { return };
        let lambda = [l[0], l[1], l[2], l[3]];
        let g = lambda.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 || gcd(lambda[3], n) != 1 || lambda[flag - 1] % p == 0 {
            return;
        }
        out.push(RowType { variant, lambda, unit_flag: flag });
    };
    if rational {
        let v: [Rational; 4] = std::array::from_fn(|i| row[i].a().clone());
        let pn = rat_int(p * n);
        check(RowVariant::T1, v.clone(), [pn.clone(), pn2k.clone(), pn.clone(), rat_int(1)], 4, &mut out);
        check(RowVariant::T2, v, [pn.clone(), pn2k.clone(), pn, rat_int(p)], 2, &mut out);
    }
    if surd && (row.iter().any(|x| !x.is_zero())) {
        let rad = row.iter().map(QuadExt::radicand).max().unwrap_or(1);
        if rad == ctx.p {
            let v: [Rational; 4] = std::array::from_fn(|i| row[i].b().clone());
            let nn = rat_int(n);
            let pn = rat_int(p * n);
            check(RowVariant::T3, v.clone(), [nn.clone(), pn2k.clone(), nn.clone(), rat_int(1)], 1, &mut out);
            check(RowVariant::T4, v, [pn, pn2k, nn, rat_int(1)], 3, &mut out);
        }
    }
    out
}

pub fn classify_last_row(m: &SpMatrix, ctx: &GroupContext) -> Result<RowType, GroupError> {
    let mut hits = row_matches(m, ctx);
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(GroupError::NoRowType(format!("{:?}", m.last_row().map(|x| x.to_string())))),
        _ => Err(GroupError::NoRowType(format!("ambiguous: {hits:?}"))),
    }
}

/// Matrix in `Γ_{2,1}`-form with prescribed integral last row `(r1, r2, r3, 1)`.
pub fn complete_last_row(r1: i64, r2: i64, r3: i64) -> SpMatrix {
    // [[V^{-tr}, 0], [S V^{-tr}, V]] with V = [[1, 0], [r3, 1]], S = [[0, r1], [r1, r2 + r1 r3]]
    SpMatrix::from_ints([[1, -r3, 0, 0], [0, 1, 0, 0], [0, r1, 1, 0], [r1, r2, r3, 1]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaRange {
    /// All `λ ∈ {1, …, ν/d}²`.
    Full,
    /// Only `λ` with `gcd(λ₁, λ₂, ν/d) = 1`.
    Primitive,
}

/// Representatives `M_{d,γ} M_λ` of `Γ_{2,1}(Nνp, (Nν)²p) \ Γ_{2,1}(Np, pN²/θ)`.
pub fn coset_reps(ctx: &GroupContext, nu: u64, theta: u64) -> Result<Vec<SpMatrix>, GroupError> {
    coset_reps_with(ctx, nu, theta, LambdaRange::Full)
}

pub fn coset_reps_with(
    ctx: &GroupContext,
    nu: u64,
    theta: u64,
    range: LambdaRange,
) -> Result<Vec<SpMatrix>, GroupError> {
    pre(ctx.n.is_multiple_of(nu) && ctx.n.is_multiple_of(theta), || "ν, θ must divide N".into())?;
    let mut out = Vec::new();
    for d in divisors(nu) {
        let e = (nu / d) as i64;
        for gamma in 0..(theta * nu * nu) as i64 {
            let mdg = make_generator(&Generator::MDGamma { n: ctx.n, p: ctx.p, d, theta, gamma })?;
            for l1 in 1..=e {
                for l2 in 1..=e {
                    if range == LambdaRange::Primitive && gcd(gcd(l1, l2), e) != 1 {
                        continue;
                    }
                    let rep = if gcd(l1, l2) == 1 {
                        mdg.try_mul(&make_generator(&Generator::MLambda([l1, l2]))?)?
                    } else {
                        // M_λ does not exist; any matrix with the same last row is in the same coset
                        let ndp = (ctx.n * d * ctx.p) as i64;
                        let g = (ctx.n * ctx.n / theta * ctx.p) as i64 * gamma;
                        complete_last_row(ndp * l1, g, ndp * l2)
                    };
                    out.push(rep);
                }
            }
        }
    }
    Ok(out)
}

/// Count predicted for the full λ range: `Σ_{d|ν} θν²(ν/d)²`.
pub fn coset_count(nu: u64, theta: u64) -> u64 {
    divisors(nu).iter().map(|d| theta * nu * nu * (nu / d) * (nu / d)).sum()
}

pub fn coset_equivalent(m1: &SpMatrix, m2: &SpMatrix, subgroup: impl Fn(&SpMatrix) -> bool) -> bool {
    m2.inverse().and_then(|i| m1.try_mul(&i)).is_ok_and(|x| subgroup(&x))
}

/// Context of the finer group `Γ_{2,1}(Nνp, (Nν)²p)` at the same polarization.
pub fn fine_context(ctx: &GroupContext, nu: u64) -> GroupContext {
    GroupContext { p: ctx.p, t: ctx.t, n: ctx.n * nu, kappa: 1, nu: None, theta: None }
}

/// Generators (with inverses) of `Γ_{2,1}(Np, pN²/κ)` in the paramodular group of level `ctx.t`.
pub fn level_generators(ctx: &GroupContext) -> Vec<SpMatrix> {
    let (p, n, k, t) = (ctx.p as i64, ctx.n as i64, ctx.kappa as i64, ctx.t as i64);
    let mut gens: Vec<SpMatrix> = Vec::new();
    let upper = |b11: Rational, b12: Rational, b22: Rational| {
        let mut m = SpMatrix::identity();
        m.set(0, 2, b11.into());
        m.set(0, 3, b12.clone().into());
        m.set(1, 2, b12.into());
        m.set(1, 3, b22.into());
        m
    };
    let lower = |c11: i64, c12: i64, c22: i64| {
        SpMatrix::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [c11, c12, 1, 0], [c12, c22, 0, 1]])
    };
    let blockdiag = |a: [[i64; 2]; 2]| {
        // det ±1
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let dit = [[a[1][1] * det, -a[1][0] * det], [-a[0][1] * det, a[0][0] * det]];
        SpMatrix::from_ints([
            [a[0][0], a[0][1], 0, 0],
            [a[1][0], a[1][1], 0, 0],
            [0, 0, dit[0][0], dit[0][1]],
            [0, 0, dit[1][0], dit[1][1]],
        ])
    };
    gens.push(upper(rat_int(1), rat_int(0), rat_int(0)));
    gens.push(upper(rat_int(0), rat_int(1), rat_int(0)));
    gens.push(upper(rat_int(0), rat_int(0), rat(1, t)));
    gens.push(lower(1, 0, 0));
    gens.push(lower(0, n * p, 0));
    gens.push(lower(0, 0, p * n * n / k));
    gens.push(blockdiag([[1, n * p], [0, 1]]));
    gens.push(blockdiag([[1, 0], [1, 1]]));
    gens.push(blockdiag([[-1, 0], [0, 1]]));
    gens.push(blockdiag([[1, 0], [0, -1]]));
    gens.push(SpMatrix::from_ints([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]]));
    let invs: Vec<SpMatrix> = gens.iter().map(|g| g.inverse().expect("unimodular")).collect();
    gens.extend(invs);
    gens
}

/// Right cosets `H·R` of a subgroup `H` inside the group generated by `gens`, found by
/// breadth-first search from the identity coset. Stops after `limit` cosets.
pub fn enumerate_cosets(gens: &[SpMatrix], subgroup: impl Fn(&SpMatrix) -> bool, limit: usize) -> Vec<SpMatrix> {
    let mut reps = vec![SpMatrix::identity()];
    let mut inv = vec![SpMatrix::identity()];
    let mut next = 0;
    while next < reps.len() && reps.len() < limit {
        let r = reps[next].clone();
        next += 1;
        for g in gens {
            let c = r.try_mul(g).expect("same field");
            let known = inv.iter().any(|i| c.try_mul(i).is_ok_and(|x| subgroup(&x)));
            if !known {
                inv.push(c.inverse().expect("invertible"));
                reps.push(c);
                if reps.len() >= limit {
                    break;
                }
            }
        }
    }
    reps
}

/// Sign convention for the extended character on `H_p(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Plus,
    KMinus(i64),
}

/// Extended character value as an angle, `None` for the value 0.
pub fn extended_char_angle(
    m: &SpMatrix,
    chi: &DirichletCharacter,
    sign: SignChoice,
    ctx: &GroupContext,
) -> Result<Option<Angle>, GroupError> {
    pre((ctx.p as i64 - 1).rem_euclid(ctx.n as i64) == 0, || "the ± convention needs p ≡ 1 (N)".into())?;
    let delta = |x: &SpMatrix| x.at(4, 4).as_i64().ok_or(GroupError::NotInGroup);
    if similitude_member(m, Group::Gamma21Level, ctx) {
        return Ok(chi.angle(delta(m)?));
    }
    let h = make_hp(ctx.p, ctx.n)?;
    let mh = m.try_mul(&h.inverse()?)?;
    if !similitude_member(&mh, Group::Gamma21Level, ctx) {
        return Err(GroupError::NotInGroup);
    }
    let root = match sign {
        SignChoice::Plus => Angle::zero(),
        SignChoice::KMinus(k) => Angle::new(k.rem_euclid(2), 2),
    };
    Ok(chi.angle(delta(&mh)?).map(|a| reduce_angle(a + root)))
}

pub fn extended_char_eval(
    m: &SpMatrix,
    chi: &DirichletCharacter,
    sign: SignChoice,
    ctx: &GroupContext,
) -> Result<num_complex::Complex64, GroupError> {
    Ok(extended_char_angle(m, chi, sign, ctx)?.map_or(num_complex::Complex64::zero(), crate::characters::cis))
}

/// Integral entries of a rational matrix, if all are integers.
pub fn integer_entries(m: &SpMatrix) -> Option<[[BigInt; 4]; 4]> {
    if !m.is_integral() {
        return None;
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).as_integer().unwrap())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_generators() {
        let j = make_generator(&Generator::J).unwrap();
        assert_eq!(make_generator(&Generator::WEta(rat_int(1))).unwrap(), j);
        assert!(make_generator(&Generator::DEta(rat_int(1))).unwrap().is_identity());
        assert!(preserves_j(&j, 1));
        let (x, y) = pdt_bezout(5, 5).unwrap();
        assert_eq!((x, y), (0, -1));
        assert!(make_generator(&Generator::MLambda([2, 2])).is_err());
        assert!(make_generator(&Generator::Pdt { d: 5, t: 5, x: 1, y: 3 }).is_err());
    }

    #[test]
    fn hp_corner_entry() {
        let h = make_hp(5, 4).unwrap();
        let c = h.at(4, 3).try_mul(&sqrt_int(5)).unwrap();
        assert_eq!(c.as_i64(), Some(-20));
        assert!(make_hp(7, 1).is_ok());
    }

    #[test]
    fn identity_row_type() {
        let ctx = GroupContext::new(5, 4, 1).unwrap();
        let r = classify_last_row(&SpMatrix::identity(), &ctx).unwrap();
        assert_eq!(r.variant, RowVariant::T1);
        assert_eq!(r.lambda, [0, 0, 0, 1]);
    }

    #[test]
    fn coset_counts() {
        assert_eq!(coset_count(2, 1), 20);
        let ctx = GroupContext::new(5, 4, 1).unwrap();
        assert_eq!(coset_reps(&ctx, 1, 4).unwrap().len(), 4);
        assert_eq!(coset_reps(&ctx, 2, 1).unwrap().len(), 20);
        assert_eq!(coset_reps_with(&ctx, 2, 1, LambdaRange::Primitive).unwrap().len(), 16);
    }
}
