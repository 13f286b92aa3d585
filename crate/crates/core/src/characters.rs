//! Dirichlet characters with exact angle values.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::arith::{divisors, euler_phi, factorize, gcd, inv_mod, modp, moebius};

/// Element of ℚ/ℤ; the character value is `e^{2πi·angle}`.
pub type Angle = Ratio<i64>;

pub fn reduce_angle(a: Angle) -> Angle {
    let f = Ratio::from_integer(a.floor().to_integer());
    a - f
}

pub fn cis(a: Angle) -> Complex64 {
    let a = reduce_angle(a);
    let x = 2.0 * std::f64::consts::PI * (*a.numer() as f64) / (*a.denom() as f64);
    Complex64::new(x.cos(), x.sin())
}

/// `e^{2πi n/d}` with the argument reduced exactly first.
pub fn e_frac(n: i64, d: i64) -> Complex64 {
    cis(Angle::new(modp(n, d), d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Option<Angle>>,
}

/// One cyclic factor of `(ℤ/N)^×`: generator `g` of order `ord` modulo the prime power `q`.
#[derive(Debug, Clone, Copy)]
struct Component {
    q: u64,
    g: u64,
    ord: u64,
}

fn unit_components(n: u64) -> Vec<Component> {
    let mut comps = Vec::new();
    for (l, e) in factorize(n) {
        let q = l.pow(e);
        if l == 2 {
            match e {
                1 => {}
                2 => comps.push(Component { q, g: q - 1, ord: 2 }),
                _ => {
                    comps.push(Component { q, g: q - 1, ord: 2 });
                    comps.push(Component { q, g: 5, ord: q / 4 });
                }
            }
        } else {
            let ord = euler_phi(q);
            let g = (2..q)
                .find(|&g| {
                    gcd(g as i64, q as i64) == 1
                        && factorize(ord).iter().all(|&(f, _)| crate::arith::pow_mod(g as i64, ord / f, q as i64) != 1)
                })
                .unwrap_or(1);
            comps.push(Component { q, g, ord });
        }
    }
    comps
}

/// Discrete logs of every unit mod `n` with respect to the canonical components.
fn unit_logs(n: u64, comps: &[Component]) -> Vec<Option<Vec<u64>>> {
    let mut logs = vec![None; n as usize];
    // 2^e with e >= 3 contributes (-1)^a 5^b; other components are single cyclic groups.
    let mut tables: Vec<Vec<Option<u64>>> = Vec::new();
    for c in comps {
        let mut t = vec![None; c.q as usize];
        let mut x = 1u64;
        for k in 0..c.ord {
            t[x as usize] = Some(k);
            x = x * c.g % c.q;
        }
        tables.push(t);
    }
    for u in 0..n {
        if gcd(u as i64, n as i64) != 1 {
            continue;
        }
        let mut v = Vec::with_capacity(comps.len());
        let mut i = 0;
        while i < comps.len() {
            let c = comps[i];
            let r = u % c.q;
            if c.q.is_multiple_of(8) && c.g == c.q - 1 {
                let (a, r5) = if r % 4 == 1 { (0, r) } else { (1, c.q - r) };
                v.push(a);
                v.push(tables[i + 1][r5 as usize].expect("power of 5"));
                i += 2;
            } else {
                v.push(tables[i][r as usize].expect("unit"));
                i += 1;
            }
        }
        logs[u as usize] = Some(v);
    }
    logs
}

impl DirichletCharacter {
    /// Character with the given exponent vector on the canonical generators.
    fn from_exponents(n: u64, comps: &[Component], logs: &[Option<Vec<u64>>], exps: &[u64]) -> Self {
        let values = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    let a = comps.iter().zip(l).zip(exps).fold(Angle::zero(), |acc, ((c, &k), &a)| {
                        acc + Angle::new((a * k % c.ord) as i64, c.ord as i64)
                    });
                    reduce_angle(a)
                })
            })
            .collect();
        Self { modulus: n, values }
    }

    pub fn principal(n: u64) -> Self {
        let values = (0..n).map(|u| (gcd(u as i64, n as i64) == 1).then(Angle::zero)).collect();
        Self { modulus: n, values }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Angle of `χ(n)`, or `None` when `gcd(n, N) > 1`.
    pub fn angle(&self, n: i64) -> Option<Angle> {
        self.values[modp(n, self.modulus as i64) as usize]
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        self.angle(n).map_or(Complex64::zero(), cis)
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        Self { modulus: self.modulus, values: self.values.iter().map(|v| v.map(|a| reduce_angle(-a))).collect() }
    }

    /// Pointwise product of two characters, lifted to the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = crate::arith::lcm(self.modulus as i64, other.modulus as i64);
        let values = (0..m)
            .map(|u| match (self.angle(u), other.angle(u)) {
                (Some(a), Some(b)) => Some(reduce_angle(a + b)),
                _ => None,
            })
            .collect();
        Self { modulus: m as u64, values }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.map(|a| reduce_angle(a * Angle::from_integer(k)))).collect(),
        }
    }

    /// The character mod `m` (a multiple of the modulus) induced by this one.
    pub fn induce(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.modulus), "induction needs a multiple of the modulus");
        let values = (0..m).map(|u| if gcd(u as i64, m as i64) == 1 { self.angle(u as i64) } else { None }).collect();
        Self { modulus: m, values }
    }

    /// Smallest `L | N` such that the character is trivial on units `≡ 1 (L)`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        divisors(n)
            .into_iter()
            .find(|&l| {
                (0..n).all(|u| match self.values[u as usize] {
                    Some(a) => u % l != 1 % l || a.is_zero(),
                    None => true,
                })
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character mod the conductor inducing this one.
    pub fn primitive_core(&self) -> Self {
        let l = self.conductor();
        let n = self.modulus as i64;
        let values = (0..l as i64)
            .map(|a| {
                if gcd(a, l as i64) != 1 {
                    return None;
                }
                // lift a mod L to a unit mod N
                (0..n / l as i64).map(|k| a + k * l as i64).find(|&u| gcd(u, n) == 1).and_then(|u| self.angle(u))
            })
            .collect();
        Self { modulus: l, values }
    }

    /// Position of this character in `enumerate_characters(N)`.
    pub fn index(&self) -> usize {
        enumerate_characters(self.modulus).iter().position(|c| c == self).expect("every character mod N is enumerated")
    }

    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .flatten()
            .map(|a| *a.denom() as u64)
            .fold(1, |acc, d| crate::arith::lcm(acc as i64, d as i64) as u64)
    }

    /// `χ(-1) = ±1`.
    pub fn parity(&self) -> i64 {
        match self.angle(-1) {
            Some(a) if a.is_zero() => 1,
            _ => -1,
        }
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ mod {} [", self.modulus)?;
        for (u, v) in self.values.iter().enumerate() {
            if let Some(a) = v {
                write!(f, " {u}:{a}")?;
            }
        }
        write!(f, " ]")
    }
}

/// All characters mod `n`, ordered lexicographically by exponent vector on the
/// canonical generators (primes ascending; for `2^e`, `e >= 3`, first `-1` then `5`;
/// odd prime powers use their least primitive root).
pub fn enumerate_characters(n: u64) -> Vec<DirichletCharacter> {
    assert!(n >= 1);
    let comps = unit_components(n);
    let logs = unit_logs(n, &comps);
    let mut out = Vec::new();
    let mut exps = vec![0u64; comps.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(n, &comps, &logs, &exps));
        let mut i = comps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < comps[i].ord {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// Character mod `n` addressed by its canonical index.
pub fn character(n: u64, index: usize) -> Option<DirichletCharacter> {
    enumerate_characters(n).into_iter().nth(index)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterDecomposition {
    pub conductor: u64,
    pub primitive_core: DirichletCharacter,
    /// Product of the primes dividing `N` but not `L`.
    pub r: u64,
    pub lr: u64,
    /// `N / (L R)`.
    pub nu: u64,
}

pub fn decompose(chi: &DirichletCharacter) -> CharacterDecomposition {
    let n = chi.modulus();
    let l = chi.conductor();
    let r: u64 = factorize(n).iter().map(|&(q, _)| q).filter(|q| !l.is_multiple_of(*q)).product();
    CharacterDecomposition { conductor: l, primitive_core: chi.primitive_core(), r, lr: l * r, nu: n / (l * r) }
}

/// Least period of `m ↦ χ(m)` as a function on ℤ (zero on non-units).
pub fn minimal_period(chi: &DirichletCharacter) -> u64 {
    let n = chi.modulus() as i64;
    divisors(n as u64)
        .into_iter()
        .find(|&d| (0..n).all(|m| chi.angle(m) == chi.angle(m + d as i64)))
        .unwrap_or(n as u64)
}

pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let n = chi.modulus() as i64;
    (0..n).filter_map(|g| chi.angle(g).map(|a| cis(a + Angle::new(g, n)))).sum()
}

/// `A_{χ,ν}(m)` by direct double summation over units mod `Nν`.
pub fn achisum_bruteforce(chi: &DirichletCharacter, nu: u64, m: i64) -> Complex64 {
    achisum_table(chi, nu)[modp(m, (chi.modulus() * nu) as i64) as usize]
}

/// `A_{χ,ν}(m)` for all `m mod Nν`, from one pass over the double sum.
pub fn achisum_table(chi: &DirichletCharacter, nu: u64) -> Vec<Complex64> {
    let n = chi.modulus() as i64;
    let nu = nu as i64;
    assert!(n % nu == 0, "ν must divide N");
    let m = n * nu;
    let units: Vec<(i64, i64)> =
        (0..m).filter_map(|b| inv_mod(b, m).filter(|_| gcd(b, m) == 1).map(|bi| (b, bi))).collect();
    // coefficient of e^{2πi k/(Nν)} where k = γ* − β*
    let mut coef = vec![Complex64::zero(); m as usize];
    for &(b, bi) in &units {
        for &(g, gi) in &units {
            if (b - g) % nu != 0 {
                continue;
            }
            if let Some(a) = chi.angle((b - g) / nu) {
                coef[modp(gi - bi, m) as usize] += cis(a);
            }
        }
    }
    (0..m)
        .map(|mm| {
            coef.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| c * e_frac(mm * k as i64, m)).sum()
        })
        .collect()
}

/// Closed form of `A_{χ,ν}(m)`, using the decomposition of `χ²`.
pub fn achisum_closed(chi: &DirichletCharacter, nu: u64, m: i64) -> Complex64 {
    let n = chi.modulus();
    let chi2 = chi.pow(2);
    let dec = decompose(&chi2);
    let (l, r_big) = (dec.conductor, dec.r);
    let lr = dec.lr;
    if !(nu * lr).is_multiple_of(n) {
        return Complex64::zero();
    }
    let core = &dec.primitive_core;
    let r = n / gcd(n as i64, (l * nu) as i64) as u64;
    debug_assert_eq!(r_big % r, 0);
    let g_bar = gauss_sum(&chi.conj());
    let pref = nu as f64 / lr as f64 * moebius(r) as f64 * euler_phi(r_big / r) as f64;
    pref * chi.eval(-m)
        * core.eval(r_big as i64)
        * core.conj().eval((lr * nu / n) as i64)
        * g_bar.powu(3)
        * gauss_sum(core)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate_characters(1).len(), 1);
        assert_eq!(enumerate_characters(5).len(), 4);
        let c12 = enumerate_characters(12);
        assert_eq!(c12.len(), 4);
        assert!(c12.iter().all(|c| c.pow(2).is_principal()));
        assert!(c12[0].is_principal());
        assert_eq!(enumerate_characters(16).len(), 8);
        assert_eq!(enumerate_characters(24).len(), 8);
    }

    #[test]
    fn mod_one_is_identically_one() {
        let c = &enumerate_characters(1)[0];
        for n in -5..5 {
            assert_eq!(c.angle(n), Some(Angle::zero()));
        }
    }

    #[test]
    fn decomposition_examples() {
        let p = decompose(&DirichletCharacter::principal(12));
        assert_eq!((p.conductor, p.r), (1, 6));
        let chi3 = enumerate_characters(3)[1].clone();
        let d = decompose(&chi3.induce(12));
        assert_eq!((d.conductor, d.r, d.lr, d.nu), (3, 2, 6, 2));
        assert_eq!(minimal_period(&chi3.induce(12)), 6);
        let chi4 = enumerate_characters(4)[1].clone();
        let d4 = decompose(&chi4);
        assert_eq!((d4.conductor, d4.r, d4.lr), (4, 1, 4));
    }

    #[test]
    fn gauss_sum_mod_three() {
        let g = gauss_sum(&enumerate_characters(3)[1]);
        assert!(g.re.abs() < 1e-14);
        assert!((g.im - 3f64.sqrt()).abs() < 1e-14);
        assert!((gauss_sum(&DirichletCharacter::principal(1)) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn achisum_examples() {
        let chi3 = &enumerate_characters(3)[1];
        let a = achisum_bruteforce(chi3, 1, 1);
        assert!((a - Complex64::new(0.0, -3f64.sqrt())).norm() < 1e-12);
        assert!((achisum_closed(chi3, 1, 1) - a).norm() < 1e-12);
        let chi4 = &enumerate_characters(4)[1];
        assert!(achisum_bruteforce(chi4, 1, 1).norm() < 1e-12);
        assert!(achisum_closed(chi4, 1, 1).norm() < 1e-12);
    }
}
