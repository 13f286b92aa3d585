//! Small-integer number theory used throughout the crate.

/// Greatest common divisor, always non-negative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Least non-negative residue.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m` in `[0, m)`; `None` when `gcd(a, m) != 1`.
/// For `m = 1` the inverse is `0`.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    assert!(m >= 1);
    let (g, x, _) = ext_gcd(modp(a, m), m);
    if g != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(modp(x, m))
}

pub fn pow_mod(base: i64, mut exp: u64, m: i64) -> i64 {
    let m128 = m as i128;
    let mut result: i128 = 1 % m128;
    let mut b = (modp(base, m)) as i128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as i64
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_bezout() {
        assert_eq!(inv_mod(5, 4), Some(1));
        assert_eq!(inv_mod(7, 6), Some(1));
        assert_eq!(inv_mod(3, 10), Some(7));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(9, 1), Some(0));
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(radical(72), 6);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
