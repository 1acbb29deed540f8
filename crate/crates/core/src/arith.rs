//! Elementary number theory on exact integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer pair into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sgn(x: i64) -> i64 {
    x.signum()
}

/// Kronecker symbol (a/n), defined for all integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= v;
        if v % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // Jacobi symbol for odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Sum of positive divisors, with the convention sigma1(0) = -1/24.
pub fn sigma1(m: i64) -> Result<Rational> {
    if m < 0 {
        return Err(Error::Negative(m));
    }
    if m == 0 {
        return Ok(rat(-1, 24));
    }
    let mut s: i64 = 0;
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            s += d;
            if d * d != m {
                s += m / d;
            }
        }
        d += 1;
    }
    Ok(int(s))
}

/// Fractional part `x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// One-periodic Bernoulli function: B_k evaluated at the fractional part of `x`.
pub fn periodic_bernoulli(k: u32, x: &Rational) -> Result<Rational> {
    let t = frac(x);
    let half = rat(1, 2);
    match k {
        1 => Ok(&t - half),
        2 => Ok(&t * &t - &t + rat(1, 6)),
        3 => Ok(&t * &t * &t - rat(3, 2) * &t * &t + half * &t),
        _ => Err(Error::UnsupportedBernoulli(k)),
    }
}

pub fn mobius(n: i64) -> Result<i32> {
    if n <= 0 {
        return Err(Error::NonPositive(n));
    }
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    Ok(mu)
}

pub fn gcd_part(n: u64, d: u64) -> u64 {
    n.gcd(&d)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128) as i64;
    (r * r == n).then_some(r)
}

/// Floor of the square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Floor of a rational as i64. Panics if it does not fit.
pub fn floor_i64(x: &Rational) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("value out of i64 range")
}

/// True if `x` is an integer.
pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_euler(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i64;
        for _ in 0..(p - 1) / 2 {
            r = r * a % p;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_matches_euler_criterion_on_odd_primes() {
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            for a in -60..60 {
                assert_eq!(kronecker(a, p), legendre_euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(12, 11), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
    }

    #[test]
    fn kronecker_zero_pattern() {
        for n in -100..=100 {
            assert_eq!(kronecker(-4, n) == 0, n % 2 == 0, "n = {n}");
            assert_eq!(kronecker(12, n) == 0, n.gcd(&12) > 1, "n = {n}");
        }
    }

    #[test]
    fn characters_mod_4_and_12() {
        for n in 1..200i64 {
            let chi4 = match n % 4 {
                1 => 1,
                3 => -1,
                _ => 0,
            };
            let chi12 = match n % 12 {
                1 | 11 => 1,
                5 | 7 => -1,
                _ => 0,
            };
            assert_eq!(kronecker(-4, n), chi4);
            assert_eq!(kronecker(12, n), chi12);
        }
    }

    #[test]
    fn sigma1_values() {
        assert_eq!(sigma1(0).unwrap(), rat(-1, 24));
        assert_eq!(sigma1(1).unwrap(), int(1));
        assert_eq!(sigma1(6).unwrap(), int(12));
        assert!(sigma1(-1).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(periodic_bernoulli(1, &rat(1, 2)).unwrap(), int(0));
        assert_eq!(periodic_bernoulli(2, &int(0)).unwrap(), rat(1, 6));
        assert_eq!(periodic_bernoulli(1, &rat(5, 4)).unwrap(), rat(-1, 4));
        assert_eq!(periodic_bernoulli(3, &rat(1, 4)).unwrap(), rat(3, 64));
        assert_eq!(periodic_bernoulli(1, &int(0)).unwrap(), rat(-1, 2));
        assert!(periodic_bernoulli(4, &int(0)).is_err());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn gcd_part_values() {
        assert_eq!(gcd_part(6, 4), 2);
        assert_eq!(gcd_part(8, 4), 4);
        assert_eq!(gcd_part(5, 4), 1);
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/12", "-1/24"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
