//! Unary theta functions, the eta function and its powers, E2, the Appell-type
//! sum F2, the eigenvectors used in the eta/theta identities, and Hurwitz class
//! numbers.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::arith::{floor_i64, int, isqrt, rat, sigma1, Rational};
use crate::qseries::{GroupRingVector, RationalQSeries, Rep, VectorQSeries};
use crate::{Error, Result};

fn check_cutoff(cutoff: &Rational) -> Result<()> {
    if cutoff < &Rational::zero() {
        return Err(Error::InvalidParameter(format!("cutoff must be nonnegative, got {cutoff}")));
    }
    Ok(())
}

/// `theta_N(tau; nu) = sum_h sum_{n = h mod 2N} n^nu q^{n^2/4N} e_h`.
pub fn theta(n: u64, nu: u32, cutoff: &Rational) -> Result<VectorQSeries> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    if nu > 1 {
        return Err(Error::InvalidParameter(format!("nu must be 0 or 1, got {nu}")));
    }
    check_cutoff(cutoff)?;
    let four_n = 4 * n as i64;
    let m = 2 * n as i64;
    let limit = floor_i64(&(cutoff * int(four_n)));
    let bound = isqrt(limit as u128) as i64;
    let mut buckets: Vec<Vec<(i64, Rational)>> = vec![Vec::new(); m as usize];
    for k in -bound..=bound {
        let c = if nu == 0 { int(1) } else { int(k) };
        buckets[k.rem_euclid(m) as usize].push((k * k, c));
    }
    let components = buckets
        .into_iter()
        .map(|t| RationalQSeries::from_terms(four_n, t, cutoff.clone()))
        .collect();
    let sign = if nu == 0 { 1 } else { -1 };
    VectorQSeries::new(n, int(nu as i64) + rat(1, 2), sign, Rep::Rho, components)
}

/// `eta = theta_{6,1}(.;0) - theta_{6,5}(.;0)`.
pub fn eta(cutoff: &Rational) -> Result<RationalQSeries> {
    let t = theta(6, 0, cutoff)?;
    Ok(t.component(1).sub(t.component(5)))
}

fn eta_cache() -> &'static RwLock<HashMap<i64, RationalQSeries>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, RationalQSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `eta^r`, complete through `cutoff`. Results are memoized per `r`.
pub fn eta_power(r: i64, cutoff: &Rational) -> Result<RationalQSeries> {
    if let Some(s) = eta_cache().read().expect("cache poisoned").get(&r) {
        if s.cutoff() >= cutoff {
            return s.truncate(cutoff);
        }
    }
    let value = if r == 0 {
        RationalQSeries::one(cutoff.clone())
    } else if r > 0 {
        eta(&cutoff.max(&Rational::zero()).clone())?.pow(r)?.truncate_at_most(cutoff)
    } else {
        // Inversion costs twice the leading exponent |r|/24.
        let base_cut = (cutoff + rat(-r, 12)).max(Rational::zero());
        eta(&base_cut)?.pow(-r)?.invert()?.truncate_at_most(cutoff)
    };
    if value.cutoff() < cutoff {
        return Err(Error::Incomplete { have: value.cutoff().to_string(), need: cutoff.to_string() });
    }
    let mut cache = eta_cache().write().expect("cache poisoned");
    let keep = cache.get(&r).map_or(true, |old| old.cutoff() < value.cutoff());
    if keep {
        cache.insert(r, value.clone());
    }
    Ok(value)
}

/// `E2 = 1 - 24 sum sigma1(n) q^n`.
pub fn eisenstein_e2(cutoff: &Rational) -> Result<RationalQSeries> {
    check_cutoff(cutoff)?;
    let top = floor_i64(cutoff);
    let mut terms = vec![(0, int(1))];
    for k in 1..=top {
        terms.push((k, sigma1(k)? * int(-24)));
    }
    Ok(RationalQSeries::from_terms(1, terms, cutoff.clone()))
}

/// `F2 = sum_{b > a > 0, b - a odd} a (-1)^b q^{ab/2}`.
pub fn appell_f2(cutoff: &Rational) -> Result<RationalQSeries> {
    check_cutoff(cutoff)?;
    let top = floor_i64(&(cutoff * int(2)));
    let mut terms = Vec::new();
    let mut a = 1;
    while a * (a + 1) <= top {
        let mut b = a + 1;
        while a * b <= top {
            let sign = if b % 2 == 0 { 1 } else { -1 };
            terms.push((a * b, int(sign * a)));
            b += 2;
        }
        a += 1;
    }
    Ok(RationalQSeries::from_terms(2, terms, cutoff.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eigen {
    V2,
    V3,
    V6,
    V4,
}

pub fn eigenvector(tag: Eigen) -> GroupRingVector {
    match tag {
        Eigen::V2 => {
            let mut v = GroupRingVector::new(vec![4]);
            v.add_basis(&[1], int(1));
            v.add_basis(&[3], int(-1));
            v
        }
        Eigen::V6 => {
            let mut v = GroupRingVector::new(vec![12]);
            for (h, c) in [(1, 1), (5, -1), (7, -1), (11, 1)] {
                v.add_basis(&[h], int(c));
            }
            v
        }
        Eigen::V3 => {
            let mut v = GroupRingVector::new(vec![6, 6]);
            for (i, c) in [
                ([0, 1], 1),
                ([1, 0], 1),
                ([0, -1], 1),
                ([-1, 0], 1),
                ([3, 2], -1),
                ([2, 3], -1),
                ([3, -2], -1),
                ([-2, 3], -1),
            ] {
                v.add_basis(&i, int(c));
            }
            v
        }
        Eigen::V4 => {
            let v3 = eigenvector(Eigen::V3);
            v3.tensor(&v3)
        }
    }
}

/// Hurwitz class number: reduced forms `ax^2 + bxy + cy^2` of discriminant `-n`,
/// with `a(x^2 + y^2)` counted 1/2 and `a(x^2 + xy + y^2)` counted 1/3. `H(0) = -1/12`.
pub fn hurwitz_class_number(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::Negative(n));
    }
    if n == 0 {
        return Ok(rat(-1, 12));
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Ok(Rational::zero());
    }
    let mut h = Rational::zero();
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - n).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            h += if b == 0 && a == c {
                rat(1, 2)
            } else if b == a && a == c {
                rat(1, 3)
            } else {
                int(1)
            };
        }
        a += 1;
    }
    Ok(h)
}

/// `sum_{n <= cutoff} H(n) q^n`.
pub fn hurwitz_series(cutoff: &Rational) -> Result<RationalQSeries> {
    check_cutoff(cutoff)?;
    let terms = (0..=floor_i64(cutoff))
        .map(|n| hurwitz_class_number(n).map(|h| (n, h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalQSeries::from_terms(1, terms, cutoff.clone()))
}
