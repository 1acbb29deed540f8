//! Index-changing operators on vector-valued series for the Weil
//! representation of Z/2N: `U_d` (level N -> Nd^2), `V_d` (N -> Nd), the
//! Atkin-Lehner permutations `W_c`, and the Moebius combinations `script_V`.
//!
//! Coefficients are written `c(h, m)` for component `h` and exponent `m`.
//! With `eps = +1` for `Rep::Rho` and `-1` for `Rep::Conjugate`, the number
//! `n = m - eps h^2/4N` is an integer for every populated coefficient.

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{divisors, int, mobius, rat, Rational};
use crate::qseries::{RationalQSeries, Rep, VectorQSeries};
use crate::{Error, Result};

fn rep_sign(rep: Rep) -> i64 {
    match rep {
        Rep::Rho => 1,
        Rep::Conjugate => -1,
    }
}

/// `(f | U_d)` at level `N d^2`: component `h` is `c(h/d, .)` when `d | h`, else zero.
/// Exponents are unchanged.
pub fn u_operator(f: &VectorQSeries, d: u64) -> Result<VectorQSeries> {
    if d == 0 {
        return Err(Error::NonPositive(0));
    }
    let n = f.level();
    let out_level = n * d * d;
    let components = (0..2 * out_level)
        .map(|h| {
            if h % d == 0 {
                f.component((h / d) as i64).clone()
            } else {
                RationalQSeries::zero(f.cutoff().clone())
            }
        })
        .collect();
    f.with_components(out_level, components)
}

/// `k - 1/2` as a nonnegative integer.
fn weight_shift(f: &VectorQSeries) -> Result<u32> {
    let s = f.weight() - rat(1, 2);
    if !s.is_integer() || s < Rational::zero() {
        return Err(Error::InvalidParameter(format!("weight {} is not in 1/2 + Z_{{>=0}}", f.weight())));
    }
    u32::try_from(s.to_integer()).map_err(|_| Error::InvalidParameter("weight too large".into()))
}

/// `(f | V_d)` at level `N d`:
/// `c'(h, m) = sum_{a | (n', h, d)} a^{k-1/2} c(h/a, d m / a^2)` with `n' = m - eps h^2/(4Nd)`.
pub fn v_operator(f: &VectorQSeries, d: u64) -> Result<VectorQSeries> {
    if d == 0 {
        return Err(Error::NonPositive(0));
    }
    let shift = weight_shift(f)?;
    let n = f.level() as i64;
    let d_i = d as i64;
    let eps = rep_sign(f.rep());
    let out_level = f.level() * d;
    let out_mod = 2 * n * d_i;
    let cutoff = divisors(d)
        .into_iter()
        .map(|a| f.cutoff() * rat((a * a) as i64, d_i))
        .min()
        .expect("d has divisors");
    let den = f.exp_den() * d_i;
    let mut buckets: Vec<Vec<(i64, Rational)>> = vec![Vec::new(); out_mod as usize];
    for a in divisors(d) {
        let a = a as i64;
        let factor = int(a.pow(shift));
        for h0 in 0..2 * n {
            for (m0, c) in f.component(h0).terms() {
                let m_out = &m0 * rat(a * a, d_i);
                if m_out > cutoff {
                    continue;
                }
                let numer = (&m_out * int(den)).to_integer();
                let numer = i64::try_from(numer).expect("exponent fits");
                for j in 0..d_i / a {
                    // The lift h0 + 2Nj fixes n = m0 - eps h^2/4N; output needs (d/a) | n.
                    let lift = h0 + 2 * n * j;
                    let n0 = &m0 - rat(eps * lift * lift, 4 * n);
                    debug_assert!(n0.is_integer(), "exponent class");
                    if !(n0.to_integer() % (d_i / a)).is_zero() {
                        continue;
                    }
                    let h = (a * lift).rem_euclid(out_mod);
                    buckets[h as usize].push((numer, c * &factor));
                }
            }
        }
    }
    let components = buckets
        .into_iter()
        .map(|b| RationalQSeries::from_terms(den, b, cutoff.clone()))
        .collect();
    f.with_components(out_level, components)
}

/// Whether `c` exactly divides `n` (`c | n` and `gcd(c, n/c) = 1`).
pub fn is_unitary_divisor(c: u64, n: u64) -> bool {
    c >= 1 && n % c == 0 && c.gcd(&(n / c)) == 1
}

/// The permutation of Z/2N with `W_c(h) = h mod 2c` and `W_c(h) = -h mod 2N/c`.
pub fn w_permutation(n: u64, c: u64) -> Result<Vec<u64>> {
    if !is_unitary_divisor(c, n) {
        return Err(Error::InvalidParameter(format!("{c} is not an exact divisor of {n}")));
    }
    let m = 2 * n;
    let other = 2 * n / c;
    (0..m)
        .map(|h| {
            let target_c = h % (2 * c);
            let target_o = (other - h % other) % other;
            (0..m)
                .find(|x| x % (2 * c) == target_c && x % other == target_o)
                .ok_or_else(|| Error::InvalidParameter(format!("no CRT solution for h = {h}")))
        })
        .collect()
}

/// Permutes components by `W_c`.
pub fn w_involution(f: &VectorQSeries, c: u64) -> Result<VectorQSeries> {
    let perm = w_permutation(f.level(), c)?;
    let mut components = vec![RationalQSeries::zero(f.cutoff().clone()); f.modulus() as usize];
    for (h, &w) in perm.iter().enumerate() {
        components[w as usize] = f.component(h as i64).clone();
    }
    f.with_components(f.level(), components)
}

/// `sum_{r^2 | d, (r, m) = 1} mu(r) r^{k-1/2} V_{d/r^2}(U_r f)`.
pub fn script_v(f: &VectorQSeries, d: u64, m: u64) -> Result<VectorQSeries> {
    if d == 0 || m == 0 {
        return Err(Error::NonPositive(0));
    }
    let shift = weight_shift(f)?;
    let mut acc: Option<VectorQSeries> = None;
    let mut r = 1u64;
    while r * r <= d {
        if d % (r * r) == 0 && r.gcd(&m) == 1 {
            let mu = mobius(r as i64)? as i64;
            if mu != 0 {
                let term = v_operator(&u_operator(f, r)?, d / (r * r))?
                    .scale(&int(mu * (r as i64).pow(shift)));
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term)?,
                });
            }
        }
        r += 1;
    }
    Ok(acc.expect("r = 1 always contributes"))
}

/// `phi_big - (phi_n0 | V^{(1)}_{p^e} + phi_n0p | (1 - W_p) V^{(p)}_{p^{e-1}}) / 2`
/// for series at levels `N0 p^e`, `N0` and `N0 p`. Only the combination is
/// computed; nothing about its modularity is checked.
pub fn lemma_combination(
    phi_big: &VectorQSeries,
    phi_n0: &VectorQSeries,
    phi_n0p: &VectorQSeries,
    p: u64,
    e: u32,
) -> Result<VectorQSeries> {
    let n0 = phi_n0.level();
    if e < 1 || n0 % p == 0 || phi_n0p.level() != n0 * p || phi_big.level() != n0 * p.pow(e) {
        return Err(Error::InvalidParameter(format!(
            "levels {}, {}, {} do not match N0 = {n0}, p = {p}, e = {e}",
            phi_big.level(),
            n0,
            phi_n0p.level()
        )));
    }
    let first = script_v(phi_n0, p.pow(e), 1)?;
    let twisted = phi_n0p.sub(&w_involution(phi_n0p, p)?)?;
    let second = script_v(&twisted, p.pow(e - 1), p)?;
    phi_big.sub(&first.add(&second)?.scale(&rat(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thetaeta::theta;

    #[test]
    fn w_permutation_level_six() {
        assert_eq!(w_permutation(6, 3).unwrap(), vec![0, 7, 2, 9, 4, 11, 6, 1, 8, 3, 10, 5]);
        assert_eq!(w_permutation(6, 1).unwrap(), vec![0, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(w_permutation(6, 6).unwrap(), (0..12).collect::<Vec<_>>());
        assert!(w_permutation(12, 2).is_err());
    }

    #[test]
    fn u_operator_places_components() {
        let t = theta(1, 0, &int(10)).unwrap();
        let u = u_operator(&t, 2).unwrap();
        assert_eq!(u.level(), 4);
        assert_eq!(u.component(2), t.component(1));
        assert_eq!(u.component(4), t.component(0));
        assert!(u.component(3).is_zero());
    }

    #[test]
    fn script_v_at_prime_is_v() {
        let t = theta(1, 1, &int(12)).unwrap();
        assert_eq!(script_v(&t, 3, 1).unwrap(), v_operator(&t, 3).unwrap());
    }
}
