//! Exact arithmetic in real quadratic fields Q(sqrt D), Pell units, and the
//! lattice-point regions summed over by the non-square constructions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, format_rational, int, isqrt, rat, Rational};
use crate::{Error, Result};

/// `a + b*sqrt(D)` with rational `a`, `b` and square-free-or-not, non-square `D > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    d: i64,
    a: Rational,
    b: Rational,
}

impl QuadFieldElem {
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self> {
        if d <= 1 {
            return Err(Error::InvalidParameter(format!("radicand must exceed 1, got {d}")));
        }
        if exact_sqrt(d).is_some() {
            return Err(Error::SquareRadicand(d));
        }
        Ok(Self { d, a, b })
    }

    pub fn from_ints(d: i64, a: i64, b: i64) -> Result<Self> {
        Self::new(d, int(a), int(b))
    }

    fn same_field(&self, a: Rational, b: Rational) -> Self {
        Self { d: self.d, a, b }
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn rational(&self, r: Rational) -> Self {
        self.same_field(r, Rational::zero())
    }

    /// The element `sqrt(D)`.
    pub fn sqrt_d(&self) -> Self {
        self.same_field(Rational::zero(), Rational::one())
    }

    pub fn conjugate(&self) -> Self {
        self.same_field(self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(self.d) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a * int(2)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "elements of different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        self.same_field(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.same_field(&self.a - &other.a, &self.b - &other.b)
    }

    pub fn neg(&self) -> Self {
        self.same_field(-&self.a, -&self.b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        self.same_field(
            &self.a * &other.a + int(self.d) * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.same_field(&self.a * s, &self.b * s)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        Ok(self.conjugate().scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = self.rational(int(1));
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact sign of the real number `a + b*sqrt(D)` (first embedding).
    pub fn sign(&self) -> i32 {
        field_sign(&self.a, &self.b, self.d)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.sign() > 0 && self.conjugate().sign() > 0
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub(other).sign().cmp(&0)
    }

    pub fn is_integral_basis(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = format_rational(&self.b.abs());
        let op = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}√{}", format_rational(&self.a), op, b, self.d)
    }
}

/// Sign of `a + b*sqrt(d)` by integer comparisons only.
pub fn field_sign(a: &Rational, b: &Rational, d: i64) -> i32 {
    let sa = signum(a);
    let sb = signum(b);
    if sa >= 0 && sb >= 0 {
        return if sa == 0 && sb == 0 { 0 } else { 1 };
    }
    if sa <= 0 && sb <= 0 {
        return -1;
    }
    // Opposite signs: compare a^2 with d*b^2.
    let lhs = a * a;
    let rhs = b * b * int(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Smallest unit `a + b*sqrt(D) > 1` of Z[sqrt D] with norm +1 (squaring a norm -1 unit).
/// Uses the continued fraction of sqrt(D).
pub fn fundamental_totally_positive_unit(d: i64) -> Result<QuadFieldElem> {
    if d <= 1 || exact_sqrt(d).is_some() {
        return Err(if d <= 1 {
            Error::InvalidParameter(format!("radicand must exceed 1, got {d}"))
        } else {
            Error::SquareRadicand(d)
        });
    }
    let a0 = isqrt(d as u128) as i64;
    let dd = BigInt::from(d);
    let (mut m, mut den, mut a) = (0i64, 1i64, a0);
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        let n = &p * &p - &dd * &q * &q;
        if n.is_one() || n == BigInt::from(-1) {
            let u = QuadFieldElem::new(d, Rational::from_integer(p.clone()), Rational::from_integer(q.clone()))?;
            return Ok(if n.is_one() { u } else { u.mul(&u) });
        }
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        let ab = BigInt::from(a);
        let p_next = &ab * &p + &p_prev;
        let q_next = &ab * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Which proposition's unit condition applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum UnitKind {
    /// Radicand 2N, `lcm(2N, 4) | a - 1`.
    WeightHalf,
    /// Radicand 6N, `lcm(2N, 12) | a - 1`.
    ThreeHalf,
    /// Radicand 2N, `lcm(2N, 4) | a - 1` (the weight-3/2 family built on Q(sqrt 2N)).
    ThreeHalfAlt,
}

impl UnitKind {
    pub fn radicand(self, n: i64) -> i64 {
        match self {
            UnitKind::WeightHalf | UnitKind::ThreeHalfAlt => 2 * n,
            UnitKind::ThreeHalf => 6 * n,
        }
    }

    pub fn modulus(self, n: i64) -> i64 {
        match self {
            UnitKind::WeightHalf | UnitKind::ThreeHalfAlt => (2 * n).lcm(&4),
            UnitKind::ThreeHalf => (2 * n).lcm(&12),
        }
    }
}

/// The unit `eps_N = a + b*sqrt(radicand)`, with `b` even and `modulus | a - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSpec {
    pub n: i64,
    pub radicand: i64,
    pub modulus: i64,
    /// Fundamental totally positive unit of Z[sqrt f], f the squarefree part of
    /// the radicand, written in the basis of sqrt(radicand).
    pub fundamental: QuadFieldElem,
    /// `unit = fundamental^power`.
    pub power: u64,
    pub unit: QuadFieldElem,
}

impl UnitSpec {
    /// Whether `u` satisfies the parity and congruence conditions.
    pub fn satisfies(u: &QuadFieldElem, modulus: i64) -> bool {
        if !u.is_integral_basis() {
            return false;
        }
        let m = BigInt::from(modulus);
        let a = u.a().to_integer();
        let b = u.b().to_integer();
        b.is_even() && (a - BigInt::one()).mod_floor(&m).is_zero()
    }
}

/// Writes `r = f * s^2` with `f` squarefree.
pub fn squarefree_decomposition(r: i64) -> (i64, i64) {
    let mut f = r;
    let mut s = 1;
    let mut p = 2;
    while p * p <= f {
        while f % (p * p) == 0 {
            f /= p * p;
            s *= p;
        }
        p += 1;
    }
    (f, s)
}

const MAX_UNIT_POWER: u64 = 1_000_000;

/// Smallest totally positive unit `a + b*sqrt(radicand) > 1` with integers `a`, `b`,
/// `b` even and `modulus | a - 1`. It is a power of the fundamental totally
/// positive unit of Z[sqrt f]; the power is recorded.
pub fn unit_with_congruences(n: i64, radicand: i64, modulus: i64) -> Result<UnitSpec> {
    if n < 1 || modulus < 1 {
        return Err(Error::InvalidParameter(format!("N = {n}, modulus = {modulus}")));
    }
    if exact_sqrt(radicand).is_some() {
        return Err(Error::SquareRadicand(radicand));
    }
    let (f, s) = squarefree_decomposition(radicand);
    let eps_f = fundamental_totally_positive_unit(f)?;
    // eps_f = A + B sqrt(f) = A + (B/s) sqrt(radicand).
    let fundamental = QuadFieldElem::new(radicand, eps_f.a().clone(), eps_f.b() / int(s))?;
    // Need B_k = 0 mod 2s and A_k = 1 mod modulus; search on residues first
    // since exact powers grow quickly.
    let m = (modulus as i128).lcm(&(2 * s as i128));
    let residue = |x: &Rational| {
        x.to_integer().mod_floor(&BigInt::from(m)).to_i128().expect("residue")
    };
    let (a0, b0) = (residue(eps_f.a()), residue(eps_f.b()));
    let fr = (f as i128).rem_euclid(m);
    let (mut a, mut b) = (a0, b0);
    for k in 1..=MAX_UNIT_POWER {
        if b % (2 * s as i128) == 0 && (a - 1).rem_euclid(modulus as i128) == 0 {
            let unit = fundamental.pow(k);
            debug_assert!(UnitSpec::satisfies(&unit, modulus));
            return Ok(UnitSpec { n, radicand, modulus, fundamental, power: k, unit });
        }
        let na = (a * a0 % m + fr * b % m * b0) % m;
        let nb = (a * b0 + b * a0) % m;
        a = na;
        b = nb;
    }
    Err(Error::UnitSearch(format!(
        "no power <= {MAX_UNIT_POWER} of {fundamental} satisfies the conditions mod {modulus}"
    )))
}

/// Unit for the given construction family at level `n`.
pub fn unit_for(n: i64, kind: UnitKind) -> Result<UnitSpec> {
    unit_with_congruences(n, kind.radicand(n), kind.modulus(n))
}

/// Right end of the ratio interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Open,
    Closed,
}

/// Summation domain of a non-square construction: pairs `(x, y)` with
/// exponent `y^2/(4c) - x^2/(4N)` and
/// `eps^-2 < (sqrt(N) y + sqrt(c) x) / (sqrt(N) y - sqrt(c) x) <= 1` (or `< 1`).
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub n: i64,
    /// 2 for exponents `y^2/8 - x^2/4N`, 6 for `y^2/24 - x^2/4N`.
    pub c: i64,
    pub unit: QuadFieldElem,
    pub right: Endpoint,
}

impl RegionSpec {
    pub fn radicand(&self) -> i64 {
        self.c * self.n
    }

    /// Exponent `y^2/(4c) - x^2/(4N)`.
    pub fn exponent(&self, x: i64, y: i64) -> Rational {
        rat(y * y, 4 * self.c) - rat(x * x, 4 * self.n)
    }

    /// `eps^-2`, needed by every membership test.
    pub fn eps_inv2(&self) -> QuadFieldElem {
        self.unit.inv().expect("unit is invertible").pow(2)
    }

    /// Exact membership test. With `rho = c x + y sqrt(cN)` the ratio equals
    /// `rho^2 / P` where `P = -Nm(rho) = 4 c^2 N * exponent`.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.contains_with(x, y, &self.eps_inv2())
    }

    fn contains_with(&self, x: i64, y: i64, eps_inv2: &QuadFieldElem) -> bool {
        let r = self.radicand();
        let p = r as i128 * (y as i128) * (y as i128) - (self.c as i128 * x as i128).pow(2);
        if p <= 0 {
            return false;
        }
        let p = Rational::from_integer(BigInt::from(p));
        let rho = QuadFieldElem { d: r, a: int(self.c * x), b: int(y) };
        let rho2 = rho.mul(&rho);
        if rho2.sub(&eps_inv2.scale(&p)).sign() <= 0 {
            return false;
        }
        let upper = field_sign(&(&p - rho2.a()), &-rho2.b(), r);
        match self.right {
            Endpoint::Open => upper > 0,
            Endpoint::Closed => upper >= 0,
        }
    }
}

/// All pairs in the region with exponent at most `cutoff`, sorted lexicographically.
///
/// Writing `rho = c x + y sqrt(R)`, membership forces `|rho| <= sqrt(P)` and
/// `|rho'| < eps sqrt(P)`, hence `2|y| sqrt(R) < sqrt(P) (1 + eps)`. For each
/// such `y` the values of `x` with `0 < P <= Pmax` form two short intervals.
/// `scale` enlarges the scanned rectangle (both the `y` bound and the norm
/// bound), which must not change the output.
pub fn enumerate_region_scaled(spec: &RegionSpec, cutoff: &Rational, scale: i64) -> Vec<(i64, i64)> {
    let n = spec.n;
    let c = spec.c;
    let r = spec.radicand();
    let pmax_exact = cutoff * int(4 * c * c * n);
    if pmax_exact <= Rational::zero() {
        return Vec::new();
    }
    let pmax = pmax_exact.floor().to_integer().to_i128().expect("norm bound") * scale.max(1) as i128;
    let eps = spec.unit.a().to_f64().unwrap_or(f64::MAX) + spec.unit.b().to_f64().unwrap_or(f64::MAX) * (r as f64).sqrt();
    let ymax_f = (pmax as f64).sqrt() * (1.0 + eps) / (2.0 * (r as f64).sqrt());
    let ymax = (ymax_f * 1.01) as i64 + 2;
    let ymax = ymax.saturating_mul(scale.max(1));
    let c2 = (c as u128) * (c as u128);
    let eps_inv2 = spec.eps_inv2();
    let mut out = Vec::new();
    for y in 1..=ymax {
        let ry2 = r as i128 * y as i128 * y as i128;
        // c^2 x^2 in [R y^2 - Pmax, R y^2 - 1]
        let hi = (ry2 - 1) as u128 / c2;
        let xmax = isqrt(hi) as i64;
        let lo = (ry2 - pmax).max(0) as u128;
        let lo_x2 = lo.div_ceil(c2);
        let mut xmin = isqrt(lo_x2) as i64;
        if (xmin as u128) * (xmin as u128) < lo_x2 {
            xmin += 1;
        }
        for ax in xmin..=xmax {
            for (x, yy) in [(ax, y), (-ax, y), (ax, -y), (-ax, -y)] {
                if ax == 0 && x < 0 {
                    continue;
                }
                if &spec.exponent(x, yy) <= cutoff && spec.contains_with(x, yy, &eps_inv2) {
                    out.push((x, yy));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn enumerate_region(spec: &RegionSpec, cutoff: &Rational) -> Vec<(i64, i64)> {
    enumerate_region_scaled(spec, cutoff, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(d: i64, a: i64, b: i64) -> QuadFieldElem {
        QuadFieldElem::from_ints(d, a, b).unwrap()
    }

    #[test]
    fn norm_trace_conjugate() {
        assert_eq!(el(12, 97, 28).norm(), int(1));
        assert_eq!(el(5, 3, 7).trace(), int(6));
        let x = el(7, -2, 9);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn rejects_square_radicand() {
        assert_eq!(QuadFieldElem::from_ints(4, 1, 1), Err(Error::SquareRadicand(4)));
        assert!(QuadFieldElem::from_ints(1, 1, 1).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(el(6, 2, -1).sign(), -1);
        assert_eq!(el(6, 0, 0).sign(), 0);
        assert_eq!(el(6, 49, -20).sign(), 1);
        assert_eq!(el(6, -49, 20).sign(), -1);
        assert_eq!(el(2, 0, -1).sign(), -1);
    }

    #[test]
    fn fundamental_units() {
        assert_eq!(fundamental_totally_positive_unit(3).unwrap(), el(3, 2, 1));
        assert_eq!(fundamental_totally_positive_unit(2).unwrap(), el(2, 3, 2));
        assert_eq!(fundamental_totally_positive_unit(6).unwrap(), el(6, 5, 2));
        assert_eq!(fundamental_totally_positive_unit(12).unwrap(), el(12, 7, 2));
        // 29718 + 3805 sqrt(61) has norm -1.
        let u = el(61, 29718, 3805);
        assert_eq!(u.norm(), int(-1));
        assert_eq!(fundamental_totally_positive_unit(61).unwrap(), u.mul(&u));
    }

    #[test]
    fn congruence_units() {
        let u = unit_with_congruences(6, 12, 12).unwrap();
        assert_eq!(u.unit, el(12, 97, 28));
        assert_eq!(u.power, 4);
        assert_eq!(u.fundamental, QuadFieldElem::new(12, int(2), rat(1, 2)).unwrap());
        let u = unit_with_congruences(1, 6, 12).unwrap();
        assert_eq!(u.unit, el(6, 49, 20));
        assert_eq!(u.power, 2);
        let u = unit_with_congruences(1, 2, 4).unwrap();
        assert_eq!(u.unit, el(2, 17, 12));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(12), (3, 2));
        assert_eq!(squarefree_decomposition(72), (2, 6));
        assert_eq!(squarefree_decomposition(30), (30, 1));
    }

    #[test]
    fn inverse_and_division() {
        let e = el(12, 97, 28);
        assert_eq!(e.mul(&e.inv().unwrap()), e.rational(int(1)));
        assert_eq!(e.inv().unwrap(), el(12, 97, -28));
        assert!(e.rational(int(0)).inv().is_err());
    }
}
