//! Laurent series in q with exponents on a lattice (1/D)Z and exact coefficients,
//! plus vector-valued families indexed by Z/2N and group-ring vectors.
//!
//! Every series carries a cutoff: all coefficients at exponents up to and
//! including the cutoff are final. Products and inverses compute the tightest
//! cutoff that is still sound, so truncation errors cannot leak into results.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{floor_i64, format_rational, int, rat, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RationalQSeries {
    exp_den: i64,
    terms: BTreeMap<i64, Rational>,
    cutoff: Rational,
}

impl RationalQSeries {
    pub fn zero(cutoff: Rational) -> Self {
        Self { exp_den: 1, terms: BTreeMap::new(), cutoff }
    }

    pub fn one(cutoff: Rational) -> Self {
        Self::monomial(int(1), int(0), cutoff)
    }

    /// `c * q^e`, truncated at `cutoff`.
    pub fn monomial(c: Rational, e: Rational, cutoff: Rational) -> Self {
        let d = i64::try_from(e.denom()).expect("exponent denominator too large");
        let n = i64::try_from(e.numer()).expect("exponent numerator too large");
        Self::from_terms(d, [(n, c)], cutoff)
    }

    /// Builds a series from `(numerator, coefficient)` pairs, exponent = numerator / exp_den.
    /// Repeated numerators are summed; zero coefficients and terms past the cutoff are dropped.
    pub fn from_terms<I>(exp_den: i64, terms: I, cutoff: Rational) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(exp_den >= 1, "exponent denominator must be positive");
        let limit = floor_i64(&(&cutoff * int(exp_den)));
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n, c) in terms {
            if n > limit || c.is_zero() {
                continue;
            }
            let slot = map.entry(n).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { exp_den, terms: map, cutoff }
    }

    /// Builds a series from `(exponent, coefficient)` pairs with rational exponents.
    pub fn from_rational_terms<I>(terms: I, cutoff: Rational) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let items: Vec<_> = terms.into_iter().collect();
        let mut den = BigInt::one();
        for (e, _) in &items {
            den = den.lcm(e.denom());
        }
        let d = i64::try_from(&den).expect("exponent denominator too large");
        let scaled = items.into_iter().map(|(e, c)| {
            let n = e * int(d);
            (i64::try_from(n.to_integer()).expect("exponent too large"), c)
        });
        Self::from_terms(d, scaled, cutoff)
    }

    pub fn exp_den(&self) -> i64 {
        self.exp_den
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raw `(numerator, coefficient)` pairs in increasing exponent order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.terms.iter().map(move |(n, c)| (rat(*n, self.exp_den), c))
    }

    /// Coefficient at exponent `e`, or `None` if `e` is past the cutoff.
    pub fn coefficient(&self, e: &Rational) -> Option<Rational> {
        if e > &self.cutoff {
            return None;
        }
        let scaled = e * int(self.exp_den);
        if !scaled.is_integer() {
            return Some(Rational::zero());
        }
        let n = i64::try_from(scaled.to_integer()).ok()?;
        Some(self.terms.get(&n).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient at exponent `e`, zero past the cutoff.
    pub fn coeff(&self, e: &Rational) -> Rational {
        self.coefficient(e).unwrap_or_else(Rational::zero)
    }

    pub fn leading_exponent(&self) -> Option<Rational> {
        self.terms.keys().next().map(|n| rat(*n, self.exp_den))
    }

    /// Leading exponent, or the cutoff for a series known to vanish up to its cutoff.
    /// This is the valuation lower bound used for product cutoffs.
    fn valuation_bound(&self) -> Rational {
        self.leading_exponent().unwrap_or_else(|| self.cutoff.clone())
    }

    /// Re-expresses the series on the finer lattice (1/d)Z; `d` must be a multiple of exp_den.
    pub fn with_exp_den(&self, d: i64) -> Self {
        assert!(d % self.exp_den == 0, "lattice {d} does not refine {}", self.exp_den);
        let k = d / self.exp_den;
        Self {
            exp_den: d,
            terms: self.terms.iter().map(|(n, c)| (n * k, c.clone())).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Smallest exponent lattice holding every term.
    pub fn normalized(&self) -> Self {
        let mut g = self.exp_den;
        for n in self.terms.keys() {
            g = g.gcd(n);
            if g == 1 {
                break;
            }
        }
        Self {
            exp_den: self.exp_den / g,
            terms: self.terms.iter().map(|(n, c)| (n / g, c.clone())).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Lowers the cutoff. Errors if `cutoff` exceeds the current one.
    pub fn truncate(&self, cutoff: &Rational) -> Result<Self> {
        if cutoff > &self.cutoff {
            return Err(Error::Incomplete {
                have: format_rational(&self.cutoff),
                need: format_rational(cutoff),
            });
        }
        let limit = floor_i64(&(cutoff * int(self.exp_den)));
        Ok(Self {
            exp_den: self.exp_den,
            terms: self.terms.range(..=limit).map(|(n, c)| (*n, c.clone())).collect(),
            cutoff: cutoff.clone(),
        })
    }

    /// Lowers the cutoff to `min(cutoff, self.cutoff)`.
    pub fn truncate_at_most(&self, cutoff: &Rational) -> Self {
        if cutoff >= &self.cutoff {
            self.clone()
        } else {
            self.truncate(cutoff).expect("cutoff checked")
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.exp_den.lcm(&other.exp_den);
        let a = self.with_exp_den(d);
        let b = other.with_exp_den(d);
        let cutoff = a.cutoff.clone().min(b.cutoff.clone());
        Self::from_terms(d, a.terms.into_iter().chain(b.terms), cutoff)
    }

    pub fn neg(&self) -> Self {
        Self {
            exp_den: self.exp_den,
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.cutoff.clone());
        }
        Self {
            exp_den: self.exp_den,
            terms: self.terms.iter().map(|(n, c)| (*n, c * s)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Multiplies by `q^e`; the cutoff moves with the series.
    pub fn shift(&self, e: &Rational) -> Self {
        let d = self.exp_den.lcm(&i64::try_from(e.denom()).expect("denominator too large"));
        let k = floor_i64(&(e * int(d)));
        let s = self.with_exp_den(d);
        Self {
            exp_den: d,
            terms: s.terms.into_iter().map(|(n, c)| (n + k, c)).collect(),
            cutoff: &self.cutoff + e,
        }
    }

    /// Cauchy product. The result is complete up to
    /// `min(a.cutoff + v(b), b.cutoff + v(a))` where `v` is the leading exponent.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.exp_den.lcm(&other.exp_den);
        let a = self.with_exp_den(d);
        let b = other.with_exp_den(d);
        let cutoff = (&a.cutoff + b.valuation_bound()).min(&b.cutoff + a.valuation_bound());
        let limit = floor_i64(&(&cutoff * int(d)));
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (na, ca) in &a.terms {
            for (nb, cb) in b.terms.range(..=(limit - na)) {
                let slot = out.entry(na + nb).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { exp_den: d, terms: out, cutoff }
    }

    /// Multiplicative inverse. With leading exponent `v`, the result is complete
    /// up to `cutoff - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let (&n0, c0) = self.terms.iter().next().ok_or(Error::ZeroInverse)?;
        let d = self.exp_den;
        let v = rat(n0, d);
        let cutoff = &self.cutoff - &v - &v;
        let inv_c0 = c0.recip();
        // Offsets of the higher terms from the leading one, in units of their gcd.
        let mut g = 0i64;
        for n in self.terms.keys().skip(1) {
            g = g.gcd(&(n - n0));
        }
        if g == 0 {
            return Ok(Self::from_terms(d, [(-n0, inv_c0)], cutoff));
        }
        let steps = Integer::div_floor(&floor_i64(&((&cutoff + &v) * int(d))), &g);
        if steps < 0 {
            return Ok(Self { exp_den: d, terms: BTreeMap::new(), cutoff });
        }
        let steps = steps as usize;
        let tail: Vec<(usize, Rational)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(n, c)| (((n - n0) / g) as usize, c * &inv_c0))
            .take_while(|(k, _)| *k <= steps)
            .collect();
        let mut b: Vec<Rational> = vec![Rational::zero(); steps + 1];
        b[0] = Rational::one();
        for j in 1..=steps {
            let mut acc = Rational::zero();
            for (k, c) in &tail {
                if *k > j {
                    break;
                }
                if !b[j - k].is_zero() {
                    acc -= c * &b[j - k];
                }
            }
            b[j] = acc;
        }
        let terms = b
            .into_iter()
            .enumerate()
            .map(|(j, c)| (-n0 + j as i64 * g, c * &inv_c0));
        Ok(Self::from_terms(d, terms, cutoff))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, r: i64) -> Result<Self> {
        if r < 0 {
            return self.pow(-r)?.invert();
        }
        if r == 0 {
            return Ok(Self::one(self.cutoff.clone()));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(acc) => acc.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.expect("r > 0"))
    }

    /// Substitutes q -> q^c.
    pub fn rescale_variable(&self, c: i64) -> Self {
        assert!(c >= 1, "rescale factor must be positive");
        Self {
            exp_den: self.exp_den,
            terms: self.terms.iter().map(|(n, v)| (n * c, v.clone())).collect(),
            cutoff: &self.cutoff * int(c),
        }
        .normalized()
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Least common denominator of the coefficients.
    pub fn coefficient_denominator(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// First exponent (up to `cutoff`) where the two series differ.
    pub fn first_difference(&self, other: &Self, cutoff: &Rational) -> Option<Rational> {
        let d = self.exp_den.lcm(&other.exp_den);
        let a = self.with_exp_den(d);
        let b = other.with_exp_den(d);
        let limit = floor_i64(&(cutoff * int(d)));
        let zero = Rational::zero();
        let keys: std::collections::BTreeSet<i64> = a
            .terms
            .range(..=limit)
            .chain(b.terms.range(..=limit))
            .map(|(n, _)| *n)
            .collect();
        keys.into_iter()
            .find(|n| a.terms.get(n).unwrap_or(&zero) != b.terms.get(n).unwrap_or(&zero))
            .map(|n| rat(n, d))
    }
}

impl PartialEq for RationalQSeries {
    /// Equal cutoffs and equal coefficients, independent of the lattice used to store them.
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.first_difference(other, &self.cutoff).is_none()
    }
}

impl fmt::Display for RationalQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { " - " } else if i > 0 { " + " } else { "" };
            let sign = if i == 0 && c.is_negative() { "-" } else { sign };
            write!(f, "{sign}{}*q^({})", format_rational(&c.abs()), format_rational(&e))?;
        }
        write!(f, " + O(q^>{})", format_rational(&self.cutoff))
    }
}

impl std::ops::Add for &RationalQSeries {
    type Output = RationalQSeries;
    fn add(self, rhs: Self) -> RationalQSeries {
        RationalQSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &RationalQSeries {
    type Output = RationalQSeries;
    fn sub(self, rhs: Self) -> RationalQSeries {
        RationalQSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &RationalQSeries {
    type Output = RationalQSeries;
    fn mul(self, rhs: Self) -> RationalQSeries {
        RationalQSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &RationalQSeries {
    type Output = RationalQSeries;
    fn neg(self) -> RationalQSeries {
        RationalQSeries::neg(self)
    }
}

/// Which Weil representation a vector series transforms under. This fixes the
/// exponent classes: `h^2/4N + Z` for `Rho`, `-h^2/4N + Z` for `Conjugate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Rep {
    Rho,
    Conjugate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorQSeries {
    level: u64,
    weight: Rational,
    sign: i8,
    rep: Rep,
    components: Vec<RationalQSeries>,
}

impl VectorQSeries {
    /// Components are brought onto a common lattice and a common (minimal) cutoff.
    pub fn new(
        level: u64,
        weight: Rational,
        sign: i8,
        rep: Rep,
        components: Vec<RationalQSeries>,
    ) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level must be positive".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")));
        }
        if components.len() as u64 != 2 * level {
            return Err(Error::InvalidParameter(format!(
                "expected {} components, got {}",
                2 * level,
                components.len()
            )));
        }
        let d = components.iter().fold(1i64, |acc, c| acc.lcm(&c.exp_den()));
        let cutoff = components.iter().map(|c| c.cutoff().clone()).min().expect("nonempty");
        let components = components
            .iter()
            .map(|c| c.truncate(&cutoff).expect("minimal cutoff").with_exp_den(d))
            .collect();
        Ok(Self { level, weight, sign, rep, components })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn rep(&self) -> Rep {
        self.rep
    }

    pub fn modulus(&self) -> u64 {
        2 * self.level
    }

    pub fn cutoff(&self) -> &Rational {
        self.components[0].cutoff()
    }

    pub fn exp_den(&self) -> i64 {
        self.components[0].exp_den()
    }

    pub fn components(&self) -> &[RationalQSeries] {
        &self.components
    }

    /// Component `h`, with `h` reduced mod 2N.
    pub fn component(&self, h: i64) -> &RationalQSeries {
        &self.components[h.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn truncate(&self, cutoff: &Rational) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.truncate(cutoff))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.level, self.weight.clone(), self.sign, self.rep, components)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        out.components = self.components.iter().map(|c| c.scale(s)).collect();
        out
    }

    /// Componentwise sum; level, weight, sign and representation must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        Self::new(self.level, self.weight.clone(), self.sign, self.rep, components)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    /// Multiplies every component by a scalar series.
    pub fn mul_scalar_series(&self, s: &RationalQSeries) -> Result<Self> {
        let components = self.components.iter().map(|c| c.mul(s)).collect();
        Self::new(self.level, self.weight.clone(), self.sign, self.rep, components)
    }

    /// Replaces the metadata (used by operators that change the level).
    pub fn with_components(&self, level: u64, components: Vec<RationalQSeries>) -> Result<Self> {
        Self::new(level, self.weight.clone(), self.sign, self.rep, components)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level
            || self.weight != other.weight
            || self.sign != other.sign
            || self.rep != other.rep
        {
            return Err(Error::GroupMismatch(format!(
                "level/weight/sign/rep differ: ({}, {}, {}, {:?}) vs ({}, {}, {}, {:?})",
                self.level,
                self.weight,
                self.sign,
                self.rep,
                other.level,
                other.weight,
                other.sign,
                other.rep
            )));
        }
        Ok(())
    }

    /// Checks `a(-h, m) = sign * a(h, m)` for all h and all exponents up to the cutoff.
    /// Returns the first violation `(h, exponent)`.
    pub fn symmetry_violation(&self) -> Option<(u64, Rational)> {
        let m = self.modulus() as i64;
        let s = int(self.sign as i64);
        for h in 0..m {
            let a = self.component(h);
            let b = self.component(-h).scale(&s);
            if let Some(e) = a.first_difference(&b, self.cutoff()) {
                return Some((h as u64, e));
            }
        }
        None
    }

    /// Checks that component h only has exponents in `±h^2/4N + Z`.
    /// Returns the first violation `(h, exponent)`.
    pub fn exponent_class_violation(&self) -> Option<(u64, Rational)> {
        let four_n = 4 * self.level as i64;
        for (h, comp) in self.components.iter().enumerate() {
            let h = h as i64;
            let offset = match self.rep {
                Rep::Rho => rat(h * h, four_n),
                Rep::Conjugate => rat(-h * h, four_n),
            };
            for (e, _) in comp.terms() {
                if !(&e - &offset).is_integer() {
                    return Some((h as u64, e));
                }
            }
        }
        None
    }
}

/// Returns component `h` (reduced mod 2N).
pub fn project_component(f: &VectorQSeries, h: i64) -> RationalQSeries {
    f.component(h).clone()
}

/// `sum_h phi(h) f_h` with q -> q^c. `phi` is given by its values on one period,
/// and that period must divide 2N.
pub fn scalarize(f: &VectorQSeries, phi: &[i64], c: i64) -> Result<RationalQSeries> {
    let p = phi.len() as u64;
    if p == 0 || f.modulus() % p != 0 {
        return Err(Error::InvalidParameter(format!(
            "phi has period {p}, which does not divide {}",
            f.modulus()
        )));
    }
    if c < 1 {
        return Err(Error::NonPositive(c));
    }
    let mut acc = RationalQSeries::zero(f.cutoff().clone());
    for (h, comp) in f.components().iter().enumerate() {
        let w = phi[h % p as usize];
        if w != 0 {
            acc = acc.add(&comp.scale(&int(w)));
        }
    }
    Ok(acc.rescale_variable(c))
}

/// Finitely supported rational vector on a product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingVector {
    group: Vec<u64>,
    coeffs: BTreeMap<Vec<u64>, Rational>,
}

impl GroupRingVector {
    pub fn new(group: Vec<u64>) -> Self {
        assert!(group.iter().all(|&n| n > 0), "cyclic factors must be nonempty");
        Self { group, coeffs: BTreeMap::new() }
    }

    pub fn group(&self) -> &[u64] {
        &self.group
    }

    fn reduce(&self, index: &[i64]) -> Vec<u64> {
        assert_eq!(index.len(), self.group.len(), "index arity");
        index
            .iter()
            .zip(&self.group)
            .map(|(i, n)| i.rem_euclid(*n as i64) as u64)
            .collect()
    }

    /// Adds `c` to the coefficient of the basis vector at `index` (reduced per factor).
    pub fn add_basis(&mut self, index: &[i64], c: Rational) {
        let key = self.reduce(index);
        let slot = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn get(&self, index: &[i64]) -> Rational {
        self.coeffs.get(&self.reduce(index)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<u64>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Tensor product on the concatenated group.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut group = self.group.clone();
        group.extend(&other.group);
        let mut coeffs = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut k = i.clone();
                k.extend(j);
                coeffs.insert(k, a * b);
            }
        }
        Self { group, coeffs }
    }
}

/// Anything whose components are indexed by a product of cyclic groups.
pub trait ComponentFamily {
    fn index_group(&self) -> Vec<u64>;
    fn component_at(&self, index: &[u64]) -> RationalQSeries;
    /// Cutoff shared by every component.
    fn family_cutoff(&self) -> Rational;
}

impl ComponentFamily for VectorQSeries {
    fn index_group(&self) -> Vec<u64> {
        vec![self.modulus()]
    }

    fn component_at(&self, index: &[u64]) -> RationalQSeries {
        self.component(index[0] as i64).clone()
    }

    fn family_cutoff(&self) -> Rational {
        self.cutoff().clone()
    }
}

/// Tensor product of vector series. Components are products of factor
/// components and are computed only when asked for.
#[derive(Clone, Debug)]
pub struct Tensor {
    factors: Vec<VectorQSeries>,
}

impl Tensor {
    pub fn new(factors: Vec<VectorQSeries>) -> Self {
        assert!(!factors.is_empty(), "empty tensor product");
        Self { factors }
    }

    pub fn power(f: &VectorQSeries, k: usize) -> Self {
        Self::new(vec![f.clone(); k])
    }

    /// All components, keyed by index tuple. Exponential in the number of factors.
    pub fn materialize(&self) -> BTreeMap<Vec<u64>, RationalQSeries> {
        let group = self.index_group();
        let mut out = BTreeMap::new();
        let mut idx = vec![0u64; group.len()];
        loop {
            out.insert(idx.clone(), self.component_at(&idx));
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < group[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl ComponentFamily for Tensor {
    fn index_group(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.modulus()).collect()
    }

    fn component_at(&self, index: &[u64]) -> RationalQSeries {
        let mut acc = self.factors[0].component(index[0] as i64).clone();
        for (f, i) in self.factors.iter().zip(index).skip(1) {
            acc = acc.mul(f.component(*i as i64));
        }
        acc
    }

    fn family_cutoff(&self) -> Rational {
        self.factors.iter().map(|f| f.cutoff().clone()).min().expect("nonempty")
    }
}

/// `<f, v> = sum_h f_h v(h)` (v is rational, so conjugation is trivial).
pub fn pair_with_vector<F: ComponentFamily + ?Sized>(
    f: &F,
    v: &GroupRingVector,
) -> Result<RationalQSeries> {
    let g = f.index_group();
    if g != v.group() {
        return Err(Error::GroupMismatch(format!("series indexed by {g:?}, vector by {:?}", v.group())));
    }
    let mut acc: Option<RationalQSeries> = None;
    for (idx, c) in v.support() {
        let term = f.component_at(idx).scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap_or_else(|| RationalQSeries::zero(f.family_cutoff())))
}
