//! Explicit vector-valued mock modular forms of weight 1/2 and 3/2 with unary
//! theta shadows, and the two ideal sums over Z[sqrt 6] and Z[sqrt 2] whose
//! eta quotients give the Hurwitz class number generating function.
//!
//! Every construction has the shape `eta^-r * (lattice sum + boundary term)`,
//! with `r` in {1, 3}. The lattice sum runs over pairs `(x, y)` with exponent
//! `y^2/(4c) - x^2/(4N)`, `c` in {2, 6}, placed in component `x mod 2N`.
//! When `cN` is a square the sum is over an open cone and a finite boundary
//! term is added; otherwise it is over a fundamental domain for a unit.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, floor_i64, int, kronecker, periodic_bernoulli, rat, sgn, Rational};
use crate::qseries::{RationalQSeries, Rep, VectorQSeries};
use crate::quadfield::{
    enumerate_region, unit_for, Endpoint, QuadFieldElem, RegionSpec, UnitKind, UnitSpec,
};
use crate::thetaeta::{eisenstein_e2, eta_power};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Construction {
    /// Weight 1/2, `2N` a square.
    P51Square,
    /// Weight 1/2, `2N` not a square.
    P51NonSquare,
    /// Weight 1/2, `6N` a square.
    P52Square,
    /// Weight 3/2, `6N` a square.
    P61Square,
    /// Weight 3/2, `6N` not a square.
    P61NonSquare,
    /// Weight 3/2, `2N` a square.
    P62Square,
    /// Weight 3/2, `2N` not a square.
    P62NonSquare,
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::P51Square,
        Construction::P51NonSquare,
        Construction::P52Square,
        Construction::P61Square,
        Construction::P61NonSquare,
        Construction::P62Square,
        Construction::P62NonSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::P51Square => "P51-square",
            Construction::P51NonSquare => "P51-nonsquare",
            Construction::P52Square => "P52-square",
            Construction::P61Square => "P61-square",
            Construction::P61NonSquare => "P61-nonsquare",
            Construction::P62Square => "P62-square",
            Construction::P62NonSquare => "P62-nonsquare",
        }
    }

    pub fn weight(self) -> Rational {
        match self {
            Construction::P51Square | Construction::P51NonSquare | Construction::P52Square => rat(1, 2),
            _ => rat(3, 2),
        }
    }

    /// `c` in the exponent `y^2/(4c) - x^2/(4N)`.
    fn c(self) -> i64 {
        match self {
            Construction::P52Square | Construction::P61Square | Construction::P61NonSquare => 6,
            _ => 2,
        }
    }

    /// Power of eta in the denominator.
    fn eta_power(self) -> i64 {
        if self.c() == 2 {
            3
        } else {
            1
        }
    }

    fn is_square(self) -> bool {
        matches!(
            self,
            Construction::P51Square
                | Construction::P52Square
                | Construction::P61Square
                | Construction::P62Square
        )
    }

    fn unit_kind(self) -> Option<UnitKind> {
        match self {
            Construction::P51NonSquare => Some(UnitKind::WeightHalf),
            Construction::P61NonSquare => Some(UnitKind::ThreeHalf),
            Construction::P62NonSquare => Some(UnitKind::ThreeHalfAlt),
            _ => None,
        }
    }

    /// Whether the construction applies at level `n`.
    pub fn applies(self, n: u64) -> bool {
        let cn_square = exact_sqrt(self.c() * n as i64).is_some();
        n >= 1 && cn_square == self.is_square()
    }

    pub fn shadow(self, n: u64) -> String {
        if self.weight() == rat(1, 2) {
            format!("θ_{n}(τ;1)/√{n}")
        } else {
            format!("√{n}·θ_{n}(τ;0)/π")
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct MockForm {
    pub series: VectorQSeries,
    pub construction: Construction,
    pub n: u64,
    pub unit: Option<UnitSpec>,
    pub shadow: String,
}

/// Perturbations of a construction, for checking that the verification
/// suites notice wrong formulas.
#[derive(Clone, Copy, Default)]
pub struct Tweak {
    /// Replaces the lattice weight `w(x, y)` by `f(x, y, w)`.
    pub lattice: Option<fn(i64, i64, &Rational) -> Rational>,
    pub negate_boundary: bool,
}

pub fn mock_theta_weight_half(n: u64, cutoff: &Rational) -> Result<MockForm> {
    let c = if Construction::P51Square.applies(n) {
        Construction::P51Square
    } else {
        Construction::P51NonSquare
    };
    build(c, n, cutoff, &Tweak::default())
}

pub fn mock_theta_weight_half_alt(n: u64, cutoff: &Rational) -> Result<MockForm> {
    build(Construction::P52Square, n, cutoff, &Tweak::default())
}

pub fn mock_theta_weight_threehalf(n: u64, cutoff: &Rational) -> Result<MockForm> {
    let c = if Construction::P61Square.applies(n) {
        Construction::P61Square
    } else {
        Construction::P61NonSquare
    };
    build(c, n, cutoff, &Tweak::default())
}

pub fn mock_theta_weight_threehalf_alt(n: u64, cutoff: &Rational) -> Result<MockForm> {
    let c = if Construction::P62Square.applies(n) {
        Construction::P62Square
    } else {
        Construction::P62NonSquare
    };
    build(c, n, cutoff, &Tweak::default())
}

/// A lattice term: pair `(x, y)` with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTerm {
    pub x: i64,
    pub y: i64,
    pub weight: Rational,
}

/// Lattice pairs of a square construction with exponent `<= cutoff`, via the
/// factorization `4c^2 N * exponent = (sy - cx)(sy + cx)`, `s = sqrt(cN)`.
pub fn square_lattice_pairs(construction: Construction, n: u64, cutoff: &Rational) -> Result<Vec<(i64, i64)>> {
    let c = construction.c();
    let s = exact_sqrt(c * n as i64)
        .filter(|_| construction.is_square())
        .ok_or_else(|| Error::Inapplicable(format!("{construction} at N = {n}")))?;
    let pmax = floor_i64(&(cutoff * int(4 * c * c * n as i64)));
    let mut out = Vec::new();
    for u in 1..=pmax.max(0) {
        for v in 1..=pmax / u {
            if (v - u) % (2 * c) != 0 || (u + v) % (2 * s) != 0 {
                continue;
            }
            out.push(((v - u) / (2 * c), (u + v) / (2 * s)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn lattice_weight(construction: Construction, x: i64, y: i64) -> Rational {
    match construction {
        Construction::P51Square => int(kronecker(-4, y) as i64 * sgn(x) * y),
        Construction::P52Square => int(kronecker(12, y) as i64 * sgn(x)),
        Construction::P61Square => int(-2 * kronecker(12, y) as i64 * x.abs()),
        Construction::P62Square => int(-2 * kronecker(-4, y) as i64 * x.abs() * y),
        _ => unreachable!("non-square weights need the unit"),
    }
}

/// Field-valued weights of the non-square constructions.
struct TraceWeights {
    construction: Construction,
    radicand: i64,
    /// `1/(1 - eps^-1)` or `1/(1 - eps^-2)`.
    w: QuadFieldElem,
}

impl TraceWeights {
    fn new(construction: Construction, unit: &QuadFieldElem) -> Result<Self> {
        let one = unit.rational(int(1));
        let inv = unit.inv()?;
        let w = match construction {
            Construction::P62NonSquare => one.sub(&inv.mul(&inv)).inv()?,
            _ => one.sub(&inv).inv()?,
        };
        Ok(Self { construction, radicand: unit.radicand(), w })
    }

    fn weight(&self, x: i64, y: i64) -> Rational {
        let r = self.radicand;
        let elem = |a: Rational, b: Rational| QuadFieldElem::new(r, a, b).expect("non-square radicand");
        match self.construction {
            Construction::P51NonSquare => {
                let k = kronecker(-4, y) as i64 * sgn(x);
                if k == 0 {
                    return Rational::zero();
                }
                let lambda = elem(rat(y, 2), rat(x, r));
                lambda.mul(&self.w).trace() * int(k)
            }
            Construction::P61NonSquare => {
                let k = kronecker(12, y) as i64 * sgn(y);
                if k == 0 {
                    return Rational::zero();
                }
                let mu = elem(int(x), rat(y, 6));
                mu.mul(&self.w).trace() * int(k)
            }
            Construction::P62NonSquare => {
                let k = kronecker(-4, y) as i64 * sgn(y);
                if k == 0 {
                    return Rational::zero();
                }
                let lambda = elem(rat(y, 2), rat(x, r));
                let sqrt_r = elem(Rational::zero(), Rational::one());
                sqrt_r.mul(&lambda).mul(&lambda).mul(&self.w).trace() * int(k)
            }
            _ => unreachable!("square constructions have integer weights"),
        }
    }
}

/// Region of a non-square construction.
pub fn region_spec(construction: Construction, n: u64, unit: &UnitSpec) -> RegionSpec {
    let right = if construction == Construction::P51NonSquare {
        Endpoint::Open
    } else {
        Endpoint::Closed
    };
    RegionSpec { n: n as i64, c: construction.c(), unit: unit.unit.clone(), right }
}

/// Lattice terms (before the eta quotient) with exponent `<= cutoff`.
pub fn lattice_terms(
    construction: Construction,
    n: u64,
    cutoff: &Rational,
) -> Result<(Vec<LatticeTerm>, Option<UnitSpec>)> {
    if !construction.applies(n) {
        return Err(Error::Inapplicable(format!("{construction} at N = {n}")));
    }
    if construction.is_square() {
        let terms = square_lattice_pairs(construction, n, cutoff)?
            .into_iter()
            .map(|(x, y)| LatticeTerm { x, y, weight: lattice_weight(construction, x, y) })
            .filter(|t| !t.weight.is_zero())
            .collect();
        return Ok((terms, None));
    }
    let kind = construction.unit_kind().expect("non-square has a unit");
    let unit = unit_for(n as i64, kind)?;
    let region = region_spec(construction, n, &unit);
    let weights = TraceWeights::new(construction, &unit.unit)?;
    let terms = enumerate_region(&region, cutoff)
        .into_iter()
        .map(|(x, y)| LatticeTerm { x, y, weight: weights.weight(x, y) })
        .filter(|t| !t.weight.is_zero())
        .collect();
    Ok((terms, Some(unit)))
}

/// Boundary term of a square construction: one scalar series per component.
fn boundary_terms(
    construction: Construction,
    n: u64,
    cutoff: &Rational,
) -> Result<Vec<(i64, RationalQSeries)>> {
    let c = construction.c();
    let ni = n as i64;
    let s = exact_sqrt(c * ni).expect("square case");
    let e2 = eisenstein_e2(&cutoff.clone().max(Rational::zero()))?.truncate_at_most(cutoff);
    let constant = |v: Rational| RationalQSeries::monomial(v, Rational::zero(), cutoff.clone());
    let mut out = Vec::new();
    for b in 0..2 * s {
        let x = rat(b, 2 * s);
        let term = match construction {
            Construction::P51Square => {
                let k = kronecker(-4, b) as i64;
                if k == 0 {
                    continue;
                }
                let b2 = periodic_bernoulli(2, &x)?;
                let series = e2.scale(&rat(k, 12 * s)).add(&constant(int(-k * s) * b2));
                (b * s / 2, series)
            }
            Construction::P52Square => {
                let k = kronecker(12, b) as i64;
                if k == 0 {
                    continue;
                }
                (b * s / 6, constant(-int(k) * periodic_bernoulli(1, &x)?))
            }
            Construction::P61Square => {
                let k = kronecker(12, b) as i64;
                if k == 0 {
                    continue;
                }
                let b2 = periodic_bernoulli(2, &x)?;
                let series = e2.scale(&rat(k, 12)).add(&constant(int(2 * ni * k) * b2));
                (b * s / 6, series)
            }
            Construction::P62Square => {
                let k = kronecker(-4, b) as i64;
                if k == 0 {
                    continue;
                }
                let factor = rat(16 * ni * ni, 3 * s);
                (b * s / 2, constant(factor * int(k) * periodic_bernoulli(3, &x)?))
            }
            _ => unreachable!("only square constructions have boundary terms"),
        };
        out.push(term);
    }
    Ok(out)
}

/// Builds a construction at level `n`, complete through `cutoff`.
pub fn build(construction: Construction, n: u64, cutoff: &Rational, tweak: &Tweak) -> Result<MockForm> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    if !construction.applies(n) {
        return Err(Error::Inapplicable(format!(
            "{construction} needs {}N {}a square, N = {n}",
            construction.c(),
            if construction.is_square() { "" } else { "not " }
        )));
    }
    let r = construction.eta_power();
    let min = rat(-r, 24);
    if cutoff < &min {
        return Err(Error::CutoffBelowPrincipalPart { cutoff: cutoff.to_string(), min: min.to_string() });
    }
    // The inner sum must reach r/24 further, since eta^-r starts at q^{-r/24}.
    let inner_cut = cutoff + rat(r, 24);
    let c = construction.c();
    let ni = n as i64;
    let m = 2 * ni;
    let den = 4 * c * c * ni;
    let (terms, unit) = lattice_terms(construction, n, &inner_cut)?;
    let mut buckets: Vec<Vec<(i64, Rational)>> = vec![Vec::new(); m as usize];
    for t in terms {
        let w = match tweak.lattice {
            Some(f) => f(t.x, t.y, &t.weight),
            None => t.weight,
        };
        let numer = c * (ni * t.y * t.y - c * t.x * t.x);
        buckets[t.x.rem_euclid(m) as usize].push((numer, w));
    }
    let mut inner: Vec<RationalQSeries> = buckets
        .into_iter()
        .map(|b| RationalQSeries::from_terms(den, b, inner_cut.clone()))
        .collect();
    if construction.is_square() {
        for (h, series) in boundary_terms(construction, n, &inner_cut)? {
            let series = if tweak.negate_boundary { series.neg() } else { series };
            let slot = &mut inner[h.rem_euclid(m) as usize];
            *slot = slot.add(&series);
        }
    }
    let eta_inv = eta_power(-r, &inner_cut)?;
    let components = inner
        .iter()
        .map(|s| s.mul(&eta_inv).truncate(cutoff))
        .collect::<Result<Vec<_>>>()?;
    let weight = construction.weight();
    let sign = if weight == rat(1, 2) { -1 } else { 1 };
    let series = VectorQSeries::new(n, weight, sign, Rep::Conjugate, components)?;
    Ok(MockForm { series, construction, n, unit, shadow: construction.shadow(n) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealRing {
    Sqrt6,
    Sqrt2,
}

impl IdealRing {
    pub fn radicand(self) -> i64 {
        match self {
            IdealRing::Sqrt6 => 6,
            IdealRing::Sqrt2 => 2,
        }
    }

    /// Totally positive unit generating the associates used for de-duplication.
    fn unit(self) -> QuadFieldElem {
        match self {
            IdealRing::Sqrt6 => QuadFieldElem::from_ints(6, 5, 2),
            IdealRing::Sqrt2 => QuadFieldElem::from_ints(2, 3, 2),
        }
        .expect("non-square")
    }

    fn eta_power(self) -> i64 {
        match self {
            IdealRing::Sqrt6 => 1,
            IdealRing::Sqrt2 => 3,
        }
    }
}

/// `(12 / u) Tr(lambda / (2 - sqrt 6))` for totally positive `lambda = u + v sqrt 6`.
pub fn phi6(lambda: &QuadFieldElem) -> Rational {
    let u = lambda.a().to_integer();
    let k = kronecker(12, i64::try_from(&u).expect("small trace"));
    if k == 0 {
        return Rational::zero();
    }
    let denom = QuadFieldElem::from_ints(6, 2, -1).expect("non-square");
    lambda.div(&denom).expect("nonzero").trace() * int(k as i64)
}

/// `-(-4 / u) Tr(sqrt2 lambda^2 / (4 (3 - 2 sqrt 2)))` for totally positive `lambda = u + v sqrt 2`.
pub fn phi2(lambda: &QuadFieldElem) -> Rational {
    let u = lambda.a().to_integer();
    let k = kronecker(-4, i64::try_from(&u).expect("small trace"));
    if k == 0 {
        return Rational::zero();
    }
    let denom = QuadFieldElem::from_ints(2, 12, -8).expect("non-square");
    let sqrt2 = QuadFieldElem::from_ints(2, 0, 1).expect("non-square");
    let num = sqrt2.mul(lambda).mul(lambda);
    num.div(&denom).expect("nonzero").trace() * int(-(k as i64))
}

/// Totally positive `lambda = u + v sqrt d` with `eps^-2 < lambda/lambda' <= 1`
/// and `0 < Nm(lambda) <= pmax`: one generator per principal ideal of positive norm.
pub fn ideal_generators(ring: IdealRing, pmax: i64) -> Vec<QuadFieldElem> {
    let d = ring.radicand();
    let eps = ring.unit();
    let eps_inv2 = eps.inv().expect("unit").pow(2);
    let eps_f = eps.a().to_f64().expect("small unit") + eps.b().to_f64().expect("small unit") * (d as f64).sqrt();
    // lambda <= lambda' < eps sqrt(Nm), so u = (lambda + lambda')/2 < sqrt(pmax)(1 + eps)/2.
    let umax = ((pmax.max(0) as f64).sqrt() * (1.0 + eps_f) / 2.0 * 1.01) as i64 + 2;
    let mut out = Vec::new();
    for u in 1..=umax {
        let u2 = u * u;
        // 0 < u^2 - d v^2 <= pmax, v <= 0.
        let vmax = crate::arith::isqrt(((u2 - 1) / d) as u128) as i64;
        let lo = (u2 - pmax).max(0);
        let mut vmin = crate::arith::isqrt((lo / d) as u128) as i64;
        while d * vmin * vmin < lo {
            vmin += 1;
        }
        for av in vmin..=vmax {
            let lambda = QuadFieldElem::from_ints(d, u, -av).expect("non-square");
            let nm = lambda.norm();
            if nm <= Rational::zero() || nm > int(pmax) {
                continue;
            }
            let lower = lambda.mul(&lambda).sub(&eps_inv2.scale(&nm));
            if lower.sign() > 0 {
                out.push(lambda);
            }
        }
    }
    out
}

/// `1/(24 eta(4 tau)^r) * sum phi(a) q^{Nm(a)/d}` with a custom ideal weight.
pub fn hurwitz_ideal_series_with(
    ring: IdealRing,
    cutoff: &Rational,
    phi: &dyn Fn(&QuadFieldElem) -> Rational,
) -> Result<RationalQSeries> {
    if cutoff < &Rational::zero() {
        return Err(Error::InvalidParameter(format!("cutoff must be nonnegative, got {cutoff}")));
    }
    let d = ring.radicand();
    let r = ring.eta_power();
    let inner_cut = cutoff + rat(r, 6);
    let pmax = floor_i64(&(&inner_cut * int(d)));
    let terms = ideal_generators(ring, pmax).into_iter().map(|l| {
        let nm = l.norm().to_integer();
        (i64::try_from(&nm).expect("small norm"), phi(&l))
    });
    let inner = RationalQSeries::from_terms(d, terms, inner_cut.clone());
    let eta4 = eta_power(-r, &(&inner_cut / int(4)))?.rescale_variable(4);
    inner.mul(&eta4).scale(&rat(1, 24)).truncate(cutoff)
}

pub fn hurwitz_ideal_series(ring: IdealRing, cutoff: &Rational) -> Result<RationalQSeries> {
    match ring {
        IdealRing::Sqrt6 => hurwitz_ideal_series_with(ring, cutoff, &phi6),
        IdealRing::Sqrt2 => hurwitz_ideal_series_with(ring, cutoff, &phi2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applicability() {
        assert!(Construction::P51Square.applies(2));
        assert!(Construction::P51NonSquare.applies(6));
        assert!(Construction::P52Square.applies(6));
        assert!(!Construction::P52Square.applies(2));
        assert!(Construction::P61NonSquare.applies(1));
        assert!(Construction::P62Square.applies(8));
    }

    #[test]
    fn inapplicable_variant_is_rejected() {
        assert!(matches!(mock_theta_weight_half_alt(2, &int(1)), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn cutoff_below_principal_part_is_rejected() {
        assert!(matches!(
            mock_theta_weight_half(2, &rat(-1, 4)),
            Err(Error::CutoffBelowPrincipalPart { .. })
        ));
    }

    #[test]
    fn ideal_weights_on_small_elements() {
        let one6 = QuadFieldElem::from_ints(6, 1, 0).unwrap();
        // Tr(1/(2 - sqrt 6)) = Tr((2 + sqrt 6)/(-2)) = -2.
        assert_eq!(phi6(&one6), int(-2));
        let one2 = QuadFieldElem::from_ints(2, 1, 0).unwrap();
        // sqrt2 / (12 - 8 sqrt2) = 1 + (3/4) sqrt2, trace 2, then the leading minus.
        assert_eq!(phi2(&one2), int(-2));
    }

    #[test]
    fn unit_generators_are_deduplicated() {
        // The ideal (1) appears once, as 1 itself.
        let g = ideal_generators(IdealRing::Sqrt6, 1);
        assert_eq!(g, vec![QuadFieldElem::from_ints(6, 1, 0).unwrap()]);
    }
}
