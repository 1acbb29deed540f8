//! Coefficient-level checks of the identities satisfied by the constructed
//! series. Every check compares exact rationals up to a stated cutoff and,
//! on failure, records the first exponent where the two sides disagree.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::arith::{exact_sqrt, format_rational, int, rat, Rational};
use crate::heckeops::{script_v, u_operator, v_operator, w_involution, w_permutation};
use crate::mockforms::{
    build, hurwitz_ideal_series_with, phi2, phi6, Construction, IdealRing, MockForm, Tweak,
};
use crate::qseries::{pair_with_vector, scalarize, RationalQSeries, Rep, Tensor, VectorQSeries};
use crate::quadfield::QuadFieldElem;
use crate::thetaeta::{
    appell_f2, eigenvector, eisenstein_e2, eta, eta_power, hurwitz_series, theta, Eigen,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported but not asserted.
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// Where two sides first disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub component: Option<u64>,
    pub exponent: Rational,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub cutoff: Rational,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: String,
}

impl Check {
    fn new(id: impl Into<String>, cutoff: &Rational, ok: bool, witness: Option<Witness>) -> Self {
        Check {
            id: id.into(),
            cutoff: cutoff.clone(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            note: String::new(),
        }
    }

    fn info(id: impl Into<String>, cutoff: &Rational, note: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            cutoff: cutoff.clone(),
            status: Status::Info,
            witness: None,
            note: note.into(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> Value {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "component": w.component,
                "exponent": format_rational(&w.exponent),
                "left": format_rational(&w.left),
                "right": format_rational(&w.right),
            })
        });
        json!({
            "id": self.id,
            "cutoff": format_rational(&self.cutoff),
            "status": self.status.label().to_lowercase(),
            "witness": witness,
            "note": self.note,
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} (cutoff {})", self.status.label(), self.id, self.cutoff)?;
        if let Some(w) = &self.witness {
            write!(f, " at q^{}", w.exponent)?;
            if let Some(h) = w.component {
                write!(f, " component {h}")?;
            }
            write!(f, ": {} vs {}", w.left, w.right)?;
        }
        if !self.note.is_empty() {
            write!(f, " [{}]", self.note)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}: {}\n", self.suite, if self.passed() { "pass" } else { "fail" });
        for c in &self.checks {
            out.push_str(&format!("  {c}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

fn ensure_complete(s: &RationalQSeries, cutoff: &Rational) -> Result<()> {
    if s.cutoff() < cutoff {
        return Err(Error::Incomplete { have: s.cutoff().to_string(), need: cutoff.to_string() });
    }
    Ok(())
}

fn series_witness(a: &RationalQSeries, b: &RationalQSeries, cutoff: &Rational) -> Option<Witness> {
    a.first_difference(b, cutoff).map(|e| Witness {
        component: None,
        left: a.coeff(&e),
        right: b.coeff(&e),
        exponent: e,
    })
}

fn compare(id: &str, a: &RationalQSeries, b: &RationalQSeries, cutoff: &Rational) -> Result<Check> {
    ensure_complete(a, cutoff)?;
    ensure_complete(b, cutoff)?;
    let w = series_witness(a, b, cutoff);
    Ok(Check::new(id, cutoff, w.is_none(), w))
}

fn compare_vectors(id: &str, a: &VectorQSeries, b: &VectorQSeries, cutoff: &Rational) -> Result<Check> {
    if a.level() != b.level() {
        return Err(Error::GroupMismatch(format!("levels {} and {}", a.level(), b.level())));
    }
    let mut witness = None;
    for h in 0..a.modulus() as i64 {
        let (x, y) = (a.component(h), b.component(h));
        ensure_complete(x, cutoff)?;
        ensure_complete(y, cutoff)?;
        if let Some(mut w) = series_witness(x, y, cutoff) {
            w.component = Some(h as u64);
            witness = Some(w);
            break;
        }
    }
    Ok(Check::new(id, cutoff, witness.is_none(), witness))
}

/// Exact comparison of two series through `cutoff`.
pub fn check_series_equal(a: &RationalQSeries, b: &RationalQSeries, cutoff: &Rational) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("series");
    r.checks.push(compare("series-equal", a, b, cutoff)?);
    Ok(r)
}

/// `a(-h, m) = sign * a(h, m)` through the full cutoff.
pub fn symmetry_check(id: &str, f: &VectorQSeries) -> Check {
    let w = f.symmetry_violation().map(|(h, e)| Witness {
        component: Some(h),
        left: f.component(h as i64).coeff(&e),
        right: f.component(-(h as i64)).coeff(&e) * int(f.sign() as i64),
        exponent: e,
    });
    Check::new(id, f.cutoff(), w.is_none(), w)
}

/// First coefficient of `factor * f` that is not an integer.
fn first_nonintegral(f: &VectorQSeries, factor: &Rational) -> Option<Witness> {
    for (h, comp) in f.components().iter().enumerate() {
        for (e, c) in comp.terms() {
            let v = c * factor;
            if !v.is_integer() {
                return Some(Witness { component: Some(h as u64), exponent: e, right: v.round(), left: v });
            }
        }
    }
    None
}

/// Perturbation of one construction, applied wherever the suites build it.
#[derive(Clone, Copy)]
pub struct Mutation {
    pub construction: Construction,
    pub tweak: Tweak,
}

fn make(c: Construction, n: u64, cutoff: &Rational, mutation: Option<&Mutation>) -> Result<MockForm> {
    let tweak = mutation.filter(|m| m.construction == c).map(|m| m.tweak).unwrap_or_default();
    build(c, n, cutoff, &tweak)
}

fn weight_half(n: u64, cutoff: &Rational, mutation: Option<&Mutation>) -> Result<MockForm> {
    let c = if Construction::P51Square.applies(n) { Construction::P51Square } else { Construction::P51NonSquare };
    make(c, n, cutoff, mutation)
}

/// `q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}`.
pub fn pentagonal_eta(cutoff: &Rational) -> RationalQSeries {
    let limit = (cutoff * int(24)).floor().to_integer();
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for j in if k == 0 { vec![0] } else { vec![k, -k] } {
            let n = 6 * j - 1;
            if num_bigint::BigInt::from(n * n) <= limit {
                any = true;
                terms.push((n * n, int(if j % 2 == 0 { 1 } else { -1 })));
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    RationalQSeries::from_terms(24, terms, cutoff.clone())
}

fn integer_cutoff(c: &Rational) -> Rational {
    c.floor().max(Rational::zero())
}

fn prod_squared_inverse(factors: impl Iterator<Item = (i64, i64)>, cutoff: &Rational) -> Result<RationalQSeries> {
    let mut p = RationalQSeries::one(cutoff.clone());
    for (e, s) in factors {
        let f = RationalQSeries::from_terms(1, [(0, int(1)), (e, int(s))], cutoff.clone());
        p = p.mul(&f).mul(&f);
    }
    p.invert()
}

/// `f(q) = 1 + sum_{n >= 1} q^{n^2} / ((1+q)^2 ... (1+q^n)^2)`.
pub fn ramanujan_f(cutoff: &Rational) -> Result<RationalQSeries> {
    let cut = integer_cutoff(cutoff);
    let top = cut.to_integer();
    let mut acc = RationalQSeries::one(cut.clone());
    let mut n: i64 = 1;
    while num_bigint::BigInt::from(n * n) <= top {
        let den = prod_squared_inverse((1..=n).map(|k| (k, 1)), &cut)?;
        acc = acc.add(&den.shift(&int(n * n)).truncate_at_most(&cut));
        n += 1;
    }
    Ok(acc)
}

/// `omega(q) = sum_{n >= 0} q^{2n(n+1)} / ((1-q)^2 (1-q^3)^2 ... (1-q^{2n+1})^2)`.
pub fn ramanujan_omega(cutoff: &Rational) -> Result<RationalQSeries> {
    let cut = integer_cutoff(cutoff);
    let top = cut.to_integer();
    let mut acc = RationalQSeries::zero(cut.clone());
    let mut n: i64 = 0;
    while num_bigint::BigInt::from(2 * n * (n + 1)) <= top {
        let den = prod_squared_inverse((0..=n).map(|k| (2 * k + 1, -1)), &cut)?;
        acc = acc.add(&den.shift(&int(2 * n * (n + 1))).truncate_at_most(&cut));
        n += 1;
    }
    Ok(acc)
}

fn printed(id: &str, s: &RationalQSeries, start: &Rational, step: &Rational, expected: &[Rational]) -> Check {
    let mut witness = None;
    for (i, want) in expected.iter().enumerate() {
        let e = start + step * int(i as i64);
        let got = s.coeff(&e);
        if &got != want || s.cutoff() < &e {
            witness = Some(Witness { component: None, exponent: e, left: got, right: want.clone() });
            break;
        }
    }
    let last = start + step * int(expected.len() as i64 - 1);
    Check::new(id, &last, witness.is_none(), witness)
}

/// `eta` against the pentagonal expansion, the four eigenvector pairings and `eta^3 = theta_{2,1}`.
pub fn verify_eta(cutoff: &Rational) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("eta");
    let e = eta(cutoff)?;
    r.checks.push(compare("eta-pentagonal", &e, &pentagonal_eta(cutoff), cutoff)?);

    let t6 = theta(6, 0, cutoff)?;
    let lhs = pair_with_vector(&t6, &eigenvector(Eigen::V6))?;
    r.checks.push(compare("theta6-v6-is-2eta", &lhs, &e.scale(&int(2)), cutoff)?);

    let t2 = theta(2, 1, cutoff)?;
    let lhs = pair_with_vector(&t2, &eigenvector(Eigen::V2))?;
    let eta3 = eta_power(3, cutoff)?;
    r.checks.push(compare("theta2-v2-is-2eta3", &lhs, &eta3.scale(&int(2)), cutoff)?);
    r.checks.push(compare("eta3-is-theta21", t2.component(1), &eta3, cutoff)?);

    let t3 = theta(3, 0, cutoff)?;
    let lhs = pair_with_vector(&Tensor::power(&t3, 2), &eigenvector(Eigen::V3))?;
    r.checks.push(compare("theta3-v3-is-4eta2", &lhs, &eta_power(2, cutoff)?.scale(&int(4)), cutoff)?);
    let lhs = pair_with_vector(&Tensor::power(&t3, 4), &eigenvector(Eigen::V4))?;
    r.checks.push(compare("theta3-v4-is-16eta4", &lhs, &eta_power(4, cutoff)?.scale(&int(16)), cutoff)?);
    Ok(r)
}

pub fn verify_hurwitz_identities(cutoff: &Rational) -> Result<VerificationReport> {
    verify_hurwitz_with(cutoff, &phi6, &phi2, None)
}

/// Class number series against both ideal sums and both weight 3/2 forms at level 1,
/// with replaceable ideal weights.
pub fn verify_hurwitz_with(
    cutoff: &Rational,
    phi_6: &dyn Fn(&QuadFieldElem) -> Rational,
    phi_2: &dyn Fn(&QuadFieldElem) -> Rational,
    mutation: Option<&Mutation>,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("hurwitz");
    let h = hurwitz_series(cutoff)?;
    let s6 = hurwitz_ideal_series_with(IdealRing::Sqrt6, cutoff, phi_6)?;
    r.checks.push(compare("class-numbers-vs-sqrt6-ideals", &s6, &h, cutoff)?);
    let s2 = hurwitz_ideal_series_with(IdealRing::Sqrt2, cutoff, phi_2)?;
    r.checks.push(compare("class-numbers-vs-sqrt2-ideals", &s2, &h, cutoff)?);

    // Summing the two components and substituting q -> q^4 gives -8 H.
    let quarter = cutoff / int(4);
    let minus8h = h.scale(&int(-8));
    for (id, c) in [
        ("threehalf-level1-is-minus8h", Construction::P61NonSquare),
        ("threehalf-alt-level1-is-minus8h", Construction::P62NonSquare),
    ] {
        let f = make(c, 1, &quarter, mutation)?;
        let s = scalarize(&f.series, &[1], 4)?;
        r.checks.push(compare(id, &s, &minus8h, cutoff)?);
    }
    Ok(r)
}

/// `(E2/24 - F2) / eta^3`, complete through `cutoff`.
pub fn mock_eta3_series(cutoff: &Rational) -> Result<RationalQSeries> {
    let inner_cut = (cutoff + rat(1, 8)).max(Rational::zero());
    let inner = eisenstein_e2(&inner_cut)?.scale(&rat(1, 24)).sub(&appell_f2(&inner_cut)?);
    inner.mul(&eta_power(-3, &inner_cut)?).truncate(cutoff)
}

pub fn verify_mock_eta3(cutoff: &Rational) -> Result<VerificationReport> {
    verify_mock_eta3_with(cutoff, None)
}

pub fn verify_mock_eta3_with(cutoff: &Rational, mutation: Option<&Mutation>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("mocketa3");
    let printed_cut = cutoff.clone().max(rat(23, 8));
    let s = mock_eta3_series(&printed_cut)?;
    let expected: Vec<Rational> = [-1, 45, 231, 770].iter().map(|&c| rat(-c, 24)).collect();
    r.checks.push(printed("printed-coefficients", &s, &rat(-1, 8), &int(1), &expected));

    let s = s.truncate(cutoff)?;
    let m = make(Construction::P51Square, 2, cutoff, mutation)?.series;
    let c1 = m.component(1);
    r.checks.push(
        compare("component1-is-twice-series", c1, &s.scale(&int(2)), cutoff)?
            .with_note("the constructed form carries shadow theta_2(tau;1)/sqrt2 = 2 * eta^3/(2 sqrt2)"),
    );
    r.checks.push(compare("component3-is-minus-component1", m.component(3), &c1.neg(), cutoff)?);
    let diff = c1.sub(&s);
    let note = match diff.leading_exponent() {
        None => "component 1 equals the series".to_string(),
        Some(e) if diff == s => format!("component 1 minus the series equals the series (leading q^{e})"),
        Some(e) => format!("difference starts at q^{e} with coefficient {}", diff.coeff(&e)),
    };
    r.checks.push(Check::info("component1-minus-series", cutoff, note));
    Ok(r)
}

pub fn verify_ramanujan_f(cutoff: &Rational) -> Result<VerificationReport> {
    verify_ramanujan_f_with(cutoff, None)
}

/// `q^{-1/24} f(q)` from its q-hypergeometric definition against both weight 1/2
/// constructions at level 6, plus the whole vector `2F + 2 W_3 F`.
pub fn verify_ramanujan_f_with(cutoff: &Rational, mutation: Option<&Mutation>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("ramanujan");
    let f_cut = (cutoff + rat(1, 24)).ceil().max(int(5));
    let f = ramanujan_f(&f_cut)?;
    let want: Vec<Rational> = [1, 1, -2, 3, -3, 3].iter().map(|&c| int(c)).collect();
    r.checks.push(printed("f-printed", &f, &int(0), &int(1), &want));
    let w_cut = (cutoff * int(2)).max(int(5));
    let omega = ramanujan_omega(&w_cut)?;
    let want: Vec<Rational> = [1, 2, 3, 4, 6, 8].iter().map(|&c| int(c)).collect();
    r.checks.push(printed("omega-printed", &omega, &int(0), &int(1), &want));

    let target = f.shift(&rat(-1, 24)).truncate_at_most(cutoff);
    let nonsq = make(Construction::P51NonSquare, 6, cutoff, mutation)?;
    let alt = make(Construction::P52Square, 6, cutoff, mutation)?;
    for (id, m) in [("weight-half-f", &nonsq), ("weight-half-alt-f", &alt)] {
        let combo = m.series.component(1).add(m.series.component(7)).scale(&int(2));
        r.checks.push(compare(id, &combo, &target, cutoff)?);
    }

    // 2F + 2 W_3 F: f in components 1, 7 (negated in 5, 11), omega pieces in 2, 4, 8, 10.
    let fplus = nonsq.series.add(&w_involution(&nonsq.series, 3)?)?.scale(&int(2));
    let (mut odd, mut even) = (Vec::new(), Vec::new());
    for (j, c) in omega.terms() {
        let j = j.to_integer();
        let j = i64::try_from(j).expect("small exponent");
        let term = (8 + 12 * j, c * int(4));
        if j % 2 == 0 {
            even.push(term);
        } else {
            odd.push(term);
        }
    }
    let a = RationalQSeries::from_terms(24, odd, cutoff.clone());
    let b = RationalQSeries::from_terms(24, even, cutoff.clone());
    let zero = RationalQSeries::zero(cutoff.clone());
    let components: Vec<RationalQSeries> = (0..12)
        .map(|h| match h {
            1 | 7 => target.clone(),
            5 | 11 => target.neg(),
            2 => a.neg(),
            10 => a.clone(),
            4 => b.neg(),
            8 => b.clone(),
            _ => zero.clone(),
        })
        .collect();
    let expected = nonsq.series.with_components(6, components)?;
    r.checks.push(compare_vectors("fplus-vector", &fplus, &expected, cutoff)?);

    let note = match compare_vectors("", &nonsq.series, &alt.series, cutoff)?.witness {
        None => "the two level 6 vectors agree".to_string(),
        Some(w) => format!(
            "vectors differ first at component {} q^{} ({} vs {})",
            w.component.unwrap_or(0),
            w.exponent,
            w.left,
            w.right
        ),
    };
    r.checks.push(Check::info("weight-half-vs-alt-vector", cutoff, note));
    Ok(r)
}

/// Square levels with `6 sqrt(2N)`, non-square levels with `|Tr(1 - eps_N)|`.
pub const SQUARE_LEVELS: [u64; 3] = [2, 8, 18];
pub const NONSQUARE_LEVELS: [u64; 4] = [1, 3, 5, 6];
/// Weight 3/2 forms whose symmetry is checked alongside.
const THREEHALF_FORMS: [(Construction, u64); 4] = [
    (Construction::P61Square, 6),
    (Construction::P62Square, 2),
    (Construction::P61NonSquare, 1),
    (Construction::P62NonSquare, 1),
];

pub fn verify_denominator_bounds(square: &[u64], nonsquare: &[u64], cutoff: &Rational) -> Result<VerificationReport> {
    verify_denominator_bounds_with(square, nonsquare, cutoff, None)
}

pub fn verify_denominator_bounds_with(
    square: &[u64],
    nonsquare: &[u64],
    cutoff: &Rational,
    mutation: Option<&Mutation>,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("denominators");
    let mut forms = Vec::new();
    for &n in square {
        let s = exact_sqrt(2 * n as i64)
            .ok_or_else(|| Error::InvalidParameter(format!("2N = {} is not a square", 2 * n)))?;
        let m = make(Construction::P51Square, n, cutoff, mutation)?;
        forms.push((m, int(6 * s), format!("6sqrt(2N) = {}", 6 * s)));
    }
    for &n in nonsquare {
        let m = weight_half(n, cutoff, mutation)?;
        if m.construction != Construction::P51NonSquare {
            return Err(Error::InvalidParameter(format!("2N = {} is a square", 2 * n)));
        }
        let unit = m.unit.as_ref().expect("non-square forms carry a unit");
        let tr = (int(1) - unit.unit.a()) * int(2);
        let tr = crate::arith::abs(&tr);
        forms.push((m, tr.clone(), format!("|Tr(1 - eps)| = {tr}")));
    }
    for (m, bound, label) in &forms {
        let w = first_nonintegral(&m.series, bound);
        r.checks.push(
            Check::new(format!("bound-N{}", m.n), cutoff, w.is_none(), w)
                .with_note(format!("{label}, denominator {}", lcm_denominator(&m.series))),
        );
        r.checks.push(symmetry_check(&format!("symmetry-N{}", m.n), &m.series));
    }
    for (m, _, _) in &forms {
        let n4 = num_integer::gcd(m.n, 4);
        let factor = int(24 * n4 as i64);
        let holds = first_nonintegral(&m.series, &factor).is_none();
        r.checks.push(Check::info(
            format!("sharp-bound-N{}", m.n),
            cutoff,
            format!("24N_4 = {factor}: {}", if holds { "holds" } else { "does not hold" }),
        ));
    }
    for &(c, n) in &THREEHALF_FORMS {
        let m = make(c, n, cutoff, mutation)?;
        r.checks.push(symmetry_check(&format!("symmetry-{c}-N{n}"), &m.series));
        let factor = int(144 * num_integer::gcd(n, 4) as i64);
        let holds = first_nonintegral(&m.series, &factor).is_none();
        r.checks.push(Check::info(
            format!("sharp-bound-{c}-N{n}"),
            cutoff,
            format!(
                "144N_4 = {factor}: {}, denominator {}",
                if holds { "holds" } else { "does not hold" },
                lcm_denominator(&m.series)
            ),
        ));
    }
    if square.contains(&2) || nonsquare.is_empty() {
        let s = mock_eta3_series(cutoff)?;
        let holds = s.terms().all(|(_, c)| (c * int(48)).is_integer());
        r.checks.push(Check::info(
            "sharp-bound-eta3-series",
            cutoff,
            format!("48 * series integral: {}", if holds { "holds" } else { "does not hold" }),
        ));
    }
    Ok(r)
}

fn lcm_denominator(f: &VectorQSeries) -> num_bigint::BigInt {
    use num_integer::Integer;
    f.components().iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(&c.coefficient_denominator()))
}

/// Random vector series with integer coefficients in `-bound..=bound`, respecting
/// the exponent classes and the `h <-> -h` symmetry. Exponents run from `lowest`.
pub fn random_vector_series<R: Rng + ?Sized>(
    rng: &mut R,
    n: u64,
    weight: Rational,
    sign: i8,
    rep: Rep,
    lowest: &Rational,
    cutoff: &Rational,
    bound: i64,
) -> Result<VectorQSeries> {
    let modulus = 2 * n as i64;
    let den = 4 * n as i64;
    let eps = if rep == Rep::Rho { 1 } else { -1 };
    let mut comps = vec![RationalQSeries::zero(cutoff.clone()); modulus as usize];
    for h in 0..=n as i64 {
        let self_paired = h == 0 || h == n as i64;
        if self_paired && sign == -1 {
            continue;
        }
        let offset = rat(eps * h * h, den);
        let k0 = (lowest - &offset).ceil().to_integer();
        let k1 = (cutoff - &offset).floor().to_integer();
        let (k0, k1) = (i64::try_from(k0).expect("small"), i64::try_from(k1).expect("small"));
        let terms: Vec<(i64, Rational)> = (k0..=k1)
            .map(|k| (eps * h * h + den * k, int(rng.gen_range(-bound..=bound))))
            .collect();
        let c = RationalQSeries::from_terms(den, terms, cutoff.clone());
        comps[((-h).rem_euclid(modulus)) as usize] = c.scale(&int(sign as i64));
        comps[h as usize] = c;
    }
    VectorQSeries::new(n, weight, sign, rep, comps)
}

const HECKE_SEED: u64 = 0x6d6f636b;

/// Identities, commutation and involution laws for the index-changing operators.
pub fn verify_hecke(cutoff: &Rational) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("hecke");
    let mut rng = StdRng::seed_from_u64(HECKE_SEED);
    let shapes = [
        (1, rat(1, 2), -1, Rep::Conjugate),
        (2, rat(3, 2), 1, Rep::Rho),
        (3, rat(3, 2), 1, Rep::Conjugate),
        (2, rat(1, 2), -1, Rep::Rho),
    ];
    let lowest = int(-1).max(-cutoff.clone());
    let samples = shapes
        .iter()
        .map(|(n, w, s, rep)| random_vector_series(&mut rng, *n, w.clone(), *s, *rep, &lowest, cutoff, 5))
        .collect::<Result<Vec<_>>>()?;

    let mut ids = (true, true, true, true);
    for f in &samples {
        ids.0 &= u_operator(f, 1)? == *f;
        ids.1 &= v_operator(f, 1)? == *f;
        ids.2 &= script_v(f, 1, 2)? == *f;
        ids.3 &= w_involution(f, 1)? == f.scale(&int(f.sign() as i64));
    }
    r.checks.push(Check::new("u1-identity", cutoff, ids.0, None));
    r.checks.push(Check::new("v1-identity", cutoff, ids.1, None));
    r.checks.push(Check::new("script-v1-identity", cutoff, ids.2, None));
    r.checks.push(Check::new("w1-is-sign", cutoff, ids.3, None));

    for d in [2u64, 3] {
        for e in [2u64, 3] {
            let mut check = None;
            for f in &samples {
                let a = u_operator(&v_operator(f, e)?, d)?;
                let b = v_operator(&u_operator(f, d)?, e)?;
                let c = compare_vectors(&format!("u{d}-v{e}-commute"), &a, &b, a.cutoff())?;
                if check.is_none() || !c.passed() {
                    let failed = !c.passed();
                    check = Some(c);
                    if failed {
                        break;
                    }
                }
            }
            r.checks.push(check.expect("samples nonempty"));
        }
    }

    let level6 = random_vector_series(&mut rng, 6, rat(1, 2), -1, Rep::Conjugate, &lowest, cutoff, 5)?;
    for c in [1u64, 2, 3, 6] {
        let twice = w_involution(&w_involution(&level6, c)?, c)?;
        r.checks.push(compare_vectors(&format!("w{c}-involution-level6"), &twice, &level6, cutoff)?);
    }
    let perm = w_permutation(6, 3)?;
    let swaps = [(1, 7), (3, 9), (5, 11)];
    let ok = swaps.iter().all(|&(a, b)| perm[a] == b as u64 && perm[b] == a as u64)
        && [0usize, 2, 4, 6, 8, 10].iter().all(|&h| perm[h] == h as u64);
    r.checks.push(Check::new("w3-level6-permutation", cutoff, ok, None).with_note(format!("{perm:?}")));

    let mut integral = true;
    let mut symmetric = true;
    for f in &samples {
        for g in [u_operator(f, 2)?, v_operator(f, 2)?, v_operator(f, 3)?, script_v(f, 4, 1)?] {
            integral &= g.components().iter().all(RationalQSeries::is_integral);
            symmetric &= g.symmetry_violation().is_none();
        }
    }
    r.checks.push(Check::new("integrality-preserved", cutoff, integral, None));
    r.checks.push(Check::new("symmetry-preserved", cutoff, symmetric, None));

    let f = &samples[1];
    let expected = v_operator(f, 4)?.sub(&u_operator(f, 2)?.scale(&int(2)).truncate(&(cutoff / int(4)))?)?;
    r.checks.push(compare_vectors("script-v4-expansion", &script_v(f, 4, 1)?, &expected, &(cutoff / int(4)))?);

    let v = v_operator(&theta(1, 1, cutoff)?, 2)?;
    let ok = v.level() == 2 && v.components().iter().all(RationalQSeries::is_integral);
    r.checks.push(Check::new("v2-theta1-level2-integral", v.cutoff(), ok, None));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Eta,
    Hurwitz,
    Ramanujan,
    MockEta3,
    Denominators,
    Hecke,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Eta, Suite::Hurwitz, Suite::Ramanujan, Suite::MockEta3, Suite::Denominators, Suite::Hecke];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eta => "eta",
            Suite::Hurwitz => "hurwitz",
            Suite::Ramanujan => "ramanujan",
            Suite::MockEta3 => "mocketa3",
            Suite::Denominators => "denominators",
            Suite::Hecke => "hecke",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s}")))
    }
}

fn run_one(suite: Suite, cutoff: &Rational, mutation: Option<&Mutation>) -> Result<VerificationReport> {
    match suite {
        Suite::Eta => verify_eta(cutoff),
        Suite::Hurwitz => verify_hurwitz_with(cutoff, &phi6, &phi2, mutation),
        Suite::Ramanujan => verify_ramanujan_f_with(cutoff, mutation),
        Suite::MockEta3 => verify_mock_eta3_with(cutoff, mutation),
        Suite::Denominators => verify_denominator_bounds_with(&SQUARE_LEVELS, &NONSQUARE_LEVELS, cutoff, mutation),
        Suite::Hecke => verify_hecke(cutoff),
        Suite::All => unreachable!("expanded by run_suite_with"),
    }
}

pub fn run_suite(suite: Suite, cutoff: &Rational) -> Result<Vec<VerificationReport>> {
    run_suite_with(suite, cutoff, None)
}

pub fn run_suite_with(suite: Suite, cutoff: &Rational, mutation: Option<&Mutation>) -> Result<Vec<VerificationReport>> {
    if cutoff < &Rational::zero() {
        return Err(Error::InvalidParameter(format!("cutoff must be nonnegative, got {cutoff}")));
    }
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, cutoff, mutation)).collect(),
        s => Ok(vec![run_one(s, cutoff, mutation)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_series_equal_examples() {
        let c = int(30);
        let e = eta(&c).unwrap();
        assert!(check_series_equal(&e, &pentagonal_eta(&c), &c).unwrap().passed());
        let tail = RationalQSeries::monomial(int(1), int(50), int(60));
        let longer = eta(&int(60)).unwrap().add(&tail);
        assert!(check_series_equal(&e, &longer, &c).unwrap().passed());

        let r = check_series_equal(&eta(&int(5)).unwrap(), &eta_power(3, &int(5)).unwrap(), &int(5)).unwrap();
        let w = r.checks[0].witness.clone().unwrap();
        assert_eq!(w.exponent, rat(1, 24));
        assert!(check_series_equal(&e, &e, &int(31)).is_err());
    }

    #[test]
    fn ramanujan_series_printed_values() {
        let f = ramanujan_f(&int(5)).unwrap();
        let o = ramanujan_omega(&int(5)).unwrap();
        for (i, (a, b)) in [(1, 1), (1, 2), (-2, 3), (3, 4), (-3, 6), (3, 8)].into_iter().enumerate() {
            assert_eq!(f.coeff(&int(i as i64)), int(a));
            assert_eq!(o.coeff(&int(i as i64)), int(b));
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn random_series_are_well_formed() {
        let mut rng = StdRng::seed_from_u64(1);
        for (n, s, rep) in [(3, -1, Rep::Conjugate), (4, 1, Rep::Rho)] {
            let f = random_vector_series(&mut rng, n, rat(1, 2), s, rep, &int(-1), &int(4), 3).unwrap();
            assert!(f.symmetry_violation().is_none());
            assert!(f.exponent_class_violation().is_none());
        }
    }
}
