//! Values checked against independent computations done here, and printed
//! coefficients checked literally.

use mockq::arith::{divisors, int, kronecker, periodic_bernoulli, rat, sigma1, Rational};
use mockq::heckeops::{script_v, u_operator, v_operator};
use mockq::mockforms::{
    hurwitz_ideal_series, mock_theta_weight_half, mock_theta_weight_half_alt, mock_theta_weight_threehalf,
    mock_theta_weight_threehalf_alt, square_lattice_pairs, Construction, IdealRing,
};
use mockq::qseries::{RationalQSeries, Rep, VectorQSeries};
use mockq::quadfield::{unit_for, unit_with_congruences, QuadFieldElem, UnitKind};
use mockq::thetaeta::{eisenstein_e2, eta, eta_power, hurwitz_class_number, theta};
use mockq::verify::{mock_eta3_series, pentagonal_eta, ramanujan_f, ramanujan_omega, random_vector_series};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn brute_sigma(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// Euler's criterion for odd primes.
fn legendre(a: i64, p: i64) -> i32 {
    let mut r = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[test]
fn kronecker_agrees_with_euler_criterion() {
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for a in [-4, 12, 2, 3, 5, -3, 7] {
            assert_eq!(kronecker(a, p), legendre(a, p), "({a}/{p})");
        }
    }
    assert_eq!(kronecker(-4, 1), 1);
    assert_eq!(kronecker(-4, 3), -1);
    assert_eq!(kronecker(12, 11), 1);
}

#[test]
fn sigma_and_bernoulli_values() {
    assert_eq!(sigma1(0).unwrap(), rat(-1, 24));
    assert_eq!(sigma1(1).unwrap(), int(1));
    for n in 1..60 {
        assert_eq!(sigma1(n).unwrap(), int(brute_sigma(n)));
    }
    assert!(sigma1(-1).is_err());
    assert_eq!(periodic_bernoulli(1, &rat(1, 2)).unwrap(), int(0));
    assert_eq!(periodic_bernoulli(2, &int(0)).unwrap(), rat(1, 6));
    assert_eq!(periodic_bernoulli(1, &rat(5, 4)).unwrap(), rat(-1, 4));
    assert!(periodic_bernoulli(4, &int(0)).is_err());
}

#[test]
fn theta_level_one_by_direct_summation() {
    let t = theta(1, 0, &int(10)).unwrap();
    let mut want = RationalQSeries::zero(int(10));
    for n in -10i64..=10 {
        if n % 2 == 0 && n * n <= 40 {
            want = want.add(&RationalQSeries::monomial(int(1), rat(n * n, 4), int(10)));
        }
    }
    assert_eq!(t.component(0), &want);
}

#[test]
fn eta_cube_is_theta_two_one() {
    let t = theta(2, 1, &int(8)).unwrap();
    let c1 = t.component(1);
    for (e, v) in [(rat(1, 8), 1), (rat(9, 8), -3), (rat(25, 8), 5), (rat(49, 8), -7)] {
        assert_eq!(c1.coeff(&e), int(v));
    }
    assert_eq!(eta_power(3, &int(8)).unwrap(), *c1);
}

#[test]
fn eta_against_pentagonal_numbers() {
    assert_eq!(eta(&int(40)).unwrap(), pentagonal_eta(&int(40)));
    let one = eta_power(-1, &int(6)).unwrap().mul(&eta(&int(6)).unwrap());
    assert_eq!(one, RationalQSeries::one(one.cutoff().clone()));
}

#[test]
fn eisenstein_e2_by_divisor_sums() {
    let e2 = eisenstein_e2(&int(20)).unwrap();
    for n in 1..=20 {
        assert_eq!(e2.coeff(&int(n)), int(-24 * brute_sigma(n)));
    }
}

/// `sum_t H(4n - t^2) = 2 sigma(n) - sum_{d | n} min(d, n/d)`.
#[test]
fn class_numbers_satisfy_kronecker_hurwitz_relation() {
    for n in 1..40i64 {
        let mut lhs = Rational::from_integer(0.into());
        let mut t = -2 * n;
        while t <= 2 * n {
            if 4 * n - t * t >= 0 {
                lhs += hurwitz_class_number(4 * n - t * t).unwrap();
            }
            t += 1;
        }
        let mins: i64 = divisors(n as u64).iter().map(|&d| (d as i64).min(n / d as i64)).sum();
        assert_eq!(lhs, int(2 * brute_sigma(n) - mins), "n = {n}");
    }
    assert_eq!(hurwitz_class_number(0).unwrap(), rat(-1, 12));
    assert_eq!(hurwitz_class_number(3).unwrap(), rat(1, 3));
    assert_eq!(hurwitz_class_number(4).unwrap(), rat(1, 2));
    assert_eq!(hurwitz_class_number(7).unwrap(), int(1));
}

#[test]
fn ideal_sums_give_class_numbers() {
    let s6 = hurwitz_ideal_series(IdealRing::Sqrt6, &int(4)).unwrap();
    assert_eq!(s6.coeff(&int(0)), rat(-1, 12));
    assert_eq!(s6.coeff(&int(3)), rat(1, 3));
    let s2 = hurwitz_ideal_series(IdealRing::Sqrt2, &int(4)).unwrap();
    assert_eq!(s2.coeff(&int(4)), rat(1, 2));
}

#[test]
fn printed_eta3_quotient() {
    let s = mock_eta3_series(&int(3)).unwrap();
    for (i, c) in [-1, 45, 231, 770].into_iter().enumerate() {
        assert_eq!(s.coeff(&(rat(-1, 8) + int(i as i64))), rat(-c, 24));
    }
}

#[test]
fn weight_half_level_two_is_twice_the_eta3_quotient() {
    let m = mock_theta_weight_half(2, &int(4)).unwrap();
    assert_eq!(m.construction, Construction::P51Square);
    assert_eq!(m.series.component(1), &mock_eta3_series(&int(4)).unwrap().scale(&int(2)));
    assert!(m.series.component(0).is_zero());
}

#[test]
fn ramanujan_f_from_both_level_six_forms() {
    let cut = rat(119, 24);
    let want = ramanujan_f(&int(5)).unwrap().shift(&rat(-1, 24)).truncate_at_most(&cut);
    for m in [mock_theta_weight_half(6, &cut).unwrap(), mock_theta_weight_half_alt(6, &cut).unwrap()] {
        let combo = m.series.component(1).add(m.series.component(7)).scale(&int(2));
        assert_eq!(combo, want, "{}", m.construction);
    }
    let f = ramanujan_f(&int(5)).unwrap();
    let w = ramanujan_omega(&int(5)).unwrap();
    let fs: Vec<_> = (0..6).map(|i| f.coeff(&int(i))).collect();
    let ws: Vec<_> = (0..6).map(|i| w.coeff(&int(i))).collect();
    assert_eq!(fs, [1, 1, -2, 3, -3, 3].map(int));
    assert_eq!(ws, [1, 2, 3, 4, 6, 8].map(int));
}

#[test]
fn level_six_unit_metadata() {
    let m = mock_theta_weight_half(6, &int(1)).unwrap();
    let u = m.unit.unwrap();
    assert_eq!(u.unit.to_string(), "97+28√12");
    assert_eq!(u.power, 4);
}

#[test]
fn units_by_power_iteration() {
    // Powers of the fundamental unit, first one meeting the congruences.
    for (n, kind, radicand, modulus) in [
        (6, UnitKind::WeightHalf, 12, 12),
        (1, UnitKind::ThreeHalf, 6, 12),
        (1, UnitKind::ThreeHalfAlt, 2, 4),
        (3, UnitKind::WeightHalf, 6, 12),
        (5, UnitKind::WeightHalf, 10, 20),
    ] {
        let spec = unit_for(n, kind).unwrap();
        assert_eq!((spec.radicand, spec.modulus), (radicand, modulus));
        let mut p = spec.fundamental.clone();
        let mut k = 1;
        while !(p.is_integral_basis() && {
            let a = p.a().to_integer();
            let b = p.b().to_integer();
            &b % 2 == 0.into() && (a - 1) % modulus == 0.into()
        }) {
            p = p.mul(&spec.fundamental);
            k += 1;
        }
        assert_eq!(p, spec.unit, "N = {n}");
        assert_eq!(k, spec.power);
    }
    assert_eq!(unit_for(1, UnitKind::ThreeHalfAlt).unwrap().unit, QuadFieldElem::from_ints(2, 17, 12).unwrap());
    assert_eq!(unit_for(1, UnitKind::ThreeHalf).unwrap().unit, QuadFieldElem::from_ints(6, 49, 20).unwrap());
    assert!(unit_with_congruences(2, 4, 4).is_err());
}

#[test]
fn square_pairs_by_rectangle_scan() {
    for (c, n) in [(Construction::P51Square, 2u64), (Construction::P62Square, 8), (Construction::P61Square, 6)] {
        let cutoff = int(6);
        let k = if matches!(c, Construction::P61Square) { 6 } else { 2 };
        let mut want = Vec::new();
        for x in -300i64..=300 {
            for y in 1..300i64 {
                let ni = n as i64;
                if ni * y * y > k * x * x && rat(y * y, 4 * k) - rat(x * x, 4 * ni) <= cutoff {
                    want.push((x, y));
                }
            }
        }
        want.sort_unstable();
        assert_eq!(square_lattice_pairs(c, n, &cutoff).unwrap(), want, "{c} N = {n}");
    }
}

#[test]
fn weight_three_half_symmetry_and_boundary() {
    let m = mock_theta_weight_threehalf(6, &int(2)).unwrap();
    assert_eq!(m.construction, Construction::P61Square);
    assert!(m.series.symmetry_violation().is_none());
    let m = mock_theta_weight_threehalf_alt(2, &int(2)).unwrap();
    assert_eq!(m.construction, Construction::P62Square);
    assert!(m.series.symmetry_violation().is_none());
    // The boundary constant at N = 2 is (32/3)(B3(1/4) - B3(3/4)).
    let b = (periodic_bernoulli(3, &rat(1, 4)).unwrap() - periodic_bernoulli(3, &rat(3, 4)).unwrap()) * rat(32, 3);
    assert_eq!(b, int(1));
}

#[test]
fn u_operator_pushes_theta_components() {
    let t = theta(1, 0, &int(10)).unwrap();
    let u = u_operator(&t, 2).unwrap();
    assert_eq!(u.level(), 4);
    for h in 0..2 {
        assert_eq!(u.component(2 * h), t.component(h));
    }
    for h in [1, 3, 5, 7] {
        assert!(u.component(h).is_zero());
    }
}

/// `V_d` evaluated from the output side: for each output `(h, m)` with
/// `n = m - eps h^2/4Nd` integral, sum `a^{k-1/2} c(h/a, d m/a^2)` over `a | (n, h, d)`.
fn v_by_output_side(f: &VectorQSeries, d: i64) -> Vec<RationalQSeries> {
    let n = f.level() as i64;
    let eps = if f.rep() == Rep::Rho { 1 } else { -1 };
    let shift = (f.weight() - rat(1, 2)).to_integer();
    let shift = u32::try_from(shift).unwrap();
    let cut = f.cutoff() / int(d);
    let den = 4 * n * d;
    let lowest = f.components().iter().filter_map(|c| c.leading_exponent()).min().unwrap_or(int(0));
    let m0 = (lowest * int(den) * int(d)).floor().to_integer();
    let m0 = i64::try_from(m0).unwrap();
    let m1 = i64::try_from((&cut * int(den)).floor().to_integer()).unwrap();
    (0..2 * n * d)
        .map(|h| {
            let mut terms = Vec::new();
            for num in m0..=m1 {
                let m = rat(num, den);
                let nn = &m - rat(eps * h * h, 4 * n * d);
                if !nn.is_integer() {
                    continue;
                }
                let nn = i64::try_from(nn.to_integer()).unwrap();
                let mut total = int(0);
                for a in 1..=d {
                    if d % a == 0 && h % a == 0 && nn % a == 0 {
                        let e = &m * rat(d, a * a);
                        total += f.component(h / a).coeff(&e) * int(a.pow(shift));
                    }
                }
                terms.push((num, total));
            }
            RationalQSeries::from_terms(den, terms, cut.clone())
        })
        .collect()
}

#[test]
fn v_operator_matches_output_side_formula() {
    let mut rng = StdRng::seed_from_u64(7);
    for (n, w, s, rep) in [(2, rat(3, 2), 1, Rep::Rho), (3, rat(1, 2), -1, Rep::Conjugate), (1, rat(3, 2), 1, Rep::Conjugate)] {
        let f = random_vector_series(&mut rng, n, w, s, rep, &int(-1), &int(6), 4).unwrap();
        for d in [2u64, 3, 4, 6] {
            let v = v_operator(&f, d).unwrap();
            let want = v_by_output_side(&f, d as i64);
            for (h, c) in want.iter().enumerate() {
                assert_eq!(v.component(h as i64), c, "N = {n}, d = {d}, h = {h}");
            }
        }
    }
}

#[test]
fn v_operator_on_theta_one() {
    // theta_1(.;1) vanishes because n and -n share a residue mod 2.
    let t = theta(1, 1, &int(10)).unwrap();
    let v = v_operator(&t, 2).unwrap();
    assert_eq!(v.level(), 2);
    assert!(v.components().iter().all(RationalQSeries::is_integral));
    let t = theta(2, 1, &int(10)).unwrap();
    let s = script_v(&t, 4, 1).unwrap();
    let expanded = v_operator(&t, 4).unwrap().sub(&u_operator(&t, 2).unwrap().scale(&int(2)).truncate(s.cutoff()).unwrap());
    assert_eq!(s, expanded.unwrap());
}
