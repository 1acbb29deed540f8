use mockq::arith::{int, kronecker, mobius, periodic_bernoulli, rat, sigma1, Rational};
use mockq::heckeops::{script_v, u_operator, v_operator, w_involution};
use mockq::mockforms::{build, lattice_terms, region_spec, Construction, Tweak};
use mockq::qseries::{RationalQSeries, Rep, VectorQSeries};
use mockq::quadfield::{enumerate_region, enumerate_region_scaled, unit_for, QuadFieldElem, UnitKind};
use mockq::thetaeta::theta;
use mockq::verify::random_vector_series;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn series(den: i64, lo: i64, cutoff: i64) -> impl Strategy<Value = RationalQSeries> {
    prop::collection::vec((lo..cutoff * den, -6i64..=6, 1i64..=3), 0..8).prop_map(move |ts| {
        RationalQSeries::from_terms(den, ts.into_iter().map(|(e, n, d)| (e, rat(n, d))), int(cutoff))
    })
}

fn invertible(den: i64) -> impl Strategy<Value = RationalQSeries> {
    (series(den, 1, 6), 1i64..=5, -3i64..=3, 1i64..=4).prop_map(move |(tail, n, shift, d)| {
        let lead = RationalQSeries::monomial(rat(n, d), int(0), int(6));
        lead.add(&tail).shift(&rat(shift, den))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..50).prop_map(|(n, d)| rat(n, d))
}

fn quad(d: i64) -> impl Strategy<Value = QuadFieldElem> {
    (rational(), rational()).prop_map(move |(a, b)| QuadFieldElem::new(d, a, b).unwrap())
}

fn is_prime(p: i64) -> bool {
    p > 1 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series(4, -2, 5), b in series(2, 0, 5), c in series(4, -1, 5)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let cut = lhs.cutoff().clone().min(rhs.cutoff().clone());
        prop_assert_eq!(lhs.truncate(&cut).unwrap(), rhs.truncate(&cut).unwrap());
    }

    #[test]
    fn inverse_is_exact(a in invertible(3)) {
        let p = a.mul(&a.invert().unwrap());
        prop_assert_eq!(p.clone(), RationalQSeries::one(p.cutoff().clone()));
    }

    #[test]
    fn larger_cutoff_keeps_coefficients(a in invertible(2), extra in 1i64..4) {
        let big = a.invert().unwrap();
        let small = a.truncate(&(a.cutoff() - int(extra))).unwrap().invert().unwrap();
        prop_assert!(small.cutoff() <= big.cutoff());
        prop_assert_eq!(big.first_difference(&small, small.cutoff()), None);
    }

    #[test]
    fn kronecker_is_multiplicative(a in -60i64..60, m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn bernoulli_is_periodic(x in rational(), k in 1u32..=3) {
        prop_assert_eq!(periodic_bernoulli(k, &(&x + int(1))).unwrap(), periodic_bernoulli(k, &x).unwrap());
    }

    #[test]
    fn bernoulli_distribution(m in 1i64..30, x in (1i64..100, 2i64..101)) {
        // sum_b B1((x + b)/M) = B1(x) away from the jump at the integers.
        let x = rat(x.0, x.1);
        prop_assume!(!(&x * int(m)).is_integer());
        let total: Rational = (0..m)
            .map(|b| periodic_bernoulli(1, &((&x + int(b)) / int(m))).unwrap())
            .sum();
        prop_assert_eq!(total, periodic_bernoulli(1, &x).unwrap());
    }

    #[test]
    fn norm_and_trace(x in quad(6), y in quad(6)) {
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.add(&y).trace(), x.trace() + y.trace());
    }

    #[test]
    fn hecke_commute_and_preserve(seed in any::<u64>(), d in 1u64..=4, e in 1u64..=4, shape in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n, w, s, rep) = [
            (1, rat(1, 2), -1, Rep::Conjugate),
            (2, rat(3, 2), 1, Rep::Rho),
            (3, rat(1, 2), -1, Rep::Rho),
            (2, rat(3, 2), 1, Rep::Conjugate),
        ][shape].clone();
        let f = random_vector_series(&mut rng, n, w, s, rep, &int(-1), &int(6), 4).unwrap();
        let a = u_operator(&v_operator(&f, e).unwrap(), d).unwrap();
        let b = v_operator(&u_operator(&f, d).unwrap(), e).unwrap();
        prop_assert_eq!(&a, &b);
        for g in [a, script_v(&f, d * e, 2).unwrap()] {
            prop_assert!(g.components().iter().all(RationalQSeries::is_integral));
            prop_assert!(g.symmetry_violation().is_none());
            prop_assert!(g.exponent_class_violation().is_none());
        }
    }

    #[test]
    fn w_involution_laws(seed in any::<u64>(), pick in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_vector_series(&mut rng, 6, rat(1, 2), -1, Rep::Conjugate, &int(-1), &int(4), 4).unwrap();
        let c = [1u64, 2, 3, 6][pick];
        let w = w_involution(&f, c).unwrap();
        prop_assert_eq!(w_involution(&w, c).unwrap(), f.clone());
        prop_assert!(w.symmetry_violation().is_none());
        prop_assert!(w.exponent_class_violation().is_none());
        // W_c commutes with U_d for d coprime to the level.
        let lhs = u_operator(&w, 5).unwrap();
        let rhs = w_involution(&u_operator(&f, 5).unwrap(), c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn kronecker_zero_sets() {
    for n in -100i64..=100 {
        assert_eq!(kronecker(-4, n) == 0, n % 2 == 0, "(-4/{n})");
        let g = num_integer::gcd(n, 12);
        assert_eq!(kronecker(12, n) == 0, g > 1, "(12/{n})");
    }
}

#[test]
fn bernoulli_one_sums_over_a_period() {
    // B1(0) = -1/2, so a full period sums to -1/2 and the interior points to 0.
    for m in 1..=50 {
        let s0: Rational = (0..m).map(|b| periodic_bernoulli(1, &rat(b, m)).unwrap()).sum();
        let s1: Rational = (1..=m).map(|b| periodic_bernoulli(1, &rat(b, m)).unwrap()).sum();
        assert_eq!(s0, rat(-1, 2));
        assert_eq!(s1, rat(-1, 2));
        let mid: Rational = (1..m).map(|b| periodic_bernoulli(1, &rat(b, m)).unwrap()).sum();
        assert_eq!(mid, int(0));
    }
}

#[test]
fn sigma_at_primes() {
    for p in (2..=100).filter(|&p| is_prime(p)) {
        assert_eq!(sigma1(p).unwrap(), int(p + 1));
        assert_eq!(mobius(p).unwrap(), -1);
    }
}

#[test]
fn hecke_identities() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=4 {
        let f = random_vector_series(&mut rng, n, rat(3, 2), 1, Rep::Rho, &int(0), &int(5), 3).unwrap();
        assert_eq!(u_operator(&f, 1).unwrap(), f);
        assert_eq!(v_operator(&f, 1).unwrap(), f);
        for m in 1..4 {
            assert_eq!(script_v(&f, 1, m).unwrap(), f);
        }
        for p in [2, 3, 5] {
            assert_eq!(script_v(&f, p, 1).unwrap(), v_operator(&f, p).unwrap());
        }
        assert_eq!(w_involution(&f, 1).unwrap(), f);
    }
    assert!(w_involution(&theta(12, 0, &int(2)).unwrap(), 2).is_err());
}

/// Every applicable construction for N <= 8 has the declared symmetry and exponent classes.
#[test]
fn constructions_are_symmetric() {
    for c in Construction::ALL {
        for n in 1..=8 {
            if !c.applies(n) {
                continue;
            }
            let m = build(c, n, &int(2), &Tweak::default()).unwrap();
            let f: &VectorQSeries = &m.series;
            let expected = if c.weight() == rat(1, 2) { -1 } else { 1 };
            assert_eq!(f.sign(), expected);
            assert_eq!(f.symmetry_violation(), None, "{c} N = {n}");
            assert_eq!(f.exponent_class_violation(), None, "{c} N = {n}");
        }
    }
}

#[test]
fn region_is_sound_and_stable() {
    for (c, n) in [
        (Construction::P51NonSquare, 1u64),
        (Construction::P51NonSquare, 3),
        (Construction::P51NonSquare, 6),
        (Construction::P61NonSquare, 1),
        (Construction::P61NonSquare, 2),
        (Construction::P62NonSquare, 1),
        (Construction::P62NonSquare, 3),
    ] {
        let (_, unit) = lattice_terms(c, n, &int(1)).unwrap();
        let spec = region_spec(c, n, &unit.unwrap());
        let cutoff = int(4);
        let pairs = enumerate_region(&spec, &cutoff);
        assert!(!pairs.is_empty());
        for &(x, y) in &pairs {
            assert!(spec.contains(x, y), "{c} N = {n}: ({x}, {y})");
            assert!(spec.exponent(x, y) <= cutoff);
        }
        assert_eq!(enumerate_region_scaled(&spec, &cutoff, 2), pairs, "{c} N = {n}");
    }
}

#[test]
fn units_are_minimal() {
    for n in 1..=10 {
        for kind in [UnitKind::WeightHalf, UnitKind::ThreeHalf, UnitKind::ThreeHalfAlt] {
            if num_integer::Roots::sqrt(&kind.radicand(n)).pow(2) == kind.radicand(n) {
                continue;
            }
            let u = unit_for(n, kind).unwrap();
            assert_eq!(u.unit.norm(), int(1));
            assert!(u.unit.is_totally_positive());
            let mut p = u.fundamental.clone();
            for _ in 1..u.power {
                assert!(!mockq::UnitSpec::satisfies(&p, u.modulus));
                p = p.mul(&u.fundamental);
            }
            assert_eq!(p, u.unit);
        }
    }
}
