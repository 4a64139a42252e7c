use minmod::characters::PuiseuxSeries;
use minmod::exact::cyc::{cyc_cos, CycNumber};
use minmod::exact::rational::{int, rat, Rational};
use proptest::prelude::*;

const CONDUCTORS: [u64; 4] = [8, 12, 24, 66];

fn cyc(n: u64) -> impl Strategy<Value = CycNumber> {
    prop::collection::vec((0..n as i64, -4i64..=4, 1i64..=3), 0..6).prop_map(move |terms| {
        CycNumber::from_exponents(n, terms.into_iter().map(|(k, a, b)| (k, rat(a, b))))
    })
}

fn with_conductor() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

/// Direct floating evaluation of `Σ c_k ζ_n^k`.
fn eval(terms: &[(i64, i64)], n: u64) -> (f64, f64) {
    terms.iter().fold((0.0, 0.0), |(re, im), &(k, c)| {
        let t = std::f64::consts::TAU * k as f64 / n as f64;
        (re + c as f64 * t.cos(), im + c as f64 * t.sin())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in with_conductor()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn inverse((a, _, _) in with_conductor()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!(a.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn conjugation_is_multiplicative((a, b, _) in with_conductor()) {
        prop_assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
    }

    // Zero detection against floating evaluation: a random element plus a
    // random combination of vanishing sums Σ_j ζ^{a + jn/d}.
    #[test]
    fn zero_detection(
        n in prop::sample::select(CONDUCTORS.to_vec()),
        terms in prop::collection::vec((0i64..66, -5i64..=5), 0..5),
        rels in prop::collection::vec((0i64..66, 0usize..4, -3i64..=3), 0..4),
    ) {
        let mut all: Vec<(i64, i64)> = terms.clone();
        let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
        for &(a, di, c) in &rels {
            let d = divisors[di % divisors.len()];
            for j in 0..d as i64 {
                all.push((a + j * (n / d) as i64, c));
            }
        }
        let x = CycNumber::from_exponents(n, all.iter().map(|&(k, c)| (k, int(c))));
        let y = CycNumber::from_exponents(n, terms.iter().map(|&(k, c)| (k, int(c))));
        prop_assert!(x.sub(&y).unwrap().is_zero());
        let (re, im) = eval(&terms, n);
        prop_assert_eq!(y.is_zero(), re.hypot(im) < 1e-9);
        let ball = y.float_approx(128).unwrap();
        prop_assert!((ball.re.mid_f64() - re).abs() < 1e-9);
        prop_assert!((ball.im.mid_f64() - im).abs() < 1e-9);
    }

    // 2cos(x)cos(y) = cos(x+y) + cos(x-y).
    #[test]
    fn cosine_product(j in -40i64..40, k in -40i64..40, big_n in prop::sample::select(vec![6u64, 12, 33])) {
        let lhs = cyc_cos(j, big_n).mul(&cyc_cos(k, big_n)).unwrap().scale(&int(2));
        let rhs = cyc_cos(j + k, big_n).add(&cyc_cos(j - k, big_n)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_division_round_trip(
        a in prop::collection::vec(-6i64..=6, 1..12),
        mut b in prop::collection::vec(-6i64..=6, 1..12),
        num in -5i64..5,
    ) {
        if b[0] == 0 {
            b[0] = 1;
        }
        let order = 10;
        let sa = PuiseuxSeries::new(rat(num, 24), a.iter().map(|&c| int(c)).collect(), order);
        let sb = PuiseuxSeries::new(rat(1, 3), b.iter().map(|&c| int(c)).collect(), order);
        let quot = sa.div(&sb).unwrap();
        let back = quot.mul(&sb);
        prop_assert!(back.sub(&sa).unwrap().is_zero());
        // Division normalizes away leading zeros, shifting the offset.
        if !sa.is_zero() {
            prop_assert_eq!(back.normalized().offset, sa.normalized().offset);
        }
    }
}

#[test]
fn rational_helpers() {
    let x: Rational = rat(6, 4);
    assert_eq!(x, rat(3, 2));
    assert_eq!(int(3) - x, rat(3, 2));
}
