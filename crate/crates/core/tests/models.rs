use minmod::characters::character;
use minmod::exact::rational::{int, rat};
use minmod::fusion::{fusion_coeff, fusion_targets};
use minmod::invariants::{build_catalog, verify_invariant, CatalogRow, InvariantMatrix};
use minmod::modular_data::{build_t, SMatrixHat};
use minmod::{KacLabel, MinimalModel, Transversal};
use proptest::prelude::*;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn coprime_pair(max: u32) -> impl Strategy<Value = (u32, u32)> {
    (2..=max, 2..=max).prop_filter("coprime", |&(p, q)| p != q && gcd(p, q) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fold_preserves_weight(
        (p, q, r, s) in coprime_pair(13).prop_flat_map(|(p, q)| (Just(p), Just(q), 1..q, 1..p))
    ) {
        let m = MinimalModel::new(p, q).unwrap();
        let a = m.conformal_weight(KacLabel::new(r, s)).unwrap();
        let b = m.conformal_weight(KacLabel::new(q - r, p - s)).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(m.fold(r, s).unwrap(), m.fold(q - r, p - s).unwrap());
    }

    #[test]
    fn transversal_has_expected_size((p, q) in coprime_pair(11)) {
        let m = MinimalModel::new(p, q).unwrap();
        let t = Transversal::new(&m);
        prop_assert_eq!(t.len() as u32, (p - 1) * (q - 1) / 2);
        prop_assert_eq!(t.labels[0], KacLabel::VACUUM);
    }

    // s0·Ŝ is real orthogonal.
    #[test]
    fn s_is_orthogonal((p, q) in coprime_pair(9)) {
        let m = MinimalModel::new(p, q).unwrap();
        let s = SMatrixHat::build(&m).unwrap();
        let d = s.dim();
        let f = s.s_float();
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d).map(|k| f[i * d + k] * f[k * d + j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn characters_start_at_shifted_weight((p, q) in coprime_pair(9)) {
        let m = MinimalModel::new(p, q).unwrap();
        let c24 = m.central_charge() / int(24);
        for &l in &Transversal::new(&m).labels {
            let ch = character(&m, l, 8).unwrap();
            prop_assert_eq!(&ch.offset, &(m.conformal_weight(l).unwrap() - &c24));
            prop_assert_eq!(ch.coeff(0), &int(1));
            prop_assert!(ch.is_nonneg_integral());
        }
    }

    #[test]
    fn fusion_is_symmetric_with_unit((p, q) in coprime_pair(9)) {
        let m = MinimalModel::new(p, q).unwrap();
        let labels = Transversal::new(&m).labels;
        for &a in &labels {
            prop_assert_eq!(fusion_targets(&m, KacLabel::VACUUM, a), vec![a]);
            for &b in &labels {
                for &c in &labels {
                    prop_assert_eq!(fusion_coeff(&m, a, b, c), fusion_coeff(&m, b, a, c));
                }
            }
        }
    }
}

#[test]
fn t_phases_match_weights() {
    let m = MinimalModel::new(7, 4).unwrap();
    let t = build_t(&m).unwrap();
    let tr = Transversal::new(&m);
    for (i, &l) in tr.labels.iter().enumerate() {
        let want = m.conformal_weight(l).unwrap() - m.central_charge() / int(24);
        let diff = t.phase(i) - want;
        assert!(diff.is_integer(), "{l}");
    }
}

#[test]
fn every_applicable_row_is_an_invariant() {
    for (p, q) in [(5, 6), (7, 6), (4, 5), (8, 3), (12, 5), (13, 12)] {
        let m = MinimalModel::new(p, q).unwrap();
        for row in CatalogRow::applicable(&m) {
            let x = build_catalog(&m, row).unwrap();
            let rep = verify_invariant(&x).unwrap();
            assert!(rep.pass(), "{row} at {m}: {:?}", rep.checks);
        }
    }
}

#[test]
fn invariant_json_round_trip() {
    let m = MinimalModel::new(6, 5).unwrap();
    let x = build_catalog(&m, CatalogRow::DPOdd).unwrap();
    let text = serde_json::to_string(&x).unwrap();
    let back: InvariantMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(back, x);
}

#[test]
fn character_json_round_trip() {
    let m = MinimalModel::new(5, 2).unwrap();
    let ch = character(&m, KacLabel::new(1, 2), 10).unwrap();
    let back = serde_json::from_str(&serde_json::to_string(&ch).unwrap()).unwrap();
    assert_eq!(ch, back);
    // h = -1/5, c/24 = -11/60.
    assert_eq!(ch.offset, rat(-1, 60));
}
