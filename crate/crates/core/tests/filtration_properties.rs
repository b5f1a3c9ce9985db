use nygaard_core::analysis::{analyze, AnalysisOptions, GEE_KISIN, THM1, THM1_REFINED};
use nygaard_core::bkcore::{module_equal, BKModule, PolyMat};
use nygaard_core::exactring::{PolyU, Prime};
use proptest::prelude::*;

fn prime_strategy() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u64), Just(3)].prop_map(|p| Prime::new(p).unwrap())
}

fn int_poly() -> impl Strategy<Value = PolyU> {
    prop::collection::vec(-4i64..=4, 0..3).prop_map(|cs| PolyU::from_ints(&cs))
}

/// `[[E^a, c], [0, E^b]]`: every finite-height module of rank two is of this
/// shape up to change of basis.
fn triangular() -> impl Strategy<Value = BKModule> {
    (prime_strategy(), 0u32..4, 0u32..4, int_poly()).prop_map(|(p, a, b, c)| {
        let f = PolyMat::from_rows(vec![
            vec![PolyU::e_power(p, a), c],
            vec![PolyU::zero(), PolyU::e_power(p, b)],
        ]);
        BKModule::new(p, f, None).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn invariants_hold_on_triangular_modules(m in triangular()) {
        let a = analyze(&m, AnalysisOptions::full()).unwrap();
        for c in &a.checks {
            if ![THM1, THM1_REFINED, GEE_KISIN].contains(&c.predicate) {
                prop_assert!(c.holds, "{} failed: {:?}", c.predicate, c.violations);
            }
        }
        let mut sorted = a.e_divisors.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&a.weights.weights, &sorted);
        prop_assert_eq!(a.weights.weights.iter().sum::<u32>(), m.det_exponent());
    }

    #[test]
    fn filtration_is_invariant_under_constant_rescaling(m in triangular(), s in 1i64..4) {
        // Scaling B by a unit of Z_(p) rescales phi but leaves every Fil^i alone.
        let p = m.prime();
        let unit = PolyU::from_ints(&[s * p.get() as i64 + 1]);
        let scaled = BKModule::new(p, m.frobenius().scale(&unit), None).unwrap();
        let a = analyze(&m, AnalysisOptions::minimal()).unwrap();
        let b = analyze(&scaled, AnalysisOptions::minimal()).unwrap();
        prop_assert_eq!(a.filtration.stages.len(), b.filtration.stages.len());
        for (x, y) in a.filtration.stages.iter().zip(&b.filtration.stages) {
            prop_assert!(module_equal(&x.c, &y.c, p).unwrap());
        }
        prop_assert_eq!(a.graded, b.graded);
    }
}
