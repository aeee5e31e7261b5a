//! Certificates and conjectural counts checked against oracle measurements.

use fatpoint_core::criteria::{
    discharge, head_tail_criterion, leading_pair_criterion, ninefold_simple_tail, uniform_criterion,
};
use fatpoint_core::divisor::{conjectural_h0, DivisorClass};
use fatpoint_core::oracle::{
    alpha_actual, generator_counts, generic_betti, generic_hilbert, hilbert_actual, random_points,
    OracleSettings,
};
use fatpoint_core::{expected_alpha, expected_hilbert, predicted_resolution, MultiplicityVector};
use proptest::prelude::*;

fn settings() -> OracleSettings {
    OracleSettings::default().with_seed(1)
}

#[test]
fn fired_uniform_certificates_hold() {
    let s = settings();
    let mut fired = 0;
    for n in 10..=26 {
        for m in 1..=5 {
            let c = uniform_criterion(n, m).unwrap();
            let v = MultiplicityVector::uniform(n, m).unwrap();
            let c = if c.is_rank_minimal() { c } else { leading_pair_criterion(&v) };
            if !c.is_rank_minimal() {
                continue;
            }
            let verdicts = discharge(&c, &s).unwrap();
            if !verdicts.iter().all(|(_, d)| d.holds) {
                continue;
            }
            fired += 1;
            let b = generic_betti(&v, &s).unwrap();
            assert!(b.table.matches(&predicted_resolution(&v)), "{c}: measured {}", b.table);
        }
    }
    assert!(fired > 20, "only {fired} certificates fired");
}

#[test]
fn head_tail_certificates_hold() {
    let s = settings();
    for (m, r, tail) in [(4u32, 10usize, vec![2u32]), (4, 10, vec![1, 1]), (5, 10, vec![1]), (1, 12, vec![1])] {
        let c = head_tail_criterion(m, r, &tail).unwrap();
        if !c.is_rank_minimal() {
            continue;
        }
        assert!(discharge(&c, &s).unwrap().iter().all(|(_, d)| d.holds), "{c}");
        let b = generic_betti(&c.subject, &s).unwrap();
        assert!(b.table.matches(&predicted_resolution(&c.subject)), "{c}: {}", b.table);
    }
}

#[test]
fn ninefold_windows_hold_unconditionally() {
    let s = settings();
    for m in 1..=3 {
        for t in 0..=2 {
            for c in ninefold_simple_tail(m, t).unwrap().certificates {
                assert!(c.assumptions.is_empty());
                let b = generic_betti(&c.subject, &s).unwrap();
                assert!(b.table.matches(&predicted_resolution(&c.subject)), "{c}: {}", b.table);
            }
        }
    }
}

#[test]
fn unrefuted_by_threshold_minus_one() {
    // The uniform criterion stays silent just below its thresholds even
    // where the ideal is in fact rank minimal.
    assert!(!uniform_criterion(25, 1).unwrap().is_rank_minimal());
    assert!(!uniform_criterion(10, 2).unwrap().is_rank_minimal());
    let v = MultiplicityVector::uniform(10, 2).unwrap();
    let b = generic_betti(&v, &settings()).unwrap();
    assert!(b.table.matches(&predicted_resolution(&v)));
}

#[test]
fn oracle_examples() {
    let s16 = random_points(16, 31991, 1).unwrap();
    let one = MultiplicityVector::uniform(16, 1).unwrap();
    assert_eq!(alpha_actual(&s16, &one).unwrap(), 5);
    let gens = generator_counts(&s16, &one, 5..=7).unwrap();
    assert_eq!(gens.into_iter().collect::<Vec<_>>(), [(5, 5), (6, 0), (7, 0)]);

    let s10 = random_points(10, 31991, 1).unwrap();
    let two = MultiplicityVector::uniform(10, 2).unwrap();
    assert_eq!(hilbert_actual(&s10, &two, 7).unwrap(), 6);
    let gens = generator_counts(&s10, &two, 7..=8).unwrap();
    assert_eq!(gens.into_iter().collect::<Vec<_>>(), [(7, 6), (8, 0)]);
}

fn small_vector(max_len: usize, max_entry: u32) -> impl Strategy<Value = MultiplicityVector> {
    prop::collection::vec(0..=max_entry, 1..=max_len).prop_map(|e| MultiplicityVector::new(e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjecture_is_exact_up_to_nine_points(v in small_vector(9, 4), seed in 0u64..1000) {
        let s = OracleSettings::default().with_seed(seed);
        let top = expected_alpha(&v) + 3;
        let g = generic_hilbert(&v, 0..=top, &s).unwrap();
        for (&t, &h) in &g.table.values {
            prop_assert_eq!(conjectural_h0(&DivisorClass::from_mults(t, &v)), h, "t = {}", t);
        }
    }

    #[test]
    fn measured_dominates_expected(v in small_vector(12, 3), seed in 0u64..1000) {
        let cfg = random_points(v.len(), 31991, seed).unwrap();
        let alpha = alpha_actual(&cfg, &v).unwrap();
        let mut prev = None;
        for t in 0..=expected_alpha(&v) + 3 {
            let h = hilbert_actual(&cfg, &v, t).unwrap();
            prop_assert!(h >= expected_hilbert(&v, t));
            if let Some(p) = prev {
                // Multiplication by a linear form missing every point is injective.
                prop_assert!(h >= p);
                if p > 0 {
                    prop_assert!(h > p);
                }
            }
            prev = Some(h);
        }
        let gens = generator_counts(&cfg, &v, alpha..=alpha).unwrap();
        prop_assert_eq!(gens[&alpha], hilbert_actual(&cfg, &v, alpha).unwrap());
    }
}
