use proptest::prelude::*;
use qmk_core::quiver::{euler_form, normalize, theta_pairing};
use qmk_core::smoothness::{classify, pairwise_test, ClassifyOptions, PairwiseOutcome};
use qmk_core::stability::stable_exists;
use qmk_core::{DimVector, ExceptionRule, Int};

// Independent oracle: sum over vertices minus one arrow per (left, right) pair.
fn chi_oracle(a: &DimVector, b: &DimVector) -> Int {
    let mut acc: Int = 0;
    for (x, y) in a.left.iter().zip(&b.left) {
        acc += Int::from(*x) * Int::from(*y);
    }
    for (x, y) in a.right.iter().zip(&b.right) {
        acc += Int::from(*x) * Int::from(*y);
    }
    for x in &a.left {
        for y in &b.right {
            acc -= Int::from(*x) * Int::from(*y);
        }
    }
    acc
}

fn composition(n: u32, parts: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=n, parts - 1).prop_map(move |mut cuts| {
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(n - prev);
        out
    })
}

fn balanced(max_side: usize, max_n: u32) -> impl Strategy<Value = DimVector> {
    (1..=max_side, 1..=max_side, 1..=max_n).prop_flat_map(|(p, q, n)| {
        (composition(n, p), composition(n, q)).prop_map(|(l, r)| DimVector::new(l, r))
    })
}

fn shaped(p: usize, q: usize) -> impl Strategy<Value = DimVector> {
    (
        prop::collection::vec(0u32..6, p),
        prop::collection::vec(0u32..6, q),
    )
        .prop_map(|(l, r)| DimVector::new(l, r))
}

fn shaped_triple() -> impl Strategy<Value = (DimVector, DimVector, DimVector)> {
    (1usize..4, 1usize..4).prop_flat_map(|(p, q)| (shaped(p, q), shaped(p, q), shaped(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_form_matches_oracle((a, b, _) in shaped_triple()) {
        prop_assert_eq!(euler_form(&a, &b).unwrap(), chi_oracle(&a, &b));
    }

    #[test]
    fn euler_form_is_bilinear((a, b, c) in shaped_triple()) {
        let ab = a.add(&b).unwrap();
        prop_assert_eq!(
            euler_form(&ab, &c).unwrap(),
            euler_form(&a, &c).unwrap() + euler_form(&b, &c).unwrap()
        );
        prop_assert_eq!(
            euler_form(&c, &ab).unwrap(),
            euler_form(&c, &a).unwrap() + euler_form(&c, &b).unwrap()
        );
    }

    #[test]
    fn normalize_is_idempotent(a in balanced(4, 8)) {
        let n = normalize(&a);
        prop_assert_eq!(normalize(&n), n.clone());
        prop_assert_eq!(normalize(&a.swapped()), n.clone());
        prop_assert_eq!(theta_pairing(&n), 0);
        prop_assert_eq!(euler_form(&n, &n).unwrap(), chi_oracle(&a, &a));
    }

    #[test]
    fn stable_existence_ignores_presentation(a in balanced(4, 8)) {
        for rule in [ExceptionRule::Corrected, ExceptionRule::Literal] {
            prop_assert_eq!(
                stable_exists(&a, rule).unwrap().has_stables(),
                stable_exists(&normalize(&a), rule).unwrap().has_stables()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_ignores_presentation(a in balanced(3, 6)) {
        let opts = ClassifyOptions::default();
        let v = classify(&a, opts).unwrap();
        let w = classify(&normalize(&a), opts).unwrap();
        prop_assert_eq!(v.kind.name(), w.kind.name());
        prop_assert_eq!(v.kind.dim(), w.kind.dim());
    }

    #[test]
    fn certificates_replay(a in balanced(3, 6), strict in any::<bool>()) {
        let rule = ExceptionRule::from_strict(strict);
        let opts = ClassifyOptions { rule, ..Default::default() };
        let v = classify(&a, opts).unwrap();
        if let Some(c) = v.kind.certificate() {
            prop_assert!(c.replay(rule));
        }
    }

    #[test]
    fn pairwise_failures_rederive(a in balanced(3, 7)) {
        let rule = ExceptionRule::Corrected;
        if !stable_exists(&a, rule).unwrap().has_stables() {
            return Ok(());
        }
        if let PairwiseOutcome::Fail { beta, gamma, k } = pairwise_test(&a, rule).unwrap() {
            prop_assert_eq!(beta.add(&gamma).unwrap(), a.clone());
            prop_assert_eq!(Int::from(k), -chi_oracle(&beta, &gamma));
            prop_assert_eq!(Int::from(k), -chi_oracle(&gamma, &beta));
            prop_assert!(k >= 2);
            prop_assert!(stable_exists(&beta, rule).unwrap().has_stables());
            prop_assert!(stable_exists(&gamma, rule).unwrap().has_stables());
        }
    }
}
