mod common;

use std::collections::BTreeSet;

use common::cube_point;
use ipskit::corpus::{generate, random_formula, CorpusConfig, LeafSet};
use ipskit::gadget::{gadgetize, retrieval_assignment, GadgetLedger};
use ipskit::verify::{boolean_image, poly_image};
use ipskit::VarId;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Measured constant in `size(C') <= K * s * log2(s + 2)`. The worst case
/// over small formulas is a fan-in-3 addition of leaves (31 / (3 log2 5)).
const K: f64 = 5.0;

fn small(leaves: LeafSet) -> CorpusConfig {
    CorpusConfig { count: 1, leaves, max_gates: 20, max_x: 4, max_total_vars: Some(12), ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn size_and_depth_bounds(seed in any::<u64>(), signed in any::<bool>()) {
        let leaves = if signed { LeafSet::SignedUnit } else { LeafSet::ZeroOne };
        let cfg = CorpusConfig { max_total_vars: None, leaves, ..Default::default() };
        let c = random_formula(&mut ChaCha20Rng::seed_from_u64(seed), &cfg);
        let (cp, _) = gadgetize(&c).unwrap();
        let s = c.measure().size as f64;
        prop_assert!(cp.measure().size as f64 <= K * s * (s + 2.0).log2());
        prop_assert!(cp.measure().depth <= 2 * c.measure().depth + 2);
        prop_assert!(cp.is_formula());
    }

    #[test]
    fn fresh_variables_are_disjoint(seed in any::<u64>()) {
        let c = random_formula(&mut ChaCha20Rng::seed_from_u64(seed), &CorpusConfig::default());
        let (cp, ledger) = gadgetize(&c).unwrap();
        let mut seen = BTreeSet::new();
        for e in &ledger.entries {
            prop_assert_eq!(e.vars.len() as u32, e.width + 1);
            for v in &e.vars {
                prop_assert!(seen.insert(*v), "{} reused", v);
            }
        }
        let originals = c.variables();
        prop_assert!(seen.is_disjoint(&originals));
        let all: BTreeSet<VarId> = originals.union(&seen).copied().collect();
        prop_assert!(cp.variables().is_subset(&all));
    }

    #[test]
    fn image_matches_polynomial_oracle(seed in any::<u64>(), signed in any::<bool>()) {
        let leaves = if signed { LeafSet::SignedUnit } else { LeafSet::ZeroOne };
        let c = random_formula(&mut ChaCha20Rng::seed_from_u64(seed), &small(leaves));
        let (cp, _) = gadgetize(&c).unwrap();
        let vars: Vec<VarId> = cp.variables().into_iter().collect();
        let image = boolean_image(&cp, 16, 0, 0);
        prop_assert!(image.exhaustive);
        prop_assert_eq!(image.values(), poly_image(&cp.expand().unwrap(), &vars));
    }

    #[test]
    fn retrieval_recovers_the_formula(seed in any::<u64>()) {
        let c = random_formula(&mut ChaCha20Rng::seed_from_u64(seed), &small(LeafSet::SignedUnit));
        let (cp, ledger) = gadgetize(&c).unwrap();
        let at = retrieval_assignment(&ledger);
        let xs: Vec<VarId> = c.variables().into_iter().collect();
        let retrieved = cp.partial_evaluate(&at);
        for mask in 0..1u64 << xs.len() {
            let pt = cube_point(&xs, mask);
            prop_assert_eq!(retrieved.evaluate(&pt).unwrap(), c.evaluate(&pt).unwrap());
        }
    }
}

#[test]
fn ledger_round_trips() {
    for c in generate(&CorpusConfig { count: 20, ..Default::default() }) {
        let (_, ledger) = gadgetize(&c).unwrap();
        assert_eq!(GadgetLedger::from_json(&ledger.to_json()).unwrap(), ledger);
        assert_eq!(ledger.gate_map.len(), c.len());
    }
}
