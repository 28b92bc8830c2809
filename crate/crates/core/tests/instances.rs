mod common;

use common::{cube_point, q};
use ipskit::instances::{
    default_lifted_beta, default_subset_sum_beta, gadgeted_ry_circuit, lifted_subset_sum, mnc_instance, ry_circuit,
    subset_sum, InstanceBundle, Provenance,
};
use ipskit::VarId;
use num_traits::Zero;

fn never_zero_on_cube(bundle: &InstanceBundle) {
    let f = bundle.instance.expand().unwrap();
    let vars: Vec<VarId> = f.variables().into_iter().collect();
    for mask in 0..1u64 << vars.len() {
        assert!(!f.evaluate(&cube_point(&vars, mask)).unwrap().is_zero());
    }
}

#[test]
fn generated_circuits_are_syntactically_multilinear() {
    for n in 1..=4 {
        assert!(ry_circuit(n).unwrap().is_syntactically_multilinear(), "ry n = {n}");
        let (p, sets) = gadgeted_ry_circuit(n).unwrap();
        assert!(p.is_syntactically_multilinear(), "P n = {n}");
        let mut seen = std::collections::BTreeSet::new();
        for s in &sets {
            for v in s.variables() {
                assert!(seen.insert(v), "{v} in two intervals");
            }
        }
    }
}

#[test]
fn instances_are_unsatisfiable_and_refuted() {
    let mut bundles = vec![mnc_instance(1).unwrap(), mnc_instance(2).unwrap()];
    for n in 1..=8 {
        bundles.push(subset_sum(n, &default_subset_sum_beta(n)).unwrap());
        bundles.push(subset_sum(n, &q(-1)).unwrap());
    }
    for n in 2..=3 {
        bundles.push(lifted_subset_sum(n, &default_lifted_beta(n)).unwrap());
    }
    for b in &bundles {
        never_zero_on_cube(b);
        assert!(b.defect().unwrap().is_zero(), "{}", b.provenance.generator);
    }
}

#[test]
fn satisfiable_targets_are_rejected() {
    for beta in 0..=5 {
        assert!(subset_sum(5, &q(beta)).is_err());
    }
    assert!(lifted_subset_sum(3, &q(2)).is_err());
}

#[test]
fn provenance_serializes() {
    let p = mnc_instance(2).unwrap().provenance;
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<Provenance>(&json).unwrap(), p);
}
