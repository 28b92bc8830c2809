//! Seeded random formulas and single-site certificate mutations.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId};
use crate::gadget::gadgetize;
use crate::rational::{int, ratio, Rational};
use crate::refute::NullstellensatzCertificate;
use crate::var::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafSet {
    ZeroOne,
    SignedUnit,
}

impl LeafSet {
    fn constants(self) -> &'static [i64] {
        match self {
            LeafSet::ZeroOne => &[0, 1],
            LeafSet::SignedUnit => &[-1, 0, 1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub count: usize,
    pub seed: u64,
    pub leaves: LeafSet,
    /// Bound on the number of gates, leaves included.
    pub max_gates: usize,
    pub max_x: u32,
    pub max_depth: u32,
    /// Bound on `x` plus gadget variables after the transform.
    pub max_total_vars: Option<usize>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 200,
            seed: 0,
            leaves: LeafSet::ZeroOne,
            max_gates: 30,
            max_x: 6,
            max_depth: 6,
            max_total_vars: Some(16),
        }
    }
}

enum Node {
    Leaf(Gate),
    Inner(Vec<Node>),
}

impl Node {
    fn count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Inner(ch) => 1 + ch.iter().map(Node::count).sum::<usize>(),
        }
    }
}

fn random_tree(rng: &mut ChaCha20Rng, cfg: &CorpusConfig, nx: u32, depth: u32) -> Node {
    let leaf_chance = depth as f64 / cfg.max_depth as f64;
    if depth > 0 && (depth >= cfg.max_depth || rng.gen_bool(leaf_chance.min(1.0))) {
        let gate = if rng.gen_bool(0.75) {
            Gate::Var(VarId::x(rng.gen_range(1..=nx)))
        } else {
            Gate::Const(int(*cfg.leaves.constants().choose(rng).expect("nonempty")))
        };
        return Node::Leaf(gate);
    }
    let fan_in = rng.gen_range(1..=3);
    Node::Inner((0..fan_in).map(|_| random_tree(rng, cfg, nx, depth + 1)).collect())
}

fn emit(node: &Node, add: bool, b: &mut CircuitBuilder) -> GateId {
    match node {
        Node::Leaf(g) => b.push(g.clone()),
        Node::Inner(ch) => {
            let kids = ch.iter().map(|c| emit(c, !add, b)).collect();
            if add {
                b.add(kids)
            } else {
                b.mul(kids)
            }
        }
    }
}

/// One random layered alternating formula with an addition gate on top.
pub fn random_formula(rng: &mut ChaCha20Rng, cfg: &CorpusConfig) -> Circuit {
    loop {
        let nx = rng.gen_range(1..=cfg.max_x);
        let tree = random_tree(rng, cfg, nx, 0);
        if tree.count() > cfg.max_gates {
            continue;
        }
        let mut b = CircuitBuilder::new();
        let root = emit(&tree, true, &mut b);
        let c = b.finish(root);
        if let Some(limit) = cfg.max_total_vars {
            let (cp, _) = gadgetize(&c).expect("a tree is a formula");
            if cp.variables().len() > limit {
                continue;
            }
        }
        return c;
    }
}

pub fn generate(cfg: &CorpusConfig) -> Vec<Circuit> {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    (0..cfg.count).map(|_| random_formula(&mut rng, cfg)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    Constant { cofactor: usize, gate: GateId, from: Rational, to: Rational },
    Variable { cofactor: usize, gate: GateId, from: VarId, to: VarId },
    Scale { cofactor: usize, factor: Rational },
}

fn replace_gate(c: &Circuit, id: GateId, gate: Gate) -> Circuit {
    let mut gates = c.gates().to_vec();
    gates[id.index()] = gate;
    Circuit::from_gates(gates, c.output()).expect("same shape")
}

/// A random single-site change to one cofactor: perturb a constant, swap
/// a variable, or scale the whole cofactor. Claimed metrics are updated so
/// that only the algebra is wrong.
pub fn mutate(cert: &NullstellensatzCertificate, rng: &mut ChaCha20Rng) -> (NullstellensatzCertificate, Mutation) {
    let vars: Vec<VarId> = cert
        .cofactors
        .iter()
        .flat_map(|c| c.variables())
        .chain(cert.axioms.iter().flat_map(|a| match &a.form {
            crate::refute::AxiomForm::Poly(p) => p.variables(),
            crate::refute::AxiomForm::Circuit(c) => c.variables(),
        }))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    loop {
        let k = rng.gen_range(0..cert.cofactors.len());
        let cof = &cert.cofactors[k];
        let (new, mutation) = match rng.gen_range(0..3) {
            0 => {
                let consts: Vec<GateId> = cof.ids().filter(|g| matches!(cof.gate(*g), Gate::Const(_))).collect();
                let Some(&g) = consts.choose(rng) else { continue };
                let Gate::Const(from) = cof.gate(g) else { unreachable!() };
                let delta = [int(1), int(-1), ratio(1, 2), int(2), int(-3)].choose(rng).cloned().expect("nonempty");
                let to = from + delta;
                (
                    replace_gate(cof, g, Gate::Const(to.clone())),
                    Mutation::Constant { cofactor: k, gate: g, from: from.clone(), to },
                )
            }
            1 => {
                let leaves: Vec<GateId> = cof.ids().filter(|g| matches!(cof.gate(*g), Gate::Var(_))).collect();
                let Some(&g) = leaves.choose(rng) else { continue };
                let Gate::Var(from) = *cof.gate(g) else { unreachable!() };
                let others: Vec<VarId> = vars.iter().copied().filter(|v| *v != from).collect();
                let Some(&to) = others.choose(rng) else { continue };
                (replace_gate(cof, g, Gate::Var(to)), Mutation::Variable { cofactor: k, gate: g, from, to })
            }
            _ => {
                let factor = [int(2), int(-1), ratio(1, 3), int(0)].choose(rng).cloned().expect("nonempty");
                let mut b = CircuitBuilder::new();
                let s = b.constant(factor.clone());
                let inner = b.import_circuit(cof);
                let root = b.mul(vec![s, inner]);
                (b.finish(root), Mutation::Scale { cofactor: k, factor })
            }
        };
        let mut out = cert.clone();
        out.claimed_metrics[k] = new.measure();
        out.cofactors[k] = new;
        return (out, mutation);
    }
}

/// The cofactor touched by a mutation.
pub fn mutated_cofactor(m: &Mutation) -> usize {
    match m {
        Mutation::Constant { cofactor, .. }
        | Mutation::Variable { cofactor, .. }
        | Mutation::Scale { cofactor, .. } => *cofactor,
    }
}

/// True for leaves that are constants outside `{0, 1}`.
pub fn has_signed_leaf(c: &Circuit) -> bool {
    c.constants().any(|x| !x.is_zero() && !x.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_respects_bounds_and_is_reproducible() {
        let cfg = CorpusConfig { count: 50, ..Default::default() };
        let a = generate(&cfg);
        assert_eq!(a, generate(&cfg));
        for c in &a {
            assert!(c.len() <= 30);
            assert!(c.is_formula());
            assert!(c.is_layered_alternating());
            assert!(c.has_zero_one_leaves());
            assert!(c.variables().len() <= 6);
            let (cp, _) = gadgetize(c).unwrap();
            assert!(cp.variables().len() <= 16);
        }
        assert_ne!(a, generate(&CorpusConfig { seed: 1, ..cfg }));
    }

    #[test]
    fn signed_corpus_uses_minus_one() {
        let cfg = CorpusConfig { count: 100, leaves: LeafSet::SignedUnit, ..Default::default() };
        assert!(generate(&cfg).iter().any(has_signed_leaf));
    }

    #[test]
    fn mutation_changes_one_cofactor() {
        let c = &generate(&CorpusConfig { count: 1, ..Default::default() })[0];
        let (cp, ledger) = gadgetize(c).unwrap();
        let cert = crate::refute::assemble_refutation(&cp, &ledger).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (m, how) = mutate(&cert, &mut rng);
            let k = mutated_cofactor(&how);
            for j in 0..cert.len() {
                assert_eq!(m.cofactors[j] == cert.cofactors[j], j != k);
            }
            assert_eq!(m.claimed_metrics[k], m.cofactors[k].measure());
        }
    }
}
