#![allow(dead_code)]

use std::collections::BTreeMap;

use ipskit::{Circuit, CircuitBuilder, GateId, Rational, VarId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A random circuit over `x1..x<vars>` with at most `max_gates` gates.
/// Children are drawn from all earlier gates, so the result is in general
/// a DAG with shared subcircuits.
pub fn random_circuit(seed: u64, max_gates: usize, vars: u32) -> Circuit {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut b = CircuitBuilder::new();
    let leaves = rng.gen_range(1..=max_gates.div_ceil(2));
    let mut ids: Vec<GateId> = Vec::new();
    for _ in 0..leaves {
        ids.push(if rng.gen_bool(0.7) {
            b.var(VarId::x(rng.gen_range(1..=vars)))
        } else {
            b.constant(Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into()))
        });
    }
    let mut unused: Vec<GateId> = ids.clone();
    while ids.len() + 1 < max_gates {
        let k = rng.gen_range(1..=3);
        let mut ch: Vec<GateId> = (1..k).map(|_| *ids.choose(&mut rng).expect("nonempty")).collect();
        if !unused.is_empty() {
            ch.push(unused.swap_remove(rng.gen_range(0..unused.len())));
        } else {
            ch.push(*ids.choose(&mut rng).expect("nonempty"));
        }
        let g = if rng.gen_bool(0.5) { b.add(ch) } else { b.mul(ch) };
        ids.push(g);
        unused.push(g);
    }
    let out = match unused.len() {
        0 => *ids.last().expect("nonempty"),
        1 => unused[0],
        _ => b.add(unused),
    };
    b.finish(out)
}

/// Random rational values for a subset of `x1..x<vars>`.
pub fn random_point(seed: u64, vars: u32, all: bool) -> BTreeMap<VarId, Rational> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for i in 1..=vars {
        let value = Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into());
        if all || rng.gen_bool(0.5) {
            out.insert(VarId::x(i), value);
        }
    }
    out
}

/// `(x1..x<vars>)` at the bits of `mask`.
pub fn cube_point(vars: &[VarId], mask: u64) -> BTreeMap<VarId, Rational> {
    vars.iter().enumerate().map(|(k, v)| (*v, q((mask >> k & 1) as i64))).collect()
}
