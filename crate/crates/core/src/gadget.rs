//! Addressing gadgets and the transform that attaches one to every summand
//! of every addition gate.
//!
//! The gadget `A(n, j)` over variables `y_0..y_t` (with `t` the smallest
//! integer such that `2^t > n`) is the product of `y_i` over the one-bits
//! and `1 - y_i` over the zero-bits of `j + 2^t`, least significant bit
//! first. On 0/1 inputs it is the indicator of that bit pattern; at
//! `(1/2, …, 1/2, 2^t)` it equals one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId};
use crate::rational::{pow2, ratio, Rational};
use crate::var::VarId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("address {address} is outside 0..={n}")]
    AddressOutOfRange { n: u32, address: u32 },
    #[error("gadget for n = {n} needs {expected} variables, got {got}")]
    VariableCount { n: u32, expected: usize, got: usize },
    #[error("the transform needs a formula (every gate with fan-out one)")]
    NotFormula,
    #[error("gadgets with equal address {0} have no separating bit")]
    EqualAddresses(u32),
    #[error("gadgets do not share their variables")]
    DifferentVariables,
}

/// Smallest `t` with `2^t > n`.
pub fn address_width(n: u32) -> u32 {
    32 - n.leading_zeros()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressingGadget {
    n: u32,
    address: u32,
    width: u32,
    vars: Vec<VarId>,
}

impl AddressingGadget {
    pub fn new(n: u32, address: u32, vars: Vec<VarId>) -> Result<Self, GadgetError> {
        if address > n {
            return Err(GadgetError::AddressOutOfRange { n, address });
        }
        let width = address_width(n);
        if vars.len() != width as usize + 1 {
            return Err(GadgetError::VariableCount { n, expected: width as usize + 1, got: vars.len() });
        }
        Ok(AddressingGadget { n, address, width, vars })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn address(&self) -> u32 {
        self.address
    }

    /// `t_n`; the gadget has `t_n + 1` variables.
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    /// `j + 2^t`.
    pub fn encoding(&self) -> u64 {
        self.address as u64 + (1u64 << self.width)
    }

    pub fn bit(&self, i: u32) -> bool {
        (self.encoding() >> i) & 1 == 1
    }

    pub fn zero_bits(&self) -> Vec<u32> {
        (0..=self.width).filter(|&i| !self.bit(i)).collect()
    }

    pub fn one_bits(&self) -> Vec<u32> {
        (0..=self.width).filter(|&i| self.bit(i)).collect()
    }

    /// Appends the factor for bit `i`: `y_i` or `1 - y_i`.
    pub fn push_factor(&self, b: &mut CircuitBuilder, i: u32) -> GateId {
        let v = self.vars[i as usize];
        if self.bit(i) {
            b.var(v)
        } else {
            b.one_minus(v)
        }
    }

    /// Appends one factor per bit, in bit order.
    pub fn push_factors(&self, b: &mut CircuitBuilder) -> Vec<GateId> {
        (0..=self.width).map(|i| self.push_factor(b, i)).collect()
    }

    pub fn circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        let factors = self.push_factors(&mut b);
        let root = b.product(factors);
        b.finish(root)
    }

    /// The point `(1/2, …, 1/2, 2^t)` at which every gadget of this width
    /// evaluates to one.
    pub fn retrieval_point(&self) -> BTreeMap<VarId, Rational> {
        retrieval_values(&self.vars)
    }

    /// Lowest bit at which two gadgets over the same variables differ.
    pub fn separating_bit(&self, other: &AddressingGadget) -> Result<u32, GadgetError> {
        if self.vars != other.vars {
            return Err(GadgetError::DifferentVariables);
        }
        let diff = self.encoding() ^ other.encoding();
        if diff == 0 {
            return Err(GadgetError::EqualAddresses(self.address));
        }
        Ok(diff.trailing_zeros())
    }
}

fn retrieval_values(vars: &[VarId]) -> BTreeMap<VarId, Rational> {
    let top = vars.len() - 1;
    vars.iter().enumerate().map(|(i, v)| (*v, if i == top { pow2(top as u32) } else { ratio(1, 2) })).collect()
}

/// The product circuit of `A(n, j)` over `vars`.
pub fn addressing_gadget(n: u32, j: u32, vars: Vec<VarId>) -> Result<Circuit, GadgetError> {
    Ok(AddressingGadget::new(n, j, vars)?.circuit())
}

/// The summand `child · A(n, address)` produced for one input of an
/// addition gate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub address: u32,
    /// The transformed child gate.
    pub child: GateId,
    /// The product gate `MUL(child, factors…)`.
    pub term: GateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    /// The addition gate in the source circuit.
    pub source_gate: GateId,
    /// The replacement addition gate in the transformed circuit.
    pub gate: GateId,
    pub width: u32,
    pub vars: Vec<VarId>,
    pub summands: Vec<Summand>,
}

impl LedgerEntry {
    pub fn fan_in(&self) -> u32 {
        self.summands.len() as u32
    }

    pub fn gadget(&self, summand: usize) -> AddressingGadget {
        AddressingGadget::new(self.fan_in() - 1, self.summands[summand].address, self.vars.clone())
            .expect("ledger entries are built consistently")
    }
}

/// Record of every transformed addition gate.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GadgetLedger {
    pub entries: Vec<LedgerEntry>,
    /// Transformed id of every source gate, indexed by source id.
    pub gate_map: Vec<GateId>,
}

impl GadgetLedger {
    pub fn entry_for(&self, gate: GateId) -> Option<&LedgerEntry> {
        self.entries.binary_search_by(|e| e.gate.cmp(&gate)).ok().map(|k| &self.entries[k])
    }

    pub fn gadget_variables(&self) -> BTreeSet<VarId> {
        self.entries.iter().flat_map(|e| e.vars.iter().copied()).collect()
    }

    pub fn fresh_variable_count(&self) -> usize {
        self.entries.iter().map(|e| e.vars.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Replaces every addition gate `Σ_j g_j` of a formula by
/// `Σ_j g_j · A(fanin - 1, j)` over fresh variables `y_{gate, bit}`.
/// Multiplication gates and leaves are copied unchanged.
pub fn gadgetize(c: &Circuit) -> Result<(Circuit, GadgetLedger), GadgetError> {
    if !c.is_formula() {
        return Err(GadgetError::NotFormula);
    }
    let mut b = CircuitBuilder::new();
    let mut map: Vec<GateId> = Vec::with_capacity(c.len());
    let mut entries = Vec::new();
    for (k, gate) in c.gates().iter().enumerate() {
        let new = match gate {
            Gate::Var(v) => b.var(*v),
            Gate::Const(x) => b.constant(x.clone()),
            Gate::Mul(ch) => b.mul(ch.iter().map(|g| map[g.index()]).collect()),
            Gate::Add(ch) => {
                let n = ch.len() as u32 - 1;
                let width = address_width(n);
                let vars: Vec<VarId> = (0..=width).map(|bit| VarId::y(k as u32, bit)).collect();
                let mut summands = Vec::with_capacity(ch.len());
                for (j, g) in ch.iter().enumerate() {
                    let gadget = AddressingGadget::new(n, j as u32, vars.clone())?;
                    let child = map[g.index()];
                    let mut factors = vec![child];
                    factors.extend(gadget.push_factors(&mut b));
                    let term = b.mul(factors);
                    summands.push(Summand { address: j as u32, child, term });
                }
                let new = b.add(summands.iter().map(|s| s.term).collect());
                entries.push(LedgerEntry { source_gate: GateId(k as u32), gate: new, width, vars, summands });
                new
            }
        };
        map.push(new);
    }
    let out = map[c.output().index()];
    let transformed = b.finish(out);
    // Every emitted gate feeds the output of a formula, so ids are stable.
    debug_assert_eq!(transformed.output(), out);
    Ok((transformed, GadgetLedger { entries, gate_map: map }))
}

/// `(1/2, …, 1/2, 2^t)` on the variables of every transformed gate.
pub fn retrieval_assignment(ledger: &GadgetLedger) -> BTreeMap<VarId, Rational> {
    ledger.entries.iter().flat_map(|e| retrieval_values(&e.vars)).collect()
}
