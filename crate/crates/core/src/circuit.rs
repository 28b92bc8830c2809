//! Algebraic circuits: a DAG of variable, constant, addition and
//! multiplication gates stored in topological order.
//!
//! Gate ids are dense indices into the gate table, every child id is
//! smaller than its parent, and every gate is reachable from the output.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::poly::{PolyError, SparsePoly, MAX_TERMS};
use crate::rational::{format_fraction, int, is_signed_unit_or_zero, is_zero_one, parse_rational, Rational};
use crate::var::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub u32);

impl GateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Var(VarId),
    Const(Rational),
    Add(Vec<GateId>),
    Mul(Vec<GateId>),
}

impl Gate {
    pub fn children(&self) -> &[GateId] {
        match self {
            Gate::Add(c) | Gate::Mul(c) => c,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Gate::Var(_) | Gate::Const(_))
    }

    pub fn is_add(&self) -> bool {
        matches!(self, Gate::Add(_))
    }

    pub fn is_mul(&self) -> bool {
        matches!(self, Gate::Mul(_))
    }
}

/// Wire count and depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub size: u64,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed circuit: {0}")]
    Malformed(String),
    #[error("variable {0} has no assigned value")]
    Unassigned(VarId),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: GateId,
}

impl Circuit {
    /// Validates a gate table: nonempty children, topological order and
    /// reachability of every gate from `output`.
    pub fn from_gates(gates: Vec<Gate>, output: GateId) -> Result<Self, CircuitError> {
        if output.index() >= gates.len() {
            return Err(CircuitError::Malformed(format!("output {output} is not defined")));
        }
        for (k, gate) in gates.iter().enumerate() {
            if let Gate::Add(ch) | Gate::Mul(ch) = gate {
                if ch.is_empty() {
                    return Err(CircuitError::Malformed(format!("gate g{k} has no inputs")));
                }
                if let Some(bad) = ch.iter().find(|c| c.index() >= k) {
                    return Err(CircuitError::Malformed(format!("gate g{k} uses {bad} before it is defined")));
                }
            }
        }
        let circuit = Circuit { gates, output };
        let reach = circuit.reachable();
        if let Some(k) = reach.iter().position(|r| !r) {
            return Err(CircuitError::Malformed(format!("gate g{k} does not feed the output")));
        }
        Ok(circuit)
    }

    pub fn leaf_var(v: VarId) -> Self {
        Circuit { gates: vec![Gate::Var(v)], output: GateId(0) }
    }

    pub fn leaf_const(c: Rational) -> Self {
        Circuit { gates: vec![Gate::Const(c)], output: GateId(0) }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = GateId> {
        (0..self.gates.len() as u32).map(GateId)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut reach = vec![false; self.gates.len()];
        reach[self.output.index()] = true;
        for k in (0..self.gates.len()).rev() {
            if reach[k] {
                for c in self.gates[k].children() {
                    reach[c.index()] = true;
                }
            }
        }
        reach
    }

    pub fn fanouts(&self) -> Vec<u32> {
        let mut out = vec![0; self.gates.len()];
        for g in &self.gates {
            for c in g.children() {
                out[c.index()] += 1;
            }
        }
        out
    }

    /// True iff every non-output gate feeds exactly one wire, i.e. the
    /// underlying graph is a tree.
    pub fn is_formula(&self) -> bool {
        let fanouts = self.fanouts();
        fanouts.iter().enumerate().all(|(k, &f)| if k == self.output.index() { f == 0 } else { f == 1 })
    }

    pub fn measure(&self) -> Metrics {
        let size = self.gates.iter().map(|g| g.children().len() as u64).sum();
        let depth = self.depths()[self.output.index()];
        Metrics { size, depth }
    }

    fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.gates.len()];
        for (k, g) in self.gates.iter().enumerate() {
            depth[k] = g.children().iter().map(|c| depth[c.index()] + 1).max().unwrap_or(0);
        }
        depth
    }

    /// Per-gate metrics of the sub-formula rooted at each gate. Shared
    /// gates are counted once per use, so for a DAG the size is that of
    /// the unfolded formula.
    pub fn gate_metrics(&self) -> Vec<Metrics> {
        let mut out: Vec<Metrics> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let ch = g.children();
            let size = ch.iter().fold(ch.len() as u64, |acc, c| acc.saturating_add(out[c.index()].size));
            let depth = ch.iter().map(|c| out[c.index()].depth + 1).max().unwrap_or(0);
            out.push(Metrics { size, depth });
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Var(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn constants(&self) -> impl Iterator<Item = &Rational> {
        self.gates.iter().filter_map(|g| match g {
            Gate::Const(c) => Some(c),
            _ => None,
        })
    }

    /// Every constant leaf lies in `{-1, 0, 1}`.
    pub fn is_constant_free(&self) -> bool {
        self.constants().all(is_signed_unit_or_zero)
    }

    /// Every constant leaf lies in `{0, 1}`.
    pub fn has_zero_one_leaves(&self) -> bool {
        self.constants().all(is_zero_one)
    }

    /// No addition gate feeds an addition gate, no multiplication gate feeds
    /// a multiplication gate, and the output is an addition gate.
    pub fn is_layered_alternating(&self) -> bool {
        if !self.gate(self.output).is_add() {
            return false;
        }
        self.gates.iter().all(|g| match g {
            Gate::Add(ch) => ch.iter().all(|c| !self.gate(*c).is_add()),
            Gate::Mul(ch) => ch.iter().all(|c| !self.gate(*c).is_mul()),
            _ => true,
        })
    }

    /// Every multiplication gate has children over pairwise disjoint
    /// variable sets.
    pub fn is_syntactically_multilinear(&self) -> bool {
        let mut vars: Vec<BTreeSet<VarId>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut here = BTreeSet::new();
            match g {
                Gate::Var(v) => {
                    here.insert(*v);
                }
                Gate::Const(_) => {}
                Gate::Add(ch) => {
                    for c in ch {
                        here.extend(vars[c.index()].iter().copied());
                    }
                }
                Gate::Mul(ch) => {
                    for c in ch {
                        for v in &vars[c.index()] {
                            if !here.insert(*v) {
                                return false;
                            }
                        }
                    }
                }
            }
            vars.push(here);
        }
        true
    }

    /// Syntactic degree of the output.
    pub fn degree_bound(&self) -> u64 {
        let mut deg: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = match g {
                Gate::Var(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(ch) => ch.iter().map(|c| deg[c.index()]).max().unwrap_or(0),
                Gate::Mul(ch) => ch.iter().map(|c| deg[c.index()]).fold(0u64, u64::saturating_add),
            };
            deg.push(d);
        }
        deg[self.output.index()]
    }

    /// Polynomials computed at every gate.
    pub fn expand_all(&self) -> Result<Vec<SparsePoly>, CircuitError> {
        self.expand_all_with_limit(MAX_TERMS)
    }

    pub fn expand_all_with_limit(&self, limit: usize) -> Result<Vec<SparsePoly>, CircuitError> {
        let mut polys: Vec<SparsePoly> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let p = match g {
                Gate::Var(v) => SparsePoly::var(*v),
                Gate::Const(c) => SparsePoly::constant(c.clone()),
                Gate::Add(ch) => {
                    let mut acc = SparsePoly::zero();
                    for c in ch {
                        acc = acc.checked_add(&polys[c.index()], limit)?;
                    }
                    acc
                }
                Gate::Mul(ch) => {
                    let mut acc = polys[ch[0].index()].clone();
                    for c in &ch[1..] {
                        acc = acc.checked_mul(&polys[c.index()], limit)?;
                    }
                    acc
                }
            };
            polys.push(p);
        }
        Ok(polys)
    }

    /// The polynomial computed by the output gate.
    pub fn expand(&self) -> Result<SparsePoly, CircuitError> {
        self.expand_with_limit(MAX_TERMS)
    }

    pub fn expand_with_limit(&self, limit: usize) -> Result<SparsePoly, CircuitError> {
        let mut all = self.expand_all_with_limit(limit)?;
        Ok(all.swap_remove(self.output.index()))
    }

    /// Replaces assigned variable leaves by constants, keeping every gate
    /// and gate id.
    pub fn partial_evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Circuit {
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::Var(v) => match point.get(v) {
                    Some(c) => Gate::Const(c.clone()),
                    None => g.clone(),
                },
                other => other.clone(),
            })
            .collect();
        Circuit { gates, output: self.output }
    }

    /// Exact evaluation at a point assigning every variable.
    pub fn evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, CircuitError> {
        let mut vals: Vec<Rational> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Var(v) => point.get(v).cloned().ok_or(CircuitError::Unassigned(*v))?,
                Gate::Const(c) => c.clone(),
                Gate::Add(ch) => ch.iter().fold(Rational::zero(), |a, c| a + &vals[c.index()]),
                Gate::Mul(ch) => ch.iter().fold(Rational::one(), |a, c| a * &vals[c.index()]),
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.output.index()))
    }

    /// Flattens same-kind chains so addition and multiplication gates
    /// alternate, then wraps a non-addition output under a fan-in-1
    /// addition gate. The computed polynomial is unchanged and depth never
    /// grows by more than one.
    pub fn normalize_layered(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        let mut emitted: Vec<Option<GateId>> = vec![None; self.gates.len()];
        let root = self.emit_flat(self.output, &mut b, &mut emitted);
        let root = if self.gate(self.output).is_add() { root } else { b.add(vec![root]) };
        b.finish(root)
    }

    fn emit_flat(&self, id: GateId, b: &mut CircuitBuilder, emitted: &mut Vec<Option<GateId>>) -> GateId {
        if let Some(done) = emitted[id.index()] {
            return done;
        }
        let new = match self.gate(id) {
            Gate::Var(v) => b.var(*v),
            Gate::Const(c) => b.constant(c.clone()),
            Gate::Add(_) => {
                let ops = self.flat_operands(id, true, b, emitted);
                b.add(ops)
            }
            Gate::Mul(_) => {
                let ops = self.flat_operands(id, false, b, emitted);
                b.mul(ops)
            }
        };
        emitted[id.index()] = Some(new);
        new
    }

    fn flat_operands(
        &self,
        id: GateId,
        additive: bool,
        b: &mut CircuitBuilder,
        emitted: &mut Vec<Option<GateId>>,
    ) -> Vec<GateId> {
        let mut ops = Vec::new();
        for &c in self.gate(id).children() {
            let same = if additive { self.gate(c).is_add() } else { self.gate(c).is_mul() };
            if same {
                ops.extend(self.flat_operands(c, additive, b, emitted));
            } else {
                ops.push(self.emit_flat(c, b, emitted));
            }
        }
        ops
    }

    /// Sum-of-products circuit for a polynomial.
    pub fn from_poly(p: &SparsePoly) -> Circuit {
        let mut b = CircuitBuilder::new();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(b.constant(c.clone()));
            }
            for &(v, e) in m.factors() {
                for _ in 0..e {
                    factors.push(b.var(v));
                }
            }
            terms.push(b.product(factors));
        }
        let root = if terms.is_empty() { b.constant(Rational::zero()) } else { b.sum(terms) };
        b.finish(root)
    }

    /// Canonical line-based text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, g) in self.gates.iter().enumerate() {
            out.push_str(&format!("g{k} = "));
            match g {
                Gate::Var(v) => out.push_str(&format!("VAR {v}")),
                Gate::Const(c) => out.push_str(&format!("CONST {}", format_fraction(c))),
                Gate::Add(ch) | Gate::Mul(ch) => {
                    out.push_str(if g.is_add() { "ADD" } else { "MUL" });
                    for c in ch {
                        out.push_str(&format!(" {c}"));
                    }
                }
            }
            out.push('\n');
        }
        out.push_str(&format!("OUTPUT {}\n", self.output));
        out
    }

    /// Parses the line-based text form. Gate labels may be any `g<k>` as
    /// long as each is defined before use; they are renumbered densely in
    /// order of definition.
    pub fn parse(text: &str) -> Result<Circuit, CircuitError> {
        let mut labels: HashMap<String, GateId> = HashMap::new();
        let mut gates = Vec::new();
        let mut output = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let err = |message: String| CircuitError::Parse { line: line_no, message };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let first = words.next().unwrap_or_default();
            if first == "OUTPUT" {
                let label = words.next().ok_or_else(|| err("OUTPUT needs a gate".into()))?;
                if words.next().is_some() {
                    return Err(err("trailing tokens after OUTPUT".into()));
                }
                if output.is_some() {
                    return Err(err("duplicate OUTPUT line".into()));
                }
                let id = *labels.get(label).ok_or_else(|| err(format!("output {label} is not defined")))?;
                output = Some(id);
                continue;
            }
            if output.is_some() {
                return Err(err("gate defined after OUTPUT".into()));
            }
            if !is_gate_label(first) {
                return Err(err(format!("expected a gate label, found `{first}`")));
            }
            if words.next() != Some("=") {
                return Err(err("expected `=` after the gate label".into()));
            }
            let kind = words.next().ok_or_else(|| err("missing gate kind".into()))?;
            let args: Vec<&str> = words.collect();
            let gate = match kind {
                "VAR" | "CONST" if args.len() != 1 => {
                    return Err(err(format!("{kind} takes exactly one argument")));
                }
                "VAR" => Gate::Var(args[0].parse().map_err(|e| err(format!("{e}")))?),
                "CONST" => Gate::Const(parse_rational(args[0]).map_err(|e| err(format!("{e}")))?),
                "ADD" | "MUL" => {
                    if args.is_empty() {
                        return Err(err(format!("{kind} needs at least one input")));
                    }
                    let mut ch = Vec::with_capacity(args.len());
                    for a in args {
                        ch.push(*labels.get(a).ok_or_else(|| err(format!("{a} is used before it is defined")))?);
                    }
                    if kind == "ADD" {
                        Gate::Add(ch)
                    } else {
                        Gate::Mul(ch)
                    }
                }
                other => return Err(err(format!("unknown gate kind `{other}`"))),
            };
            let id = GateId(gates.len() as u32);
            if labels.insert(first.to_string(), id).is_some() {
                return Err(err(format!("{first} is defined twice")));
            }
            gates.push(gate);
        }
        let output =
            output.ok_or(CircuitError::Parse { line: text.lines().count(), message: "missing OUTPUT line".into() })?;
        Circuit::from_gates(gates, output)
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

fn is_gate_label(s: &str) -> bool {
    s.len() > 1 && s.starts_with('g') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Appends gates in topological order; [`CircuitBuilder::finish`] drops
/// gates that do not feed the chosen output and renumbers the rest.
#[derive(Debug, Default, Clone)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> GateId {
        debug_assert!(gate.children().iter().all(|c| c.index() < self.gates.len()));
        self.gates.push(gate);
        GateId(self.gates.len() as u32 - 1)
    }

    pub fn var(&mut self, v: VarId) -> GateId {
        self.push(Gate::Var(v))
    }

    pub fn constant(&mut self, c: Rational) -> GateId {
        self.push(Gate::Const(c))
    }

    pub fn add(&mut self, children: Vec<GateId>) -> GateId {
        assert!(!children.is_empty(), "addition gate without inputs");
        self.push(Gate::Add(children))
    }

    pub fn mul(&mut self, children: Vec<GateId>) -> GateId {
        assert!(!children.is_empty(), "multiplication gate without inputs");
        self.push(Gate::Mul(children))
    }

    /// `1 - v` as `ADD(1, MUL(-1, v))`.
    pub fn one_minus(&mut self, v: VarId) -> GateId {
        let one = self.constant(Rational::one());
        let neg = self.constant(int(-1));
        let y = self.var(v);
        let prod = self.mul(vec![neg, y]);
        self.add(vec![one, prod])
    }

    /// Product gate, or the single factor itself, or the constant 1.
    pub fn product(&mut self, factors: Vec<GateId>) -> GateId {
        match factors.len() {
            0 => self.constant(Rational::one()),
            1 => factors[0],
            _ => self.mul(factors),
        }
    }

    /// Sum gate, or the single term itself, or the constant 0.
    pub fn sum(&mut self, terms: Vec<GateId>) -> GateId {
        match terms.len() {
            0 => self.constant(Rational::zero()),
            1 => terms[0],
            _ => self.add(terms),
        }
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    /// Copies the sub-circuit of `source` rooted at `root`. Sharing inside
    /// the copied region is preserved; repeated imports make fresh copies.
    pub fn import(&mut self, source: &Circuit, root: GateId) -> GateId {
        let mut map: HashMap<GateId, GateId> = HashMap::new();
        self.import_rec(source, root, &mut map)
    }

    fn import_rec(&mut self, source: &Circuit, id: GateId, map: &mut HashMap<GateId, GateId>) -> GateId {
        if let Some(&done) = map.get(&id) {
            return done;
        }
        let new = match source.gate(id) {
            Gate::Var(v) => self.var(*v),
            Gate::Const(c) => self.constant(c.clone()),
            Gate::Add(ch) | Gate::Mul(ch) => {
                let kids: Vec<GateId> = ch.iter().map(|&c| self.import_rec(source, c, map)).collect();
                if source.gate(id).is_add() {
                    self.add(kids)
                } else {
                    self.mul(kids)
                }
            }
        };
        map.insert(id, new);
        new
    }

    /// Imports a whole circuit and returns its output.
    pub fn import_circuit(&mut self, source: &Circuit) -> GateId {
        self.import(source, source.output())
    }

    pub fn finish(self, output: GateId) -> Circuit {
        let n = self.gates.len();
        let mut reach = vec![false; n];
        reach[output.index()] = true;
        for k in (0..n).rev() {
            if reach[k] {
                for c in self.gates[k].children() {
                    reach[c.index()] = true;
                }
            }
        }
        let mut remap = vec![u32::MAX; n];
        let mut gates = Vec::with_capacity(n);
        for (k, gate) in self.gates.into_iter().enumerate() {
            if !reach[k] {
                continue;
            }
            remap[k] = gates.len() as u32;
            gates.push(match gate {
                Gate::Add(ch) => Gate::Add(ch.iter().map(|c| GateId(remap[c.index()])).collect()),
                Gate::Mul(ch) => Gate::Mul(ch.iter().map(|c| GateId(remap[c.index()])).collect()),
                leaf => leaf,
            });
        }
        Circuit { gates, output: GateId(remap[output.index()]) }
    }
}

/// A circuit compiled for repeated evaluation at points given as slices of
/// values indexed by the positions of [`IntEvaluator::variables`].
#[derive(Debug, Clone)]
pub struct IntEvaluator {
    variables: Vec<VarId>,
    ops: Vec<IntOp>,
    output: usize,
    integral: bool,
    circuit: Circuit,
}

#[derive(Debug, Clone)]
enum IntOp {
    Slot(usize),
    Const(i128),
    Add(Vec<usize>),
    Mul(Vec<usize>),
}

impl IntEvaluator {
    pub fn new(circuit: &Circuit) -> Self {
        let variables: Vec<VarId> = circuit.variables().into_iter().collect();
        let slot: HashMap<VarId, usize> = variables.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let mut integral = true;
        let ops = circuit
            .gates()
            .iter()
            .map(|g| match g {
                Gate::Var(v) => IntOp::Slot(slot[v]),
                Gate::Const(c) => {
                    let as_int = if c.is_integer() { c.numer().to_i128() } else { None };
                    if as_int.is_none() {
                        integral = false;
                    }
                    IntOp::Const(as_int.unwrap_or(0))
                }
                Gate::Add(ch) => IntOp::Add(ch.iter().map(|c| c.index()).collect()),
                Gate::Mul(ch) => IntOp::Mul(ch.iter().map(|c| c.index()).collect()),
            })
            .collect();
        IntEvaluator { variables, ops, output: circuit.output().index(), integral, circuit: circuit.clone() }
    }

    pub fn variables(&self) -> &[VarId] {
        &self.variables
    }

    /// Checked `i128` evaluation; `None` on overflow or a non-integral
    /// constant.
    pub fn eval_i128(&self, point: &[i128], scratch: &mut Vec<i128>) -> Option<i128> {
        if !self.integral {
            return None;
        }
        scratch.clear();
        for op in &self.ops {
            let v = match op {
                IntOp::Slot(s) => point[*s],
                IntOp::Const(c) => *c,
                IntOp::Add(ch) => ch.iter().try_fold(0i128, |a, c| a.checked_add(scratch[*c]))?,
                IntOp::Mul(ch) => ch.iter().try_fold(1i128, |a, c| a.checked_mul(scratch[*c]))?,
            };
            scratch.push(v);
        }
        Some(scratch[self.output])
    }

    /// Exact value at an integer point, falling back to rationals when the
    /// fast path does not apply.
    pub fn eval(&self, point: &[i128], scratch: &mut Vec<i128>) -> Rational {
        if let Some(v) = self.eval_i128(point, scratch) {
            return Rational::from_integer(v.into());
        }
        let assignment: BTreeMap<VarId, Rational> =
            self.variables.iter().zip(point).map(|(v, x)| (*v, Rational::from_integer((*x).into()))).collect();
        self.circuit.evaluate(&assignment).expect("every variable has a slot")
    }
}
