//! Boolean-ideal certificates for every gate of a gadget-transformed
//! formula, and assembly of the Nullstellensatz refutation of `f' - 2`.
//!
//! For a gate `g` the builder produces cofactor formulas `E_v` with
//!
//! ```text
//! g^2 - g = Σ_v E_v · (v^2 - v)
//! ```
//!
//! split into `E` (source variables) and `F` (gadget variables). Products
//! use the telescoping expansion
//! `g^2 - g = Σ_l (Π_{t<l} g_t)(Π_{t>l} g_t^2)(g_l^2 - g_l)`; transformed
//! additions `Σ_l g_l A_l` use
//! `Σ_l (g_l^2 - g_l) A_l^2 + Σ_l g_l (A_l^2 - A_l) + Σ_{l≠l'} g_l g_l' A_l A_l'`
//! together with the gadget square and product decompositions below.
//!
//! Every cofactor is built as a formula: shared sub-formulas are copied,
//! and no sharing happens across summands.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::circuit::{Circuit, CircuitBuilder, CircuitError, Gate, GateId, Metrics};
use crate::gadget::{AddressingGadget, GadgetError, GadgetLedger};
use crate::poly::SparsePoly;
use crate::rational::{format_compact, int, Rational};
use crate::var::VarId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefuteError {
    #[error("gate {gate} is the constant {value}; only 0 and 1 leaves admit a certificate")]
    ForbiddenConstant { gate: GateId, value: String },
    #[error("gate {0} lies inside an addressing gadget")]
    InternalGadgetGate(GateId),
    #[error("addition gate {0} has no ledger entry; run the gadget transform first")]
    UngadgetizedAddition(GateId),
    #[error("shift {0} gives a satisfiable instance (f' takes the value {0} negated)")]
    SatisfiableShift(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Cofactors certifying that `g^2 - g` lies in the ideal of the Boolean
/// axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanIdealCertificate {
    pub gate: GateId,
    /// Cofactors of `v^2 - v` for non-gadget variables.
    pub e: BTreeMap<VarId, Circuit>,
    /// Cofactors of `y^2 - y` for gadget variables.
    pub f: BTreeMap<VarId, Circuit>,
}

impl BooleanIdealCertificate {
    pub fn cofactors(&self) -> impl Iterator<Item = (&VarId, &Circuit)> {
        self.e.iter().chain(self.f.iter())
    }

    pub fn get(&self, v: &VarId) -> Option<&Circuit> {
        self.e.get(v).or_else(|| self.f.get(v))
    }

    /// Largest measured size and depth over all cofactors.
    pub fn max_metrics(&self) -> Metrics {
        self.cofactors()
            .map(|(_, c)| c.measure())
            .fold(Metrics::default(), |acc, m| Metrics { size: acc.size.max(m.size), depth: acc.depth.max(m.depth) })
    }

    /// `Σ_v expand(E_v) · (v^2 - v)`.
    pub fn combination(&self) -> Result<SparsePoly, CircuitError> {
        let mut acc = SparsePoly::zero();
        for (v, c) in self.cofactors() {
            acc = &acc + &(&c.expand()? * &SparsePoly::boolean_axiom(*v));
        }
        Ok(acc)
    }

    /// Checks `g^2 - g = Σ_v E_v (v^2 - v)` exactly, given the expansion of `g`.
    pub fn holds_for(&self, gate_poly: &SparsePoly) -> Result<bool, CircuitError> {
        let lhs = &(gate_poly * gate_poly) - gate_poly;
        Ok(lhs == self.combination()?)
    }
}

fn is_one(c: &Circuit) -> bool {
    matches!(c.gate(c.output()), Gate::Const(x) if x.is_one())
}

/// Factors `Π_{k<j} a_k · Π_{k>j} a_k^2` of the square decomposition
/// cofactor at bit `j`.
fn push_square_cofactor(a: &AddressingGadget, j: u32, b: &mut CircuitBuilder) -> Vec<GateId> {
    let mut factors = Vec::new();
    for k in 0..=a.width() {
        let copies = match k.cmp(&j) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 2,
        };
        for _ in 0..copies {
            factors.push(a.push_factor(b, k));
        }
    }
    factors
}

/// Factors `-1 · Π_{k≠j} a_k a'_k` of the product decomposition at the
/// separating bit `j`.
fn push_product_cofactor(
    a: &AddressingGadget,
    other: &AddressingGadget,
    j: u32,
    b: &mut CircuitBuilder,
) -> Vec<GateId> {
    let mut factors = vec![b.constant(int(-1))];
    for k in (0..=a.width()).filter(|&k| k != j) {
        factors.push(a.push_factor(b, k));
        factors.push(other.push_factor(b, k));
    }
    factors
}

/// Cofactors `C_j` with `A^2 - A = Σ_j C_j (y_j^2 - y_j)`.
pub fn address_square_decomposition(a: &AddressingGadget) -> BTreeMap<u32, Circuit> {
    (0..=a.width())
        .map(|j| {
            let mut b = CircuitBuilder::new();
            let factors = push_square_cofactor(a, j, &mut b);
            let root = b.product(factors);
            (j, b.finish(root))
        })
        .collect()
}

/// A separating bit `j` and cofactor `C` with `A · A' = C (y_j^2 - y_j)`.
pub fn address_product_decomposition(
    a: &AddressingGadget,
    other: &AddressingGadget,
) -> Result<(u32, Circuit), GadgetError> {
    let j = a.separating_bit(other)?;
    let mut b = CircuitBuilder::new();
    let factors = push_product_cofactor(a, other, j, &mut b);
    let root = b.product(factors);
    Ok((j, b.finish(root)))
}

/// Bottom-up certificate construction over a transformed formula, memoized
/// per gate.
pub struct CertificateBuilder<'a> {
    circuit: &'a Circuit,
    ledger: &'a GadgetLedger,
    gadget_vars: BTreeSet<VarId>,
    internal: Vec<bool>,
    memo: HashMap<GateId, Arc<BooleanIdealCertificate>>,
}

impl<'a> CertificateBuilder<'a> {
    pub fn new(circuit: &'a Circuit, ledger: &'a GadgetLedger) -> Self {
        let mut internal = vec![false; circuit.len()];
        for entry in &ledger.entries {
            for s in &entry.summands {
                internal[s.term.index()] = true;
                for &c in circuit.gate(s.term).children() {
                    if c != s.child {
                        mark_subtree(circuit, c, &mut internal);
                    }
                }
            }
        }
        CertificateBuilder { circuit, ledger, gadget_vars: ledger.gadget_variables(), internal, memo: HashMap::new() }
    }

    /// Gates that carry a certificate: every gate outside the gadget
    /// products.
    pub fn certifiable_gates(&self) -> Vec<GateId> {
        self.circuit.ids().filter(|g| !self.internal[g.index()]).collect()
    }

    pub fn certify(&mut self, gate: GateId) -> Result<Arc<BooleanIdealCertificate>, RefuteError> {
        if let Some(done) = self.memo.get(&gate) {
            return Ok(done.clone());
        }
        if self.internal[gate.index()] {
            return Err(RefuteError::InternalGadgetGate(gate));
        }
        let cofactors = match self.circuit.gate(gate) {
            Gate::Var(v) => BTreeMap::from([(*v, Circuit::leaf_const(Rational::one()))]),
            Gate::Const(c) if c.is_zero() || c.is_one() => BTreeMap::new(),
            Gate::Const(c) => {
                return Err(RefuteError::ForbiddenConstant { gate, value: format_compact(c) });
            }
            Gate::Mul(children) => self.product_case(children)?,
            Gate::Add(_) => self.sum_case(gate)?,
        };
        let (f, e): (BTreeMap<_, _>, BTreeMap<_, _>) =
            cofactors.into_iter().partition(|(v, _)| self.gadget_vars.contains(v));
        let cert = Arc::new(BooleanIdealCertificate { gate, e, f });
        self.memo.insert(gate, cert.clone());
        Ok(cert)
    }

    fn product_case(&mut self, children: &[GateId]) -> Result<BTreeMap<VarId, Circuit>, RefuteError> {
        let certs = children.iter().map(|&c| self.certify(c)).collect::<Result<Vec<_>, _>>()?;
        let vars: BTreeSet<VarId> = certs.iter().flat_map(|c| c.cofactors().map(|(v, _)| *v)).collect();
        let mut out = BTreeMap::new();
        for v in vars {
            let mut b = CircuitBuilder::new();
            let mut terms = Vec::new();
            for (l, cert) in certs.iter().enumerate() {
                let Some(cof) = cert.get(&v) else { continue };
                let mut factors = Vec::new();
                for (t, &g) in children.iter().enumerate() {
                    let copies = match t.cmp(&l) {
                        std::cmp::Ordering::Less => 1,
                        std::cmp::Ordering::Equal => 0,
                        std::cmp::Ordering::Greater => 2,
                    };
                    for _ in 0..copies {
                        factors.push(b.import(self.circuit, g));
                    }
                }
                if !is_one(cof) {
                    factors.push(b.import_circuit(cof));
                }
                terms.push(b.product(factors));
            }
            let root = b.sum(terms);
            out.insert(v, b.finish(root));
        }
        Ok(out)
    }

    fn sum_case(&mut self, gate: GateId) -> Result<BTreeMap<VarId, Circuit>, RefuteError> {
        let entry = self.ledger.entry_for(gate).ok_or(RefuteError::UngadgetizedAddition(gate))?.clone();
        let gadgets: Vec<AddressingGadget> = (0..entry.summands.len()).map(|l| entry.gadget(l)).collect();
        let children: Vec<GateId> = entry.summands.iter().map(|s| s.child).collect();
        let certs = children.iter().map(|&c| self.certify(c)).collect::<Result<Vec<_>, _>>()?;

        let mut vars: BTreeSet<VarId> = certs.iter().flat_map(|c| c.cofactors().map(|(v, _)| *v)).collect();
        vars.extend(entry.vars.iter().copied());

        let mut out = BTreeMap::new();
        for v in vars {
            let mut b = CircuitBuilder::new();
            let mut terms = Vec::new();
            // (g_l^2 - g_l) · A_l^2
            for (l, cert) in certs.iter().enumerate() {
                let Some(cof) = cert.get(&v) else { continue };
                let mut factors = gadgets[l].push_factors(&mut b);
                factors.extend(gadgets[l].push_factors(&mut b));
                if !is_one(cof) {
                    factors.push(b.import_circuit(cof));
                }
                terms.push(b.product(factors));
            }
            if let Some(j) = entry.vars.iter().position(|w| *w == v) {
                let j = j as u32;
                // g_l · (A_l^2 - A_l)
                for (l, &child) in children.iter().enumerate() {
                    let mut factors = push_square_cofactor(&gadgets[l], j, &mut b);
                    factors.push(b.import(self.circuit, child));
                    terms.push(b.product(factors));
                }
                // g_l g_l' · A_l A_l' over ordered pairs separated at bit j
                for l in 0..children.len() {
                    for m in 0..children.len() {
                        if l == m || gadgets[l].separating_bit(&gadgets[m])? != j {
                            continue;
                        }
                        let mut factors = push_product_cofactor(&gadgets[l], &gadgets[m], j, &mut b);
                        factors.push(b.import(self.circuit, children[l]));
                        factors.push(b.import(self.circuit, children[m]));
                        terms.push(b.product(factors));
                    }
                }
            }
            let root = b.sum(terms);
            out.insert(v, b.finish(root));
        }
        Ok(out)
    }
}

fn mark_subtree(c: &Circuit, root: GateId, marks: &mut [bool]) {
    marks[root.index()] = true;
    for &k in c.gate(root).children() {
        mark_subtree(c, k, marks);
    }
}

/// Certificate for one gate of a transformed formula.
pub fn gate_square_certificate(
    c: &Circuit,
    gate: GateId,
    ledger: &GadgetLedger,
) -> Result<BooleanIdealCertificate, RefuteError> {
    let mut builder = CertificateBuilder::new(c, ledger);
    Ok((*builder.certify(gate)?).clone())
}

/// Certificates for every certifiable gate.
pub fn certify_all(
    c: &Circuit,
    ledger: &GadgetLedger,
) -> Result<BTreeMap<GateId, BooleanIdealCertificate>, RefuteError> {
    let mut builder = CertificateBuilder::new(c, ledger);
    let mut out = BTreeMap::new();
    for g in builder.certifiable_gates() {
        out.insert(g, (*builder.certify(g)?).clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomForm {
    Poly(SparsePoly),
    Circuit(Circuit),
}

impl AxiomForm {
    pub fn expand(&self) -> Result<SparsePoly, CircuitError> {
        match self {
            AxiomForm::Poly(p) => Ok(p.clone()),
            AxiomForm::Circuit(c) => c.expand(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub label: String,
    pub form: AxiomForm,
}

impl Axiom {
    pub fn boolean(v: VarId) -> Self {
        Axiom { label: format!("bool({v})"), form: AxiomForm::Poly(SparsePoly::boolean_axiom(v)) }
    }
}

/// Axioms with one cofactor circuit each; valid when
/// `Σ_k cofactor_k · axiom_k = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullstellensatzCertificate {
    pub axioms: Vec<Axiom>,
    pub cofactors: Vec<Circuit>,
    pub claimed_metrics: Vec<Metrics>,
}

impl NullstellensatzCertificate {
    pub fn new(entries: Vec<(Axiom, Circuit)>) -> Self {
        let claimed_metrics = entries.iter().map(|(_, c)| c.measure()).collect();
        let (axioms, cofactors) = entries.into_iter().unzip();
        NullstellensatzCertificate { axioms, cofactors, claimed_metrics }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Sum of cofactor sizes and largest cofactor depth.
    pub fn total_metrics(&self) -> Metrics {
        self.cofactors
            .iter()
            .map(Circuit::measure)
            .fold(Metrics::default(), |acc, m| Metrics { size: acc.size + m.size, depth: acc.depth.max(m.depth) })
    }

    pub fn cofactor_for(&self, label: &str) -> Option<&Circuit> {
        self.axioms.iter().position(|a| a.label == label).map(|k| &self.cofactors[k])
    }
}

pub const INSTANCE_LABEL: &str = "f";

/// Refutation of `f' - 2` together with the Boolean axioms of every
/// variable of `f'`.
pub fn assemble_refutation(c: &Circuit, ledger: &GadgetLedger) -> Result<NullstellensatzCertificate, RefuteError> {
    assemble_refutation_with_shift(c, ledger, &int(-2))
}

/// Refutation of `f' + shift` for a 0/1-valued `f'`. With `c = -shift`
/// (`c ∉ {0, 1}`) the cofactors are `a f' + b` on the instance and `-a E_v`
/// on `v^2 - v`, where `b = -1/c` and `a = -1/(c(c - 1))`; for `c = 2`
/// these are `-(f' + 1)/2` and `E_v / 2`.
pub fn assemble_refutation_with_shift(
    c: &Circuit,
    ledger: &GadgetLedger,
    shift: &Rational,
) -> Result<NullstellensatzCertificate, RefuteError> {
    let target = -shift.clone();
    if target.is_zero() || target.is_one() {
        return Err(RefuteError::SatisfiableShift(format_compact(shift)));
    }
    let a = -(Rational::one() / (&target * (&target - Rational::one())));
    let root_cert = CertificateBuilder::new(c, ledger).certify(c.output())?;

    let instance = {
        let mut b = CircuitBuilder::new();
        let f = b.import_circuit(c);
        let s = b.constant(shift.clone());
        let root = b.add(vec![f, s]);
        b.finish(root)
    };
    let instance_cofactor = {
        let mut b = CircuitBuilder::new();
        let scale = b.constant(a.clone());
        let f = b.import_circuit(c);
        let offset = b.constant(&target - Rational::one());
        let sum = b.add(vec![f, offset]);
        let root = b.mul(vec![scale, sum]);
        b.finish(root)
    };
    let mut entries =
        vec![(Axiom { label: INSTANCE_LABEL.to_string(), form: AxiomForm::Circuit(instance) }, instance_cofactor)];
    for (v, cof) in root_cert.cofactors() {
        let weight = -a.clone();
        let scaled = match cof.gate(cof.output()) {
            Gate::Const(k) => Circuit::leaf_const(k * &weight),
            _ => {
                let mut b = CircuitBuilder::new();
                let w = b.constant(weight);
                let e = b.import_circuit(cof);
                let root = b.mul(vec![w, e]);
                b.finish(root)
            }
        };
        entries.push((Axiom::boolean(*v), scaled));
    }
    Ok(NullstellensatzCertificate::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{address_width, gadgetize};
    use crate::rational::ratio;

    fn gadget(n: u32, j: u32) -> AddressingGadget {
        let vars = (0..=address_width(n)).map(|b| VarId::y(0, b)).collect();
        AddressingGadget::new(n, j, vars).unwrap()
    }

    fn square_identity_holds(a: &AddressingGadget) -> bool {
        let p = a.circuit().expand().unwrap();
        let lhs = &(&p * &p) - &p;
        let mut rhs = SparsePoly::zero();
        for (j, c) in address_square_decomposition(a) {
            rhs = &rhs + &(&c.expand().unwrap() * &SparsePoly::boolean_axiom(a.vars()[j as usize]));
        }
        lhs == rhs
    }

    #[test]
    fn square_decomposition_of_single_variable_gadget() {
        let a = gadget(0, 0);
        let d = address_square_decomposition(&a);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&0].expand().unwrap(), SparsePoly::one());
    }

    #[test]
    fn square_decomposition_of_one_minus_y0_times_y1() {
        let a = gadget(1, 0);
        assert!(square_identity_holds(&a));
        let d = address_square_decomposition(&a);
        assert_eq!(d[&0].expand().unwrap(), "1/1 * y0_1^2".parse().unwrap());
        assert_eq!(d[&1].expand().unwrap(), "1/1 + -1/1 * y0_0".parse().unwrap());
    }

    #[test]
    fn square_decomposition_all_small_gadgets_with_size_bound() {
        for n in 0..=8 {
            for j in 0..=n {
                let a = gadget(n, j);
                assert!(square_identity_holds(&a), "n={n} j={j}");
                for c in address_square_decomposition(&a).values() {
                    assert!(c.measure().size <= 6 * (n as u64 + 1), "n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn product_decomposition_example() {
        let (j, c) = address_product_decomposition(&gadget(1, 0), &gadget(1, 1)).unwrap();
        assert_eq!(j, 0);
        assert_eq!(c.expand().unwrap(), "-1/1 * y0_1^2".parse().unwrap());
    }

    #[test]
    fn product_decomposition_exhaustive_small() {
        for n in 1..=8 {
            for j in 0..=n {
                for k in 0..=n {
                    if j == k {
                        continue;
                    }
                    let (a, b) = (gadget(n, j), gadget(n, k));
                    let (bit, c) = address_product_decomposition(&a, &b).unwrap();
                    assert!(bit < a.width(), "the top bit never separates");
                    let lhs = &a.circuit().expand().unwrap() * &b.circuit().expand().unwrap();
                    let rhs = &c.expand().unwrap() * &SparsePoly::boolean_axiom(a.vars()[bit as usize]);
                    assert_eq!(lhs, rhs, "n={n} j={j} k={k}");
                    assert!(c.measure().size <= 6 * (n as u64 + 1));
                }
            }
        }
        assert_eq!(address_product_decomposition(&gadget(2, 1), &gadget(2, 1)), Err(GadgetError::EqualAddresses(1)));
    }

    fn leaf(v: VarId) -> (Circuit, GadgetLedger) {
        (Circuit::leaf_var(v), GadgetLedger { entries: vec![], gate_map: vec![GateId(0)] })
    }

    #[test]
    fn leaf_certificate_is_unit() {
        let (c, ledger) = leaf(VarId::x(3));
        let cert = gate_square_certificate(&c, GateId(0), &ledger).unwrap();
        assert_eq!(cert.e.len(), 1);
        assert!(cert.f.is_empty());
        assert_eq!(cert.e[&VarId::x(3)].expand().unwrap(), SparsePoly::one());
    }

    #[test]
    fn minus_one_leaf_is_rejected() {
        let c = Circuit::leaf_const(int(-1));
        let ledger = GadgetLedger::default();
        assert!(matches!(gate_square_certificate(&c, GateId(0), &ledger), Err(RefuteError::ForbiddenConstant { .. })));
        let zero = Circuit::leaf_const(int(0));
        assert!(gate_square_certificate(&zero, GateId(0), &ledger).unwrap().e.is_empty());
    }

    fn sample_formula() -> Circuit {
        // (x1 * x2 + x3) * (x1 + 1)
        let mut b = CircuitBuilder::new();
        let (x1, x2, x3) = (b.var(VarId::x(1)), b.var(VarId::x(2)), b.var(VarId::x(3)));
        let m = b.mul(vec![x1, x2]);
        let s = b.add(vec![m, x3]);
        let x1b = b.var(VarId::x(1));
        let one = b.constant(int(1));
        let t = b.add(vec![x1b, one]);
        let p = b.mul(vec![s, t]);
        let root = b.add(vec![p]);
        b.finish(root)
    }

    #[test]
    fn every_gate_identity_holds() {
        let (c, ledger) = gadgetize(&sample_formula()).unwrap();
        let polys = c.expand_all().unwrap();
        let all = certify_all(&c, &ledger).unwrap();
        assert!(!all.is_empty());
        let metrics = c.gate_metrics();
        for (g, cert) in &all {
            assert!(cert.holds_for(&polys[g.index()]).unwrap(), "gate {g}");
            let bound = 100 * metrics[g.index()].size.pow(4);
            let m = cert.max_metrics();
            assert!(m.size <= bound);
            assert!(m.depth <= 2 * metrics[g.index()].depth);
        }
    }

    #[test]
    fn binary_sum_certificate_by_expansion() {
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.var(VarId::x(1)), b.var(VarId::x(2)));
        let root = b.add(vec![x1, x2]);
        let (c, ledger) = gadgetize(&b.finish(root)).unwrap();
        let cert = gate_square_certificate(&c, c.output(), &ledger).unwrap();
        assert!(cert.holds_for(&c.expand().unwrap()).unwrap());
        assert_eq!(cert.f.len(), 2);
        assert!(matches!(
            gate_square_certificate(&c, ledger.entries[0].summands[0].term, &ledger),
            Err(RefuteError::InternalGadgetGate(_))
        ));
    }

    #[test]
    fn ungadgetized_sum_is_rejected() {
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.var(VarId::x(1)), b.var(VarId::x(2)));
        let root = b.add(vec![x1, x2]);
        let c = b.finish(root);
        assert_eq!(
            gate_square_certificate(&c, c.output(), &GadgetLedger::default()),
            Err(RefuteError::UngadgetizedAddition(c.output()))
        );
    }

    fn combination(cert: &NullstellensatzCertificate) -> SparsePoly {
        let mut acc = SparsePoly::zero();
        for (ax, cof) in cert.axioms.iter().zip(&cert.cofactors) {
            acc = &acc + &(&cof.expand().unwrap() * &ax.form.expand().unwrap());
        }
        acc
    }

    #[test]
    fn refutation_of_single_variable() {
        let (c, ledger) = leaf(VarId::x(1));
        let cert = assemble_refutation(&c, &ledger).unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(cert.cofactor_for(INSTANCE_LABEL).unwrap().expand().unwrap(), "-1/2 + -1/2 * x1".parse().unwrap());
        assert_eq!(cert.cofactor_for("bool(x1)").unwrap().expand().unwrap(), SparsePoly::constant(ratio(1, 2)));
        assert_eq!(combination(&cert), SparsePoly::one());
    }

    #[test]
    fn refutation_of_constant_one() {
        let c = Circuit::leaf_const(int(1));
        let cert = assemble_refutation(&c, &GadgetLedger::default()).unwrap();
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.cofactors[0].expand().unwrap(), SparsePoly::constant(int(-1)));
        assert_eq!(combination(&cert), SparsePoly::one());
    }

    #[test]
    fn refutation_of_product_and_transformed_formula() {
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.var(VarId::x(1)), b.var(VarId::x(2)));
        let root = b.mul(vec![x1, x2]);
        let c = b.finish(root);
        let cert = assemble_refutation(&c, &GadgetLedger::default()).unwrap();
        assert_eq!(combination(&cert), SparsePoly::one());

        let (c, ledger) = gadgetize(&sample_formula()).unwrap();
        let cert = assemble_refutation(&c, &ledger).unwrap();
        assert_eq!(combination(&cert), SparsePoly::one());
        let m = c.measure();
        assert!(cert.total_metrics().size <= 100 * m.size.pow(5));
        assert!(cert.total_metrics().depth <= 2 * m.depth + 2);
    }

    #[test]
    fn other_shifts() {
        let (c, ledger) = gadgetize(&sample_formula()).unwrap();
        for shift in [int(-3), ratio(1, 2), int(5)] {
            let cert = assemble_refutation_with_shift(&c, &ledger, &shift).unwrap();
            assert_eq!(combination(&cert), SparsePoly::one(), "shift {shift}");
        }
        assert!(matches!(assemble_refutation_with_shift(&c, &ledger, &int(-1)), Err(RefuteError::SatisfiableShift(_))));
    }
}
