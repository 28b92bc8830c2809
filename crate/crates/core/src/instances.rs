//! Explicit instance families: the interval polynomials `F(u, v)` and
//! `P(u, w)`, the instance `2 - P` with its functional refutation, and
//! (lifted) subset-sum.
//!
//! Intervals `[i, j]` of even length recurse on `[i+1, j-1]` and on the
//! splits `[i, r]`, `[r+1, j]` with `r - i` odd, so both halves have even
//! length. An interval of length `l` has `(l - 2) / 2` splits; the split
//! `r` has address `(r - i - 1) / 2`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitBuilder, GateId};
use crate::gadget::{address_width, AddressingGadget};
use crate::poly::{Monomial, SparsePoly};
use crate::rational::{format_compact, int, Rational};
use crate::refute::AxiomForm;
use crate::var::{Namespace, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("parameter n must be at least {min}, got {got}")]
    TooSmall { min: u32, got: u32 },
    #[error("beta = {0} is attainable, so the instance is satisfiable")]
    Satisfiable(String),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error(transparent)]
    Circuit(#[from] crate::circuit::CircuitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalKey {
    pub i: u32,
    pub j: u32,
}

impl IntervalKey {
    pub fn new(i: u32, j: u32) -> Self {
        IntervalKey { i, j }
    }

    pub fn len(&self) -> u32 {
        (self.j + 1).saturating_sub(self.i)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inner(&self) -> IntervalKey {
        IntervalKey::new(self.i + 1, self.j - 1)
    }

    /// Split points `r` with both halves of even length.
    pub fn splits(&self) -> Vec<u32> {
        if self.len() < 4 {
            return Vec::new();
        }
        (self.i + 1..self.j - 1).step_by(2).collect()
    }

    pub fn split_address(&self, r: u32) -> u32 {
        (r - self.i - 1) / 2
    }
}

/// The `w` variables of one interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WVarSet {
    pub interval: IntervalKey,
    pub top: VarId,
    pub leaf: VarId,
    pub address: Vec<VarId>,
}

impl WVarSet {
    fn new(key: IntervalKey) -> Self {
        let splits = key.splits().len() as u32;
        let address = if splits == 0 {
            Vec::new()
        } else {
            (0..=address_width(splits - 1)).map(|b| VarId::w_addr(key.i, key.j, b)).collect()
        };
        WVarSet { interval: key, top: VarId::w_top(key.i, key.j), leaf: VarId::w_leaf(key.i, key.j), address }
    }

    pub fn gadget(&self, r: u32) -> AddressingGadget {
        let n = self.interval.splits().len() as u32 - 1;
        AddressingGadget::new(n, self.interval.split_address(r), self.address.clone())
            .expect("address sized for the valid splits")
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        [self.top, self.leaf].into_iter().chain(self.address.iter().copied())
    }
}

fn root_interval(n: u32) -> Result<IntervalKey, InstanceError> {
    if n == 0 {
        return Err(InstanceError::TooSmall { min: 1, got: n });
    }
    Ok(IntervalKey::new(1, 2 * n))
}

/// `1 + u_i u_j`.
fn one_plus_pair(b: &mut CircuitBuilder, i: u32, j: u32) -> GateId {
    let one = b.constant(Rational::one());
    let (ui, uj) = (b.var(VarId::u(i)), b.var(VarId::u(j)));
    let m = b.mul(vec![ui, uj]);
    b.add(vec![one, m])
}

/// Circuit for `F(u, v) = f_{1,2n}` with one shared gate per interval.
pub fn ry_circuit(n: u32) -> Result<Circuit, InstanceError> {
    fn build(key: IntervalKey, b: &mut CircuitBuilder, memo: &mut HashMap<IntervalKey, GateId>) -> Option<GateId> {
        if key.is_empty() {
            return None;
        }
        if let Some(&g) = memo.get(&key) {
            return Some(g);
        }
        let mut keep = vec![one_plus_pair(b, key.i, key.j)];
        keep.extend(build(key.inner(), b, memo));
        let mut terms = vec![b.product(keep)];
        for r in key.splits() {
            let mut factors = vec![b.var(VarId::v(key.i, r, key.j))];
            factors.extend(build(IntervalKey::new(key.i, r), b, memo));
            factors.extend(build(IntervalKey::new(r + 1, key.j), b, memo));
            terms.push(b.mul(factors));
        }
        let g = b.sum(terms);
        memo.insert(key, g);
        Some(g)
    }
    let root = root_interval(n)?;
    let mut b = CircuitBuilder::new();
    let out = build(root, &mut b, &mut HashMap::new()).expect("nonempty interval");
    Ok(b.finish(out))
}

/// Intervals reached from `[1, 2n]`, in increasing order.
pub fn reached_intervals(n: u32) -> Result<Vec<IntervalKey>, InstanceError> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![root_interval(n)?];
    while let Some(key) = stack.pop() {
        if key.is_empty() || !seen.insert(key) {
            continue;
        }
        stack.push(key.inner());
        for r in key.splits() {
            stack.push(IntervalKey::new(key.i, r));
            stack.push(IntervalKey::new(r + 1, key.j));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Circuit for `P(u, w) = p_{1,2n}` and the `w` variables of every reached
/// interval.
pub fn gadgeted_ry_circuit(n: u32) -> Result<(Circuit, Vec<WVarSet>), InstanceError> {
    let sets: BTreeMap<IntervalKey, WVarSet> =
        reached_intervals(n)?.into_iter().map(|k| (k, WVarSet::new(k))).collect();

    fn build(
        key: IntervalKey,
        sets: &BTreeMap<IntervalKey, WVarSet>,
        b: &mut CircuitBuilder,
        memo: &mut HashMap<IntervalKey, GateId>,
    ) -> Option<GateId> {
        if key.is_empty() {
            return None;
        }
        if let Some(&g) = memo.get(&key) {
            return Some(g);
        }
        let w = &sets[&key];
        let not_top = b.one_minus(w.top);
        let not_leaf = b.one_minus(w.leaf);
        let (leaf, ui, uj) = (b.var(w.leaf), b.var(VarId::u(key.i)), b.var(VarId::u(key.j)));
        let pair = b.mul(vec![leaf, ui, uj]);
        let select = b.add(vec![not_leaf, pair]);
        let mut keep = vec![not_top, select];
        keep.extend(build(key.inner(), sets, b, memo));
        let mut terms = vec![b.mul(keep)];

        let splits = key.splits();
        if !splits.is_empty() {
            let mut summands = Vec::with_capacity(splits.len());
            for r in splits {
                let mut factors = w.gadget(r).push_factors(b);
                factors.extend(build(IntervalKey::new(key.i, r), sets, b, memo));
                factors.extend(build(IntervalKey::new(r + 1, key.j), sets, b, memo));
                summands.push(b.product(factors));
            }
            let top = b.var(w.top);
            let sum = b.sum(summands);
            terms.push(b.mul(vec![top, sum]));
        }
        let g = b.sum(terms);
        memo.insert(key, g);
        Some(g)
    }

    let root = root_interval(n)?;
    let mut b = CircuitBuilder::new();
    let out = build(root, &sets, &mut b, &mut HashMap::new()).expect("nonempty interval");
    Ok((b.finish(out), sets.into_values().collect()))
}

/// Generator name, parameters and conventions of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, String>,
    pub conventions: Vec<String>,
}

impl Provenance {
    pub fn new(generator: &str, params: &[(&str, String)], conventions: &[&str]) -> Self {
        Provenance {
            generator: generator.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            conventions: conventions.iter().map(|s| s.to_string()).collect(),
        }
    }
}

pub const INTERVAL_CONVENTIONS: [&str; 4] = [
    "splits r of [i,j] satisfy r - i odd; the split r has address (r - i - 1)/2",
    "an interval of length l with l >= 4 has (l - 2)/2 splits and t + 1 address bits, t minimal with 2^t > (l - 2)/2 - 1",
    "w<i>_<j>_0 is w_top, w<i>_<j>_1 is w_leaf, w<i>_<j>_<2+b> is address bit b (least significant first)",
    "only intervals reached from [1, 2n] carry w variables",
];

/// An unsatisfiable instance with a functional refutation: a polynomial
/// `G` with `G · instance ≡ 1` modulo the Boolean axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceBundle {
    pub instance: AxiomForm,
    pub refutation: AxiomForm,
    pub provenance: Provenance,
}

impl InstanceBundle {
    /// `reduce(refutation · instance) - 1`; zero when the refutation is valid.
    pub fn defect(&self) -> Result<SparsePoly, InstanceError> {
        let f = self.instance.expand()?;
        let g = self.refutation.expand()?;
        Ok(&(&f * &g).multilinear_reduce() - &SparsePoly::one())
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for form in [&self.instance, &self.refutation] {
            out.extend(match form {
                AxiomForm::Poly(p) => p.variables(),
                AxiomForm::Circuit(c) => c.variables(),
            });
        }
        out
    }
}

/// `2 - f` and `(1 + f)/2` for a circuit `f` with 0/1 values on the cube.
pub fn functional_refutation(f: &Circuit) -> (Circuit, Circuit) {
    let mut b = CircuitBuilder::new();
    let two = b.constant(int(2));
    let neg = b.constant(int(-1));
    let g = b.import_circuit(f);
    let minus = b.mul(vec![neg, g]);
    let root = b.add(vec![two, minus]);
    let instance = b.finish(root);

    let mut b = CircuitBuilder::new();
    let half = b.constant(Rational::new(1.into(), 2.into()));
    let one = b.constant(Rational::one());
    let g = b.import_circuit(f);
    let sum = b.add(vec![one, g]);
    let root = b.mul(vec![half, sum]);
    (instance, b.finish(root))
}

/// `2 - P` with refutation `(1 + P)/2`.
pub fn mnc_instance(n: u32) -> Result<InstanceBundle, InstanceError> {
    let (p, _) = gadgeted_ry_circuit(n)?;
    let (instance, refutation) = functional_refutation(&p);
    Ok(InstanceBundle {
        instance: AxiomForm::Circuit(instance),
        refutation: AxiomForm::Circuit(refutation),
        provenance: Provenance::new("mnc", &[("n", n.to_string())], &INTERVAL_CONVENTIONS),
    })
}

fn binomial(n: u64, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

/// Coefficients `α_0..α_n` solving `Σ_{k'≤k} α_{k'} C(k, k') = 1/(k - β)`.
pub fn subset_sum_alphas(n_vars: u32, beta: &Rational) -> Result<Vec<Rational>, InstanceError> {
    check_beta(n_vars, beta)?;
    let mut alphas: Vec<Rational> = Vec::with_capacity(n_vars as usize + 1);
    for k in 0..=n_vars as u64 {
        let target = Rational::one() / (Rational::from_integer(k.into()) - beta);
        let known = alphas.iter().enumerate().fold(Rational::zero(), |acc, (kp, a)| acc + a * binomial(k, kp as u64));
        alphas.push(target - known);
    }
    Ok(alphas)
}

fn check_beta(n_vars: u32, beta: &Rational) -> Result<(), InstanceError> {
    if beta.is_integer() && *beta >= Rational::zero() && *beta <= Rational::from_integer(n_vars.into()) {
        return Err(InstanceError::Satisfiable(format_compact(beta)));
    }
    Ok(())
}

/// Elementary symmetric polynomials `e_0..e_n` of `vars`.
pub fn elementary_symmetric(vars: &[VarId]) -> Vec<SparsePoly> {
    let mut e = vec![SparsePoly::one()];
    for v in vars {
        let x = SparsePoly::var(*v);
        e.push(SparsePoly::zero());
        for k in (1..e.len()).rev() {
            e[k] = &e[k] + &(&e[k - 1] * &x);
        }
    }
    e
}

fn subset_sum_over(vars: &[VarId], beta: &Rational) -> Result<(SparsePoly, SparsePoly), InstanceError> {
    let alphas = subset_sum_alphas(vars.len() as u32, beta)?;
    let e = elementary_symmetric(vars);
    let mut g = SparsePoly::zero();
    for (a, ek) in alphas.iter().zip(&e) {
        g = &g + &ek.scale(a);
    }
    let f = &e[1] - &SparsePoly::constant(beta.clone());
    Ok((f, g))
}

/// `Σ_i z_i - β` with refutation `Σ_k α_k e_k(z)`.
pub fn subset_sum(n_vars: u32, beta: &Rational) -> Result<InstanceBundle, InstanceError> {
    let vars: Vec<VarId> = (1..=n_vars).map(VarId::z).collect();
    let (f, g) = subset_sum_over(&vars, beta)?;
    Ok(InstanceBundle {
        instance: AxiomForm::Poly(f),
        refutation: AxiomForm::Poly(g),
        provenance: Provenance::new(
            "subset-sum",
            &[("n_vars", n_vars.to_string()), ("beta", format_compact(beta))],
            &["alpha_k solved from sum_{k' <= k} alpha_{k'} C(k, k') = 1/(k - beta)"],
        ),
    })
}

pub fn default_subset_sum_beta(n_vars: u32) -> Rational {
    Rational::from_integer((n_vars + 1).into())
}

fn pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// `Σ_{i<j} z_ij x_i x_j - β` with refutation `ml[g(z_ij ↦ z_ij x_i x_j)]`.
pub fn lifted_subset_sum(n: u32, beta: &Rational) -> Result<InstanceBundle, InstanceError> {
    if n < 2 {
        return Err(InstanceError::TooSmall { min: 2, got: n });
    }
    let edges = pairs(n);
    let zs: Vec<VarId> = edges.iter().map(|&(i, j)| VarId::z_pair(i, j)).collect();
    let (f, g) = subset_sum_over(&zs, beta)?;
    let lift: BTreeMap<VarId, SparsePoly> = edges
        .iter()
        .zip(&zs)
        .map(|(&(i, j), z)| {
            let m = Monomial::from_factors([(*z, 1), (VarId::x(i), 1), (VarId::x(j), 1)]);
            (*z, SparsePoly::monomial(m, Rational::one()))
        })
        .collect();
    let instance = f.substitute(&lift);
    let refutation = g.substitute(&lift).multilinear_reduce();
    Ok(InstanceBundle {
        instance: AxiomForm::Poly(instance),
        refutation: AxiomForm::Poly(refutation),
        provenance: Provenance::new(
            "lifted-subset-sum",
            &[("n", n.to_string()), ("beta", format_compact(beta))],
            &["z<i>_<j> for i < j; refutation is the multilinear image of the subset-sum refutation"],
        ),
    })
}

pub fn default_lifted_beta(n: u32) -> Rational {
    Rational::from_integer((n * n.saturating_sub(1) / 2 + 1).into())
}

/// Terms of `g` with exactly `C(l, 2)` z-variables and `l` x-variables,
/// divided by the coefficient of the first such term.
pub fn extract_clique_component(g: &SparsePoly, l: u32) -> SparsePoly {
    let edges = (l * l.saturating_sub(1) / 2) as usize;
    let count = |m: &Monomial, ns: Namespace| m.factors().iter().filter(|(v, _)| v.namespace() == ns).count();
    let part = g.filter_terms(|m| count(m, Namespace::Z) == edges && count(m, Namespace::X) == l as usize);
    match part.leading_coefficient() {
        Some(c) => part.scale(&(Rational::one() / c)),
        None => part,
    }
}

/// `Σ_{|V|=l} Π_{e ⊆ V} z_e Π_{i ∈ V} x_i` over vertices `1..=n`.
pub fn clique_polynomial(n: u32, l: u32) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for mask in 0u64..1 << n {
        if mask.count_ones() != l {
            continue;
        }
        let vs: Vec<u32> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let mut factors: Vec<(VarId, u32)> = vs.iter().map(|&i| (VarId::x(i), 1)).collect();
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                factors.push((VarId::z_pair(i, j), 1));
            }
        }
        out.add_term(Monomial::from_factors(factors), Rational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::verify::{boolean_image, poly_image, zero_one};

    fn poly(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn interval_splits() {
        assert!(IntervalKey::new(1, 2).splits().is_empty());
        assert_eq!(IntervalKey::new(1, 4).splits(), vec![2]);
        assert_eq!(IntervalKey::new(1, 8).splits(), vec![2, 4, 6]);
        assert_eq!(IntervalKey::new(3, 8).split_address(6), 1);
        assert!(IntervalKey::new(3, 2).is_empty());
    }

    #[test]
    fn ry_small_cases() {
        assert_eq!(ry_circuit(1).unwrap().expand().unwrap(), poly("1/1 + 1/1 * u1 * u2"));
        let expected = &(&poly("1/1 + 1/1 * u1 * u4") * &poly("1/1 + 1/1 * u2 * u3"))
            + &(&poly("1/1 * v1_2_4") * &(&poly("1/1 + 1/1 * u1 * u2") * &poly("1/1 + 1/1 * u3 * u4")));
        assert_eq!(ry_circuit(2).unwrap().expand().unwrap(), expected);
        for n in 1..=4 {
            let c = ry_circuit(n).unwrap();
            assert!(c.is_syntactically_multilinear());
            assert!(!c.is_formula() || n < 3);
        }
        assert!(ry_circuit(0).is_err());
    }

    #[test]
    fn gadgeted_n1() {
        let (p, sets) = gadgeted_ry_circuit(1).unwrap();
        assert_eq!(sets.len(), 1);
        assert!(sets[0].address.is_empty());
        let expected = &poly("1/1 + -1/1 * w1_2_0") * &poly("1/1 + -1/1 * w1_2_1 + 1/1 * u1 * u2 * w1_2_1");
        assert_eq!(p.expand().unwrap(), expected);
        let image = boolean_image(&p, 16, 0, 0);
        assert_eq!(image.points, 16);
        assert_eq!(image.values(), zero_one());
    }

    #[test]
    fn gadgeted_n2_shape_and_image() {
        let (p, sets) = gadgeted_ry_circuit(2).unwrap();
        assert_eq!(p.variables().len(), 13);
        let keys: Vec<IntervalKey> = sets.iter().map(|s| s.interval).collect();
        assert_eq!(
            keys,
            vec![IntervalKey::new(1, 2), IntervalKey::new(1, 4), IntervalKey::new(2, 3), IntervalKey::new(3, 4)]
        );
        assert!(p.is_syntactically_multilinear());
        let vars: Vec<VarId> = p.variables().into_iter().collect();
        assert_eq!(poly_image(&p.expand().unwrap(), &vars), zero_one());
    }

    #[test]
    fn top_branch_reduces_to_split_product() {
        let (p, sets) = gadgeted_ry_circuit(3).unwrap();
        let whole = p.expand().unwrap();
        let root = sets.iter().find(|s| s.interval == IntervalKey::new(1, 6)).unwrap();
        for r in [2, 4] {
            let g = root.gadget(r);
            let mut point = BTreeMap::from([(root.top, Rational::one())]);
            for (b, v) in root.address.iter().enumerate() {
                point.insert(*v, Rational::from_integer(u64::from(g.bit(b as u32)).into()));
            }
            let reduced = whole.partial_evaluate(&point).multilinear_reduce();
            let left = gadgeted_sub(&sets, IntervalKey::new(1, r));
            let right = gadgeted_sub(&sets, IntervalKey::new(r + 1, 6));
            assert_eq!(reduced, (&left * &right).multilinear_reduce(), "r = {r}");
        }
    }

    /// Direct polynomial recursion for `p_{i,j}`.
    fn gadgeted_sub(sets: &[WVarSet], key: IntervalKey) -> SparsePoly {
        fn p(sets: &BTreeMap<IntervalKey, &WVarSet>, key: IntervalKey) -> SparsePoly {
            if key.is_empty() {
                return SparsePoly::one();
            }
            let w = sets[&key];
            let top = SparsePoly::var(w.top);
            let leaf = SparsePoly::var(w.leaf);
            let one = SparsePoly::one();
            let pair = &(&leaf * &SparsePoly::var(VarId::u(key.i))) * &SparsePoly::var(VarId::u(key.j));
            let keep = &(&(&one - &top) * &(&(&one - &leaf) + &pair)) * &p(sets, key.inner());
            let mut split = SparsePoly::zero();
            for r in key.splits() {
                let g = w.gadget(r).circuit().expand().unwrap();
                split =
                    &split + &(&(&g * &p(sets, IntervalKey::new(key.i, r))) * &p(sets, IntervalKey::new(r + 1, key.j)));
            }
            &keep + &(&top * &split)
        }
        let map: BTreeMap<IntervalKey, &WVarSet> = sets.iter().map(|s| (s.interval, s)).collect();
        p(&map, key)
    }

    #[test]
    fn circuit_matches_direct_recursion() {
        for n in 1..=3 {
            let (c, sets) = gadgeted_ry_circuit(n).unwrap();
            let direct = gadgeted_sub(&sets, IntervalKey::new(1, 2 * n));
            assert_eq!(c.expand().unwrap(), direct, "n = {n}");
        }
    }

    #[test]
    fn mnc_refutation_reduces_to_one() {
        for n in 1..=2 {
            assert!(mnc_instance(n).unwrap().defect().unwrap().is_zero());
        }
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.var(VarId::x(1)), b.var(VarId::x(2)));
        let root = b.mul(vec![x1, x2]);
        let (inst, refu) = functional_refutation(&b.finish(root));
        let prod = &inst.expand().unwrap() * &refu.expand().unwrap();
        assert_eq!(prod.multilinear_reduce(), SparsePoly::one());
    }

    fn closed_form_alpha(k: u32, beta: &Rational) -> Rational {
        let mut num = Rational::one();
        for i in 1..=k {
            num *= Rational::from_integer(i.into());
        }
        if k % 2 == 1 {
            num = -num;
        }
        let den = (0..=k).fold(Rational::one(), |acc, i| acc * (Rational::from_integer(i.into()) - beta));
        num / den
    }

    #[test]
    fn alphas_match_closed_form() {
        assert_eq!(subset_sum_alphas(1, &int(2)).unwrap(), vec![ratio(-1, 2), ratio(-1, 2)]);
        for n in [1, 4, 10] {
            for beta in [int(n as i64 + 1), int(n as i64 * n as i64 + 1), ratio(7, 3), int(-5)] {
                let alphas = subset_sum_alphas(n, &beta).unwrap();
                for (k, a) in alphas.iter().enumerate() {
                    assert_eq!(*a, closed_form_alpha(k as u32, &beta));
                    assert!(!a.is_zero());
                }
            }
        }
    }

    #[test]
    fn subset_sum_refutation() {
        let b = subset_sum(1, &int(2)).unwrap();
        assert_eq!(b.refutation.expand().unwrap(), poly("-1/2 + -1/2 * z1"));
        assert!(b.defect().unwrap().is_zero());
        for n in [3, 6] {
            assert!(subset_sum(n, &default_subset_sum_beta(n)).unwrap().defect().unwrap().is_zero());
        }
        assert!(matches!(subset_sum(3, &int(2)), Err(InstanceError::Satisfiable(_))));
        assert!(subset_sum(3, &int(0)).is_err());
        assert!(subset_sum(3, &ratio(1, 2)).is_ok());
    }

    #[test]
    fn lifted_two_vertices() {
        let b = lifted_subset_sum(2, &int(2)).unwrap();
        assert_eq!(b.refutation.expand().unwrap(), poly("-1/2 + -1/2 * x1 * x2 * z1_2"));
        assert!(b.defect().unwrap().is_zero());
        assert_eq!(default_lifted_beta(3), int(4));
    }

    #[test]
    fn clique_component() {
        let b = lifted_subset_sum(4, &default_lifted_beta(4)).unwrap();
        let g = b.refutation.expand().unwrap();
        assert!(g.is_multilinear());
        assert_eq!(extract_clique_component(&g, 2), clique_polynomial(4, 2));
        assert_eq!(extract_clique_component(&g, 3), clique_polynomial(4, 3));
        assert_eq!(extract_clique_component(&g, 0), SparsePoly::one());
        assert!(extract_clique_component(&SparsePoly::zero(), 2).is_zero());
    }
}
