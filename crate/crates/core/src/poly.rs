//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`SparsePoly`] maps monomials to nonzero coefficients. Zero
//! coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::rational::{format_fraction, parse_rational, Rational};
use crate::var::VarId;

/// Largest number of terms any single operation may produce.
pub const MAX_TERMS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable {0} has no assigned value")]
    Unassigned(VarId),
    #[error("result would have {terms} terms, above the limit of {limit}")]
    TooLarge { terms: usize, limit: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A monomial as a sorted list of `(variable, exponent)` pairs with every
/// exponent at least one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeated variables
    /// and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (VarId, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|k| self.0[k].1).unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    /// Clamps every exponent to one.
    pub fn multilinear(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, _)| (v, 1)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    /// Sums the given terms, merging duplicate monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = SparsePoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|&(v, _)| v)).collect()
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Product with a bound on the number of distinct monomials produced.
    pub fn checked_mul(&self, other: &SparsePoly, limit: usize) -> Result<SparsePoly, PolyError> {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                        if acc.len() > limit {
                            return Err(PolyError::TooLarge { terms: acc.len(), limit });
                        }
                    }
                }
            }
        }
        Ok(SparsePoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    pub fn checked_add(&self, other: &SparsePoly, limit: usize) -> Result<SparsePoly, PolyError> {
        let out = self + other;
        if out.len() > limit {
            return Err(PolyError::TooLarge { terms: out.len(), limit });
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> SparsePoly {
        let mut out = SparsePoly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Evaluates at a point that assigns every occurring variable.
    pub fn evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, PolyError> {
        self.evaluate_with(|v| point.get(&v).cloned())
    }

    pub fn evaluate_with<F>(&self, mut value: F) -> Result<Rational, PolyError>
    where
        F: FnMut(VarId) -> Option<Rational>,
    {
        let mut cache: BTreeMap<VarId, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or(PolyError::Unassigned(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                term *= num_traits::pow(x, e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces assigned variables by polynomials; unassigned variables stay.
    pub fn substitute(&self, map: &BTreeMap<VarId, SparsePoly>) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = SparsePoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match map.get(&v) {
                    Some(p) => image = &image * &p.pow(e),
                    None => kept.push((v, e)),
                }
            }
            let kept = SparsePoly::monomial(Monomial(kept), Rational::one());
            out = &out + &(&image * &kept);
        }
        out
    }

    /// Substitutes constants for some variables.
    pub fn partial_evaluate(&self, point: &BTreeMap<VarId, Rational>) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.factors() {
                match point.get(&v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => kept.push((v, e)),
                }
            }
            out.add_term(Monomial(kept), coeff);
        }
        out
    }

    /// Reduces modulo the Boolean axioms `v^2 - v`: every exponent is clamped
    /// to one. The result agrees with `self` on every 0/1 point.
    pub fn multilinear_reduce(&self) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().map(|(m, c)| (m.multilinear(), c.clone())))
    }

    /// The polynomial `v^2 - v`.
    pub fn boolean_axiom(v: VarId) -> SparsePoly {
        SparsePoly::from_terms([
            (Monomial::from_factors([(v, 2)]), Rational::one()),
            (Monomial::var(v), -Rational::one()),
        ])
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next()
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, other: &SparsePoly) -> SparsePoly {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    /// Unbounded product; use [`SparsePoly::checked_mul`] when the size of
    /// the result is not known to be small.
    fn mul(self, other: &SparsePoly) -> SparsePoly {
        self.checked_mul(other, usize::MAX).expect("unbounded product")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, other: SparsePoly) -> SparsePoly {
                (&self).$method(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Text form: terms in canonical order joined by ` + `, each written as
/// `p/q * v1^e1 * v2` (exponent omitted when it is one). Zero is `0`.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&format_fraction(c))?;
            if !m.is_one() {
                write!(f, " * {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SparsePoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| PolyError::Parse(format!("{what} in `{s}`"));
        let mut out = SparsePoly::zero();
        if s.trim().is_empty() {
            return Err(bad("empty input"));
        }
        for term in s.split(" + ") {
            let mut coeff = Rational::one();
            let mut factors = Vec::new();
            for (k, factor) in term.split('*').map(str::trim).enumerate() {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if k == 0 {
                    if let Ok(c) = parse_rational(factor) {
                        coeff = c;
                        continue;
                    }
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let v: VarId = name.parse().map_err(|_| bad("bad variable"))?;
                factors.push((v, exp));
            }
            out.add_term(Monomial::from_factors(factors), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn x(i: u32) -> SparsePoly {
        SparsePoly::var(VarId::x(i))
    }

    fn c(v: i64) -> SparsePoly {
        SparsePoly::constant(int(v))
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(1) + &c(1)) * &(&x(1) - &c(1));
        assert_eq!(p.to_string(), "-1/1 + 1/1 * x1^2");
    }

    #[test]
    fn additive_identity() {
        let p = &x(1) * &x(2);
        assert_eq!(&p + &SparsePoly::zero(), p);
    }

    #[test]
    fn binomial_square() {
        let s = &x(1) + &x(2);
        let expected: SparsePoly = "1/1 * x1^2 + 2/1 * x1 * x2 + 1/1 * x2^2".parse().unwrap();
        assert_eq!(&s * &s, expected);
    }

    #[test]
    fn evaluation_examples() {
        let p = &x(1) * &x(2);
        let at = |a: i64, b: i64| {
            let pt = BTreeMap::from([(VarId::x(1), int(a)), (VarId::x(2), int(b))]);
            p.evaluate(&pt).unwrap()
        };
        assert_eq!(at(1, 1), int(1));
        assert_eq!(at(1, 0), int(0));

        let u = |i| SparsePoly::var(VarId::u(i));
        let half = (&c(1) + &(&u(1) * &u(2))).scale(&ratio(1, 2));
        let pt = BTreeMap::from([(VarId::u(1), int(1)), (VarId::u(2), int(1))]);
        assert_eq!(half.evaluate(&pt).unwrap(), int(1));
    }

    #[test]
    fn evaluation_names_missing_variable() {
        let p = &x(1) * &x(2);
        let pt = BTreeMap::from([(VarId::x(1), int(1))]);
        assert_eq!(p.evaluate(&pt), Err(PolyError::Unassigned(VarId::x(2))));
    }

    #[test]
    fn multilinear_reduce_examples() {
        let y = |i| VarId::y(0, i);
        let p = SparsePoly::monomial(Monomial::from_factors([(y(1), 2), (y(2), 3)]), int(1));
        let expected = SparsePoly::monomial(Monomial::from_factors([(y(1), 1), (y(2), 1)]), int(1));
        assert_eq!(p.multilinear_reduce(), expected);
        assert_eq!(expected.multilinear_reduce(), expected);
        assert!(SparsePoly::boolean_axiom(VarId::x(1)).multilinear_reduce().is_zero());
    }

    #[test]
    fn size_guard_trips() {
        let s = &(&x(1) + &x(2)) + &x(3);
        let err = s.checked_mul(&s, 4).unwrap_err();
        assert!(matches!(err, PolyError::TooLarge { limit: 4, .. }));
    }

    #[test]
    fn substitute_and_partial_evaluate_agree() {
        let p: SparsePoly = "3/1 * x1^2 * x2 + -1/2 * x2 + 5/1".parse().unwrap();
        let pt = BTreeMap::from([(VarId::x(1), ratio(2, 3))]);
        let by_poly = p.substitute(&BTreeMap::from([(VarId::x(1), SparsePoly::constant(ratio(2, 3)))]));
        assert_eq!(p.partial_evaluate(&pt), by_poly);
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/1 * ", "x1^a", "1/1 * q1", "1/1 + "] {
            assert!(bad.parse::<SparsePoly>().is_err(), "{bad}");
        }
        assert_eq!("0".parse::<SparsePoly>().unwrap(), SparsePoly::zero());
        assert_eq!("x1".parse::<SparsePoly>().unwrap(), x(1));
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        let term = (-4i64..5, 1i64..4, prop::collection::vec((1u32..5, 0u32..3), 0..3));
        prop::collection::vec(term, 0..5).prop_map(|terms| {
            SparsePoly::from_terms(terms.into_iter().map(|(n, d, fs)| {
                let m = Monomial::from_factors(fs.into_iter().map(|(i, e)| (VarId::x(i), e)));
                (m, ratio(n, d))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn text_form_round_trips(p in arb_poly()) {
            let back: SparsePoly = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn reduce_is_idempotent_and_agrees_on_cube(p in arb_poly(), mask in 0u32..16) {
            let r = p.multilinear_reduce();
            prop_assert_eq!(r.multilinear_reduce(), r.clone());
            prop_assert!(r.is_multilinear());
            let pt: BTreeMap<VarId, Rational> =
                (1..5).map(|i| (VarId::x(i), int(((mask >> (i - 1)) & 1) as i64))).collect();
            prop_assert_eq!(r.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap());
        }
    }

    #[test]
    fn reduce_agrees_with_evaluation_on_full_cube_of_twelve_variables() {
        // Non-multilinear polynomial touching all 12 variables.
        let mut p = SparsePoly::zero();
        for i in 1..=12u32 {
            let m = Monomial::from_factors([(VarId::x(i), i % 3 + 1), (VarId::x(i % 12 + 1), 2)]);
            p.add_term(m, int(i as i64 - 6));
        }
        p.add_term(Monomial::one(), ratio(1, 3));
        let r = p.multilinear_reduce();
        for mask in 0u32..(1 << 12) {
            let pt: BTreeMap<VarId, Rational> =
                (1..=12).map(|i| (VarId::x(i), int(((mask >> (i - 1)) & 1) as i64))).collect();
            assert_eq!(r.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap());
        }
    }
}
