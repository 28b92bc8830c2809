//! Arithmetic modulo a prime below `2^63` and circuit evaluation over it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::circuit::{Circuit, Gate};
use crate::poly::SparsePoly;
use crate::rational::{format_compact, Rational};
use crate::var::VarId;

/// `2^62 - 57`, the default modulus for randomized identity tests.
pub const DEFAULT_PRIME: u64 = (1 << 62) - 57;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime below 2^63")]
    BadModulus(u64),
    #[error("the constant {value} has a denominator divisible by {prime}")]
    NonInvertible { value: String, prime: u64 },
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 || p >= 1 << 63 || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below the modulus")
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// `p/q ↦ p · q^{-1}`.
    pub fn from_rational(&self, r: &Rational) -> Result<u64, FieldError> {
        let den = self.from_bigint(r.denom());
        let inv = self.inv(den).ok_or_else(|| FieldError::NonInvertible { value: format_compact(r), prime: self.p })?;
        Ok(self.mul(self.from_bigint(r.numer()), inv))
    }

    pub fn eval_poly(&self, p: &SparsePoly, point: &HashMap<VarId, u64>) -> Result<u64, FieldError> {
        let mut acc = 0;
        for (m, c) in p.terms() {
            let mut t = self.from_rational(c)?;
            for (v, e) in m.factors() {
                t = self.mul(t, self.pow(point[v], *e as u64));
            }
            acc = self.add(acc, t);
        }
        Ok(acc)
    }
}

/// A circuit with its constants reduced modulo a prime.
#[derive(Debug, Clone)]
pub struct FieldCircuit {
    field: PrimeField,
    ops: Vec<FieldOp>,
    output: usize,
}

#[derive(Debug, Clone)]
enum FieldOp {
    Var(VarId),
    Const(u64),
    Add(Vec<usize>),
    Mul(Vec<usize>),
}

impl FieldCircuit {
    pub fn new(field: PrimeField, c: &Circuit) -> Result<Self, FieldError> {
        let ops = c
            .gates()
            .iter()
            .map(|g| {
                Ok(match g {
                    Gate::Var(v) => FieldOp::Var(*v),
                    Gate::Const(x) => FieldOp::Const(field.from_rational(x)?),
                    Gate::Add(ch) => FieldOp::Add(ch.iter().map(|k| k.index()).collect()),
                    Gate::Mul(ch) => FieldOp::Mul(ch.iter().map(|k| k.index()).collect()),
                })
            })
            .collect::<Result<Vec<_>, FieldError>>()?;
        Ok(FieldCircuit { field, ops, output: c.output().index() })
    }

    /// Value at `point`; every variable of the circuit must be assigned.
    pub fn eval(&self, point: &HashMap<VarId, u64>, scratch: &mut Vec<u64>) -> u64 {
        let f = &self.field;
        scratch.clear();
        for op in &self.ops {
            let v = match op {
                FieldOp::Var(v) => point[v],
                FieldOp::Const(c) => *c,
                FieldOp::Add(ch) => ch.iter().fold(0, |a, k| f.add(a, scratch[*k])),
                FieldOp::Mul(ch) => ch.iter().fold(1, |a, k| f.mul(a, scratch[*k])),
            };
            scratch.push(v);
        }
        scratch[self.output]
    }
}
