//! Variable identifiers.
//!
//! A variable is a namespace letter plus up to three integer indices, written
//! as text like `x3`, `y7_0` or `v1_2_4`. Ordering is lexicographic on
//! `(namespace, indices)` and never depends on allocation order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const MAX_INDICES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    /// Input variables of a source formula.
    X,
    /// Addressing-gadget variables introduced by the transform.
    Y,
    /// Row/column variables of the interval polynomials.
    U,
    /// Gadget variables of the interval polynomials.
    W,
    /// Split variables of the interval polynomials.
    V,
    /// Subset-sum variables.
    Z,
    /// Placeholder variables.
    Fresh,
}

impl Namespace {
    pub fn letter(self) -> char {
        match self {
            Namespace::X => 'x',
            Namespace::Y => 'y',
            Namespace::U => 'u',
            Namespace::W => 'w',
            Namespace::V => 'v',
            Namespace::Z => 'z',
            Namespace::Fresh => 't',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'x' => Namespace::X,
            'y' => Namespace::Y,
            'u' => Namespace::U,
            'w' => Namespace::W,
            'v' => Namespace::V,
            'z' => Namespace::Z,
            't' => Namespace::Fresh,
            _ => return None,
        })
    }
}

/// Role of a `w` variable attached to an interval.
pub const W_TOP: u32 = 0;
pub const W_LEAF: u32 = 1;
/// Address bit `b` of an interval is stored as `W_ADDR + b`.
pub const W_ADDR: u32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId {
    ns: Namespace,
    len: u8,
    idx: [u32; MAX_INDICES],
}

impl VarId {
    pub fn new(ns: Namespace, indices: &[u32]) -> Self {
        assert!(!indices.is_empty() && indices.len() <= MAX_INDICES, "a variable carries one to three indices");
        let mut idx = [0; MAX_INDICES];
        idx[..indices.len()].copy_from_slice(indices);
        VarId { ns, len: indices.len() as u8, idx }
    }

    pub fn x(i: u32) -> Self {
        Self::new(Namespace::X, &[i])
    }

    pub fn y(gate: u32, bit: u32) -> Self {
        Self::new(Namespace::Y, &[gate, bit])
    }

    pub fn u(i: u32) -> Self {
        Self::new(Namespace::U, &[i])
    }

    pub fn v(i: u32, r: u32, j: u32) -> Self {
        Self::new(Namespace::V, &[i, r, j])
    }

    pub fn w_top(i: u32, j: u32) -> Self {
        Self::new(Namespace::W, &[i, j, W_TOP])
    }

    pub fn w_leaf(i: u32, j: u32) -> Self {
        Self::new(Namespace::W, &[i, j, W_LEAF])
    }

    pub fn w_addr(i: u32, j: u32, bit: u32) -> Self {
        Self::new(Namespace::W, &[i, j, W_ADDR + bit])
    }

    pub fn z(i: u32) -> Self {
        Self::new(Namespace::Z, &[i])
    }

    pub fn z_pair(i: u32, j: u32) -> Self {
        Self::new(Namespace::Z, &[i, j])
    }

    pub fn fresh(k: u32) -> Self {
        Self::new(Namespace::Fresh, &[k])
    }

    pub fn namespace(&self) -> Namespace {
        self.ns
    }

    pub fn indices(&self) -> &[u32] {
        &self.idx[..self.len as usize]
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ns.cmp(&other.ns).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ns.letter())?;
        for (k, i) in self.indices().iter().enumerate() {
            if k > 0 {
                f.write_str("_")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid variable name `{0}`")]
pub struct ParseVarError(pub String);

impl FromStr for VarId {
    type Err = ParseVarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseVarError(s.to_string());
        let mut chars = s.chars();
        let ns = chars.next().and_then(Namespace::from_letter).ok_or_else(err)?;
        let rest = chars.as_str();
        let mut indices = Vec::new();
        for part in rest.split('_') {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            // Leading zeros would break the text round trip.
            if part.len() > 1 && part.starts_with('0') {
                return Err(err());
            }
            indices.push(part.parse::<u32>().map_err(|_| err())?);
        }
        if indices.is_empty() || indices.len() > MAX_INDICES {
            return Err(err());
        }
        Ok(VarId::new(ns, &indices))
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_namespace_then_indices() {
        let mut vars = [VarId::u(1), VarId::y(3, 0), VarId::x(10), VarId::x(2), VarId::y(2, 5), VarId::w_top(1, 2)];
        vars.sort();
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["x2", "x10", "y2_5", "y3_0", "u1", "w1_2_0"]);
    }

    #[test]
    fn shorter_index_sorts_first() {
        assert!(VarId::z(1) < VarId::z_pair(1, 0));
        assert_ne!(VarId::z(1), VarId::z_pair(1, 0));
    }

    #[test]
    fn text_round_trip() {
        for v in [VarId::x(1), VarId::v(1, 2, 4), VarId::fresh(0), VarId::z_pair(3, 4)] {
            assert_eq!(v.to_string().parse::<VarId>().unwrap(), v);
        }
        for bad in ["", "q1", "x", "x_1", "x01", "x1_", "x1_2_3_4", "x-1"] {
            assert!(bad.parse::<VarId>().is_err(), "{bad}");
        }
    }
}
