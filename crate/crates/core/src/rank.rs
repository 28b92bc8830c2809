//! Partition coefficient matrices, exact rank, and full-rank witnesses for
//! the interval polynomial `P(u, w)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exec::{self, Strategy};
use crate::instances::{gadgeted_ry_circuit, InstanceError, IntervalKey, WVarSet};
use crate::poly::SparsePoly;
use crate::rational::{ratio, Rational};
use crate::var::{ParseVarError, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RankError {
    #[error("partition sides must be disjoint and of equal size")]
    BadPartition,
    #[error("cannot parse partition `{0}`; expected e.g. `u1,u3|u2,u4`")]
    Parse(String),
    #[error(transparent)]
    Var(#[from] ParseVarError),
    #[error("the polynomial is not multilinear")]
    NotMultilinear,
    #[error("variable {0} is on neither side of the partition")]
    ForeignVariable(VarId),
    #[error("the partition does not cover u1..u{0}")]
    NotCovering(u32),
    #[error("interval [{i},{j}] is not balanced under the partition")]
    Unbalanced { i: u32, j: u32 },
    #[error("interval [{i},{j}] has no balancing split")]
    NoBalancingSplit { i: u32, j: u32 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Circuit(#[from] crate::circuit::CircuitError),
}

/// An equipartition of variables into row (`y`) and column (`z`) sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    y: Vec<VarId>,
    z: Vec<VarId>,
}

impl Partition {
    pub fn new(y: impl IntoIterator<Item = VarId>, z: impl IntoIterator<Item = VarId>) -> Result<Self, RankError> {
        let y: BTreeSet<VarId> = y.into_iter().collect();
        let z: BTreeSet<VarId> = z.into_iter().collect();
        if y.len() != z.len() || !y.is_disjoint(&z) {
            return Err(RankError::BadPartition);
        }
        Ok(Partition { y: y.into_iter().collect(), z: z.into_iter().collect() })
    }

    pub fn y(&self) -> &[VarId] {
        &self.y
    }

    pub fn z(&self) -> &[VarId] {
        &self.z
    }

    /// `Some(true)` on the row side, `Some(false)` on the column side.
    pub fn side(&self, v: VarId) -> Option<bool> {
        if self.y.binary_search(&v).is_ok() {
            Some(true)
        } else if self.z.binary_search(&v).is_ok() {
            Some(false)
        } else {
            None
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vs: &[VarId]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.y), join(&self.z))
    }
}

impl FromStr for Partition {
    type Err = RankError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('|').ok_or_else(|| RankError::Parse(s.to_string()))?;
        let side = |t: &str| -> Result<Vec<VarId>, RankError> {
            t.split(',').map(str::trim).filter(|p| !p.is_empty()).map(|p| p.parse().map_err(RankError::from)).collect()
        };
        let (y, z) = (side(a)?, side(b)?);
        let (ny, nz) = (y.len(), z.len());
        let p = Partition::new(y, z)?;
        if p.y.len() != ny || p.z.len() != nz {
            return Err(RankError::BadPartition);
        }
        Ok(p)
    }
}

/// Partitions of `u1..u2n` up to swapping sides: those with `u1` on the
/// row side, in order of the row bitmask.
pub fn balanced_partitions(n: u32) -> Vec<Partition> {
    let m = 2 * n;
    (0u64..1 << m)
        .filter(|mask| mask & 1 == 1 && mask.count_ones() == n)
        .map(|mask| {
            let (y, z): (Vec<u32>, Vec<u32>) = (1..=m).partition(|i| mask >> (i - 1) & 1 == 1);
            Partition::new(y.into_iter().map(VarId::u), z.into_iter().map(VarId::u)).expect("equal sides")
        })
        .collect()
}

/// `entries[a][b]` is the coefficient of `m_y(a) · m_z(b)`, where bit `k`
/// of `a` (resp. `b`) selects the `k`-th row (resp. column) variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    pub rows: Vec<VarId>,
    pub cols: Vec<VarId>,
    pub entries: Vec<Vec<Rational>>,
}

pub fn rank_matrix(f: &SparsePoly, p: &Partition) -> Result<RankMatrix, RankError> {
    if !f.is_multilinear() {
        return Err(RankError::NotMultilinear);
    }
    let (ny, nz) = (p.y.len(), p.z.len());
    let mut entries = vec![vec![Rational::zero(); 1 << nz]; 1 << ny];
    for (m, c) in f.terms() {
        let (mut a, mut b) = (0usize, 0usize);
        for (v, _) in m.factors() {
            if let Ok(k) = p.y.binary_search(v) {
                a |= 1 << k;
            } else if let Ok(k) = p.z.binary_search(v) {
                b |= 1 << k;
            } else {
                return Err(RankError::ForeignVariable(*v));
            }
        }
        entries[a][b] = c.clone();
    }
    Ok(RankMatrix { rows: p.y.clone(), cols: p.z.clone(), entries })
}

pub fn exact_rank(m: &RankMatrix) -> usize {
    rank(&m.entries)
}

/// Rank over the rationals by fraction-free elimination on rows cleared
/// of denominators.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..m {
        let Some(pivot) = (r..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, pivot);
        for i in r + 1..n {
            for j in col + 1..m {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Assignment to the `w` variables of `P(u, w)` under which the partition
/// matrix of `P` has rank `2^n`. Endpoints on different sides take
/// `w_top = 0, w_leaf = 1/2`; endpoints on the same side take `w_top = 1`
/// with the address of the smallest balancing split. Variables of
/// intervals the recursion never visits are set to 0.
pub fn fullrank_witness(n: u32, p: &Partition) -> Result<BTreeMap<VarId, Rational>, RankError> {
    let (_, sets) = gadgeted_ry_circuit(n)?;
    fullrank_witness_for(n, p, &sets)
}

pub fn fullrank_witness_for(n: u32, p: &Partition, sets: &[WVarSet]) -> Result<BTreeMap<VarId, Rational>, RankError> {
    let expected: BTreeSet<VarId> = (1..=2 * n).map(VarId::u).collect();
    let covered: BTreeSet<VarId> = p.y.iter().chain(&p.z).copied().collect();
    if covered != expected {
        return Err(RankError::NotCovering(2 * n));
    }
    let by_key: BTreeMap<IntervalKey, &WVarSet> = sets.iter().map(|s| (s.interval, s)).collect();
    let mut out: BTreeMap<VarId, Rational> =
        sets.iter().flat_map(|s| s.variables()).map(|v| (v, Rational::zero())).collect();
    let on_row = |i: u32| p.side(VarId::u(i)) == Some(true);
    let balance = |i: u32, j: u32| (i..=j).map(|k| if on_row(k) { 1i64 } else { -1 }).sum::<i64>();

    let mut stack = vec![IntervalKey::new(1, 2 * n)];
    while let Some(key) = stack.pop() {
        if key.is_empty() {
            continue;
        }
        let (i, j) = (key.i, key.j);
        if balance(i, j) != 0 {
            return Err(RankError::Unbalanced { i, j });
        }
        let w = by_key[&key];
        if on_row(i) != on_row(j) {
            out.insert(w.leaf, ratio(1, 2));
            stack.push(key.inner());
        } else {
            let r =
                key.splits().into_iter().find(|&r| balance(i, r) == 0).ok_or(RankError::NoBalancingSplit { i, j })?;
            out.insert(w.top, Rational::one());
            let g = w.gadget(r);
            for (b, v) in w.address.iter().enumerate() {
                out.insert(*v, if g.bit(b as u32) { Rational::one() } else { Rational::zero() });
            }
            stack.push(IntervalKey::new(i, r));
            stack.push(IntervalKey::new(r + 1, j));
        }
    }
    Ok(out)
}

/// Rank of the witness-substituted `P` under one partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankRow {
    pub partition: Partition,
    pub rank: usize,
    pub witness: BTreeMap<VarId, Rational>,
}

/// Witness rank for every balanced partition of `u1..u2n`.
pub fn rank_sweep(n: u32, strategy: Strategy) -> Result<Vec<RankRow>, RankError> {
    let (circuit, sets) = gadgeted_ry_circuit(n)?;
    let parts = balanced_partitions(n);
    exec::map_slice(strategy, &parts, |p| {
        let witness = fullrank_witness_for(n, p, &sets)?;
        let f = circuit.partial_evaluate(&witness).expand()?;
        let rank = exact_rank(&rank_matrix(&f, p)?);
        Ok(RankRow { partition: p.clone(), rank, witness })
    })
    .into_iter()
    .collect()
}
