//! Partitions, Levi types and the level function.
//!
//! A Levi type is an ordered composition `m = (m_1, .., m_s)` of the rank `r`;
//! sorting it gives a partition `n`, whose conjugate `mu` has `mu_t` equal to
//! the number of parts `n_i >= t`. The level function lists `t` exactly
//! `mu_t` times: `gamma = (1^mu_1, 2^mu_2, ..)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: positive parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// A Levi type: an ordered composition of the rank into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct LeviType(Vec<u32>);

/// Values `gamma_1 <= .. <= gamma_r` of the level function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LevelFunction(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// All partitions of `r`, in reverse lexicographic order.
    pub fn all(r: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(r, r, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl LeviType {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("Levi type needs at least one block".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("Levi type {parts:?} has a zero block")));
        }
        Ok(LeviType(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of blocks `sigma`.
    pub fn blocks(&self) -> usize {
        self.0.len()
    }

    /// Block index of each basis vector (0-based), in order.
    pub fn block_of_index(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(b, &m)| std::iter::repeat_n(b, m as usize)).collect()
    }

    /// All compositions of `r`.
    pub fn all(r: u32) -> Vec<LeviType> {
        fn go(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<LeviType>) {
            if rest == 0 {
                out.push(LeviType(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                go(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if r > 0 {
            go(r, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<u32>> for LeviType {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        LeviType::new(v)
    }
}

impl From<LeviType> for Vec<u32> {
    fn from(m: LeviType) -> Self {
        m.0
    }
}

impl fmt::Display for LeviType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl LevelFunction {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// `gamma_j` for `1 <= j <= r`.
    pub fn gamma(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&g| g as u64).sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    let max = p.part(0);
    Partition((1..=max).map(|t| p.0.iter().filter(|&&n| n >= t).count() as u32).collect())
}

pub fn sort_to_partition(m: &LeviType) -> Partition {
    let mut v = m.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// `gamma_j = l` iff `mu_1 + .. + mu_(l-1) < j <= mu_1 + .. + mu_l`, with
/// `mu` the conjugate of the sorted Levi type.
pub fn level_function(m: &LeviType) -> LevelFunction {
    let mu = conjugate(&sort_to_partition(m));
    LevelFunction(
        mu.0.iter()
            .enumerate()
            .flat_map(|(l, &c)| std::iter::repeat_n(l as u32 + 1, c as usize))
            .collect(),
    )
}

/// Dimension of the partial flag variety of type `m`: `(r^2 - sum m_j^2) / 2`.
pub fn flag_dimension(m: &LeviType) -> u64 {
    let r = m.rank() as u64;
    let sq: u64 = m.0.iter().map(|&x| (x as u64) * (x as u64)).sum();
    (r * r - sq) / 2
}

#[cfg(test)]
fn factorial(n: u32) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow("factorial")))
}

/// `r! / (m_1! .. m_s!)`, the number of cosets of the Levi Weyl group.
pub fn weyl_coset_count(m: &LeviType) -> Result<u128> {
    // multiply binomials to stay small: prod_j C(m_1 + .. + m_j, m_j)
    let mut acc: u128 = 1;
    let mut total: u32 = 0;
    for &part in &m.0 {
        total += part;
        acc = acc.checked_mul(binomial(total, part)?).ok_or(Error::Overflow("weyl_coset_count"))?;
    }
    Ok(acc)
}

fn binomial(n: u32, k: u32) -> Result<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i).ok_or(Error::Overflow("binomial"))? / (i + 1);
    }
    Ok(acc)
}

/// `sum_{i<j} min(mu_i, mu_j)` over the parts of `mu`.
pub fn min_pair_sum(mu: &Partition) -> u64 {
    // parts are sorted, so min(mu_i, mu_j) = mu_j for i < j
    mu.0.iter().enumerate().map(|(j, &x)| j as u64 * x as u64).sum()
}
