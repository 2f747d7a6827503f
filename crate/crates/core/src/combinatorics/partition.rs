//! Integer partitions: the index set of the one-generator free Novikov basis.
//!
//! The empty partition stands for the partition of 0 and indexes the
//! generator itself. Enumeration is reverse-lexicographic throughout so that
//! emitted tables are reproducible.

use crate::arith::{factorial, Int};
use std::fmt;

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidPartition(pub Vec<u32>);

impl fmt::Display for InvalidPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not weakly decreasing positive parts: {:?}", self.0)
    }
}

impl std::error::Error for InvalidPartition {}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, InvalidPartition> {
        let ok = parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(InvalidPartition(parts))
        }
    }

    /// Builds a partition from parts in any order; zeros are rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, InvalidPartition> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |p|, the integer being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// l(p), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// p! = p_1! ... p_k!.
    pub fn factorial(&self) -> Int {
        self.parts.iter().map(|&p| factorial(p as u64)).product()
    }

    /// Product of m! over the multiplicities m of equal parts.
    pub fn symmetry_factor(&self) -> Int {
        let mut acc = Int::from(1);
        let mut run = 0u64;
        for i in 0..self.parts.len() {
            run += 1;
            if i + 1 == self.parts.len() || self.parts[i + 1] != self.parts[i] {
                acc *= factorial(run);
                run = 0;
            }
        }
        acc
    }

    /// Multiplicity of the given part value.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// The componentwise order on partitions: `self < other` iff
    /// l(self) <= l(other), self_i <= other_i for every i <= l(self), and at
    /// least one of these l(self)+1 inequalities is strict.
    pub fn lt(&self, other: &Partition) -> bool {
        if self.parts.len() > other.parts.len() {
            return false;
        }
        let mut strict = self.parts.len() < other.parts.len();
        for (a, b) in self.parts.iter().zip(other.parts.iter()) {
            if a > b {
                return false;
            }
            if a < b {
                strict = true;
            }
        }
        strict
    }

    /// Admissibility of the step from `self` to `p`: `self` < p and
    /// l(p) <= |self| + 1. Not transitive.
    pub fn admissible_step_to(&self, p: &Partition) -> bool {
        self.lt(p) && p.len() as u32 <= self.size() + 1
    }

    /// Removes one occurrence of `value`, keeping the result sorted.
    pub fn remove_part(&self, value: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == value)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of n in reverse-lexicographic order; [(0)] for n = 0.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, u32::MAX, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Partitions of n with exactly k parts, in reverse-lexicographic order.
pub fn partitions_with_len(n: u32, k: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| p.len() == k).collect()
}

/// All partitions of every size 0..=max, smallest size first.
pub fn partitions_up_to(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(partitions).collect()
}
