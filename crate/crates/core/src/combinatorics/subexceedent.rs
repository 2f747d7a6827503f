//! Subexceedent functions, Lehmer codes and the partition statistic they
//! both carry.
//!
//! The maps phi: \[n\] -> \[n\] with phi(k) <= k index the terms of the iterated
//! Leibniz expansion of the right-nested pre-Lie power; their fiber-size
//! partitions govern the coefficients of the pre-Lie exponential. Lehmer
//! codes carry the same statistic through permutations.

use super::partition::Partition;
use std::fmt;

/// A map phi: \[n\] -> \[n\] with phi(k) <= k for all k, as the value sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subexceedent {
    values: Vec<u32>,
}

impl Subexceedent {
    pub fn new(values: Vec<u32>) -> Option<Self> {
        for (k, &v) in values.iter().enumerate() {
            if v < 1 || v as usize > k + 1 {
                return None;
            }
        }
        Some(Subexceedent { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// The bijection onto Lehmer codes: (phi(n)-1, phi(n-1)-1, ..., phi(1)-1).
    pub fn code(&self) -> LehmerCode {
        LehmerCode {
            letters: self.values.iter().rev().map(|&v| v - 1).collect(),
        }
    }

    /// The multiset of nonzero fiber sizes |phi^{-1}(i)|, as a partition of n.
    pub fn fiber_partition(&self) -> Partition {
        let mut counts = vec![0u32; self.values.len()];
        for &v in &self.values {
            counts[(v - 1) as usize] += 1;
        }
        let parts: Vec<u32> = counts.into_iter().filter(|&c| c > 0).collect();
        Partition::from_unsorted(parts).expect("fiber sizes are positive")
    }
}

/// All subexceedent functions on \[n\], lexicographic on value sequences;
/// there are n! of them. Leib(0) is the singleton with the empty map.
pub fn subexceedent_fns(n: usize) -> Vec<Subexceedent> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(n);
    fn extend(values: &mut Vec<u32>, n: usize, out: &mut Vec<Subexceedent>) {
        if values.len() == n {
            out.push(Subexceedent {
                values: values.clone(),
            });
            return;
        }
        for v in 1..=(values.len() as u32 + 1) {
            values.push(v);
            extend(values, n, out);
            values.pop();
        }
    }
    extend(&mut values, n, &mut out);
    out
}

/// A word l_1...l_n with l_i <= n - i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LehmerCode {
    letters: Vec<u32>,
}

impl LehmerCode {
    pub fn new(letters: Vec<u32>) -> Option<Self> {
        let n = letters.len();
        for (i, &l) in letters.iter().enumerate() {
            if l as usize > n - i - 1 {
                return None;
            }
        }
        Some(LehmerCode { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The multiset of letter multiplicities, as a partition of n.
    pub fn partition(&self) -> Partition {
        let mut counts = std::collections::BTreeMap::new();
        for &l in &self.letters {
            *counts.entry(l).or_insert(0u32) += 1;
        }
        Partition::from_unsorted(counts.into_values().collect()).expect("multiplicities positive")
    }

    /// Positions i with l_{i+1} < l_i (1-based i), matching the descent set of
    /// the corresponding permutation.
    pub fn descents(&self) -> Vec<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] < w[0])
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for LehmerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            if l < 10 {
                write!(f, "{}", l)?;
            } else {
                write!(f, "({})", l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LehmerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A permutation of \[n\] in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Option<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v < 1 || v as usize > n || seen[(v - 1) as usize] {
                return None;
            }
            seen[(v - 1) as usize] = true;
        }
        Some(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// l_i = #{j > i with sigma(j) < sigma(i)}.
    pub fn lehmer_code(&self) -> LehmerCode {
        let letters = (0..self.word.len())
            .map(|i| {
                self.word[i + 1..]
                    .iter()
                    .filter(|&&v| v < self.word[i])
                    .count() as u32
            })
            .collect();
        LehmerCode { letters }
    }

    /// The partition of letter multiplicities of the Lehmer code.
    pub fn lehmer_partition(&self) -> Partition {
        self.lehmer_code().partition()
    }

    /// Positions i with sigma(i) > sigma(i+1), 1-based.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descent_number(&self) -> usize {
        self.descents().len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.word {
            if v < 10 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "({})", v)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All permutations of \[n\], lexicographic on one-line words.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(word: &mut Vec<u32>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Permutation>) {
        if word.len() == n {
            out.push(Permutation { word: word.clone() });
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                word.push(v as u32 + 1);
                extend(word, used, n, out);
                word.pop();
                used[v] = false;
            }
        }
    }
    extend(&mut word, &mut used, n, &mut out);
    out
}
