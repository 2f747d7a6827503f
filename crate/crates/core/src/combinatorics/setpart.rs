//! Set partitions and the closed formula for the exponential coefficients.
//!
//! The ordered-set-partition iterators here (blocks ordered by minima, and
//! blocks in every order) are shared by the enveloping-algebra expansions and
//! the series machinery, so there is a single audited implementation.

use crate::arith::{factorial, multinomial, Int};
use crate::combinatorics::partition::Partition;
use num_traits::Zero;

/// Unordered set partitions of {1,...,n} with the given multiset of block
/// sizes. Blocks are reported sorted by their minima.
pub fn set_partitions_with_sizes(n: usize, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    assert_eq!(sizes.iter().sum::<usize>(), n, "sizes must sum to n");
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let elements: Vec<usize> = (1..=n).collect();
    place(&elements, &mut sorted, &mut blocks, &mut out);
    out
}

fn place(
    remaining: &[usize],
    sizes: &mut Vec<usize>,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if remaining.is_empty() {
        let mut done = blocks.clone();
        done.sort_by_key(|b| b[0]);
        out.push(done);
        return;
    }
    // the smallest remaining element starts a block of each distinct size
    let head = remaining[0];
    let rest = &remaining[1..];
    let mut tried = std::collections::HashSet::new();
    for i in 0..sizes.len() {
        let size = sizes[i];
        if !tried.insert(size) {
            continue;
        }
        let size_removed = sizes.remove(i);
        for companions in combinations(rest, size - 1) {
            let mut block = vec![head];
            block.extend_from_slice(&companions);
            let next: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|e| !companions.contains(e))
                .collect();
            blocks.push(block);
            place(&next, sizes, blocks, out);
            blocks.pop();
        }
        sizes.insert(i, size_removed);
    }
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        if pool.len() - i < k {
            break;
        }
        for mut tail in combinations(&pool[i + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Unordered set partitions of {1,...,k} into nonempty blocks, each reported
/// with blocks sorted by minima; equivalently the ordered set partitions
/// whose blocks are ordered min(I_1) < ... < min(I_h).
pub fn set_partitions_by_minima(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(next: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > k {
            out.push(blocks.clone());
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(next);
            go(next + 1, k, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![next]);
        go(next + 1, k, blocks, out);
        blocks.pop();
    }
    go(1, k, &mut blocks, &mut out);
    out
}

/// Ordered set partitions of {1,...,m} into exactly k nonempty blocks, blocks
/// in every order.
pub fn ordered_set_partitions(m: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for partition in set_partitions_by_minima(m) {
        if partition.len() != k {
            continue;
        }
        permute_blocks(&partition, &mut Vec::new(), &mut vec![false; k], &mut out);
    }
    out
}

fn permute_blocks(
    blocks: &[Vec<usize>],
    current: &mut Vec<Vec<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if current.len() == blocks.len() {
        out.push(current.clone());
        return;
    }
    for i in 0..blocks.len() {
        if !used[i] {
            used[i] = true;
            current.push(blocks[i].clone());
            permute_blocks(blocks, current, used, out);
            current.pop();
            used[i] = false;
        }
    }
}

/// The number of set partitions of \[n + k\] with block sizes p_i + 1 whose
/// block minima never contain two consecutive integers. Brute-force oracle
/// for the exponential coefficient N_p. Branches whose newest block minimum
/// is adjacent to an earlier one are pruned as soon as they appear.
pub fn count_nonconsecutive_set_partitions(p: &Partition) -> Int {
    if p.is_empty() {
        return Int::from(1);
    }
    let n = p.size() as usize;
    let k = p.len();
    let mut sizes: Vec<usize> = p.parts().iter().map(|&x| x as usize + 1).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let elements: Vec<usize> = (1..=n + k).collect();
    let mut count = Int::zero();
    count_nonconsecutive(&elements, &mut sizes, &mut Vec::new(), &mut count);
    count
}

fn count_nonconsecutive(
    remaining: &[usize],
    sizes: &mut Vec<usize>,
    minima: &mut Vec<usize>,
    count: &mut Int,
) {
    if remaining.is_empty() {
        *count += 1;
        return;
    }
    let head = remaining[0];
    // every earlier minimum is below head; adjacency can only come from the
    // previous block opened
    if minima.iter().any(|&m| m + 1 == head) {
        return;
    }
    let rest = &remaining[1..];
    let mut tried = std::collections::HashSet::new();
    minima.push(head);
    for i in 0..sizes.len() {
        let size = sizes[i];
        if !tried.insert(size) {
            continue;
        }
        let size_removed = sizes.remove(i);
        for companions in combinations(rest, size - 1) {
            let next: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|e| !companions.contains(e))
                .collect();
            count_nonconsecutive(&next, sizes, minima, count);
        }
        sizes.insert(i, size_removed);
    }
    minima.pop();
}

/// Closed formula for the exponential coefficient N_p, by inclusion-exclusion
/// over min-ordered set partitions of the part index set:
///
/// N_p = (1/sigma(p)) sum (-1)^{k+h} |I_1|! ... |I_h|!
///        binom(p_{I_1}; parts) ... binom(p_{I_h}; parts)
///        binom(|p| + h; p_{I_1}+1, ..., p_{I_h}+1).
pub fn np_closed_formula(p: &Partition) -> Int {
    if p.is_empty() {
        return Int::from(1);
    }
    let k = p.len();
    let parts = p.parts();
    let mut total = Int::zero();
    for blocks in set_partitions_by_minima(k) {
        let h = blocks.len();
        let mut term = Int::from(1);
        let mut outer: Vec<u64> = Vec::with_capacity(h);
        for block in &blocks {
            let sizes: Vec<u64> = block.iter().map(|&i| parts[i - 1] as u64).collect();
            let sum: u64 = sizes.iter().sum();
            term *= factorial(block.len() as u64);
            term *= multinomial(&sizes);
            outer.push(sum + 1);
        }
        term *= multinomial(&outer);
        if (k + h) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    let sigma = p.symmetry_factor();
    debug_assert!((&total % &sigma).is_zero());
    total / sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, int};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn block_size_partitions() {
        // [4] into two pairs: {12|34}, {13|24}, {14|23}
        assert_eq!(set_partitions_with_sizes(4, &[2, 2]).len(), 3);
        // multinomial/symmetry count: n! / (prod sizes! * prod multiplicities!)
        assert_eq!(set_partitions_with_sizes(6, &[3, 2, 1]).len(), 60);
        assert_eq!(set_partitions_with_sizes(6, &[2, 2, 2]).len(), 15);
    }

    #[test]
    fn minima_ordered_partitions_are_bell() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions_by_minima(k).len(), b);
        }
        // blocks come out ordered by minima
        for blocks in set_partitions_by_minima(5) {
            for w in blocks.windows(2) {
                assert!(w[0][0] < w[1][0]);
            }
        }
    }

    #[test]
    fn ordered_partitions_counts() {
        // surjections [3] -> [2] / 2-orderings: 2! * S(3,2) = 6
        assert_eq!(ordered_set_partitions(3, 2).len(), 6);
        assert_eq!(ordered_set_partitions(4, 4).len(), 24);
        assert_eq!(ordered_set_partitions(4, 1).len(), 1);
    }

    #[test]
    fn nonconsecutive_counts() {
        assert_eq!(count_nonconsecutive_set_partitions(&part(&[1])), int(1));
        assert_eq!(count_nonconsecutive_set_partitions(&part(&[1, 1])), int(1));
        assert_eq!(count_nonconsecutive_set_partitions(&part(&[2])), int(1));
    }

    #[test]
    fn closed_formula_examples() {
        assert_eq!(np_closed_formula(&part(&[1])), int(1));
        assert_eq!(np_closed_formula(&part(&[1, 1])), int(1));
        // two-part specialization: sigma(p) N_p =
        // binom(p1+p2+2; p1+1) - 2 binom(p1+p2; p1)
        for p1 in 1..=4u64 {
            for p2 in 1..=p1 {
                let p = part(&[p1 as u32, p2 as u32]);
                let direct = binomial(p1 + p2 + 2, p1 + 1) - int(2) * binomial(p1 + p2, p1);
                assert_eq!(np_closed_formula(&p) * p.symmetry_factor(), direct);
            }
        }
    }
}
