//! Catalan words, their Leibniz multiplicities, the free-magma structure and
//! the bijections with planar binary trees and with the maps of `Inc(i)`.
//!
//! A Catalan word of length i is a word w_1...w_i over the nonnegative
//! integers with w_1 + ... + w_j <= j-1 for j < i and total i-1. These words
//! index the terms of the iterated Leibniz expansion of
//! (f_1 d) o ... o (f_{i-1} d)(f_i), the letter w_j recording how many
//! derivatives land on f_j.

use crate::arith::{binomial, Int};

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalanWord {
    letters: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidCatalanWord(pub Vec<u32>);

impl fmt::Display for InvalidCatalanWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "partial-sum constraint violated: {:?}", self.0)
    }
}

impl std::error::Error for InvalidCatalanWord {}

impl CatalanWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, InvalidCatalanWord> {
        if letters.is_empty() {
            return Err(InvalidCatalanWord(letters));
        }
        let mut sum = 0u32;
        for (j, &w) in letters.iter().enumerate() {
            sum += w;
            let bound = j as u32; // partial sum through position j+1 must be <= j
            if j + 1 < letters.len() {
                if sum > bound {
                    return Err(InvalidCatalanWord(letters));
                }
            } else if sum != bound {
                return Err(InvalidCatalanWord(letters));
            }
        }
        Ok(CatalanWord { letters })
    }

    /// The one-letter word, the unique element of K_1.
    pub fn atom() -> Self {
        CatalanWord { letters: vec![0] }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The word length; always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// The deficiency word d_j = j - 1 - (w_1 + ... + w_j); always ends in 0.
    pub fn deficiency(&self) -> Vec<u32> {
        let mut sum = 0u32;
        self.letters
            .iter()
            .enumerate()
            .map(|(j, &w)| {
                sum += w;
                j as u32 - sum
            })
            .collect()
    }

    /// The number of Leibniz terms collapsing onto this word:
    /// c_w = prod_j binom(d_j + w_j, w_j).
    pub fn coefficient(&self) -> Int {
        let d = self.deficiency();
        self.letters
            .iter()
            .zip(d.iter())
            .map(|(&w, &dj)| binomial((dj + w) as u64, w as u64))
            .product()
    }

    /// The free-magma product: u v with the last letter of v bumped by one.
    pub fn join(&self, v: &CatalanWord) -> CatalanWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&v.letters);
        *letters.last_mut().unwrap() += 1;
        CatalanWord { letters }
    }

    /// The unique factorization w = u.join(v); `None` on the atom.
    pub fn factor(&self) -> Option<(CatalanWord, CatalanWord)> {
        if self.letters.len() < 2 {
            return None;
        }
        let d = self.deficiency();
        let j = (0..self.letters.len() - 1).rev().find(|&h| d[h] == 0)?;
        let u = CatalanWord {
            letters: self.letters[..=j].to_vec(),
        };
        let mut v_letters = self.letters[j + 1..].to_vec();
        *v_letters.last_mut().unwrap() -= 1;
        let v = CatalanWord { letters: v_letters };
        Some((u, v))
    }
}

impl fmt::Display for CatalanWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &w in &self.letters {
            if w < 10 {
                write!(f, "{}", w)?;
            } else {
                write!(f, "({})", w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CatalanWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All of K_i in lexicographic order.
pub fn catalan_words(i: usize) -> Vec<CatalanWord> {
    assert!(i >= 1, "K_i is defined for i >= 1");
    let mut out = Vec::new();
    let mut letters = Vec::with_capacity(i);
    fn extend(letters: &mut Vec<u32>, sum: u32, i: usize, out: &mut Vec<CatalanWord>) {
        let j = letters.len(); // next position is j+1 (1-based)
        if j == i {
            out.push(CatalanWord {
                letters: letters.clone(),
            });
            return;
        }
        let bound = j as u32; // partial sum through position j+1 at most j
        let need = (i - 1) as u32;
        if j + 1 == i {
            // last letter is forced
            let w = need - sum;
            letters.push(w);
            extend(letters, need, i, out);
            letters.pop();
            return;
        }
        for w in 0..=bound.saturating_sub(sum) {
            letters.push(w);
            extend(letters, sum + w, i, out);
            letters.pop();
        }
    }
    extend(&mut letters, 0, i, &mut out);
    out
}

/// A planar binary rooted tree; leaves carry no data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }
}

/// The word of a planar binary tree: w_j counts the left-pointing edges whose
/// walk (down the edge, then up along right edges) ends at the j-th leaf.
/// Every internal node contributes one count, to the rightmost leaf of its
/// right subtree.
pub fn binary_tree_word(t: &BinaryTree) -> CatalanWord {
    let n = t.leaf_count();
    let mut counts = vec![0u32; n];
    // offset = index of the leftmost leaf of the current subtree
    fn walk(t: &BinaryTree, offset: usize, counts: &mut [u32]) {
        if let BinaryTree::Node(l, r) = t {
            let nl = l.leaf_count();
            counts[offset + nl + r.leaf_count() - 1] += 1;
            walk(l, offset, counts);
            walk(r, offset + nl, counts);
        }
    }
    walk(t, 0, &mut counts);
    CatalanWord { letters: counts }
}

/// Inverse of [`binary_tree_word`], by repeated magma factorization.
pub fn word_binary_tree(w: &CatalanWord) -> BinaryTree {
    match w.factor() {
        None => BinaryTree::Leaf,
        Some((u, v)) => BinaryTree::node(word_binary_tree(&u), word_binary_tree(&v)),
    }
}

/// All planar binary trees with the given number of leaves.
pub fn binary_trees(leaves: usize) -> Vec<BinaryTree> {
    assert!(leaves >= 1);
    if leaves == 1 {
        return vec![BinaryTree::Leaf];
    }
    let mut out = Vec::new();
    for nl in 1..leaves {
        for l in binary_trees(nl) {
            for r in binary_trees(leaves - nl) {
                out.push(BinaryTree::node(l.clone(), r));
            }
        }
    }
    out
}

/// A map phi from \[i-1\] to \[i\] with phi(k) > k, stored as the value sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IncMap {
    values: Vec<u32>,
}

impl IncMap {
    pub fn new(values: Vec<u32>, i: usize) -> Option<Self> {
        if values.len() + 1 != i {
            return None;
        }
        for (k, &v) in values.iter().enumerate() {
            if v as usize <= k + 1 || v as usize > i {
                return None;
            }
        }
        Some(IncMap { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn domain_plus_one(&self) -> usize {
        self.values.len() + 1
    }

    /// The fiber-size word (|phi^{-1}(1)|, ..., |phi^{-1}(i)|), always a
    /// Catalan word.
    pub fn multiplicity_word(&self) -> CatalanWord {
        let i = self.domain_plus_one();
        let mut counts = vec![0u32; i];
        for &v in &self.values {
            counts[(v - 1) as usize] += 1;
        }
        CatalanWord { letters: counts }
    }
}

/// All of Inc(i), lexicographic on value sequences; |Inc(i)| = (i-1)!.
pub fn inc_maps(i: usize) -> Vec<IncMap> {
    assert!(i >= 1);
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(i - 1);
    fn extend(values: &mut Vec<u32>, i: usize, out: &mut Vec<IncMap>) {
        let k = values.len() + 1;
        if k == i {
            out.push(IncMap {
                values: values.clone(),
            });
            return;
        }
        for v in (k + 1)..=i {
            values.push(v as u32);
            extend(values, i, out);
            values.pop();
        }
    }
    extend(&mut values, i, &mut out);
    out
}

/// The canonical representative of w in Inc(i): the lexicographically maximal
/// map with fiber-size word w. At the first position j with w_j > 0 the
/// preimage block {j - w_j, ..., j - 1} is chosen, and the construction
/// recurses on the standardized remainder.
pub fn canonical_inc(w: &CatalanWord) -> IncMap {
    fn build(letters: &[u32]) -> Vec<u32> {
        let i = letters.len();
        let Some(j0) = letters.iter().position(|&x| x > 0) else {
            return Vec::new(); // the atom; empty map
        };
        let j = j0 + 1; // 1-based position of the first positive letter
        let wj = letters[j0] as usize;
        // standardized remainder: j - wj leading zeros, then the tail past j
        let mut rest = vec![0u32; j - wj];
        rest.extend_from_slice(&letters[j..]);
        let inner = build(&rest);
        let mut values = vec![0u32; i - 1];
        for k in (j - wj)..j {
            values[k - 1] = j as u32;
        }
        for k in 1..(j - wj) {
            values[k - 1] = inner[k - 1] + wj as u32;
        }
        for k in j..i {
            values[k - 1] = inner[k - wj - 1] + wj as u32;
        }
        values
    }
    IncMap {
        values: build(&w.letters),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn w(letters: &[u32]) -> CatalanWord {
        CatalanWord::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn k3_k4_k5_lists() {
        let k3: Vec<String> = catalan_words(3).iter().map(|w| w.to_string()).collect();
        assert_eq!(k3, vec!["002", "011"]);
        let k4: Vec<String> = catalan_words(4).iter().map(|w| w.to_string()).collect();
        assert_eq!(k4, vec!["0003", "0012", "0021", "0102", "0111"]);
        let k5: Vec<String> = catalan_words(5).iter().map(|w| w.to_string()).collect();
        assert_eq!(
            k5,
            vec![
                "00004", "00013", "00022", "00031", "00103", "00112", "00121", "00202", "00211",
                "01003", "01012", "01021", "01102", "01111"
            ]
        );
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(w(&[0, 0, 0, 2, 0, 1, 3]).coefficient(), int(9));
        assert_eq!(w(&[0, 0, 0, 3]).coefficient(), int(1));
        assert_eq!(w(&[0, 0, 2]).coefficient(), int(1));
        assert_eq!(w(&[0, 1, 1]).coefficient(), int(1));
    }

    #[test]
    fn rejects_invalid_words() {
        assert!(CatalanWord::new(vec![1]).is_err());
        assert!(CatalanWord::new(vec![0, 2, 0]).is_err());
        assert!(CatalanWord::new(vec![0, 1]).is_ok());
        assert!(CatalanWord::new(vec![]).is_err());
    }

    #[test]
    fn magma_join_and_factor() {
        let atom = CatalanWord::atom();
        assert_eq!(atom.join(&atom), w(&[0, 1]));
        assert_eq!(w(&[0, 1]).join(&atom), w(&[0, 1, 1]));
        assert_eq!(atom.join(&w(&[0, 1])), w(&[0, 0, 2]));
        assert_eq!(
            w(&[0, 0, 1, 2]).factor(),
            Some((atom.clone(), w(&[0, 1, 1])))
        );
        assert_eq!(atom.factor(), None);
    }

    #[test]
    fn binary_tree_of_the_eight_leaf_figure() {
        use BinaryTree::Leaf;
        let d = BinaryTree::node(Leaf, Leaf);
        let c = BinaryTree::node(d, Leaf);
        let a = BinaryTree::node(Leaf, c);
        let e = BinaryTree::node(Leaf, Leaf);
        let f = BinaryTree::node(Leaf, Leaf);
        let b = BinaryTree::node(e, f);
        let t = BinaryTree::node(a, b);
        let word = binary_tree_word(&t);
        assert_eq!(word.to_string(), "00120103");
        assert_eq!(word_binary_tree(&word), t);
        assert_eq!(binary_tree_word(&BinaryTree::Leaf).to_string(), "0");
    }

    #[test]
    fn binary_tree_roundtrip_small() {
        for leaves in 1..=7 {
            let trees = binary_trees(leaves);
            let words = catalan_words(leaves);
            assert_eq!(trees.len(), words.len());
            let mut seen = std::collections::HashSet::new();
            for t in &trees {
                let wd = binary_tree_word(t);
                assert_eq!(&word_binary_tree(&wd), t);
                assert!(seen.insert(wd));
            }
        }
    }

    #[test]
    fn inc_map_counts_and_fibers() {
        assert_eq!(inc_maps(2).len(), 1);
        assert_eq!(inc_maps(2)[0].multiplicity_word(), w(&[0, 1]));
        let maps3 = inc_maps(3);
        assert_eq!(maps3.len(), 2);
        for i in 1..=7usize {
            let maps = inc_maps(i);
            let expected: usize = (1..i).product::<usize>().max(1);
            assert_eq!(maps.len(), expected);
            // fiber over each word has size c_w
            for word in catalan_words(i) {
                let fiber = maps
                    .iter()
                    .filter(|m| m.multiplicity_word() == word)
                    .count();
                assert_eq!(Int::from(fiber), word.coefficient(), "word {}", word);
            }
        }
    }

    #[test]
    fn canonical_inc_examples() {
        assert_eq!(canonical_inc(&w(&[0, 1])).values(), &[2]);
        let fig = w(&[0, 0, 1, 2, 0, 1, 0, 3]);
        assert_eq!(canonical_inc(&fig).values(), &[4, 3, 4, 8, 6, 8, 8]);
        // canonical = lexicographically maximal in the fiber, and its
        // multiplicity word is w
        for i in 1..=5usize {
            let maps = inc_maps(i);
            for word in catalan_words(i) {
                let canon = canonical_inc(&word);
                assert_eq!(canon.multiplicity_word(), word);
                let max = maps
                    .iter()
                    .filter(|m| m.multiplicity_word() == word)
                    .max()
                    .unwrap();
                assert_eq!(&canon, max, "word {}", word);
            }
        }
    }

    #[test]
    fn cardinalities_are_catalan() {
        use num_traits::One;
        let mut cat = vec![Int::one()];
        for i in 1..=10usize {
            let prev = cat.last().unwrap().clone();
            // C_{i} = C_{i-1} * 2(2i-1)/(i+1)
            cat.push(prev * int(2 * (2 * i as i64 - 1)) / int(i as i64 + 1));
            assert_eq!(Int::from(catalan_words(i + 1).len()), cat[i]);
        }
    }
}
