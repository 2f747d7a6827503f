//! Rooted trees as the basis of the free pre-Lie algebra on one generator.
//!
//! Non-planar trees are kept in a canonical form (children sorted by a fixed
//! total order), so structural equality decides isomorphism. Increasing
//! trees are stored as parent arrays, decreasing trees reuse the maps of
//! `Inc(n)`, and planar trees keep their child order.

use crate::arith::{factorial, multinomial, Int, Rat};
use crate::combinatorics::partition::Partition;
use crate::combinatorics::subexceedent::Permutation;
use crate::combinatorics::words::{inc_maps, IncMap};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A non-planar rooted tree in canonical form: children sorted descending by
/// the derived order (vertex count first, then recursively on children).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree {
            children: Vec::new(),
        }
    }

    /// Builds a tree with the given subtrees, sorting them into canonical
    /// order.
    pub fn with_children(mut children: Vec<RootedTree>) -> Self {
        children.sort_unstable_by(|a, b| b.cmp(a));
        RootedTree { children }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.vertex_count()).sum::<usize>()
    }

    /// The tree factorial: product over vertices of the descendant count
    /// (vertex included).
    pub fn factorial(&self) -> Int {
        let mut acc = Int::from(self.vertex_count());
        for c in &self.children {
            acc *= c.factorial();
        }
        acc
    }

    /// The number of automorphisms as a rooted tree.
    pub fn automorphisms(&self) -> Int {
        let mut acc = Int::one();
        let mut run = 0u64;
        for i in 0..self.children.len() {
            run += 1;
            if i + 1 == self.children.len() || self.children[i + 1] != self.children[i] {
                acc *= factorial(run);
                run = 0;
            }
        }
        for c in &self.children {
            acc *= c.automorphisms();
        }
        acc
    }

    /// The number of increasing labelings, n! / (T! sigma(T)).
    pub fn increasing_labelings(&self) -> Int {
        factorial(self.vertex_count() as u64) / (self.factorial() * self.automorphisms())
    }

    /// The number of planar embeddings, via the multinomial recursion on
    /// repeated child subtrees.
    pub fn planar_embeddings(&self) -> Int {
        let mut multiplicities: Vec<u64> = Vec::new();
        let mut acc = Int::one();
        let mut run = 0u64;
        for i in 0..self.children.len() {
            run += 1;
            if i + 1 == self.children.len() || self.children[i + 1] != self.children[i] {
                multiplicities.push(run);
                run = 0;
            }
        }
        for c in &self.children {
            acc *= c.planar_embeddings();
        }
        multinomial(&multiplicities) * acc
    }

    /// All four classical statistics at once: the tree factorial, the
    /// automorphism count, the number of increasing labelings and the number
    /// of planar embeddings.
    pub fn statistics(&self) -> TreeStatistics {
        TreeStatistics {
            factorial: self.factorial(),
            automorphisms: self.automorphisms(),
            increasing_labelings: self.increasing_labelings(),
            planar_embeddings: self.planar_embeddings(),
        }
    }

    /// The partition of n - 1 formed by the positive vertex fertilities.
    pub fn fertility_partition(&self) -> Partition {
        let mut parts = Vec::new();
        fn collect(t: &RootedTree, parts: &mut Vec<u32>) {
            if !t.children.is_empty() {
                parts.push(t.children.len() as u32);
            }
            for c in &t.children {
                collect(c, parts);
            }
        }
        collect(self, &mut parts);
        Partition::from_unsorted(parts).expect("fertilities are positive")
    }

    fn poset(&self) -> Poset {
        let mut parents = vec![usize::MAX];
        fn build(t: &RootedTree, me: usize, parents: &mut Vec<usize>) {
            for c in &t.children {
                let id = parents.len();
                parents.push(me);
                build(c, id, parents);
            }
        }
        build(self, 0, &mut parents);
        Poset { parents }
    }

    /// Counts of surjective strictly increasing maps from the vertex poset
    /// onto \[k\], for k = 1..=n, by exhaustive enumeration.
    pub fn strict_order_counts(&self) -> Vec<Int> {
        self.poset().strict_order_counts()
    }

    /// The alternating-sum weight sum_k (-1)^{k-1}/k omega_k used by the tree
    /// logarithm.
    pub fn omega(&self) -> Rat {
        omega_from_counts(&self.strict_order_counts())
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*")?;
        if !self.children.is_empty() {
            write!(f, "[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn omega_from_counts(counts: &[Int]) -> Rat {
    let mut acc = Rat::zero();
    for (k, c) in counts.iter().enumerate() {
        let k = k as i64 + 1;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc += Rat::new(sign * c.clone(), Int::from(k));
    }
    acc
}

/// All non-planar rooted trees with n vertices, in canonical order.
pub fn rooted_trees(n: usize) -> Vec<RootedTree> {
    assert!(n >= 1);
    if n == 1 {
        return vec![RootedTree::leaf()];
    }
    // attach forests of total size n-1 as children
    let mut out = std::collections::BTreeSet::new();
    for forest in forests(n - 1) {
        out.insert(RootedTree::with_children(forest));
    }
    out.into_iter().collect()
}

/// Multisets of trees of total size n (n >= 1), each multiset sorted
/// descending in the canonical order.
fn forests(n: usize) -> Vec<Vec<RootedTree>> {
    fn go(n: usize, bound: Option<&RootedTree>) -> Vec<Vec<RootedTree>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for size in (1..=n).rev() {
            for head in rooted_trees(size) {
                if let Some(b) = bound {
                    if &head > b {
                        continue;
                    }
                }
                for mut tail in go(n - size, Some(&head)) {
                    tail.insert(0, head.clone());
                    out.push(tail);
                }
            }
        }
        out
    }
    go(n, None)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeStatistics {
    pub factorial: Int,
    pub automorphisms: Int,
    pub increasing_labelings: Int,
    pub planar_embeddings: Int,
}

/// A rational linear combination of rooted trees, the working representation
/// of elements of the free pre-Lie algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TreeSum {
    terms: BTreeMap<RootedTree, Rat>,
}

impl TreeSum {
    pub fn zero() -> Self {
        TreeSum::default()
    }

    pub fn generator() -> Self {
        TreeSum::from_tree(RootedTree::leaf())
    }

    pub fn from_tree(t: RootedTree) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(t, Rat::one());
        TreeSum { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RootedTree, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &RootedTree) -> Rat {
        self.terms.get(t).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, t: RootedTree, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TreeSum) -> TreeSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> TreeSum {
        if c.is_zero() {
            return TreeSum::zero();
        }
        TreeSum {
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
        }
    }

    /// The pre-Lie grafting product extended bilinearly: attach the right
    /// tree below each vertex of the left tree, in all ways.
    pub fn graft(&self, other: &TreeSum) -> TreeSum {
        let mut out = TreeSum::zero();
        for (t, a) in &self.terms {
            for (s, b) in &other.terms {
                let c = a * b;
                for g in graft_tree(t, s) {
                    out.add_term(g, c.clone());
                }
            }
        }
        out
    }

    /// Truncation to trees with at most `max_vertices` vertices.
    pub fn truncate(&self, max_vertices: usize) -> TreeSum {
        TreeSum {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.vertex_count() <= max_vertices)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }
}

/// All trees obtained by attaching `s` below one vertex of `t` (one entry per
/// vertex; equal results appear with multiplicity).
pub fn graft_tree(t: &RootedTree, s: &RootedTree) -> Vec<RootedTree> {
    let mut out = Vec::new();
    // graft at the root
    let mut children = t.children.clone();
    children.push(s.clone());
    out.push(RootedTree::with_children(children));
    // graft inside the i-th child
    for i in 0..t.children.len() {
        for sub in graft_tree(&t.children[i], s) {
            let mut children = t.children.clone();
            children[i] = sub;
            out.push(RootedTree::with_children(children));
        }
    }
    out
}

/// The truncated pre-Lie exponential of the one-vertex tree: terms with up to
/// `max_vertices` vertices of sum_n x^{graft n} / n!.
pub fn tree_exponential(max_vertices: usize) -> TreeSum {
    let x = TreeSum::generator();
    let mut total = TreeSum::zero();
    let mut power = x.clone(); // x^{graft 1}
    total = total.add(&power);
    for n in 2..=max_vertices {
        power = power.graft(&x).truncate(max_vertices);
        total = total.add(&power.scale(&Rat::new(Int::one(), factorial(n as u64))));
    }
    total
}

/// The truncated tree logarithm: sum over trees of omega(T)/sigma(T) T.
pub fn tree_logarithm(max_vertices: usize) -> TreeSum {
    let mut out = TreeSum::zero();
    for n in 1..=max_vertices {
        for t in rooted_trees(n) {
            let coeff = t.omega() / Rat::from(t.automorphisms());
            out.add_term(t, coeff);
        }
    }
    out
}

/// A planar rooted tree: children in a fixed left-to-right order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanarTree {
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree {
            children: Vec::new(),
        }
    }

    pub fn with_children(children: Vec<PlanarTree>) -> Self {
        PlanarTree { children }
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.vertex_count()).sum::<usize>()
    }

    pub fn fertility_partition(&self) -> Partition {
        let mut parts = Vec::new();
        fn collect(t: &PlanarTree, parts: &mut Vec<u32>) {
            if !t.children.is_empty() {
                parts.push(t.children.len() as u32);
            }
            for c in &t.children {
                collect(c, parts);
            }
        }
        collect(self, &mut parts);
        Partition::from_unsorted(parts).expect("fertilities are positive")
    }

    fn poset(&self) -> Poset {
        let mut parents = vec![usize::MAX];
        fn build(t: &PlanarTree, me: usize, parents: &mut Vec<usize>) {
            for c in &t.children {
                let id = parents.len();
                parents.push(me);
                build(c, id, parents);
            }
        }
        build(self, 0, &mut parents);
        Poset { parents }
    }

    pub fn strict_order_counts(&self) -> Vec<Int> {
        self.poset().strict_order_counts()
    }

    /// Strictly monotone maps of the vertex poset into \[n\], not necessarily
    /// surjective, counted exhaustively.
    pub fn monotone_labelings(&self, n: u32) -> Int {
        self.poset().monotone_labelings(n)
    }

    /// Forgets the planar structure.
    pub fn shape(&self) -> RootedTree {
        RootedTree::with_children(self.children.iter().map(|c| c.shape()).collect())
    }
}

/// All planar rooted trees with n vertices.
pub fn planar_trees(n: usize) -> Vec<PlanarTree> {
    assert!(n >= 1);
    if n == 1 {
        return vec![PlanarTree::leaf()];
    }
    // ordered sequences of planar subtrees of total size n-1
    fn sequences(n: usize) -> Vec<Vec<PlanarTree>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for head in planar_trees(first) {
                for mut tail in sequences(n - first) {
                    tail.insert(0, head.clone());
                    out.push(tail);
                }
            }
        }
        out
    }
    sequences(n - 1)
        .into_iter()
        .map(PlanarTree::with_children)
        .collect()
}

/// Vertex poset of a rooted tree: parents[v] is the parent index, the root
/// has index 0.
struct Poset {
    parents: Vec<usize>,
}

impl Poset {
    fn strict_order_counts(&self) -> Vec<Int> {
        let n = self.parents.len();
        (1..=n as u32)
            .map(|k| self.count_maps(k, true))
            .collect()
    }

    fn monotone_labelings(&self, n: u32) -> Int {
        self.count_maps(n, false)
    }

    /// Counts maps vertices -> \[k\] with label(child) > label(parent),
    /// optionally surjective, by backtracking in index order (parents come
    /// before children).
    fn count_maps(&self, k: u32, surjective: bool) -> Int {
        let n = self.parents.len();
        let mut labels = vec![0u32; n];
        let mut used = vec![0usize; k as usize + 1];
        let mut count = Int::zero();
        fn go(
            v: usize,
            k: u32,
            surjective: bool,
            parents: &[usize],
            labels: &mut Vec<u32>,
            used: &mut Vec<usize>,
            count: &mut Int,
        ) {
            let n = parents.len();
            if v == n {
                if !surjective || used[1..].iter().all(|&c| c > 0) {
                    *count += 1;
                }
                return;
            }
            let lo = if v == 0 { 1 } else { labels[parents[v]] + 1 };
            for label in lo..=k {
                // not enough vertices left to cover the missing labels
                if surjective {
                    let missing = used[1..].iter().filter(|&&c| c == 0).count()
                        - usize::from(used[label as usize] == 0);
                    if missing > n - v - 1 {
                        continue;
                    }
                }
                labels[v] = label;
                used[label as usize] += 1;
                go(v + 1, k, surjective, parents, labels, used, count);
                used[label as usize] -= 1;
            }
        }
        go(
            0,
            k,
            surjective,
            &self.parents,
            &mut labels,
            &mut used,
            &mut count,
        );
        count
    }
}

/// An increasing tree on vertices 1..=n: parents[v-2] is the parent of vertex
/// v for v = 2..=n, always smaller than v.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IncreasingTree {
    parents: Vec<u32>,
}

impl IncreasingTree {
    pub fn new(parents: Vec<u32>) -> Option<Self> {
        for (i, &p) in parents.iter().enumerate() {
            if p < 1 || p as usize > i + 1 {
                return None;
            }
        }
        Some(IncreasingTree { parents })
    }

    pub fn root_only() -> Self {
        IncreasingTree {
            parents: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parents.len() + 1
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parents[v - 2] as usize
    }

    pub fn parents(&self) -> &[u32] {
        &self.parents
    }

    /// Number of children of the given vertex (1-based).
    pub fn fertility(&self, v: usize) -> usize {
        self.parents.iter().filter(|&&p| p as usize == v).count()
    }

    pub fn attach(&self, parent: usize) -> IncreasingTree {
        assert!(parent >= 1 && parent <= self.vertex_count());
        let mut parents = self.parents.clone();
        parents.push(parent as u32);
        IncreasingTree { parents }
    }

    /// Forgets the labels.
    pub fn shape(&self) -> RootedTree {
        let n = self.vertex_count();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for v in 2..=n {
            children[self.parent(v)].push(v);
        }
        fn build(v: usize, children: &Vec<Vec<usize>>) -> RootedTree {
            RootedTree::with_children(children[v].iter().map(|&c| build(c, children)).collect())
        }
        build(1, &children)
    }
}

/// All increasing trees on n vertices; there are (n-1)! of them.
pub fn increasing_trees(n: usize) -> Vec<IncreasingTree> {
    assert!(n >= 1);
    let mut out = vec![IncreasingTree::root_only()];
    for v in 2..=n {
        let mut next = Vec::with_capacity(out.len() * (v - 1));
        for t in &out {
            for parent in 1..v {
                next.push(t.attach(parent));
            }
        }
        out = next;
    }
    out
}

/// The insertion bijection from permutations of \[n\] to increasing trees on
/// n+1 vertices: peeling the largest letter of the word determines where the
/// next vertex is attached (slot 1 is the rightmost insertion position).
pub fn permutation_tree(sigma: &Permutation) -> IncreasingTree {
    let mut word: Vec<u32> = sigma.word().to_vec();
    let n = word.len();
    let mut slots = vec![0usize; n + 1]; // slots[m] = attach point of vertex m+1
    for m in (1..=n).rev() {
        let pos = word
            .iter()
            .position(|&v| v as usize == m)
            .expect("permutation word");
        slots[m] = m - pos; // rightmost slot is 1
        word.remove(pos);
    }
    let mut t = IncreasingTree::root_only();
    for &slot in &slots[1..] {
        t = t.attach(slot);
    }
    t
}

/// Inverse of [`permutation_tree`].
pub fn tree_permutation(t: &IncreasingTree) -> Permutation {
    let n = t.vertex_count() - 1;
    let mut word: Vec<u32> = Vec::with_capacity(n);
    for m in 1..=n {
        let slot = t.parent(m + 1);
        // insert m so that slot 1 is the rightmost position
        let pos = word.len() + 1 - slot;
        word.insert(pos, m as u32);
    }
    Permutation::new(word).expect("insertion yields a permutation")
}

/// A decreasing tree on vertices 1..=n: every child label is below its
/// parent's, so the root is n and the parent map lies in Inc(n).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecreasingTree {
    parent_map: IncMap,
}

impl DecreasingTree {
    pub fn from_parent_map(parent_map: IncMap) -> Self {
        DecreasingTree { parent_map }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent_map.domain_plus_one()
    }

    /// Parent of vertex v (1-based, v < n).
    pub fn parent(&self, v: usize) -> usize {
        self.parent_map.values()[v - 1] as usize
    }

    /// Number of children of vertex v.
    pub fn fertility(&self, v: usize) -> usize {
        self.parent_map
            .values()
            .iter()
            .filter(|&&p| p as usize == v)
            .count()
    }

    pub fn parent_map(&self) -> &IncMap {
        &self.parent_map
    }
}

/// All decreasing trees on n vertices, one per element of Inc(n).
pub fn decreasing_trees(n: usize) -> Vec<DecreasingTree> {
    inc_maps(n)
        .into_iter()
        .map(DecreasingTree::from_parent_map)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ladder(n: usize) -> RootedTree {
        let mut t = RootedTree::leaf();
        for _ in 1..n {
            t = RootedTree::with_children(vec![t]);
        }
        t
    }

    fn corolla(k: usize) -> RootedTree {
        RootedTree::with_children(vec![RootedTree::leaf(); k])
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = RootedTree::with_children(vec![ladder(2), corolla(2)]);
        let b = RootedTree::with_children(vec![corolla(2), ladder(2)]);
        assert_eq!(a, b);
    }

    #[test]
    fn tree_counts() {
        // numbers of rooted trees: 1, 1, 2, 4, 9, 20, 48
        let counts: Vec<usize> = (1..=7).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
        // planar rooted trees are counted by Catalan numbers
        let pcounts: Vec<usize> = (1..=7).map(|n| planar_trees(n).len()).collect();
        assert_eq!(pcounts, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn statistics_on_ladders_and_corollas() {
        for n in 1..=6 {
            let l = ladder(n);
            assert_eq!(l.factorial(), factorial(n as u64));
            assert_eq!(l.automorphisms(), int(1));
            assert_eq!(l.increasing_labelings(), int(1));
        }
        for k in 1..=5 {
            let c = corolla(k);
            let stats = c.statistics();
            assert_eq!(stats.factorial, int(k as i64 + 1));
            assert_eq!(stats.automorphisms, factorial(k as u64));
            assert_eq!(stats.increasing_labelings, int(1));
            assert_eq!(stats.planar_embeddings, int(1));
        }
    }

    #[test]
    fn planar_embeddings_identity() {
        for n in 1..=7 {
            for t in rooted_trees(n) {
                assert_eq!(
                    t.planar_embeddings() * t.automorphisms(),
                    t.fertility_partition().factorial(),
                    "tree {}",
                    t
                );
            }
        }
    }

    #[test]
    fn fertility_partitions() {
        assert_eq!(RootedTree::leaf().fertility_partition(), Partition::empty());
        assert_eq!(
            ladder(3).fertility_partition(),
            Partition::new(vec![1, 1]).unwrap()
        );
        assert_eq!(
            corolla(2).fertility_partition(),
            Partition::new(vec![2]).unwrap()
        );
        // x{x, x{x, x{x}}}
        let inner = RootedTree::with_children(vec![RootedTree::leaf(), ladder(2)]);
        let t = RootedTree::with_children(vec![RootedTree::leaf(), inner]);
        assert_eq!(
            t.fertility_partition(),
            Partition::new(vec![2, 2, 1]).unwrap()
        );
    }

    #[test]
    fn grafting() {
        let x = TreeSum::generator();
        let x2 = x.graft(&x);
        assert_eq!(x2.coefficient(&ladder(2)), Rat::from(int(1)));
        assert_eq!(x2.terms().count(), 1);
        let x3 = x2.graft(&x);
        assert_eq!(x3.coefficient(&ladder(3)), Rat::from(int(1)));
        assert_eq!(x3.coefficient(&corolla(2)), Rat::from(int(1)));
        assert_eq!(x3.terms().count(), 2);
    }

    #[test]
    fn exponential_coefficients_count_increasing_labelings() {
        // coefficient of T in x^{graft n} is N_T
        let x = TreeSum::generator();
        let mut power = x.clone();
        for n in 2..=6 {
            power = power.graft(&x);
            for t in rooted_trees(n) {
                assert_eq!(
                    power.coefficient(&t),
                    Rat::from(t.increasing_labelings()),
                    "tree {}",
                    t
                );
            }
        }
    }

    #[test]
    fn increasing_tree_counts_and_fibers() {
        for n in 1..=8usize {
            let all = increasing_trees(n);
            let expected: usize = (1..n).product::<usize>().max(1);
            assert_eq!(all.len(), expected);
        }
        // fibers of the shape map have size N_T
        for n in 1..=7usize {
            let all = increasing_trees(n);
            for t in rooted_trees(n) {
                let fiber = all.iter().filter(|i| i.shape() == t).count();
                assert_eq!(Int::from(fiber), t.increasing_labelings());
            }
        }
    }

    #[test]
    fn permutation_tree_worked_examples() {
        let one = Permutation::new(vec![1]).unwrap();
        let t = permutation_tree(&one);
        assert_eq!(t.parents(), &[1]);

        let sigma = Permutation::new(vec![3, 5, 4, 1, 2]).unwrap();
        let t = permutation_tree(&sigma);
        // root 1 with children 2, 3; vertex 3 with children 4, 5; vertex 4
        // with child 6
        assert_eq!(t.parents(), &[1, 1, 3, 3, 4]);
    }

    #[test]
    fn permutation_tree_bijection_and_statistic() {
        for n in 0..=6usize {
            let perms = crate::combinatorics::permutations(n);
            let mut seen = std::collections::HashSet::new();
            for sigma in &perms {
                let t = permutation_tree(sigma);
                assert_eq!(t.vertex_count(), n + 1);
                assert!(seen.insert(t.clone()));
                assert_eq!(&tree_permutation(&t), sigma);
                // multiplicity of letter i-1 in the Lehmer code equals the
                // fertility of vertex i
                let code = sigma.lehmer_code();
                for i in 1..=n + 1 {
                    let mult = code
                        .letters()
                        .iter()
                        .filter(|&&l| l as usize == i - 1)
                        .count();
                    assert_eq!(t.fertility(i), mult);
                }
                // the diagram commutes: shape fertilities match the Lehmer
                // partition
                if n >= 1 {
                    assert_eq!(
                        t.shape().fertility_partition(),
                        sigma.lehmer_partition()
                    );
                }
            }
            assert_eq!(seen.len(), increasing_trees(n + 1).len());
        }
    }

    #[test]
    fn decreasing_tree_counts() {
        assert_eq!(decreasing_trees(1).len(), 1);
        assert_eq!(decreasing_trees(2).len(), 1);
        assert_eq!(decreasing_trees(3).len(), 2);
        assert_eq!(decreasing_trees(5).len(), 24);
    }

    #[test]
    fn strict_order_counts_small() {
        let point = RootedTree::leaf();
        assert_eq!(point.strict_order_counts(), vec![int(1)]);
        let l2 = ladder(2);
        assert_eq!(l2.strict_order_counts(), vec![int(0), int(1)]);
        let c3 = corolla(2);
        assert_eq!(c3.strict_order_counts(), vec![int(0), int(1), int(2)]);
    }

    #[test]
    fn increasing_labeling_totals() {
        for n in 1..=8usize {
            let total: Int = rooted_trees(n)
                .iter()
                .map(|t| t.increasing_labelings())
                .sum();
            assert_eq!(total, factorial(n as u64 - 1));
        }
    }
}
