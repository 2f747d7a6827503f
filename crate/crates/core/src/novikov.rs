//! The free Novikov algebra realized inside a polynomial algebra with a
//! derivation.
//!
//! The ambient algebra has variables a_i per generator a, with i >= -1 and
//! the derivation a_i -> a_{i+1}. The weight of a monomial is the sum of its
//! indices; the span of the weight -1 monomials, with the product
//! a < b := d(a) b, is the free Novikov algebra on the generators. On one
//! generator the weight -1 monomials of degree n+1 are indexed by the
//! partitions of n, and all public results convert to that basis.

use crate::arith::{factorial, Int, Rat};
use crate::combinatorics::partition::Partition;
use crate::trees::{RootedTree, TreeSum};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A commutative monomial in the variables a_i: sorted (generator, index)
/// pairs with repetition, every index >= -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial {
    factors: Vec<(u16, i32)>,
}

impl DiffMonomial {
    pub fn new(mut factors: Vec<(u16, i32)>) -> Self {
        assert!(factors.iter().all(|&(_, i)| i >= -1), "index below -1");
        factors.sort_unstable();
        DiffMonomial { factors }
    }

    pub fn one() -> Self {
        DiffMonomial {
            factors: Vec::new(),
        }
    }

    /// The generator variable a_{-1} of the given generator.
    pub fn generator(gen: u16) -> Self {
        DiffMonomial {
            factors: vec![(gen, -1)],
        }
    }

    pub fn factors(&self) -> &[(u16, i32)] {
        &self.factors
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|&(_, i)| i as i64).sum()
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        DiffMonomial { factors }
    }

    /// Leibniz derivative: sum over factors of the monomial with that factor
    /// index bumped, with multiplicity.
    pub fn derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let mult = (j - i) as i64;
            let mut factors = self.factors.clone();
            factors[i].1 += 1;
            out.add_term(DiffMonomial::new(factors), Rat::from(Int::from(mult)));
            i = j;
        }
        out
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let (gen, idx) = self.factors[i];
            let name = if gen == 0 {
                "x".to_string()
            } else {
                format!("a{}", gen)
            };
            write!(f, "{}[{}]", name, idx)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite rational linear combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<DiffMonomial, Rat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::from_monomial(DiffMonomial::one())
    }

    pub fn generator(gen: u16) -> Self {
        DiffPoly::from_monomial(DiffMonomial::generator(gen))
    }

    pub fn from_monomial(m: DiffMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }

    pub fn derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (dm, dc) in m.derivative().terms {
                out.add_term(dm, dc * c);
            }
        }
        out
    }

    pub fn derivative_n(&self, n: usize) -> DiffPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derivative();
        }
        out
    }

    /// The right Novikov product a < b = d(a) b.
    pub fn triangle(&self, b: &DiffPoly) -> DiffPoly {
        self.derivative().mul(b)
    }

    /// The left Novikov product a > b = a d(b).
    pub fn triangle_left(&self, b: &DiffPoly) -> DiffPoly {
        self.mul(&b.derivative())
    }

    /// The symmetric brace a{a_1 ... a_n} = a_1 ... a_n d^n(a).
    pub fn brace(&self, args: &[&DiffPoly]) -> DiffPoly {
        let mut out = self.derivative_n(args.len());
        for arg in args {
            out = out.mul(arg);
        }
        out
    }

    /// sum_n (1/n!) a{b,...,b} = sum_n b^n d^n(a) / n!, truncated to monomial
    /// degree <= cap.
    pub fn brace_exponential(&self, b: &DiffPoly, cap: usize) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut b_power = DiffPoly::one();
        let mut a_deriv = self.clone();
        let mut n = 0usize;
        loop {
            let term = a_deriv.mul(&b_power).truncate_degree(cap);
            let coeff = Rat::new(Int::one(), factorial(n as u64));
            out = out.add(&term.scale(&coeff));
            n += 1;
            b_power = b_power.mul(b).truncate_degree(cap);
            if b_power.is_zero() {
                break;
            }
            a_deriv = a_deriv.derivative();
            if a_deriv.is_zero() {
                break;
            }
        }
        out
    }

    /// Drops monomials of degree above the cap.
    pub fn truncate_degree(&self, cap: usize) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, m)?;
        }
        Ok(())
    }
}

/// The basis monomial x_p of the one-generator free Novikov algebra.
pub fn partition_monomial(p: &Partition) -> DiffMonomial {
    let n = p.size() as usize;
    let k = p.len();
    let mut factors: Vec<(u16, i32)> = p.parts().iter().map(|&q| (0u16, q as i32 - 1)).collect();
    factors.extend(std::iter::repeat_n((0u16, -1), n - k + 1));
    DiffMonomial::new(factors)
}

/// Recovers p from x_p: defined exactly on the one-generator monomials of
/// weight -1.
pub fn monomial_partition(m: &DiffMonomial) -> Option<Partition> {
    if m.weight() != -1 || m.factors().iter().any(|&(g, _)| g != 0) {
        return None;
    }
    let parts: Vec<u32> = m
        .factors()
        .iter()
        .filter(|&&(_, i)| i >= 0)
        .map(|&(_, i)| i as u32 + 1)
        .collect();
    let p = Partition::from_unsorted(parts).ok()?;
    // degree bookkeeping: |p| - l(p) + 1 copies of the index -1
    let minus_ones = m.factors().iter().filter(|&&(_, i)| i == -1).count();
    if minus_ones == (p.size() as usize - p.len()) + 1 {
        Some(p)
    } else {
        None
    }
}

/// An element of the one-generator free Novikov algebra in the partition
/// basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NovikovElement {
    terms: BTreeMap<Partition, Rat>,
}

impl NovikovElement {
    pub fn zero() -> Self {
        NovikovElement::default()
    }

    /// The generator x_{(0)}.
    pub fn generator() -> Self {
        NovikovElement::from_basis(Partition::empty())
    }

    pub fn from_basis(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, Rat::one());
        NovikovElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut out = NovikovElement::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Partition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
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

    pub fn add(&self, other: &NovikovElement) -> NovikovElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NovikovElement) -> NovikovElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> NovikovElement {
        if c.is_zero() {
            return NovikovElement::zero();
        }
        NovikovElement {
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        }
    }

    pub fn to_diff(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (p, c) in &self.terms {
            out.add_term(partition_monomial(p), c.clone());
        }
        out
    }

    /// Converts back from the realization; fails if some monomial is not a
    /// one-generator weight -1 basis monomial.
    pub fn from_diff(poly: &DiffPoly) -> Result<NovikovElement, NotNovikov> {
        let mut out = NovikovElement::zero();
        for (m, c) in poly.terms() {
            let p = monomial_partition(m).ok_or_else(|| NotNovikov(m.clone()))?;
            out.add_term(p, c.clone());
        }
        Ok(out)
    }

    /// The right Novikov product in the partition basis.
    pub fn triangle(&self, other: &NovikovElement) -> NovikovElement {
        NovikovElement::from_diff(&self.to_diff().triangle(&other.to_diff()))
            .expect("product of weight -1 elements has weight -1")
    }

    /// The left Novikov product, the opposite of [`Self::triangle`].
    pub fn triangle_left(&self, other: &NovikovElement) -> NovikovElement {
        other.triangle(self)
    }

    /// The symmetric brace with the given multiset of arguments.
    pub fn brace(&self, args: &[&NovikovElement]) -> NovikovElement {
        let diffs: Vec<DiffPoly> = args.iter().map(|a| a.to_diff()).collect();
        let refs: Vec<&DiffPoly> = diffs.iter().collect();
        NovikovElement::from_diff(&self.to_diff().brace(&refs))
            .expect("braces preserve weight -1")
    }

    /// Serializes as (partition, rational-string) pairs, partitions in
    /// (size, reverse-lexicographic) order.
    pub fn to_pairs(&self) -> Vec<(Partition, String)> {
        let mut pairs: Vec<(Partition, String)> = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), crate::arith::rat_string(c)))
            .collect();
        pairs.sort_by_key(|(p, _)| (p.size(), partition_rank(p)));
        pairs
    }
}

/// Rank of a partition within the reverse-lexicographic enumeration of its
/// size class.
pub fn partition_rank(p: &Partition) -> usize {
    crate::combinatorics::partitions(p.size())
        .iter()
        .position(|q| q == p)
        .expect("partition enumerates")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotNovikov(pub DiffMonomial);

impl fmt::Display for NotNovikov {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monomial is not a one-generator weight -1 basis element: {}", self.0)
    }
}

impl std::error::Error for NotNovikov {}

/// The projection of a rooted tree: the product of x_{f(v)-1} over vertices,
/// f(v) the fertility. Always the basis monomial of the fertility partition.
pub fn rho(t: &RootedTree) -> DiffMonomial {
    let mut factors = Vec::new();
    fn collect(t: &RootedTree, factors: &mut Vec<(u16, i32)>) {
        factors.push((0, t.children().len() as i32 - 1));
        for c in t.children() {
            collect(c, factors);
        }
    }
    collect(t, &mut factors);
    DiffMonomial::new(factors)
}

/// The linear extension of T -> x_{Psi(T)} from tree sums to the free
/// Novikov algebra; the unique pre-Lie morphism sending the one-vertex tree
/// to the generator.
pub fn psi_linear(ts: &TreeSum) -> NovikovElement {
    let mut out = NovikovElement::zero();
    for (t, c) in ts.terms() {
        out.add_term(t.fertility_partition(), c.clone());
    }
    out
}

/// Symmetric brace built from the pre-Lie product alone, by the recursion
/// v{w_1...w_n} = (v{w_1...w_{n-1}}){w_n} - sum_i v{w_1...w_i{w_n}...w_{n-1}}.
/// Slow; used to cross-check the closed-form brace.
pub fn brace_by_recursion(v: &DiffPoly, args: &[&DiffPoly]) -> DiffPoly {
    match args.len() {
        0 => v.clone(),
        1 => v.triangle(args[0]),
        n => {
            let head = &args[..n - 1];
            let last = args[n - 1];
            let mut out = brace_by_recursion(&brace_by_recursion(v, head), &[last]);
            for i in 0..n - 1 {
                let replaced = brace_by_recursion(args[i], &[last]);
                let mut inner: Vec<&DiffPoly> = head.to_vec();
                inner[i] = &replaced;
                out = out.sub(&brace_by_recursion(v, &inner));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn basis_monomials() {
        // x_(0) = x_{-1}
        assert_eq!(
            partition_monomial(&Partition::empty()),
            DiffMonomial::generator(0)
        );
        // x_(2,1) = x_1 x_0 x_{-1}^2
        let m = partition_monomial(&part(&[2, 1]));
        assert_eq!(m.factors(), &[(0, -1), (0, -1), (0, 0), (0, 1)]);
        assert_eq!(m.weight(), -1);
        assert_eq!(m.degree(), 4);
    }

    #[test]
    fn basis_roundtrip_is_bijective() {
        for n in 0..=8u32 {
            let mut seen = std::collections::HashSet::new();
            for p in crate::combinatorics::partitions(n) {
                let m = partition_monomial(&p);
                assert_eq!(m.degree(), n as usize + 1);
                assert_eq!(monomial_partition(&m), Some(p));
                assert!(seen.insert(m));
            }
        }
        assert_eq!(monomial_partition(&DiffMonomial::new(vec![(0, 0)])), None);
        assert_eq!(monomial_partition(&DiffMonomial::new(vec![(1, -1)])), None);
    }

    #[test]
    fn triangle_products() {
        let x = NovikovElement::generator();
        assert_eq!(x.triangle(&x), NovikovElement::from_basis(part(&[1])));
        let x2 = x.triangle(&x);
        let left = x2.triangle(&x);
        let mut expected = NovikovElement::from_basis(part(&[1, 1]));
        expected.add_term(part(&[2]), rat(1, 1));
        assert_eq!(left, expected);
    }

    #[test]
    fn brace_examples() {
        let x = NovikovElement::generator();
        assert_eq!(x.brace(&[]), x);
        assert_eq!(x.brace(&[&x, &x]), NovikovElement::from_basis(part(&[2])));
        assert_eq!(x.brace(&[&x]), x.triangle(&x));
    }

    #[test]
    fn rho_examples() {
        use crate::trees::RootedTree as T;
        assert_eq!(rho(&T::leaf()), DiffMonomial::generator(0));
        // x{x{x,x,x}, x{x}} -> x_0 x_1 x_2 x_{-1}^4
        let t = T::with_children(vec![
            T::with_children(vec![T::leaf(), T::leaf(), T::leaf()]),
            T::with_children(vec![T::leaf()]),
        ]);
        let m = rho(&t);
        assert_eq!(
            m.factors(),
            &[(0, -1), (0, -1), (0, -1), (0, -1), (0, 0), (0, 1), (0, 2)]
        );
        // rho lands on the fertility-partition basis monomial
        for n in 1..=6 {
            for t in crate::trees::rooted_trees(n) {
                assert_eq!(rho(&t), partition_monomial(&t.fertility_partition()));
            }
        }
    }

    #[test]
    fn psi_is_a_prelie_morphism() {
        use crate::trees::{rooted_trees, TreeSum};
        for n in 1..=4usize {
            for m in 1..=(5 - n).min(4) {
                for t in rooted_trees(n) {
                    for s in rooted_trees(m) {
                        let ts = TreeSum::from_tree(t.clone());
                        let ss = TreeSum::from_tree(s.clone());
                        let lhs = psi_linear(&ts.graft(&ss));
                        let rhs = psi_linear(&ts).triangle(&psi_linear(&ss));
                        assert_eq!(lhs, rhs, "T={} S={}", t, s);
                    }
                }
            }
        }
    }

    #[test]
    fn brace_closed_form_matches_recursion() {
        // a few structured elements of degree <= 3, arity <= 3
        let x = NovikovElement::generator().to_diff();
        let y = NovikovElement::from_basis(part(&[1])).to_diff();
        let z = NovikovElement::from_terms([
            (part(&[2]), rat(1, 2)),
            (part(&[1, 1]), rat(-1, 3)),
        ])
        .to_diff();
        let elems = [&x, &y, &z];
        for v in elems {
            for a in elems {
                assert_eq!(v.brace(&[a]), brace_by_recursion(v, &[a]));
                for b in elems {
                    assert_eq!(v.brace(&[a, b]), brace_by_recursion(v, &[a, b]));
                    for c in elems {
                        assert_eq!(v.brace(&[a, b, c]), brace_by_recursion(v, &[a, b, c]));
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_order() {
        let mut e = NovikovElement::zero();
        e.add_term(part(&[1, 1]), rat(1, 3));
        e.add_term(part(&[2]), rat(1, 12));
        e.add_term(Partition::empty(), rat(1, 1));
        let pairs = e.to_pairs();
        let rendered: Vec<String> = pairs
            .iter()
            .map(|(p, s)| format!("{} {}", p, s))
            .collect();
        assert_eq!(rendered, vec!["(0) 1/1", "(2) 1/12", "(1,1) 1/3"]);
    }
}
