//! The enveloping Hopf algebra of a Novikov algebra, realized as the
//! polynomial coalgebra on the weight -1 monomials with the brace-built
//! associative product, together with the pre-Lie and classical PBW maps and
//! the canonical projections.

use crate::arith::{factorial, rat_string, stirling_first, Int, Rat};
use crate::combinatorics::setpart::{ordered_set_partitions, set_partitions_by_minima};
use crate::combinatorics::words::catalan_words;
use crate::novikov::{DiffMonomial, DiffPoly};
use crate::trees::decreasing_trees;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A commutative monomial of Novikov basis elements: a sorted multiset of
/// weight -1 monomials. The empty multiset is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct EnvMonomial {
    letters: Vec<DiffMonomial>,
}

impl EnvMonomial {
    pub fn new(mut letters: Vec<DiffMonomial>) -> Self {
        debug_assert!(letters.iter().all(|l| l.weight() == -1));
        letters.sort_unstable();
        EnvMonomial { letters }
    }

    pub fn unit() -> Self {
        EnvMonomial::default()
    }

    pub fn letter(l: DiffMonomial) -> Self {
        EnvMonomial { letters: vec![l] }
    }

    pub fn letters(&self) -> &[DiffMonomial] {
        &self.letters
    }

    /// Number of letters (the polynomial degree in Q\[N\]).
    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Total degree: the sum of the ambient monomial degrees of the letters.
    pub fn total_degree(&self) -> usize {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    pub fn merge(&self, other: &EnvMonomial) -> EnvMonomial {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        letters.sort_unstable();
        EnvMonomial { letters }
    }
}

impl fmt::Display for EnvMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " . ")?;
            }
            write!(f, "({})", l)?;
        }
        Ok(())
    }
}

/// An element of the enveloping algebra Q\[N\].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EnvElement {
    terms: BTreeMap<EnvMonomial, Rat>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn one() -> Self {
        EnvElement::from_monomial(EnvMonomial::unit())
    }

    pub fn from_monomial(m: EnvMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        EnvElement { terms }
    }

    pub fn from_letter(l: DiffMonomial) -> Self {
        EnvElement::from_monomial(EnvMonomial::letter(l))
    }

    /// Embeds a Novikov element (a combination of weight -1 monomials) as a
    /// primitive element.
    pub fn from_novikov(poly: &DiffPoly) -> Self {
        let mut out = EnvElement::zero();
        for (m, c) in poly.terms() {
            assert_eq!(m.weight(), -1, "not a Novikov element: {}", m);
            out.add_term(EnvMonomial::letter(m.clone()), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EnvMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &EnvMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&EnvMonomial::unit())
    }

    pub fn add_term(&mut self, m: EnvMonomial, c: Rat) {
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

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> EnvElement {
        if c.is_zero() {
            return EnvElement::zero();
        }
        EnvElement {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// The commutative polynomial product of Q\[N\].
    pub fn odot(&self, other: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.merge(n), a * b);
            }
        }
        out
    }

    /// The associative enveloping product. `cap` truncates by total degree
    /// (which the product preserves). The opposite product of the left-sided
    /// theory is exactly `other.star(self, cap)`; no separate engine exists.
    pub fn star(&self, other: &EnvElement, cap: Option<usize>) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, a) in &self.terms {
            for (z, b) in &other.terms {
                if let Some(cap) = cap {
                    if w.total_degree() + z.total_degree() > cap {
                        continue;
                    }
                }
                let prod = star_monomials(w, z);
                out = out.add(&prod.scale(&(a * b)));
            }
        }
        out
    }

    /// The unshuffle coproduct.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in &self.terms {
            let n = m.letters.len();
            for mask in 0..(1u64 << n) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, l) in m.letters.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        left.push(l.clone());
                    } else {
                        right.push(l.clone());
                    }
                }
                out.add_term(EnvMonomial::new(left), EnvMonomial::new(right), c.clone());
            }
        }
        out
    }

    /// The component spanned by single letters, as a Novikov element of the
    /// realization; `None` if any other monomial is present besides the unit.
    pub fn primitive_part_strict(&self) -> Option<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            match m.letter_count() {
                1 => out.add_term(m.letters[0].clone(), c.clone()),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Drops monomials of total degree above the cap.
    pub fn truncate_degree(&self, cap: usize) -> EnvElement {
        EnvElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// exp in (Q\[N\], odot), truncated by total degree.
    pub fn exp_odot(&self, cap: usize) -> EnvElement {
        assert!(self.constant_term().is_zero(), "exp needs no constant term");
        let mut out = EnvElement::one();
        let mut power = EnvElement::one();
        for n in 1.. {
            power = power.odot(self).truncate_degree(cap);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&Rat::new(Int::one(), factorial(n))));
        }
        out
    }

    /// log in (Q\[N\], odot) of an element with constant term 1.
    pub fn log_odot(&self, cap: usize) -> EnvElement {
        assert!(
            self.constant_term().is_one(),
            "log needs constant term 1"
        );
        let h = self.sub(&EnvElement::one());
        let mut out = EnvElement::zero();
        let mut power = EnvElement::one();
        for n in 1i64.. {
            power = power.odot(&h).truncate_degree(cap);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rat::new(Int::from(sign), Int::from(n))));
        }
        out
    }

    /// exp in (Q\[N\], star), truncated by total degree.
    pub fn exp_star(&self, cap: usize) -> EnvElement {
        assert!(self.constant_term().is_zero(), "exp needs no constant term");
        let mut out = EnvElement::one();
        let mut power = EnvElement::one();
        for n in 1.. {
            power = power.star(self, Some(cap)).truncate_degree(cap);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&Rat::new(Int::one(), factorial(n))));
        }
        out
    }

    /// log in (Q\[N\], star) of an element with constant term 1.
    pub fn log_star(&self, cap: usize) -> Result<EnvElement, ConstantTermNotOne> {
        if !self.constant_term().is_one() {
            return Err(ConstantTermNotOne(rat_string(&self.constant_term())));
        }
        let h = self.sub(&EnvElement::one());
        let mut out = EnvElement::zero();
        let mut power = EnvElement::one();
        for n in 1i64.. {
            power = power.star(&h, Some(cap)).truncate_degree(cap);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rat::new(Int::from(sign), Int::from(n))));
        }
        Ok(out)
    }

    /// Serializes as (sorted monomial rendering, rational-string) pairs.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.to_string(), rat_string(c)))
            .collect()
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} {}", rat_string(c), m)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTermNotOne(pub String);

impl fmt::Display for ConstantTermNotOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log requires constant term 1, found {}", self.0)
    }
}

impl std::error::Error for ConstantTermNotOne {}

/// w_1...w_n * z_1...z_m: the sum over all assignments of the z letters to
/// the n brace slots and the free slot. Braces are cached per (slot, subset)
/// since each pair recurs across many assignments.
fn star_monomials(w: &EnvMonomial, z: &EnvMonomial) -> EnvElement {
    let n = w.letters.len();
    let m = z.letters.len();
    if n == 0 {
        return EnvElement::from_monomial(z.clone());
    }
    if m == 0 {
        return EnvElement::from_monomial(w.clone());
    }
    assert!(m < 64, "monomial too large for the assignment enumeration");
    let mut cache: Vec<std::collections::HashMap<u64, DiffPoly>> =
        vec![std::collections::HashMap::new(); n];
    let mut out = EnvElement::zero();
    let mut assignment = vec![0usize; m]; // values in 0..=n, n = free slot
    loop {
        let mut masks = vec![0u64; n];
        let mut free: Vec<DiffMonomial> = Vec::new();
        for (t, &s) in assignment.iter().enumerate() {
            if s == n {
                free.push(z.letters[t].clone());
            } else {
                masks[s] |= 1 << t;
            }
        }
        for (j, &mask) in masks.iter().enumerate() {
            cache[j].entry(mask).or_insert_with(|| {
                let letter = DiffPoly::from_monomial(w.letters[j].clone());
                if mask == 0 {
                    letter
                } else {
                    let arg_polys: Vec<DiffPoly> = (0..m)
                        .filter(|t| mask >> t & 1 == 1)
                        .map(|t| DiffPoly::from_monomial(z.letters[t].clone()))
                        .collect();
                    let refs: Vec<&DiffPoly> = arg_polys.iter().collect();
                    letter.brace(&refs)
                }
            });
        }
        let factors: Vec<&DiffPoly> = masks
            .iter()
            .enumerate()
            .map(|(j, mask)| &cache[j][mask])
            .collect();
        expand_product(&factors, &free, &Rat::one(), &mut out);
        // next assignment
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] <= n {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Expands a product of letter combinations times fixed letters into
/// monomials of Q\[N\].
fn expand_product(factors: &[&DiffPoly], fixed: &[DiffMonomial], coeff: &Rat, out: &mut EnvElement) {
    fn go(
        factors: &[&DiffPoly],
        chosen: &mut Vec<DiffMonomial>,
        fixed: &[DiffMonomial],
        coeff: Rat,
        out: &mut EnvElement,
    ) {
        match factors.split_first() {
            None => {
                let mut letters = chosen.clone();
                letters.extend_from_slice(fixed);
                out.add_term(EnvMonomial::new(letters), coeff);
            }
            Some((first, rest)) => {
                for (m, c) in first.terms() {
                    chosen.push(m.clone());
                    go(rest, chosen, fixed, &coeff * c, out);
                    chosen.pop();
                }
            }
        }
    }
    go(factors, &mut Vec::new(), fixed, coeff.clone(), out);
}

/// An element of Q\[N\] tensor Q\[N\].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<(EnvMonomial, EnvMonomial), Rat>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(EnvMonomial, EnvMonomial), &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, left: EnvMonomial, right: EnvMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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

    /// Componentwise star product.
    pub fn star(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c1) in &self.terms {
            for ((x, y), c2) in &other.terms {
                let left = star_monomials(a, x);
                let right = star_monomials(b, y);
                let coeff = c1 * c2;
                for (lm, lc) in left.terms() {
                    for (rm, rc) in right.terms() {
                        out.add_term(lm.clone(), rm.clone(), &coeff * lc * rc);
                    }
                }
            }
        }
        out
    }

    /// Whether this equals x (x) 1 + 1 (x) x for the given primitive x.
    pub fn is_primitive_pairing(&self, x: &EnvElement) -> bool {
        let mut expected = TensorElement::zero();
        for (m, c) in x.terms() {
            expected.add_term(m.clone(), EnvMonomial::unit(), c.clone());
            expected.add_term(EnvMonomial::unit(), m.clone(), c.clone());
        }
        self == &expected
    }

    pub fn swap(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }
}

/// eta by direct composition: f_1 > (f_2 > (... > f_i)) with a > b = a d(b),
/// the image of the word under the corestricted PBW inverse.
pub fn eta_direct(fs: &[DiffPoly]) -> DiffPoly {
    let mut iter = fs.iter().rev();
    let mut acc = iter.next().expect("eta needs at least one letter").clone();
    for f in iter {
        acc = f.triangle_left(&acc);
    }
    acc
}

/// eta by the Catalan-word expansion: sum over w in K_i of
/// c_w d^{w_1}(f_1) ... d^{w_i}(f_i).
pub fn eta_catalan(fs: &[DiffPoly]) -> DiffPoly {
    let i = fs.len();
    let mut out = DiffPoly::zero();
    for w in catalan_words(i) {
        let mut term = DiffPoly::one();
        for (f, &wj) in fs.iter().zip(w.letters()) {
            term = term.mul(&f.derivative_n(wj as usize));
        }
        out = out.add(&term.scale(&Rat::from(w.coefficient())));
    }
    out
}

/// eta by the sum over decreasing labeled trees: for each tree the product
/// over vertices v of d^{children(v)}(f_v).
pub fn eta_decreasing_trees(fs: &[DiffPoly]) -> DiffPoly {
    let i = fs.len();
    let mut out = DiffPoly::zero();
    for t in decreasing_trees(i) {
        let mut term = DiffPoly::one();
        for (v, f) in fs.iter().enumerate() {
            term = term.mul(&f.derivative_n(t.fertility(v + 1)));
        }
        out = out.add(&term);
    }
    out
}

/// The PBW inverse on a tensor word: the iterated star product of its
/// letters.
pub fn pbw_prelie_inv(word: &[DiffMonomial]) -> EnvElement {
    let mut acc = EnvElement::one();
    for l in word {
        acc = acc.star(&EnvElement::from_letter(l.clone()), None);
    }
    acc
}

/// The PBW inverse through the ordered-set-partition formula: the sum over
/// min-ordered set partitions of the positions of the odot-product of
/// left-nested right Novikov products over each block.
pub fn pbw_prelie_inv_blocks(word: &[DiffMonomial]) -> EnvElement {
    let n = word.len();
    if n == 0 {
        return EnvElement::one();
    }
    let mut out = EnvElement::zero();
    for blocks in set_partitions_by_minima(n) {
        let mut letters = Vec::with_capacity(blocks.len());
        let mut coeff = Rat::one();
        'blocks: for block in &blocks {
            let mut acc = DiffPoly::from_monomial(word[block[0] - 1].clone());
            for &pos in &block[1..] {
                acc = acc.triangle(&DiffPoly::from_monomial(word[pos - 1].clone()));
            }
            // acc is a combination of letters; expand later
            if acc.is_zero() {
                coeff = Rat::zero();
                break 'blocks;
            }
            letters.push(acc);
        }
        if coeff.is_zero() {
            continue;
        }
        let refs: Vec<&DiffPoly> = letters.iter().collect();
        expand_product(&refs, &[], &coeff, &mut out);
    }
    out
}

/// A formal combination of tensor words over the Novikov basis monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorCombination {
    terms: BTreeMap<Vec<DiffMonomial>, Rat>,
}

impl TensorCombination {
    pub fn zero() -> Self {
        TensorCombination::default()
    }

    pub fn from_word(word: Vec<DiffMonomial>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, Rat::one());
        TensorCombination { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<DiffMonomial>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, word: Vec<DiffMonomial>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
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

    /// Applies the PBW inverse linearly.
    pub fn pbw_inv(&self) -> EnvElement {
        let mut out = EnvElement::zero();
        for (word, c) in &self.terms {
            out = out.add(&pbw_prelie_inv(word).scale(c));
        }
        out
    }
}

/// The PBW isomorphism from Q\[N\] to tensor words, by triangular inversion in
/// the letter-count filtration. Words are produced with letters in sorted
/// order (the canonical representative of each monomial).
pub fn pbw_prelie(e: &EnvElement) -> TensorCombination {
    let mut rem = e.clone();
    let mut out = TensorCombination::zero();
    loop {
        let Some(top) = rem.terms().map(|(m, _)| m.letter_count()).max() else {
            return out;
        };
        let leading: Vec<(EnvMonomial, Rat)> = rem
            .terms()
            .filter(|(m, _)| m.letter_count() == top)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        for (m, c) in leading {
            let word = m.letters().to_vec();
            rem = rem.sub(&pbw_prelie_inv(&word).scale(&c));
            out.add_term(word, c);
        }
    }
}

/// The classical symmetrized PBW map on a single monomial:
/// (1/n!) sum over permutations of the star product of the letters.
pub fn pbw_classical_monomial(m: &EnvMonomial) -> EnvElement {
    let letters = m.letters();
    let n = letters.len();
    let mut out = EnvElement::zero();
    for sigma in crate::combinatorics::permutations(n) {
        let word: Vec<DiffMonomial> = sigma
            .word()
            .iter()
            .map(|&i| letters[(i - 1) as usize].clone())
            .collect();
        out = out.add(&pbw_prelie_inv(&word));
    }
    out.scale(&Rat::new(Int::one(), factorial(n as u64)))
}

/// The classical PBW map extended linearly.
pub fn pbw_classical(e: &EnvElement) -> EnvElement {
    let mut out = EnvElement::zero();
    for (m, c) in e.terms() {
        out = out.add(&pbw_classical_monomial(m).scale(c));
    }
    out
}

/// The n-th canonical projection, applied per monomial:
/// sum_{k>=n} s(k,n)/k! sum over ordered set partitions into k blocks of the
/// star product of the block monomials.
pub fn canonical_projection(n: usize, e: &EnvElement) -> EnvElement {
    assert!(n >= 1);
    let mut out = EnvElement::zero();
    for (mono, c) in e.terms() {
        let m = mono.letter_count();
        for k in n..=m {
            let coeff = Rat::new(stirling_first(k as u64, n as u64), factorial(k as u64));
            if coeff.is_zero() {
                continue;
            }
            let mut sum = EnvElement::zero();
            for blocks in ordered_set_partitions(m, k) {
                let mut acc = EnvElement::one();
                for block in &blocks {
                    let letters: Vec<DiffMonomial> = block
                        .iter()
                        .map(|&i| mono.letters()[i - 1].clone())
                        .collect();
                    acc = acc.star(&EnvElement::from_monomial(EnvMonomial::new(letters)), None);
                }
                sum = sum.add(&acc);
            }
            out = out.add(&sum.scale(&(coeff * c)));
        }
    }
    out
}

/// The expansion of a^{\[i\]} * ... * a^{\[1\]} over i abstract generators as a
/// sum over min-ordered set partitions with Catalan-word block contents.
pub fn pbw_word_expansion(i: usize) -> EnvElement {
    assert!(i >= 1);
    let mut out = EnvElement::zero();
    for blocks in set_partitions_by_minima(i) {
        let factors: Vec<DiffPoly> = blocks
            .iter()
            .map(|block| {
                let mut sum = DiffPoly::zero();
                for w in catalan_words(block.len()) {
                    let factors: Vec<(u16, i32)> = block
                        .iter()
                        .zip(w.letters())
                        .map(|(&gen, &wj)| ((gen - 1) as u16, wj as i32 - 1))
                        .collect();
                    sum.add_term(DiffMonomial::new(factors), Rat::from(w.coefficient()));
                }
                sum
            })
            .collect();
        let refs: Vec<&DiffPoly> = factors.iter().collect();
        expand_product(&refs, &[], &Rat::one(), &mut out);
    }
    out
}

/// The same product computed directly: a^{\[i\]} * ... * a^{\[1\]}.
pub fn pbw_word_direct(i: usize) -> EnvElement {
    assert!(i >= 1);
    let mut acc = EnvElement::one();
    for gen in (0..i as u16).rev() {
        acc = acc.star(&EnvElement::from_letter(DiffMonomial::generator(gen)), None);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn gen(i: u16) -> DiffMonomial {
        DiffMonomial::generator(i)
    }

    fn letter(i: u16) -> EnvElement {
        EnvElement::from_letter(gen(i))
    }

    #[test]
    fn star_two_letters() {
        // x * y = x . y + x{y}
        let x = letter(0);
        let y = letter(1);
        let prod = x.star(&y, None);
        assert_eq!(prod.terms().count(), 2);
        let xy = EnvMonomial::new(vec![gen(0), gen(1)]);
        assert_eq!(prod.coefficient(&xy), rat(1, 1));
        // the brace term x{y} = y d(x) = a1[-1] a0[0]
        let brace = DiffMonomial::new(vec![(1, -1), (0, 0)]);
        assert_eq!(prod.coefficient(&EnvMonomial::letter(brace)), rat(1, 1));
    }

    #[test]
    fn star_nine_term_expansion() {
        // w1 w2 * z1 z2 over four abstract generators
        let w = EnvMonomial::new(vec![gen(0), gen(1)]);
        let z = EnvMonomial::new(vec![gen(2), gen(3)]);
        let prod = star_monomials(&w, &z);
        assert_eq!(prod.terms().count(), 9);
        let total: Rat = prod.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, rat(9, 1));
        // the untouched monomial w1 w2 z1 z2 appears once
        let all = EnvMonomial::new(vec![gen(0), gen(1), gen(2), gen(3)]);
        assert_eq!(prod.coefficient(&all), rat(1, 1));
        // (w1{z1 z2}) w2 appears once
        let braced = DiffMonomial::new(vec![(2, -1), (3, -1), (0, 1)]);
        let m = EnvMonomial::new(vec![braced, gen(1)]);
        assert_eq!(prod.coefficient(&m), rat(1, 1));
    }

    #[test]
    fn star_unit_and_associativity() {
        let one = EnvElement::one();
        let x = letter(0);
        assert_eq!(x.star(&one, None), x);
        assert_eq!(one.star(&x, None), x);
        // associativity on small monomials over three generators
        let a = EnvElement::from_monomial(EnvMonomial::new(vec![gen(0), gen(1)]));
        let b = letter(1);
        let c = EnvElement::from_monomial(EnvMonomial::new(vec![gen(2), gen(2)]));
        let lhs = a.star(&b, None).star(&c, None);
        let rhs = a.star(&b.star(&c, None), None);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_is_the_novikov_bracket() {
        let x = letter(0);
        let y = letter(1);
        let comm = x.star(&y, None).sub(&y.star(&x, None));
        let xp = DiffPoly::generator(0);
        let yp = DiffPoly::generator(1);
        let bracket = xp.brace(&[&yp]).sub(&yp.brace(&[&xp]));
        assert_eq!(comm, EnvElement::from_novikov(&bracket));
    }

    #[test]
    fn coproduct_and_multiplicativity() {
        let one = EnvElement::one();
        let d1 = one.coproduct();
        let mut expected = TensorElement::zero();
        expected.add_term(EnvMonomial::unit(), EnvMonomial::unit(), rat(1, 1));
        assert_eq!(d1, expected);

        // Delta(x y) = xy (x) 1 + x (x) y + y (x) x + 1 (x) xy
        let xy = EnvElement::from_monomial(EnvMonomial::new(vec![gen(0), gen(1)]));
        let d = xy.coproduct();
        assert_eq!(d.terms().count(), 4);

        // letters are primitive
        assert!(letter(0).coproduct().is_primitive_pairing(&letter(0)));

        // Delta(w * z) = Delta(w) * Delta(z), and cocommutativity
        let w = EnvElement::from_monomial(EnvMonomial::new(vec![gen(0), gen(1)]));
        let z = letter(2).add(&EnvElement::from_monomial(EnvMonomial::new(vec![
            gen(2),
            gen(2),
        ])));
        let lhs = w.star(&z, None).coproduct();
        let rhs = w.coproduct().star(&z.coproduct());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, lhs.swap());
    }

    #[test]
    fn eta_three_ways() {
        for i in 1..=6 {
            let fs: Vec<DiffPoly> = (0..i).map(|g| DiffPoly::generator(g as u16)).collect();
            let direct = eta_direct(&fs);
            assert_eq!(direct, eta_catalan(&fs), "i = {}", i);
            assert_eq!(direct, eta_decreasing_trees(&fs), "i = {}", i);
        }
    }

    #[test]
    fn eta_single_and_triple() {
        let f1 = DiffPoly::generator(0);
        assert_eq!(eta_direct(std::slice::from_ref(&f1)), f1);
        // i = 3: f1 f2' f3' + f1 f2 f3''
        let fs: Vec<DiffPoly> = (0..3).map(|g| DiffPoly::generator(g as u16)).collect();
        let e = eta_direct(&fs);
        let t1 = DiffMonomial::new(vec![(0, -1), (1, 0), (2, 0)]);
        let t2 = DiffMonomial::new(vec![(0, -1), (1, -1), (2, 1)]);
        assert_eq!(e.coefficient(&t1), rat(1, 1));
        assert_eq!(e.coefficient(&t2), rat(1, 1));
        assert_eq!(e.terms().count(), 2);
    }

    #[test]
    fn eta_seven_letter_coefficient() {
        // coefficient of f1 f2 f3 d^2(f4) f5 d(f6) d^3(f7) is c_{0002013} = 9
        let fs: Vec<DiffPoly> = (0..7).map(|g| DiffPoly::generator(g as u16)).collect();
        let e = eta_catalan(&fs);
        let target = DiffMonomial::new(vec![
            (0, -1),
            (1, -1),
            (2, -1),
            (3, 1),
            (4, -1),
            (5, 0),
            (6, 2),
        ]);
        assert_eq!(e.coefficient(&target), rat(9, 1));
    }

    #[test]
    fn pbw_inverse_two_point_expansion() {
        // pbw_inv(x1 (x) x2) = x1 . x2 + x1 < x2
        let word = vec![gen(0), gen(1)];
        let e = pbw_prelie_inv(&word);
        assert_eq!(e, pbw_prelie_inv_blocks(&word));
        assert_eq!(e.terms().count(), 2);
        let x12 = EnvMonomial::new(vec![gen(0), gen(1)]);
        assert_eq!(e.coefficient(&x12), rat(1, 1));
        let tri = DiffPoly::generator(0).triangle(&DiffPoly::generator(1));
        let (m, _) = tri.terms().next().unwrap();
        assert_eq!(e.coefficient(&EnvMonomial::letter(m.clone())), rat(1, 1));
    }

    #[test]
    fn pbw_inverse_block_formula_agrees() {
        for n in 1..=4usize {
            let word: Vec<DiffMonomial> = (0..n as u16).map(gen).collect();
            assert_eq!(pbw_prelie_inv(&word), pbw_prelie_inv_blocks(&word));
        }
        // repeated letters
        let word = vec![gen(0), gen(0), gen(1)];
        assert_eq!(pbw_prelie_inv(&word), pbw_prelie_inv_blocks(&word));
    }

    #[test]
    fn pbw_roundtrips() {
        // sorted words come back unchanged
        let words: Vec<Vec<DiffMonomial>> = vec![
            vec![gen(0)],
            vec![gen(0), gen(0)],
            vec![gen(0), gen(1)],
            vec![gen(0), gen(0), gen(1), gen(2)],
        ];
        for word in words {
            let e = pbw_prelie_inv(&word);
            let back = pbw_prelie(&e);
            assert_eq!(back, TensorCombination::from_word(word));
        }
        // and pbw_inv after pbw is the identity on elements
        let e = EnvElement::from_monomial(EnvMonomial::new(vec![gen(0), gen(1), gen(1)]))
            .add(&letter(2).scale(&rat(3, 7)));
        assert_eq!(pbw_prelie(&e).pbw_inv(), e);
    }

    #[test]
    fn classical_pbw_degree_two() {
        // pbw(x . y) = x . y + 1/2 (x{y} + y{x})
        let x = DiffPoly::generator(0);
        let y = DiffPoly::generator(1);
        let xy = EnvMonomial::new(vec![gen(0), gen(1)]);
        let result = pbw_classical_monomial(&xy);
        let braces = x.brace(&[&y]).add(&y.brace(&[&x]));
        let expected = EnvElement::from_monomial(xy.clone())
            .add(&EnvElement::from_novikov(&braces).scale(&rat(1, 2)));
        assert_eq!(result, expected);

        // pbw(x * y) = x . y + 1/2 (3 x{y} + y{x})
        let star = letter(0).star(&letter(1), None);
        let result = pbw_classical(&star);
        let skew = x.brace(&[&y]).scale(&rat(3, 1)).add(&y.brace(&[&x]));
        let expected = EnvElement::from_monomial(xy)
            .add(&EnvElement::from_novikov(&skew).scale(&rat(1, 2)));
        assert_eq!(result, expected);

        // pbw fixes letters
        assert_eq!(pbw_classical(&letter(0)), letter(0));
    }

    #[test]
    fn canonical_projections_degree_two() {
        let x = DiffPoly::generator(0);
        let y = DiffPoly::generator(1);
        let xy = EnvElement::from_monomial(EnvMonomial::new(vec![gen(0), gen(1)]));
        let e1 = canonical_projection(1, &xy);
        let e2 = canonical_projection(2, &xy);
        let braces = EnvElement::from_novikov(&x.brace(&[&y]).add(&y.brace(&[&x])));
        assert_eq!(e1, braces.scale(&rat(-1, 2)));
        // e2 = 1/2 (x*y + y*x)
        let sym = letter(0)
            .star(&letter(1), None)
            .add(&letter(1).star(&letter(0), None))
            .scale(&rat(1, 2));
        assert_eq!(e2, sym);
        // the two projections decompose the monomial
        assert_eq!(e1.add(&e2), xy);
        // orthogonality
        assert!(canonical_projection(1, &e2).is_zero());
        assert!(canonical_projection(2, &e1).is_zero());
    }

    #[test]
    fn projections_resolve_identity_small() {
        // over two generators, degree <= 3 monomials
        let monos = [
            EnvMonomial::new(vec![gen(0)]),
            EnvMonomial::new(vec![gen(0), gen(1)]),
            EnvMonomial::new(vec![gen(0), gen(0), gen(1)]),
        ];
        for mono in monos {
            let e = EnvElement::from_monomial(mono.clone());
            let mut total = EnvElement::zero();
            for n in 1..=mono.letter_count() {
                let en = canonical_projection(n, &e);
                total = total.add(&en);
                // idempotence
                assert_eq!(canonical_projection(n, &en), en, "n = {}", n);
                for m in 1..=mono.letter_count() {
                    if m != n {
                        assert!(
                            canonical_projection(m, &en).is_zero(),
                            "e{} e{} should vanish",
                            m,
                            n
                        );
                    }
                }
            }
            assert_eq!(total, e);
        }
    }

    #[test]
    fn word_expansion_theorem() {
        for i in 1..=5 {
            assert_eq!(pbw_word_expansion(i), pbw_word_direct(i), "i = {}", i);
        }
    }

    #[test]
    fn exp_log_star_inverse() {
        let x = letter(0);
        let cap = 5;
        let e = x.exp_star(cap);
        // 1 + x + 1/2 (x.x + x{x}) + ...
        assert_eq!(e.constant_term(), rat(1, 1));
        let xx = EnvMonomial::new(vec![gen(0), gen(0)]);
        assert_eq!(e.coefficient(&xx), rat(1, 2));
        let x1 = DiffPoly::generator(0).brace(&[&DiffPoly::generator(0)]);
        let (m, _) = x1.terms().next().unwrap();
        assert_eq!(e.coefficient(&EnvMonomial::letter(m.clone())), rat(1, 2));
        let back = e.log_star(cap).unwrap();
        assert_eq!(back, x);
        assert!(EnvElement::one().scale(&rat(2, 1)).log_star(5).is_err());
    }

    #[test]
    fn group_like_exponentials() {
        // exp_odot of a primitive element is group-like:
        // Delta(g) = g (x) g up to the cap
        let cap = 4;
        let x = DiffPoly::generator(0);
        let g = EnvElement::from_novikov(&x).exp_odot(cap);
        let d = g.coproduct();
        let mut expected = TensorElement::zero();
        for (a, ca) in g.terms() {
            for (b, cb) in g.terms() {
                if a.total_degree() + b.total_degree() <= cap {
                    expected.add_term(a.clone(), b.clone(), ca * cb);
                }
            }
        }
        // compare only up to total degree cap across the pair
        let mut truncated = TensorElement::zero();
        for ((a, b), c) in d.terms() {
            if a.total_degree() + b.total_degree() <= cap {
                truncated.add_term(a.clone(), b.clone(), c.clone());
            }
        }
        assert_eq!(truncated, expected);
    }
}
