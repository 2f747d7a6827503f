//! Formal differential operators over Q\[u\] with d = d/du.
//!
//! Operators are finite sums a_n(u) D^n with composition defined by the
//! Leibniz rule. The module carries the operator-level verification of the
//! iterated-Leibniz normal form and of the PBW decomposition of
//! a_1...a_m d^m into compositions of lower-order operators.

use crate::arith::{binomial, factorial, stirling_first, Int, Rat};
use crate::combinatorics::setpart::{ordered_set_partitions, set_partitions_by_minima};
use crate::combinatorics::words::catalan_words;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in u with exact rational coefficients, dense ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DPoly {
    coeffs: Vec<Rat>,
}

impl DPoly {
    pub fn zero() -> Self {
        DPoly::default()
    }

    pub fn one() -> Self {
        DPoly::from_coeffs(vec![Rat::one()])
    }

    /// The variable u.
    pub fn u() -> Self {
        DPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = DPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Rat) -> Self {
        DPoly::from_coeffs(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &DPoly) -> DPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                a + b
            })
            .collect();
        DPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &DPoly) -> DPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> DPoly {
        if c.is_zero() {
            return DPoly::zero();
        }
        DPoly {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &DPoly) -> DPoly {
        if self.is_zero() || other.is_zero() {
            return DPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        DPoly::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> DPoly {
        if self.coeffs.len() <= 1 {
            return DPoly::zero();
        }
        DPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from(Int::from(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn derivative_n(&self, n: usize) -> DPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derivative();
        }
        out
    }

    /// A random polynomial of degree at most `max_degree` with small integer
    /// coefficients, never the zero polynomial.
    pub fn random(rng: &mut impl Rng, max_degree: usize) -> DPoly {
        loop {
            let coeffs: Vec<Rat> = (0..=max_degree)
                .map(|_| Rat::from(Int::from(rng.gen_range(-3i64..=3))))
                .collect();
            let p = DPoly::from_coeffs(coeffs);
            if !p.is_zero() {
                return p;
            }
        }
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if i < self.degree() {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{} u", c)?,
                _ => write!(f, "{} u^{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// A formal differential operator: a finite map from orders to coefficient
/// polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FDiff {
    terms: BTreeMap<usize, DPoly>,
}

impl FDiff {
    pub fn zero() -> Self {
        FDiff::default()
    }

    pub fn identity() -> Self {
        FDiff::from_term(DPoly::one(), 0)
    }

    /// The operator a(u) D^n.
    pub fn from_term(coeff: DPoly, order: usize) -> Self {
        let mut out = FDiff::zero();
        out.add_term(coeff, order);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &DPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, order: usize) -> DPoly {
        self.terms.get(&order).cloned().unwrap_or_else(DPoly::zero)
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coeff: DPoly, order: usize) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(order) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FDiff) -> FDiff {
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(c.clone(), n);
        }
        out
    }

    pub fn sub(&self, other: &FDiff) -> FDiff {
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(c.scale(&-Rat::one()), n);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> FDiff {
        if c.is_zero() {
            return FDiff::zero();
        }
        FDiff {
            terms: self
                .terms
                .iter()
                .map(|(&n, p)| (n, p.scale(c)))
                .collect(),
        }
    }

    /// The commutative product (a D^n)(b D^m) = ab D^{n+m}.
    pub fn bullet(&self, other: &FDiff) -> FDiff {
        let mut out = FDiff::zero();
        for (&n, a) in &self.terms {
            for (&m, b) in &other.terms {
                out.add_term(a.mul(b), n + m);
            }
        }
        out
    }

    /// Operator composition by the Leibniz rule:
    /// (a D^n)(b D^m) = sum_p binom(n,p) a d^{n-p}(b) D^{m+p}.
    pub fn compose(&self, other: &FDiff) -> FDiff {
        let mut out = FDiff::zero();
        for (&n, a) in &self.terms {
            for (&m, b) in &other.terms {
                for p in 0..=n {
                    let coeff = a
                        .mul(&b.derivative_n(n - p))
                        .scale(&Rat::from(binomial(n as u64, p as u64)));
                    out.add_term(coeff, m + p);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &FDiff) -> FDiff {
        self.compose(other).sub(&other.compose(self))
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &DPoly) -> DPoly {
        let mut out = DPoly::zero();
        for (&n, a) in &self.terms {
            out = out.add(&a.mul(&f.derivative_n(n)));
        }
        out
    }
}

impl fmt::Display for FDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) D^{}", c, n)?;
        }
        Ok(())
    }
}

/// Substitutes concrete polynomials for the abstract free-algebra
/// generators: the variable of generator g with index i becomes the
/// (i+1)-st derivative of its realization. Shared by the tests that realize
/// enveloping-algebra identities as differential operators.
pub fn realize(poly: &crate::novikov::DiffPoly, realizations: &[DPoly]) -> DPoly {
    let mut out = DPoly::zero();
    for (m, c) in poly.terms() {
        let mut term = DPoly::one().scale(c);
        for &(g, i) in m.factors() {
            term = term.mul(&realizations[g as usize].derivative_n((i + 1) as usize));
        }
        out = out.add(&term);
    }
    out
}

/// The multiplication-style algebra map on commutative monomials:
/// a_1 (.) ... (.) a_n goes to a_1...a_n D^n.
pub fn monomial_operator(factors: &[DPoly]) -> FDiff {
    let mut product = DPoly::one();
    for a in factors {
        product = product.mul(a);
    }
    FDiff::from_term(product, factors.len())
}

/// Checks the iterated-Leibniz normal form: the composition of the
/// first-order operators f_j D equals the sum over min-ordered set partitions
/// of \[i\] of the product of the Catalan-word sums of the blocks times D^k,
/// k the number of blocks.
pub fn verify_leibniz_normal_form(fs: &[DPoly]) -> bool {
    let i = fs.len();
    assert!(i >= 1);
    let mut lhs = FDiff::from_term(fs[0].clone(), 1);
    for f in &fs[1..] {
        lhs = lhs.compose(&FDiff::from_term(f.clone(), 1));
    }
    let mut rhs = FDiff::zero();
    for blocks in set_partitions_by_minima(i) {
        let mut coeff = DPoly::one();
        for block in &blocks {
            let mut block_sum = DPoly::zero();
            for w in catalan_words(block.len()) {
                let mut term = DPoly::from_coeffs(vec![Rat::from(w.coefficient())]);
                for (&pos, &wj) in block.iter().zip(w.letters()) {
                    term = term.mul(&fs[pos - 1].derivative_n(wj as usize));
                }
                block_sum = block_sum.add(&term);
            }
            coeff = coeff.mul(&block_sum);
        }
        rhs.add_term(coeff, blocks.len());
    }
    lhs == rhs
}

/// Checks the PBW decomposition of a_1...a_m D^m: the sum over n of the n-th
/// canonical projection images, each a combination of compositions
/// a_{I_1} d^{|I_1|} o ... o a_{I_k} d^{|I_k|} over ordered set partitions,
/// weighted by s(k,n)/k!, reassembles the operator. Also checks each
/// projection image separately against `projection_operator`.
pub fn verify_pbw_decomposition(factors: &[DPoly]) -> bool {
    let m = factors.len();
    assert!(m >= 1);
    let lhs = monomial_operator(factors);
    let mut total = FDiff::zero();
    for n in 1..=m {
        total = total.add(&projection_operator(n, factors));
    }
    lhs == total
}

/// The image of the n-th canonical projection of a_1 (.) ... (.) a_m,
/// realized as a differential operator.
pub fn projection_operator(n: usize, factors: &[DPoly]) -> FDiff {
    let m = factors.len();
    let mut out = FDiff::zero();
    for k in n..=m {
        let coeff = Rat::new(stirling_first(k as u64, n as u64), factorial(k as u64));
        if coeff.is_zero() {
            continue;
        }
        let mut sum = FDiff::zero();
        for blocks in ordered_set_partitions(m, k) {
            let mut acc = FDiff::identity();
            for block in &blocks {
                let picked: Vec<DPoly> = block.iter().map(|&i| factors[i - 1].clone()).collect();
                acc = acc.compose(&monomial_operator(&picked));
            }
            sum = sum.add(&acc);
        }
        out = out.add(&sum.scale(&coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn upoly(coeffs: &[i64]) -> DPoly {
        DPoly::from_coeffs(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn polynomial_arithmetic() {
        let u = DPoly::u();
        let u3 = u.mul(&u).mul(&u);
        assert_eq!(u3.derivative(), upoly(&[0, 0, 3]));
        assert_eq!(u3.derivative_n(3), upoly(&[6]));
        assert_eq!(u3.derivative_n(4), DPoly::zero());
    }

    #[test]
    fn first_order_composition() {
        // (a D)(b D) = a b' D + a b D^2
        let a = upoly(&[1, 2]);
        let b = upoly(&[0, 0, 1]);
        let ad = FDiff::from_term(a.clone(), 1);
        let bd = FDiff::from_term(b.clone(), 1);
        let prod = ad.compose(&bd);
        assert_eq!(prod.coefficient(1), a.mul(&b.derivative()));
        assert_eq!(prod.coefficient(2), a.mul(&b));
        // the commutator stays first order: [aD, bD] = (a b' - b a') D
        let comm = ad.commutator(&bd);
        assert_eq!(comm.order(), Some(1));
        assert_eq!(
            comm.coefficient(1),
            a.mul(&b.derivative()).sub(&b.mul(&a.derivative()))
        );
    }

    #[test]
    fn composition_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let ops: Vec<FDiff> = (0..3)
                .map(|_| {
                    let order = rng.gen_range(0..=2);
                    FDiff::from_term(DPoly::random(&mut rng, 3), order)
                })
                .collect();
            let lhs = ops[0].compose(&ops[1]).compose(&ops[2]);
            let rhs = ops[0].compose(&ops[1].compose(&ops[2]));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bullet_is_top_order_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let a = FDiff::from_term(DPoly::random(&mut rng, 2), n);
            let b = FDiff::from_term(DPoly::random(&mut rng, 2), m);
            let bullet = a.bullet(&b);
            let star = a.compose(&b);
            assert_eq!(bullet.coefficient(n + m), star.coefficient(n + m));
        }
    }

    #[test]
    fn apply_is_an_algebra_action() {
        // ev(D)(u^3) = 3u^2
        let d = FDiff::from_term(DPoly::one(), 1);
        let u3 = upoly(&[0, 0, 0, 1]);
        assert_eq!(d.apply(&u3), upoly(&[0, 0, 3]));
        // ev(u^2 D^2)(u^2) = 2u^2
        let op = FDiff::from_term(upoly(&[0, 0, 1]), 2);
        assert_eq!(op.apply(&upoly(&[0, 0, 1])), upoly(&[0, 0, 2]));
        // composition acts as iterated application
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ud = FDiff::from_term(DPoly::u(), 1);
        for _ in 0..5 {
            let f = DPoly::random(&mut rng, 5);
            assert_eq!(ud.compose(&ud).apply(&f), ud.apply(&ud.apply(&f)));
        }
    }

    #[test]
    fn operators_separate_on_monomials() {
        // distinct operators of order <= 3, coefficient degree <= 2 disagree
        // on some u^k with k <= 6
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a = FDiff::from_term(DPoly::random(&mut rng, 2), rng.gen_range(0..=3));
            let b = FDiff::from_term(DPoly::random(&mut rng, 2), rng.gen_range(0..=3));
            if a == b {
                continue;
            }
            let mut separated = false;
            for k in 0..=6usize {
                let mut mono = vec![Rat::zero(); k + 1];
                mono[k] = Rat::one();
                let f = DPoly::from_coeffs(mono);
                if a.apply(&f) != b.apply(&f) {
                    separated = true;
                    break;
                }
            }
            assert!(separated, "{} vs {}", a, b);
        }
    }

    #[test]
    fn monomial_operator_map() {
        let a = upoly(&[0, 1]);
        let b = upoly(&[1, 1]);
        let g = monomial_operator(&[a.clone(), b.clone()]);
        assert_eq!(g, FDiff::from_term(a.mul(&b), 2));
        assert_eq!(monomial_operator(std::slice::from_ref(&a)), FDiff::from_term(a, 1));
        // u (.) u (.) 1 -> u^2 D^3
        let g = monomial_operator(&[DPoly::u(), DPoly::u(), DPoly::one()]);
        assert_eq!(g, FDiff::from_term(upoly(&[0, 0, 1]), 3));
    }

    #[test]
    fn leibniz_normal_form_small() {
        // i = 2 by hand: f1 d o f2 d = f1 f2' d + f1 f2 d^2
        let f1 = upoly(&[1, 0, 1]);
        let f2 = upoly(&[0, 2]);
        assert!(verify_leibniz_normal_form(std::slice::from_ref(&f1)));
        assert!(verify_leibniz_normal_form(&[f1, f2]));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for i in 1..=5 {
            let fs: Vec<DPoly> = (0..i).map(|_| DPoly::random(&mut rng, 3)).collect();
            assert!(verify_leibniz_normal_form(&fs), "i = {}", i);
        }
    }

    #[test]
    fn pbw_decomposition_examples() {
        // m = 2: xy d^2 = -1/2 (x y' + y x') d + 1/2 ((x d)(y d) + (y d)(x d))
        let x = upoly(&[0, 1, 1]);
        let y = upoly(&[2, 1]);
        let e1 = projection_operator(1, &[x.clone(), y.clone()]);
        let expected1 = FDiff::from_term(
            x.mul(&y.derivative())
                .add(&y.mul(&x.derivative()))
                .scale(&rat(-1, 2)),
            1,
        );
        assert_eq!(e1, expected1);
        let e2 = projection_operator(2, &[x.clone(), y.clone()]);
        let xd = FDiff::from_term(x.clone(), 1);
        let yd = FDiff::from_term(y.clone(), 1);
        let expected2 = xd.compose(&yd).add(&yd.compose(&xd)).scale(&rat(1, 2));
        assert_eq!(e2, expected2);
        assert!(verify_pbw_decomposition(&[x, y]));

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for m in 1..=4 {
            let fs: Vec<DPoly> = (0..m).map(|_| DPoly::random(&mut rng, 3)).collect();
            assert!(verify_pbw_decomposition(&fs), "m = {}", m);
        }
    }
}
