//! Exact integer and rational scalar helpers used across the crate.
//!
//! Everything is arbitrary precision: coefficients such as the binomial-basis
//! flow coefficients grow super-exponentially with the partition size, so no
//! fixed-width arithmetic is used anywhere in the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// binom(n, k) with binom(n, k) = 0 for k > n.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Multinomial coefficient (sum parts; parts...) for the given parts.
pub fn multinomial(parts: &[u64]) -> Int {
    let mut acc = Int::one();
    let mut seen = 0u64;
    for &p in parts {
        seen += p;
        acc *= binomial(seen, p);
    }
    acc
}

/// Signed Stirling numbers of the first kind, defined by
/// x(x-1)...(x-j+1) = sum_i s(j, i) x^i.
pub fn stirling_first(j: u64, i: u64) -> Int {
    if i > j {
        return Int::zero();
    }
    // Row recursion s(j+1, i) = s(j, i-1) - j * s(j, i), s(0, 0) = 1.
    let mut row = vec![Int::one()];
    for m in 0..j {
        let mut next = vec![Int::zero(); row.len() + 1];
        for (idx, v) in row.iter().enumerate() {
            next[idx + 1] += v;
            next[idx] -= Int::from(m) * v;
        }
        row = next;
    }
    row[i as usize].clone()
}

/// Eulerian number a(n, k): permutations of \[n\] with exactly k descents.
pub fn eulerian(n: u64, k: u64) -> Int {
    if k >= n.max(1) {
        return if n == 0 && k == 0 { Int::one() } else { Int::zero() };
    }
    let mut row = vec![Int::one()];
    for m in 2..=n {
        let mut next = vec![Int::zero(); m as usize];
        for (idx, v) in row.iter().enumerate() {
            let idx_u = idx as u64;
            next[idx] += Int::from(idx_u + 1) * v;
            next[idx + 1] += Int::from(m - idx_u - 1) * v;
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Renders a rational as "numerator/denominator" in lowest terms, sign on the
/// numerator, denominator always present.
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(6), int(720));
        assert_eq!(binomial(7, 3), int(35));
        assert_eq!(binomial(3, 7), int(0));
        assert_eq!(multinomial(&[2, 1, 1]), int(12));
        assert_eq!(multinomial(&[]), int(1));
    }

    #[test]
    fn stirling_small_values() {
        // x(x-1) = x^2 - x
        assert_eq!(stirling_first(2, 1), int(-1));
        assert_eq!(stirling_first(2, 2), int(1));
        for j in 0..=8 {
            assert_eq!(stirling_first(j, j), int(1));
        }
        // Row sums vanish for j >= 2 since the falling factorial has root 1.
        for j in 2..=8u64 {
            let sum: Int = (0..=j).map(|i| stirling_first(j, i)).sum();
            assert_eq!(sum, int(0));
        }
    }

    #[test]
    fn eulerian_small_values() {
        assert_eq!(eulerian(2, 0), int(1));
        assert_eq!(eulerian(2, 1), int(1));
        assert_eq!(eulerian(4, 1), int(11));
        // Rows sum to n!.
        for n in 1..=8u64 {
            let sum: Int = (0..n).map(|k| eulerian(n, k)).sum();
            assert_eq!(sum, factorial(n));
        }
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rat_string(&rat(29, 60)), "29/60");
        assert_eq!(rat_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_string(&rat(2, 4)), "1/2");
        assert_eq!(rat_string(&rat(3, 1)), "3/1");
    }
}
