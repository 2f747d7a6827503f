//! Labelings of Young diagrams encoding admissible partition chains.
//!
//! A labeling of the diagram of p by \[k\] belongs to the family enumerated
//! here when it is surjective, non-decreasing along rows and columns, and for
//! every label h the cells labeled h sit inside the first N+1 rows, N being
//! the number of cells with smaller labels. For k = |p| these are exactly the
//! standard tableaux of shape p.

use super::partition::Partition;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
    max_label: u32,
}

impl Tableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    /// The shape of the cells labeled <= h; a partition since labels are
    /// non-decreasing along rows and columns.
    pub fn subshape(&self, h: u32) -> Partition {
        let parts: Vec<u32> = self
            .rows
            .iter()
            .map(|row| row.iter().filter(|&&l| l <= h).count() as u32)
            .filter(|&c| c > 0)
            .collect();
        Partition::new(parts).expect("monotone labels give a staircase")
    }

    /// The chain of subshapes for h = 0, 1, ..., k, from (0) to the full shape.
    pub fn shape_chain(&self) -> Vec<Partition> {
        (0..=self.max_label).map(|h| self.subshape(h)).collect()
    }

    /// Bijective onto \[|p|\] (and then automatically strictly increasing along
    /// rows and columns).
    pub fn is_standard(&self) -> bool {
        self.max_label == self.shape.size()
    }

    /// Weakly increasing along rows, strictly increasing along columns.
    #[allow(clippy::needless_range_loop)] // compares against the previous row
    pub fn is_semistandard(&self) -> bool {
        for r in 1..self.rows.len() {
            for c in 0..self.rows[r].len() {
                if self.rows[r][c] <= self.rows[r - 1][c] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// All admissible-chain tableaux of shape p with labels \[k\], ordered
/// lexicographically on the row-major label word.
pub fn tableaux(p: &Partition, k: u32) -> Vec<Tableau> {
    if p.is_empty() || k == 0 || k > p.size() {
        return Vec::new();
    }
    let shape: Vec<usize> = p.parts().iter().map(|&x| x as usize).collect();
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(&shape, &mut rows, 0, 0, k, &mut out, p);
    out
}

fn fill(
    shape: &[usize],
    rows: &mut Vec<Vec<u32>>,
    r: usize,
    c: usize,
    k: u32,
    out: &mut Vec<Tableau>,
    p: &Partition,
) {
    if r == shape.len() {
        if let Some(t) = finish(rows, k, p) {
            out.push(t);
        }
        return;
    }
    if c == shape[r] {
        fill(shape, rows, r + 1, 0, k, out, p);
        return;
    }
    let mut lo = 1;
    if c > 0 {
        lo = lo.max(rows[r][c - 1]);
    }
    if r > 0 && c < shape[r - 1] {
        lo = lo.max(rows[r - 1][c]);
    }
    for label in lo..=k {
        rows[r][c] = label;
        fill(shape, rows, r, c + 1, k, out, p);
    }
    rows[r][c] = 0;
}

#[allow(clippy::needless_range_loop)] // labels are 1-based
fn finish(rows: &[Vec<u32>], k: u32, p: &Partition) -> Option<Tableau> {
    let mut counts = vec![0usize; k as usize + 1];
    for row in rows {
        for &l in row {
            counts[l as usize] += 1;
        }
    }
    if counts[1..].contains(&0) {
        return None; // not surjective
    }
    // cells labeled h must lie within the first N_{<h} + 1 rows
    let mut below = 0usize;
    for h in 1..=k as usize {
        let limit = below + 1;
        for (r, row) in rows.iter().enumerate() {
            if r + 1 > limit && row.contains(&(h as u32)) {
                return None;
            }
        }
        below += counts[h];
    }
    Some(Tableau {
        shape: p.clone(),
        rows: rows.to_vec(),
        max_label: k,
    })
}

/// The standard tableaux of shape p.
pub fn standard_tableaux(p: &Partition) -> Vec<Tableau> {
    tableaux(p, p.size())
        .into_iter()
        .filter(|t| t.is_standard())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_families() {
        let p211 = part(&[2, 1, 1]);
        let t2 = tableaux(&p211, 2);
        assert_eq!(t2.len(), 1);
        assert_eq!(t2[0].rows(), &[vec![1, 1], vec![2], vec![2]]);

        let t4 = tableaux(&p211, 4);
        assert_eq!(t4.len(), 3);
        assert!(t4.iter().all(|t| t.is_standard()));

        let p22 = part(&[2, 2]);
        assert_eq!(tableaux(&p22, 3).len(), 4);
        assert_eq!(tableaux(&p22, 4).len(), 2);
        assert_eq!(tableaux(&p22, 2).len(), 2);
        assert_eq!(tableaux(&p22, 1).len(), 0);
    }

    #[test]
    fn top_family_is_standard_tableaux() {
        for n in 1..=6u32 {
            for p in crate::combinatorics::partitions(n) {
                let family = tableaux(&p, n);
                assert!(family.iter().all(|t| t.is_standard()));
                assert_eq!(family.len(), standard_tableaux(&p).len());
            }
        }
    }

    #[test]
    fn semistandard_are_included() {
        for n in 1..=5u32 {
            for p in crate::combinatorics::partitions(n) {
                for k in 1..=n {
                    // every surjective monotone filling that is semistandard
                    // must appear in the family
                    let family = tableaux(&p, k);
                    for t in &family {
                        let chain = t.shape_chain();
                        assert_eq!(chain[0], Partition::empty());
                        assert_eq!(&chain[k as usize], &p);
                    }
                    let all = brute_force_fillings(&p, k);
                    for t in all {
                        if is_semistandard_filling(&t) {
                            assert!(
                                family.iter().any(|u| u.rows() == t.as_slice()),
                                "missing semistandard filling {:?} of {:?} k={}",
                                t,
                                p,
                                k
                            );
                        }
                    }
                }
            }
        }
    }

    fn brute_force_fillings(p: &Partition, k: u32) -> Vec<Vec<Vec<u32>>> {
        // all surjective row/column monotone fillings, no row rule
        let shape: Vec<usize> = p.parts().iter().map(|&x| x as usize).collect();
        let cells: usize = shape.iter().sum();
        let mut out = Vec::new();
        let mut flat = vec![0u32; cells];
        fn coords(shape: &[usize]) -> Vec<(usize, usize)> {
            shape
                .iter()
                .enumerate()
                .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
                .collect()
        }
        let cs = coords(&shape);
        fn go(
            idx: usize,
            flat: &mut Vec<u32>,
            cs: &[(usize, usize)],
            shape: &[usize],
            k: u32,
            out: &mut Vec<Vec<Vec<u32>>>,
        ) {
            if idx == cs.len() {
                let mut seen = vec![false; k as usize + 1];
                for &l in flat.iter() {
                    seen[l as usize] = true;
                }
                if seen[1..].iter().all(|&b| b) {
                    let mut rows = Vec::new();
                    let mut at = 0;
                    for &len in shape {
                        rows.push(flat[at..at + len].to_vec());
                        at += len;
                    }
                    out.push(rows);
                }
                return;
            }
            let (r, c) = cs[idx];
            let mut lo = 1;
            if c > 0 {
                lo = lo.max(flat[idx - 1]);
            }
            if r > 0 && c < shape[r - 1] {
                let above_idx = shape[..r - 1].iter().sum::<usize>() + c;
                lo = lo.max(flat[above_idx]);
            }
            for l in lo..=k {
                flat[idx] = l;
                go(idx + 1, flat, cs, shape, k, out);
            }
            flat[idx] = 0;
        }
        go(0, &mut flat, &cs, &shape, k, &mut out);
        out
    }

    #[allow(clippy::needless_range_loop)]
    fn is_semistandard_filling(rows: &[Vec<u32>]) -> bool {
        for r in 1..rows.len() {
            for c in 0..rows[r].len() {
                if rows[r][c] <= rows[r - 1][c] {
                    return false;
                }
            }
        }
        true
    }
}
