//! Partitions, Young-diagram statistics, dominance order, types, and
//! conjugacy-class labels for relative Weyl groups.

use crate::error::{Error, Result};
use std::fmt;

/// Weakly decreasing sequence of positive integers; the empty partition is
/// the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The single-row partition (n), or empty for n = 0.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The single-column partition (1^n).
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at 1-based row index; 0 outside the diagram.
    pub fn part(&self, row: usize) -> u32 {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let mut parts = Vec::new();
        if let Some(&first) = self.parts.first() {
            for col in 1..=first {
                let count = self.parts.iter().filter(|&&p| p >= col).count() as u32;
                parts.push(count);
            }
        }
        Partition { parts }
    }

    /// Cells of the Young diagram as 1-based (row, col) pairs.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| {
            (1..=p).map(move |col| Cell {
                row: i + 1,
                col: col as usize,
            })
        })
    }

    /// Arm and leg lengths of a cell; errors when the cell lies outside.
    pub fn arm_leg(&self, c: Cell) -> Result<(u32, u32)> {
        if c.row == 0 || c.col == 0 || self.part(c.row) < c.col as u32 {
            return Err(Error::InvalidInput(format!(
                "cell ({}, {}) outside diagram of {self}",
                c.row, c.col
            )));
        }
        let arm = self.part(c.row) - c.col as u32;
        let leg = self.transpose().part(c.col) - c.row as u32;
        Ok((arm, leg))
    }

    /// Dominance order: self <= other within the same size.
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut sa = 0u64;
        let mut sb = 0u64;
        for i in 0..self.parts.len().max(other.parts.len()) {
            sa += self.parts.get(i).copied().unwrap_or(0) as u64;
            sb += other.parts.get(i).copied().unwrap_or(0) as u64;
            if sa > sb {
                return false;
            }
        }
        true
    }

    /// Order of the stabilizer of a permutation with this cycle type:
    /// product over distinct parts i with multiplicity m of i^m * m!.
    pub fn z_lambda(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] == part {
                m += 1;
                i += 1;
            }
            for j in 1..=m {
                z *= part as u64;
                z *= j;
            }
        }
        z
    }

    /// Distinct parts in decreasing order with multiplicities.
    pub fn distinct_parts(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// n(lambda) = sum (i - 1) * lambda_i.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 * p)
            .sum()
    }

    /// Concatenation of parts, re-sorted (multiplication of power sums).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// All partitions of n in reverse-lexicographic order, (n) first.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let hi = remaining.min(max);
            for p in (1..=hi).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }

    /// The dominance down-set: all partitions of the same size <= self.
    pub fn dominance_downset(&self) -> Vec<Partition> {
        Partition::all(self.size())
            .into_iter()
            .filter(|p| p.dominance_leq(self))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// A 1-based cell (row, col) of a Young diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

/// A type: a sequence of pairs (d, omega) with d a positive integer and
/// omega a nonempty partition. Degree = sum of d * |omega|.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TypeOmega {
    pairs: Vec<(u32, Partition)>,
}

impl TypeOmega {
    pub fn new(mut pairs: Vec<(u32, Partition)>) -> Self {
        pairs.retain(|(_, p)| !p.is_empty());
        pairs.sort();
        TypeOmega { pairs }
    }

    pub fn pairs(&self) -> &[(u32, Partition)] {
        &self.pairs
    }

    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|(d, p)| d * p.size()).sum()
    }

    /// `r(omega) = sum (d_i - 1) |omega^i|`.
    pub fn r_of_type(&self) -> u32 {
        self.pairs.iter().map(|(d, p)| (d - 1) * p.size()).sum()
    }

    /// Transposes every component partition.
    pub fn transpose(&self) -> TypeOmega {
        TypeOmega::new(
            self.pairs
                .iter()
                .map(|(d, p)| (*d, p.transpose()))
                .collect(),
        )
    }

    /// All types of the given degree (multisets of pairs (d, omega)).
    pub fn all_of_degree(n: u32) -> Vec<TypeOmega> {
        // enumerate multisets of pairs ordered canonically to avoid duplicates
        let mut universe = Vec::new();
        for d in 1..=n {
            for size in 1..=n / d {
                for p in Partition::all(size) {
                    universe.push((d, p));
                }
            }
        }
        universe.sort();
        let mut out = Vec::new();
        fn rec(
            universe: &[(u32, Partition)],
            from: usize,
            remaining: u32,
            current: &mut Vec<(u32, Partition)>,
            out: &mut Vec<TypeOmega>,
        ) {
            if remaining == 0 {
                out.push(TypeOmega {
                    pairs: current.clone(),
                });
                return;
            }
            for i in from..universe.len() {
                let (d, p) = &universe[i];
                let wt = d * p.size();
                if wt <= remaining {
                    current.push((*d, p.clone()));
                    rec(universe, i, remaining - wt, current, out);
                    current.pop();
                }
            }
        }
        rec(&universe, 0, n, &mut Vec::new(), &mut out);
        out
    }
}

/// Jordan data of one conjugacy class: one partition per distinct eigenvalue,
/// with `|components[i]| = nu_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        MultiPartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// The partition nu of eigenvalue multiplicities (sizes of components).
    pub fn target(&self) -> Partition {
        Partition::new(self.components.iter().map(|p| p.size()).collect())
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(|p| p.size()).sum()
    }

    /// All strata below: componentwise dominance down-set, Cartesian product.
    pub fn strata_below(&self) -> Vec<MultiPartition> {
        let downsets: Vec<Vec<Partition>> = self
            .components
            .iter()
            .map(|p| p.dominance_downset())
            .collect();
        let mut out = vec![MultiPartition::new(Vec::new())];
        for ds in &downsets {
            let mut next = Vec::with_capacity(out.len() * ds.len());
            for prefix in &out {
                for p in ds {
                    let mut components = prefix.components.clone();
                    components.push(p.clone());
                    next.push(MultiPartition::new(components));
                }
            }
            out = next;
        }
        out
    }
}

/// Converts one eigenvalue's relative-Weyl-group class label to a type.
///
/// `mu` is the Jordan partition of the eigenvalue. Its transpose has distinct
/// parts a_r with multiplicities m_r (in decreasing part order), and
/// `eta_slice[r]` must be a partition of m_r. The type has pairs
/// `(eta_slice[r]_s, (1^(a_r)))` over all r and s.
pub fn eta_to_type(mu: &Partition, eta_slice: &[Partition]) -> Result<TypeOmega> {
    let mu_t = mu.transpose();
    let distinct = mu_t.distinct_parts();
    if eta_slice.len() != distinct.len() {
        return Err(Error::ShapeMismatch(format!(
            "eta has {} slots, transpose of {mu} has {} distinct parts",
            eta_slice.len(),
            distinct.len()
        )));
    }
    let mut pairs = Vec::new();
    for (r, &(a, m)) in distinct.iter().enumerate() {
        if eta_slice[r].size() != m {
            return Err(Error::ShapeMismatch(format!(
                "eta slot {r} is a partition of {}, expected {m}",
                eta_slice[r].size()
            )));
        }
        for &d in eta_slice[r].parts() {
            pairs.push((d, Partition::column(a)));
        }
    }
    Ok(TypeOmega::new(pairs))
}

/// The trivial class label (every eta slot the all-ones partition).
pub fn trivial_eta_slice(mu: &Partition) -> Vec<Partition> {
    mu.transpose()
        .distinct_parts()
        .iter()
        .map(|&(_, m)| Partition::column(m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[5, 4, 2]).transpose(), p(&[3, 3, 2, 2, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[4]).transpose(), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn transpose_involution_up_to_12() {
        for n in 0..=12 {
            for lam in Partition::all(n) {
                assert_eq!(lam.transpose().transpose(), lam);
                assert_eq!(lam.transpose().size(), lam.size());
            }
        }
    }

    #[test]
    fn arm_leg_examples() {
        assert_eq!(p(&[5, 4, 2]).arm_leg(Cell { row: 1, col: 2 }).unwrap(), (3, 2));
        assert_eq!(p(&[1]).arm_leg(Cell { row: 1, col: 1 }).unwrap(), (0, 0));
        assert_eq!(p(&[2, 2]).arm_leg(Cell { row: 1, col: 1 }).unwrap(), (1, 1));
        assert!(p(&[2, 2]).arm_leg(Cell { row: 3, col: 1 }).is_err());
    }

    #[test]
    fn hook_and_leg_sums() {
        // sum of legs = n(lambda); sum of (a + l + 1) = sum of hook lengths
        for n in 0..=9 {
            for lam in Partition::all(n) {
                let mut legs = 0;
                let mut hooks = 0;
                for c in lam.cells() {
                    let (a, l) = lam.arm_leg(c).unwrap();
                    legs += l;
                    hooks += a + l + 1;
                }
                assert_eq!(legs, lam.n_stat());
                // independent hook-length sum: n + n(lambda) + n(lambda')
                assert_eq!(hooks, n + lam.n_stat() + lam.transpose().n_stat());
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[1, 1, 1]).dominance_leq(&p(&[2, 1])));
        assert!(!p(&[2, 2, 2]).dominance_leq(&p(&[3, 1, 1, 1])));
        assert!(!p(&[3, 1, 1, 1]).dominance_leq(&p(&[2, 2, 2])));
        assert!(p(&[3]).dominance_leq(&p(&[3])));
    }

    #[test]
    fn dominance_is_partial_order_up_to_8() {
        for n in 0..=8 {
            let all = Partition::all(n);
            for a in &all {
                assert!(a.dominance_leq(a));
                for b in &all {
                    if a.dominance_leq(b) && b.dominance_leq(a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if a.dominance_leq(b) && b.dominance_leq(c) {
                            assert!(a.dominance_leq(c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn z_lambda_examples() {
        assert_eq!(p(&[1, 1, 1]).z_lambda(), 6);
        assert_eq!(p(&[3]).z_lambda(), 3);
        assert_eq!(p(&[2, 1]).z_lambda(), 2);
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        // sum over lambda of n!/z_lambda = n!
        for n in 1..=8u64 {
            let fact: u64 = (1..=n).product();
            let total: u64 = Partition::all(n as u32)
                .iter()
                .map(|lam| fact / lam.z_lambda())
                .sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn type_r_examples() {
        let t = TypeOmega::new(vec![(1, p(&[3]))]);
        assert_eq!(t.r_of_type(), 0);
        let t = TypeOmega::new(vec![(2, p(&[1]))]);
        assert_eq!(t.r_of_type(), 1);
        let t = TypeOmega::new(vec![(2, p(&[1])), (3, p(&[2]))]);
        assert_eq!(t.r_of_type(), 5);
        assert_eq!(t.degree(), 8);
    }

    #[test]
    fn eta_to_type_examples() {
        // mu = (2): mu' = (1,1), one distinct part a=1 with m=2
        let mu = p(&[2]);
        let t = eta_to_type(&mu, &[p(&[1, 1])]).unwrap();
        assert_eq!(
            t,
            TypeOmega::new(vec![(1, p(&[1])), (1, p(&[1]))])
        );
        let t = eta_to_type(&mu, &[p(&[2])]).unwrap();
        assert_eq!(t, TypeOmega::new(vec![(2, p(&[1]))]));
        // trivial
        let t = eta_to_type(&p(&[1]), &[p(&[1])]).unwrap();
        assert_eq!(t, TypeOmega::new(vec![(1, p(&[1]))]));
        // inconsistent eta
        assert!(eta_to_type(&mu, &[p(&[3])]).is_err());
        assert!(eta_to_type(&mu, &[p(&[1]), p(&[1])]).is_err());
    }

    #[test]
    fn strata_below_examples() {
        let m = MultiPartition::new(vec![p(&[2])]);
        let strata = m.strata_below();
        assert_eq!(
            strata,
            vec![
                MultiPartition::new(vec![p(&[2])]),
                MultiPartition::new(vec![p(&[1, 1])]),
            ]
        );
        let m = MultiPartition::new(vec![p(&[1, 1])]);
        assert_eq!(m.strata_below(), vec![m.clone()]);
        let m = MultiPartition::new(vec![p(&[2]), p(&[1])]);
        assert_eq!(
            m.strata_below(),
            vec![
                MultiPartition::new(vec![p(&[2]), p(&[1])]),
                MultiPartition::new(vec![p(&[1, 1]), p(&[1])]),
            ]
        );
    }

    #[test]
    fn all_partitions_counts() {
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(Partition::all(n as u32).len(), e);
        }
    }
}
