//! Integer partitions, multipartitions and the classical statistics built on
//! them: the quadratic pairing, centralizer orders, conjugation, tableau
//! charge, Kostka–Foulkes polynomials, symmetric-group characters and the
//! Kostka matrix.
//!
//! Partitions of the same size are ordered reverse lexicographically
//! (`[4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]`); this order drives every
//! enumeration and every deterministic rendering downstream.

mod characters;
mod kostka;
mod tableaux;

pub use characters::sn_character;
pub use kostka::{kostka_matrix, KostkaMatrix};
pub use tableaux::{
    charge, kostka_foulkes_cocharge, kostka_number, reading_word, semistandard_tableaux,
    Tableau,
};
pub(crate) use tableaux::{export_kf_cache, import_kf_cache};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition: {0}")]
    Malformed(String),
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(Partition, Partition),
}

/// A partition: a non-increasing sequence of positive integers.
///
/// The empty sequence is the partition of `0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Panics unless `parts` is non-increasing with no zero parts; use
    /// [`Partition::try_new`] for untrusted input.
    pub fn new(parts: Vec<usize>) -> Self {
        Self::try_new(parts).expect("invalid partition")
    }

    pub fn try_new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::Malformed(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Malformed(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(n)` (empty for `n = 0`).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity `m_j` of the part `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// `(j, m_j)` for every part size present, ascending in `j`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((j, m)) if *j == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate partition (transpose of the Young diagram).
    pub fn dual(&self) -> Self {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Every part multiplied by `d`.
    pub fn scaled(&self, d: usize) -> Self {
        Self {
            parts: self.parts.iter().map(|p| p * d).collect(),
        }
    }

    /// Multiset union of parts (the partition of `p_λ p_μ`).
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            if j >= other.parts.len() || (i < self.parts.len() && self.parts[i] >= other.parts[j])
            {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Self { parts }
    }

    /// Hook shape `(r, 1^{n-r})`.
    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    /// Dominance order `self ⊴ other` (same size assumed).
    pub fn dominated_by(&self, other: &Self) -> bool {
        let mut a = 0;
        let mut b = 0;
        let len = self.len().max(other.len());
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `[3,1,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Malformed(format!("expected [..], got {t:?}")))?
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| PartitionError::Malformed(format!("bad part {x:?} in {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::try_new(parts)
    }
}

/// One partition per alphabet slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Self { components }
    }

    /// `num_slots` empty partitions.
    pub fn empty(num_slots: usize) -> Self {
        Self {
            components: vec![Partition::empty(); num_slots],
        }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i]
    }

    pub fn num_slots(&self) -> usize {
        self.components.len()
    }

    /// Size vector `(|π¹|, …, |π^r|)`.
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Partition::size).collect()
    }

    pub fn total_size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    pub fn dual(&self) -> Self {
        Self {
            components: self.components.iter().map(Partition::dual).collect(),
        }
    }

    /// Slot-wise union; slot counts must agree.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.num_slots(), other.num_slots(), "slot count mismatch");
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    pub fn scaled(&self, d: usize) -> Self {
        Self {
            components: self.components.iter().map(|p| p.scaled(d)).collect(),
        }
    }

    /// `z_π = Π_slots z_{π^i}`.
    pub fn z(&self) -> BigInt {
        self.components.iter().map(z).fold(BigInt::one(), |a, b| a * b)
    }

    pub fn dominated_by(&self, other: &Self) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.dominated_by(b))
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MultiPartition {
    type Err = PartitionError;

    /// Parses `[3,1];[2];[]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let components = s
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Partition>, _>>()?;
        Ok(Self { components })
    }
}

/// `⟨λ, μ⟩ = Σ_{i,j} min(i, j) m_i(λ) m_j(μ)`.
pub fn pairing(lambda: &Partition, mu: &Partition) -> usize {
    let ml = lambda.multiplicities();
    let mm = mu.multiplicities();
    let mut total = 0;
    for &(i, a) in &ml {
        for &(j, b) in &mm {
            total += i.min(j) * a * b;
        }
    }
    total
}

/// Centralizer order `z_λ = Π_j j^{m_j} m_j!`.
pub fn z(lambda: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    for (j, m) in lambda.multiplicities() {
        for k in 1..=m {
            acc *= BigInt::from(j) * BigInt::from(k);
        }
    }
    acc
}

pub fn dual(lambda: &Partition) -> Partition {
    lambda.dual()
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All multipartitions with the given size vector, in lexicographic order of
/// the per-slot reverse-lexicographic enumerations.
pub fn enumerate_multipartitions(sizes: &[usize]) -> Vec<MultiPartition> {
    let mut out = vec![MultiPartition::new(Vec::new())];
    for &n in sizes {
        let parts = enumerate_partitions(n);
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for mp in &out {
            for p in &parts {
                let mut c = mp.components.clone();
                c.push(p.clone());
                next.push(MultiPartition::new(c));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&p(&[1]), &p(&[1])), 1);
        assert_eq!(pairing(&p(&[2]), &p(&[1, 1])), 2);
        assert_eq!(pairing(&Partition::empty(), &p(&[3, 2])), 0);
    }

    #[test]
    fn pairing_symmetric_and_bounded() {
        let all: Vec<Partition> = (0..=8).flat_map(enumerate_partitions).collect();
        for a in &all {
            for b in &all {
                assert_eq!(pairing(a, b), pairing(b, a));
            }
            let self_pair = pairing(a, a);
            assert!(self_pair >= a.size());
            assert_eq!(self_pair == a.size(), *a == Partition::row(a.size()), "{a}");
        }
    }

    #[test]
    fn pairing_equals_conjugate_dot_product() {
        for n in 0..=6 {
            for a in enumerate_partitions(n) {
                for b in enumerate_partitions(6 - n) {
                    let (da, db) = (a.dual(), b.dual());
                    let dot: usize = (0..da.len().max(db.len()))
                        .map(|k| da.part(k) * db.part(k))
                        .sum();
                    assert_eq!(pairing(&a, &b), dot);
                }
            }
        }
    }

    #[test]
    fn centralizer_orders() {
        assert_eq!(z(&p(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(z(&p(&[3])), BigInt::from(3));
        assert_eq!(z(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8usize {
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            let total: BigInt = enumerate_partitions(n).iter().map(|l| &fact / z(l)).sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3]).dual(), p(&[1, 1, 1]));
        assert_eq!(p(&[2, 1]).dual(), p(&[2, 1]));
        assert_eq!(Partition::empty().dual(), Partition::empty());
        for n in 0..=8 {
            for l in enumerate_partitions(n) {
                assert_eq!(l.dual().dual(), l);
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        let four: Vec<String> = enumerate_partitions(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        let sorted = {
            let mut v = enumerate_partitions(6);
            v.sort();
            v
        };
        assert_eq!(sorted, enumerate_partitions(6));
    }

    #[test]
    fn partition_count_recurrence() {
        // p(n) by Euler's pentagonal recurrence, independent of enumeration
        let mut pc = vec![1i64];
        for n in 1..=12i64 {
            let mut s = 0;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                s += sign * pc[(n - g1) as usize];
                if g2 <= n {
                    s += sign * pc[(n - g2) as usize];
                }
                k += 1;
            }
            pc.push(s);
        }
        for n in 0..=12 {
            assert_eq!(enumerate_partitions(n).len() as i64, pc[n]);
        }
    }

    #[test]
    fn parsing_and_rendering() {
        let x: Partition = "[3,1,1]".parse().unwrap();
        assert_eq!(x, p(&[3, 1, 1]));
        assert_eq!(x.to_string(), "[3,1,1]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,3]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        let m: MultiPartition = "[3,1];[2];[]".parse().unwrap();
        assert_eq!(m.sizes(), vec![4, 2, 0]);
        assert_eq!(m.to_string(), "[3,1];[2];[]");
    }

    #[test]
    fn union_and_dominance() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
        assert!(p(&[2, 1, 1]).dominated_by(&p(&[2, 2])));
        assert!(!p(&[2, 2]).dominated_by(&p(&[2, 1, 1])));
    }
}
