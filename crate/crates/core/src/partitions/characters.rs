//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, computed on beta-sets (bead positions of an abacus).

use std::collections::{BTreeSet, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Partition, PartitionError};

type Key = (Partition, Partition);

fn cache() -> &'static RwLock<HashMap<Key, BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn beta_set(lambda: &Partition) -> BTreeSet<usize> {
    let l = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, p)| p + (l - 1 - i))
        .collect()
}

fn from_beta(beads: &BTreeSet<usize>) -> Partition {
    let l = beads.len();
    let parts: Vec<usize> = beads
        .iter()
        .rev()
        .enumerate()
        .map(|(i, b)| b - (l - 1 - i))
        .collect();
    Partition::from_unsorted(parts)
}

/// `χ^μ_λ`: the character of the irreducible `S_n`-module indexed by `mu`
/// evaluated at the conjugacy class of cycle type `lambda`.
pub fn sn_character(mu: &Partition, lambda: &Partition) -> Result<BigInt, PartitionError> {
    if mu.size() != lambda.size() {
        return Err(PartitionError::SizeMismatch(mu.clone(), lambda.clone()));
    }
    Ok(character(mu, lambda.parts()))
}

fn character(mu: &Partition, cycles: &[usize]) -> BigInt {
    if cycles.is_empty() {
        return BigInt::from(1);
    }
    let key = (mu.clone(), Partition::new(cycles.to_vec()));
    if let Some(v) = cache().read().expect("cache lock").get(&key) {
        return v.clone();
    }
    // strip a rim hook of length cycles[0]
    let r = cycles[0];
    let rest = &cycles[1..];
    let beads = beta_set(mu);
    let mut total = BigInt::zero();
    for &b in &beads {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let between = beads.range(b - r + 1..b).count();
        let mut moved = beads.clone();
        moved.remove(&b);
        moved.insert(b - r);
        let term = character(&from_beta(&moved), rest);
        if between % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    cache()
        .write()
        .expect("cache lock")
        .insert(key, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, z};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=7 {
            for l in enumerate_partitions(n) {
                assert_eq!(sn_character(&Partition::row(n), &l).unwrap(), BigInt::from(1));
                let sign = if (n - l.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    sn_character(&Partition::column(n), &l).unwrap(),
                    BigInt::from(sign)
                );
            }
        }
    }

    #[test]
    fn dimensions_match_hook_length_formula() {
        fn hook_dim(l: &Partition) -> BigInt {
            let n = l.size();
            let d = l.dual();
            let mut hooks = BigInt::from(1);
            for (i, &row) in l.parts().iter().enumerate() {
                for j in 0..row {
                    hooks *= BigInt::from(row - j - 1 + d.part(j) - i - 1 + 1);
                }
            }
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            fact / hooks
        }
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), BigInt::from(2));
        for n in 1..=7 {
            for l in enumerate_partitions(n) {
                assert_eq!(
                    sn_character(&l, &Partition::column(n)).unwrap(),
                    hook_dim(&l),
                    "{l}"
                );
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let parts = enumerate_partitions(n);
            for a in &parts {
                for b in &parts {
                    let s: BigInt = parts
                        .iter()
                        .map(|m| sn_character(m, a).unwrap() * sn_character(m, b).unwrap())
                        .sum();
                    let expected = if a == b { z(a) } else { BigInt::zero() };
                    assert_eq!(s, expected, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn size_mismatch() {
        assert!(sn_character(&p(&[2]), &p(&[1])).is_err());
    }
}
