//! The Kostka number matrix and its exact inverse.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{enumerate_partitions, kostka_number, Partition};

/// `K_{λμ}` indexed by the partitions of `n` in reverse lexicographic order,
/// together with the certified-integral inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostkaMatrix {
    pub partitions: Vec<Partition>,
    pub matrix: Vec<Vec<BigInt>>,
    pub inverse: Vec<Vec<BigInt>>,
}

impl KostkaMatrix {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|x| x == p)
    }

    /// `K_{shape, content}`.
    pub fn get(&self, shape: &Partition, content: &Partition) -> BigInt {
        match (self.index_of(shape), self.index_of(content)) {
            (Some(i), Some(j)) => self.matrix[i][j].clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn get_inverse(&self, a: &Partition, b: &Partition) -> BigInt {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.inverse[i][j].clone(),
            _ => BigInt::zero(),
        }
    }
}

pub fn kostka_matrix(n: usize) -> KostkaMatrix {
    let partitions = enumerate_partitions(n);
    let matrix: Vec<Vec<BigInt>> = partitions
        .iter()
        .map(|shape| {
            partitions
                .iter()
                .map(|content| BigInt::from(kostka_number(shape, content)))
                .collect()
        })
        .collect();
    let inverse = invert_integral(&matrix).expect("Kostka matrix is unitriangular");
    KostkaMatrix {
        partitions,
        matrix,
        inverse,
    }
}

// Gauss–Jordan over Q; `None` if singular or the inverse is not integral.
fn invert_integral(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}
