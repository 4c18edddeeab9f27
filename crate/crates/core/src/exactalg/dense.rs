//! Dense univariate integer polynomial kernels used by rational-function
//! normalization: primitive parts, exact division and gcd.
//!
//! Polynomials are little-endian coefficient vectors without trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type Dense = Vec<BigInt>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(p: &[BigInt]) -> Dense {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

fn mul_scalar(p: &[BigInt], c: &BigInt) -> Dense {
    p.iter().map(|x| x * c).collect()
}

/// Pseudo-remainder of `a` by `b` (`deg b >= 0`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r: Dense = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lb * r - lr * q^(dr-db) * b
        r = mul_scalar(&r, lb);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient `a / b` over `Z`; `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Dense = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        quo[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut quo);
        Some(quo)
    } else {
        None
    }
}

const PRIME: u64 = 4_611_686_018_427_387_847; // 2^62 - 57

fn to_mod(p: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(PRIME);
    let mut v: Vec<u64> = p
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().expect("reduced residue fits"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), PRIME - 2);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = mulmod(c, *bc);
                a[i + shift] = (a[i + shift] + PRIME - t) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Primitive gcd of two non-zero integer polynomials, leading coefficient
/// positive.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    // A good prime with modular gcd of degree 0 certifies coprimality.
    let am = to_mod(a);
    let bm = to_mod(b);
    if am.len() == a.len() && bm.len() == b.len() && gcd_degree_mod(am, bm) == 0 {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    primitive_part(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Dense {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q)(1-q^2) and (1-q)(1+q^2)
        let a = d(&[1, -1, -1, 1]);
        let b = d(&[1, -1, 1, -1]);
        assert_eq!(gcd(&a, &b), d(&[-1, 1]));
        assert_eq!(gcd(&d(&[1, 1]), &d(&[1, -1])), d(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = d(&[1, 0, 0, -1]);
        assert_eq!(div_exact(&a, &d(&[1, -1])), Some(d(&[1, 1, 1])));
        assert_eq!(div_exact(&a, &d(&[1, 1])), None);
    }

    #[test]
    fn gcd_with_content() {
        let a = d(&[2, 4]);
        let b = d(&[3, 6, 0]);
        let b = {
            let mut b = b;
            trim(&mut b);
            b
        };
        assert_eq!(gcd(&a, &b), d(&[1, 2]));
    }
}
