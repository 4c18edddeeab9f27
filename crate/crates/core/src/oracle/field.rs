//! Small finite fields by explicit tables.

use super::OracleError;

/// `F_q` for `q ∈ {2, 3, 4, 5}`. Elements are `0..q`; for `F_4 = F_2[x]/(x² + x + 1)`
/// the element `a + b x` is encoded as `a + 2b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u8,
    e: u8,
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u8) -> Result<Self, OracleError> {
        let (p, e) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            _ => return Err(OracleError::UnsupportedField(q)),
        };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                let (s, m) = if e == 1 {
                    ((a + b) % p, ((a as u16 * b as u16) % p as u16) as u8)
                } else {
                    (a ^ b, gf4_mul(a, b))
                };
                add[a as usize * n + b as usize] = s;
                mul[a as usize * n + b as usize] = m;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[a as usize * n + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a as usize] = (1..q).find(|&b| mul[a as usize * n + b as usize] == 1).unwrap();
            }
        }
        Ok(Self {
            p,
            e,
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}

// (a0 + a1 x)(b0 + b1 x) with x² = x + 1
fn gf4_mul(a: u8, b: u8) -> u8 {
    let (a0, a1) = (a & 1, a >> 1);
    let (b0, b1) = (b & 1, b >> 1);
    let hi = a1 & b1;
    let c0 = (a0 & b0) ^ hi;
    let c1 = (a0 & b1) ^ (a1 & b0) ^ hi;
    c0 | (c1 << 1)
}
