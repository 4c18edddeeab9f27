//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Z[q, q^-1]`, stored as a sparse exponent -> coefficient map.
///
/// No stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolyQ {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c.into());
        }
        p
    }

    /// Dense coefficient list, lowest exponent `0` first.
    pub fn from_dense(coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i64, c.clone())),
        )
    }

    pub fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when the polynomial is `c * q^e` for a single term.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`; panics if inexact.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| {
                    let (quo, rem) = x.div_rem(c);
                    assert!(rem.is_zero(), "inexact scalar division");
                    (*e, quo)
                })
                .collect(),
        }
    }

    /// Substitutes `q -> q^d`.
    pub fn adams(&self, d: u32) -> Self {
        assert!(d >= 1, "Adams operation needs d >= 1");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * d as i64, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `q = x` (`x` must be non-zero if negative exponents occur).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let term = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += term * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Value at an integer point; errors with `None` if a negative exponent
    /// makes the value non-integral.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval(&BigRational::from_integer(BigInt::from(x)));
        v.is_integer().then(|| v.to_integer())
    }

    /// Every coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Monic in the sense of leading coefficient `1`.
    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Dense coefficients of `q^-low * self`, together with `low`.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.low_degree(), self.degree()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.coeffs {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    /// Machine format: `(exponent, coefficient)` pairs, descending exponent.
    pub fn to_machine_pairs(&self) -> Vec<(i64, BigInt)> {
        self.coeffs
            .iter()
            .rev()
            .map(|(e, c)| (*e, c.clone()))
            .collect()
    }

    /// Machine rendering, e.g. `[(3,1),(1,-2),(0,1)]`.
    pub fn to_machine_string(&self) -> String {
        let body: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| format!("({e},{c})"))
            .collect();
        format!("[{}]", body.join(","))
    }

    /// Parses the machine rendering produced by [`Self::to_machine_string`].
    pub fn parse_machine(s: &str) -> Option<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('[')?.strip_suffix(']')?.trim();
        let mut p = Self::zero();
        if inner.is_empty() {
            return Some(p);
        }
        let mut rest = inner;
        loop {
            let open = rest.strip_prefix('(')?;
            let close = open.find(')')?;
            let (e, c) = open[..close].split_once(',')?;
            p.add_term(e.trim().parse().ok()?, &c.trim().parse().ok()?);
            rest = open[close + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix(',')?.trim_start();
        }
        Some(p)
    }

    /// Parses the human rendering (`q^10 + 2q^3 - q + 1`).
    pub fn parse_human(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "0" {
            return Some(Self::zero());
        }
        let mut p = Self::zero();
        let mut sign = BigInt::one();
        let mut tokens = s.split_whitespace().peekable();
        let mut first = true;
        while let Some(tok) = tokens.next() {
            let term = match tok {
                "+" if !first => {
                    sign = BigInt::one();
                    tokens.next()?
                }
                "-" if !first => {
                    sign = -BigInt::one();
                    tokens.next()?
                }
                t => t,
            };
            first = false;
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term),
            };
            let (coef, exp) = match body.find('q') {
                None => (body.parse::<BigInt>().ok()?, 0),
                Some(i) => {
                    let c = if i == 0 {
                        BigInt::one()
                    } else {
                        body[..i].parse::<BigInt>().ok()?
                    };
                    let tail = &body[i + 1..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        let t = tail.strip_prefix('^')?;
                        let t = t
                            .strip_prefix('{')
                            .and_then(|t| t.strip_suffix('}'))
                            .unwrap_or(t);
                        t.parse::<i64>().ok()?
                    };
                    (c, e)
                }
            };
            let c = if neg { -coef } else { coef };
            p.add_term(exp, &(c * &sign));
            sign = BigInt::one();
        }
        Some(p)
    }
}

impl fmt::Display for LaurentPolyQ {
    /// Descending powers, coefficient juxtaposed: `q^10 + 2q^6 - q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                e => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolyQ({self})")
    }
}

impl Add for &LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn add(self, rhs: &LaurentPolyQ) -> LaurentPolyQ {
        let (mut big, small) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &small.coeffs {
            big.add_term(*e, c);
        }
        big
    }
}

impl Sub for &LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn sub(self, rhs: &LaurentPolyQ) -> LaurentPolyQ {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn mul(self, rhs: &LaurentPolyQ) -> LaurentPolyQ {
        let mut out = LaurentPolyQ::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn neg(self) -> LaurentPolyQ {
        LaurentPolyQ {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolyQ {
            type Output = LaurentPolyQ;
            fn $m(self, rhs: LaurentPolyQ) -> LaurentPolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn neg(self) -> LaurentPolyQ {
        -&self
    }
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`, or `(q^-1)_n` when `inverse_variable`.
pub fn q_pochhammer(n: u32, inverse_variable: bool) -> LaurentPolyQ {
    let mut acc = LaurentPolyQ::one();
    for s in 1..=n as i64 {
        let e = if inverse_variable { -s } else { s };
        let factor = LaurentPolyQ::from_terms([(0, 1), (e, -1)]);
        acc = &acc * &factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPolyQ {
        LaurentPolyQ::from_terms(terms.iter().copied())
    }

    #[test]
    fn pochhammer_small_values() {
        assert!(q_pochhammer(0, false).is_one());
        assert!(q_pochhammer(0, true).is_one());
        assert_eq!(q_pochhammer(2, false), p(&[(0, 1), (1, -1), (2, -1), (3, 1)]));
    }

    #[test]
    fn pochhammer_inversion_identity() {
        // (q)_n = (-1)^n q^{n(n+1)/2} (q^-1)_n
        for n in 0..=10u32 {
            let lhs = q_pochhammer(n, false);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let rhs = q_pochhammer(n, true)
                .shift((n * (n + 1) / 2) as i64)
                .scale(&BigInt::from(sign));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn rendering_matches_table_style() {
        let x = p(&[(10, 1), (8, 1), (7, 1), (6, 2), (5, 1), (4, 3), (3, 1), (2, 2), (1, 1)]);
        assert_eq!(
            x.to_string(),
            "q^10 + q^8 + q^7 + 2q^6 + q^5 + 3q^4 + q^3 + 2q^2 + q"
        );
        assert_eq!(p(&[(0, 1)]).to_string(), "1");
        assert_eq!(p(&[(2, -1), (0, 3), (-1, -2)]).to_string(), "-q^2 + 3 - 2q^-1");
        assert_eq!(LaurentPolyQ::zero().to_string(), "0");
    }

    #[test]
    fn human_and_machine_parsing() {
        let x = p(&[(10, 1), (6, 2), (1, -1), (0, 1), (-2, 4)]);
        assert_eq!(LaurentPolyQ::parse_human(&x.to_string()), Some(x.clone()));
        assert_eq!(LaurentPolyQ::parse_machine(&x.to_machine_string()), Some(x.clone()));
        assert_eq!(x.to_machine_string(), "[(10,1),(6,2),(1,-1),(0,1),(-2,4)]");
        assert_eq!(LaurentPolyQ::parse_machine("[]"), Some(LaurentPolyQ::zero()));
        assert_eq!(LaurentPolyQ::parse_human("q^{-2} + 1"), Some(p(&[(-2, 1), (0, 1)])));
        assert!(LaurentPolyQ::parse_machine("[(1,2").is_none());
    }

    #[test]
    fn adams_is_substitution() {
        assert_eq!(p(&[(1, 1), (0, 1)]).adams(3), p(&[(3, 1), (0, 1)]));
        let x = p(&[(2, 5), (-1, 1)]);
        assert_eq!(x.adams(1), x);
    }
}
