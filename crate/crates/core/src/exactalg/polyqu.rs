//! Polynomials in `u` whose coefficients live in `Q(q)`, and their integer
//! Laurent-polynomial form `Z[q, q^-1][u]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::laurent::LaurentPolyQ;
use super::ratfunc::RationalFunctionQ;
use super::ExactAlgError;

/// A polynomial in `u` with coefficients in `Q(q)`: the target of
/// u-specialization before certification.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPolyQ {
    coeffs: BTreeMap<u32, RationalFunctionQ>,
}

impl UPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalFunctionQ::one())
    }

    pub fn constant(c: RationalFunctionQ) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * u^k`.
    pub fn monomial(c: RationalFunctionQ, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// `1 - q^a u^k`-style binomials are built from this.
    pub fn from_terms<I: IntoIterator<Item = (u32, RationalFunctionQ)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn add_term(&mut self, k: u32, c: &RationalFunctionQ) {
        if c.is_zero() {
            return;
        }
        let updated = match self.coeffs.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if updated.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, updated);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: u32) -> RationalFunctionQ {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RationalFunctionQ)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Substitutes `u -> u^d` and `q -> q^d` together.
    pub fn adams(&self, d: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k * d, c.adams(d)))
                .collect(),
        }
    }

    /// Certifies every coefficient as an integer Laurent polynomial in `q`.
    pub fn to_poly_qu(&self) -> Result<PolyQU, ExactAlgError> {
        let mut out = PolyQU::zero();
        for (k, c) in &self.coeffs {
            let p = c.polynomial_check()?;
            for (e, x) in p.terms() {
                out.add_term(e, *k, x);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for UPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("({c})*u^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Integer polynomial in `u` with Laurent coefficients in `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQU {
    coeffs: BTreeMap<(i64, u32), BigInt>,
}

impl PolyQU {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, q_exp: i64, u_exp: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((q_exp, u_exp)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(q_exp, u_exp));
        }
    }

    pub fn coeff(&self, q_exp: i64, u_exp: u32) -> BigInt {
        self.coeffs
            .get(&(q_exp, u_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^k` as a Laurent polynomial in `q`.
    pub fn u_coeff(&self, k: u32) -> LaurentPolyQ {
        LaurentPolyQ::from_terms(
            self.coeffs
                .iter()
                .filter(|((_, u), _)| *u == k)
                .map(|((e, _), c)| (*e, c.clone())),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((e1, k1), c1) in &self.coeffs {
            for ((e2, k2), c2) in &rhs.coeffs {
                out.add_term(e1 + e2, k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    /// `prod_{i=1}^{l} (1 - q^{i-1} u)`.
    pub fn u_pochhammer(l: usize) -> Self {
        let mut acc = Self::zero();
        acc.add_term(0, 0, &BigInt::from(1));
        for i in 1..=l {
            let mut f = Self::zero();
            f.add_term(0, 0, &BigInt::from(1));
            f.add_term(i as i64 - 1, 1, &BigInt::from(-1));
            acc = acc.mul(&f);
        }
        acc
    }
}

impl fmt::Debug for PolyQU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((e, k), c)| format!("{c}*q^{e}*u^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certification_to_integer_form() {
        let one_minus_u = UPolyQ::from_terms([
            (0, RationalFunctionQ::one()),
            (1, RationalFunctionQ::from_int(-1)),
        ]);
        let sq = one_minus_u.mul(&one_minus_u);
        let p = sq.to_poly_qu().unwrap();
        assert_eq!(p.coeff(0, 1), BigInt::from(-2));
        assert_eq!(p.coeff(0, 2), BigInt::from(1));
        let half = UPolyQ::constant(RationalFunctionQ::from_rational(
            &num_rational::BigRational::new(1.into(), 2.into()),
        ));
        assert!(half.to_poly_qu().is_err());
    }

    #[test]
    fn adams_raises_both_variables() {
        let x = UPolyQ::monomial(RationalFunctionQ::q(), 1);
        assert_eq!(x.adams(3), UPolyQ::monomial(RationalFunctionQ::monomial(1, 3), 3));
    }

    #[test]
    fn u_pochhammer_expansion() {
        let p = PolyQU::u_pochhammer(2);
        // (1-u)(1-qu) = 1 - u - qu + q u^2
        assert_eq!(p.coeff(0, 0), BigInt::from(1));
        assert_eq!(p.coeff(0, 1), BigInt::from(-1));
        assert_eq!(p.coeff(1, 1), BigInt::from(-1));
        assert_eq!(p.coeff(1, 2), BigInt::from(1));
    }
}
