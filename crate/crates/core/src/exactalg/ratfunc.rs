//! Exact rational functions in one variable `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense;
use super::laurent::LaurentPolyQ;
use super::ExactAlgError;

/// A rational function `numerator / denominator` over the integers.
///
/// The representation is kept in a canonical form so that equality is
/// syntactic:
/// * the denominator has lowest exponent `0` (powers of `q` live in the
///   numerator) and a positive leading coefficient,
/// * numerator and denominator are coprime in `Q[q]`,
/// * the integer contents of numerator and denominator are coprime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: LaurentPolyQ,
    den: LaurentPolyQ,
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        Self {
            num: LaurentPolyQ::zero(),
            den: LaurentPolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolyQ::one())
    }

    pub fn from_poly(p: LaurentPolyQ) -> Self {
        Self {
            num: p,
            den: LaurentPolyQ::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPolyQ::constant(c))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            LaurentPolyQ::constant(r.numer().clone()),
            LaurentPolyQ::constant(r.denom().clone()),
        )
        .expect("BigRational has a non-zero denominator")
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_poly(LaurentPolyQ::monomial(c, e))
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `num / den` in normal form.
    pub fn new(num: LaurentPolyQ, den: LaurentPolyQ) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPolyQ, den: LaurentPolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lo = den.low_degree().expect("non-zero denominator");
        let (den, num) = if lo != 0 {
            (den.shift(-lo), num.shift(-lo))
        } else {
            (den, num)
        };
        if den.is_monomial() {
            // constant denominator
            let d = den.coeff(0);
            let g = num.content().gcd(&d);
            let g = if d.is_negative() { -g } else { g };
            return Self {
                num: num.div_exact_scalar(&g),
                den: LaurentPolyQ::constant(d / g),
            };
        }
        let (nlo, mut nd) = num.to_dense();
        let (_, mut dd) = den.to_dense();
        let g = dense::gcd(&nd, &dd);
        if g.len() > 1 {
            nd = dense::div_exact(&nd, &g).expect("gcd divides numerator");
            dd = dense::div_exact(&dd, &g).expect("gcd divides denominator");
        }
        let mut c = dense::content(&nd).gcd(&dense::content(&dd));
        if dd.last().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            for x in nd.iter_mut() {
                *x /= &c;
            }
            for x in dd.iter_mut() {
                *x /= &c;
            }
        }
        Self {
            num: LaurentPolyQ::from_dense(&nd).shift(nlo),
            den: LaurentPolyQ::from_dense(&dd),
        }
    }

    /// Sums many terms, adding numerators over equal denominators before
    /// normalizing.
    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(terms: I) -> Self {
        let mut groups: Vec<(LaurentPolyQ, LaurentPolyQ)> = Vec::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(_, d)| *d == t.den) {
                Some((n, _)) => *n = &*n + &t.num,
                None => groups.push((t.num.clone(), t.den.clone())),
            }
        }
        let mut acc = Self::zero();
        for (n, d) in groups {
            acc = &acc + &Self::normalized(n, d);
        }
        acc
    }

    pub fn numerator(&self) -> &LaurentPolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is `1`, i.e. the value is a Laurent
    /// polynomial with integer coefficients.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Certifies that the value is an integer Laurent polynomial.
    pub fn polynomial_check(&self) -> Result<LaurentPolyQ, ExactAlgError> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(ExactAlgError::NonPolynomial(format!(
                "denominator {} remains in {}",
                self.den, self
            )))
        }
    }

    pub fn inv(&self) -> Result<Self, ExactAlgError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactAlgError> {
        if rhs.is_zero() {
            return Err(ExactAlgError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Substitutes `q -> q^d`.
    ///
    /// Coprimality, content and the low-exponent convention all survive the
    /// substitution, so the result is already in normal form.
    pub fn adams(&self, d: u32) -> Self {
        if d == 1 {
            return self.clone();
        }
        Self {
            num: self.num.adams(d),
            den: self.den.adams(d),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.den.is_monomial() && self.num.num_terms() == 1 {
            write!(f, "{}/{}", self.num, self.den)
        } else if self.den.is_monomial() {
            write!(f, "({})/{}", self.num, self.den)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({self})")
    }
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunctionQ::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_monomial() || rhs.den.is_monomial() {
            return RationalFunctionQ::normalized(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        // a/b + c/d with g = gcd(b, d): (a d/g + c b/g) / (b d / g)
        let (_, b) = self.den.to_dense();
        let (_, d) = rhs.den.to_dense();
        let g = dense::gcd(&b, &d);
        let (b_red, d_red) = if g.len() > 1 {
            (
                LaurentPolyQ::from_dense(&dense::div_exact(&b, &g).expect("gcd divides")),
                LaurentPolyQ::from_dense(&dense::div_exact(&d, &g).expect("gcd divides")),
            )
        } else {
            (self.den.clone(), rhs.den.clone())
        };
        let num = &(&self.num * &d_red) + &(&rhs.num * &b_red);
        let den = &b_red * &rhs.den;
        RationalFunctionQ::normalized(num, den)
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunctionQ::from_poly(&self.num * &rhs.num);
        }
        RationalFunctionQ::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    /// Panics on division by zero; see [`RationalFunctionQ::checked_div`].
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

impl From<LaurentPolyQ> for RationalFunctionQ {
    fn from(p: LaurentPolyQ) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for RationalFunctionQ {
    fn zero() -> Self {
        RationalFunctionQ::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunctionQ::is_zero(self)
    }
}

impl One for RationalFunctionQ {
    fn one() -> Self {
        RationalFunctionQ::one()
    }
}
