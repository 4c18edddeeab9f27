//! Plethystic `Exp` and `Log` on multigraded series
//! `Σ_v c_v T^v` whose coefficients live in a λ-ring.
//!
//! The Adams operation `ψ_d` acts on coefficients (slots, `q`, and `u` where
//! present) and sends `T^v` to `T^{dv}`. `Log` takes the ordinary logarithm
//! degree by degree and then Möbius-inverts `U = Σ_d ψ_d(V)/d` over the
//! divisors of `gcd(v)`; `Exp` runs the same steps backwards.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{RationalFunctionQ, UPolyQ};
use crate::symfunc::HomogSymFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlethError {
    #[error("series structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("constant term must be {0}")]
    ConstantTerm(&'static str),
}

/// Coefficient rings the graded series can carry.
pub trait LambdaRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// The zero of slot multidegree `degree`.
    fn zero_of_degree(degree: &[usize]) -> Self;
    fn one_of_slots(num_slots: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &RationalFunctionQ) -> Self;
    fn adams(&self, d: u32) -> Self;

    fn sum_all(degree: &[usize], items: Vec<Self>) -> Self {
        items
            .into_iter()
            .fold(Self::zero_of_degree(degree), |a, b| a.add_ref(&b))
    }
}

impl LambdaRing for RationalFunctionQ {
    fn zero_of_degree(_: &[usize]) -> Self {
        RationalFunctionQ::zero()
    }
    fn one_of_slots(_: usize) -> Self {
        RationalFunctionQ::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunctionQ::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &RationalFunctionQ) -> Self {
        self * c
    }
    fn adams(&self, d: u32) -> Self {
        RationalFunctionQ::adams(self, d)
    }
    fn sum_all(_: &[usize], items: Vec<Self>) -> Self {
        RationalFunctionQ::sum(items.iter())
    }
}

impl LambdaRing for HomogSymFunc {
    fn zero_of_degree(degree: &[usize]) -> Self {
        HomogSymFunc::zero(degree.to_vec())
    }
    fn one_of_slots(num_slots: usize) -> Self {
        HomogSymFunc::one(num_slots)
    }
    fn is_zero(&self) -> bool {
        HomogSymFunc::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &RationalFunctionQ) -> Self {
        HomogSymFunc::scale(self, c)
    }
    fn adams(&self, d: u32) -> Self {
        HomogSymFunc::adams(self, d)
    }
    fn sum_all(degree: &[usize], items: Vec<Self>) -> Self {
        let mut per_key: BTreeMap<_, Vec<RationalFunctionQ>> = BTreeMap::new();
        for f in &items {
            for (k, c) in f.terms() {
                per_key.entry(k.clone()).or_default().push(c.clone());
            }
        }
        HomogSymFunc::from_terms(
            degree.to_vec(),
            per_key
                .into_iter()
                .map(|(k, v)| (k, RationalFunctionQ::sum(v.iter()))),
        )
    }
}

impl LambdaRing for UPolyQ {
    fn zero_of_degree(_: &[usize]) -> Self {
        UPolyQ::zero()
    }
    fn one_of_slots(_: usize) -> Self {
        UPolyQ::one()
    }
    fn is_zero(&self) -> bool {
        UPolyQ::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &RationalFunctionQ) -> Self {
        UPolyQ::scale(self, c)
    }
    fn adams(&self, d: u32) -> Self {
        UPolyQ::adams(self, d)
    }
}

/// The set of retained multidegrees: a componentwise box, optionally cut
/// further by a bound on the total degree. Both are down-closed, so every
/// graded formula stays exact inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    bounds: Vec<usize>,
    total: Option<usize>,
}

impl Truncation {
    pub fn boxed(bounds: Vec<usize>) -> Self {
        Self {
            bounds,
            total: None,
        }
    }

    pub fn new(bounds: Vec<usize>, total: Option<usize>) -> Self {
        Self { bounds, total }
    }

    /// All `v` with `Σ v_i ≤ total` in `num_vars` variables.
    pub fn total_degree(num_vars: usize, total: usize) -> Self {
        Self::new(vec![total; num_vars], Some(total))
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn total(&self) -> Option<usize> {
        self.total
    }

    pub fn contains(&self, v: &[usize]) -> bool {
        v.len() == self.bounds.len()
            && v.iter().zip(&self.bounds).all(|(a, b)| a <= b)
            && self.total.is_none_or(|t| v.iter().sum::<usize>() <= t)
    }

    /// Every retained multidegree, ordered by total degree then
    /// lexicographically.
    pub fn keys(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &b in &self.bounds {
            let mut next = Vec::new();
            for v in &out {
                for x in 0..=b {
                    let mut w = v.clone();
                    w.push(x);
                    if self.total.is_none_or(|t| w.iter().sum::<usize>() <= t) {
                        next.push(w);
                    }
                }
            }
            out = next;
        }
        out.sort_by(|a, b| {
            (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b))
        });
        out
    }
}

/// `Σ_v c_v T^v` truncated to a [`Truncation`].
///
/// `slot_vertex[s]` names the grading variable whose exponent is the degree
/// of alphabet slot `s`; the coefficient of `T^v` has slot degrees
/// `(v[slot_vertex[s]])_s`.
#[derive(Clone, PartialEq)]
pub struct GradedSeries<C> {
    slot_vertex: Vec<usize>,
    truncation: Truncation,
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: LambdaRing> fmt::Debug for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn gcd_all(v: &[usize]) -> usize {
    v.iter().fold(0, |a, &b| a.gcd(&b))
}

fn rat(n: i64, d: i64) -> RationalFunctionQ {
    RationalFunctionQ::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
}

impl<C: LambdaRing> GradedSeries<C> {
    pub fn zero(slot_vertex: Vec<usize>, truncation: Truncation) -> Self {
        assert!(
            slot_vertex.iter().all(|&i| i < truncation.num_vars()),
            "slot attached to a missing grading variable"
        );
        Self {
            slot_vertex,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(slot_vertex: Vec<usize>, truncation: Truncation) -> Self {
        let mut s = Self::zero(slot_vertex, truncation);
        let origin = vec![0; s.num_vars()];
        let one = C::one_of_slots(s.num_slots());
        s.insert(origin, one);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.truncation.num_vars()
    }

    pub fn num_slots(&self) -> usize {
        self.slot_vertex.len()
    }

    pub fn slot_vertex(&self) -> &[usize] {
        &self.slot_vertex
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn slot_degree(&self, v: &[usize]) -> Vec<usize> {
        self.slot_vertex.iter().map(|&i| v[i]).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, v: &[usize]) -> Option<&C> {
        self.terms.get(v)
    }

    pub fn coeff_or_zero(&self, v: &[usize]) -> C {
        self.terms
            .get(v)
            .cloned()
            .unwrap_or_else(|| C::zero_of_degree(&self.slot_degree(v)))
    }

    /// Stores `c` at `v`; zero coefficients and keys outside the truncation
    /// are dropped.
    pub fn insert(&mut self, v: Vec<usize>, c: C) {
        if !self.truncation.contains(&v) {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&v);
        } else {
            self.terms.insert(v, c);
        }
    }

    fn check_structure(&self, rhs: &Self) -> Result<(), PlethError> {
        if self.slot_vertex != rhs.slot_vertex || self.truncation != rhs.truncation {
            return Err(PlethError::StructureMismatch(format!(
                "slots {:?} vs {:?}, truncation {:?} vs {:?}",
                self.slot_vertex, rhs.slot_vertex, self.truncation, rhs.truncation
            )));
        }
        Ok(())
    }

    fn empty_like(&self) -> Self {
        Self::zero(self.slot_vertex.clone(), self.truncation.clone())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PlethError> {
        self.check_structure(rhs)?;
        let mut out = self.clone();
        for (v, c) in &rhs.terms {
            let s = out.coeff_or_zero(v).add_ref(c);
            out.insert(v.clone(), s);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PlethError> {
        self.check_structure(rhs)?;
        let mut out = self.clone();
        for (v, c) in &rhs.terms {
            let s = out.coeff_or_zero(v).sub_ref(c);
            out.insert(v.clone(), s);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        let mut out = self.empty_like();
        for (v, x) in &self.terms {
            out.insert(v.clone(), x.scale(c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&[usize], &C) -> C) -> Self {
        let mut out = self.empty_like();
        for (v, x) in &self.terms {
            out.insert(v.clone(), f(v, x));
        }
        out
    }

    /// Converts the coefficients to another ring, e.g. by specialization.
    pub fn convert<D: LambdaRing>(
        &self,
        slot_vertex: Vec<usize>,
        f: impl Fn(&C) -> D + Sync,
    ) -> GradedSeries<D> {
        let mut out = GradedSeries::zero(slot_vertex, self.truncation.clone());
        let converted: Vec<(Vec<usize>, D)> = self
            .terms
            .par_iter()
            .map(|(v, c)| (v.clone(), f(c)))
            .collect();
        for (v, d) in converted {
            out.insert(v, d);
        }
        out
    }

    /// `ψ_d`, truncated.
    pub fn adams(&self, d: u32) -> Self {
        let mut out = self.empty_like();
        for (v, c) in &self.terms {
            let w: Vec<usize> = v.iter().map(|x| x * d as usize).collect();
            if self.truncation.contains(&w) {
                out.insert(w, c.adams(d));
            }
        }
        out
    }

    /// Cauchy product, truncated.
    pub fn series_mul(&self, rhs: &Self) -> Result<Self, PlethError> {
        self.check_structure(rhs)?;
        let keys = self.truncation.keys();
        let products: Vec<(Vec<usize>, C)> = keys
            .par_iter()
            .map(|v| {
                let items: Vec<C> = self
                    .terms
                    .iter()
                    .filter_map(|(u, a)| {
                        let w = sub_vec(v, u)?;
                        rhs.terms.get(&w).map(|b| a.mul_ref(b))
                    })
                    .collect();
                (v.clone(), C::sum_all(&self.slot_degree(v), items))
            })
            .collect();
        let mut out = self.empty_like();
        for (v, c) in products {
            out.insert(v, c);
        }
        Ok(out)
    }

    fn constant_is(&self, expect_one: bool) -> bool {
        let origin = vec![0; self.num_vars()];
        match self.terms.get(&origin) {
            None => !expect_one,
            Some(c) => expect_one && *c == C::one_of_slots(self.num_slots()),
        }
    }

    // Fills `out` level by level: `step(v, out_so_far)` computes the
    // coefficient at `v` from coefficients of strictly smaller total degree.
    fn by_levels(&self, out: &mut Self, step: impl Fn(&[usize], &Self) -> C + Sync) {
        let keys = self.truncation.keys();
        let mut start = 0;
        while start < keys.len() {
            let level: usize = keys[start].iter().sum();
            let end = keys[start..]
                .iter()
                .position(|k| k.iter().sum::<usize>() != level)
                .map_or(keys.len(), |p| start + p);
            if level > 0 {
                let snapshot = &*out;
                let computed: Vec<(Vec<usize>, C)> = keys[start..end]
                    .par_iter()
                    .map(|v| (v.clone(), step(v, snapshot)))
                    .collect();
                for (v, c) in computed {
                    out.insert(v, c);
                }
            }
            start = end;
        }
    }

    /// Ordinary logarithm of a series with constant term `1`:
    /// `|v| U_v = |v| F_v − Σ_{0<u<v} |u| U_u F_{v−u}`.
    fn ordinary_log(&self) -> Self {
        let mut u = self.empty_like();
        self.by_levels(&mut u, |v, u_sofar| {
            let n: usize = v.iter().sum();
            let deg = self.slot_degree(v);
            let mut items: Vec<C> = Vec::new();
            for (w, uw) in &u_sofar.terms {
                let Some(rest) = sub_vec(v, w) else { continue };
                if rest.iter().all(|&x| x == 0) {
                    continue;
                }
                if let Some(f) = self.terms.get(&rest) {
                    let k: usize = w.iter().sum();
                    items.push(uw.mul_ref(f).scale(&rat(-(k as i64), n as i64)));
                }
            }
            if let Some(f) = self.terms.get(v) {
                items.push(f.clone());
            }
            C::sum_all(&deg, items)
        });
        u
    }

    /// Ordinary exponential of a series with zero constant term:
    /// `|v| E_v = Σ_{0<u≤v} |u| G_u E_{v−u}`.
    fn ordinary_exp(&self) -> Self {
        let mut e = Self::one(self.slot_vertex.clone(), self.truncation.clone());
        self.by_levels(&mut e, |v, e_sofar| {
            let n: usize = v.iter().sum();
            let deg = self.slot_degree(v);
            let mut items: Vec<C> = Vec::new();
            for (w, g) in &self.terms {
                let Some(rest) = sub_vec(v, w) else { continue };
                if let Some(ew) = e_sofar.terms.get(&rest) {
                    let k: usize = w.iter().sum();
                    items.push(g.mul_ref(ew).scale(&rat(k as i64, n as i64)));
                }
            }
            C::sum_all(&deg, items)
        });
        e
    }

    /// Plethystic logarithm; the constant term must be `1`.
    pub fn pleth_log(&self) -> Result<Self, PlethError> {
        if !self.constant_is(true) {
            return Err(PlethError::ConstantTerm("1"));
        }
        let u = self.ordinary_log();
        // V_v = Σ_{d | gcd v} μ(d)/d ψ_d(U_{v/d})
        let keys: Vec<Vec<usize>> = self.truncation.keys();
        let computed: Vec<(Vec<usize>, C)> = keys
            .par_iter()
            .filter(|v| v.iter().any(|&x| x > 0))
            .map(|v| {
                let g = gcd_all(v);
                let mut items = Vec::new();
                for d in 1..=g {
                    if g % d != 0 {
                        continue;
                    }
                    let m = mobius(d);
                    if m == 0 {
                        continue;
                    }
                    let w: Vec<usize> = v.iter().map(|x| x / d).collect();
                    if let Some(c) = u.terms.get(&w) {
                        items.push(c.adams(d as u32).scale(&rat(m, d as i64)));
                    }
                }
                (v.clone(), C::sum_all(&self.slot_degree(v), items))
            })
            .collect();
        let mut out = self.empty_like();
        for (v, c) in computed {
            out.insert(v, c);
        }
        Ok(out)
    }

    /// Plethystic exponential; the constant term must be `0`.
    pub fn pleth_exp(&self) -> Result<Self, PlethError> {
        if !self.constant_is(false) {
            return Err(PlethError::ConstantTerm("0"));
        }
        // G_v = Σ_{d | gcd v} ψ_d(V_{v/d}) / d
        let keys: Vec<Vec<usize>> = self.truncation.keys();
        let computed: Vec<(Vec<usize>, C)> = keys
            .par_iter()
            .filter(|v| v.iter().any(|&x| x > 0))
            .map(|v| {
                let g = gcd_all(v);
                let items: Vec<C> = (1..=g)
                    .filter(|d| g % d == 0)
                    .filter_map(|d| {
                        let w: Vec<usize> = v.iter().map(|x| x / d).collect();
                        self.terms
                            .get(&w)
                            .map(|c| c.adams(d as u32).scale(&rat(1, d as i64)))
                    })
                    .collect();
                (v.clone(), C::sum_all(&self.slot_degree(v), items))
            })
            .collect();
        let mut g = self.empty_like();
        for (v, c) in computed {
            g.insert(v, c);
        }
        Ok(g.ordinary_exp())
    }
}

fn sub_vec(v: &[usize], u: &[usize]) -> Option<Vec<usize>> {
    v.iter()
        .zip(u)
        .map(|(a, b)| a.checked_sub(*b))
        .collect()
}

/// Free-function form of [`GradedSeries::series_mul`].
pub fn series_mul<C: LambdaRing>(
    a: &GradedSeries<C>,
    b: &GradedSeries<C>,
) -> Result<GradedSeries<C>, PlethError> {
    a.series_mul(b)
}

pub fn pleth_log<C: LambdaRing>(omega: &GradedSeries<C>) -> Result<GradedSeries<C>, PlethError> {
    omega.pleth_log()
}

pub fn pleth_exp<C: LambdaRing>(v: &GradedSeries<C>) -> Result<GradedSeries<C>, PlethError> {
    v.pleth_exp()
}

/// A scalar series in one grading variable from its coefficients.
pub fn scalar_series(coeffs: &[RationalFunctionQ], bound: usize) -> GradedSeries<RationalFunctionQ> {
    let mut s = GradedSeries::zero(Vec::new(), Truncation::boxed(vec![bound]));
    for (n, c) in coeffs.iter().enumerate() {
        s.insert(vec![n], c.clone());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q_pochhammer, LaurentPolyQ};
    use crate::partitions::{MultiPartition, Partition};
    use crate::symfunc::p_basis;

    fn int(n: i64) -> RationalFunctionQ {
        RationalFunctionQ::from_int(n)
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn truncation_keys_are_down_closed() {
        let t = Truncation::new(vec![2, 3], Some(3));
        let keys = t.keys();
        assert_eq!(keys.len(), 9);
        assert_eq!(keys[0], vec![0, 0]);
        for k in &keys {
            for i in 0..2 {
                if k[i] > 0 {
                    let mut w = k.clone();
                    w[i] -= 1;
                    assert!(keys.contains(&w));
                }
            }
        }
    }

    #[test]
    fn geometric_series_log_and_exp() {
        let s = scalar_series(&vec![int(1); 7], 6);
        let log = s.pleth_log().unwrap();
        let t = scalar_series(&[int(0), int(1)], 6);
        assert_eq!(log, t);
        assert_eq!(t.pleth_exp().unwrap(), s);
        // Exp(−T) = 1 − T
        let minus_t = scalar_series(&[int(0), int(-1)], 6);
        assert_eq!(minus_t.pleth_exp().unwrap(), scalar_series(&[int(1), int(-1)], 6));
    }

    #[test]
    fn series_mul_basics() {
        let a = scalar_series(&[int(1), int(1)], 3);
        let b = scalar_series(&[int(1), int(-1)], 3);
        assert_eq!(a.series_mul(&b).unwrap(), scalar_series(&[int(1), int(0), int(-1)], 3));
        let one = scalar_series(&[int(1)], 3);
        assert_eq!(a.series_mul(&one).unwrap(), a);
        let c = scalar_series(&[int(1), int(1)], 1);
        assert!(a.series_mul(&c).is_err());
        let sq = c.series_mul(&c).unwrap();
        assert!(sq.coeff(&[2]).is_none());
    }

    #[test]
    fn constant_term_errors() {
        let a = scalar_series(&[int(2), int(1)], 3);
        assert!(a.pleth_log().is_err());
        assert!(a.pleth_exp().is_err());
    }

    #[test]
    fn pentagon_identity() {
        let bound = 3;
        let mut s = GradedSeries::zero(Vec::new(), Truncation::boxed(vec![bound, bound]));
        for n1 in 0..=bound {
            for n2 in 0..=bound {
                let den = &q_pochhammer(n1 as u32, false) * &q_pochhammer(n2 as u32, false);
                let c = RationalFunctionQ::new(LaurentPolyQ::monomial(1, (n1 * n2) as i64), den).unwrap();
                s.insert(vec![n1, n2], c);
            }
        }
        let h = s.pleth_log().unwrap().scale(&(&RationalFunctionQ::q() - &int(1)));
        let mut expected = GradedSeries::zero(Vec::new(), Truncation::boxed(vec![bound, bound]));
        expected.insert(vec![1, 0], int(-1));
        expected.insert(vec![0, 1], int(-1));
        expected.insert(vec![1, 1], int(1));
        assert_eq!(h, expected);
    }

    #[test]
    fn symmetric_function_coefficients() {
        // Log(Exp(p_1 T)) = p_1 T, with ψ_2 sending p_1 to p_2
        let t = Truncation::boxed(vec![4]);
        let mut v = GradedSeries::zero(vec![0], t);
        v.insert(vec![1], p_basis(&MultiPartition::new(vec![Partition::row(1)])));
        let e = v.pleth_exp().unwrap();
        assert_eq!(e.pleth_log().unwrap(), v);
        // Exp(p_1 T) = Σ h_n T^n
        let h2 = crate::symfunc::complete_h(&MultiPartition::new(vec![Partition::row(2)]));
        assert_eq!(e.coeff(&[2]).unwrap(), &h2);
    }
}
