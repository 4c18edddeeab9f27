//! Homogeneous symmetric functions in several independent alphabets, stored
//! in the power-sum basis with coefficients in `Q(q)`.
//!
//! A key is a [`MultiPartition`] with one partition per alphabet slot; no
//! variables are ever materialized. Schur, complete and transformed
//! Hall–Littlewood functions are conversion layers on top of `p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{RationalFunctionQ, UPolyQ};
use crate::partitions::{
    enumerate_partitions, kostka_foulkes_cocharge, sn_character, z, MultiPartition, Partition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymFuncError {
    #[error("expected a function of a single alphabet, got {0} slots")]
    NotSingleAlphabet(usize),
    #[error("top degree routes disagree: u-limit {0}, pairing {1}")]
    RouteDisagreement(String, String),
}

/// A symmetric function homogeneous of multidegree `degree`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogSymFunc {
    degree: Vec<usize>,
    terms: BTreeMap<MultiPartition, RationalFunctionQ>,
}

impl HomogSymFunc {
    pub fn zero(degree: Vec<usize>) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The unit in `num_slots` alphabets.
    pub fn one(num_slots: usize) -> Self {
        Self::constant(num_slots, RationalFunctionQ::one())
    }

    pub fn constant(num_slots: usize, c: RationalFunctionQ) -> Self {
        let mut f = Self::zero(vec![0; num_slots]);
        f.add_term(MultiPartition::empty(num_slots), &c);
        f
    }

    pub fn from_terms<I>(degree: Vec<usize>, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiPartition, RationalFunctionQ)>,
    {
        let mut f = Self::zero(degree);
        for (k, c) in terms {
            f.add_term(k, &c);
        }
        f
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn total_degree(&self) -> usize {
        self.degree.iter().sum()
    }

    pub fn num_slots(&self) -> usize {
        self.degree.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiPartition, &RationalFunctionQ)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MultiPartition) -> RationalFunctionQ {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Panics if the key's sizes do not match the degree.
    pub fn add_term(&mut self, key: MultiPartition, c: &RationalFunctionQ) {
        assert_eq!(key.sizes(), self.degree, "key {key} outside degree");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                let s = &*cur + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    fn check_same_degree(&self, rhs: &Self) {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_same_degree(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree.clone());
        }
        Self {
            degree: self.degree.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&RationalFunctionQ::from_rational(r))
    }

    /// Product in the same slots: keys combine slot-wise by union.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.num_slots(), rhs.num_slots(), "slot count mismatch");
        let degree: Vec<usize> = self
            .degree
            .iter()
            .zip(&rhs.degree)
            .map(|(a, b)| a + b)
            .collect();
        // collect products per key first so each key is summed once
        let mut acc: BTreeMap<MultiPartition, Vec<RationalFunctionQ>> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                acc.entry(ka.union(kb)).or_default().push(ca * cb);
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(k, v)| {
                let s = RationalFunctionQ::sum(v.iter());
                (!s.is_zero()).then_some((k, s))
            })
            .collect();
        Self { degree, terms }
    }

    /// Tensor product: the slots of `self` followed by the slots of `rhs`.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut degree = self.degree.clone();
        degree.extend_from_slice(&rhs.degree);
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut comps = ka.components().to_vec();
                comps.extend_from_slice(kb.components());
                terms.insert(MultiPartition::new(comps), ca * cb);
            }
        }
        Self { degree, terms }
    }

    /// `ψ_d`: `p_n → p_{dn}` in every slot and `q → q^d` in coefficients.
    pub fn adams(&self, d: u32) -> Self {
        assert!(d >= 1, "Adams operation needs d >= 1");
        if d == 1 {
            return self.clone();
        }
        let du = d as usize;
        Self {
            degree: self.degree.iter().map(|x| x * du).collect(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.scaled(du), c.adams(d)))
                .collect(),
        }
    }

    /// Maps each coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFunctionQ) -> RationalFunctionQ) -> Self {
        Self {
            degree: self.degree.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(k, c)| {
                    let x = f(c);
                    (!x.is_zero()).then(|| (k.clone(), x))
                })
                .collect(),
        }
    }
}

impl fmt::Debug for HomogSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Power-sum expansion in key order, e.g. `(1/2) * p[2|1,1]`; a `|` separates slots.
impl fmt::Display for HomogSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let slots: Vec<String> = k
                .components()
                .iter()
                .map(|p| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            write!(f, "({c}) * p[{}]", slots.join("|"))?;
        }
        Ok(())
    }
}

/// `p_λ` with coefficient `1`.
pub fn p_basis(lambda: &MultiPartition) -> HomogSymFunc {
    HomogSymFunc::from_terms(
        lambda.sizes(),
        [(lambda.clone(), RationalFunctionQ::one())],
    )
}

// Single-slot expansion as (p-index, coefficient) rows.
type Expansion = Arc<Vec<(Partition, RationalFunctionQ)>>;

fn tensor_expansions(parts: &[Expansion]) -> HomogSymFunc {
    let degree: Vec<usize> = parts
        .iter()
        .map(|e| e.first().map_or(0, |(p, _)| p.size()))
        .collect();
    let mut rows: Vec<(Vec<Partition>, RationalFunctionQ)> =
        vec![(Vec::new(), RationalFunctionQ::one())];
    for e in parts {
        let mut next = Vec::with_capacity(rows.len() * e.len());
        for (key, c) in &rows {
            for (p, d) in e.iter() {
                let mut k = key.clone();
                k.push(p.clone());
                next.push((k, c * d));
            }
        }
        rows = next;
    }
    let mut f = HomogSymFunc::zero(degree);
    for (k, c) in rows {
        f.add_term(MultiPartition::new(k), &c);
    }
    f
}

fn inv_z(lambda: &Partition) -> RationalFunctionQ {
    RationalFunctionQ::from_rational(&BigRational::new(BigInt::one(), z(lambda)))
}

fn expansion_cache(tag: u8) -> &'static RwLock<HashMap<(u8, Partition), Expansion>> {
    static CACHE: OnceLock<RwLock<HashMap<(u8, Partition), Expansion>>> = OnceLock::new();
    let _ = tag;
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached_expansion(tag: u8, lambda: &Partition, build: impl FnOnce() -> Vec<(Partition, RationalFunctionQ)>) -> Expansion {
    let key = (tag, lambda.clone());
    if let Some(e) = expansion_cache(tag).read().expect("cache lock").get(&key) {
        return e.clone();
    }
    let e = Arc::new(build());
    expansion_cache(tag)
        .write()
        .expect("cache lock")
        .insert(key, e.clone());
    e
}

const SCHUR: u8 = 0;
const COMPLETE: u8 = 1;
const HALL_LITTLEWOOD: u8 = 2;

fn schur_expansion(mu: &Partition) -> Expansion {
    cached_expansion(SCHUR, mu, || {
        enumerate_partitions(mu.size())
            .into_iter()
            .filter_map(|l| {
                let chi = sn_character(mu, &l).expect("sizes agree");
                (!chi.is_zero()).then(|| {
                    let c = inv_z(&l).scale_int(&chi);
                    (l, c)
                })
            })
            .collect()
    })
}

fn complete_expansion(mu: &Partition) -> Expansion {
    cached_expansion(COMPLETE, mu, || {
        // h_μ = Π_i h_{μ_i}, h_n = Σ_{λ ⊢ n} p_λ / z_λ
        let mut f = HomogSymFunc::one(1);
        for &part in mu.parts() {
            let h = HomogSymFunc::from_terms(
                vec![part],
                enumerate_partitions(part)
                    .into_iter()
                    .map(|l| (MultiPartition::new(vec![l.clone()]), inv_z(&l))),
            );
            f = f.mul(&h);
        }
        f.terms
            .into_iter()
            .map(|(k, c)| (k.component(0).clone(), c))
            .collect()
    })
}

fn hall_littlewood_expansion(lambda: &Partition) -> Expansion {
    cached_expansion(HALL_LITTLEWOOD, lambda, || {
        let n = lambda.size();
        let shapes = enumerate_partitions(n);
        let kf: Vec<RationalFunctionQ> = shapes
            .iter()
            .map(|mu| kostka_foulkes_cocharge(mu, lambda).expect("sizes agree").into())
            .collect();
        enumerate_partitions(n)
            .into_iter()
            .filter_map(|rho| {
                let mut c = RationalFunctionQ::zero();
                for (mu, k) in shapes.iter().zip(&kf) {
                    if k.is_zero() {
                        continue;
                    }
                    let chi = sn_character(mu, &rho).expect("sizes agree");
                    c = &c + &k.scale_int(&chi);
                }
                (!c.is_zero()).then(|| {
                    let c = &c * &inv_z(&rho);
                    (rho, c)
                })
            })
            .collect()
    })
}

/// `s_μ = Π_slots Σ_λ χ^{μ^i}_λ p_λ / z_λ`.
pub fn schur(mu: &MultiPartition) -> HomogSymFunc {
    let parts: Vec<Expansion> = mu.components().iter().map(schur_expansion).collect();
    tensor_expansions(&parts)
}

/// `h_μ`, slot by slot.
pub fn complete_h(mu: &MultiPartition) -> HomogSymFunc {
    let parts: Vec<Expansion> = mu.components().iter().map(complete_expansion).collect();
    tensor_expansions(&parts)
}

/// `H̃_λ(x_slot; q) = Σ_μ K̃_{μλ}(q) s_μ` placed in slot `slot` of
/// `num_slots` alphabets.
pub fn hall_littlewood_transformed(lambda: &Partition, slot: usize, num_slots: usize) -> HomogSymFunc {
    assert!(slot < num_slots, "slot out of range");
    let one = Arc::new(vec![(Partition::empty(), RationalFunctionQ::one())]);
    let parts: Vec<Expansion> = (0..num_slots)
        .map(|s| {
            if s == slot {
                hall_littlewood_expansion(lambda)
            } else {
                one.clone()
            }
        })
        .collect();
    tensor_expansions(&parts)
}

/// `⊗_s H̃_{λ_s}(x_s; q)` with one partition per slot.
pub fn hall_littlewood_tensor(lambdas: &MultiPartition) -> HomogSymFunc {
    let parts: Vec<Expansion> = lambdas
        .components()
        .iter()
        .map(hall_littlewood_expansion)
        .collect();
    tensor_expansions(&parts)
}

/// Hall pairing; `0` when the degrees differ.
pub fn hall_pairing(f: &HomogSymFunc, g: &HomogSymFunc) -> RationalFunctionQ {
    if f.degree != g.degree {
        return RationalFunctionQ::zero();
    }
    let (small, large) = if f.num_terms() <= g.num_terms() {
        (f, g)
    } else {
        (g, f)
    };
    let prods: Vec<RationalFunctionQ> = small
        .terms
        .iter()
        .filter_map(|(k, c)| large.terms.get(k).map(|d| (c * d).scale_int(&k.z())))
        .collect();
    RationalFunctionQ::sum(prods.iter())
}

/// `⟨f, s_μ⟩` without expanding `s_μ`: `Σ_λ c_λ Π_slots χ^{μ^i}_{λ^i}`.
pub fn pair_with_schur(f: &HomogSymFunc, mu: &MultiPartition) -> RationalFunctionQ {
    if f.degree != mu.sizes() {
        return RationalFunctionQ::zero();
    }
    let prods: Vec<RationalFunctionQ> = f
        .terms
        .iter()
        .filter_map(|(k, c)| {
            let mut chi = BigInt::one();
            for (m, l) in mu.components().iter().zip(k.components()) {
                chi *= sn_character(m, l).expect("sizes agree");
                if chi.is_zero() {
                    return None;
                }
            }
            Some(c.scale_int(&chi))
        })
        .collect();
    RationalFunctionQ::sum(prods.iter())
}

/// `f[1 − u]` for `f` in a single alphabet: `p_r ↦ 1 − u^r`.
pub fn u_specialize(f: &HomogSymFunc) -> Result<UPolyQ, SymFuncError> {
    if f.num_slots() != 1 {
        return Err(SymFuncError::NotSingleAlphabet(f.num_slots()));
    }
    Ok(u_specialize_slots(f))
}

/// Specializes every slot to the same `1 − u` alphabet.
pub fn u_specialize_slots(f: &HomogSymFunc) -> UPolyQ {
    let mut cache: HashMap<usize, UPolyQ> = HashMap::new();
    let mut out = UPolyQ::zero();
    for (k, c) in &f.terms {
        let mut term = UPolyQ::constant(c.clone());
        for p in k.components() {
            for &r in p.parts() {
                let factor = cache.entry(r).or_insert_with(|| one_minus_u_pow(r)).clone();
                term = term.mul(&factor);
            }
        }
        out = out.add(&term);
    }
    out
}

fn one_minus_u_pow(r: usize) -> UPolyQ {
    UPolyQ::from_terms([
        (0, RationalFunctionQ::one()),
        (r as u32, RationalFunctionQ::from_int(-1)),
    ])
}

/// Top-degree coefficient by the u-limit: `[f] = u^n f[1 − u^{-1}]` at
/// `u = 0`, which is the coefficient of `u^n` in `f[1 − u]`.
pub fn top_degree_u_limit(f: &HomogSymFunc) -> RationalFunctionQ {
    u_specialize_slots(f).coeff(f.total_degree() as u32)
}

/// Top-degree coefficient by pairing: `(−1)^n ⟨f, s_{1^n}⟩`, slot-wise.
pub fn top_degree_pairing(f: &HomogSymFunc) -> RationalFunctionQ {
    let mu = MultiPartition::new(f.degree.iter().map(|&n| Partition::column(n)).collect());
    let v = pair_with_schur(f, &mu);
    if f.total_degree() % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `[f]` for a single-alphabet `f`, computed both ways.
pub fn top_degree(f: &HomogSymFunc) -> Result<RationalFunctionQ, SymFuncError> {
    if f.num_slots() != 1 {
        return Err(SymFuncError::NotSingleAlphabet(f.num_slots()));
    }
    top_degree_checked(f)
}

/// Both routes over all slots; error if they disagree.
pub fn top_degree_checked(f: &HomogSymFunc) -> Result<RationalFunctionQ, SymFuncError> {
    let a = top_degree_u_limit(f);
    let b = top_degree_pairing(f);
    if a != b {
        return Err(SymFuncError::RouteDisagreement(a.to_string(), b.to_string()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::LaurentPolyQ;
    use crate::partitions::enumerate_multipartitions;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn mp1(v: &[usize]) -> MultiPartition {
        MultiPartition::new(vec![p(v)])
    }

    fn half() -> RationalFunctionQ {
        RationalFunctionQ::from_rational(&BigRational::new(1.into(), 2.into()))
    }

    #[test]
    fn small_schur_expansions() {
        assert_eq!(schur(&mp1(&[1])), p_basis(&mp1(&[1])));
        let s2 = schur(&mp1(&[2]));
        assert_eq!(s2.coeff(&mp1(&[2])), half());
        assert_eq!(s2.coeff(&mp1(&[1, 1])), half());
        let s11 = schur(&mp1(&[1, 1]));
        assert_eq!(s11.coeff(&mp1(&[2])), -half());
        assert_eq!(s11.coeff(&mp1(&[1, 1])), half());
        assert_eq!(p_basis(&MultiPartition::empty(2)), HomogSymFunc::one(2));
    }

    #[test]
    fn complete_functions() {
        assert_eq!(complete_h(&mp1(&[1])), p_basis(&mp1(&[1])));
        assert_eq!(complete_h(&mp1(&[2])), schur(&mp1(&[2])));
        assert_eq!(
            complete_h(&mp1(&[1, 1])),
            schur(&mp1(&[2])).add(&schur(&mp1(&[1, 1])))
        );
        let h = complete_h(&mp1(&[1, 1]));
        assert!(hall_pairing(&h, &schur(&mp1(&[1, 1]))).is_one());
    }

    #[test]
    fn schur_orthonormal_two_slots() {
        let mut mps = Vec::new();
        for a in 0..=3 {
            for b in 0..=2 {
                mps.extend(enumerate_multipartitions(&[a, b]));
            }
        }
        for x in &mps {
            let sx = schur(x);
            for y in &mps {
                let v = hall_pairing(&sx, &schur(y));
                assert_eq!(v.is_one(), x == y, "{x} {y}");
                if x != y {
                    assert!(v.is_zero());
                }
                assert_eq!(pair_with_schur(&sx, y), v);
            }
        }
        let p2 = p_basis(&mp1(&[2]));
        assert_eq!(hall_pairing(&p2, &p2), RationalFunctionQ::from_int(2));
    }

    #[test]
    fn hall_littlewood_small_cases() {
        assert_eq!(hall_littlewood_transformed(&p(&[2]), 0, 1), schur(&mp1(&[2])));
        let expected = schur(&mp1(&[2])).add(&schur(&mp1(&[1, 1])).scale(&RationalFunctionQ::q()));
        assert_eq!(hall_littlewood_transformed(&p(&[1, 1]), 0, 1), expected);
        let two = hall_littlewood_transformed(&p(&[1]), 1, 2);
        assert_eq!(two.degree(), &[0, 1]);
    }

    #[test]
    fn hall_littlewood_at_one_is_complete() {
        let one = BigRational::one();
        for n in 1..=5 {
            for l in enumerate_partitions(n) {
                let h = hall_littlewood_transformed(&l, 0, 1);
                let at_one = HomogSymFunc::from_terms(
                    h.degree().to_vec(),
                    h.terms().map(|(k, c)| {
                        (k.clone(), RationalFunctionQ::from_rational(&c.eval(&one).unwrap()))
                    }),
                );
                assert_eq!(at_one, complete_h(&MultiPartition::new(vec![l.clone()])), "{l}");
            }
        }
    }

    #[test]
    fn adams_on_slots_and_q() {
        assert_eq!(p_basis(&mp1(&[1])).adams(3), p_basis(&mp1(&[3])));
        let f = schur(&mp1(&[2, 1]));
        assert_eq!(f.adams(1), f);
        let c = RationalFunctionQ::new(LaurentPolyQ::one(), LaurentPolyQ::from_terms([(0, 1), (1, -1)])).unwrap();
        let g = schur(&mp1(&[1])).scale(&c).adams(2);
        let c2 = RationalFunctionQ::new(LaurentPolyQ::one(), LaurentPolyQ::from_terms([(0, 1), (2, -1)])).unwrap();
        assert_eq!(g, p_basis(&mp1(&[2])).scale(&c2));
    }

    #[test]
    fn u_specialization_examples() {
        let f = u_specialize(&schur(&mp1(&[2, 1]))).unwrap();
        // (−u)(1−u) = −u + u²
        assert_eq!(
            f,
            UPolyQ::from_terms([(1, RationalFunctionQ::from_int(-1)), (2, RationalFunctionQ::one())])
        );
        assert!(u_specialize(&schur(&mp1(&[2, 2]))).unwrap().is_zero());
        assert!(u_specialize(&HomogSymFunc::one(2)).is_err());
        for n in 1..=6 {
            for l in enumerate_partitions(n) {
                let hl = u_specialize(&hall_littlewood_transformed(&l, 0, 1))
                    .unwrap()
                    .to_poly_qu()
                    .unwrap();
                assert_eq!(hl, crate::exactalg::PolyQU::u_pochhammer(l.len()), "{l}");
            }
        }
    }

    #[test]
    fn top_degree_examples() {
        let q = RationalFunctionQ::q();
        assert_eq!(top_degree(&hall_littlewood_transformed(&p(&[1, 1]), 0, 1)).unwrap(), q);
        assert!(top_degree(&hall_littlewood_transformed(&p(&[2]), 0, 1)).unwrap().is_zero());
        for n in 1..=6 {
            let s = schur(&mp1(&Partition::column(n).parts().to_vec()));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(top_degree(&s).unwrap(), RationalFunctionQ::from_int(sign));
        }
    }

    #[test]
    fn debug_rendering_is_deterministic() {
        let f = schur(&mp1(&[1, 1]));
        assert_eq!(format!("{f:?}"), "(-1/2) * p[2] + (1/2) * p[1,1]");
    }
}
