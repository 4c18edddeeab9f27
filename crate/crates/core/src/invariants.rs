//! The master series `H = (q − 1) Log Ω`, the polynomials `H^s_μ(q)`, Kac
//! polynomials `A_μ(q) = ⟨H, h_μ⟩`, and DT-invariants of symmetric quivers
//! computed two ways: from `H` and from a pure `q`-series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{q_pochhammer, ExactAlgError, LaurentPolyQ, RationalFunctionQ};
use crate::partitions::{
    enumerate_multipartitions, kostka_matrix, pairing, sn_character, MultiPartition,
};
use crate::plethlog::{GradedSeries, LambdaRing, PlethError, Truncation};
use crate::quiver::{columns_multipartition, DimVector, Quiver, QuiverError};
use crate::symfunc::{complete_h, hall_littlewood_tensor, pair_with_schur, HomogSymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("result is not a polynomial ({context}): {source}")]
    NonPolynomial {
        context: String,
        source: ExactAlgError,
    },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Pleth(#[from] PlethError),
    #[error("leg profile {0:?} does not fit a quiver with {1} vertices (each k_i must be >= 1)")]
    BadLegProfile(Vec<usize>, usize),
    #[error("quiver is not symmetric")]
    NotSymmetric,
    #[error("weight k'_{vertex} = {k} must have parity opposite to the {loops} loops there")]
    Parity { vertex: usize, k: usize, loops: usize },
    #[error("{0} lies outside the computed truncation")]
    OutOfTruncation(String),
    #[error("{0} does not have one partition per slot")]
    SlotMismatch(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
}

fn certify(f: &RationalFunctionQ, context: impl FnOnce() -> String) -> Result<LaurentPolyQ, InvariantsError> {
    f.polynomial_check().map_err(|source| InvariantsError::NonPolynomial {
        context: context(),
        source,
    })
}

/// Number of legs `k_i ≥ 1` at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegProfile {
    k: Vec<usize>,
}

impl LegProfile {
    pub fn new(k: Vec<usize>) -> Result<Self, InvariantsError> {
        if k.contains(&0) {
            return Err(InvariantsError::BadLegProfile(k.clone(), k.len()));
        }
        Ok(Self { k })
    }

    pub fn ones(r: usize) -> Self {
        Self { k: vec![1; r] }
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn num_slots(&self) -> usize {
        self.k.iter().sum()
    }

    /// Vertex of each slot, vertex-major.
    pub fn slot_vertex(&self) -> Vec<usize> {
        self.k
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }

    /// `δ(v) = Σ k_i v_i`.
    pub fn delta(&self, v: &[usize]) -> i64 {
        self.k.iter().zip(v).map(|(&k, &x)| (k * x) as i64).sum()
    }

    fn check(&self, q: &Quiver) -> Result<(), InvariantsError> {
        if self.k.len() != q.num_vertices() {
            return Err(InvariantsError::BadLegProfile(self.k.clone(), q.num_vertices()));
        }
        Ok(())
    }
}

/// `𝓗_π(q) = 𝓐_π / 𝓩_π` with
/// `𝓐_π = Π_{i→j} q^{⟨π^i,π^j⟩}` (loops included) and
/// `𝓩_π = Π_i q^{⟨π^i,π^i⟩} Π_k Π_{j=1}^{m_k(π^i)} (1 − q^{−j})`.
pub fn hua_weight(quiver: &Quiver, pi: &MultiPartition) -> RationalFunctionQ {
    let mut e: i64 = 0;
    for &(i, j) in quiver.arrows() {
        e += pairing(pi.component(i), pi.component(j)) as i64;
    }
    let mut den = LaurentPolyQ::one();
    for p in pi.components() {
        e -= pairing(p, p) as i64;
        // 1 − q^{−j} = (q^j − 1) q^{−j}
        for (_, m) in p.multiplicities() {
            for j in 1..=m {
                e += j as i64;
                den = &den * &LaurentPolyQ::from_terms([(j as i64, 1), (0, -1)]);
            }
        }
    }
    RationalFunctionQ::new(LaurentPolyQ::monomial(1, e), den).expect("non-zero denominator")
}

/// `Ω = Σ_π 𝓗_π(q) Π_i Π_{j ≤ k_i} H̃_{π^i}(x^{i,j}; q)`, truncated.
pub fn hua_inner_series(
    quiver: &Quiver,
    legs: &LegProfile,
    truncation: &Truncation,
) -> Result<GradedSeries<HomogSymFunc>, InvariantsError> {
    legs.check(quiver)?;
    if truncation.num_vars() != quiver.num_vertices() {
        return Err(QuiverError::DimensionMismatch(
            truncation.bounds().to_vec(),
            quiver.num_vertices(),
        )
        .into());
    }
    let slot_vertex = legs.slot_vertex();
    let jobs: Vec<(Vec<usize>, MultiPartition)> = truncation
        .keys()
        .into_iter()
        .flat_map(|v| {
            enumerate_multipartitions(&v)
                .into_iter()
                .map(move |pi| (v.clone(), pi))
        })
        .collect();
    let pieces: Vec<(Vec<usize>, HomogSymFunc)> = jobs
        .par_iter()
        .map(|(v, pi)| {
            let slots = MultiPartition::new(
                slot_vertex.iter().map(|&i| pi.component(i).clone()).collect(),
            );
            let f = hall_littlewood_tensor(&slots).scale(&hua_weight(quiver, pi));
            (v.clone(), f)
        })
        .collect();
    let mut grouped: BTreeMap<Vec<usize>, Vec<HomogSymFunc>> = BTreeMap::new();
    for (v, f) in pieces {
        grouped.entry(v).or_default().push(f);
    }
    let mut omega = GradedSeries::zero(slot_vertex, truncation.clone());
    let sums: Vec<(Vec<usize>, HomogSymFunc)> = grouped
        .into_par_iter()
        .map(|(v, fs)| {
            let deg = omega.slot_degree(&v);
            (v, HomogSymFunc::sum_all(&deg, fs))
        })
        .collect();
    for (v, f) in sums {
        omega.insert(v, f);
    }
    Ok(omega)
}

fn q_minus_one() -> RationalFunctionQ {
    RationalFunctionQ::from_poly(LaurentPolyQ::from_terms([(1, 1), (0, -1)]))
}

/// `H = (q − 1) Log Ω`.
pub fn master_series_h(
    quiver: &Quiver,
    legs: &LegProfile,
    truncation: &Truncation,
) -> Result<GradedSeries<HomogSymFunc>, InvariantsError> {
    let omega = hua_inner_series(quiver, legs, truncation)?;
    Ok(omega.pleth_log()?.scale(&q_minus_one()))
}

/// `H` computed once for a quiver, leg profile and truncation, with the
/// extractions built on it.
#[derive(Debug, Clone)]
pub struct MasterSeries {
    quiver: Quiver,
    legs: LegProfile,
    h: GradedSeries<HomogSymFunc>,
}

impl MasterSeries {
    pub fn new(quiver: &Quiver, legs: &LegProfile, truncation: &Truncation) -> Result<Self, InvariantsError> {
        Ok(Self {
            quiver: quiver.clone(),
            legs: legs.clone(),
            h: master_series_h(quiver, legs, truncation)?,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn legs(&self) -> &LegProfile {
        &self.legs
    }

    pub fn series(&self) -> &GradedSeries<HomogSymFunc> {
        &self.h
    }

    pub fn truncation(&self) -> &Truncation {
        self.h.truncation()
    }

    /// Vertex dimension vector of a per-slot multipartition, or `None` if the
    /// slot sizes differ at some vertex.
    fn vertex_dims(&self, mu: &MultiPartition) -> Result<Option<DimVector>, InvariantsError> {
        if mu.num_slots() != self.legs.num_slots() {
            return Err(InvariantsError::SlotMismatch(mu.to_string()));
        }
        let mut v = Vec::with_capacity(self.legs.k.len());
        let mut s = 0;
        for &k in &self.legs.k {
            let n = mu.component(s).size();
            if (s..s + k).any(|t| mu.component(t).size() != n) {
                return Ok(None);
            }
            v.push(n);
            s += k;
        }
        Ok(Some(v))
    }

    fn coefficient(&self, v: &[usize]) -> Result<HomogSymFunc, InvariantsError> {
        if !self.h.truncation().contains(v) {
            return Err(InvariantsError::OutOfTruncation(format!("{v:?}")));
        }
        Ok(self.h.coeff_or_zero(v))
    }

    /// `H^s_μ = ⟨H, s_μ⟩`, certified polynomial; zero when slot sizes differ
    /// at a vertex.
    pub fn hs_mu(&self, mu: &MultiPartition) -> Result<LaurentPolyQ, InvariantsError> {
        let Some(v) = self.vertex_dims(mu)? else {
            return Ok(LaurentPolyQ::zero());
        };
        if v.iter().all(|&x| x == 0) {
            return Ok(LaurentPolyQ::zero());
        }
        let hv = self.coefficient(&v)?;
        certify(&pair_with_schur(&hv, mu), || format!("H^s at {mu}"))
    }

    /// `A_μ = ⟨H, h_μ⟩`, certified polynomial.
    pub fn kac_poly(&self, mu: &MultiPartition) -> Result<LaurentPolyQ, InvariantsError> {
        let Some(v) = self.vertex_dims(mu)? else {
            return Ok(LaurentPolyQ::zero());
        };
        if v.iter().all(|&x| x == 0) {
            return Ok(LaurentPolyQ::zero());
        }
        let hv = self.coefficient(&v)?;
        let h = complete_h(mu);
        certify(&crate::symfunc::hall_pairing(&hv, &h), || format!("A at {mu}"))
    }

    /// `⟨H, p_λ⟩` (a rational function in general).
    pub fn pair_with_p(&self, lambda: &MultiPartition) -> Result<RationalFunctionQ, InvariantsError> {
        let Some(v) = self.vertex_dims(lambda)? else {
            return Ok(RationalFunctionQ::zero());
        };
        if v.iter().all(|&x| x == 0) {
            return Ok(RationalFunctionQ::zero());
        }
        let hv = self.coefficient(&v)?;
        Ok(hv.coeff(lambda).scale_int(&lambda.z()))
    }

    /// `H^s_{1^v}`.
    pub fn hs_columns(&self, v: &[usize]) -> Result<LaurentPolyQ, InvariantsError> {
        self.hs_mu(&columns_multipartition(&self.legs.k, v))
    }
}

/// `H^s_μ` for a single `μ`, computing `H` up to the needed degree.
pub fn hs_mu(quiver: &Quiver, legs: &LegProfile, mu: &MultiPartition) -> Result<LaurentPolyQ, InvariantsError> {
    legs.check(quiver)?;
    let ms = MasterSeries::new(quiver, legs, &box_for(legs, mu)?)?;
    ms.hs_mu(mu)
}

fn box_for(legs: &LegProfile, mu: &MultiPartition) -> Result<Truncation, InvariantsError> {
    if mu.num_slots() != legs.num_slots() {
        return Err(InvariantsError::SlotMismatch(mu.to_string()));
    }
    let sv = legs.slot_vertex();
    let mut bounds = vec![0; legs.k.len()];
    for (s, p) in mu.components().iter().enumerate() {
        bounds[sv[s]] = bounds[sv[s]].max(p.size());
    }
    Ok(Truncation::boxed(bounds))
}

/// `A_μ(q) = ⟨H, h_μ⟩` with one leg per vertex.
pub fn kac_poly(quiver: &Quiver, mu: &MultiPartition) -> Result<LaurentPolyQ, InvariantsError> {
    let legs = LegProfile::ones(quiver.num_vertices());
    let ms = MasterSeries::new(quiver, &legs, &box_for(&legs, mu)?)?;
    ms.kac_poly(mu)
}

/// `A_v(q)`: the Kac polynomial of the quiver itself, via `μ = ((v_1), …, (v_r))`.
pub fn kac_poly_dim(quiver: &Quiver, v: &[usize]) -> Result<LaurentPolyQ, InvariantsError> {
    kac_poly(quiver, &row_multipartition(v))
}

pub fn row_multipartition(v: &[usize]) -> MultiPartition {
    MultiPartition::new(v.iter().map(|&n| crate::partitions::Partition::row(n)).collect())
}

/// `H^s_{1^v}(q)`, which is `DT_v` when the linear forms `δ` and `δ′` agree.
pub fn dt_via_symfunc(quiver: &Quiver, legs: &LegProfile, v: &[usize]) -> Result<LaurentPolyQ, InvariantsError> {
    legs.check(quiver)?;
    let ms = MasterSeries::new(quiver, legs, &Truncation::boxed(v.to_vec()))?;
    ms.hs_columns(v)
}

/// A symmetric quiver `Γ′` with weights `k′_i ≡ a′_ii − 1 (mod 2)` defining
/// the linear form `δ′(v) = Σ k′_i v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricQuiverProblem {
    quiver: Quiver,
    k_prime: Vec<usize>,
}

impl SymmetricQuiverProblem {
    pub fn new(quiver: Quiver, k_prime: Vec<usize>) -> Result<Self, InvariantsError> {
        if !quiver.is_symmetric() {
            return Err(InvariantsError::NotSymmetric);
        }
        if k_prime.len() != quiver.num_vertices() {
            return Err(InvariantsError::BadLegProfile(k_prime, quiver.num_vertices()));
        }
        for (i, &k) in k_prime.iter().enumerate() {
            let loops = quiver.num_loops(i);
            if k == 0 || (k + loops) % 2 == 0 {
                return Err(InvariantsError::Parity {
                    vertex: i + 1,
                    k,
                    loops,
                });
            }
        }
        Ok(Self { quiver, k_prime })
    }

    /// The weights `k′_i = a′_ii + 1`, which make the matched leg profile
    /// coincide with `k′`.
    pub fn with_default_weights(quiver: Quiver) -> Result<Self, InvariantsError> {
        let k = (0..quiver.num_vertices())
            .map(|i| quiver.num_loops(i) + 1)
            .collect();
        Self::new(quiver, k)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn k_prime(&self) -> &[usize] {
        &self.k_prime
    }

    /// `δ′(v)`.
    pub fn delta_prime(&self, v: &[usize]) -> i64 {
        self.k_prime.iter().zip(v).map(|(&k, &x)| (k * x) as i64).sum()
    }

    /// `γ′(v) = Σ v_i² − Σ_{i→j ∈ Ω′} v_i v_j`.
    pub fn gamma_prime(&self, v: &[usize]) -> i64 {
        self.quiver.tits_form(v)
    }
}

/// A quiver `Γ` and legs `k` with `a′_ij + a′_ji = 2(a_ij + a_ji)` for
/// `i ≠ j` and `k_i − 2 + 2a_ii = a′_ii − 1`. The choice made here puts
/// `a′_ij` arrows `i → j` for `i < j`, no loops, and `k_i = a′_ii + 1`.
pub fn match_symmetric(p: &SymmetricQuiverProblem) -> (Quiver, LegProfile) {
    let r = p.quiver.num_vertices();
    let a = p.quiver.arrow_matrix();
    let mut arrows = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &n) in row.iter().enumerate().skip(i + 1) {
            arrows.extend(std::iter::repeat_n((i, j), n));
        }
    }
    let quiver = Quiver::new(r, arrows).expect("vertices in range");
    let legs = LegProfile {
        k: (0..r).map(|i| a[i][i] + 1).collect(),
    };
    (quiver, legs)
}

/// Exponent `e` with `DT_v = q^e H^s_{1^v}` for a matched pair:
/// `e = (δ(v) − δ′(v)) / 2`.
pub fn dt_shift(p: &SymmetricQuiverProblem, legs: &LegProfile, v: &[usize]) -> i64 {
    let diff = legs.delta(v) - p.delta_prime(v);
    debug_assert!(diff % 2 == 0, "δ − δ′ is even under the matching conditions");
    diff / 2
}

/// `DT_v` for all `v` in the truncation from
/// `(q − 1) Log Σ_v q^{−(γ′+δ′)/2} (−1)^{δ′} T^v / (q^{−1})_v`.
pub fn dt_via_qseries(
    p: &SymmetricQuiverProblem,
    truncation: &Truncation,
) -> Result<BTreeMap<DimVector, LaurentPolyQ>, InvariantsError> {
    if truncation.num_vars() != p.quiver.num_vertices() {
        return Err(QuiverError::DimensionMismatch(
            truncation.bounds().to_vec(),
            p.quiver.num_vertices(),
        )
        .into());
    }
    let mut series = GradedSeries::zero(Vec::new(), truncation.clone());
    for v in truncation.keys() {
        let twice = p.gamma_prime(&v) + p.delta_prime(&v);
        debug_assert!(twice % 2 == 0);
        let sign = if p.delta_prime(&v) % 2 == 0 { 1 } else { -1 };
        let den = v
            .iter()
            .fold(LaurentPolyQ::one(), |acc, &n| &acc * &q_pochhammer(n as u32, true));
        let c = RationalFunctionQ::new(LaurentPolyQ::monomial(sign, -twice / 2), den)
            .expect("non-zero denominator");
        series.insert(v, c);
    }
    let h = series.pleth_log()?.scale(&q_minus_one());
    let mut out = BTreeMap::new();
    for v in truncation.keys() {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let c = h.coeff_or_zero(&v);
        let c = if p.delta_prime(&v) % 2 == 0 { c } else { -c };
        let poly = certify(&c, || format!("DT at {v:?}"))?;
        out.insert(v, poly);
    }
    Ok(out)
}

/// `DT_v` via the master series of the matched `(Γ, k)`, shifted by
/// `q^{(δ − δ′)/2}`.
pub fn dt_table_via_symfunc(
    p: &SymmetricQuiverProblem,
    truncation: &Truncation,
) -> Result<BTreeMap<DimVector, LaurentPolyQ>, InvariantsError> {
    let (gamma, legs) = match_symmetric(p);
    let ms = MasterSeries::new(&gamma, &legs, truncation)?;
    let mut out = BTreeMap::new();
    for v in truncation.keys() {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let h = ms.hs_columns(&v)?;
        out.insert(v.clone(), h.shift(dt_shift(p, &legs, &v)));
    }
    Ok(out)
}

/// `⟨H, p_λ⟩`, asserted equal to `Σ_μ χ^μ_λ H^s_μ` (one leg per vertex).
pub fn character_sum_check(
    ms: &MasterSeries,
    lambda: &MultiPartition,
) -> Result<RationalFunctionQ, InvariantsError> {
    let value = ms.pair_with_p(lambda)?;
    let mut sum = RationalFunctionQ::zero();
    for mu in enumerate_multipartitions(&lambda.sizes()) {
        let mut chi = BigInt::one();
        for (m, l) in mu.components().iter().zip(lambda.components()) {
            chi *= sn_character(m, l).expect("sizes agree");
        }
        if chi.is_zero() {
            continue;
        }
        let h = ms.hs_mu(&mu)?;
        sum = &sum + &RationalFunctionQ::from_poly(h.scale(&chi));
    }
    if sum != value {
        return Err(InvariantsError::IdentityFailure(format!(
            "<H, p_{lambda}> = {value} but the character sum is {sum}"
        )));
    }
    Ok(value)
}

/// Checks `A_λ = Σ_μ K_{μλ} H^s_μ` and `H^s_μ = Σ_λ (K^{-1})_{λμ} A_λ` over
/// all multipartitions of size `v`, with multipartition Kostka numbers taken
/// slot-wise.
pub fn kostka_relation_check(ms: &MasterSeries, v: &[usize]) -> Result<bool, InvariantsError> {
    let mps = enumerate_multipartitions(v);
    let mats: Vec<_> = v.iter().map(|&n| kostka_matrix(n.max(1))).collect();
    let (mut a, mut hs) = (Vec::new(), Vec::new());
    for m in &mps {
        a.push(ms.kac_poly(m)?);
        hs.push(ms.hs_mu(m)?);
    }
    let entry = |x: &MultiPartition, y: &MultiPartition, inverse: bool| -> BigInt {
        let mut acc = BigInt::one();
        for (s, km) in mats.iter().enumerate() {
            let (p, r) = (x.component(s), y.component(s));
            if p.is_empty() {
                continue;
            }
            acc *= if inverse { km.get_inverse(p, r) } else { km.get(p, r) };
        }
        acc
    };
    for (li, lambda) in mps.iter().enumerate() {
        let mut rhs = LaurentPolyQ::zero();
        for (mi, mu) in mps.iter().enumerate() {
            rhs = &rhs + &hs[mi].scale(&entry(mu, lambda, false));
        }
        if rhs != a[li] {
            return Ok(false);
        }
    }
    for (mi, mu) in mps.iter().enumerate() {
        let mut rhs = LaurentPolyQ::zero();
        for (li, lambda) in mps.iter().enumerate() {
            rhs = &rhs + &a[li].scale(&entry(lambda, mu, true));
        }
        if rhs != hs[mi] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::symfunc::p_basis;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPolyQ {
        LaurentPolyQ::from_terms(terms.iter().copied())
    }

    #[test]
    fn hua_series_low_terms() {
        let one = Quiver::loops(0);
        let omega = hua_inner_series(&one, &LegProfile::ones(1), &Truncation::boxed(vec![2])).unwrap();
        assert_eq!(omega.coeff(&[0]).unwrap(), &HomogSymFunc::one(1));
        let c = RationalFunctionQ::new(LaurentPolyQ::one(), poly(&[(1, 1), (0, -1)])).unwrap();
        let expected = p_basis(&MultiPartition::new(vec![Partition::row(1)])).scale(&c);
        assert_eq!(omega.coeff(&[1]).unwrap(), &expected);
        assert_eq!(hua_weight(&Quiver::loops(1), &mp("[1]")), RationalFunctionQ::new(LaurentPolyQ::q(), poly(&[(1, 1), (0, -1)])).unwrap());
    }

    #[test]
    fn small_kac_polynomials() {
        let jordan = Quiver::loops(1);
        for n in 1..=3 {
            assert_eq!(kac_poly_dim(&jordan, &[n]).unwrap(), LaurentPolyQ::q(), "n={n}");
        }
        assert_eq!(kac_poly_dim(&Quiver::kronecker(2), &[1, 1]).unwrap(), poly(&[(1, 1), (0, 1)]));
        assert!(kac_poly_dim(&Quiver::linear(2), &[1, 1]).unwrap().is_one());
        assert!(kac_poly_dim(&Quiver::loops(0), &[1]).unwrap().is_one());
        assert!(kac_poly_dim(&Quiver::loops(0), &[2]).unwrap().is_zero());
    }

    #[test]
    fn hs_examples() {
        let a2 = Quiver::linear(2);
        assert!(hs_mu(&a2, &LegProfile::ones(2), &mp("[1];[1]")).unwrap().is_one());
        assert_eq!(
            hs_mu(&Quiver::loops(1), &LegProfile::ones(1), &mp("[1]")).unwrap(),
            LaurentPolyQ::q()
        );
        let legs = LegProfile::new(vec![2]).unwrap();
        assert!(hs_mu(&Quiver::loops(0), &legs, &mp("[2];[1]")).unwrap().is_zero());
    }

    #[test]
    fn dt_small_cases() {
        let one = Quiver::loops(0);
        let legs = LegProfile::new(vec![3]).unwrap();
        assert_eq!(dt_via_symfunc(&one, &legs, &[3]).unwrap(), LaurentPolyQ::q());
        let a2 = Quiver::linear(2);
        assert!(dt_via_symfunc(&a2, &LegProfile::ones(2), &[1, 1]).unwrap().is_one());
    }

    #[test]
    fn matching() {
        let p = SymmetricQuiverProblem::with_default_weights(Quiver::linear(2).double()).unwrap();
        let (g, k) = match_symmetric(&p);
        assert_eq!(g, Quiver::linear(2));
        assert_eq!(k.k(), &[1, 1]);
        let p = SymmetricQuiverProblem::with_default_weights(Quiver::loops(2)).unwrap();
        let (g, k) = match_symmetric(&p);
        assert_eq!(g, Quiver::loops(0));
        assert_eq!(k.k(), &[3]);
        assert!(SymmetricQuiverProblem::new(Quiver::loops(2), vec![2]).is_err());
        assert!(SymmetricQuiverProblem::new(Quiver::linear(2), vec![1, 1]).is_err());
    }

    #[test]
    fn qseries_s_m_small() {
        for m in 0..=1 {
            let p = SymmetricQuiverProblem::with_default_weights(Quiver::loops(m)).unwrap();
            let dt = dt_via_qseries(&p, &Truncation::boxed(vec![4])).unwrap();
            assert!(dt[&vec![1]].is_one());
            for n in 2..=4 {
                assert!(dt[&vec![n]].is_zero(), "m={m} n={n}");
            }
        }
        let p = SymmetricQuiverProblem::with_default_weights(Quiver::loops(3)).unwrap();
        let dt = dt_via_qseries(&p, &Truncation::boxed(vec![3])).unwrap();
        assert_eq!(dt[&vec![3]], poly(&[(4, 1), (2, 1), (1, 1)]));
    }

    #[test]
    fn shift_with_a_different_linear_form() {
        // S_2 with k' = 1 against the matched profile k = 3: DT_n gains q^n
        let p1 = SymmetricQuiverProblem::new(Quiver::loops(2), vec![1]).unwrap();
        let p3 = SymmetricQuiverProblem::with_default_weights(Quiver::loops(2)).unwrap();
        let t = Truncation::boxed(vec![4]);
        let a = dt_via_qseries(&p1, &t).unwrap();
        let b = dt_via_qseries(&p3, &t).unwrap();
        let via_h = dt_table_via_symfunc(&p1, &t).unwrap();
        for n in 1..=4 {
            assert_eq!(a[&vec![n]], b[&vec![n]].shift(n as i64));
            assert_eq!(via_h[&vec![n]], a[&vec![n]]);
        }
    }

    #[test]
    fn character_and_kostka_identities() {
        let ms = MasterSeries::new(&Quiver::loops(1), &LegProfile::ones(1), &Truncation::boxed(vec![3])).unwrap();
        for n in 1..=3 {
            for l in crate::partitions::enumerate_partitions(n) {
                character_sum_check(&ms, &MultiPartition::new(vec![l])).unwrap();
            }
            assert!(kostka_relation_check(&ms, &[n]).unwrap());
        }
    }
}
