//! Brute-force ground truth over small finite fields.
//!
//! Representations of a quiver are enumerated entry by entry, absolute indecomposability is
//! decided by listing every element of the endomorphism algebra, and isomorphism classes are
//! counted by weighting each point with `|Aut(φ)| / |GL_v|`.

pub mod field;
pub mod linalg;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::invariants::{kac_poly_dim, InvariantsError};
use crate::quiver::{DimVector, Quiver};
pub use field::FiniteField;
pub use linalg::Mat;
use linalg::{nullspace, SpanTracker};

/// Largest endomorphism algebra (in elements) we are willing to list.
pub const END_BUDGET: u128 = 1_000_000;
/// Largest representation space we are willing to stream through.
pub const REP_BUDGET: u128 = 10_000_000;
/// Largest representation space for the explicit orbit partition.
pub const ORBIT_BUDGET: u128 = 10_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("unsupported field order {0} (supported: 2, 3, 4, 5)")]
    UnsupportedField(u8),
    #[error("{what} has {size} elements, over the budget of {limit}")]
    Budget { what: &'static str, size: String, limit: u128 },
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix for arrow {arrow} has shape {got:?}, expected {expected:?}")]
    Shape {
        arrow: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("weighted count {num}/{den} is not an integer")]
    NotIntegral { num: u128, den: u128 },
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

/// A point of `Rep(Γ, v)(F)`: one `v_j × v_i` matrix per arrow `i → j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepPoint {
    dim: DimVector,
    maps: Vec<Mat>,
}

impl RepPoint {
    pub fn new(quiver: &Quiver, dim: &[usize], maps: Vec<Mat>) -> Result<Self, OracleError> {
        check_dim(quiver, dim)?;
        assert_eq!(maps.len(), quiver.arrows().len(), "one matrix per arrow");
        for (a, (&(i, j), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if (m.rows(), m.cols()) != (dim[j], dim[i]) {
                return Err(OracleError::Shape {
                    arrow: a,
                    expected: (dim[j], dim[i]),
                    got: (m.rows(), m.cols()),
                });
            }
        }
        Ok(Self {
            dim: dim.to_vec(),
            maps,
        })
    }

    pub fn zero(quiver: &Quiver, dim: &[usize]) -> Self {
        let maps = quiver.arrows().iter().map(|&(i, j)| Mat::zero(dim[j], dim[i])).collect();
        Self {
            dim: dim.to_vec(),
            maps,
        }
    }

    pub fn dim(&self) -> &[usize] {
        &self.dim
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    /// `(g·φ)_γ = g_j φ_γ g_i⁻¹`; `g` and `g_inv` are indexed by vertex.
    pub fn act(&self, quiver: &Quiver, g: &[Mat], g_inv: &[Mat], f: &FiniteField) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(i, j), m)| g[j].mul(m, f).mul(&g_inv[i], f))
            .collect();
        Self {
            dim: self.dim.clone(),
            maps,
        }
    }
}

fn check_dim(quiver: &Quiver, dim: &[usize]) -> Result<(), OracleError> {
    if dim.len() != quiver.num_vertices() {
        return Err(OracleError::DimensionMismatch {
            expected: quiver.num_vertices(),
            got: dim.len(),
        });
    }
    Ok(())
}

/// Number of matrix entries of a point of `Rep(Γ, v)`.
pub fn rep_entries(quiver: &Quiver, dim: &[usize]) -> usize {
    quiver.arrows().iter().map(|&(i, j)| dim[i] * dim[j]).sum()
}

fn checked_pow(q: u8, e: usize, limit: u128, what: &'static str) -> Result<u128, OracleError> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
        if acc > limit {
            return Err(OracleError::Budget {
                what,
                size: format!("{q}^{e}"),
                limit,
            });
        }
    }
    Ok(acc)
}

/// Decodes the `index`-th point in lexicographic order over the matrix entries.
pub fn rep_from_index(quiver: &Quiver, dim: &[usize], q: u8, mut index: u128) -> RepPoint {
    let n = rep_entries(quiver, dim);
    let mut entries = vec![0u8; n];
    for slot in entries.iter_mut().rev() {
        *slot = (index % q as u128) as u8;
        index /= q as u128;
    }
    let mut pos = 0;
    let maps = quiver
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let len = dim[i] * dim[j];
            let m = Mat::from_data(dim[j], dim[i], entries[pos..pos + len].to_vec());
            pos += len;
            m
        })
        .collect();
    RepPoint {
        dim: dim.to_vec(),
        maps,
    }
}

pub fn rep_to_index(phi: &RepPoint, q: u8) -> u128 {
    phi.maps
        .iter()
        .flat_map(|m| m.data().iter())
        .fold(0u128, |acc, &x| acc * q as u128 + x as u128)
}

/// Basis of `{X ∈ ⊕ Mat_{v_i} : X_j φ_γ = φ_γ X_i for every arrow γ: i → j}`.
pub fn endomorphism_algebra(quiver: &Quiver, phi: &RepPoint, f: &FiniteField) -> Vec<Vec<Mat>> {
    let dim = &phi.dim;
    let offsets: Vec<usize> = dim
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d * d;
            Some(o)
        })
        .collect();
    let nvars: usize = dim.iter().map(|d| d * d).sum();
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * dim[i] + c;

    let mut eqs = Vec::new();
    for (&(i, j), m) in quiver.arrows().iter().zip(&phi.maps) {
        for r in 0..dim[j] {
            for c in 0..dim[i] {
                let mut row = vec![0u8; nvars];
                // (X_j φ)[r][c] = Σ_k X_j[r][k] φ[k][c]
                for k in 0..dim[j] {
                    let x = &mut row[var(j, r, k)];
                    *x = f.add(*x, m.get(k, c));
                }
                // (φ X_i)[r][c] = Σ_k φ[r][k] X_i[k][c]
                for k in 0..dim[i] {
                    let x = &mut row[var(i, k, c)];
                    *x = f.sub(*x, m.get(r, k));
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    nullspace(eqs, nvars, f)
        .into_iter()
        .map(|x| {
            dim.iter()
                .enumerate()
                .map(|(i, &d)| Mat::from_data(d, d, x[offsets[i]..offsets[i] + d * d].to_vec()))
                .collect()
        })
        .collect()
}

/// What a full pass over `End(φ)` found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndStats {
    pub dim: usize,
    pub units: u128,
    pub absolutely_indecomposable: bool,
}

fn combine(basis: &[Vec<Mat>], coords: &[u8], f: &FiniteField) -> Vec<Mat> {
    let mut out: Vec<Mat> = basis[0].iter().map(|m| Mat::zero(m.rows(), m.cols())).collect();
    for (b, &c) in basis.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for (o, m) in out.iter_mut().zip(b) {
            for r in 0..m.rows() {
                for k in 0..m.cols() {
                    let x = f.add(o.get(r, k), f.mul(c, m.get(r, k)));
                    o.set(r, k, x);
                }
            }
        }
    }
    out
}

/// Lists every element of `End(φ)`. With `stop_early` the scan ends at the first witness of
/// non-locality and `units` is then meaningless.
fn scan_end(
    quiver: &Quiver,
    phi: &RepPoint,
    f: &FiniteField,
    stop_early: bool,
) -> Result<EndStats, OracleError> {
    let basis = endomorphism_algebra(quiver, phi, f);
    let d = basis.len();
    let q = f.order();
    let total = checked_pow(q, d, END_BUDGET, "endomorphism algebra")?;
    if d == 0 {
        return Ok(EndStats {
            dim: 0,
            units: 1,
            absolutely_indecomposable: false,
        });
    }
    let mut units: u128 = 0;
    let mut nonunits: u128 = 0;
    let mut local = true;
    let mut span = SpanTracker::new();
    let mut coords = vec![0u8; d];
    for _ in 0..total {
        let x = combine(&basis, &coords, f);
        if x.iter().all(|m| m.is_invertible(f)) {
            units += 1;
        } else {
            nonunits += 1;
            if local && !x.iter().all(|m| m.is_nilpotent(f)) {
                local = false;
            }
            if local {
                span.insert(coords.clone(), f);
                if span.rank() >= d {
                    local = false;
                }
            }
            if !local && stop_early {
                return Ok(EndStats {
                    dim: d,
                    units: 0,
                    absolutely_indecomposable: false,
                });
            }
        }
        // next coordinate vector in base q
        for c in coords.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    let expected_nonunits = total / q as u128;
    let abs = local && nonunits == expected_nonunits && span.rank() == d - 1;
    Ok(EndStats {
        dim: d,
        units,
        absolutely_indecomposable: abs,
    })
}

/// `End(φ)` is local with residue field `F` and its non-units form a codimension-one subspace.
pub fn is_absolutely_indecomposable(quiver: &Quiver, phi: &RepPoint, f: &FiniteField) -> Result<bool, OracleError> {
    if phi.dim.iter().all(|&d| d == 0) {
        return Ok(false);
    }
    Ok(scan_end(quiver, phi, f, true)?.absolutely_indecomposable)
}

/// `|Aut(φ)|`, by listing `End(φ)`.
pub fn automorphism_count(quiver: &Quiver, phi: &RepPoint, f: &FiniteField) -> Result<u128, OracleError> {
    Ok(scan_end(quiver, phi, f, false)?.units)
}

/// `|GL_v(F_q)| = ∏_i ∏_{k < v_i} (q^{v_i} − q^k)`.
pub fn gl_order(dim: &[usize], q: u8) -> u128 {
    let q = q as u128;
    dim.iter()
        .map(|&n| (0..n).map(|k| q.pow(n as u32) - q.pow(k as u32)).product::<u128>())
        .product()
}

fn rep_space_size(quiver: &Quiver, dim: &[usize], q: u8, limit: u128) -> Result<u128, OracleError> {
    checked_pow(q, rep_entries(quiver, dim), limit, "representation space")
}

fn divide_exact(num: u128, den: u128) -> Result<BigInt, OracleError> {
    if num % den != 0 {
        return Err(OracleError::NotIntegral { num, den });
    }
    Ok(BigInt::from(num / den))
}

/// Number of isomorphism classes of absolutely indecomposable representations of dimension `v`.
pub fn kac_count(quiver: &Quiver, dim: &[usize], f: &FiniteField) -> Result<BigInt, OracleError> {
    check_dim(quiver, dim)?;
    if dim.iter().all(|&d| d == 0) {
        return Ok(BigInt::from(0));
    }
    let q = f.order();
    let size = rep_space_size(quiver, dim, q, REP_BUDGET)?;
    let weighted: u128 = (0..size as u64)
        .into_par_iter()
        .map(|idx| {
            let idx = idx as u128;
            let phi = rep_from_index(quiver, dim, q, idx);
            let s = scan_end(quiver, &phi, f, true)?;
            Ok(if s.absolutely_indecomposable { s.units } else { 0 })
        })
        .try_reduce(|| 0u128, |a, b| Ok::<u128, OracleError>(a + b))?;
    divide_exact(weighted, gl_order(dim, q))
}

/// `Σ_φ |Aut(φ)| / |GL_v|` over all points: the number of isomorphism classes by Burnside.
pub fn class_count_weighted(quiver: &Quiver, dim: &[usize], f: &FiniteField) -> Result<BigInt, OracleError> {
    check_dim(quiver, dim)?;
    let q = f.order();
    let size = rep_space_size(quiver, dim, q, REP_BUDGET)?;
    let weighted: u128 = (0..size as u64)
        .into_par_iter()
        .map(|idx| automorphism_count(quiver, &rep_from_index(quiver, dim, q, idx as u128), f))
        .try_reduce(|| 0u128, |a, b| Ok::<u128, OracleError>(a + b))?;
    divide_exact(weighted, gl_order(dim, q))
}

/// Every element of `GL_n(F)` together with its inverse.
pub fn general_linear_group(n: usize, f: &FiniteField) -> Vec<(Mat, Mat)> {
    let q = f.order();
    let count = (q as u128).pow((n * n) as u32);
    (0..count)
        .filter_map(|mut idx| {
            let mut data = vec![0u8; n * n];
            for x in data.iter_mut().rev() {
                *x = (idx % q as u128) as u8;
                idx /= q as u128;
            }
            let m = Mat::from_data(n, n, data);
            m.inverse(f).map(|inv| (m, inv))
        })
        .collect()
}

/// Partitions `Rep(Γ, v)(F)` into explicit `GL_v`-orbits and returns their number.
pub fn class_count_explicit(quiver: &Quiver, dim: &[usize], f: &FiniteField) -> Result<usize, OracleError> {
    check_dim(quiver, dim)?;
    let q = f.order();
    let size = rep_space_size(quiver, dim, q, ORBIT_BUDGET)?;
    let groups: Vec<Vec<(Mat, Mat)>> = dim.iter().map(|&n| general_linear_group(n, f)).collect();
    let mut elements: Vec<(Vec<Mat>, Vec<Mat>)> = vec![(Vec::new(), Vec::new())];
    for g in &groups {
        elements = elements
            .into_iter()
            .flat_map(|(a, b)| {
                g.iter().map(move |(m, inv)| {
                    let mut a = a.clone();
                    let mut b = b.clone();
                    a.push(m.clone());
                    b.push(inv.clone());
                    (a, b)
                })
            })
            .collect();
    }
    let mut seen: HashSet<u128> = HashSet::new();
    let mut orbits = 0;
    for idx in 0..size {
        if seen.contains(&idx) {
            continue;
        }
        orbits += 1;
        let phi = rep_from_index(quiver, dim, q, idx);
        for (g, g_inv) in &elements {
            seen.insert(rep_to_index(&phi.act(quiver, g, g_inv, f), q));
        }
    }
    Ok(orbits)
}

/// One row of the oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub q: u8,
    pub dim: DimVector,
    pub count: BigInt,
    pub poly_eval: BigInt,
}

impl OracleReport {
    pub fn matches(&self) -> bool {
        self.count == self.poly_eval
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.dim.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "q={} v={} count={} poly_eval={} match={}",
            self.q,
            v.join(","),
            self.count,
            self.poly_eval,
            if self.matches() { "yes" } else { "no" }
        )
    }
}

/// Compares `kac_count` over `F_q` with the Kac polynomial evaluated at `q`.
pub fn oracle_check(quiver: &Quiver, dim: &[usize], q: u8) -> Result<OracleReport, OracleError> {
    let f = FiniteField::new(q)?;
    let count = kac_count(quiver, dim, &f)?;
    let poly = kac_poly_dim(quiver, dim)?;
    let poly_eval = poly
        .eval_integer(q as i64)
        .expect("Kac polynomials have no negative powers of q");
    Ok(OracleReport {
        q,
        dim: dim.to_vec(),
        count,
        poly_eval,
    })
}

/// The comparison corpus: named quiver, dimension vector and field order.
pub fn default_corpus() -> Vec<(&'static str, Quiver, DimVector, u8)> {
    let mut out = Vec::new();
    let boxes = |b: usize| -> Vec<DimVector> {
        let mut vs = Vec::new();
        for a in 0..=b {
            for c in 0..=b {
                if a + c > 0 {
                    vs.push(vec![a, c]);
                }
            }
        }
        vs
    };
    for n in 1..=3 {
        out.push(("jordan", Quiver::loops(1), vec![n], 2));
    }
    for v in boxes(2) {
        out.push(("kronecker", Quiver::kronecker(2), v, 2));
    }
    for q in [2, 3] {
        for v in boxes(2) {
            out.push(("a2", Quiver::linear(2), v, q));
        }
    }
    for q in [2, 3] {
        out.push(("two-loops", Quiver::loops(2), vec![1], q));
    }
    out
}
