//! Quivers with loops, their doubles and legs, Cartan data, and Kac's root
//! classification by reflection descent.
//!
//! Vertices are 0-based in the API and 1-based in the text format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partitions::{MultiPartition, Partition};

pub type DimVector = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("arrow {0}->{1} leaves the vertex range 1..={2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension vector {0:?} does not fit a quiver with {1} vertices")]
    DimensionMismatch(Vec<usize>, usize),
    #[error("the zero vector cannot be classified")]
    ZeroVector,
    #[error("malformed multipartition: {0}")]
    MalformedMultiPartition(String),
}

/// Kac's trichotomy for a positive vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootClass {
    NotRoot,
    RealRoot,
    ImaginaryRoot,
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootClass::NotRoot => "not-root",
            RootClass::RealRoot => "real",
            RootClass::ImaginaryRoot => "imaginary",
        })
    }
}

/// A quiver: `num_vertices` vertices and a multiset of arrows `(i, j)`,
/// loops allowed. Arrows keep their insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    num_vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(num_vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        if num_vertices == 0 {
            return Err(QuiverError::NoVertices);
        }
        if let Some(&(i, j)) = arrows
            .iter()
            .find(|(i, j)| *i >= num_vertices || *j >= num_vertices)
        {
            return Err(QuiverError::VertexOutOfRange(i + 1, j + 1, num_vertices));
        }
        Ok(Self {
            num_vertices,
            arrows,
        })
    }

    /// One vertex with `m` loops.
    pub fn loops(m: usize) -> Self {
        Self {
            num_vertices: 1,
            arrows: vec![(0, 0); m],
        }
    }

    /// `1 → 2 → … → n`.
    pub fn linear(n: usize) -> Self {
        Self {
            num_vertices: n,
            arrows: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Two vertices with `m` parallel arrows `1 → 2`.
    pub fn kronecker(m: usize) -> Self {
        Self {
            num_vertices: 2,
            arrows: vec![(0, 1); m],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// `a_ij`, the number of arrows `i → j`.
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let mut a = vec![vec![0; self.num_vertices]; self.num_vertices];
        for &(i, j) in &self.arrows {
            a[i][j] += 1;
        }
        a
    }

    pub fn num_loops(&self, i: usize) -> usize {
        self.arrows.iter().filter(|&&(a, b)| a == i && b == i).count()
    }

    pub fn is_symmetric(&self) -> bool {
        let a = self.arrow_matrix();
        (0..self.num_vertices).all(|i| (0..self.num_vertices).all(|j| a[i][j] == a[j][i]))
    }

    pub fn opposite(&self) -> Self {
        Self {
            num_vertices: self.num_vertices,
            arrows: self.arrows.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// `Ω ⊔ Ω^opp`; each loop becomes two loops.
    pub fn double(&self) -> Self {
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(|&(i, j)| (j, i)));
        Self {
            num_vertices: self.num_vertices,
            arrows,
        }
    }

    /// `C = 2I − A − Aᵀ`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &self.arrows {
            c[i][j] -= 1;
            c[j][i] -= 1;
        }
        c
    }

    fn check_dim(&self, v: &[usize]) -> Result<(), QuiverError> {
        if v.len() != self.num_vertices {
            return Err(QuiverError::DimensionMismatch(v.to_vec(), self.num_vertices));
        }
        Ok(())
    }

    /// `(Cv)_i = (v, e_i)`.
    fn cartan_apply(&self, v: &[usize]) -> Vec<i64> {
        let c = self.cartan();
        c.iter()
            .map(|row| row.iter().zip(v).map(|(a, &b)| a * b as i64).sum())
            .collect()
    }

    /// Tits form `½ vᵀCv = Σ v_i² − Σ_{i→j} v_i v_j`.
    pub fn tits_form(&self, v: &[usize]) -> i64 {
        let cv = self.cartan_apply(v);
        let twice: i64 = cv.iter().zip(v).map(|(a, &b)| a * b as i64).sum();
        twice / 2
    }

    /// Connectivity of the support of `v` in the underlying graph.
    pub fn support_connected(&self, v: &[usize]) -> bool {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(i, j) in &self.arrows {
                for (a, b) in [(i, j), (j, i)] {
                    if a == x && v[b] > 0 && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        seen.len() == support.len()
    }

    /// Attaches one leg per vertex from `mu` (one partition per vertex).
    pub fn attach_legs(&self, mu: &MultiPartition) -> Result<(Quiver, DimVector), QuiverError> {
        self.attach_legs_multi(&vec![1; self.num_vertices], mu)
    }

    /// Attaches `legs[i]` legs at vertex `i`. `mu` holds one partition per
    /// (vertex, leg) slot in vertex-major order, and all partitions at one
    /// vertex must have the same size `v_i`. A partition with `l` parts gives
    /// a leg of `l − 1` new vertices with dimensions
    /// `v_i − μ_1, v_i − μ_1 − μ_2, …, μ_l`, arrows pointing towards `i`.
    pub fn attach_legs_multi(
        &self,
        legs: &[usize],
        mu: &MultiPartition,
    ) -> Result<(Quiver, DimVector), QuiverError> {
        let slots: usize = legs.iter().sum();
        if legs.len() != self.num_vertices || mu.num_slots() != slots {
            return Err(QuiverError::MalformedMultiPartition(format!(
                "{mu} has {} slots, expected {slots}",
                mu.num_slots()
            )));
        }
        let mut dims = Vec::with_capacity(self.num_vertices);
        let mut s = 0;
        for &k in legs {
            let n = mu.component(s).size();
            if (s..s + k).any(|t| mu.component(t).size() != n) {
                return Err(QuiverError::MalformedMultiPartition(format!(
                    "{mu}: slot sizes differ at one vertex"
                )));
            }
            dims.push(n);
            s += k;
        }
        let mut quiver = self.clone();
        let mut v = dims.clone();
        let mut s = 0;
        for (i, &k) in legs.iter().enumerate() {
            for _ in 0..k {
                let p: &Partition = mu.component(s);
                s += 1;
                let mut prev = i;
                let mut remaining = dims[i];
                for &part in &p.parts()[..p.len().saturating_sub(1)] {
                    remaining -= part;
                    let new = quiver.num_vertices;
                    quiver.num_vertices += 1;
                    quiver.arrows.push((new, prev));
                    v.push(remaining);
                    prev = new;
                }
            }
        }
        Ok((quiver, v))
    }

    /// `(Γ̃_v, ṽ)`: legs for the all-columns multipartition `1^v`.
    pub fn column_legs(&self, legs: &[usize], v: &[usize]) -> Result<(Quiver, DimVector), QuiverError> {
        self.check_dim(v)?;
        let mu = columns_multipartition(legs, v);
        self.attach_legs_multi(legs, &mu)
    }

    /// Kac's classification of a non-zero `v ≥ 0`.
    pub fn classify_root(&self, v: &[usize]) -> Result<RootClass, QuiverError> {
        self.check_dim(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(QuiverError::ZeroVector);
        }
        let loop_free: Vec<bool> = (0..self.num_vertices).map(|i| self.num_loops(i) == 0).collect();
        let mut v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        loop {
            if v.iter().any(|&x| x < 0) {
                return Ok(RootClass::NotRoot);
            }
            let vu: Vec<usize> = v.iter().map(|&x| x as usize).collect();
            if !self.support_connected(&vu) {
                return Ok(RootClass::NotRoot);
            }
            let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
            if support.len() == 1 && v[support[0]] == 1 && loop_free[support[0]] {
                return Ok(RootClass::RealRoot);
            }
            let cv = self.cartan_apply(&vu);
            match (0..v.len()).find(|&i| loop_free[i] && cv[i] > 0) {
                None => return Ok(RootClass::ImaginaryRoot),
                Some(i) => v[i] -= cv[i],
            }
        }
    }

    /// Canonical text form.
    pub fn serialize(&self) -> String {
        let mut s = format!("vertices {}\n", self.num_vertices);
        for &(i, j) in &self.arrows {
            s.push_str(&format!("arrow {} {}\n", i + 1, j + 1));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let mut vertices = None;
        let mut arrows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: &str| QuiverError::Parse {
                line,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["vertices", r] => {
                    if vertices.is_some() {
                        return Err(err("duplicate vertices line"));
                    }
                    vertices = Some(r.parse::<usize>().map_err(|_| err("bad vertex count"))?);
                }
                ["arrow", i, j] => {
                    if vertices.is_none() {
                        return Err(err("arrow before vertices line"));
                    }
                    let i: usize = i.parse().map_err(|_| err("bad arrow source"))?;
                    let j: usize = j.parse().map_err(|_| err("bad arrow target"))?;
                    if i == 0 || j == 0 {
                        return Err(err("vertices are numbered from 1"));
                    }
                    arrows.push((i - 1, j - 1));
                }
                _ => return Err(err(&format!("unrecognized line `{content}`"))),
            }
        }
        let r = vertices.ok_or(QuiverError::Parse {
            line: 0,
            msg: "missing vertices line".into(),
        })?;
        Self::new(r, arrows)
    }
}

impl FromStr for Quiver {
    type Err = QuiverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// `1^v` with `legs[i]` copies of `(1^{v_i})` at vertex `i`.
pub fn columns_multipartition(legs: &[usize], v: &[usize]) -> MultiPartition {
    MultiPartition::new(
        legs.iter()
            .zip(v)
            .flat_map(|(&k, &n)| std::iter::repeat_n(Partition::column(n), k))
            .collect(),
    )
}

pub fn double(q: &Quiver) -> Quiver {
    q.double()
}

pub fn attach_legs(q: &Quiver, mu: &MultiPartition) -> Result<(Quiver, DimVector), QuiverError> {
    q.attach_legs(mu)
}

pub fn cartan(q: &Quiver) -> Vec<Vec<i64>> {
    q.cartan()
}

/// `d_μ = 1 − ½ v_μᵀ C_μ v_μ` for one leg per vertex.
pub fn d_mu(q: &Quiver, mu: &MultiPartition) -> Result<i64, QuiverError> {
    d_mu_multi(q, &vec![1; q.num_vertices()], mu)
}

pub fn d_mu_multi(q: &Quiver, legs: &[usize], mu: &MultiPartition) -> Result<i64, QuiverError> {
    let (g, v) = q.attach_legs_multi(legs, mu)?;
    Ok(1 - g.tits_form(&v))
}

pub fn classify_root(q: &Quiver, v: &[usize]) -> Result<RootClass, QuiverError> {
    q.classify_root(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn doubles() {
        let a2 = Quiver::linear(2);
        assert_eq!(a2.double().arrows(), &[(0, 1), (1, 0)]);
        assert_eq!(Quiver::loops(1).double().num_loops(0), 2);
        let k = Quiver::kronecker(3);
        assert_eq!(k.double().arrows().len(), 6);
        assert!(k.double().is_symmetric());
        assert!(!k.is_symmetric());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(Quiver::loops(0).cartan(), vec![vec![2]]);
        assert_eq!(Quiver::loops(1).cartan(), vec![vec![0]]);
        assert_eq!(Quiver::linear(2).cartan(), vec![vec![2, -1], vec![-1, 2]]);
        let k = Quiver::kronecker(2);
        assert_eq!(k.cartan(), k.opposite().cartan());
    }

    #[test]
    fn legs() {
        let one = Quiver::loops(0);
        let (g, v) = one.attach_legs(&mp("[1,1]")).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(v, vec![2, 1]);
        let (g, v) = one.attach_legs(&mp("[3]")).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(v, vec![3]);
        let (g, v) = one.attach_legs(&mp("[2,1]")).unwrap();
        assert_eq!((g.num_vertices(), v), (2, vec![3, 1]));
        let (g, v) = one.column_legs(&[3], &[3]).unwrap();
        assert_eq!(g.num_vertices(), 7);
        assert_eq!(v, vec![3, 2, 1, 2, 1, 2, 1]);
        assert!(one.attach_legs_multi(&[2], &mp("[2];[1]")).is_err());
        assert!(one.attach_legs(&mp("[1];[1]")).is_err());
    }

    #[test]
    fn d_mu_examples() {
        let one = Quiver::loops(0);
        assert_eq!(d_mu(&one, &mp("[1]")).unwrap(), 0);
        // S_2 route: one vertex, three legs
        let m5 = columns_multipartition(&[3], &[5]);
        assert_eq!(d_mu_multi(&one, &[3], &m5).unwrap(), 6);
        let m4 = columns_multipartition(&[4], &[4]);
        assert_eq!(d_mu_multi(&one, &[4], &m4).unwrap(), 9);
    }

    #[test]
    fn root_examples() {
        let a2 = Quiver::linear(2);
        assert_eq!(a2.classify_root(&[1, 1]).unwrap(), RootClass::RealRoot);
        assert_eq!(a2.classify_root(&[2, 1]).unwrap(), RootClass::NotRoot);
        assert_eq!(a2.classify_root(&[0, 1]).unwrap(), RootClass::RealRoot);
        for n in 1..6 {
            assert_eq!(Quiver::loops(1).classify_root(&[n]).unwrap(), RootClass::ImaginaryRoot);
        }
        assert_eq!(Quiver::loops(0).classify_root(&[2]).unwrap(), RootClass::NotRoot);
        let k = Quiver::kronecker(2);
        assert_eq!(k.classify_root(&[1, 1]).unwrap(), RootClass::ImaginaryRoot);
        assert_eq!(k.classify_root(&[1, 2]).unwrap(), RootClass::RealRoot);
        assert_eq!(k.classify_root(&[1, 3]).unwrap(), RootClass::NotRoot);
        assert_eq!(Quiver::linear(3).classify_root(&[1, 0, 1]).unwrap(), RootClass::NotRoot);
        assert!(a2.classify_root(&[0, 0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "# Kronecker\nvertices 2\narrow 1 2\narrow 1 2  # second\n";
        let q = Quiver::parse(text).unwrap();
        assert_eq!(q, Quiver::kronecker(2));
        let canon = q.serialize();
        assert_eq!(canon, "vertices 2\narrow 1 2\narrow 1 2\n");
        assert_eq!(Quiver::parse(&canon).unwrap().serialize(), canon);
        assert!(Quiver::parse("arrow 1 2\n").is_err());
        assert!(Quiver::parse("vertices 2\narrow 1 3\n").is_err());
        assert!(Quiver::parse("vertices 0\n").is_err());
        assert!(Quiver::parse("vertices 1\nedge 1 1\n").is_err());
    }
}
