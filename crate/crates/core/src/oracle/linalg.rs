//! Dense matrices and Gaussian elimination over a [`FiniteField`].

use super::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let x = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, x);
                }
            }
        }
        out
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut rows: Vec<Vec<u8>> = self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect();
        if self.cols == 0 {
            return 0;
        }
        row_reduce(&mut rows, f).len()
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn is_nilpotent(&self, f: &FiniteField) -> bool {
        if self.rows == 0 {
            return true;
        }
        let mut p = self.clone();
        for _ in 1..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self, f);
        }
        p.is_zero()
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                let mut row = self.data[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| u8::from(c == r)));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, f);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let data = aug.iter().flat_map(|row| row[n..].iter().copied()).collect();
        Some(Mat::from_data(n, n, data))
    }
}

/// Reduced row echelon form in place. Zero rows are dropped; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<u8>>, f: &FiniteField) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for k in 0..ncols {
                    let sub = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows of length `ncols`.
pub fn nullspace(mut rows: Vec<Vec<u8>>, ncols: usize, f: &FiniteField) -> Vec<Vec<u8>> {
    let pivots = row_reduce(&mut rows, f);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u8; ncols];
            x[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Incrementally maintained echelon basis, used to measure the span of a stream of vectors.
#[derive(Debug, Clone, Default)]
pub struct SpanTracker {
    basis: Vec<(usize, Vec<u8>)>,
}

impl SpanTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, mut v: Vec<u8>, f: &FiniteField) -> bool {
        for (pc, b) in &self.basis {
            let c = v[*pc];
            if c != 0 {
                for k in 0..v.len() {
                    v[k] = f.sub(v[k], f.mul(c, b[k]));
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.basis.push((pc, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let f = FiniteField::new(3).unwrap();
        let m = Mat::from_data(2, 2, vec![1, 2, 0, 1]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Mat::identity(2));
        let s = Mat::from_data(2, 2, vec![1, 2, 2, 1]);
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
        let n = Mat::from_data(2, 2, vec![0, 1, 0, 0]);
        assert!(n.is_nilpotent(&f));
        assert!(!Mat::identity(2).is_nilpotent(&f));
    }

    #[test]
    fn nullspace_solves() {
        let f = FiniteField::new(5).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 1]];
        let ns = nullspace(rows.clone(), 3, &f);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                let dot = r.iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn span_tracker() {
        let f = FiniteField::new(2).unwrap();
        let mut s = SpanTracker::new();
        assert!(s.insert(vec![1, 1, 0], &f));
        assert!(s.insert(vec![0, 1, 1], &f));
        assert!(!s.insert(vec![1, 0, 1], &f));
        assert_eq!(s.rank(), 2);
    }
}
