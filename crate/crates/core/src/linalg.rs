//! Dense exact linear algebra over a [`Field`].
//!
//! Pivoting is lexicographic (leftmost column first, topmost nonzero row in
//! that column) so every result is a deterministic function of the input.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns in increasing order.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| !field.is_zero(m.get(r, c))) else {
            continue;
        };
        if src != pr {
            for j in 0..cols {
                m.data.swap(src * cols + j, pr * cols + j);
            }
        }
        let inv = field.inv(m.get(pr, c));
        for j in c..cols {
            let v = field.mul(m.get(pr, j), &inv);
            m.set(pr, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(pr)[c..].to_vec();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = m.get(r, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let base = r * cols;
            for (off, pv) in pivot_row.iter().enumerate() {
                if field.is_zero(pv) {
                    continue;
                }
                let idx = base + c + off;
                m.data[idx] = field.sub(&m.data[idx], &field.mul(&factor, pv));
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column, in
/// increasing order of the free column.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let cols = m.cols;
    let mut work = m.clone();
    let pivots = if m.rows == 0 { Vec::new() } else { rref(field, &mut work) };
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            let entry = work.get(row, free);
            if !field.is_zero(entry) {
                v[p] = field.neg(entry);
            }
        }
        basis.push(v);
    }
    basis
}

/// A subspace kept as a fully reduced echelon basis, supporting incremental
/// membership tests.
#[derive(Debug, Clone)]
pub struct EchelonSpace<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonSpace<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonSpace {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residue of `v` modulo the space.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            let factor = out[*p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.sub(o, &f.mul(&factor, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]);
        for x in r.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            let factor = row[p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    /// Pivot coordinates of the stored basis.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        p.sort_unstable();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn mat(f: &PrimeField, rows: &[&[i64]]) -> Matrix<u64> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| f.of_int(v)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(101).unwrap();
        let m = mat(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&f, &m), 2);
        let ker = kernel_basis(&f, &m);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for r in 0..m.rows() {
                let s = (0..3).fold(0, |acc, c| f.add(&acc, &f.mul(m.get(r, c), &v[c])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn characteristic_matters_for_rank() {
        // det = 2, singular only in characteristic 2.
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(rank(&PrimeField::new(2).unwrap(), &mat(&PrimeField::new(2).unwrap(), rows)), 1);
        let f = PrimeField::new(3).unwrap();
        assert_eq!(rank(&f, &mat(&f, rows)), 2);
        let q = Rationals;
        let m = Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| q.of_int(v)).collect()).collect(),
            2,
        );
        assert_eq!(rank(&q, &m), 2);
    }

    #[test]
    fn echelon_space_membership() {
        let f = PrimeField::new(7).unwrap();
        let mut s = EchelonSpace::new(f, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        assert!(s.contains(&[1, 0, 6]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn empty_shapes() {
        let f = PrimeField::default();
        let m: Matrix<u64> = Matrix::filled(0, 3, 0);
        assert_eq!(kernel_basis(&f, &m).len(), 3);
        let m: Matrix<u64> = Matrix::filled(2, 0, 0);
        assert!(kernel_basis(&f, &m).is_empty());
        assert_eq!(rank(&f, &m), 0);
    }
}
