//! Dense exact linear algebra: rank, reduced row echelon form, kernels, and
//! triangular subspaces of coordinate spaces.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(ExactMatrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|v| field.from_i64(*v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row echelon form in place (forward elimination only). Returns pivot
    /// columns.
    fn forward_eliminate(&mut self, normalize: bool) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c));
            if normalize {
                for j in c..cols {
                    let v = f.mul(self.get(r, j), &inv);
                    self.set(r, j, v);
                }
            }
            let (head, tail) = self.data.split_at_mut((r + 1) * cols);
            let pivot_row = &head[r * cols..];
            for row in tail.chunks_mut(cols) {
                if f.is_zero(&row[c]) {
                    continue;
                }
                let factor = if normalize {
                    row[c].clone()
                } else {
                    f.mul(&row[c], &inv)
                };
                for j in c..cols {
                    row[j] = f.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.forward_eliminate(false).len()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.forward_eliminate(true);
        let cols = m.cols;
        for (r, &c) in pivots.iter().enumerate().rev() {
            let (head, tail) = m.data.split_at_mut(r * cols);
            let pivot_row = &tail[..cols];
            for row in head.chunks_mut(cols) {
                if f.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..cols {
                    row[j] = f.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        (m, pivots)
    }

    /// Rows stacked top to bottom; every part must have `cols` columns.
    pub fn vstack(field: &F, cols: usize, parts: &[Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// An echelon basis of the row space (one row per rank).
    pub fn row_basis(&self) -> Self {
        let mut m = self.clone();
        let r = m.forward_eliminate(true).len();
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    /// Writes `sign * block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self, negate: bool) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = block.get(i, j);
                let v = if negate { self.field.neg(v) } else { v.clone() };
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    /// Exact rank and a basis of the right null space.
    pub fn kernel_and_rank(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            kernel.push(v);
        }
        (pivots.len(), kernel)
    }
}

const NO_PIVOT: u32 = u32::MAX;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec<F> = Vec<(u32, <F as Field>::Elem)>;

/// A subspace of `k^ambient` stored as a triangular basis: every row is monic
/// at its pivot and only has entries at larger indices. Coordinates are
/// ordered so that index 0 is the largest monomial.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<u32>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ambient],
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i as u32, field.one())]).collect(),
            pivot_row: (0..ambient as u32).collect(),
        }
    }

    /// Rows must have distinct pivots (their first entry, equal to one).
    pub fn from_triangular(ambient: usize, rows: Vec<SparseVec<F>>) -> Self {
        let mut pivot_row = vec![NO_PIVOT; ambient];
        for (r, row) in rows.iter().enumerate() {
            let p = row[0].0 as usize;
            debug_assert_eq!(pivot_row[p], NO_PIVOT, "duplicate pivot");
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            pivot_row[p] = r as u32;
        }
        Subspace {
            ambient,
            rows,
            pivot_row,
        }
    }

    pub fn from_spanning<I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(field, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row[i] != NO_PIVOT
    }

    /// Non-pivot indices in increasing order; they index a basis of the
    /// quotient `k^ambient / U`.
    pub fn standard(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&i| !self.is_pivot(i)).collect()
    }

    pub fn basis_vector(&self, field: &F, r: usize) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); self.ambient];
        for (i, c) in &self.rows[r] {
            v[*i as usize] = c.clone();
        }
        v
    }

    /// Reduces `v` in place to its canonical representative modulo the
    /// subspace (supported on non-pivot indices) and returns the coordinates
    /// of the removed part in the row basis.
    pub fn reduce(&self, field: &F, v: &mut [F::Elem]) -> Vec<F::Elem> {
        debug_assert_eq!(v.len(), self.ambient);
        let mut coords = vec![field.zero(); self.rows.len()];
        for i in 0..self.ambient {
            let r = self.pivot_row[i];
            if r == NO_PIVOT || field.is_zero(&v[i]) {
                continue;
            }
            let c = v[i].clone();
            for (j, a) in &self.rows[r as usize] {
                let j = *j as usize;
                v[j] = field.sub_mul(&v[j], &c, a);
            }
            coords[r as usize] = c;
        }
        coords
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, field: &F, mut v: Vec<F::Elem>) -> bool {
        self.reduce(field, &mut v);
        let Some(p) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[p]);
        let row: SparseVec<F> = v
            .iter()
            .enumerate()
            .skip(p)
            .filter(|(_, x)| !field.is_zero(x))
            .map(|(i, x)| (i as u32, field.mul(x, &inv)))
            .collect();
        self.pivot_row[p] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }
}
