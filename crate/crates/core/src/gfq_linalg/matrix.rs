use super::field::Field;
use crate::error::{GpiError, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// `dst += c * src`, entrywise.
#[inline]
pub fn axpy(field: Field, dst: &mut [u8], c: u8, src: &[u8]) {
    if c == 0 {
        return;
    }
    match field {
        Field::Prime(2) | Field::Gf4 if c == 1 => {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
        }
        Field::Prime(p) => {
            let p = p as u16;
            let c = c as u16;
            for (d, s) in dst.iter_mut().zip(src) {
                if *s != 0 {
                    *d = ((*d as u16 + c * *s as u16) % p) as u8;
                }
            }
        }
        Field::Gf4 => {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= field.mul(c, *s);
            }
        }
    }
}

pub fn scale_vec(field: Field, v: &mut [u8], c: u8) {
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}

pub fn vec_add(field: Field, a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: Field, a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

/// Index of a vector in the lexicographic enumeration of GF(q)^d (first coordinate least significant).
pub fn vec_index(field: Field, v: &[u8]) -> usize {
    let q = field.size() as usize;
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

pub fn vec_from_index(field: Field, mut idx: usize, d: usize) -> Vec<u8> {
    let q = field.size() as usize;
    let mut v = vec![0u8; d];
    for x in v.iter_mut() {
        *x = (idx % q) as u8;
        idx /= q;
    }
    v
}

/// Result of `solve_linear`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<Vec<u8>>,
    pub kernel: Vec<Vec<u8>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: u8) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<u8>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| {
                assert!(field.is_element(x as u64), "entry {x} outside GF({})", field.size());
                x
            }));
        }
        Matrix { field, rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: Field, n: usize, cols: &[Vec<u8>]) -> Matrix {
        let mut m = Matrix::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(GpiError::Dimension(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| !field.is_element(x as u64)) {
            return Err(GpiError::Invalid(format!("entry {bad} not in GF({})", field.size())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    axpy(f, dst, a, &other.data[k * oc..(k + 1) * oc]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        axpy(self.field, &mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        axpy(self.field, &mut out.data, self.field.neg(1), &other.data);
        out
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let mut out = self.clone();
        scale_vec(self.field, &mut out.data, c);
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> u8 {
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns (leftmost pivot first).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            scale_vec(f, &mut m.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<u8> = m.row(r).to_vec();
            for i in 0..rows {
                if i != r {
                    let c_i = m.get(i, c);
                    if c_i != 0 {
                        axpy(f, &mut m.data[i * cols..(i + 1) * cols], f.neg(c_i), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : A x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Basis of the column space (columns of `self` at the pivot positions).
    pub fn column_space(&self) -> Vec<Vec<u8>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(GpiError::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(r.submatrix(0, n, n, n)))
    }

    /// Inverse of a matrix known to be invertible.
    pub fn inv(&self) -> Matrix {
        self.inverse().ok().flatten().expect("matrix is invertible")
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }

    /// `self * x * self^{-1}`.
    pub fn conjugate(&self, x: &Matrix) -> Matrix {
        self.mul(x).mul(&self.inv())
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<u8>> {
    let f = r.field;
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b`; deterministic leftmost-pivot elimination, free variables set to zero.
pub fn solve_linear(a: &Matrix, b: &[u8]) -> Result<LinearSolution> {
    if a.rows != b.len() {
        return Err(GpiError::Dimension(format!(
            "{} rows against a right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.field, a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, n, b[i]);
    }
    let (r, pivots) = aug.rref();
    let inconsistent = pivots.last() == Some(&n);
    let coef_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < n).collect();
    let kernel = kernel_from_rref(&r, &coef_pivots, n);
    let particular = if inconsistent {
        None
    } else {
        let mut x = vec![0u8; n];
        for (row, &pc) in coef_pivots.iter().enumerate() {
            x[pc] = r.get(row, n);
        }
        Some(x)
    };
    Ok(LinearSolution { particular, kernel })
}

/// Fitting decomposition of an endomorphism: (basis of ker f^n, basis of im f^n).
pub fn fitting_split(f: &Matrix) -> Result<(Vec<Vec<u8>>, Vec<Vec<u8>>)> {
    if !f.is_square() {
        return Err(GpiError::Dimension("fitting_split needs a square matrix".into()));
    }
    let g = f.pow(f.rows as u64);
    Ok((g.nullspace(), g.column_space()))
}

/// Incrementally maintained echelon basis of a subspace of GF(q)^n.
///
/// When `track` is set, every stored row remembers its expression in terms of the
/// independent vectors inserted so far, so `coords` can express a vector in the
/// inserted basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    pub field: Field,
    pub len: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    track: bool,
    combos: Vec<Vec<u8>>,
}

impl EchelonBasis {
    pub fn new(field: Field, len: usize, track: bool) -> Self {
        EchelonBasis { field, len, rows: Vec::new(), pivots: Vec::new(), track, combos: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v`; returns residual and (if tracking) the coefficients of the rows used.
    fn reduce_with(&self, v: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let f = self.field;
        let mut r = v.to_vec();
        let mut used = vec![0u8; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = r[self.pivots[i]];
            if c != 0 {
                axpy(f, &mut r, f.neg(c), row);
                used[i] = c;
            }
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true if it was independent of the current span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field;
        let (mut r, used) = self.reduce_with(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[p]).unwrap();
        scale_vec(f, &mut r, inv);
        if self.track {
            let k = self.rows.len();
            for c in self.combos.iter_mut() {
                c.push(0);
            }
            let mut combo = vec![0u8; k + 1];
            combo[k] = 1;
            for (i, &c) in used.iter().enumerate() {
                if c != 0 {
                    axpy(f, &mut combo[..k], f.neg(c), &self.combos[i][..k]);
                }
            }
            scale_vec(f, &mut combo, inv);
            self.combos.push(combo);
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the independent vectors inserted (in insertion order).
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        assert!(self.track, "coords requires tracking");
        let f = self.field;
        let (r, used) = self.reduce_with(v);
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        let k = self.rows.len();
        let mut out = vec![0u8; k];
        for (i, &c) in used.iter().enumerate() {
            if c != 0 {
                axpy(f, &mut out, c, &self.combos[i]);
            }
        }
        Some(out)
    }

    /// Basis of the orthogonal-complement-free kernel: vectors x with <row, x> = 0 for all rows.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        let m = Matrix::from_rows(self.field, &self.rows_or_empty());
        if self.rows.is_empty() {
            return (0..self.len)
                .map(|i| {
                    let mut v = vec![0; self.len];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        m.nullspace()
    }

    fn rows_or_empty(&self) -> Vec<Vec<u8>> {
        self.rows.clone()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }
}

/// Extract a maximal independent subfamily (indices kept in order).
pub fn independent_subset(field: Field, len: usize, vs: &[Vec<u8>]) -> Vec<usize> {
    let mut eb = EchelonBasis::new(field, len, false);
    vs.iter()
        .enumerate()
        .filter_map(|(i, v)| eb.insert(v).then_some(i))
        .collect()
}

/// Basis (as reduced list) of the span of the given vectors.
pub fn span_basis(field: Field, len: usize, vs: &[Vec<u8>]) -> Vec<Vec<u8>> {
    independent_subset(field, len, vs).into_iter().map(|i| vs[i].clone()).collect()
}
