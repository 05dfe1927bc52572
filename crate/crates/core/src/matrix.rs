//! Dense matrices and exact linear algebra over a [`Field`].

use rand::Rng;
use serde_json::Value;

use crate::{Error, Field, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[E] {
        &self.data
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

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for r in 0..rows {
            for col in columns {
                data.push(col[r].clone());
            }
        }
        Matrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let data: Vec<E> = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Matrix::from_vec(rows.len(), cols, data)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let columns: Vec<Vec<E>> = cols.iter().map(|&c| self.column(c)).collect();
        Matrix::from_columns(self.rows, &columns)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let rs: Vec<Vec<E>> = rows.iter().map(|&r| self.row(r).to_vec()).collect();
        Matrix::from_rows(self.cols, &rs)
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn scalar<F: Field<Elem = E>>(f: &F, n: usize, c: &E) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(
        f: &F,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| f.random(rng)).collect())
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix difference");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, v: &[E], f: &F) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: usize, f: &F) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(f, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Block-diagonal `[[self, 0], [0, other]]`.
    pub fn block_diag<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut out = Matrix::zeros(f, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self · x = 0}` as column vectors.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (_, pivots) = self.rref(f);
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(f, n));
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&cols))
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Solves `self · X = rhs` for `X`, assuming a solution exists and
    /// `self` has full column rank.
    pub fn solve<F: Field<Elem = E>>(&self, rhs: &Self, f: &F) -> Result<Self> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref(f);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Invariant(
                "linear system has no unique solution".into(),
            ));
        }
        for row in n..r.rows {
            if r.row(row).iter().any(|x| !f.is_zero(x)) {
                return Err(Error::Invariant("linear system is inconsistent".into()));
            }
        }
        let cols: Vec<usize> = (n..n + rhs.cols).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select_columns(&cols).select_rows(&rows))
    }

    /// Determinant by Gaussian elimination.
    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return f.zero();
            };
            if pr != col {
                for c in 0..n {
                    m.data.swap(pr * n + c, col * n + c);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| Value::Array(self.row(r).iter().map(|x| f.elem_to_json(x)).collect()))
                .collect(),
        )
    }

    /// Parses a row-major nested array with the expected shape. An empty
    /// array is accepted for any shape with zero rows or columns.
    pub fn from_json<F: Field<Elem = E>>(
        f: &F,
        v: &Value,
        rows: usize,
        cols: usize,
    ) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::invalid("matrix must be a JSON array of rows"))?;
        if rows * cols == 0 && arr.iter().all(|r| r.as_array().is_some_and(|r| r.is_empty())) {
            return Ok(Matrix::zeros(f, rows, cols));
        }
        if arr.len() != rows {
            return Err(Error::invalid(format!(
                "matrix has {} rows, expected {rows}",
                arr.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in arr {
            let row = row
                .as_array()
                .ok_or_else(|| Error::invalid("matrix row must be an array"))?;
            if row.len() != cols {
                return Err(Error::invalid(format!(
                    "matrix row has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for x in row {
                data.push(f.elem_from_json(x)?);
            }
        }
        Ok(Matrix::from_vec(rows, cols, data))
    }
}

/// A subspace of `k^n`, stored as the nonzero rows of a reduced row echelon
/// basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    dim_ambient: usize,
    basis: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn span<F: Field<Elem = E>>(f: &F, n: usize, vectors: &[Vec<E>]) -> Self {
        let m = Matrix::from_rows(n, vectors);
        let (r, pivots) = m.rref(f);
        let rows: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            dim_ambient: n,
            basis: r.select_rows(&rows),
            pivots,
        }
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            dim_ambient: n,
            basis: Matrix::from_vec(0, n, Vec::new()),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Subspace {
            dim_ambient: n,
            basis: Matrix::identity(f, n),
            pivots: (0..n).collect(),
        }
    }

    /// Wraps an RREF basis produced elsewhere.
    pub(crate) fn from_rref(basis: Matrix<E>, pivots: Vec<usize>) -> Self {
        Subspace {
            dim_ambient: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Basis vectors (rows, in RREF).
    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<E>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Coordinates of `v` in the RREF basis; `None` if `v` is not in the
    /// subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let (coords, rest) = self.reduce(f, v);
        rest.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.coordinates(f, v).is_some()
    }

    /// Splits `v = Σ c_k b_k + r` where `r` vanishes on every pivot column.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> (Vec<E>, Vec<E>) {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = rest[pc].clone();
            if !f.is_zero(&c) {
                for (j, b) in self.basis.row(k).iter().enumerate() {
                    rest[j] = f.sub(&rest[j], &f.mul(&c, b));
                }
            }
            coords.push(c);
        }
        (coords, rest)
    }

    /// Non-pivot columns, indexing a complement spanned by standard vectors.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.dim_ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(f, v))
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n` (Gaussian binomial at `p`),
/// saturating.
pub fn grassmannian_size(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(crate::limits::pow_u128(p, n - i).saturating_sub(1));
        den = den.saturating_mul(crate::limits::pow_u128(p, i + 1) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Calls `visit` with every `k`-dimensional subspace of `F_p^n`, each given
/// by its RREF basis. Order: pivot sets lexicographically, then free entries
/// in base-`p` counting order.
pub fn for_each_subspace<F: FnMut(&Subspace<u64>) -> Result<()>>(
    p: u64,
    n: usize,
    k: usize,
    mut visit: F,
) -> Result<()> {
    if k > n {
        return Ok(());
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: row r, column c > pivots[r], c not a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::filled(k, n, 0u64);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, d);
            }
            visit(&Subspace::from_rref(m, pivots.clone()))?;
            // Increment digits, least significant last.
            let mut carry = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break;
            }
        }
        // Next pivot combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
