use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::field::{Field, Scalar};
use super::LinalgError;

/// A sorted sparse row; zero entries are never stored.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Row-sparse matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn add_rows(field: Field, a: &SparseRow, b: &SparseRow, scale_b: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(&b[j].1, scale_b)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(&b[j].1, scale_b));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        Matrix { field, rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Matrix {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            let slot = acc[i].entry(j).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &v);
        }
        let data = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { field, rows, cols, data }
    }

    pub fn from_dense(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Matrix {
        let n = rows.len();
        let entries = rows.into_iter().enumerate().flat_map(move |(i, r)| {
            assert_eq!(r.len(), cols);
            r.into_iter().enumerate().map(move |(j, v)| (i, j, v))
        });
        Matrix::from_triplets(field, n, cols, entries)
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_dense(field, dense, cols)
    }

    pub(crate) fn from_sparse_rows(field: Field, cols: usize, data: Vec<SparseRow>) -> Matrix {
        Matrix { field, rows: data.len(), cols, data }
    }

    /// Column vector with a single 1 at `i`.
    pub fn unit_column(field: Field, n: usize, i: usize) -> Matrix {
        Matrix::from_triplets(field, n, 1, [(i, 0, field.one())])
    }

    pub fn column_vector(field: Field, values: Vec<Scalar>) -> Matrix {
        let n = values.len();
        Matrix::from_triplets(field, n, 1, values.into_iter().enumerate().map(|(i, v)| (i, 0, v)))
    }

    pub fn row_vector(field: Field, values: Vec<Scalar>) -> Matrix {
        let n = values.len();
        Matrix::from_triplets(field, 1, n, values.into_iter().enumerate().map(|(j, v)| (0, j, v)))
    }

    /// Permutation `a ⊗ b ↦ b ⊗ a` on lexicographic tensor bases.
    pub fn swap(field: Field, a: usize, b: usize) -> Matrix {
        Matrix::from_triplets(
            field,
            a * b,
            a * b,
            (0..a).flat_map(|i| (0..b).map(move |j| (j * a + i, i * b + j, field.one()))),
        )
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.data[*k] {
                        let prod = f.mul(a, b);
                        let slot = acc.entry(*j).or_insert_with(Scalar::zero);
                        *slot = f.add(slot, &prod);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(Matrix { field: f, rows: self.rows, cols: other.cols, data })
    }

    fn combine(&self, other: &Matrix, scale: &Scalar, op: &'static str) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch { op, left: self.shape(), right: other.shape() });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| add_rows(self.field, a, b, scale))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(other, &self.field.one(), "add")
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(other, &self.field.from_i64(-1), "sub")
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| (*j, f.mul(v, s)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    /// Kronecker product; index `(i, j)` of the tensor basis is `i * dim_b + j`.
    pub fn try_kron(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        let f = self.field;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.cols + jb, f.mul(a, b)));
                    }
                }
                data.push(row);
            }
        }
        Ok(Matrix { field: f, rows: self.rows * other.rows, cols: self.cols * other.cols, data })
    }

    pub fn try_direct_sum(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        let mut data = self.data.clone();
        for r in &other.data {
            data.push(r.iter().map(|(j, v)| (j + self.cols, v.clone())).collect());
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn try_hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch { op: "hstack", left: self.shape(), right: other.shape() });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn try_vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().map(|&i| self.data[i].clone()).collect();
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.try_sub(other).expect("matrix difference")
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.try_kron(other).expect("kronecker product")
    }

    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        self.try_direct_sum(other).expect("direct sum")
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.try_hstack(other).expect("horizontal stack")
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        self.try_vstack(other).expect("vertical stack")
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, &self.get(i, i)))
    }

    /// Canonical reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        let (rows, pivots) = e.finish();
        (Matrix::from_sparse_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_invertible() {
            return Err(LinalgError::Singular);
        }
        super::linear_solve(self, &Matrix::identity(self.field, self.rows))
    }
}

/// Incremental Gauss-Jordan elimination keeping every pivot row fully reduced.
pub(crate) struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub(crate) fn new(field: Field, cols: usize) -> Echelon {
        Echelon { field, cols, rows: Vec::new(), pivot_of: BTreeMap::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, row: SparseRow) -> SparseRow {
        let f = self.field;
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_of.get(c).map(|&k| (k, f.neg(v))))
            .collect();
        let mut out = row;
        for (k, s) in hits {
            out = add_rows(f, &out, &self.rows[k], &s);
        }
        out
    }

    /// Returns true when the row was independent of the rows already inserted.
    pub(crate) fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let r = self.reduce(row);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(&lead).expect("nonzero pivot");
        let r: SparseRow = r.into_iter().map(|(c, v)| (c, f.mul(&v, &inv))).collect();
        for other in self.rows.iter_mut() {
            if let Ok(k) = other.binary_search_by_key(&p, |e| e.0) {
                let s = f.neg(&other[k].1);
                *other = add_rows(f, other, &r, &s);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub(crate) fn finish(self) -> (Vec<SparseRow>, Vec<usize>) {
        let mut order: Vec<(usize, usize)> = self.pivot_of.into_iter().collect();
        order.sort();
        let mut rows = self.rows;
        let pivots = order.iter().map(|(p, _)| *p).collect();
        let out = order.iter().map(|(_, k)| std::mem::take(&mut rows[*k])).collect();
        (out, pivots)
    }
}
