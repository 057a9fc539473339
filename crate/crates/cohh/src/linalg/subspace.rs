use num::Zero;

use super::field::{Field, Scalar};
use super::matrix::{Echelon, Matrix, SparseRow};
use super::{linear_solve, LinalgError};

/// Subspace of `k^n` stored by its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Quotient `V / U` with chosen coset representatives and the coordinate projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Rows are representatives in the ambient space.
    pub representatives: Matrix,
    /// `dim(V/U) × ambient`; kills `U` and sends representative `i` to `e_i`.
    pub projection: Matrix,
}

impl Subspace {
    pub fn from_rows(field: Field, ambient: usize, rows: impl IntoIterator<Item = SparseRow>) -> Subspace {
        let mut e = Echelon::new(field, ambient);
        for r in rows {
            e.insert(r);
        }
        let (rows, pivots) = e.finish();
        Subspace { ambient, basis: Matrix::from_sparse_rows(field, ambient, rows), pivots }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Subspace {
        Subspace::from_rows(m.field(), m.cols(), m.sparse_rows().iter().cloned())
    }

    /// Span of the columns of `m`.
    pub fn image(m: &Matrix) -> Subspace {
        Subspace::row_span(&m.transpose())
    }

    /// `{ v : m v = 0 }`.
    pub fn kernel(m: &Matrix) -> Subspace {
        let f = m.field();
        let (r, pivots) = m.rref();
        let mut is_pivot = vec![false; m.cols()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // Column j of the reduced matrix, restricted to pivot rows.
        let rt = r.transpose();
        let vectors = (0..m.cols()).filter(|&j| !is_pivot[j]).map(|j| {
            let mut v: SparseRow = rt
                .row(j)
                .iter()
                .map(|(i, x)| (pivots[*i], f.neg(x)))
                .collect();
            v.push((j, f.one()));
            v.sort_by_key(|e| e.0);
            v
        });
        Subspace::from_rows(f, m.cols(), vectors)
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace::row_span(&Matrix::identity(field, n))
    }

    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Rows form the canonical basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::ShapeMismatch {
                op: "subspace",
                left: (self.dim(), self.ambient),
                right: (other.dim(), other.ambient),
            });
        }
        Ok(())
    }

    /// Coordinates of the columns of `vectors` in the canonical basis.
    pub fn coordinates(&self, vectors: &Matrix) -> Result<Matrix, LinalgError> {
        if vectors.field() != self.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if vectors.rows() != self.ambient {
            return Err(LinalgError::ShapeMismatch {
                op: "coordinates",
                left: (self.ambient, self.dim()),
                right: vectors.shape(),
            });
        }
        // With a reduced basis the coordinates are the entries at the pivot columns.
        let coords = vectors.select_rows(&self.pivots);
        if &self.inclusion().mul(&coords) != vectors {
            return Err(LinalgError::NoSolution);
        }
        Ok(coords)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let m = Matrix::column_vector(self.field(), v.to_vec());
        self.coordinates(&m).is_ok()
    }

    /// True when every column of `vectors` lies in the subspace.
    pub fn contains_columns(&self, vectors: &Matrix) -> bool {
        self.coordinates(vectors).is_ok()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.check(other).is_ok() && other.contains_columns(&self.inclusion())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(Subspace::from_rows(
            self.field(),
            self.ambient,
            self.basis.sparse_rows().iter().chain(other.basis.sparse_rows()).cloned(),
        ))
    }

    /// Linear functionals vanishing on the subspace, as rows.
    pub fn annihilator(&self) -> Subspace {
        Subspace::kernel(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let constraints = other.annihilator().basis().clone();
        let inc = self.inclusion();
        let ker = Subspace::kernel(&constraints.mul(&inc));
        Ok(Subspace::image(&inc.mul(&ker.inclusion())))
    }

    /// `self / sub`; representatives extend the basis of `sub` greedily by basis rows of `self`.
    pub fn quotient(&self, sub: &Subspace) -> Result<Quotient, LinalgError> {
        self.check(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(LinalgError::NotASubspace);
        }
        let f = self.field();
        let mut e = Echelon::new(f, self.ambient);
        for r in sub.basis.sparse_rows() {
            e.insert(r.clone());
        }
        let mut reps = Vec::new();
        for r in self.basis.sparse_rows() {
            if e.insert(r.clone()) {
                reps.push(r.clone());
            }
        }
        let q = reps.len();
        let representatives = Matrix::from_sparse_rows(f, self.ambient, reps);
        let stacked = sub.basis.vstack(&representatives);
        let target = Matrix::zeros(f, sub.dim(), q).vstack(&Matrix::identity(f, q));
        let pt = linear_solve(&stacked, &target)?;
        Ok(Quotient { representatives, projection: pt.transpose() })
    }

    /// Writes a vector as `Σ coeff * label` using the given labels; `0` for the zero vector.
    pub fn format_vector(field: Field, v: &[Scalar], labels: &[String]) -> String {
        format_combination(field, v.iter().cloned().enumerate(), labels)
    }
}

/// Canonical text form of a linear combination, e.g. `E11 + E22` or `2 g - 1/3 h`.
pub fn format_combination(
    field: Field,
    terms: impl IntoIterator<Item = (usize, Scalar)>,
    labels: &[String],
) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = matches!(field, Field::Rationals) && c < Scalar::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != field.one() {
            out.push_str(&field.format(&mag));
            out.push(' ');
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
