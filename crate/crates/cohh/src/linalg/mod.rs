//! Exact linear algebra over `Q` and `F_p`.
//!
//! Matrices are row-sparse with exact entries. Every elimination runs to the
//! canonical reduced row-echelon form (leftmost pivots), so kernels, images and
//! solutions are deterministic.

mod field;
mod matrix;
mod subspace;

use thiserror::Error;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, SparseRow};
pub use subspace::{format_combination, Quotient, Subspace};

use matrix::Echelon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch")]
    FieldMismatch,
    #[error("no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("not a subspace of the ambient subspace")]
    NotASubspace,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse field {0:?}")]
    ParseField(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Solves `a · x = target`. Free variables are set to zero.
pub fn linear_solve(a: &Matrix, target: &Matrix) -> Result<Matrix, LinalgError> {
    if a.field() != target.field() {
        return Err(LinalgError::FieldMismatch);
    }
    if a.rows() != target.rows() {
        return Err(LinalgError::ShapeMismatch {
            op: "solve",
            left: a.shape(),
            right: target.shape(),
        });
    }
    let n = a.cols();
    let mut e = Echelon::new(a.field(), n + target.cols());
    for (ra, rt) in a.sparse_rows().iter().zip(target.sparse_rows()) {
        let mut row = ra.clone();
        row.extend(rt.iter().map(|(j, v)| (n + j, v.clone())));
        e.insert(row);
    }
    let (rows, pivots) = e.finish();
    if pivots.iter().any(|&p| p >= n) {
        return Err(LinalgError::NoSolution);
    }
    let entries = rows.iter().zip(&pivots).flat_map(|(r, &p)| {
        r.iter()
            .filter(move |(j, _)| *j >= n)
            .map(move |(j, v)| (p, j - n, v.clone()))
    });
    Ok(Matrix::from_triplets(a.field(), n, target.cols(), entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_identity() {
        let f = Field::Rationals;
        let b = Matrix::from_i64(f, &[vec![3], vec![-1]]);
        assert_eq!(linear_solve(&Matrix::identity(f, 2), &b).unwrap(), b);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let f = Field::Rationals;
        let x = linear_solve(&Matrix::from_i64(f, &[vec![1, 1]]), &Matrix::from_i64(f, &[vec![2]])).unwrap();
        assert_eq!(x, Matrix::from_i64(f, &[vec![2], vec![0]]));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let f = Field::Rationals;
        let r = linear_solve(&Matrix::from_i64(f, &[vec![0]]), &Matrix::from_i64(f, &[vec![1]]));
        assert_eq!(r, Err(LinalgError::NoSolution));
    }
}
