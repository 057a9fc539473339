//! Finite-dimensional coalgebras given by structure constants.

use std::collections::HashSet;

use thiserror::Error;

use crate::linalg::{format_combination, Field, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoalgebraError {
    #[error("comultiplication is not coassociative on {witness}")]
    NotCoassociative { witness: String },
    #[error("counit law fails on {witness}")]
    CounitFailure { witness: String },
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("structure maps have the wrong shape: {0}")]
    Shape(String),
    #[error("coalgebras are defined over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A coalgebra `(C, Δ, ε)`. Column `k` of `comul` is `Δ(e_k)` in the basis `e_i ⊗ e_j`
/// (index `i * dim + j`); `counit` is a `1 × dim` row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCoalgebra {
    field: Field,
    labels: Vec<String>,
    comul: Matrix,
    counit: Matrix,
}

/// Index of the first column where two matrices differ.
pub(crate) fn first_differing_column(a: &Matrix, b: &Matrix) -> Option<usize> {
    let d = a.sub(b).transpose();
    (0..d.rows()).find(|&j| !d.row(j).is_empty())
}

pub(crate) fn check_labels(labels: &[String]) -> Result<(), String> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(l.clone());
        }
    }
    Ok(())
}

impl FinCoalgebra {
    /// Validates both coalgebra laws.
    pub fn new(field: Field, labels: Vec<String>, comul: Matrix, counit: Matrix) -> Result<Self, CoalgebraError> {
        let n = labels.len();
        check_labels(&labels).map_err(CoalgebraError::DuplicateLabel)?;
        if comul.field() != field || counit.field() != field {
            return Err(CoalgebraError::FieldMismatch);
        }
        if comul.shape() != (n * n, n) || counit.shape() != (1, n) {
            return Err(CoalgebraError::Shape(format!(
                "comul {:?}, counit {:?} for dimension {n}",
                comul.shape(),
                counit.shape()
            )));
        }
        let c = FinCoalgebra { field, labels, comul, counit };
        c.check_laws()?;
        Ok(c)
    }

    fn check_laws(&self) -> Result<(), CoalgebraError> {
        let n = self.dim();
        let id = Matrix::identity(self.field, n);
        for lhs in [self.counit.kron(&id).mul(&self.comul), id.kron(&self.counit).mul(&self.comul)] {
            if let Some(k) = first_differing_column(&lhs, &id) {
                return Err(CoalgebraError::CounitFailure { witness: self.labels[k].clone() });
            }
        }
        let left = self.comul.kron(&id).mul(&self.comul);
        let right = id.kron(&self.comul).mul(&self.comul);
        if let Some(k) = first_differing_column(&left, &right) {
            return Err(CoalgebraError::NotCoassociative { witness: self.labels[k].clone() });
        }
        Ok(())
    }

    /// Builds `Δ` from `(i, j, coefficient)` triples per basis element.
    pub fn from_triples(
        field: Field,
        labels: Vec<String>,
        comul: &[Vec<(usize, usize, Scalar)>],
        counit: Vec<Scalar>,
    ) -> Result<Self, CoalgebraError> {
        let n = labels.len();
        if comul.len() != n || counit.len() != n {
            return Err(CoalgebraError::Shape("one entry per basis element expected".into()));
        }
        let entries = comul
            .iter()
            .enumerate()
            .flat_map(|(k, ts)| ts.iter().map(move |(i, j, c)| (i * n + j, k, c.clone())));
        let delta = Matrix::from_triplets(field, n * n, n, entries);
        FinCoalgebra::new(field, labels, delta, Matrix::row_vector(field, counit))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn comul(&self) -> &Matrix {
        &self.comul
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    /// The one-dimensional coalgebra `k` with `Δ(1) = 1 ⊗ 1`.
    pub fn trivial(field: Field) -> FinCoalgebra {
        FinCoalgebra::grouplike(field, &["1"]).expect("trivial coalgebra")
    }

    pub fn grouplike(field: Field, labels: &[&str]) -> Result<FinCoalgebra, CoalgebraError> {
        let n = labels.len();
        let comul: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|k| vec![(k, k, field.one())]).collect();
        FinCoalgebra::from_triples(
            field,
            labels.iter().map(|s| s.to_string()).collect(),
            &comul,
            vec![field.one(); n],
        )
    }

    /// The comatrix coalgebra on `E_ij`, `Δ(E_ij) = Σ_l E_il ⊗ E_lj`, `ε(E_ij) = δ_ij`.
    pub fn comatrix(field: Field, n: usize) -> FinCoalgebra {
        assert!(n >= 1, "comatrix size must be positive");
        let idx = |i: usize, j: usize| i * n + j;
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        let comul: Vec<Vec<(usize, usize, Scalar)>> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).map(|l| (idx(i, l), idx(l, j), field.one())).collect()
            })
            .collect();
        let counit = (0..n * n)
            .map(|k| if k / n == k % n { field.one() } else { field.zero() })
            .collect();
        FinCoalgebra::from_triples(field, labels, &comul, counit).expect("comatrix coalgebra")
    }

    /// `M_n^c(C) = C ⊗ M_n^c(k)`.
    pub fn comatrix_over(c: &FinCoalgebra, n: usize) -> FinCoalgebra {
        c.tensor(&FinCoalgebra::comatrix(c.field, n)).expect("same field")
    }

    /// The path coalgebra of `a → b`: `a, b` grouplike and `Δ(x) = a ⊗ x + x ⊗ b`.
    pub fn sweedler(field: Field) -> FinCoalgebra {
        let o = field.one();
        FinCoalgebra::from_triples(
            field,
            vec!["a".into(), "b".into(), "x".into()],
            &[
                vec![(0, 0, o.clone())],
                vec![(1, 1, o.clone())],
                vec![(0, 2, o.clone()), (2, 1, o.clone())],
            ],
            vec![o.clone(), o, field.zero()],
        )
        .expect("path coalgebra")
    }

    pub fn is_cocommutative(&self) -> bool {
        Matrix::swap(self.field, self.dim(), self.dim()).mul(&self.comul) == self.comul
    }

    pub fn opposite(&self) -> FinCoalgebra {
        let n = self.dim();
        FinCoalgebra {
            field: self.field,
            labels: self.labels.clone(),
            comul: Matrix::swap(self.field, n, n).mul(&self.comul),
            counit: self.counit.clone(),
        }
    }

    /// `C ⊗ D` with `Δ = (id ⊗ τ ⊗ id)(Δ_C ⊗ Δ_D)` and `ε = ε_C ⊗ ε_D`.
    pub fn tensor(&self, other: &FinCoalgebra) -> Result<FinCoalgebra, CoalgebraError> {
        if self.field != other.field {
            return Err(CoalgebraError::FieldMismatch);
        }
        let (c, d) = (self.dim(), other.dim());
        let f = self.field;
        let shuffle = Matrix::identity(f, c)
            .kron(&Matrix::swap(f, c, d))
            .kron(&Matrix::identity(f, d));
        let comul = shuffle.mul(&self.comul.kron(&other.comul));
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| tensor_label(a, b)))
            .collect();
        Ok(FinCoalgebra { field: f, labels, comul, counit: self.counit.kron(&other.counit) })
    }

    /// `(Δ - τΔ)` as a `dim² × dim` matrix.
    pub fn cocommutator(&self) -> Matrix {
        let n = self.dim();
        self.comul.sub(&Matrix::swap(self.field, n, n).mul(&self.comul))
    }

    /// The cocommutator subspace `ker(Δ - τΔ)`, home of the universal cotrace.
    pub fn cohh0(&self) -> Subspace {
        Subspace::kernel(&self.cocommutator())
    }

    pub fn dual_algebra(&self) -> AlgebraDual {
        AlgebraDual {
            field: self.field,
            dim: self.dim(),
            mult: self.comul.transpose(),
            unit: self.counit.transpose(),
        }
    }

    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_combination(self.field, v.iter().cloned().enumerate(), &self.labels)
    }

    /// Relabels the basis (used when a coalgebra is read from a document).
    pub fn with_labels(&self, labels: Vec<String>) -> Result<FinCoalgebra, CoalgebraError> {
        if labels.len() != self.dim() {
            return Err(CoalgebraError::Shape("label count".into()));
        }
        check_labels(&labels).map_err(CoalgebraError::DuplicateLabel)?;
        Ok(FinCoalgebra { labels, ..self.clone() })
    }

    /// Transports the structure along an invertible change of basis `p` (new = p⁻¹ old p).
    pub fn change_basis(&self, p: &Matrix) -> Result<FinCoalgebra, CoalgebraError> {
        let inv = p.inverse()?;
        let comul = inv.kron(&inv).mul(&self.comul).mul(p);
        let counit = self.counit.mul(p);
        let labels = (0..self.dim()).map(|i| format!("v{}", i + 1)).collect();
        FinCoalgebra::new(self.field, labels, comul, counit)
    }
}

pub(crate) fn tensor_label(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// The convolution algebra `C*`: `(f·g)(x) = Σ f(x₁) g(x₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDual {
    pub field: Field,
    pub dim: usize,
    /// `dim × dim²`, the transpose of the comultiplication.
    pub mult: Matrix,
    /// `dim × 1`, the counit.
    pub unit: Matrix,
}

/// `HH₀(R) = R / [R, R]` with its universal trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hh0 {
    pub commutators: Subspace,
    /// `dim HH₀ × dim R`.
    pub trace: Matrix,
}

impl AlgebraDual {
    /// Product of two column vectors in the dual basis.
    pub fn product(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.mult.mul(&a.kron(b))
    }

    pub fn basis_vector(&self, i: usize) -> Matrix {
        Matrix::unit_column(self.field, self.dim, i)
    }

    pub fn is_associative(&self) -> bool {
        let id = Matrix::identity(self.field, self.dim);
        self.mult.mul(&self.mult.kron(&id)) == self.mult.mul(&id.kron(&self.mult))
    }

    pub fn is_unital(&self) -> bool {
        let id = Matrix::identity(self.field, self.dim);
        self.mult.mul(&self.unit.kron(&id)) == id && self.mult.mul(&id.kron(&self.unit)) == id
    }

    pub fn hh0(&self) -> Hh0 {
        let n = self.dim;
        let f = self.field;
        let comm = self.mult.sub(&self.mult.mul(&Matrix::swap(f, n, n)));
        let commutators = Subspace::image(&comm);
        let quotient = Subspace::full(f, n)
            .quotient(&commutators)
            .expect("commutators lie in the algebra");
        Hh0 { commutators, trace: quotient.projection }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn trivial_and_grouplike_are_valid() {
        let k = FinCoalgebra::trivial(q());
        assert_eq!(k.dim(), 1);
        let g2 = FinCoalgebra::grouplike(q(), &["g", "h"]).unwrap();
        assert!(g2.is_cocommutative());
        let g3 = FinCoalgebra::grouplike(q(), &["a", "b", "c"]).unwrap();
        assert_eq!(g3.counit(), &Matrix::from_i64(q(), &[vec![1, 1, 1]]));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            FinCoalgebra::grouplike(q(), &["g", "g"]),
            Err(CoalgebraError::DuplicateLabel("g".into()))
        );
    }

    #[test]
    fn idempotent_without_counit_fails() {
        let f = q();
        let r = FinCoalgebra::from_triples(f, vec!["x".into()], &[vec![(0, 0, f.one())]], vec![f.zero()]);
        assert_eq!(r, Err(CoalgebraError::CounitFailure { witness: "x".into() }));
    }

    #[test]
    fn non_coassociative_candidate_is_rejected() {
        // Δ(x) = 1⊗x + x⊗1 + x⊗y with y primitive is counital; (Δ⊗id)Δ(x) has an extra x⊗y⊗y.
        let f = q();
        let o = f.one();
        let prim = |k: usize| vec![(0, k, o.clone()), (k, 0, o.clone())];
        let mut dx = prim(1);
        dx.push((1, 2, o.clone()));
        let r = FinCoalgebra::from_triples(
            f,
            ["1", "x", "y"].iter().map(|s| s.to_string()).collect(),
            &[vec![(0, 0, o.clone())], dx, prim(2)],
            vec![o.clone(), f.zero(), f.zero()],
        );
        assert_eq!(r, Err(CoalgebraError::NotCoassociative { witness: "x".into() }));
    }

    #[test]
    fn zero_dimensional_coalgebra_is_accepted() {
        let f = q();
        let c = FinCoalgebra::new(f, vec![], Matrix::zeros(f, 0, 0), Matrix::zeros(f, 1, 0)).unwrap();
        assert_eq!(c.cohh0().dim(), 0);
        assert_eq!(c.dual_algebra().hh0().trace.rows(), 0);
    }

    #[test]
    fn opposite_of_path_coalgebra() {
        let sw = FinCoalgebra::sweedler(q());
        let op = sw.opposite();
        assert_eq!(op.opposite(), sw);
        // Δ^op(x) = x⊗a + b⊗x: positions (x,a) = 2*3+0 and (b,x) = 1*3+2.
        let col = op.comul().column(2);
        let support: Vec<usize> = (0..9).filter(|&i| col[i] != q().zero()).collect();
        assert_eq!(support, vec![5, 6]);
    }

    #[test]
    fn comatrix_two_structure() {
        let m = FinCoalgebra::comatrix(q(), 2);
        assert_eq!(m.labels(), &["E11", "E12", "E21", "E22"]);
        // Δ(E11) = E11⊗E11 + E12⊗E21.
        let col = m.comul().column(0);
        let support: Vec<usize> = (0..16).filter(|&i| col[i] != q().zero()).collect();
        assert_eq!(support, vec![0, 6]);
        assert_eq!(m.counit().get(0, 1), q().zero());
        assert!(!m.is_cocommutative());
        assert_eq!(FinCoalgebra::comatrix(q(), 1).comul(), FinCoalgebra::trivial(q()).comul());
    }

    #[test]
    fn cohh0_examples() {
        let f = q();
        assert_eq!(FinCoalgebra::grouplike(f, &["g", "h"]).unwrap().cohh0().dim(), 2);
        let m2 = FinCoalgebra::comatrix(f, 2);
        let c = m2.cohh0();
        assert_eq!(c.basis(), &Matrix::from_i64(f, &[vec![1, 0, 0, 1]]));
        let sw = FinCoalgebra::sweedler(f).cohh0();
        assert_eq!(sw.basis(), &Matrix::from_i64(f, &[vec![1, 0, 0], vec![0, 1, 0]]));
    }

    #[test]
    fn tensor_of_grouplikes_is_grouplike_on_pairs() {
        let g2 = FinCoalgebra::grouplike(q(), &["g", "h"]).unwrap();
        let t = g2.tensor(&g2).unwrap();
        assert_eq!(t.dim(), 4);
        let expected = FinCoalgebra::grouplike(q(), &["g⊗g", "g⊗h", "h⊗g", "h⊗h"]).unwrap();
        assert_eq!(t, expected);
        let k = FinCoalgebra::trivial(q());
        assert_eq!(k.tensor(&g2).unwrap().comul(), g2.comul());
    }

    #[test]
    fn dual_of_grouplike_is_product_of_fields() {
        let a = FinCoalgebra::grouplike(q(), &["g", "h"]).unwrap().dual_algebra();
        let (g, h) = (a.basis_vector(0), a.basis_vector(1));
        assert_eq!(a.product(&g, &g), g);
        assert!(a.product(&g, &h).is_zero());
        assert!(a.is_associative() && a.is_unital());
        let hh = a.hh0();
        assert_eq!(hh.trace, Matrix::identity(q(), 2));
    }

    #[test]
    fn dual_of_comatrix_multiplies_like_matrix_units() {
        let a = FinCoalgebra::comatrix(q(), 2).dual_algebra();
        let e = |i| a.basis_vector(i);
        // E12*·E21* = E11* and E21*·E12* = E22*.
        assert_eq!(a.product(&e(1), &e(2)), e(0));
        assert_eq!(a.product(&e(2), &e(1)), e(3));
        assert!(a.product(&e(2), &e(2)).is_zero());
        assert_eq!(a.hh0().trace.rows(), 1);
    }
}
