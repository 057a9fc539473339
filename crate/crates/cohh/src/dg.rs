//! Bounded differential graded coalgebras and bicomodules, the conormalized
//! cobar complex, CoTor and coHochschild homology in a total-degree window.
//!
//! Degrees are homological: differentials lower degree by one. A cobar letter
//! `[c] = s⁻¹c` has degree `|c| - 1` and a cell `m ⊗ [c₁|…|c_q] ⊗ n` has total
//! degree `|m| + Σ(|cᵢ| - 1) + |n|`. Moving a symbol of degree `a` past one of
//! degree `b` costs `(-1)^{ab}`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::coalgebra::{check_labels, first_differing_column, tensor_label, FinCoalgebra};
use crate::comodule::Bicomodule;
use crate::linalg::{Field, LinalgError, Matrix, Quotient, Scalar, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgError {
    #[error("{what} has an entry of the wrong degree at {witness}")]
    DegreeMismatch { what: &'static str, witness: String },
    #[error("differential does not square to zero on {witness} (degree {degree})")]
    DifferentialNotSquareZero { degree: usize, witness: String },
    #[error("{what} is not a chain map on {witness} (degree {degree})")]
    NotChainMap { what: &'static str, degree: usize, witness: String },
    #[error("{what} is not coassociative on {witness} (degree {degree})")]
    NotCoassociative { what: &'static str, degree: usize, witness: String },
    #[error("{what} fails the counit law on {witness} (degree {degree})")]
    CounitFailure { what: &'static str, degree: usize, witness: String },
    #[error("left and right coactions do not commute on {witness} (degree {degree})")]
    BicomoduleSquareFails { degree: usize, witness: String },
    #[error("coalgebra is not simply connected: {0}")]
    NotSimplyConnected(String),
    #[error("cutoff {0} is negative")]
    CutoffTooSmall(i64),
    #[error("coalgebras do not match")]
    CoalgebraMismatch,
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

const MODULE_INSERTION_SIGN: i64 = -1;

fn tensor_degrees(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// `diag((-1)^{|e_i|})`; `S ⊗ d` is `id ⊗ d` with the Koszul sign.
fn parity(field: Field, degrees: &[usize]) -> Matrix {
    Matrix::from_triplets(
        field,
        degrees.len(),
        degrees.len(),
        degrees.iter().enumerate().map(|(i, &d)| (i, i, field.sign(d as i64))),
    )
}

fn check_degrees(
    what: &'static str,
    m: &Matrix,
    source: &[usize],
    target: &[usize],
    shift: i64,
    labels: &[String],
) -> Result<(), DgError> {
    if m.shape() != (target.len(), source.len()) {
        return Err(DgError::Shape(format!("{what}: {:?}, expected {:?}", m.shape(), (target.len(), source.len()))));
    }
    for (i, j, _) in m.entries() {
        if target[i] as i64 != source[j] as i64 + shift {
            return Err(DgError::DegreeMismatch { what, witness: labels[j].clone() });
        }
    }
    Ok(())
}

fn witness(a: &Matrix, b: &Matrix, labels: &[String], degrees: &[usize]) -> Option<(usize, String)> {
    first_differing_column(a, b).map(|j| (degrees[j], labels[j].clone()))
}

/// A dg coalgebra with a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCoalgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<usize>,
    d: Matrix,
    comul: Matrix,
    counit: Matrix,
}

impl GradedCoalgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        degrees: Vec<usize>,
        d: Matrix,
        comul: Matrix,
        counit: Matrix,
    ) -> Result<GradedCoalgebra, DgError> {
        check_labels(&labels).map_err(DgError::DuplicateLabel)?;
        if degrees.len() != labels.len() {
            return Err(DgError::Shape("one degree per basis label".into()));
        }
        let n = labels.len();
        let tt = tensor_degrees(&degrees, &degrees);
        check_degrees("differential", &d, &degrees, &degrees, -1, &labels)?;
        check_degrees("comultiplication", &comul, &degrees, &tt, 0, &labels)?;
        check_degrees("counit", &counit, &degrees, &[0], 0, &labels)?;
        if let Some((deg, w)) = witness(&d.mul(&d), &Matrix::zeros(field, n, n), &labels, &degrees) {
            return Err(DgError::DifferentialNotSquareZero { degree: deg, witness: w });
        }
        let id = Matrix::identity(field, n);
        for side in [counit.kron(&id), id.kron(&counit)] {
            if let Some((degree, witness)) = witness(&side.mul(&comul), &id, &labels, &degrees) {
                return Err(DgError::CounitFailure { what: "comultiplication", degree, witness });
            }
        }
        let lhs = comul.kron(&id).mul(&comul);
        let rhs = id.kron(&comul).mul(&comul);
        if let Some((degree, witness)) = witness(&lhs, &rhs, &labels, &degrees) {
            return Err(DgError::NotCoassociative { what: "comultiplication", degree, witness });
        }
        let d2 = d.kron(&id).add(&parity(field, &degrees).kron(&d));
        if let Some((degree, witness)) = witness(&comul.mul(&d), &d2.mul(&comul), &labels, &degrees) {
            return Err(DgError::NotChainMap { what: "comultiplication", degree, witness });
        }
        if let Some((degree, witness)) = witness(&counit.mul(&d), &Matrix::zeros(field, 1, n), &labels, &degrees) {
            return Err(DgError::NotChainMap { what: "counit", degree, witness });
        }
        Ok(GradedCoalgebra { field, labels, degrees, d, comul, counit })
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

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn comul(&self) -> &Matrix {
        &self.comul
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// `C₀ ≅ k` and `C₁ = 0`.
    pub fn is_simply_connected(&self) -> bool {
        self.degrees.iter().filter(|&&d| d == 0).count() == 1 && !self.degrees.contains(&1)
    }

    fn require_simply_connected(&self) -> Result<usize, DgError> {
        let zero = self.degrees.iter().filter(|&&d| d == 0).count();
        if zero != 1 {
            return Err(DgError::NotSimplyConnected(format!("dim C_0 = {zero}")));
        }
        if let Some(i) = self.degrees.iter().position(|&d| d == 1) {
            return Err(DgError::NotSimplyConnected(format!("{} has degree 1", self.labels[i])));
        }
        Ok(self.degrees.iter().position(|&d| d == 0).expect("degree zero element"))
    }

    /// An ungraded coalgebra placed in degree 0.
    pub fn concentrated(c: &FinCoalgebra) -> GradedCoalgebra {
        let n = c.dim();
        GradedCoalgebra {
            field: c.field(),
            labels: c.labels().to_vec(),
            degrees: vec![0; n],
            d: Matrix::zeros(c.field(), n, n),
            comul: c.comul().clone(),
            counit: c.counit().clone(),
        }
    }

    pub fn trivial(field: Field) -> GradedCoalgebra {
        GradedCoalgebra::concentrated(&FinCoalgebra::trivial(field))
    }

    /// Basis `1, x` with `x` primitive of the given degree and `d = 0`.
    pub fn exterior(field: Field, degree: usize) -> Result<GradedCoalgebra, DgError> {
        let comul = Matrix::from_triplets(field, 4, 2, [(0, 0, field.one()), (1, 1, field.one()), (2, 1, field.one())]);
        GradedCoalgebra::new(
            field,
            vec!["1".into(), "x".into()],
            vec![0, degree],
            Matrix::zeros(field, 2, 2),
            comul,
            Matrix::from_i64(field, &[vec![1, 0]]),
        )
    }

    /// Basis `1, y, z` in degrees 0, 2, 3 with `y, z` primitive and `dz = y`; acyclic above degree 0.
    pub fn disk(field: Field) -> Result<GradedCoalgebra, DgError> {
        let one = field.one();
        let comul = Matrix::from_triplets(
            field,
            9,
            3,
            [(0, 0, one.clone()), (1, 1, one.clone()), (3, 1, one.clone()), (2, 2, one.clone()), (6, 2, one)],
        );
        GradedCoalgebra::new(
            field,
            vec!["1".into(), "y".into(), "z".into()],
            vec![0, 2, 3],
            Matrix::from_triplets(field, 3, 3, [(1, 2, field.one())]),
            comul,
            Matrix::from_i64(field, &[vec![1, 0, 0]]),
        )
    }

    /// `Δ(c ⊗ e) = Σ (-1)^{|c₂||e₁|} (c₁ ⊗ e₁) ⊗ (c₂ ⊗ e₂)`.
    pub fn tensor(&self, other: &GradedCoalgebra) -> Result<GradedCoalgebra, DgError> {
        if self.field != other.field {
            return Err(DgError::Linalg(LinalgError::FieldMismatch));
        }
        let f = self.field;
        let (a, b) = (self.dim(), other.dim());
        let n = a * b;
        let mut entries = Vec::new();
        for (rc, c, x) in self.comul.entries() {
            let (c1, c2) = (rc / a, rc % a);
            for (re, e, y) in other.comul.entries() {
                let (e1, e2) = (re / b, re % b);
                let s = f.sign((self.degrees[c2] * other.degrees[e1]) as i64);
                let row = (c1 * b + e1) * n + c2 * b + e2;
                entries.push((row, c * b + e, f.mul(&s, &f.mul(x, y))));
            }
        }
        let degrees = tensor_degrees(&self.degrees, &other.degrees);
        let labels = self
            .labels
            .iter()
            .flat_map(|x| other.labels.iter().map(move |y| tensor_label(x, y)))
            .collect();
        let d = self.d.kron(&Matrix::identity(f, b)).add(&parity(f, &self.degrees).kron(&other.d));
        GradedCoalgebra::new(
            f,
            labels,
            degrees,
            d,
            Matrix::from_triplets(f, n * n, n, entries),
            self.counit.kron(&other.counit),
        )
    }

    /// `Δ^op(c) = Σ (-1)^{|c₁||c₂|} c₂ ⊗ c₁`.
    pub fn opposite(&self) -> GradedCoalgebra {
        let f = self.field;
        let n = self.dim();
        let comul = Matrix::from_triplets(
            f,
            n * n,
            n,
            self.comul.entries().map(|(r, c, v)| {
                let (c1, c2) = (r / n, r % n);
                let s = f.sign((self.degrees[c1] * self.degrees[c2]) as i64);
                (c2 * n + c1, c, f.mul(&s, v))
            }),
        );
        GradedCoalgebra { comul, ..self.clone() }
    }

    /// `C ⊗ C^op`.
    pub fn envelope(&self) -> Result<GradedCoalgebra, DgError> {
        self.tensor(&self.opposite())
    }
}

/// A dg bicomodule over graded coalgebras `(C, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBicomodule {
    left: Arc<GradedCoalgebra>,
    right: Arc<GradedCoalgebra>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    d: Matrix,
    lambda: Matrix,
    rho: Matrix,
}

impl GradedBicomodule {
    pub fn new(
        left: Arc<GradedCoalgebra>,
        right: Arc<GradedCoalgebra>,
        labels: Vec<String>,
        degrees: Vec<usize>,
        d: Matrix,
        lambda: Matrix,
        rho: Matrix,
    ) -> Result<GradedBicomodule, DgError> {
        check_labels(&labels).map_err(DgError::DuplicateLabel)?;
        if degrees.len() != labels.len() {
            return Err(DgError::Shape("one degree per basis label".into()));
        }
        if left.field != right.field {
            return Err(DgError::Linalg(LinalgError::FieldMismatch));
        }
        let f = left.field;
        let n = labels.len();
        let (c, dd) = (left.dim(), right.dim());
        check_degrees("differential", &d, &degrees, &degrees, -1, &labels)?;
        check_degrees("left coaction", &lambda, &degrees, &tensor_degrees(&left.degrees, &degrees), 0, &labels)?;
        check_degrees("right coaction", &rho, &degrees, &tensor_degrees(&degrees, &right.degrees), 0, &labels)?;
        let w = |a: &Matrix, b: &Matrix| witness(a, b, &labels, &degrees);
        if let Some((degree, witness)) = w(&d.mul(&d), &Matrix::zeros(f, n, n)) {
            return Err(DgError::DifferentialNotSquareZero { degree, witness });
        }
        let id = Matrix::identity(f, n);
        let (ic, id_d) = (Matrix::identity(f, c), Matrix::identity(f, dd));
        if let Some((degree, witness)) = w(&left.counit.kron(&id).mul(&lambda), &id) {
            return Err(DgError::CounitFailure { what: "left coaction", degree, witness });
        }
        if let Some((degree, witness)) = w(&left.comul.kron(&id).mul(&lambda), &ic.kron(&lambda).mul(&lambda)) {
            return Err(DgError::NotCoassociative { what: "left coaction", degree, witness });
        }
        if let Some((degree, witness)) = w(&id.kron(&right.counit).mul(&rho), &id) {
            return Err(DgError::CounitFailure { what: "right coaction", degree, witness });
        }
        if let Some((degree, witness)) = w(&rho.kron(&id_d).mul(&rho), &id.kron(&right.comul).mul(&rho)) {
            return Err(DgError::NotCoassociative { what: "right coaction", degree, witness });
        }
        if let Some((degree, witness)) = w(&lambda.kron(&id_d).mul(&rho), &ic.kron(&rho).mul(&lambda)) {
            return Err(DgError::BicomoduleSquareFails { degree, witness });
        }
        let dl = left.d.kron(&id).add(&parity(f, &left.degrees).kron(&d));
        if let Some((degree, witness)) = w(&lambda.mul(&d), &dl.mul(&lambda)) {
            return Err(DgError::NotChainMap { what: "left coaction", degree, witness });
        }
        let dr = d.kron(&id_d).add(&parity(f, &degrees).kron(&right.d));
        if let Some((degree, witness)) = w(&rho.mul(&d), &dr.mul(&rho)) {
            return Err(DgError::NotChainMap { what: "right coaction", degree, witness });
        }
        Ok(GradedBicomodule { left, right, labels, degrees, d, lambda, rho })
    }

    pub fn field(&self) -> Field {
        self.left.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn left(&self) -> &Arc<GradedCoalgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GradedCoalgebra> {
        &self.right
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn lambda(&self) -> &Matrix {
        &self.lambda
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    /// `C` over `(C, C)`.
    pub fn regular(c: &Arc<GradedCoalgebra>) -> GradedBicomodule {
        GradedBicomodule::new(
            c.clone(),
            c.clone(),
            c.labels.clone(),
            c.degrees.clone(),
            c.d.clone(),
            c.comul.clone(),
            c.comul.clone(),
        )
        .expect("regular graded bicomodule")
    }

    /// `C` as a right comodule over itself.
    pub fn regular_right(c: &Arc<GradedCoalgebra>) -> GradedBicomodule {
        let k = Arc::new(GradedCoalgebra::trivial(c.field));
        let n = c.dim();
        GradedBicomodule::new(k, c.clone(), c.labels.clone(), c.degrees.clone(), c.d.clone(), Matrix::identity(c.field, n), c.comul.clone())
            .expect("regular right comodule")
    }

    /// `C` as a left comodule over itself.
    pub fn regular_left(c: &Arc<GradedCoalgebra>) -> GradedBicomodule {
        let k = Arc::new(GradedCoalgebra::trivial(c.field));
        let n = c.dim();
        GradedBicomodule::new(c.clone(), k, c.labels.clone(), c.degrees.clone(), c.d.clone(), c.comul.clone(), Matrix::identity(c.field, n))
            .expect("regular left comodule")
    }

    /// The ground field as a comodule through the degree-zero grouplike of a simply connected `C`.
    pub fn corner(c: &Arc<GradedCoalgebra>, side: crate::comodule::Side) -> Result<GradedBicomodule, DgError> {
        let u = c.require_simply_connected()?;
        let f = c.field;
        let k = Arc::new(GradedCoalgebra::trivial(f));
        let eps_u = c.counit.get(0, u);
        let coact = Matrix::unit_column(f, c.dim(), u).scale(&f.inv(&eps_u)?);
        let one = vec!["1".to_string()];
        match side {
            crate::comodule::Side::Left => {
                GradedBicomodule::new(c.clone(), k, one, vec![0], Matrix::zeros(f, 1, 1), coact, Matrix::identity(f, 1))
            }
            crate::comodule::Side::Right => {
                GradedBicomodule::new(k, c.clone(), one, vec![0], Matrix::zeros(f, 1, 1), Matrix::identity(f, 1), coact)
            }
        }
    }

    /// `C ⊗ D` with `λ = Δ_C ⊗ id`, `ρ = id ⊗ Δ_D`.
    pub fn cofree(c: &Arc<GradedCoalgebra>, d: &Arc<GradedCoalgebra>) -> Result<GradedBicomodule, DgError> {
        let f = c.field;
        let (a, b) = (c.dim(), d.dim());
        let labels = c.labels.iter().flat_map(|x| d.labels.iter().map(move |y| tensor_label(x, y))).collect();
        GradedBicomodule::new(
            c.clone(),
            d.clone(),
            labels,
            tensor_degrees(&c.degrees, &d.degrees),
            c.d.kron(&Matrix::identity(f, b)).add(&parity(f, &c.degrees).kron(&d.d)),
            c.comul.kron(&Matrix::identity(f, b)),
            Matrix::identity(f, a).kron(&d.comul),
        )
    }

    /// An ungraded bicomodule placed in degree 0.
    pub fn concentrated(m: &Bicomodule, left: &Arc<GradedCoalgebra>, right: &Arc<GradedCoalgebra>) -> Result<GradedBicomodule, DgError> {
        let n = m.dim();
        GradedBicomodule::new(
            left.clone(),
            right.clone(),
            m.labels().to_vec(),
            vec![0; n],
            Matrix::zeros(m.field(), n, n),
            m.lambda().clone(),
            m.rho().clone(),
        )
    }

    /// A `(C, C)`-bicomodule as a right `C ⊗ C^op`-comodule: `m ↦ ± m₀ ⊗ (m₁ ⊗ m₋₁)`.
    pub fn right_envelope(&self, ce: &Arc<GradedCoalgebra>) -> Result<GradedBicomodule, DgError> {
        let c = &self.left;
        if c != &self.right || ce.dim() != c.dim() * c.dim() {
            return Err(DgError::CoalgebraMismatch);
        }
        let f = self.field();
        let (dc, n) = (c.dim(), self.dim());
        let rho_cols = self.rho.transpose();
        let mut entries = Vec::new();
        for (r, m, x) in self.lambda.entries() {
            let (cl, mid) = (r / n, r % n);
            for (r2, y) in rho_cols.row(mid) {
                let (m0, cr) = (r2 / dc, r2 % dc);
                let s = f.sign((c.degrees[cl] * (self.degrees[m0] + c.degrees[cr])) as i64);
                entries.push((m0 * dc * dc + cr * dc + cl, m, f.mul(&s, &f.mul(x, y))));
            }
        }
        let k = Arc::new(GradedCoalgebra::trivial(f));
        GradedBicomodule::new(
            k,
            ce.clone(),
            self.labels.clone(),
            self.degrees.clone(),
            self.d.clone(),
            Matrix::identity(f, n),
            Matrix::from_triplets(f, n * dc * dc, n, entries),
        )
    }

    /// A `(C, C)`-bicomodule as a left `C ⊗ C^op`-comodule: `n ↦ ± (n₋₁ ⊗ n₁) ⊗ n₀`.
    pub fn left_envelope(&self, ce: &Arc<GradedCoalgebra>) -> Result<GradedBicomodule, DgError> {
        let c = &self.left;
        if c != &self.right || ce.dim() != c.dim() * c.dim() {
            return Err(DgError::CoalgebraMismatch);
        }
        let f = self.field();
        let (dc, n) = (c.dim(), self.dim());
        let lam_cols = self.lambda.transpose();
        let mut entries = Vec::new();
        for (r, m, x) in self.rho.entries() {
            let (mid, cr) = (r / dc, r % dc);
            for (r2, y) in lam_cols.row(mid) {
                let (cl, n0) = (r2 / n, r2 % n);
                let s = f.sign((c.degrees[cr] * self.degrees[n0]) as i64);
                entries.push(((cl * dc + cr) * n + n0, m, f.mul(&s, &f.mul(x, y))));
            }
        }
        let k = Arc::new(GradedCoalgebra::trivial(f));
        GradedBicomodule::new(
            ce.clone(),
            k,
            self.labels.clone(),
            self.degrees.clone(),
            self.d.clone(),
            Matrix::from_triplets(f, dc * dc * n, n, entries),
            Matrix::identity(f, n),
        )
    }
}

/// A basis cell `m ⊗ [w₁|…|w_q] ⊗ n`; `n` is 0 in cyclic complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub m: usize,
    pub word: Vec<usize>,
    pub n: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainGroup {
    pub cells: Vec<Cell>,
    pub labels: Vec<String>,
    index: HashMap<Cell, usize>,
}

impl ChainGroup {
    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    fn push(&mut self, cell: Cell, label: String) {
        self.index.insert(cell.clone(), self.cells.len());
        self.cells.push(cell);
        self.labels.push(label);
    }
}

/// Chain groups `X_0 … X_{T+1}` with differentials `X_t → X_{t-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub field: Field,
    pub max_degree: usize,
    pub groups: Vec<ChainGroup>,
    /// `differentials[t] : X_t → X_{t-1}`; `differentials[0]` is the zero map out of `X_0`.
    pub differentials: Vec<Matrix>,
    /// Word length of each cell, per degree.
    pub word_lengths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub dim: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub quotient: Quotient,
    /// Representatives as labeled combinations.
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerAudit {
    pub chain_side: i64,
    pub homology_side: i64,
}

impl EulerAudit {
    pub fn holds(&self) -> bool {
        self.chain_side == self.homology_side
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedEntry {
    pub word_length: usize,
    pub degree: usize,
    pub dim: usize,
}

impl Complex {
    fn new(field: Field, max_degree: usize, groups: Vec<ChainGroup>, differentials: Vec<Matrix>, word_lengths: Vec<Vec<usize>>) -> Result<Complex, DgError> {
        for t in 2..differentials.len() {
            let dd = differentials[t - 1].mul(&differentials[t]);
            if let Some(j) = (0..dd.cols()).find(|&j| dd.column(j).iter().any(|v| *v != field.zero())) {
                return Err(DgError::DifferentialNotSquareZero { degree: t, witness: groups[t].labels[j].clone() });
            }
        }
        Ok(Complex { field, max_degree, groups, differentials, word_lengths })
    }

    pub fn chain_dims(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim()).collect()
    }

    /// Homology in degrees `0..=T`.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>, DgError> {
        let f = self.field;
        (0..=self.max_degree)
            .map(|t| {
                let cycles = Subspace::kernel(&self.differentials[t]);
                let boundaries = Subspace::image(&self.differentials[t + 1]);
                let quotient = cycles.quotient(&boundaries)?;
                let labels = &self.groups[t].labels;
                let basis = quotient
                    .representatives
                    .sparse_rows()
                    .iter()
                    .map(|r| crate::linalg::format_combination(f, r.iter().cloned(), labels))
                    .collect();
                Ok(HomologyGroup { degree: t, dim: quotient.representatives.rows(), cycles, boundaries, quotient, basis })
            })
            .collect()
    }

    /// `Σ (-1)^t dim X_t - (-1)^T rank d_{T+1}` against `Σ (-1)^t dim H_t`.
    pub fn euler_audit(&self, homology: &[HomologyGroup]) -> EulerAudit {
        let t_max = self.max_degree;
        let sign = |t: usize| if t.is_multiple_of(2) { 1i64 } else { -1 };
        let mut chain_side: i64 = (0..=t_max).map(|t| sign(t) * self.groups[t].dim() as i64).sum();
        chain_side -= sign(t_max) * self.differentials[t_max + 1].rank() as i64;
        let homology_side = homology.iter().map(|h| sign(h.degree) * h.dim as i64).sum();
        EulerAudit { chain_side, homology_side }
    }

    /// Whether every differential raises word length by exactly one.
    pub fn is_word_homogeneous(&self) -> bool {
        (1..self.differentials.len()).all(|t| {
            self.differentials[t]
                .entries()
                .all(|(i, j, _)| self.word_lengths[t - 1][i] == self.word_lengths[t][j] + 1)
        })
    }

    /// Homology split by word length, when the differential is homogeneous.
    pub fn bigraded(&self) -> Option<Vec<BigradedEntry>> {
        if !self.is_word_homogeneous() {
            return None;
        }
        let mut out = Vec::new();
        for t in 0..=self.max_degree {
            let lengths = &self.word_lengths[t];
            let max_q = lengths.iter().copied().max().unwrap_or(0);
            for q in 0..=max_q {
                let cols: Vec<usize> = (0..lengths.len()).filter(|&j| lengths[j] == q).collect();
                if cols.is_empty() {
                    continue;
                }
                let cycles = Subspace::kernel(&self.differentials[t].select_cols(&cols)).dim();
                let above = &self.word_lengths[t + 1];
                let src: Vec<usize> = (0..above.len()).filter(|&j| above[j] + 1 == q).collect();
                let boundaries = self.differentials[t + 1].select_cols(&src).select_rows(&cols).rank();
                let dim = cycles - boundaries;
                if dim > 0 {
                    out.push(BigradedEntry { word_length: q, degree: t, dim });
                }
            }
        }
        Some(out)
    }
}

fn columns(m: &Matrix) -> Vec<Vec<(usize, Scalar)>> {
    m.transpose().sparse_rows().to_vec()
}

struct Letters<'a> {
    c: &'a GradedCoalgebra,
    unit: usize,
    /// Positive-degree basis elements in index order.
    bar: Vec<usize>,
    /// Differential columns `(target, coeff)`.
    d: Vec<Vec<(usize, Scalar)>>,
    /// Reduced comultiplication `(c', c'', coeff)` per letter.
    split: Vec<Vec<(usize, usize, Scalar)>>,
}

impl<'a> Letters<'a> {
    fn new(c: &'a GradedCoalgebra) -> Result<Letters<'a>, DgError> {
        let unit = c.require_simply_connected()?;
        let n = c.dim();
        let bar = (0..n).filter(|&i| i != unit).collect();
        let split = columns(&c.comul)
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .map(|(r, v)| (r / n, r % n, v))
                    .filter(|(a, b, _)| *a != unit && *b != unit)
                    .collect()
            })
            .collect();
        Ok(Letters { c, unit, bar, d: columns(&c.d), split })
    }

    fn shift(&self, c: usize) -> usize {
        self.c.degrees[c] - 1
    }

    fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&c| self.shift(c)).sum()
    }

    /// Words with shifted degree exactly `k`, in lexicographic order.
    fn words(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend(k, &mut cur, &mut out);
        out
    }

    fn extend(&self, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for &c in &self.bar {
            let s = self.shift(c);
            if s <= k {
                cur.push(c);
                self.extend(k - s, cur, out);
                cur.pop();
            }
        }
    }

    fn label(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&c| self.c.labels[c].as_str()).collect();
        format!("[{}]", parts.join("|"))
    }
}

/// `ρ̄` columns `(m₀, c, coeff)` dropping the unit, and `λ̄` columns `(c, m₀, coeff)`.
fn reduced_right(m: &GradedBicomodule, unit: usize) -> Vec<Vec<(usize, usize, Scalar)>> {
    let dc = m.right.dim();
    columns(&m.rho)
        .into_iter()
        .map(|col| col.into_iter().map(|(r, v)| (r / dc, r % dc, v)).filter(|(_, c, _)| *c != unit).collect())
        .collect()
}

fn reduced_left(m: &GradedBicomodule, unit: usize) -> Vec<Vec<(usize, usize, Scalar)>> {
    let n = m.dim();
    columns(&m.lambda)
        .into_iter()
        .map(|col| col.into_iter().map(|(r, v)| (r / n, r % n, v)).filter(|(c, _, _)| *c != unit).collect())
        .collect()
}

/// The two shapes of cobar-type complexes.
enum Shape<'a> {
    /// `M ⊗ T(s⁻¹C̄) ⊗ N`.
    Open(&'a GradedBicomodule, &'a GradedBicomodule),
    /// `M ⊗ T(s⁻¹C̄)` with the last coface from the left coaction of `M`.
    Cyclic(&'a GradedBicomodule),
}

fn build(shape: Shape<'_>, c: &GradedCoalgebra, top: usize) -> Result<(Vec<ChainGroup>, Vec<Vec<usize>>, Vec<Matrix>), DgError> {
    let f = c.field;
    let letters = Letters::new(c)?;
    let m = match shape {
        Shape::Open(m, _) | Shape::Cyclic(m) => m,
    };
    let n = match shape {
        Shape::Open(_, n) => Some(n),
        Shape::Cyclic(_) => None,
    };
    let m_d = columns(&m.d);
    let m_rho = reduced_right(m, letters.unit);
    let m_lam = reduced_left(m, letters.unit);
    let n_d = n.map(|n| columns(&n.d));
    let n_lam = n.map(|n| reduced_left(n, letters.unit));
    let n_degrees: Vec<usize> = n.map_or(vec![0], |n| n.degrees.clone());
    let n_labels: Vec<String> = n.map_or(vec![String::new()], |n| n.labels.clone());

    let mut groups: Vec<ChainGroup> = Vec::with_capacity(top + 1);
    let mut lengths = Vec::with_capacity(top + 1);
    for t in 0..=top {
        let mut g = ChainGroup::default();
        let mut q = Vec::new();
        for (mi, &dm) in m.degrees.iter().enumerate() {
            for (ni, &dn) in n_degrees.iter().enumerate() {
                if dm + dn > t {
                    continue;
                }
                for w in letters.words(t - dm - dn) {
                    let label = match n {
                        Some(_) => format!("{}⊗{}⊗{}", m.labels[mi], letters.label(&w), n_labels[ni]),
                        None => format!("{}⊗{}", m.labels[mi], letters.label(&w)),
                    };
                    q.push(w.len());
                    g.push(Cell { m: mi, word: w, n: ni }, label);
                }
            }
        }
        // Cells are generated by (m, n, word); sort to the canonical (m, word, n) order.
        let mut order: Vec<usize> = (0..g.cells.len()).collect();
        order.sort_by(|&a, &b| g.cells[a].cmp(&g.cells[b]));
        let mut sorted = ChainGroup::default();
        let mut sorted_q = Vec::new();
        for i in order {
            sorted.push(g.cells[i].clone(), g.labels[i].clone());
            sorted_q.push(q[i]);
        }
        groups.push(sorted);
        lengths.push(sorted_q);
    }

    let mut diffs = vec![Matrix::zeros(f, 0, groups[0].dim())];
    for t in 1..=top {
        let src = &groups[t];
        let tgt = &groups[t - 1];
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (j, cell) in src.cells.iter().enumerate() {
            let mut push = |cell: Cell, v: Scalar| {
                let i = tgt.index_of(&cell).expect("differential target lies one degree below");
                entries.push((i, j, v));
            };
            let dm = m.degrees[cell.m];
            // Internal differential of M.
            for (m2, v) in &m_d[cell.m] {
                push(Cell { m: *m2, word: cell.word.clone(), n: cell.n }, v.clone());
            }
            // Right coaction of M inserted in front.
            for (m0, cc, v) in &m_rho[cell.m] {
                let s = f.mul(&f.from_i64(MODULE_INSERTION_SIGN), &f.sign(m.degrees[*m0] as i64));
                let mut w = vec![*cc];
                w.extend(&cell.word);
                push(Cell { m: *m0, word: w, n: cell.n }, f.mul(&s, v));
            }
            // Letters: internal differential and reduced comultiplication.
            let mut pos = dm;
            for (i, &ci) in cell.word.iter().enumerate() {
                let ps = f.sign(pos as i64);
                for (c2, v) in &letters.d[ci] {
                    let mut w = cell.word.clone();
                    w[i] = *c2;
                    push(Cell { m: cell.m, word: w, n: cell.n }, f.neg(&f.mul(&ps, v)));
                }
                for (a, b, v) in &letters.split[ci] {
                    let mut w = cell.word[..i].to_vec();
                    w.push(*a);
                    w.push(*b);
                    w.extend(&cell.word[i + 1..]);
                    let s = f.mul(&ps, &f.sign(c.degrees[*a] as i64));
                    push(Cell { m: cell.m, word: w, n: cell.n }, f.mul(&s, v));
                }
                pos += letters.shift(ci);
            }
            match (n, &n_lam, &n_d) {
                (Some(_), Some(n_lam), Some(n_d)) => {
                    let ps = f.sign(pos as i64);
                    for (cc, n0, v) in &n_lam[cell.n] {
                        let mut w = cell.word.clone();
                        w.push(*cc);
                        push(Cell { m: cell.m, word: w, n: *n0 }, f.mul(&ps, v));
                    }
                    for (n2, v) in &n_d[cell.n] {
                        push(Cell { m: cell.m, word: cell.word.clone(), n: *n2 }, f.mul(&ps, v));
                    }
                }
                _ => {
                    // Left coaction of M rotated to the end of the word.
                    let wd = letters.word_degree(&cell.word);
                    for (cc, m0, v) in &m_lam[cell.m] {
                        let s = f.sign((letters.shift(*cc) * (m.degrees[*m0] + wd)) as i64);
                        let mut w = cell.word.clone();
                        w.push(*cc);
                        push(Cell { m: *m0, word: w, n: 0 }, f.mul(&s, v));
                    }
                }
            }
        }
        diffs.push(Matrix::from_triplets(f, tgt.dim(), src.dim(), entries));
    }
    Ok((groups, lengths, diffs))
}

fn check_cutoff(cutoff: i64) -> Result<usize, DgError> {
    if cutoff < 0 {
        return Err(DgError::CutoffTooSmall(cutoff));
    }
    Ok(cutoff as usize)
}

/// The conormalized cobar complex `Ω(M, C, N)` in total degrees `0..=T+1`.
pub fn conormalized_cobar(m: &GradedBicomodule, c: &GradedCoalgebra, n: &GradedBicomodule, cutoff: i64) -> Result<Complex, DgError> {
    let t = check_cutoff(cutoff)?;
    if m.right.as_ref() != c || n.left.as_ref() != c {
        return Err(DgError::CoalgebraMismatch);
    }
    let (groups, lengths, diffs) = build(Shape::Open(m, n), c, t + 1)?;
    Complex::new(c.field, t, groups, diffs, lengths)
}

/// The conormalized coHochschild complex of `M` over `(C, C)` in total degrees `0..=T+1`.
pub fn cohh_complex(m: &GradedBicomodule, c: &GradedCoalgebra, cutoff: i64) -> Result<Complex, DgError> {
    let t = check_cutoff(cutoff)?;
    if m.right.as_ref() != c || m.left.as_ref() != c {
        return Err(DgError::CoalgebraMismatch);
    }
    let (groups, lengths, diffs) = build(Shape::Cyclic(m), c, t + 1)?;
    Complex::new(c.field, t, groups, diffs, lengths)
}

/// Homology of a complex in a window, with the audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub max_degree: usize,
    pub chain_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub bases: Vec<Vec<String>>,
    pub bigraded: Option<Vec<BigradedEntry>>,
    pub euler: EulerAudit,
}

impl HomologyReport {
    pub fn from_complex(x: &Complex) -> Result<HomologyReport, DgError> {
        let h = x.homology()?;
        Ok(HomologyReport {
            max_degree: x.max_degree,
            chain_dims: x.chain_dims()[..=x.max_degree].to_vec(),
            dims: h.iter().map(|g| g.dim).collect(),
            bases: h.iter().map(|g| g.basis.clone()).collect(),
            bigraded: x.bigraded(),
            euler: x.euler_audit(&h),
        })
    }
}

pub fn cotor(m: &GradedBicomodule, c: &GradedCoalgebra, n: &GradedBicomodule, cutoff: i64) -> Result<HomologyReport, DgError> {
    HomologyReport::from_complex(&conormalized_cobar(m, c, n, cutoff)?)
}

pub fn dg_cohh(m: &GradedBicomodule, c: &GradedCoalgebra, cutoff: i64) -> Result<HomologyReport, DgError> {
    HomologyReport::from_complex(&cohh_complex(m, c, cutoff)?)
}

/// `H(Ω(C, C ⊗ C^op, C))`.
pub fn cohh_envelope(c: &Arc<GradedCoalgebra>, cutoff: i64) -> Result<HomologyReport, DgError> {
    c.require_simply_connected()?;
    let ce = Arc::new(c.envelope()?);
    let reg = GradedBicomodule::regular(c);
    let right = reg.right_envelope(&ce)?;
    let left = reg.left_envelope(&ce)?;
    cotor(&right, &ce, &left, cutoff)
}

/// `Ω(M, C, N)` truncated to total degree `≤ top`, as a dg bicomodule, with its cells.
pub fn cobar_bicomodule(
    m: &GradedBicomodule,
    c: &GradedCoalgebra,
    n: &GradedBicomodule,
    top: usize,
) -> Result<(GradedBicomodule, Vec<Cell>), DgError> {
    if m.right.as_ref() != c || n.left.as_ref() != c {
        return Err(DgError::CoalgebraMismatch);
    }
    let f = c.field;
    let (groups, _, diffs) = build(Shape::Open(m, n), c, top)?;
    let mut cells = Vec::new();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut offsets = Vec::new();
    for (t, g) in groups.iter().enumerate() {
        offsets.push(cells.len());
        cells.extend(g.cells.iter().cloned());
        labels.extend(g.labels.iter().cloned());
        degrees.extend(std::iter::repeat_n(t, g.dim()));
    }
    let total = cells.len();
    let global: HashMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut d = Vec::new();
    for t in 1..=top {
        for (i, j, v) in diffs[t].entries() {
            d.push((offsets[t - 1] + i, offsets[t] + j, v.clone()));
        }
    }
    let (dl, dr) = (m.left.dim(), n.right.dim());
    let mut lam = Vec::new();
    let mut rho = Vec::new();
    let m_lam = columns(&m.lambda);
    let n_rho = columns(&n.rho);
    for (j, cell) in cells.iter().enumerate() {
        for (r, v) in &m_lam[cell.m] {
            let (b, m0) = (r / m.dim(), r % m.dim());
            let i = global[&Cell { m: m0, word: cell.word.clone(), n: cell.n }];
            lam.push((b * total + i, j, v.clone()));
        }
        for (r, v) in &n_rho[cell.n] {
            let (n0, e) = (r / dr, r % dr);
            let i = global[&Cell { m: cell.m, word: cell.word.clone(), n: n0 }];
            rho.push((i * dr + e, j, v.clone()));
        }
    }
    let x = GradedBicomodule::new(
        m.left.clone(),
        n.right.clone(),
        labels,
        degrees,
        Matrix::from_triplets(f, total, total, d),
        Matrix::from_triplets(f, dl * total, total, lam),
        Matrix::from_triplets(f, total * dr, total, rho),
    )?;
    Ok((x, cells))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedShadowReport {
    pub max_degree: usize,
    pub source_chain_dims: Vec<usize>,
    pub target_chain_dims: Vec<usize>,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub chain_map: bool,
    pub bijective: bool,
    pub cohomology_iso: bool,
}

impl DerivedShadowReport {
    pub fn all_pass(&self) -> bool {
        self.chain_map && self.bijective && self.cohomology_iso
    }
}

/// θ between the coHH complexes of `Ω(M, D, N)` and `Ω(N, C, M)`.
pub fn derived_shadow_theta(m: &GradedBicomodule, n: &GradedBicomodule, cutoff: i64) -> Result<DerivedShadowReport, DgError> {
    let t = check_cutoff(cutoff)?;
    let (c, d) = (m.left.clone(), m.right.clone());
    if n.left != d || n.right != c {
        return Err(DgError::CoalgebraMismatch);
    }
    let f = c.field;
    let lc = Letters::new(&c)?;
    let ld = Letters::new(&d)?;
    let (x, xcells) = cobar_bicomodule(m, &d, n, t + 1)?;
    let (y, ycells) = cobar_bicomodule(n, &c, m, t + 1)?;
    let a = cohh_complex(&x, &c, cutoff)?;
    let b = cohh_complex(&y, &d, cutoff)?;
    let yindex: HashMap<&Cell, usize> = ycells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut thetas = Vec::new();
    for deg in 0..=t + 1 {
        let (ga, gb) = (&a.groups[deg], &b.groups[deg]);
        let mut entries = Vec::new();
        for (j, cell) in ga.cells.iter().enumerate() {
            let inner = &xcells[cell.m];
            let left = m.degrees[inner.m] + ld.word_degree(&inner.word);
            let right = n.degrees[inner.n] + lc.word_degree(&cell.word);
            let yi = yindex[&Cell { m: inner.n, word: cell.word.clone(), n: inner.m }];
            let target = Cell { m: yi, word: inner.word.clone(), n: 0 };
            let i = gb.index_of(&target).ok_or_else(|| DgError::Shape("θ leaves the window".into()))?;
            entries.push((i, j, f.sign((left * right) as i64)));
        }
        thetas.push(Matrix::from_triplets(f, gb.dim(), ga.dim(), entries));
    }
    let chain_map = (1..=t + 1).all(|k| thetas[k - 1].mul(&a.differentials[k]) == b.differentials[k].mul(&thetas[k]));
    let bijective = thetas.iter().all(|th| th.rows() == th.cols() && th.is_invertible());
    let ha = a.homology()?;
    let hb = b.homology()?;
    let mut cohomology_iso = true;
    for k in 0..=t {
        let induced = hb[k].quotient.projection.mul(&thetas[k]).mul(&ha[k].quotient.representatives.transpose());
        if ha[k].dim != hb[k].dim || !induced.is_invertible() {
            cohomology_iso = false;
        }
    }
    Ok(DerivedShadowReport {
        max_degree: t,
        source_chain_dims: a.chain_dims()[..=t].to_vec(),
        target_chain_dims: b.chain_dims()[..=t].to_vec(),
        source_dims: ha.iter().map(|h| h.dim).collect(),
        target_dims: hb.iter().map(|h| h.dim).collect(),
        chain_map,
        bijective,
        cohomology_iso,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatorReport {
    pub max_degree: usize,
    pub left_chain_dims: Vec<usize>,
    pub right_chain_dims: Vec<usize>,
    pub shapes_match: bool,
    pub differentials_commute: bool,
}

impl AssociatorReport {
    pub fn all_pass(&self) -> bool {
        self.shapes_match && self.differentials_commute
    }
}

/// Compares `Ω(Ω(M, D, N), E, P)` with `Ω(M, D, Ω(N, E, P))` cell by cell.
pub fn cobar_associator_check(
    m: &GradedBicomodule,
    d: &GradedCoalgebra,
    n: &GradedBicomodule,
    e: &GradedCoalgebra,
    p: &GradedBicomodule,
    cutoff: i64,
) -> Result<AssociatorReport, DgError> {
    let t = check_cutoff(cutoff)?;
    let (x, xcells) = cobar_bicomodule(m, d, n, t + 1)?;
    let (y, ycells) = cobar_bicomodule(n, e, p, t + 1)?;
    let lhs = conormalized_cobar(&x, e, p, cutoff)?;
    let rhs = conormalized_cobar(m, d, &y, cutoff)?;
    type Flat = (usize, Vec<usize>, usize, Vec<usize>, usize);
    let flat_l = |c: &Cell| -> Flat {
        let inner = &xcells[c.m];
        (inner.m, inner.word.clone(), inner.n, c.word.clone(), c.n)
    };
    let flat_r = |c: &Cell| -> Flat {
        let inner = &ycells[c.n];
        (c.m, c.word.clone(), inner.m, inner.word.clone(), inner.n)
    };
    let mut shapes_match = true;
    let mut perms = Vec::new();
    for deg in 0..=t + 1 {
        let (gl, gr) = (&lhs.groups[deg], &rhs.groups[deg]);
        let index: HashMap<Flat, usize> = gr.cells.iter().enumerate().map(|(i, c)| (flat_r(c), i)).collect();
        if gl.dim() != gr.dim() {
            shapes_match = false;
        }
        let mut entries = Vec::new();
        for (j, c) in gl.cells.iter().enumerate() {
            match index.get(&flat_l(c)) {
                Some(&i) => entries.push((i, j, lhs.field.one())),
                None => shapes_match = false,
            }
        }
        perms.push(Matrix::from_triplets(lhs.field, gr.dim(), gl.dim(), entries));
    }
    let differentials_commute = shapes_match
        && (1..=t + 1).all(|k| perms[k - 1].mul(&lhs.differentials[k]) == rhs.differentials[k].mul(&perms[k]));
    Ok(AssociatorReport {
        max_degree: t,
        left_chain_dims: lhs.chain_dims()[..=t].to_vec(),
        right_chain_dims: rhs.chain_dims()[..=t].to_vec(),
        shapes_match,
        differentials_commute,
    })
}
