//! Finite-dimensional bicomodules, cotensor products and the coHH₀ shadow.

use std::sync::Arc;

use thiserror::Error;

use crate::coalgebra::{check_labels, first_differing_column, tensor_label, CoalgebraError, FinCoalgebra};
use crate::linalg::{format_combination, linear_solve, Field, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error("{side} coaction is not coassociative on {witness}")]
    CoactionNotCoassociative { side: Side, witness: String },
    #[error("{side} coaction is not counital on {witness}")]
    CoactionNotCounital { side: Side, witness: String },
    #[error("left and right coactions do not commute on {witness}")]
    BicomoduleSquareFails { witness: String },
    #[error("map is not {side} colinear")]
    NotColinear { side: Side },
    #[error("coalgebras do not match")]
    CoalgebraMismatch,
    #[error("comodule is not injective: no colinear section of the embedding")]
    NotInjective,
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A `(C, D)`-bicomodule. `lambda` is `(dim_C·dim) × dim` for `M → C ⊗ M`,
/// `rho` is `(dim·dim_D) × dim` for `M → M ⊗ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomodule {
    left: Arc<FinCoalgebra>,
    right: Arc<FinCoalgebra>,
    labels: Vec<String>,
    lambda: Matrix,
    rho: Matrix,
}

fn same_coalgebra(a: &Arc<FinCoalgebra>, b: &Arc<FinCoalgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Bicomodule {
    pub fn new(
        left: Arc<FinCoalgebra>,
        right: Arc<FinCoalgebra>,
        labels: Vec<String>,
        lambda: Matrix,
        rho: Matrix,
    ) -> Result<Bicomodule, ComoduleError> {
        let n = labels.len();
        check_labels(&labels).map_err(ComoduleError::DuplicateLabel)?;
        if lambda.shape() != (left.dim() * n, n) || rho.shape() != (n * right.dim(), n) {
            return Err(ComoduleError::Shape(format!(
                "lambda {:?}, rho {:?} for dimension {n}",
                lambda.shape(),
                rho.shape()
            )));
        }
        if left.field() != right.field() || lambda.field() != left.field() || rho.field() != left.field() {
            return Err(ComoduleError::Coalgebra(CoalgebraError::FieldMismatch));
        }
        let m = Bicomodule { left, right, labels, lambda, rho };
        m.check_laws()?;
        Ok(m)
    }

    fn check_laws(&self) -> Result<(), ComoduleError> {
        let f = self.field();
        let (c, d, n) = (self.left.dim(), self.right.dim(), self.dim());
        let idn = Matrix::identity(f, n);
        let witness = |k: usize| self.labels[k].clone();

        let u = self.left.counit().kron(&idn).mul(&self.lambda);
        if let Some(k) = first_differing_column(&u, &idn) {
            return Err(ComoduleError::CoactionNotCounital { side: Side::Left, witness: witness(k) });
        }
        let a = self.left.comul().kron(&idn).mul(&self.lambda);
        let b = Matrix::identity(f, c).kron(&self.lambda).mul(&self.lambda);
        if let Some(k) = first_differing_column(&a, &b) {
            return Err(ComoduleError::CoactionNotCoassociative { side: Side::Left, witness: witness(k) });
        }

        let u = idn.kron(self.right.counit()).mul(&self.rho);
        if let Some(k) = first_differing_column(&u, &idn) {
            return Err(ComoduleError::CoactionNotCounital { side: Side::Right, witness: witness(k) });
        }
        let a = self.rho.kron(&Matrix::identity(f, d)).mul(&self.rho);
        let b = idn.kron(self.right.comul()).mul(&self.rho);
        if let Some(k) = first_differing_column(&a, &b) {
            return Err(ComoduleError::CoactionNotCoassociative { side: Side::Right, witness: witness(k) });
        }

        let a = self.lambda.kron(&Matrix::identity(f, d)).mul(&self.rho);
        let b = Matrix::identity(f, c).kron(&self.rho).mul(&self.lambda);
        if let Some(k) = first_differing_column(&a, &b) {
            return Err(ComoduleError::BicomoduleSquareFails { witness: witness(k) });
        }
        Ok(())
    }

    /// `C` as a `(C, C)`-bicomodule through `Δ`.
    pub fn regular(c: &Arc<FinCoalgebra>) -> Bicomodule {
        Bicomodule::new(c.clone(), c.clone(), c.labels().to_vec(), c.comul().clone(), c.comul().clone())
            .expect("regular bicomodule")
    }

    /// A left `C`-comodule, i.e. a `(C, k)`-bicomodule.
    pub fn left_comodule(c: &Arc<FinCoalgebra>, labels: Vec<String>, lambda: Matrix) -> Result<Bicomodule, ComoduleError> {
        let k = Arc::new(FinCoalgebra::trivial(c.field()));
        let rho = Matrix::identity(c.field(), labels.len());
        Bicomodule::new(c.clone(), k, labels, lambda, rho)
    }

    /// A right `C`-comodule, i.e. a `(k, C)`-bicomodule.
    pub fn right_comodule(c: &Arc<FinCoalgebra>, labels: Vec<String>, rho: Matrix) -> Result<Bicomodule, ComoduleError> {
        let k = Arc::new(FinCoalgebra::trivial(c.field()));
        let lambda = Matrix::identity(c.field(), labels.len());
        Bicomodule::new(k, c.clone(), labels, lambda, rho)
    }

    /// The cofree bicomodule `C ⊗ V ⊗ D` with `λ = Δ_C ⊗ id`, `ρ = id ⊗ Δ_D`.
    pub fn cofree(c: &Arc<FinCoalgebra>, v_dim: usize, d: &Arc<FinCoalgebra>) -> Bicomodule {
        let f = c.field();
        let mut labels = Vec::with_capacity(c.dim() * v_dim * d.dim());
        for a in c.labels() {
            for v in 0..v_dim {
                for b in d.labels() {
                    let mut parts = Vec::new();
                    if c.dim() > 1 || v_dim == 0 {
                        parts.push(a.clone());
                    }
                    if v_dim > 1 || (c.dim() <= 1 && d.dim() <= 1) {
                        parts.push(format!("e{}", v + 1));
                    }
                    if d.dim() > 1 {
                        parts.push(b.clone());
                    }
                    labels.push(parts.join("⊗"));
                }
            }
        }
        let iv = Matrix::identity(f, v_dim);
        let lambda = c.comul().kron(&iv).kron(&Matrix::identity(f, d.dim()));
        let rho = Matrix::identity(f, c.dim()).kron(&iv).kron(d.comul());
        Bicomodule::new(c.clone(), d.clone(), labels, lambda, rho).expect("cofree bicomodule")
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left(&self) -> &Arc<FinCoalgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinCoalgebra> {
        &self.right
    }

    pub fn lambda(&self) -> &Matrix {
        &self.lambda
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn identity(&self) -> ColinearMap {
        ColinearMap { source: self.clone(), target: self.clone(), matrix: Matrix::identity(self.field(), self.dim()) }
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Bicomodule, ComoduleError> {
        if labels.len() != self.dim() {
            return Err(ComoduleError::Shape("label count".into()));
        }
        check_labels(&labels).map_err(ComoduleError::DuplicateLabel)?;
        Ok(Bicomodule { labels, ..self.clone() })
    }

    /// Same coactions read in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Bicomodule, ComoduleError> {
        let f = self.field();
        let inv = p.inverse()?;
        let lambda = Matrix::identity(f, self.left.dim()).kron(&inv).mul(&self.lambda).mul(p);
        let rho = inv.kron(&Matrix::identity(f, self.right.dim())).mul(&self.rho).mul(p);
        let labels = (0..self.dim()).map(|i| format!("u{}", i + 1)).collect();
        Bicomodule::new(self.left.clone(), self.right.clone(), labels, lambda, rho)
    }

    pub fn direct_sum(&self, other: &Bicomodule) -> Result<Bicomodule, ComoduleError> {
        if !same_coalgebra(&self.left, &other.left) || !same_coalgebra(&self.right, &other.right) {
            return Err(ComoduleError::CoalgebraMismatch);
        }
        let f = self.field();
        let (c, d) = (self.left.dim(), self.right.dim());
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut lam = Vec::new();
        let mut rho = Vec::new();
        for (src, off, n_src) in [(self, 0, n1), (other, n1, n2)] {
            for (r, col, v) in src.lambda.entries() {
                let (a, m) = (r / n_src, r % n_src);
                lam.push((a * n + m + off, col + off, v.clone()));
            }
            for (r, col, v) in src.rho.entries() {
                let (m, b) = (r / d, r % d);
                rho.push(((m + off) * d + b, col + off, v.clone()));
            }
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}'")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}''")));
        Bicomodule::new(
            self.left.clone(),
            self.right.clone(),
            labels,
            Matrix::from_triplets(f, c * n, n, lam),
            Matrix::from_triplets(f, n * d, n, rho),
        )
    }

    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_combination(self.field(), v.iter().cloned().enumerate(), &self.labels)
    }

    /// `coHH₀(M, C) = ker(ρ - τλ)` for a `(C, C)`-bicomodule.
    pub fn cohh0_coeff(&self) -> Result<Subspace, ComoduleError> {
        if !same_coalgebra(&self.left, &self.right) {
            return Err(ComoduleError::CoalgebraMismatch);
        }
        let tau = Matrix::swap(self.field(), self.left.dim(), self.dim());
        Ok(Subspace::kernel(&self.rho.sub(&tau.mul(&self.lambda))))
    }
}

/// A bicolinear map between bicomodules over the same pair of coalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColinearMap {
    pub source: Bicomodule,
    pub target: Bicomodule,
    pub matrix: Matrix,
}

impl ColinearMap {
    pub fn new(source: Bicomodule, target: Bicomodule, matrix: Matrix) -> Result<ColinearMap, ComoduleError> {
        if !same_coalgebra(&source.left, &target.left) || !same_coalgebra(&source.right, &target.right) {
            return Err(ComoduleError::CoalgebraMismatch);
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(ComoduleError::Shape(format!("map {:?}", matrix.shape())));
        }
        if let Some(side) = colinearity_defect(&source, &target, &matrix) {
            return Err(ComoduleError::NotColinear { side });
        }
        Ok(ColinearMap { source, target, matrix })
    }

    pub fn compose(&self, first: &ColinearMap) -> ColinearMap {
        ColinearMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }
}

fn colinearity_defect(source: &Bicomodule, target: &Bicomodule, f: &Matrix) -> Option<Side> {
    let fld = source.field();
    let left = target.lambda.mul(f) != Matrix::identity(fld, source.left.dim()).kron(f).mul(&source.lambda);
    if left {
        return Some(Side::Left);
    }
    let right = target.rho.mul(f) != f.kron(&Matrix::identity(fld, source.right.dim())).mul(&source.rho);
    right.then_some(Side::Right)
}

/// Coordinates of the columns of `map` inside `k^left ⊗ S ⊗ k^right`.
fn corestrict(map: &Matrix, sub: &Subspace, left: usize, right: usize) -> Result<Matrix, ComoduleError> {
    let amb = sub.ambient_dim();
    let pivots: Vec<usize> = (0..left)
        .flat_map(|a| sub.pivots().iter().flat_map(move |p| (0..right).map(move |b| (a * amb + p) * right + b)))
        .collect();
    let coords = map.select_rows(&pivots);
    let f = map.field();
    let inc = Matrix::identity(f, left).kron(&sub.inclusion()).kron(&Matrix::identity(f, right));
    if &inc.mul(&coords) != map {
        return Err(ComoduleError::Internal("map does not corestrict to the subspace".into()));
    }
    Ok(coords)
}

/// `M □_D N` with its inclusion into `M ⊗ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotensorModule {
    pub module: Bicomodule,
    pub subspace: Subspace,
}

impl CotensorModule {
    /// `(dim M · dim N) × dim(M □ N)`.
    pub fn inclusion(&self) -> Matrix {
        self.subspace.inclusion()
    }
}

pub fn cotensor(m: &Bicomodule, n: &Bicomodule) -> Result<CotensorModule, ComoduleError> {
    if !same_coalgebra(&m.right, &n.left) {
        return Err(ComoduleError::CoalgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let eq = m
        .rho
        .kron(&Matrix::identity(f, dn))
        .sub(&Matrix::identity(f, dm).kron(&n.lambda));
    let sub = Subspace::kernel(&eq);
    let inc = sub.inclusion();
    let lam_amb = m.lambda.kron(&Matrix::identity(f, dn)).mul(&inc);
    let rho_amb = Matrix::identity(f, dm).kron(&n.rho).mul(&inc);
    let lambda = corestrict(&lam_amb, &sub, m.left.dim(), 1)?;
    let rho = corestrict(&rho_amb, &sub, 1, n.right.dim())?;
    let amb_labels: Vec<String> = m
        .labels
        .iter()
        .flat_map(|a| n.labels.iter().map(move |b| tensor_label(a, b)))
        .collect();
    let labels = (0..sub.dim())
        .map(|i| {
            let row = sub.basis().row(i);
            let text = format_combination(f, row.iter().cloned(), &amb_labels);
            if row.len() == 1 && row[0].1 == f.one() {
                text
            } else {
                format!("[{text}]")
            }
        })
        .collect();
    let module = Bicomodule::new(m.left.clone(), n.right.clone(), labels, lambda, rho)?;
    Ok(CotensorModule { module, subspace: sub })
}

/// `id_M □ f : M □ X → M □ Y`.
pub fn whisker_left(m: &Bicomodule, g: &ColinearMap) -> Result<ColinearMap, ComoduleError> {
    let mx = cotensor(m, &g.source)?;
    let my = cotensor(m, &g.target)?;
    let amb = Matrix::identity(m.field(), m.dim()).kron(&g.matrix).mul(&mx.inclusion());
    let matrix = corestrict(&amb, &my.subspace, 1, 1)?;
    ColinearMap::new(mx.module, my.module, matrix)
}

/// `f □ id_P : X □ P → Y □ P`.
pub fn whisker_right(g: &ColinearMap, p: &Bicomodule) -> Result<ColinearMap, ComoduleError> {
    let xp = cotensor(&g.source, p)?;
    let yp = cotensor(&g.target, p)?;
    let amb = g.matrix.kron(&Matrix::identity(p.field(), p.dim())).mul(&xp.inclusion());
    let matrix = corestrict(&amb, &yp.subspace, 1, 1)?;
    ColinearMap::new(xp.module, yp.module, matrix)
}

/// The associator `(M □ N) □ P → M □ (N □ P)`, a restriction of the identity of `M ⊗ N ⊗ P`.
pub fn associator(m: &Bicomodule, n: &Bicomodule, p: &Bicomodule) -> Result<ColinearMap, ComoduleError> {
    let f = m.field();
    let mn = cotensor(m, n)?;
    let mn_p = cotensor(&mn.module, p)?;
    let np = cotensor(n, p)?;
    let m_np = cotensor(m, &np.module)?;
    let j1 = mn.inclusion().kron(&Matrix::identity(f, p.dim())).mul(&mn_p.inclusion());
    let j2 = Matrix::identity(f, m.dim()).kron(&np.inclusion()).mul(&m_np.inclusion());
    if Subspace::image(&j1) != Subspace::image(&j2) {
        return Err(ComoduleError::Internal("triple cotensor subspaces differ".into()));
    }
    let a = linear_solve(&j2, &j1)?;
    ColinearMap::new(mn_p.module, m_np.module, a)
}

/// `ℓ : C □_C M → M`, `c ⊗ m ↦ ε(c) m`.
pub fn left_unitor(m: &Bicomodule) -> Result<ColinearMap, ComoduleError> {
    let cm = cotensor(&Bicomodule::regular(&m.left), m)?;
    let f = m.field();
    let mat = m.left.counit().kron(&Matrix::identity(f, m.dim())).mul(&cm.inclusion());
    ColinearMap::new(cm.module, m.clone(), mat)
}

/// `r : M □_D D → M`, `m ⊗ d ↦ ε(d) m`.
pub fn right_unitor(m: &Bicomodule) -> Result<ColinearMap, ComoduleError> {
    let md = cotensor(m, &Bicomodule::regular(&m.right))?;
    let f = m.field();
    let mat = Matrix::identity(f, m.dim()).kron(m.right.counit()).mul(&md.inclusion());
    ColinearMap::new(md.module, m.clone(), mat)
}

/// Pentagon for a composable chain of four bicomodules.
pub fn pentagon(m: &Bicomodule, n: &Bicomodule, p: &Bicomodule, q: &Bicomodule) -> Result<bool, ComoduleError> {
    let mn = cotensor(m, n)?.module;
    let pq = cotensor(p, q)?.module;
    let np = cotensor(n, p)?.module;
    let top = associator(m, n, &pq)?.compose(&associator(&mn, p, q)?);
    let a_mnp_q = whisker_right(&associator(m, n, p)?, q)?;
    let a_m_np_q = associator(m, &np, q)?;
    let m_a_npq = whisker_left(m, &associator(n, p, q)?)?;
    let bottom = m_a_npq.compose(&a_m_np_q).compose(&a_mnp_q);
    Ok(top.matrix == bottom.matrix)
}

/// Triangle `(id □ ℓ) ∘ a = r □ id` on `(M □ D) □ N`.
pub fn triangle(m: &Bicomodule, n: &Bicomodule) -> Result<bool, ComoduleError> {
    let d = Bicomodule::regular(&m.right);
    let lhs = whisker_left(m, &left_unitor(n)?)?.compose(&associator(m, &d, n)?);
    let rhs = whisker_right(&right_unitor(m)?, n)?;
    Ok(lhs.matrix == rhs.matrix)
}

/// Basis of the bicolinear maps `M → N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    /// Subspace of `k^{dim N · dim M}`; a map `F` is flattened row-major.
    pub subspace: Subspace,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub(crate) fn flatten(m: &Matrix) -> Vec<(usize, Scalar)> {
    let c = m.cols();
    m.entries().map(|(i, j, v)| (i * c + j, v.clone())).collect()
}

pub(crate) fn unflatten(field: Field, rows: usize, cols: usize, v: &[(usize, Scalar)]) -> Matrix {
    Matrix::from_triplets(field, rows, cols, v.iter().map(|(k, x)| (k / cols, k % cols, x.clone())))
}

/// Kernel of a linear condition on `rows × cols` matrices given by its values on matrix units.
pub(crate) fn solve_matrix_conditions(
    field: Field,
    rows: usize,
    cols: usize,
    condition: impl Fn(&Matrix) -> Vec<Matrix>,
) -> HomSpace {
    let mut columns = Vec::with_capacity(rows * cols);
    let mut height = 0;
    for i in 0..rows {
        for j in 0..cols {
            let e = Matrix::from_triplets(field, rows, cols, [(i, j, field.one())]);
            let mut col = Vec::new();
            let mut offset = 0;
            for r in condition(&e) {
                col.extend(flatten(&r).into_iter().map(|(k, v)| (k + offset, v)));
                offset += r.rows() * r.cols();
            }
            height = offset;
            columns.push(col);
        }
    }
    let system = Matrix::from_triplets(
        field,
        height,
        rows * cols,
        columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone()))),
    );
    let subspace = Subspace::kernel(&system);
    let basis = subspace
        .basis()
        .sparse_rows()
        .iter()
        .map(|r| unflatten(field, rows, cols, r))
        .collect();
    HomSpace { subspace, basis }
}

pub fn hom_colinear(m: &Bicomodule, n: &Bicomodule) -> Result<HomSpace, ComoduleError> {
    if !same_coalgebra(&m.left, &n.left) || !same_coalgebra(&m.right, &n.right) {
        return Err(ComoduleError::CoalgebraMismatch);
    }
    let f = m.field();
    let ic = Matrix::identity(f, m.left.dim());
    let id = Matrix::identity(f, m.right.dim());
    Ok(solve_matrix_conditions(f, n.dim(), m.dim(), |e| {
        vec![
            n.lambda.mul(e).sub(&ic.kron(e).mul(&m.lambda)),
            n.rho.mul(e).sub(&e.kron(&id).mul(&m.rho)),
        ]
    }))
}

/// A colinear embedding of a left comodule into a cofree one with a colinear retraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub cofree: Bicomodule,
    pub embedding: ColinearMap,
    pub section: ColinearMap,
}

/// Embeds a left `C`-comodule into `C^{⊕ dim M}` through `λ` and searches for a colinear section.
pub fn injective_splitting(m: &Bicomodule) -> Result<Splitting, ComoduleError> {
    if m.right.dim() != 1 {
        return Err(ComoduleError::CoalgebraMismatch);
    }
    let f = m.field();
    let cofree = Bicomodule::cofree(&m.left, m.dim(), &m.right);
    let embedding = ColinearMap::new(m.clone(), cofree.clone(), m.lambda.clone())?;
    let homs = hom_colinear(&cofree, m)?;
    // Σ x_k B_k e = id, flattened.
    let n = m.dim();
    let cols: Vec<Vec<(usize, Scalar)>> = homs.basis.iter().map(|b| flatten(&b.mul(&m.lambda))).collect();
    let system = Matrix::from_triplets(
        f,
        n * n,
        cols.len(),
        cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone()))),
    );
    let target = Matrix::column_vector(f, flatten_dense(&Matrix::identity(f, n)));
    let x = match linear_solve(&system, &target) {
        Ok(x) => x,
        Err(LinalgError::NoSolution) => return Err(ComoduleError::NotInjective),
        Err(e) => return Err(e.into()),
    };
    let mut s = Matrix::zeros(f, n, cofree.dim());
    for (k, b) in homs.basis.iter().enumerate() {
        s = s.add(&b.scale(&x.get(k, 0)));
    }
    let section = ColinearMap::new(cofree.clone(), m.clone(), s)?;
    Ok(Splitting { cofree, embedding, section })
}

fn flatten_dense(m: &Matrix) -> Vec<Scalar> {
    let mut v = vec![m.field().zero(); m.rows() * m.cols()];
    for (k, x) in flatten(m) {
        v[k] = x;
    }
    v
}

/// The map induced on `coHH₀` by a bicolinear map between `(C, C)`-bicomodules.
pub fn shadow_map(g: &ColinearMap) -> Result<Matrix, ComoduleError> {
    let src = g.source.cohh0_coeff()?;
    let tgt = g.target.cohh0_coeff()?;
    corestrict(&g.matrix.mul(&src.inclusion()), &tgt, 1, 1)
}

/// `θ : coHH₀(M □_D N, C) → coHH₀(N □_C M, D)` induced by the swap `M ⊗ N → N ⊗ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowIso {
    pub source: CotensorModule,
    pub target: CotensorModule,
    pub source_kernel: Subspace,
    pub target_kernel: Subspace,
    /// In the canonical kernel bases.
    pub matrix: Matrix,
}

pub fn shadow_theta(m: &Bicomodule, n: &Bicomodule) -> Result<ShadowIso, ComoduleError> {
    if !same_coalgebra(&m.right, &n.left) || !same_coalgebra(&n.right, &m.left) {
        return Err(ComoduleError::CoalgebraMismatch);
    }
    let f = m.field();
    let mn = cotensor(m, n)?;
    let nm = cotensor(n, m)?;
    let k1 = mn.module.cohh0_coeff()?;
    let k2 = nm.module.cohh0_coeff()?;
    let ambient = Matrix::swap(f, m.dim(), n.dim()).mul(&mn.inclusion()).mul(&k1.inclusion());
    let in_nm = corestrict(&ambient, &nm.subspace, 1, 1)?;
    let matrix = corestrict(&in_nm, &k2, 1, 1)?;
    Ok(ShadowIso { source: mn, target: nm, source_kernel: k1, target_kernel: k2, matrix })
}

/// Results of the shadow coherence checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub bijective: bool,
    pub involutive: bool,
    pub hexagon: Option<bool>,
    pub unit: Option<bool>,
}

impl ShadowReport {
    pub fn all_pass(&self) -> bool {
        self.bijective && self.involutive && self.hexagon != Some(false) && self.unit != Some(false)
    }
}

/// `⟨⟨a⁻¹⟩⟩ ∘ θ = θ ∘ ⟨⟨a⟩⟩ ∘ θ ∘ ⟨⟨a⟩⟩` on `⟨⟨(M □ N) □ P⟩⟩`.
pub fn shadow_hexagon(m: &Bicomodule, n: &Bicomodule, p: &Bicomodule) -> Result<bool, ComoduleError> {
    let mn = cotensor(m, n)?.module;
    let np = cotensor(n, p)?.module;
    let pm = cotensor(p, m)?.module;
    let theta1 = shadow_theta(&mn, p)?.matrix;
    let a_pmn = associator(p, m, n)?;
    let a_inv = shadow_map(&a_pmn)?.inverse()?;
    let lhs = a_inv.mul(&theta1);
    let a_mnp = shadow_map(&associator(m, n, p)?)?;
    let theta2 = shadow_theta(m, &np)?.matrix;
    let a_npm = shadow_map(&associator(n, p, m)?)?;
    let theta3 = shadow_theta(n, &pm)?.matrix;
    let rhs = theta3.mul(&a_npm).mul(&theta2).mul(&a_mnp);
    Ok(lhs == rhs)
}

/// `⟨⟨ℓ⟩⟩ ∘ θ = ⟨⟨r⟩⟩` on `⟨⟨Q □ C⟩⟩` and `⟨⟨r⟩⟩ ∘ θ = ⟨⟨ℓ⟩⟩` on `⟨⟨C □ Q⟩⟩`.
pub fn shadow_unit(q: &Bicomodule) -> Result<bool, ComoduleError> {
    let c = Bicomodule::regular(q.left());
    let l = shadow_map(&left_unitor(q)?)?;
    let r = shadow_map(&right_unitor(q)?)?;
    let first = l.mul(&shadow_theta(q, &c)?.matrix) == r;
    let second = r.mul(&shadow_theta(&c, q)?.matrix) == l;
    Ok(first && second)
}

/// θ bijectivity and involutivity, plus the hexagon when a third bicomodule closes the cycle.
pub fn shadow_report(m: &Bicomodule, n: &Bicomodule, p: Option<&Bicomodule>) -> Result<ShadowReport, ComoduleError> {
    let theta = shadow_theta(m, n)?;
    let back = shadow_theta(n, m)?;
    let bijective = theta.matrix.is_invertible();
    let f = m.field();
    let involutive = back.matrix.mul(&theta.matrix) == Matrix::identity(f, theta.source_kernel.dim());
    let hexagon = match p {
        Some(p) => Some(shadow_hexagon(m, n, p)?),
        None => None,
    };
    let unit = Some(shadow_unit(&theta.source.module)?);
    Ok(ShadowReport {
        source_dim: theta.source_kernel.dim(),
        target_dim: theta.target_kernel.dim(),
        bijective,
        involutive,
        hexagon,
        unit,
    })
}

/// The left `C*`-module attached to a right `C`-comodule: `f · m = Σ m₀ f(m₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    pub algebra: crate::coalgebra::AlgebraDual,
    /// `actions[k]` is the action of the `k`-th dual basis vector.
    pub actions: Vec<Matrix>,
}

pub fn comodule_to_module(m: &Bicomodule) -> Result<ModuleAction, ComoduleError> {
    if m.left.dim() != 1 {
        return Err(ComoduleError::CoalgebraMismatch);
    }
    let f = m.field();
    let d = m.right.dim();
    let n = m.dim();
    let actions = (0..d)
        .map(|k| {
            let fk = Matrix::row_vector(f, (0..d).map(|j| if j == k { f.one() } else { f.zero() }).collect());
            Matrix::identity(f, n).kron(&fk).mul(&m.rho)
        })
        .collect();
    Ok(ModuleAction { algebra: m.right.dual_algebra(), actions })
}

impl ModuleAction {
    pub fn dim(&self) -> usize {
        self.actions.first().map_or(0, |a| a.rows())
    }

    /// Action of an arbitrary element given as a column vector.
    pub fn act(&self, f: &Matrix) -> Matrix {
        let field = self.algebra.field;
        let n = self.dim();
        let mut out = Matrix::zeros(field, n, n);
        for (k, a) in self.actions.iter().enumerate() {
            let c = f.get(k, 0);
            out = out.add(&a.scale(&c));
        }
        out
    }

    /// `(f·g)·m = f·(g·m)` on basis pairs and `ε` acting as the identity.
    pub fn is_module(&self) -> bool {
        let a = &self.algebra;
        let n = self.dim();
        for i in 0..a.dim {
            for j in 0..a.dim {
                let prod = a.product(&a.basis_vector(i), &a.basis_vector(j));
                if self.act(&prod) != self.actions[i].mul(&self.actions[j]) {
                    return false;
                }
            }
        }
        self.act(&a.unit) == Matrix::identity(a.field, n)
    }

    /// Module homomorphisms into another module over the same algebra.
    pub fn hom(&self, other: &ModuleAction) -> HomSpace {
        let f = self.algebra.field;
        solve_matrix_conditions(f, other.dim(), self.dim(), |e| {
            self.actions
                .iter()
                .zip(&other.actions)
                .map(|(a, b)| b.mul(e).sub(&e.mul(a)))
                .collect()
        })
    }
}
