//! Named example objects and seeded random instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coalgebra::FinCoalgebra;
use crate::comodule::{hom_colinear, Bicomodule, ComoduleError};
use crate::linalg::{Field, Matrix, Scalar};

/// The pool `K`, `G2`, `Sw`, `M2c`.
pub fn corpus_coalgebras(field: Field) -> Vec<(&'static str, Arc<FinCoalgebra>)> {
    vec![
        ("K", Arc::new(FinCoalgebra::trivial(field))),
        ("G2", Arc::new(FinCoalgebra::grouplike(field, &["g", "h"]).expect("G2"))),
        ("Sw", Arc::new(FinCoalgebra::sweedler(field))),
        ("M2c", Arc::new(FinCoalgebra::comatrix(field, 2))),
    ]
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn idx(c: &FinCoalgebra, label: &str) -> usize {
    c.index_of(label).unwrap_or_else(|| panic!("no basis element {label}"))
}

/// `λ(1) = σ ⊗ 1` for a grouplike `σ`.
pub fn left_character(c: &Arc<FinCoalgebra>, grouplike: &str) -> Bicomodule {
    let m = Matrix::unit_column(c.field(), c.dim(), idx(c, grouplike));
    Bicomodule::left_comodule(c, labels(&["1"]), m).expect("left character")
}

/// `ρ(1) = 1 ⊗ σ` for a grouplike `σ`.
pub fn right_character(c: &Arc<FinCoalgebra>, grouplike: &str) -> Bicomodule {
    let m = Matrix::unit_column(c.field(), c.dim(), idx(c, grouplike));
    Bicomodule::right_comodule(c, labels(&["1"]), m).expect("right character")
}

/// Over `Sw`: `λ(u) = b ⊗ u`, `λ(w) = a ⊗ w + x ⊗ u`.
pub fn sweedler_left_two(c: &Arc<FinCoalgebra>) -> Bicomodule {
    let f = c.field();
    let (a, b, x) = (idx(c, "a"), idx(c, "b"), idx(c, "x"));
    let lam = Matrix::from_triplets(f, 3 * 2, 2, [(b * 2, 0, f.one()), (a * 2 + 1, 1, f.one()), (x * 2, 1, f.one())]);
    Bicomodule::left_comodule(c, labels(&["u", "w"]), lam).expect("L2")
}

/// Over `Sw`: `ρ(u) = u ⊗ a`, `ρ(w) = w ⊗ b + u ⊗ x`; a non-split extension of `k_b` by `k_a`.
pub fn sweedler_right_two(c: &Arc<FinCoalgebra>) -> Bicomodule {
    let f = c.field();
    let (a, b, x) = (idx(c, "a"), idx(c, "b"), idx(c, "x"));
    let rho = Matrix::from_triplets(f, 2 * 3, 2, [(a, 0, f.one()), (3 + b, 1, f.one()), (x, 1, f.one())]);
    Bicomodule::right_comodule(c, labels(&["u", "w"]), rho).expect("R2")
}

/// Over `M_n^c(k)`: `ρ(v_j) = Σ_i v_i ⊗ E_ij`.
pub fn comatrix_row(c: &Arc<FinCoalgebra>, n: usize) -> Bicomodule {
    let f = c.field();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i * n * n + i * n + j, j, f.one())));
    let l = (1..=n).map(|i| format!("v{i}")).collect();
    Bicomodule::right_comodule(c, l, Matrix::from_triplets(f, n * n * n, n, entries)).expect("row comodule")
}

/// Over `M_n^c(k)`: `λ(v_i) = Σ_j E_ij ⊗ v_j`.
pub fn comatrix_column(c: &Arc<FinCoalgebra>, n: usize) -> Bicomodule {
    let f = c.field();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| ((i * n + j) * n + j, i, f.one())));
    let l = (1..=n).map(|i| format!("v{i}")).collect();
    Bicomodule::left_comodule(c, l, Matrix::from_triplets(f, n * n * n, n, entries)).expect("column comodule")
}

/// Catalog of small indecomposable left comodules over a pool coalgebra.
pub fn left_pieces(name: &str, c: &Arc<FinCoalgebra>) -> Vec<Bicomodule> {
    match name {
        "G2" => vec![left_character(c, "g"), left_character(c, "h")],
        "Sw" => vec![left_character(c, "a"), left_character(c, "b"), sweedler_left_two(c)],
        "M2c" => vec![comatrix_column(c, 2)],
        _ => vec![Bicomodule::cofree(c, 1, &Arc::new(FinCoalgebra::trivial(c.field())))],
    }
}

pub fn right_pieces(name: &str, c: &Arc<FinCoalgebra>) -> Vec<Bicomodule> {
    match name {
        "G2" => vec![right_character(c, "g"), right_character(c, "h")],
        "Sw" => vec![right_character(c, "a"), right_character(c, "b"), sweedler_right_two(c)],
        "M2c" => vec![comatrix_row(c, 2)],
        _ => vec![Bicomodule::cofree(&Arc::new(FinCoalgebra::trivial(c.field())), 1, c)],
    }
}

/// `L ⊗ R` with `λ = λ_L ⊗ id` and `ρ = id ⊗ ρ_R`.
pub fn outer_product(l: &Bicomodule, r: &Bicomodule) -> Result<Bicomodule, ComoduleError> {
    let f = l.field();
    let lab = l
        .labels()
        .iter()
        .flat_map(|a| r.labels().iter().map(move |b| format!("{a}⊗{b}")))
        .collect();
    Bicomodule::new(
        l.left().clone(),
        r.right().clone(),
        lab,
        l.lambda().kron(&Matrix::identity(f, r.dim())),
        Matrix::identity(f, l.dim()).kron(r.rho()),
    )
}

pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_matrix<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| random_scalar(field, rng)).collect())
        .collect();
    Matrix::from_dense(field, data, cols)
}

pub fn random_invertible<R: Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random combination of a basis of colinear maps `M → N`.
pub fn random_colinear<R: Rng>(m: &Bicomodule, n: &Bicomodule, rng: &mut R) -> Result<Matrix, ComoduleError> {
    let f = m.field();
    let homs = hom_colinear(m, n)?;
    let mut out = Matrix::zeros(f, n.dim(), m.dim());
    for b in &homs.basis {
        out = out.add(&b.scale(&random_scalar(f, rng)));
    }
    Ok(out)
}

/// A random colinear automorphism.
pub fn random_automorphism<R: Rng>(m: &Bicomodule, rng: &mut R) -> Result<Matrix, ComoduleError> {
    let homs = hom_colinear(m, m)?;
    loop {
        let f = m.field();
        let mut out = Matrix::zeros(f, m.dim(), m.dim());
        for b in &homs.basis {
            out = out.add(&b.scale(&random_scalar(f, rng)));
        }
        if out.is_invertible() {
            return Ok(out);
        }
    }
}

/// Direct sum of catalog pieces `L ⊗ R` of total dimension at most `max_dim`, in a random basis.
pub fn random_bicomodule<R: Rng>(
    (cn, c): (&str, &Arc<FinCoalgebra>),
    (dn, d): (&str, &Arc<FinCoalgebra>),
    max_dim: usize,
    rng: &mut R,
) -> Result<Bicomodule, ComoduleError> {
    let lefts = left_pieces(cn, c);
    let rights = right_pieces(dn, d);
    let mut pieces = Vec::new();
    for l in &lefts {
        for r in &rights {
            if l.dim() * r.dim() <= max_dim {
                pieces.push((l, r));
            }
        }
    }
    let count = rng.gen_range(1..=2);
    let mut total: Option<Bicomodule> = None;
    for _ in 0..count {
        let room = max_dim - total.as_ref().map_or(0, |t| t.dim());
        let fitting: Vec<_> = pieces.iter().filter(|(l, r)| l.dim() * r.dim() <= room).collect();
        let Some((l, r)) = fitting.choose(rng) else { break };
        let piece = outer_product(l, r)?;
        total = Some(match total {
            None => piece,
            Some(t) => t.direct_sum(&piece)?,
        });
    }
    let total = total.ok_or_else(|| ComoduleError::Shape(format!("no ({cn}, {dn}) catalog bicomodule of dimension at most {max_dim}")))?;
    let p = random_invertible(c.field(), total.dim(), rng);
    total.change_basis(&p)
}

pub fn random_right_comodule<R: Rng>(name: &str, c: &Arc<FinCoalgebra>, max_dim: usize, rng: &mut R) -> Result<Bicomodule, ComoduleError> {
    let k = Arc::new(FinCoalgebra::trivial(c.field()));
    random_bicomodule(("K", &k), (name, c), max_dim, rng)
}

pub fn random_left_comodule<R: Rng>(name: &str, c: &Arc<FinCoalgebra>, max_dim: usize, rng: &mut R) -> Result<Bicomodule, ComoduleError> {
    let k = Arc::new(FinCoalgebra::trivial(c.field()));
    random_bicomodule((name, c), ("K", &k), max_dim, rng)
}
