//! Example documents shipped under `data/`.

use std::sync::Arc;

use crate::coalgebra::FinCoalgebra;
use crate::comodule::Bicomodule;
use crate::dg::{GradedBicomodule, GradedCoalgebra};
use crate::document::Document;
use crate::instances::{comatrix_column, comatrix_row, left_character, right_character, sweedler_left_two, sweedler_right_two};
use crate::linalg::{Field, Matrix};

pub const NAMES: &[&str] = &["k", "g2", "sw", "m2c", "m2c_g2", "spheres", "envelope"];

pub fn bundled(name: &str, field: Field) -> Option<Document> {
    let doc = match name {
        "k" => trivial(field),
        "g2" => grouplike(field),
        "sw" => sweedler(field),
        "m2c" => comatrix(field),
        "m2c_g2" => comatrix_over_grouplike(field),
        "spheres" => spheres(field),
        "envelope" => envelope(field),
        _ => return None,
    };
    Some(doc)
}

fn diag(field: Field, values: &[i64]) -> Matrix {
    Matrix::from_triplets(field, values.len(), values.len(), values.iter().enumerate().map(|(i, v)| (i, i, field.from_i64(*v))))
}

fn trivial(field: Field) -> Document {
    let mut doc = Document::new(field);
    let k = doc.add_coalgebra("K", FinCoalgebra::trivial(field));
    doc.add_bicomodule("V", None, Some("K"), Bicomodule::cofree(&Arc::new(FinCoalgebra::trivial(field)), 2, &k));
    doc.add_map("f", "V", "V", Matrix::from_i64(field, &[vec![1, 2], vec![3, 4]]));
    doc
}

fn grouplike(field: Field) -> Document {
    let mut doc = Document::new(field);
    doc.add_coalgebra("K", FinCoalgebra::trivial(field));
    let g = doc.add_coalgebra("G2", FinCoalgebra::grouplike(field, &["g", "h"]).expect("G2"));
    doc.add_bicomodule("kg", None, Some("G2"), right_character(&g, "g"));
    doc.add_bicomodule("kh", None, Some("G2"), right_character(&g, "h"));
    doc.add_bicomodule("kg_left", Some("G2"), None, left_character(&g, "g"));
    let v = right_character(&g, "g").direct_sum(&right_character(&g, "h")).expect("sum");
    let v = v.with_labels(vec!["vg".into(), "vh".into()]).expect("labels");
    doc.add_bicomodule("V", None, Some("G2"), v);
    doc.add_bicomodule("G2_regular", Some("G2"), Some("G2"), Bicomodule::regular(&g));
    doc.add_map("scale", "kg", "kg", Matrix::from_i64(field, &[vec![3]]));
    doc.add_map("scale_left", "kg_left", "kg_left", Matrix::from_i64(field, &[vec![2]]));
    doc.add_map("diag", "V", "V", diag(field, &[2, -1]));
    doc.add_map("project", "V", "kg", Matrix::from_i64(field, &[vec![1, 0]]));
    doc.add_map("include", "kg", "V", Matrix::from_i64(field, &[vec![5], vec![0]]));
    doc.add_map("g_element", "K", "G2", Matrix::from_i64(field, &[vec![1], vec![0]]));
    doc
}

fn sweedler(field: Field) -> Document {
    let mut doc = Document::new(field);
    doc.add_coalgebra("K", FinCoalgebra::trivial(field));
    let sw = doc.add_coalgebra("Sw", FinCoalgebra::sweedler(field));
    doc.add_bicomodule("ka", None, Some("Sw"), right_character(&sw, "a"));
    doc.add_bicomodule("kb", None, Some("Sw"), right_character(&sw, "b"));
    doc.add_bicomodule("R2", None, Some("Sw"), sweedler_right_two(&sw));
    doc.add_bicomodule("ka_left", Some("Sw"), None, left_character(&sw, "a"));
    doc.add_bicomodule("kb_left", Some("Sw"), None, left_character(&sw, "b"));
    doc.add_bicomodule("L2", Some("Sw"), None, sweedler_left_two(&sw));
    doc.add_map("sub", "ka", "R2", Matrix::from_i64(field, &[vec![1], vec![0]]));
    doc.add_map("quot", "R2", "kb", Matrix::from_i64(field, &[vec![0, 1]]));
    doc.add_map("twice", "R2", "R2", diag(field, &[2, 2]));
    doc.add_map("once_left", "ka_left", "ka_left", Matrix::from_i64(field, &[vec![1]]));
    doc.add_map("x_element", "K", "Sw", Matrix::unit_column(field, sw.dim(), sw.index_of("x").unwrap()));
    doc.add_sequence("extension", "sub", "quot", Some("twice"));
    doc
}

fn comatrix(field: Field) -> Document {
    let mut doc = Document::new(field);
    doc.add_coalgebra("K", FinCoalgebra::trivial(field));
    let c = doc.add_coalgebra("M2c", FinCoalgebra::comatrix(field, 2));
    doc.add_bicomodule("row", None, Some("M2c"), comatrix_row(&c, 2));
    doc.add_bicomodule("column", Some("M2c"), None, comatrix_column(&c, 2));
    doc.add_bicomodule("M2c_regular", Some("M2c"), Some("M2c"), Bicomodule::regular(&c));
    doc.add_map("scale", "row", "row", diag(field, &[3, 3]));
    doc.add_map("scale_column", "column", "column", diag(field, &[1, 1]));
    let (e11, e22) = (c.index_of("E11").unwrap(), c.index_of("E22").unwrap());
    let element = |idx: &[usize]| Matrix::from_triplets(field, 4, 1, idx.iter().map(|&i| (i, 0, field.one())));
    doc.add_map("E11_element", "K", "M2c", element(&[e11]));
    doc.add_map("identity_element", "K", "M2c", element(&[e11, e22]));
    doc
}

fn comatrix_over_grouplike(field: Field) -> Document {
    let mut doc = Document::new(field);
    let g = FinCoalgebra::grouplike(field, &["g", "h"]).expect("G2");
    doc.add_coalgebra("G2", g.clone());
    doc.add_coalgebra("M2cG2", FinCoalgebra::comatrix_over(&g, 2));
    doc
}

fn spheres(field: Field) -> Document {
    let mut doc = Document::new(field);
    let s2 = doc.add_graded_coalgebra("S2", GradedCoalgebra::exterior(field, 2).expect("S2"));
    let s3 = doc.add_graded_coalgebra("S3", GradedCoalgebra::exterior(field, 3).expect("S3"));
    doc.add_graded_coalgebra("D", GradedCoalgebra::disk(field).expect("disk"));
    doc.add_graded_bicomodule("S2_regular", Some("S2"), Some("S2"), GradedBicomodule::regular(&s2));
    doc.add_graded_bicomodule("S3_regular", Some("S3"), Some("S3"), GradedBicomodule::regular(&s3));
    doc.add_graded_bicomodule("S2_right", None, Some("S2"), GradedBicomodule::regular_right(&s2));
    doc.add_graded_bicomodule("S2_left", Some("S2"), None, GradedBicomodule::regular_left(&s2));
    doc
}

fn envelope(field: Field) -> Document {
    let mut doc = Document::new(field);
    let s2 = doc.add_graded_coalgebra("S2", GradedCoalgebra::exterior(field, 2).expect("S2"));
    let e = doc.add_graded_coalgebra("S2e", s2.envelope().expect("envelope"));
    let reg = GradedBicomodule::regular(&s2);
    doc.add_graded_bicomodule("S2_regular", Some("S2"), Some("S2"), reg.clone());
    doc.add_graded_bicomodule("S2_as_right", None, Some("S2e"), reg.right_envelope(&e).expect("right envelope"));
    doc.add_graded_bicomodule("S2_as_left", Some("S2e"), None, reg.left_envelope(&e).expect("left envelope"));
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundle_round_trips() {
        for field in [Field::Rationals, Field::prime(7).unwrap()] {
            for name in NAMES {
                let doc = bundled(name, field).unwrap();
                let back = Document::parse(&doc.to_json(), None).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert_eq!(doc, back, "{name}");
            }
        }
    }
}
