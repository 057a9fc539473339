#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// Golden CLI invocations: name, arguments, expected exit code.
pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("check_g2", &["check", "data/g2.json"], 0),
    ("check_sw_f5", &["check", "data/sw.json", "--field", "fp:5"], 0),
    ("check_spheres", &["check", "data/spheres.json"], 0),
    ("cohh0_m2c", &["cohh0", "data/m2c.json", "M2c"], 0),
    ("cohh0_m2c_g2", &["cohh0", "data/m2c_g2.json", "M2cG2"], 0),
    ("cohh0_coeff_g2", &["cohh0-coeff", "data/g2.json", "G2_regular"], 0),
    ("cotensor_g2", &["cotensor", "data/g2.json", "kg", "G2_regular"], 0),
    ("cotrace_identity", &["cotrace", "data/m2c.json", "M2c", "identity_element"], 0),
    ("cotrace_e11", &["cotrace", "data/m2c.json", "M2c", "E11_element"], 3),
    ("cotrace_hs", &["cotrace", "data/g2.json", "kg_left", "scale_left"], 0),
    ("trace_g2", &["trace", "data/g2.json", "V", "diag"], 0),
    ("trace_sw", &["trace", "data/sw.json", "R2", "twice"], 0),
    ("shadow_g2", &["shadow", "data/g2.json", "G2_regular", "G2_regular", "--p", "G2_regular"], 0),
    ("dual_pair_cofree", &["dual-pair", "data/g2.json", "cofree", "G2", "K", "--v", "2"], 0),
    ("dual_pair_injective", &["dual-pair", "data/sw.json", "injective", "ka_left"], 0),
    ("dual_pair_comatrix", &["dual-pair", "data/g2.json", "comatrix", "G2", "--n", "2"], 0),
    ("bicat_trace_findim", &["bicat-trace", "data/g2.json", "V", "diag"], 0),
    ("bicat_trace_injective", &["bicat-trace", "data/m2c.json", "column", "scale_column"], 0),
    ("cyclicity_g2", &["cyclicity", "data/g2.json", "project", "include"], 0),
    ("morita_g2", &["morita", "data/g2.json", "G2", "--n", "3"], 0),
    ("cobar_s2", &["cobar", "data/spheres.json", "S2_right", "S2", "S2_left", "--max-degree", "4"], 0),
    ("cotor_s2", &["cotor", "data/spheres.json", "k", "S2", "k"], 0),
    ("cotor_s3", &["cotor", "data/spheres.json", "k", "S3", "k"], 0),
    ("cohh_s2", &["cohh", "data/spheres.json", "S2", "--max-degree", "6"], 0),
    ("cohh_envelope_s2", &["cohh-envelope", "data/spheres.json", "S2", "--max-degree", "6"], 0),
    ("derived_shadow_s3", &["derived-shadow", "data/spheres.json", "S3_regular", "S3_regular", "--max-degree", "4"], 0),
    ("to_module_sw", &["to-module", "data/sw.json", "R2"], 0),
    ("random_shadow_f7", &["random-shadow", "--seed", "7", "--count", "6", "--field", "fp:7"], 0),
    ("not_simply_connected", &["cohh", "data/g2.json", "G2", "--max-degree", "2"], 2),
    ("unknown_name", &["cohh0", "data/g2.json", "G3"], 4),
    ("parse_error", &["check", "tests/fixtures/truncated.json"], 2),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn run_cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cohh"))
        .args(args)
        .arg("--json-only")
        .current_dir(manifest_dir())
        .output()
        .expect("cohh binary runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: out.stdout, stderr: out.stderr }
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests").join("golden").join(format!("{name}.json"))
}

/// Compares against the checked-in golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(path: &Path, actual: &[u8]) -> Result<(), String> {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs from the golden file", path.display()))
    }
}
