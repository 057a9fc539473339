//! Command-line front end. Every command prints one JSON report on stdout.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bundled;
use crate::coalgebra::FinCoalgebra;
use crate::comodule::{comodule_to_module, cotensor, shadow_report, Bicomodule, Side};
use crate::dg::{self, GradedBicomodule, GradedCoalgebra, HomologyReport};
use crate::document::{Document, DocumentError, MapEntry, SequenceEntry};
use crate::instances;
use crate::linalg::{format_combination, linear_solve, Field, Matrix, Subspace};
use crate::traces::{self, DualPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FALSE: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cohh", version, about = "Exact coHochschild homology, cotraces and colinear traces")]
pub struct Cli {
    /// Ground field, `q` or `fp:<p>`; overrides the document.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for commands that draw random instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Do not print the summary on stderr.
    #[arg(long = "json-only", global = true)]
    pub json_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Cofree,
    Findim,
    Injective,
    Comatrix,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a document and list its objects.
    Check { document: PathBuf },
    /// `coHH₀` of a coalgebra.
    Cohh0 { document: PathBuf, coalgebra: String },
    /// `coHH₀` of a bicomodule over `(C, C)`.
    #[command(name = "cohh0-coeff")]
    Cohh0Coeff { document: PathBuf, module: String },
    /// Cotensor product of two bicomodules.
    Cotensor { document: PathBuf, left: String, right: String },
    /// Cocyclicity of `T : V → C`, or the cotrace of an endomorphism of an injective left comodule.
    Cotrace { document: PathBuf, object: String, map: String },
    /// Colinear trace of an endomorphism of a right comodule.
    Trace { document: PathBuf, module: String, map: String },
    /// Shadow isomorphism checks for `M □ N`.
    Shadow {
        document: PathBuf,
        left: String,
        right: String,
        /// Third bicomodule for the hexagon check.
        #[arg(long)]
        p: Option<String>,
    },
    /// Build a dual pair and check both triangle identities.
    DualPair {
        document: PathBuf,
        kind: PairKind,
        names: Vec<String>,
        /// Dimension of the cofree generator.
        #[arg(long, default_value_t = 1)]
        v: usize,
        /// Size of the comatrix coalgebra.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Bicategorical trace of an endomorphism of a dualizable comodule.
    BicatTrace { document: PathBuf, module: String, map: String },
    /// `tr(f g) = tr(g f)` for `f : M → N`, `g : N → M`.
    Cyclicity { document: PathBuf, f: String, g: String },
    /// Morita data of `C` and `M_n^c(C)`.
    Morita {
        document: PathBuf,
        coalgebra: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Chain groups of the conormalized cobar complex.
    Cobar {
        document: PathBuf,
        left: String,
        coalgebra: String,
        right: String,
        #[arg(long = "max-degree", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// Cotor through a bounded degree.
    Cotor {
        document: PathBuf,
        left: String,
        coalgebra: String,
        right: String,
        #[arg(long = "max-degree", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// coHochschild homology through a bounded degree.
    Cohh {
        document: PathBuf,
        coalgebra: String,
        /// Coefficients; the regular bicomodule when absent.
        #[arg(long)]
        module: Option<String>,
        #[arg(long = "max-degree", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// coHochschild homology as Cotor over the envelope.
    CohhEnvelope {
        document: PathBuf,
        coalgebra: String,
        #[arg(long = "max-degree", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// Derived shadow isomorphism through a bounded degree.
    DerivedShadow {
        document: PathBuf,
        left: String,
        right: String,
        #[arg(long = "max-degree", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// The dual module of a right comodule.
    ToModule { document: PathBuf, module: String },
    /// Shadow checks on seeded random bicomodules.
    RandomShadow {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Print a bundled example document.
    Example { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Cohh0 { .. } => "cohh0",
            Command::Cohh0Coeff { .. } => "cohh0-coeff",
            Command::Cotensor { .. } => "cotensor",
            Command::Cotrace { .. } => "cotrace",
            Command::Trace { .. } => "trace",
            Command::Shadow { .. } => "shadow",
            Command::DualPair { .. } => "dual-pair",
            Command::BicatTrace { .. } => "bicat-trace",
            Command::Cyclicity { .. } => "cyclicity",
            Command::Morita { .. } => "morita",
            Command::Cobar { .. } => "cobar",
            Command::Cotor { .. } => "cotor",
            Command::Cohh { .. } => "cohh",
            Command::CohhEnvelope { .. } => "cohh-envelope",
            Command::DerivedShadow { .. } => "derived-shadow",
            Command::ToModule { .. } => "to-module",
            Command::RandomShadow { .. } => "random-shadow",
            Command::Example { .. } => "example",
        }
    }

    fn document(&self) -> Option<&Path> {
        match self {
            Command::Check { document }
            | Command::Cohh0 { document, .. }
            | Command::Cohh0Coeff { document, .. }
            | Command::Cotensor { document, .. }
            | Command::Cotrace { document, .. }
            | Command::Trace { document, .. }
            | Command::Shadow { document, .. }
            | Command::DualPair { document, .. }
            | Command::BicatTrace { document, .. }
            | Command::Cyclicity { document, .. }
            | Command::Morita { document, .. }
            | Command::Cobar { document, .. }
            | Command::Cotor { document, .. }
            | Command::Cohh { document, .. }
            | Command::CohhEnvelope { document, .. }
            | Command::DerivedShadow { document, .. }
            | Command::ToModule { document, .. } => Some(document),
            Command::RandomShadow { .. } | Command::Example { .. } => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Document(DocumentError::Parse { .. }) => "parse",
            CliError::Document(DocumentError::UnknownReference(_)) => "unknown-reference",
            CliError::Document(_) => "document",
            CliError::Invalid(_) => "validation",
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(
    crate::comodule::ComoduleError,
    crate::traces::TraceError,
    crate::dg::DgError,
    crate::coalgebra::CoalgebraError,
    crate::linalg::LinalgError
);

/// What a run printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    inputs: Map<String, Value>,
    result: Value,
    verdicts: Vec<(String, bool)>,
    summary: String,
}

impl Report {
    fn new(result: Value, summary: impl Into<String>) -> Report {
        Report { inputs: Map::new(), result, verdicts: Vec::new(), summary: summary.into() }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn verdict(mut self, key: impl Into<String>, holds: bool) -> Report {
        self.verdicts.push((key.into(), holds));
        self
    }

    fn pass(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v)
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let name = cli.command.name();
    match execute(&cli) {
        Ok(Executed::Text(text)) => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
        Ok(Executed::Report(field, report)) => {
            let mut inputs = Map::new();
            if let Some(path) = cli.command.document() {
                let base = path.file_name().map_or_else(|| path.display().to_string(), |b| b.to_string_lossy().into_owned());
                inputs.insert("document".into(), Value::String(base));
            }
            inputs.extend(report.inputs.clone());
            let verdicts: Map<String, Value> = report.verdicts.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect();
            let pass = report.pass();
            let out = json!({
                "format": 1,
                "command": name,
                "inputs": inputs,
                "field": field.spec(),
                "result": report.result,
                "verdicts": verdicts,
                "pass": pass,
            });
            let stderr = if cli.json_only {
                String::new()
            } else {
                format!("{name}: {} [{}]\n", report.summary, if pass { "pass" } else { "FAIL" })
            };
            Outcome { code: if pass { EXIT_OK } else { EXIT_FALSE }, stdout: render(&out), stderr }
        }
        Err(e) => {
            let out = json!({
                "format": 1,
                "command": name,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            let stderr = if cli.json_only { String::new() } else { format!("{name}: error: {e}\n") };
            Outcome { code: e.code(), stdout: render(&out), stderr }
        }
    }
}

enum Executed {
    Text(String),
    Report(Field, Report),
}

fn parse_field(spec: &Option<String>) -> Result<Option<Field>, CliError> {
    spec.as_deref()
        .map(|s| Field::parse_spec(s).map_err(|e| CliError::Usage(format!("--field {s}: {e}"))))
        .transpose()
}

fn execute(cli: &Cli) -> Result<Executed, CliError> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Example { name } => {
            let doc = bundled::bundled(name, field.unwrap_or(Field::Rationals)).ok_or_else(|| {
                CliError::Usage(format!("no bundled document {name:?}; available: {}", bundled::NAMES.join(", ")))
            })?;
            return Ok(Executed::Text(doc.to_json()));
        }
        Command::RandomShadow { count } => {
            let f = field.unwrap_or(Field::Rationals);
            return Ok(Executed::Report(f, random_shadow(f, cli.seed, *count)?));
        }
        _ => {}
    }
    let path = cli.command.document().expect("document command");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = Document::parse(&text, field)?;
    let report = dispatch(&cli.command, &doc)?;
    Ok(Executed::Report(doc.field, report))
}

fn unknown(name: &str) -> CliError {
    CliError::Usage(format!("unknown reference {name:?}"))
}

fn coalgebra(doc: &Document, name: &str) -> Result<Arc<FinCoalgebra>, CliError> {
    if let Some(c) = doc.coalgebras.get(name) {
        return Ok(c.clone());
    }
    if name == "k" || name == "K" {
        return Ok(Arc::new(FinCoalgebra::trivial(doc.field)));
    }
    if doc.graded_coalgebras.contains_key(name) {
        return Err(CliError::Usage(format!("{name} is a graded coalgebra")));
    }
    Err(unknown(name))
}

fn bicomodule<'a>(doc: &'a Document, name: &str) -> Result<&'a Bicomodule, CliError> {
    if let Some(m) = doc.bicomodules.get(name) {
        return Ok(&m.module);
    }
    if doc.graded_bicomodules.contains_key(name) {
        return Err(CliError::Usage(format!("{name} is a graded bicomodule")));
    }
    Err(unknown(name))
}

fn map<'a>(doc: &'a Document, name: &str) -> Result<&'a MapEntry, CliError> {
    doc.maps.get(name).ok_or_else(|| unknown(name))
}

fn endomorphism<'a>(doc: &'a Document, module: &str, name: &str) -> Result<&'a MapEntry, CliError> {
    let f = map(doc, name)?;
    if f.source != module || f.target != module {
        return Err(CliError::Usage(format!("{name} is not an endomorphism of {module}")));
    }
    Ok(f)
}

fn graded_coalgebra(doc: &Document, name: &str) -> Result<Arc<GradedCoalgebra>, CliError> {
    if let Some(c) = doc.graded_coalgebras.get(name) {
        return Ok(c.clone());
    }
    if let Some(c) = doc.coalgebras.get(name) {
        return Ok(Arc::new(GradedCoalgebra::concentrated(c)));
    }
    Err(unknown(name))
}

/// A named graded bicomodule; `k` is the ground field through the unit of `c`.
fn graded_bicomodule(doc: &Document, name: &str, c: &Arc<GradedCoalgebra>, side: Side) -> Result<GradedBicomodule, CliError> {
    if name == "k" {
        return Ok(GradedBicomodule::corner(c, side)?);
    }
    if let Some(m) = doc.graded_bicomodules.get(name) {
        return Ok(m.module.clone());
    }
    if let Some(m) = doc.bicomodules.get(name) {
        let lift = |s: &Option<String>| -> Result<Arc<GradedCoalgebra>, CliError> {
            match s {
                None => Ok(Arc::new(GradedCoalgebra::trivial(doc.field))),
                Some(n) => graded_coalgebra(doc, n),
            }
        };
        return Ok(GradedBicomodule::concentrated(&m.module, &lift(&m.left)?, &lift(&m.right)?)?);
    }
    Err(unknown(name))
}

fn dense(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(f.format(x))).collect()))
            .collect(),
    )
}

fn column_text(m: &Matrix, labels: &[String]) -> String {
    format_combination(m.field(), m.column(0).into_iter().enumerate(), labels)
}

fn basis_text(sub: &Subspace, labels: &[String]) -> Vec<String> {
    (0..sub.dim())
        .map(|i| format_combination(sub.field(), sub.basis().row(i).iter().cloned(), labels))
        .collect()
}

fn homology_json(r: &HomologyReport) -> Value {
    json!({
        "max_degree": r.max_degree,
        "chain_dims": r.chain_dims,
        "dims": r.dims,
        "bases": r.bases,
        "bigraded": r.bigraded.as_ref().map(|b| b
            .iter()
            .map(|e| json!({ "word_length": e.word_length, "degree": e.degree, "dim": e.dim }))
            .collect::<Vec<_>>()),
        "euler": { "chain_side": r.euler.chain_side, "homology_side": r.euler.homology_side },
    })
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

/// Dual pair for a comodule over `(K, C)` or `(C, K)`.
fn auto_pair(m: &Bicomodule) -> Result<(DualPair, &'static str), CliError> {
    if m.left().dim() == 1 {
        Ok((DualPair::findim_right(m)?, "findim"))
    } else if m.right().dim() == 1 {
        Ok((DualPair::injective_left(m)?, "injective"))
    } else {
        Err(CliError::Usage("a dual pair is built only for one-sided comodules".into()))
    }
}

fn dispatch(command: &Command, doc: &Document) -> Result<Report, CliError> {
    Ok(match command {
        Command::Check { .. } => check(doc)?,
        Command::Cohh0 { coalgebra: name, .. } => {
            let c = coalgebra(doc, name)?;
            let sub = c.cohh0();
            let basis = basis_text(&sub, c.labels());
            Report::new(json!({ "dim": sub.dim(), "basis": basis }), format!("dim coHH0({name}) = {}", sub.dim()))
                .input("coalgebra", name.as_str())
        }
        Command::Cohh0Coeff { module, .. } => {
            let m = bicomodule(doc, module)?;
            let sub = m.cohh0_coeff()?;
            let basis = basis_text(&sub, m.labels());
            Report::new(json!({ "dim": sub.dim(), "basis": basis }), format!("dim coHH0({module}) = {}", sub.dim()))
                .input("module", module.as_str())
        }
        Command::Cotensor { left, right, .. } => {
            let (m, n) = (bicomodule(doc, left)?, bicomodule(doc, right)?);
            let x = cotensor(m, n)?;
            Report::new(
                json!({
                    "dim": x.module.dim(),
                    "ambient_dim": x.subspace.ambient_dim(),
                    "basis": x.module.labels(),
                }),
                format!("dim {left} □ {right} = {}", x.module.dim()),
            )
            .input("left", left.as_str())
            .input("right", right.as_str())
        }
        Command::Cotrace { object, map: name, .. } => cotrace(doc, object, name)?,
        Command::Trace { module, map: name, .. } => {
            let m = bicomodule(doc, module)?;
            let g = endomorphism(doc, module, name)?;
            let t = traces::colinear_trace(m, &g.matrix)?;
            let pair = DualPair::findim_right(m)?;
            let b = traces::bicat_trace(&pair, &g.matrix)?;
            let c = m.right();
            Report::new(
                json!({
                    "element": column_text(&t.element, c.labels()),
                    "coordinates": dense(&t.coordinates.transpose())[0],
                    "cohh0_basis": basis_text(&c.cohh0(), c.labels()),
                }),
                format!("tr({name}) = {}", column_text(&t.element, c.labels())),
            )
            .input("module", module.as_str())
            .input("map", name.as_str())
            .verdict("matches_bicategorical_trace", b == t.coordinates)
        }
        Command::Shadow { left, right, p, .. } => {
            let (m, n) = (bicomodule(doc, left)?, bicomodule(doc, right)?);
            let third = p.as_deref().map(|p| bicomodule(doc, p)).transpose()?;
            let r = shadow_report(m, n, third)?;
            let mut rep = Report::new(
                json!({ "source_dim": r.source_dim, "target_dim": r.target_dim }),
                format!("coHH0({left} □ {right}) has dimension {}", r.source_dim),
            )
            .input("left", left.as_str())
            .input("right", right.as_str())
            .verdict("bijective", r.bijective)
            .verdict("involutive", r.involutive);
            if let Some(p) = p {
                rep = rep.input("p", p.as_str());
            }
            if let Some(h) = r.hexagon {
                rep = rep.verdict("hexagon", h);
            }
            if let Some(u) = r.unit {
                rep = rep.verdict("unit", u);
            }
            rep
        }
        Command::DualPair { kind, names, v, n, .. } => dual_pair(doc, *kind, names, *v, *n)?,
        Command::BicatTrace { module, map: name, .. } => {
            let m = bicomodule(doc, module)?;
            let g = endomorphism(doc, module, name)?;
            let (pair, kind) = auto_pair(m)?;
            let t = traces::bicat_trace(&pair, &g.matrix)?;
            let expected = if kind == "findim" {
                traces::colinear_trace(m, &g.matrix)?.coordinates
            } else {
                traces::hs_cotrace(m, &g.matrix)?.functional
            };
            Report::new(
                json!({
                    "pair": kind,
                    "matrix": dense(&t),
                    "source_basis": basis_text(&pair.m.left().cohh0(), pair.m.left().labels()),
                    "target_basis": basis_text(&pair.m.right().cohh0(), pair.m.right().labels()),
                }),
                format!("{kind} pair, trace is {}x{}", t.rows(), t.cols()),
            )
            .input("module", module.as_str())
            .input("map", name.as_str())
            .verdict("matches_direct_trace", t == expected)
        }
        Command::Cyclicity { f: fname, g: gname, .. } => {
            let (fm, gm) = (map(doc, fname)?, map(doc, gname)?);
            if fm.source != gm.target || fm.target != gm.source {
                return Err(CliError::Usage(format!("{fname} and {gname} are not composable both ways")));
            }
            let (m, n) = (bicomodule(doc, &fm.source)?, bicomodule(doc, &fm.target)?);
            let (pm, _) = auto_pair(m)?;
            let (pn, _) = auto_pair(n)?;
            let on_n = traces::bicat_trace(&pn, &fm.matrix.mul(&gm.matrix))?;
            let on_m = traces::bicat_trace(&pm, &gm.matrix.mul(&fm.matrix))?;
            let holds = traces::cyclicity_check(&pm, &pn, &fm.matrix, &gm.matrix)?;
            Report::new(
                json!({ "trace_fg": dense(&on_n), "trace_gf": dense(&on_m) }),
                format!("tr({fname}{gname}) vs tr({gname}{fname})"),
            )
            .input("f", fname.as_str())
            .input("g", gname.as_str())
            .verdict("cyclic", holds && on_n == on_m)
        }
        Command::Morita { coalgebra: name, n, .. } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let c = coalgebra(doc, name)?;
            let r = traces::morita_comatrix(&c, *n)?;
            Report::new(
                json!({
                    "n": r.n,
                    "cohh0_dim": r.cohh0_dim,
                    "comatrix_cohh0_dim": r.comatrix_cohh0_dim,
                    "euler": dense(&r.euler),
                }),
                format!("χ for {name} and M_{n}^c({name})"),
            )
            .input("coalgebra", name.as_str())
            .input("n", *n)
            .verdict("cohh0_dims_agree", r.cohh0_dim == r.comatrix_cohh0_dim)
            .verdict("coevaluation_iso", r.coevaluation_iso)
            .verdict("evaluation_iso", r.evaluation_iso)
            .verdict("euler_invertible", r.euler_invertible)
            .verdict("inverse_matches", r.inverse_matches)
        }
        Command::Cobar { left, coalgebra: cname, right, max_degree, .. } => {
            let c = graded_coalgebra(doc, cname)?;
            let m = graded_bicomodule(doc, left, &c, Side::Right)?;
            let n = graded_bicomodule(doc, right, &c, Side::Left)?;
            let x = dg::conormalized_cobar(&m, &c, &n, *max_degree)?;
            let square_zero = (2..x.differentials.len()).all(|t| x.differentials[t - 1].mul(&x.differentials[t]).is_zero());
            let dims = x.chain_dims();
            Report::new(
                json!({
                    "max_degree": x.max_degree,
                    "chain_dims": dims,
                    "word_homogeneous": x.is_word_homogeneous(),
                }),
                format!("chain dims {}", dims_text(&dims)),
            )
            .input("left", left.as_str())
            .input("coalgebra", cname.as_str())
            .input("right", right.as_str())
            .input("max_degree", *max_degree)
            .verdict("square_zero", square_zero)
        }
        Command::Cotor { left, coalgebra: cname, right, max_degree, .. } => {
            let c = graded_coalgebra(doc, cname)?;
            let m = graded_bicomodule(doc, left, &c, Side::Right)?;
            let n = graded_bicomodule(doc, right, &c, Side::Left)?;
            let r = dg::cotor(&m, &c, &n, *max_degree)?;
            Report::new(homology_json(&r), format!("dims {}", dims_text(&r.dims)))
                .input("left", left.as_str())
                .input("coalgebra", cname.as_str())
                .input("right", right.as_str())
                .input("max_degree", *max_degree)
                .verdict("euler_audit", r.euler.holds())
        }
        Command::Cohh { coalgebra: cname, module, max_degree, .. } => {
            let c = graded_coalgebra(doc, cname)?;
            let m = match module {
                None => GradedBicomodule::regular(&c),
                Some(name) => graded_bicomodule(doc, name, &c, Side::Right)?,
            };
            let r = dg::dg_cohh(&m, &c, *max_degree)?;
            let mut rep = Report::new(homology_json(&r), format!("dims {}", dims_text(&r.dims)))
                .input("coalgebra", cname.as_str())
                .input("max_degree", *max_degree);
            if let Some(name) = module {
                rep = rep.input("module", name.as_str());
            }
            rep.verdict("euler_audit", r.euler.holds())
        }
        Command::CohhEnvelope { coalgebra: cname, max_degree, .. } => {
            let c = graded_coalgebra(doc, cname)?;
            let r = dg::cohh_envelope(&c, *max_degree)?;
            let direct = dg::dg_cohh(&GradedBicomodule::regular(&c), &c, *max_degree)?;
            Report::new(homology_json(&r), format!("dims {}", dims_text(&r.dims)))
                .input("coalgebra", cname.as_str())
                .input("max_degree", *max_degree)
                .verdict("euler_audit", r.euler.holds())
                .verdict("matches_cyclic_complex", r.dims == direct.dims)
        }
        Command::DerivedShadow { left, right, max_degree, .. } => {
            let m = named_graded(doc, left)?;
            let n = named_graded(doc, right)?;
            let r = dg::derived_shadow_theta(&m, &n, *max_degree)?;
            Report::new(
                json!({
                    "max_degree": r.max_degree,
                    "source_chain_dims": r.source_chain_dims,
                    "target_chain_dims": r.target_chain_dims,
                    "source_dims": r.source_dims,
                    "target_dims": r.target_dims,
                }),
                format!("dims {} vs {}", dims_text(&r.source_dims), dims_text(&r.target_dims)),
            )
            .input("left", left.as_str())
            .input("right", right.as_str())
            .input("max_degree", *max_degree)
            .verdict("chain_map", r.chain_map)
            .verdict("bijective", r.bijective)
            .verdict("homology_iso", r.cohomology_iso)
        }
        Command::ToModule { module, .. } => {
            let m = bicomodule(doc, module)?;
            let act = comodule_to_module(m)?;
            let c = m.right();
            let hh0 = c.dual_algebra().hh0();
            let rank = traces::hattori_stallings_rank(&act)?;
            let actions: Map<String, Value> =
                c.labels().iter().zip(&act.actions).map(|(l, a)| (format!("{l}*"), dense(a))).collect();
            let dual_labels: Vec<String> = c.labels().iter().map(|l| format!("{l}*")).collect();
            Report::new(
                json!({
                    "algebra_dim": act.algebra.dim,
                    "module_dim": act.dim(),
                    "actions": actions,
                    "hattori_stallings_rank": column_text(&rank, &dual_labels),
                    "hh0_dim": hh0.trace.rows(),
                    "cohh0_dim": c.cohh0().dim(),
                }),
                format!("module of dimension {} over an algebra of dimension {}", act.dim(), act.algebra.dim),
            )
            .input("module", module.as_str())
            .verdict("is_module", act.is_module())
            .verdict("hh0_matches_cohh0", hh0.trace.rows() == c.cohh0().dim())
        }
        Command::RandomShadow { .. } | Command::Example { .. } => unreachable!("handled before loading a document"),
    })
}

fn named_graded(doc: &Document, name: &str) -> Result<GradedBicomodule, CliError> {
    if let Some(m) = doc.graded_bicomodules.get(name) {
        return Ok(m.module.clone());
    }
    if let Some(m) = doc.bicomodules.get(name) {
        let lift = |s: &Option<String>| -> Result<Arc<GradedCoalgebra>, CliError> {
            match s {
                None => Ok(Arc::new(GradedCoalgebra::trivial(doc.field))),
                Some(n) => graded_coalgebra(doc, n),
            }
        };
        return Ok(GradedBicomodule::concentrated(&m.module, &lift(&m.left)?, &lift(&m.right)?)?);
    }
    Err(unknown(name))
}

/// `tr(f) = tr(f') + tr(f'')` for the maps a sequence induces on its ends.
fn additivity(doc: &Document, s: &SequenceEntry, endo: &str) -> Result<bool, CliError> {
    let (i, p, g) = (map(doc, &s.inclusion)?, map(doc, &s.projection)?, map(doc, endo)?);
    let (sub, mid, quot) = (bicomodule(doc, &i.source)?, bicomodule(doc, &i.target)?, bicomodule(doc, &p.target)?);
    let f = doc.field;
    let on_sub = linear_solve(&i.matrix, &g.matrix.mul(&i.matrix))?;
    let section = linear_solve(&p.matrix, &Matrix::identity(f, quot.dim()))?;
    let on_quot = p.matrix.mul(&g.matrix).mul(&section);
    let trace = |m: &Bicomodule, h: &Matrix| -> Result<Matrix, CliError> {
        if m.left().dim() == 1 {
            Ok(traces::colinear_trace(m, h)?.element)
        } else {
            Ok(traces::hs_cotrace(m, h)?.on_coalgebra)
        }
    };
    Ok(trace(mid, &g.matrix)? == trace(sub, &on_sub)?.add(&trace(quot, &on_quot)?))
}

fn check(doc: &Document) -> Result<Report, CliError> {
    let mut coalgebras = Map::new();
    for (name, c) in &doc.coalgebras {
        coalgebras.insert(
            name.clone(),
            json!({ "dim": c.dim(), "graded": false, "cocommutative": c.is_cocommutative(), "cohh0_dim": c.cohh0().dim() }),
        );
    }
    for (name, c) in &doc.graded_coalgebras {
        coalgebras.insert(
            name.clone(),
            json!({
                "dim": c.dim(),
                "graded": true,
                "max_degree": c.max_degree(),
                "simply_connected": c.is_simply_connected(),
            }),
        );
    }
    coalgebras.sort_keys();
    let mut bicomodules = Map::new();
    for (name, e) in &doc.bicomodules {
        bicomodules.insert(name.clone(), json!({ "dim": e.module.dim(), "left": e.left, "right": e.right, "graded": false }));
    }
    for (name, e) in &doc.graded_bicomodules {
        bicomodules.insert(name.clone(), json!({ "dim": e.module.dim(), "left": e.left, "right": e.right, "graded": true }));
    }
    bicomodules.sort_keys();
    let maps: Map<String, Value> = doc
        .maps
        .iter()
        .map(|(name, m)| (name.clone(), json!({ "source": m.source, "target": m.target, "colinear": m.colinear.is_some() })))
        .collect();
    let sequences: Map<String, Value> = doc
        .sequences
        .iter()
        .map(|(name, s)| {
            (name.clone(), json!({ "inclusion": s.inclusion, "projection": s.projection, "endomorphism": s.endomorphism }))
        })
        .collect();
    let count = coalgebras.len() + bicomodules.len() + maps.len() + sequences.len();
    let mut rep = Report::new(
        json!({ "coalgebras": coalgebras, "bicomodules": bicomodules, "maps": maps, "sequences": sequences }),
        format!("{count} objects validated"),
    )
    .verdict("valid", true);
    for (name, s) in &doc.sequences {
        if let Some(e) = &s.endomorphism {
            rep = rep.verdict(format!("additive:{name}"), additivity(doc, s, e)?);
        }
    }
    Ok(rep)
}

fn cotrace(doc: &Document, object: &str, name: &str) -> Result<Report, CliError> {
    let g = map(doc, name)?;
    if let Some(c) = doc.coalgebras.get(object) {
        if g.target != object {
            return Err(CliError::Usage(format!("{name} does not land in {object}")));
        }
        let r = traces::is_cotrace(c, &g.matrix)?;
        let source = doc.space_labels(&g.source).expect("validated map");
        return Ok(Report::new(
            json!({ "kind": "cocyclicity", "witness": r.witness.map(|i| source[i].clone()) }),
            if r.holds { format!("{name} is a cotrace") } else { format!("{name} is not a cotrace") },
        )
        .input("object", object)
        .input("map", name)
        .verdict("cotrace", r.holds));
    }
    let m = bicomodule(doc, object)?;
    let g = endomorphism(doc, object, name)?;
    let t = traces::hs_cotrace(m, &g.matrix)?;
    let c = m.left();
    let values: Map<String, Value> = c
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), Value::String(c.field().format(&t.on_coalgebra.get(0, i)))))
        .collect();
    Ok(Report::new(
        json!({
            "kind": "hattori_stallings",
            "on_coalgebra": values,
            "on_cohh0": dense(&t.functional)[0],
            "cohh0_basis": basis_text(&c.cohh0(), c.labels()),
        }),
        format!("cotrace of {name} on {object}"),
    )
    .input("object", object)
    .input("map", name))
}

fn dual_pair(doc: &Document, kind: PairKind, names: &[String], v: usize, n: usize) -> Result<Report, CliError> {
    let want = |k: usize| -> Result<(), CliError> {
        if names.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("expected {k} name(s), got {}", names.len())))
        }
    };
    let (pair, label) = match kind {
        PairKind::Cofree => {
            want(2)?;
            if v == 0 {
                return Err(CliError::Usage("--v must be positive".into()));
            }
            (DualPair::cofree(&coalgebra(doc, &names[0])?, v, &coalgebra(doc, &names[1])?)?, "cofree")
        }
        PairKind::Findim => {
            want(1)?;
            (DualPair::findim_right(bicomodule(doc, &names[0])?)?, "findim")
        }
        PairKind::Injective => {
            want(1)?;
            (DualPair::injective_left(bicomodule(doc, &names[0])?)?, "injective")
        }
        PairKind::Comatrix => {
            want(1)?;
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            (DualPair::comatrix(&coalgebra(doc, &names[0])?, n)?, "comatrix")
        }
    };
    let f = doc.field;
    let first = pair.first_triangle()? == Matrix::identity(f, pair.m.dim());
    let second = pair.second_triangle()? == Matrix::identity(f, pair.m_star.dim());
    let mut rep = Report::new(
        json!({
            "m_dim": pair.m.dim(),
            "m_star_dim": pair.m_star.dim(),
            "m_star_basis": pair.m_star.labels(),
            "coevaluation_rank": pair.coevaluation.matrix.rank(),
            "evaluation_rank": pair.evaluation.matrix.rank(),
        }),
        format!("{label} pair with dim M = {}, dim M* = {}", pair.m.dim(), pair.m_star.dim()),
    )
    .input("kind", label)
    .input("names", names.to_vec());
    if kind == PairKind::Cofree {
        rep = rep.input("v", v);
    }
    if kind == PairKind::Comatrix {
        rep = rep.input("n", n);
    }
    Ok(rep.verdict("first_triangle", first).verdict("second_triangle", second))
}

fn random_shadow(field: Field, seed: u64, count: usize) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = instances::corpus_coalgebras(field);
    let mut passed = 0;
    let mut rows = Vec::new();
    for _ in 0..count {
        use rand::seq::SliceRandom;
        let (cn, c) = pool.choose(&mut rng).expect("pool");
        // (M2c, M2c) bicomodules all have dimension at least 4.
        let (dn, d) = loop {
            let pick = pool.choose(&mut rng).expect("pool");
            if !(*cn == "M2c" && pick.0 == "M2c") {
                break pick;
            }
        };
        let m = instances::random_bicomodule((cn, c), (dn, d), 3, &mut rng)?;
        let n = instances::random_bicomodule((dn, d), (cn, c), 3, &mut rng)?;
        let r = shadow_report(&m, &n, None)?;
        if r.all_pass() {
            passed += 1;
        }
        rows.push(json!({ "c": cn, "d": dn, "m_dim": m.dim(), "n_dim": n.dim(), "shadow_dim": r.source_dim, "pass": r.all_pass() }));
    }
    Ok(Report::new(json!({ "instances": rows }), format!("{passed}/{count} instances pass"))
        .input("seed", seed)
        .input("count", count)
        .verdict("all_instances", passed == count))
}
