//! The `jsrlab` command-line front end: JSON documents in, JSON/CSV
//! reports out.
//!
//! Subcommands: `bounds` (JSR bound tables plus a certified enclosure),
//! `verify` (seeded property suites), `algebra` (radical / centre /
//! commutative-modulo-radical ideal / quotient of a structure-constant
//! algebra). Complex numbers are encoded as two-element `[re, im]` arrays.
//! Exit codes: 0 success, 2 schema/usage error, 3 resource exhaustion.
//! `JSRLAB_BUDGET` overrides the node/product budget.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{JsrError, Result};
use crate::jsr::{self, BoundSeeds, Enclosure, EnclosureParams, MatrixSet};
use crate::matrix::CMatrix;
use crate::opmodel::{self, ScalarPlusCorner};
use crate::verify::{self, SuiteId, SuiteParams};

type CPair = [f64; 2];

fn to_complex(p: CPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn from_complex(z: Complex64) -> CPair {
    [z.re, z.im]
}

/// Parsed input document; `kind` selects the payload.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDocument {
    MatrixSet(MatrixSetDoc),
    Algebra(AlgebraDoc),
    OpModel(OpModelDoc),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixSetDoc {
    pub dim: usize,
    /// members[m][row][col] = [re, im].
    pub members: Vec<Vec<Vec<CPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    /// structure_constants[i][j][k] = [re, im]: coefficient of b_k in b_i b_j.
    pub structure_constants: Vec<Vec<Vec<CPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    /// Optional element list (coordinate vectors) for JSR computations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<CPair>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OpModelDoc {
    pub operators: Vec<OperatorDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub lambda: CPair,
    #[serde(rename = "K")]
    pub corner: Vec<Vec<CPair>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text).map_err(|e| JsrError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// The matrix set this document induces for bound computations:
    /// members directly, embedded operators, or the regular representation
    /// of the listed algebra elements.
    pub fn to_matrix_set(&self) -> Result<MatrixSet> {
        match self {
            InputDocument::MatrixSet(doc) => doc.to_matrix_set(),
            InputDocument::OpModel(doc) => opmodel::embed_set(&doc.to_operators()?),
            InputDocument::Algebra(doc) => {
                let algebra = doc.to_algebra()?;
                let elements = doc.to_elements()?.ok_or_else(|| {
                    JsrError::Schema("algebra document needs an `elements` field for bounds".into())
                })?;
                algebra.regular_set(&elements)
            }
        }
    }
}

impl MatrixSetDoc {
    pub fn to_matrix_set(&self) -> Result<MatrixSet> {
        if self.members.is_empty() {
            return Err(JsrError::Schema(
                "matrix_set needs at least one member".into(),
            ));
        }
        let mut members = Vec::with_capacity(self.members.len());
        for (mi, rows) in self.members.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(JsrError::Schema(format!(
                    "member {mi} is not a {0}x{0} matrix",
                    self.dim
                )));
            }
            let complex_rows: Vec<Vec<Complex64>> = rows
                .iter()
                .map(|r| r.iter().map(|&p| to_complex(p)).collect())
                .collect();
            members.push(CMatrix::from_rows(&complex_rows)?);
        }
        match &self.label {
            Some(l) => MatrixSet::with_label(members, l.clone()),
            None => MatrixSet::new(members),
        }
    }
}

impl AlgebraDoc {
    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        let d = self.dim;
        if self.structure_constants.len() != d
            || self
                .structure_constants
                .iter()
                .any(|b| b.len() != d || b.iter().any(|c| c.len() != d))
        {
            return Err(JsrError::Schema(format!(
                "structure_constants must be a {d}x{d}x{d} array"
            )));
        }
        let mut constants = Vec::with_capacity(d * d * d);
        for i in self.structure_constants.iter() {
            for j in i.iter() {
                for &k in j.iter() {
                    constants.push(to_complex(k));
                }
            }
        }
        StructureAlgebra::new(d, constants, self.basis_labels.clone())
    }

    pub fn to_elements(&self) -> Result<Option<Vec<Element>>> {
        let Some(raw) = &self.elements else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(raw.len());
        for (i, coords) in raw.iter().enumerate() {
            if coords.len() != self.dim {
                return Err(JsrError::Schema(format!(
                    "element {i} has {} coordinates, expected {}",
                    coords.len(),
                    self.dim
                )));
            }
            out.push(coords.iter().map(|&p| to_complex(p)).collect());
        }
        Ok(Some(out))
    }

    pub fn from_algebra(a: &StructureAlgebra) -> AlgebraDoc {
        let d = a.dim();
        let structure_constants = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| from_complex(a.sc(i, j, k))).collect())
                    .collect()
            })
            .collect();
        AlgebraDoc {
            dim: d,
            structure_constants,
            basis_labels: a.basis_labels().map(|l| l.to_vec()),
            elements: None,
        }
    }
}

impl OpModelDoc {
    pub fn to_operators(&self) -> Result<Vec<ScalarPlusCorner>> {
        if self.operators.is_empty() {
            return Err(JsrError::Schema(
                "op_model needs at least one operator".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.operators.len());
        for (i, op) in self.operators.iter().enumerate() {
            let n = op.corner.len();
            if n == 0 || op.corner.iter().any(|r| r.len() != n) {
                return Err(JsrError::Schema(format!("operator {i}: K must be square")));
            }
            let rows: Vec<Vec<Complex64>> = op
                .corner
                .iter()
                .map(|r| r.iter().map(|&p| to_complex(p)).collect())
                .collect();
            out.push(ScalarPlusCorner::new(
                to_complex(op.lambda),
                CMatrix::from_rows(&rows)?,
            )?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Branch-and-bound enclosure plus bound tables.
    Enclosure,
    /// Pure enumeration: enclosure assembled from the bound tables.
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "jsrlab",
    version,
    about = "Certified joint spectral radius enclosures"
)]
pub struct Cli {
    /// Single-threaded reproducible mode with zeroed timing fields.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute JSR bound tables and a certified enclosure for a document.
    Bounds {
        /// Input JSON document (matrix_set, algebra with elements, op_model).
        input: PathBuf,
        #[arg(long, default_value_t = jsr::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = jsr::DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Algorithm::Enclosure)]
        algorithm: Algorithm,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run a verification suite and write its report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = jsr::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = jsr::DEFAULT_DELTA)]
        delta: f64,
        /// Output path for the JSON report (a CSV summary is written next
        /// to it); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze an algebra document.
    #[command(group(ArgGroup::new("what").required(true).multiple(false)))]
    Algebra {
        /// Input JSON document of kind `algebra`.
        input: PathBuf,
        /// Basis of the Jacobson radical.
        #[arg(long, group = "what")]
        radical: bool,
        /// Basis of the largest ideal commutative modulo the radical.
        #[arg(long, group = "what")]
        rcqa: bool,
        /// Basis of the centre.
        #[arg(long, group = "what")]
        center: bool,
        /// Structure constants of A / Rad(A) plus the projection.
        #[arg(long = "quotient-by-radical", group = "what")]
        quotient_by_radical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("jsrlab: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Bounds {
            input,
            depth,
            delta,
            algorithm,
            out,
            format,
        } => cmd_bounds(input, *depth, *delta, *algorithm, out.as_deref(), *format),
        Command::Verify {
            suite,
            seed,
            cases,
            depth,
            delta,
            out,
        } => cmd_verify(
            suite,
            *seed,
            *cases,
            *depth,
            *delta,
            out.as_deref(),
            cli.deterministic,
        ),
        Command::Algebra {
            input,
            radical,
            rcqa,
            center,
            quotient_by_radical,
            out,
        } => {
            let mode = if *radical {
                AlgebraMode::Radical
            } else if *rcqa {
                AlgebraMode::Rcqa
            } else if *center {
                AlgebraMode::Center
            } else {
                debug_assert!(*quotient_by_radical);
                AlgebraMode::QuotientByRadical
            };
            cmd_algebra(input, mode, out.as_deref())
        }
    }
}

fn budget_from_env() -> Result<u64> {
    match std::env::var("JSRLAB_BUDGET") {
        Ok(v) => {
            let parsed: u64 = v.trim().parse().map_err(|_| {
                JsrError::Usage(format!(
                    "JSRLAB_BUDGET must be a positive integer, got `{v}`"
                ))
            })?;
            if parsed == 0 {
                return Err(JsrError::Usage("JSRLAB_BUDGET must be positive".into()));
            }
            Ok(parsed)
        }
        Err(_) => Ok(jsr::DEFAULT_NODE_BUDGET),
    }
}

fn read_document(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| JsrError::Schema(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&text)
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(JsrError::Io),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct BoundRow {
    n: usize,
    value: f64,
}

#[derive(Debug, Serialize)]
struct WitnessRow {
    n: usize,
    value: f64,
    witness: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct BoundsReport {
    kind: String,
    label: Option<String>,
    algorithm: String,
    depth: usize,
    delta: f64,
    enclosure: Enclosure,
    upper_bounds: Vec<BoundRow>,
    lower_bounds: Vec<WitnessRow>,
}

impl BoundsReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("row,n,value_lo,value_hi,witness\n");
        for r in &self.upper_bounds {
            out.push_str(&format!("upper_bound,{},{},{},\n", r.n, r.value, r.value));
        }
        for r in &self.lower_bounds {
            let w: Vec<String> = r.witness.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!(
                "lower_bound,{},{},{},{}\n",
                r.n,
                r.value,
                r.value,
                w.join(" ")
            ));
        }
        let w: Vec<String> = self
            .enclosure
            .lo_witness
            .iter()
            .map(|i| i.to_string())
            .collect();
        out.push_str(&format!(
            "enclosure,{},{},{},{}\n",
            self.enclosure.depth_reached,
            self.enclosure.lo,
            self.enclosure.hi,
            w.join(" ")
        ));
        out
    }
}

fn cmd_bounds(
    input: &Path,
    depth: usize,
    delta: f64,
    algorithm: Algorithm,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<i32> {
    if depth == 0 {
        return Err(JsrError::Usage("depth must be >= 1".into()));
    }
    let doc = read_document(input)?;
    let set = doc.to_matrix_set()?;
    let budget = budget_from_env()?;

    let mut upper_bounds = Vec::with_capacity(depth);
    let mut lower_bounds = Vec::with_capacity(depth);
    for n in 1..=depth {
        upper_bounds.push(BoundRow {
            n,
            value: set.upper_bound_with_budget(n, budget)?,
        });
        let (value, witness) = set.lower_bound_bw_with_budget(n, budget)?;
        lower_bounds.push(WitnessRow { n, value, witness });
    }

    let enclosure = match algorithm {
        Algorithm::Enclosure => jsr::jsr_enclosure_with(
            &set,
            &EnclosureParams {
                depth,
                delta,
                node_budget: budget,
            },
            &BoundSeeds::default(),
        )?,
        Algorithm::Brute => {
            let best = lower_bounds
                .iter()
                .max_by(|a, b| a.value.partial_cmp(&b.value).expect("finite"))
                .expect("depth >= 1");
            let hi = upper_bounds
                .iter()
                .map(|r| r.value)
                .fold(f64::INFINITY, f64::min);
            Enclosure {
                lo: best.value.min(hi),
                hi,
                lo_witness: best.witness.clone(),
                depth_reached: depth,
                converged: hi - best.value <= delta,
                nodes_explored: 0,
            }
        }
    };

    let kind = match &doc {
        InputDocument::MatrixSet(_) => "matrix_set",
        InputDocument::Algebra(_) => "algebra",
        InputDocument::OpModel(_) => "op_model",
    };
    let report = BoundsReport {
        kind: kind.to_string(),
        label: set.label().map(|s| s.to_string()),
        algorithm: match algorithm {
            Algorithm::Enclosure => "enclosure".into(),
            Algorithm::Brute => "brute".into(),
        },
        depth,
        delta,
        enclosure,
        upper_bounds,
        lower_bounds,
    };
    let content = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializes"),
        OutputFormat::Csv => report.to_csv(),
    };
    emit(out, &content)?;
    Ok(0)
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    cases: usize,
    depth: usize,
    delta: f64,
    out: Option<&Path>,
    deterministic: bool,
) -> Result<i32> {
    let id = SuiteId::parse(suite)?;
    let params = SuiteParams {
        depth,
        delta,
        budget: budget_from_env()?,
        deterministic,
    };
    let report = verify::run_suite_with(id, seed, cases, &params)?;
    emit(out, &report.to_json())?;
    if let Some(path) = out {
        let csv_path = path.with_extension("csv");
        std::fs::write(&csv_path, report.to_csv()).map_err(JsrError::Io)?;
    }
    eprintln!(
        "suite {}: {} passed, {} failed, {} inconclusive of {}",
        report.suite,
        report.passed,
        report.failures.len(),
        report.inconclusive,
        report.cases
    );
    Ok(if report.suite_passed { 0 } else { 1 })
}

enum AlgebraMode {
    Radical,
    Rcqa,
    Center,
    QuotientByRadical,
}

#[derive(Serialize)]
struct IdealReport {
    what: String,
    dim: usize,
    basis: Vec<Vec<CPair>>,
}

#[derive(Serialize)]
struct QuotientReport {
    what: String,
    radical_dim: usize,
    quotient: AlgebraDoc,
    /// Projection rows: coordinates of the quotient image of each basis
    /// element of the original algebra.
    projection: Vec<Vec<CPair>>,
}

fn vectors_to_pairs(vectors: &[Element]) -> Vec<Vec<CPair>> {
    vectors
        .iter()
        .map(|v| v.iter().map(|&z| from_complex(z)).collect())
        .collect()
}

fn cmd_algebra(input: &Path, mode: AlgebraMode, out: Option<&Path>) -> Result<i32> {
    let doc = read_document(input)?;
    let InputDocument::Algebra(adoc) = doc else {
        return Err(JsrError::Schema(
            "algebra command needs a document of kind `algebra`".into(),
        ));
    };
    let algebra = adoc.to_algebra()?;
    let (associative, residual) = algebra.check_associativity();
    if !associative {
        return Err(JsrError::NotAssociative { residual });
    }
    let content = match mode {
        AlgebraMode::Radical => {
            let ideal = algebra.jacobson_radical()?;
            serde_json::to_string_pretty(&IdealReport {
                what: "jacobson_radical".into(),
                dim: ideal.len(),
                basis: vectors_to_pairs(ideal.basis()),
            })
            .expect("serializes")
        }
        AlgebraMode::Rcqa => {
            let ideal = algebra.rcq_a_ideal()?;
            serde_json::to_string_pretty(&IdealReport {
                what: "rcq_a_ideal".into(),
                dim: ideal.len(),
                basis: vectors_to_pairs(ideal.basis()),
            })
            .expect("serializes")
        }
        AlgebraMode::Center => {
            let basis = algebra.center()?;
            serde_json::to_string_pretty(&IdealReport {
                what: "center".into(),
                dim: basis.len(),
                basis: vectors_to_pairs(&basis),
            })
            .expect("serializes")
        }
        AlgebraMode::QuotientByRadical => {
            let rad = algebra.jacobson_radical()?;
            let (quotient, proj) = algebra.quotient(&rad)?;
            let projection = (0..algebra.dim())
                .map(|j| {
                    (0..proj.rows())
                        .map(|r| from_complex(proj.get(r, j)))
                        .collect()
                })
                .collect();
            serde_json::to_string_pretty(&QuotientReport {
                what: "quotient_by_radical".into(),
                radical_dim: rad.len(),
                quotient: AlgebraDoc::from_algebra(&quotient),
                projection,
            })
            .expect("serializes")
        }
    };
    emit(out, &content)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matrix_set_document() {
        let text = r#"{
            "kind": "matrix_set",
            "dim": 2,
            "members": [
                [[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
                [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [1.0, 0.0]]]
            ],
            "label": "classic pair"
        }"#;
        let doc = InputDocument::parse(text).unwrap();
        let set = doc.to_matrix_set().unwrap();
        assert_eq!(set.dim(), 2);
        assert_eq!(set.len(), 2);
        assert_eq!(set.label(), Some("classic pair"));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(
            InputDocument::parse("{nope"),
            Err(JsrError::Schema(_))
        ));
        assert!(matches!(
            InputDocument::parse(r#"{"kind": "unknown", "x": 1}"#),
            Err(JsrError::Schema(_))
        ));
        // Wrong member shape.
        let text = r#"{"kind": "matrix_set", "dim": 2, "members": [[[[1,0]]]]}"#;
        let doc = InputDocument::parse(text).unwrap();
        assert!(matches!(doc.to_matrix_set(), Err(JsrError::Schema(_))));
    }

    #[test]
    fn document_round_trip_is_bit_exact() {
        let text = r#"{
            "kind": "op_model",
            "operators": [
                {"lambda": [0.1234567890123456789, -0.5], "K": [[[1.5, 0.0]]]}
            ]
        }"#;
        let doc = InputDocument::parse(text).unwrap();
        let rewritten = doc.to_json();
        let doc2 = InputDocument::parse(&rewritten).unwrap();
        let (InputDocument::OpModel(a), InputDocument::OpModel(b)) = (&doc, &doc2) else {
            panic!("kind changed");
        };
        assert_eq!(
            a.operators[0].lambda[0].to_bits(),
            b.operators[0].lambda[0].to_bits()
        );
        assert_eq!(
            a.operators[0].lambda[1].to_bits(),
            b.operators[0].lambda[1].to_bits()
        );
        assert_eq!(
            a.operators[0].corner[0][0][0].to_bits(),
            b.operators[0].corner[0][0][0].to_bits()
        );
    }

    #[test]
    fn algebra_document_to_structure_algebra() {
        // 1-dimensional algebra with b*b = b.
        let text = r#"{
            "kind": "algebra",
            "dim": 1,
            "structure_constants": [[[[1.0, 0.0]]]],
            "elements": [[[0.5, 0.0]]]
        }"#;
        let doc = InputDocument::parse(text).unwrap();
        let set = doc.to_matrix_set().unwrap();
        assert_eq!(set.len(), 1);
        let InputDocument::Algebra(adoc) = &doc else {
            panic!()
        };
        let a = adoc.to_algebra().unwrap();
        let (ok, _) = a.check_associativity();
        assert!(ok);
    }

    #[test]
    fn algebra_doc_round_trips_constants() {
        let t2 = StructureAlgebra::upper_triangular(2);
        let doc = AlgebraDoc::from_algebra(&t2);
        let back = doc.to_algebra().unwrap();
        assert_eq!(back.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(back.sc(i, j, k), t2.sc(i, j, k));
                }
            }
        }
    }
}
