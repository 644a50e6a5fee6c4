//! Seeded property suites: each suite turns one of the spectral-radius
//! identities into interval assertions over generated instances and
//! collects the outcomes into a machine-readable report.
//!
//! Every assertion is stated at the level of computed enclosures and bounds
//! (interval overlap with slack = sum of widths + 1e-6), never at the level
//! of unknowable exact JSR values. Budget exhaustion marks a case
//! inconclusive, not failed; a suite passes when no case failed and at most
//! 10% were inconclusive. Reports are byte-stable for fixed inputs in
//! deterministic mode.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, IdealBasis, StructureAlgebra};
use crate::error::{JsrError, Result};
use crate::jsr::{
    self, jsr_enclosure_with, quant_key, unit_disc, BoundSeeds, Enclosure, EnclosureParams,
    MatrixSet, DEFAULT_NODE_BUDGET,
};
use crate::matrix::CMatrix;
use crate::opmodel;

/// Identifier of a verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    /// Power and multiplication-operator identities: rho(M^2) = rho(M)^2
    /// and rho({A x B}) = rho(M)^2.
    PassIdentities,
    /// Convergence of the BW lower bound to the norm upper bound.
    BergerWang,
    /// Triangular sets: the JSR equals the largest diagonal modulus.
    UpperTriangular,
    /// rho(M) = rho(M / Rad(A)) through the quotient algebra.
    RadicalQuotient,
    /// Adjoining a radical element leaves the JSR unchanged.
    RadicalAdjoin,
    /// rho(M) = max(rho(M/J), r(M)) for computed ideals J.
    AlgebraicBw,
    /// Central ideals: rho(M) = max(rho(M/J), r_1(M)).
    CentralIdeal,
    /// Scalar-plus-corner operators: rho = max(essential, BW).
    OperatorBw,
    /// Upper semicontinuity surrogate under entrywise perturbations.
    Semicontinuity,
    /// JSR invariance under absolutely-convex hull sampling.
    HullInvariance,
}

impl SuiteId {
    pub fn parse(name: &str) -> Result<SuiteId> {
        Ok(match name {
            "pass_identities" => SuiteId::PassIdentities,
            "berger_wang" => SuiteId::BergerWang,
            "upper_triangular" => SuiteId::UpperTriangular,
            "radical_quotient" => SuiteId::RadicalQuotient,
            "radical_adjoin" => SuiteId::RadicalAdjoin,
            "algebraic_bw" => SuiteId::AlgebraicBw,
            "central_ideal" => SuiteId::CentralIdeal,
            "operator_bw" => SuiteId::OperatorBw,
            "semicontinuity" => SuiteId::Semicontinuity,
            "hull_invariance" => SuiteId::HullInvariance,
            _ => return Err(JsrError::UnknownSuite(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::PassIdentities => "pass_identities",
            SuiteId::BergerWang => "berger_wang",
            SuiteId::UpperTriangular => "upper_triangular",
            SuiteId::RadicalQuotient => "radical_quotient",
            SuiteId::RadicalAdjoin => "radical_adjoin",
            SuiteId::AlgebraicBw => "algebraic_bw",
            SuiteId::CentralIdeal => "central_ideal",
            SuiteId::OperatorBw => "operator_bw",
            SuiteId::Semicontinuity => "semicontinuity",
            SuiteId::HullInvariance => "hull_invariance",
        }
    }

    pub fn all() -> &'static [SuiteId] {
        &[
            SuiteId::PassIdentities,
            SuiteId::BergerWang,
            SuiteId::UpperTriangular,
            SuiteId::RadicalQuotient,
            SuiteId::RadicalAdjoin,
            SuiteId::AlgebraicBw,
            SuiteId::CentralIdeal,
            SuiteId::OperatorBw,
            SuiteId::Semicontinuity,
            SuiteId::HullInvariance,
        ]
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuiteParams {
    pub depth: usize,
    pub delta: f64,
    pub budget: u64,
    /// Zeroes wall-clock fields so reports are byte-stable.
    pub deterministic: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            depth: jsr::DEFAULT_DEPTH,
            delta: jsr::DEFAULT_DELTA,
            budget: DEFAULT_NODE_BUDGET,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// One case of a suite: the compared intervals and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub case: usize,
    pub seed: u64,
    pub description: String,
    pub lhs_lo: f64,
    pub lhs_hi: f64,
    pub rhs_lo: f64,
    pub rhs_hi: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub parameters: SuiteParams,
    pub rows: Vec<CaseRow>,
    pub failures: Vec<CaseRow>,
    pub passed: usize,
    pub inconclusive: usize,
    pub suite_passed: bool,
    pub elapsed_seconds: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per case: suite, seed, case, lhs_lo, lhs_hi, rhs_lo, rhs_hi,
    /// verdict.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,seed,case,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n");
        for row in &self.rows {
            let verdict = match row.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inconclusive => "inconclusive",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.suite,
                row.seed,
                row.case,
                row.lhs_lo,
                row.lhs_hi,
                row.rhs_lo,
                row.rhs_hi,
                verdict
            ));
        }
        out
    }
}

struct CaseResult {
    description: String,
    lhs: (f64, f64),
    rhs: (f64, f64),
    tolerance: f64,
    verdict: Verdict,
}

/// Runs a suite with default budget in deterministic mode.
pub fn run_suite(
    id: SuiteId,
    seed: u64,
    cases: usize,
    depth: usize,
    delta: f64,
) -> Result<VerificationReport> {
    run_suite_with(
        id,
        seed,
        cases,
        &SuiteParams {
            depth,
            delta,
            ..SuiteParams::default()
        },
    )
}

pub fn run_suite_with(
    id: SuiteId,
    seed: u64,
    cases: usize,
    params: &SuiteParams,
) -> Result<VerificationReport> {
    if cases == 0 {
        return Err(JsrError::Usage("cases must be >= 1".into()));
    }
    if params.depth == 0 {
        return Err(JsrError::Usage("depth must be >= 1".into()));
    }
    let started = std::time::Instant::now();
    let mut rows = Vec::with_capacity(cases);
    for case in 0..cases {
        let cs = case_seed(seed, case);
        let result = match run_case(id, case, cs, params) {
            Ok(r) => r,
            Err(JsrError::BudgetExceeded { formed, limit }) => CaseResult {
                description: format!("budget exhausted: {formed} > {limit}"),
                lhs: (0.0, 0.0),
                rhs: (0.0, 0.0),
                tolerance: 0.0,
                verdict: Verdict::Inconclusive,
            },
            Err(e) => return Err(e),
        };
        rows.push(CaseRow {
            case,
            seed: cs,
            description: result.description,
            lhs_lo: result.lhs.0,
            lhs_hi: result.lhs.1,
            rhs_lo: result.rhs.0,
            rhs_hi: result.rhs.1,
            tolerance: result.tolerance,
            verdict: result.verdict,
        });
    }
    let failures: Vec<CaseRow> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .cloned()
        .collect();
    let inconclusive = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Inconclusive)
        .count();
    let passed = rows.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let suite_passed = failures.is_empty() && 10 * inconclusive <= cases;
    Ok(VerificationReport {
        suite: id.name().to_string(),
        seed,
        cases,
        parameters: *params,
        rows,
        failures,
        passed,
        inconclusive,
        suite_passed,
        elapsed_seconds: if params.deterministic {
            0.0
        } else {
            started.elapsed().as_secs_f64()
        },
    })
}

/// Per-case seed: a splitmix-style mix of the master seed and case index,
/// so each failure record is re-runnable on its own.
fn case_seed(master: u64, case: usize) -> u64 {
    let mut z = master ^ (case as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn overlap(a: (f64, f64), b: (f64, f64), slack: f64) -> bool {
    a.0.max(b.0) <= a.1.min(b.1) + slack
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim).expect("dim >= 1");
    for i in 0..dim {
        for j in 0..dim {
            m.set(i, j, unit_disc(rng));
        }
    }
    m
}

fn random_matrix_set(rng: &mut ChaCha8Rng, max_dim: usize, max_members: usize) -> MatrixSet {
    let dim = rng.gen_range(2..=max_dim.max(2));
    let count = rng.gen_range(2..=max_members.max(2));
    MatrixSet::new((0..count).map(|_| random_matrix(rng, dim)).collect()).expect("valid set")
}

fn random_triangular_set(rng: &mut ChaCha8Rng, n: usize, max_members: usize) -> MatrixSet {
    let count = rng.gen_range(2..=max_members.max(2));
    let members = (0..count)
        .map(|_| {
            let mut m = CMatrix::zeros(n).expect("n >= 1");
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, unit_disc(rng));
                }
            }
            m
        })
        .collect();
    MatrixSet::new(members).expect("valid set")
}

fn random_elements(rng: &mut ChaCha8Rng, algebra: &StructureAlgebra, count: usize) -> Vec<Element> {
    (0..count)
        .map(|_| (0..algebra.dim()).map(|_| unit_disc(rng)).collect())
        .collect()
}

/// Test algebras for the radical suites, cycled by case index.
fn algebra_family(case: usize) -> (StructureAlgebra, &'static str) {
    match case % 5 {
        0 => (StructureAlgebra::upper_triangular(2), "T2"),
        1 => (StructureAlgebra::upper_triangular(3), "T3"),
        2 => (
            StructureAlgebra::full_matrix(2).direct_sum(&StructureAlgebra::strictly_upper(2)),
            "M2+N2",
        ),
        3 => (
            StructureAlgebra::full_matrix(2).direct_sum(&StructureAlgebra::null_algebra(1)),
            "M2+null1",
        ),
        _ => (
            StructureAlgebra::upper_triangular(2).direct_sum(&StructureAlgebra::null_algebra(2)),
            "T2+null2",
        ),
    }
}

fn enclosure_interval(e: &Enclosure) -> (f64, f64) {
    (e.lo, e.hi)
}

fn run_case(id: SuiteId, case: usize, seed: u64, params: &SuiteParams) -> Result<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ep = EnclosureParams {
        depth: params.depth,
        delta: params.delta,
        node_budget: params.budget,
    };
    match id {
        SuiteId::PassIdentities => {
            let m = random_matrix_set(&mut rng, 3, 3);
            let e = jsr_enclosure_with(&m, &ep, &BoundSeeds::default())?;
            let squared = (e.lo * e.lo, e.hi * e.hi);

            // Power route: warm-start the M^2 search with the certified
            // bounds implied by the square identity, then cross-check.
            let p2 = m.power_set_with_budget(2, params.budget)?;
            let seeds = BoundSeeds {
                lower: doubled_witness(&m, &p2, &e.lo_witness).map(|w| (e.lo * e.lo, w)),
                upper: Some(e.hi * e.hi),
            };
            let ep2 = EnclosureParams {
                depth: params.depth.min(7),
                ..ep
            };
            let e2 = jsr_enclosure_with(&p2, &ep2, &seeds)?;
            let subset_ok =
                e2.lo >= squared.0 - 1e-6 && e2.hi <= squared.1 + 1e-6 && e2.lo <= e2.hi;

            // Kronecker route: fully independent enclosure of {A (x) B}.
            let kron = m.mult_operator_set()?;
            let epk = EnclosureParams {
                depth: params.depth.min(6),
                delta: 0.05,
                ..ep
            };
            let ek = jsr_enclosure_with(&kron, &epk, &BoundSeeds::default())?;
            let slack = (e2.width().max(0.0)) + ek.width() + (squared.1 - squared.0) + 1e-6;
            let kron_ok = overlap(enclosure_interval(&ek), squared, slack);

            let verdict = if subset_ok && kron_ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok(CaseResult {
                description: format!(
                    "dim {} x {} members; square in [{:.6}, {:.6}], kron in [{:.6}, {:.6}]",
                    m.dim(),
                    m.len(),
                    e2.lo,
                    e2.hi,
                    ek.lo,
                    ek.hi
                ),
                lhs: enclosure_interval(&e2),
                rhs: squared,
                tolerance: 1e-6,
                verdict,
            })
        }
        SuiteId::BergerWang => {
            let m = if case == 0 {
                // Fixed smoke instance: the matrix-unit pair.
                MatrixSet::new(vec![
                    CMatrix::matrix_unit(2, 0, 1).expect("unit"),
                    CMatrix::matrix_unit(2, 1, 0).expect("unit"),
                ])
                .expect("valid")
            } else {
                random_matrix_set(&mut rng, 3, 3)
            };
            let e = jsr_enclosure_with(&m, &ep, &BoundSeeds::default())?;
            let r = m.bw_radius_estimate_with_budget(params.depth, params.budget)?;
            if r > e.hi + 1e-6 || e.lo > e.hi {
                return Ok(CaseResult {
                    description: format!("bound contradiction: r {} vs hi {}", r, e.hi),
                    lhs: enclosure_interval(&e),
                    rhs: (r, r),
                    tolerance: 1e-6,
                    verdict: Verdict::Fail,
                });
            }
            let gap = e.hi - r;
            let verdict = if gap <= 0.05 * e.hi.max(1e-300) {
                Verdict::Pass
            } else {
                Verdict::Inconclusive
            };
            Ok(CaseResult {
                description: format!("gap {gap:.6} of hi {:.6}", e.hi),
                lhs: enclosure_interval(&e),
                rhs: (r, r),
                tolerance: 0.05 * e.hi,
                verdict,
            })
        }
        SuiteId::UpperTriangular => {
            let m = random_triangular_set(&mut rng, 3, 3);
            let r1 = m
                .members()
                .iter()
                .flat_map(|a| (0..a.dim()).map(move |i| a.get(i, i).norm()))
                .fold(0.0f64, f64::max);
            let e = jsr_enclosure_with(&m, &ep, &BoundSeeds::default())?;
            let ok = e.hi - r1 <= 0.02 && e.lo >= r1 - 1e-6;
            Ok(CaseResult {
                description: format!("max diagonal {r1:.6}, enclosure [{:.6}, {:.6}]", e.lo, e.hi),
                lhs: enclosure_interval(&e),
                rhs: (r1, r1),
                tolerance: 0.02,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::RadicalQuotient => {
            let (algebra, name) = algebra_family(case);
            let count = rng.gen_range(2..=3);
            let elements = random_elements(&mut rng, &algebra, count);
            let depth = params.depth.min(10);
            let e1 = algebra.algebra_jsr(&elements, depth, params.delta)?;
            let rad = algebra.jacobson_radical()?;
            let (quotient, proj) = algebra.quotient(&rad)?;
            let mapped: Vec<Element> = elements.iter().map(|x| proj.apply(x)).collect();
            let e2 = quotient.algebra_jsr(&mapped, depth, params.delta)?;
            let slack = e1.width() + e2.width() + 1e-6;
            let ok = overlap(enclosure_interval(&e1), enclosure_interval(&e2), slack);
            Ok(CaseResult {
                description: format!("{name}: rad dim {}", rad.len()),
                lhs: enclosure_interval(&e1),
                rhs: enclosure_interval(&e2),
                tolerance: slack,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::RadicalAdjoin => {
            let (algebra, name) = algebra_family(case);
            let rad = algebra.jacobson_radical()?;
            if rad.is_empty() {
                // All families here have nonzero radical; guard anyway.
                return Ok(CaseResult {
                    description: format!("{name}: zero radical, adjoin trivial"),
                    lhs: (0.0, 0.0),
                    rhs: (0.0, 0.0),
                    tolerance: 0.0,
                    verdict: Verdict::Pass,
                });
            }
            let count = rng.gen_range(2..=3);
            let elements = random_elements(&mut rng, &algebra, count);
            let mut a = vec![Complex64::new(0.0, 0.0); algebra.dim()];
            for v in rad.basis() {
                let cff = unit_disc(&mut rng);
                for (ai, vi) in a.iter_mut().zip(v) {
                    *ai += cff * vi;
                }
            }
            let depth = params.depth.min(10);
            let e1 = algebra.algebra_jsr(&elements, depth, params.delta)?;
            let mut adjoined = elements.clone();
            adjoined.push(a);
            let e2 = algebra.algebra_jsr(&adjoined, depth, params.delta)?;
            let slack = e1.width() + e2.width() + 1e-6;
            let ok = overlap(enclosure_interval(&e1), enclosure_interval(&e2), slack);
            Ok(CaseResult {
                description: format!("{name}: adjoined radical element"),
                lhs: enclosure_interval(&e1),
                rhs: enclosure_interval(&e2),
                tolerance: slack,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::AlgebraicBw => {
            let (algebra, name) = algebra_family(case);
            let count = rng.gen_range(2..=3);
            let elements = random_elements(&mut rng, &algebra, count);
            let depth = params.depth.min(10);
            let e = algebra.algebra_jsr(&elements, depth, params.delta)?;
            // Alternate between the two computed ideals.
            let (ideal, ideal_name) = if case % 2 == 0 {
                (algebra.jacobson_radical()?, "Rad")
            } else {
                (algebra.rcq_a_ideal()?, "Rcq_a")
            };
            let reg = algebra.regular_set(&elements)?;
            let bw_lo = reg.bw_radius_estimate_with_budget(depth.min(8), params.budget)?;
            let rhs = if ideal.len() == algebra.dim() {
                // J = A: the quotient is zero and rho(M/J) = 0.
                (bw_lo.min(e.hi), e.hi)
            } else {
                let (quotient, proj) = algebra.quotient(&ideal)?;
                let mapped: Vec<Element> = elements.iter().map(|x| proj.apply(x)).collect();
                let eq = quotient.algebra_jsr(&mapped, depth, params.delta)?;
                (
                    eq.lo.max(bw_lo).min(e.hi + e.width() + 1e-6),
                    eq.hi.max(e.hi),
                )
            };
            let slack = e.width() + (rhs.1 - rhs.0).max(0.0) + 1e-6;
            let ok = overlap(enclosure_interval(&e), rhs, slack);
            Ok(CaseResult {
                description: format!("{name} with ideal {ideal_name} (dim {})", ideal.len()),
                lhs: enclosure_interval(&e),
                rhs,
                tolerance: slack,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::CentralIdeal => {
            // M_n plus a commutative diagonal summand; the summand is a
            // central ideal.
            let k = rng.gen_range(1..=2);
            let base = StructureAlgebra::full_matrix(2);
            let algebra = base.direct_sum(&StructureAlgebra::diagonal(k));
            let ideal_vectors: Vec<Element> = (0..k)
                .map(|i| {
                    let mut v = vec![Complex64::new(0.0, 0.0); algebra.dim()];
                    v[4 + i] = Complex64::new(1.0, 0.0);
                    v
                })
                .collect();
            let ideal = IdealBasis::new(&algebra, ideal_vectors)?;
            let count = rng.gen_range(2..=3);
            let elements = random_elements(&mut rng, &algebra, count);
            let depth = params.depth.min(10);
            let e = algebra.algebra_jsr(&elements, depth, params.delta)?;
            let r1 = elements
                .iter()
                .map(|a| algebra.element_spectral_radius(a))
                .fold(0.0f64, f64::max);
            let (quotient, proj) = algebra.quotient(&ideal)?;
            let mapped: Vec<Element> = elements.iter().map(|x| proj.apply(x)).collect();
            let eq = quotient.algebra_jsr(&mapped, depth, params.delta)?;
            let rhs = (eq.lo.max(r1), eq.hi.max(r1));
            let slack = e.width() + (rhs.1 - rhs.0).max(0.0) + 1e-6;
            let ok = overlap(enclosure_interval(&e), rhs, slack);
            Ok(CaseResult {
                description: format!("M2 + C^{k}: r1 {r1:.6}"),
                lhs: enclosure_interval(&e),
                rhs,
                tolerance: slack,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::OperatorBw => {
            let count = rng.gen_range(1..=3);
            let family: Vec<opmodel::ScalarPlusCorner> = (0..count)
                .map(|_| {
                    if case % 3 == 2 {
                        opmodel::nilpotent_corner_instance(&mut rng, 3)
                    } else {
                        opmodel::random_instance(&mut rng, 3)
                    }
                })
                .collect();
            let report = opmodel::verify_operator_bw(&family, params.depth.min(10), params.delta)?;
            let rhs = (report.rhs_lo, report.essential_jsr.max(report.enclosure.hi));
            Ok(CaseResult {
                description: format!(
                    "{count} operators, essential {:.6}, bw {:.6}",
                    report.essential_jsr, report.bw_lower
                ),
                lhs: enclosure_interval(&report.enclosure),
                rhs,
                tolerance: report.tolerance,
                verdict: if report.pass {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            })
        }
        SuiteId::Semicontinuity => {
            let m = random_matrix_set(&mut rng, 3, 3);
            let scale = m.max_norm();
            // Perturbation directions scaled to the set, applied as P/k.
            let directions: Vec<CMatrix> = m
                .members()
                .iter()
                .map(|_| {
                    let raw = random_matrix(&mut rng, m.dim());
                    raw.scale(Complex64::new(scale / m.dim() as f64, 0.0))
                })
                .collect();
            let n = 8.min(params.depth.max(1));
            let u = m.upper_bound_with_budget(n, params.budget)?;
            let mut worst_scaled_dev = 0.0f64;
            for k in 1..=10usize {
                let members: Vec<CMatrix> = m
                    .members()
                    .iter()
                    .zip(&directions)
                    .map(|(a, p)| {
                        a.add(&p.scale(Complex64::new(1.0 / k as f64, 0.0)))
                            .expect("same dim")
                    })
                    .collect();
                let mk = MatrixSet::new(members).expect("valid");
                let uk = mk.upper_bound_with_budget(n, params.budget)?;
                worst_scaled_dev = worst_scaled_dev.max((uk - u).abs() * k as f64);
            }
            let budget_bound = 10.0 * scale;
            // Large-k consistency of enclosures.
            let members: Vec<CMatrix> = m
                .members()
                .iter()
                .zip(&directions)
                .map(|(a, p)| a.add(&p.scale(Complex64::new(0.1, 0.0))).expect("same dim"))
                .collect();
            let e = jsr_enclosure_with(&m, &ep, &BoundSeeds::default())?;
            let ek = jsr_enclosure_with(
                &MatrixSet::new(members).expect("valid"),
                &ep,
                &BoundSeeds::default(),
            )?;
            let consistent = ek.lo <= e.hi + e.width() + ek.width() + 0.2 * scale + 1e-6;
            let ok = worst_scaled_dev <= budget_bound && consistent;
            Ok(CaseResult {
                description: format!(
                    "max k*|u(M_k)-u(M)| = {worst_scaled_dev:.6} vs 10*||M|| = {budget_bound:.6}"
                ),
                lhs: (worst_scaled_dev, worst_scaled_dev),
                rhs: (budget_bound, budget_bound),
                tolerance: 0.0,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
        SuiteId::HullInvariance => {
            let m = random_matrix_set(&mut rng, 3, 3);
            let e1 = jsr_enclosure_with(&m, &ep, &BoundSeeds::default())?;
            let enlarged = m.abs_hull_sample(3, seed ^ 0xA5A5_A5A5);
            let e2 = jsr_enclosure_with(&enlarged, &ep, &BoundSeeds::default())?;
            let slack = e1.width() + e2.width() + 1e-6;
            let ok = overlap(enclosure_interval(&e1), enclosure_interval(&e2), slack);
            Ok(CaseResult {
                description: format!("{} members plus 3 hull samples", m.len()),
                lhs: enclosure_interval(&e1),
                rhs: enclosure_interval(&e2),
                tolerance: slack,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        }
    }
}

/// Index word of w*w in the power-set alphabet: consecutive letter pairs of
/// the doubled witness mapped to their deduplicated pair-product members.
fn doubled_witness(m: &MatrixSet, p2: &MatrixSet, witness: &[usize]) -> Option<Vec<usize>> {
    if witness.is_empty() {
        return None;
    }
    let keys: Vec<_> = p2.members().iter().map(quant_key).collect();
    let doubled: Vec<usize> = witness.iter().chain(witness.iter()).copied().collect();
    let mut word = Vec::with_capacity(witness.len());
    for pair in doubled.chunks(2) {
        let prod = m.members()[pair[0]].mul_unchecked(&m.members()[pair[1]]);
        let key = quant_key(&prod);
        let idx = keys.iter().position(|k| *k == key)?;
        word.push(idx);
    }
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::all() {
            assert_eq!(SuiteId::parse(id.name()).unwrap(), *id);
        }
        assert!(matches!(
            SuiteId::parse("nosuch"),
            Err(JsrError::UnknownSuite(_))
        ));
    }

    #[test]
    fn zero_cases_rejected() {
        assert!(matches!(
            run_suite(SuiteId::BergerWang, 1, 0, 8, 1e-3),
            Err(JsrError::Usage(_))
        ));
    }

    #[test]
    fn berger_wang_fixed_pair_case() {
        let report = run_suite(SuiteId::BergerWang, 1, 1, 8, 1e-3).unwrap();
        assert!(report.suite_passed);
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.verdict, Verdict::Pass);
        // Fixed pair {E12, E21}: both sides equal 1.
        assert!((row.lhs_lo - 1.0).abs() < 1e-9);
        assert!((row.lhs_hi - 1.0).abs() < 1e-9);
        assert!((row.rhs_lo - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(SuiteId::UpperTriangular, 42, 5, 10, 1e-3).unwrap();
        let b = run_suite(SuiteId::UpperTriangular, 42, 5, 10, 1e-3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.suite_passed);
    }

    #[test]
    fn upper_triangular_seed_42_runs_clean() {
        let r = run_suite(SuiteId::UpperTriangular, 42, 50, 12, 1e-3).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.passed, 50);
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let r = run_suite(SuiteId::HullInvariance, 3, 4, 8, 0.01).unwrap();
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 5); // header + 4 cases
        assert!(csv.starts_with("suite,seed,case,"));
    }

    #[test]
    fn smoke_all_suites_small() {
        for id in SuiteId::all() {
            let r = run_suite(*id, 7, 3, 8, 0.02)
                .unwrap_or_else(|e| panic!("suite {} failed: {e}", id.name()));
            assert!(
                r.failures.is_empty(),
                "suite {} had failures: {:?}",
                id.name(),
                r.failures
            );
        }
    }

    #[test]
    fn radical_adjoin_seed_7_runs_clean() {
        let r = run_suite(SuiteId::RadicalAdjoin, 7, 50, 10, 1e-3).unwrap();
        assert!(r.suite_passed, "failures: {:?}", r.failures);
        assert!(r.failures.is_empty());
    }
}
