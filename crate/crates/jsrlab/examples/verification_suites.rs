//! Running the seeded verification suites from code.
//!
//! Each suite tests one spectral-radius identity over generated instances
//! and reports per-case intervals and verdicts; the same suites back the
//! `jsrlab verify` subcommand.
//!
//! Run with: cargo run --release --example verification_suites

use jsrlab::verify::{run_suite, SuiteId};

fn main() -> jsrlab::Result<()> {
    for id in [
        SuiteId::BergerWang,
        SuiteId::UpperTriangular,
        SuiteId::RadicalQuotient,
    ] {
        let report = run_suite(id, 42, 10, 12, 0.02)?;
        println!(
            "{:<18} {:>2}/{} passed, {} inconclusive, suite_passed = {}",
            report.suite, report.passed, report.cases, report.inconclusive, report.suite_passed
        );
        if let Some(row) = report.rows.first() {
            println!(
                "    case 0: lhs [{:.6}, {:.6}] vs rhs [{:.6}, {:.6}] ({})",
                row.lhs_lo, row.lhs_hi, row.rhs_lo, row.rhs_hi, row.description
            );
        }
    }
    println!("\nJSON and CSV forms come from VerificationReport::to_json / to_csv.");
    Ok(())
}
