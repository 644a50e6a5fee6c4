//! Norm upper bounds and BW lower bounds as functions of the word length.
//!
//! upper_bound(n) = max over length-n products of ||P||^(1/n) decreases
//! along doubling; the BW bound r_n = max rho(P)^(1/n) climbs towards the
//! same limit, the joint spectral radius.
//!
//! Run with: cargo run --release --example bound_tables

use jsrlab::matrix::CMatrix;
use jsrlab::MatrixSet;
use num_complex::Complex64;

fn main() -> jsrlab::Result<()> {
    let set = MatrixSet::new(vec![
        CMatrix::from_rows(&[
            vec![Complex64::new(0.2, 0.5), Complex64::new(0.9, 0.0)],
            vec![Complex64::new(-0.4, 0.1), Complex64::new(0.3, -0.3)],
        ])?,
        CMatrix::from_rows(&[
            vec![Complex64::new(0.7, 0.0), Complex64::new(0.0, -0.6)],
            vec![Complex64::new(0.5, 0.2), Complex64::new(-0.1, 0.4)],
        ])?,
    ])?;

    println!(
        "{:>3} {:>18} {:>18} {:>12}",
        "n", "upper_bound", "bw_lower", "witness"
    );
    for n in 1..=10 {
        let ub = set.upper_bound(n)?;
        let (lb, witness) = set.lower_bound_bw(n)?;
        let w: Vec<String> = witness.iter().map(|i| i.to_string()).collect();
        println!("{n:>3} {ub:>18.12} {lb:>18.12} {:>12}", w.join(""));
    }

    let r = set.bw_radius_estimate(10)?;
    println!("\nbest BW lower bound over n <= 10: {r:.12}");
    Ok(())
}
