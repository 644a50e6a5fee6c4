//! Scalar-plus-corner operators: rho(M) = max(rho_e(M), r(M)) checked on an
//! exactly solvable family.
//!
//! Operators lambda*I + K with a finite corner K are block diagonal, so
//! their essential norm is exactly |lambda| while the corner drives the
//! finite part. With jointly nilpotent corners the BW radius comes from
//! the scalars alone and the essential JSR decides everything.
//!
//! Run with: cargo run --release --example operator_model

use jsrlab::matrix::CMatrix;
use jsrlab::opmodel::{self, ScalarPlusCorner};
use num_complex::Complex64;

fn main() -> jsrlab::Result<()> {
    let mut k1 = CMatrix::zeros(2)?;
    k1.set(0, 1, Complex64::new(0.8, 0.3));
    let mut k2 = CMatrix::zeros(2)?;
    k2.set(0, 1, Complex64::new(-0.6, 0.1));
    let family = vec![
        ScalarPlusCorner::new(Complex64::new(0.9, 0.0), k1)?,
        ScalarPlusCorner::new(Complex64::new(0.9, 0.0), k2)?,
        // One operator whose corner dominates its scalar part.
        ScalarPlusCorner::new(
            Complex64::new(0.5, 0.0),
            CMatrix::from_real_rows(&[vec![1.5]])?,
        )?,
    ];

    for (i, t) in family.iter().enumerate() {
        println!(
            "T{i}: |lambda| = {:.3}, ||T|| = {:.6}, rho(T) = {:.6}, ||T||_e = {:.3}",
            t.lambda().norm(),
            t.op_norm(),
            t.spectral_radius(),
            t.essential_norm()
        );
    }

    let report = opmodel::verify_operator_bw(&family, 10, 1e-3)?;
    println!(
        "\nessential JSR rho_e(M)      = {:.9}",
        report.essential_jsr
    );
    println!("BW lower bound r(M) (est.)  = {:.9}", report.bw_lower);
    println!("max(rho_e, r)               = {:.9}", report.rhs_lo);
    println!(
        "enclosure of embedded M     = [{:.9}, {:.9}]",
        report.enclosure.lo, report.enclosure.hi
    );
    println!("identity verified: {}", report.pass);
    Ok(())
}
