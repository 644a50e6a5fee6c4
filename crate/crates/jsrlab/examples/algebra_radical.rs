//! Structure-constant algebras: radical, centre, quotients, and the JSR of
//! element families through the regular representation.
//!
//! The upper triangular algebra T3 has the strictly upper triangle as its
//! Jacobson radical; modulo that radical it is commutative, so the JSR of
//! any family equals the largest single-element spectral radius, which the
//! quotient computation exposes directly.
//!
//! Run with: cargo run --release --example algebra_radical

use jsrlab::algebra::StructureAlgebra;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() -> jsrlab::Result<()> {
    let t3 = StructureAlgebra::upper_triangular(3);
    let (associative, residual) = t3.check_associativity();
    println!(
        "T3: dim {}, associative: {associative} (residual {residual:.1e})",
        t3.dim()
    );

    let rad = t3.jacobson_radical()?;
    println!("Jacobson radical: dim {}", rad.len());

    let rcqa = t3.rcq_a_ideal()?;
    println!(
        "largest ideal commutative modulo the radical: dim {}",
        rcqa.len()
    );

    let center = t3.center()?;
    println!("centre: dim {}", center.len());

    // Two triangular elements; diagonals (0.9, 0.4, -0.3) and (0.5, 0.8, 0.2)
    // in the basis order e11, e12, e13, e22, e23, e33.
    let x = vec![c(0.9), c(0.7), c(-0.2), c(0.4), c(0.6), c(-0.3)];
    let y = vec![c(0.5), c(-0.9), c(0.8), c(0.8), c(0.3), c(0.2)];
    let r1 = t3
        .element_spectral_radius(&x)
        .max(t3.element_spectral_radius(&y));
    println!("\nmax single-element spectral radius r_1 = {r1:.9}");

    let e = t3.algebra_jsr(&[x.clone(), y.clone()], 12, 0.01)?;
    println!("JSR enclosure of {{x, y}}: [{:.9}, {:.9}]", e.lo, e.hi);

    let (quotient, projection) = t3.quotient(&rad)?;
    let qx = projection.apply(&x);
    let qy = projection.apply(&y);
    let eq = quotient.algebra_jsr(&[qx, qy], 12, 0.01)?;
    println!(
        "JSR enclosure modulo the radical: [{:.9}, {:.9}]",
        eq.lo, eq.hi
    );
    println!("\nall three agree because T3 is commutative modulo its radical");
    Ok(())
}
