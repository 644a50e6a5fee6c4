//! Square and multiplication-operator identities.
//!
//! For any bounded set M: rho(M^2) = rho(M)^2, and the family of
//! two-sided multiplications X -> A X B (realized as kron(B^T, A) on
//! vectorized matrices) satisfies rho({A x B}) = rho(M)^2. Both are
//! checked here through independent enclosures.
//!
//! Run with: cargo run --release --example multiplication_operators

use jsrlab::jsr;
use jsrlab::matrix::CMatrix;
use jsrlab::MatrixSet;

fn main() -> jsrlab::Result<()> {
    let set = MatrixSet::new(vec![
        CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]])?,
        CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]])?,
    ])?;

    let e = jsr::jsr_enclosure(&set, 12, 0.01)?;
    println!("rho(M)   in [{:.9}, {:.9}]", e.lo, e.hi);
    println!("rho(M)^2 in [{:.9}, {:.9}]", e.lo * e.lo, e.hi * e.hi);

    let squares = set.power_set(2)?;
    println!("\n|M^2| = {} distinct products", squares.len());
    let e2 = jsr::jsr_enclosure(&squares, 12, 0.01)?;
    println!("rho(M^2) in [{:.9}, {:.9}]", e2.lo, e2.hi);

    let mult_ops = set.mult_operator_set()?;
    println!(
        "\n|L_M R_M| = {} operators of dimension {}",
        mult_ops.len(),
        mult_ops.dim()
    );
    let ek = jsr::jsr_enclosure(&mult_ops, 8, 0.05)?;
    println!("rho(L_M R_M) in [{:.9}, {:.9}]", ek.lo, ek.hi);

    let consistent = ek.lo <= e.hi * e.hi + 1e-9 && e.lo * e.lo <= ek.hi + 1e-9;
    println!("\nintervals consistent with rho(L_M R_M) = rho(M)^2: {consistent}");
    Ok(())
}
