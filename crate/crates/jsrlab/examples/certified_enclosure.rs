//! Certified JSR enclosure of the classic unipotent pair.
//!
//! The pair {[[1,1],[0,1]], [[1,0],[1,1]]} attains its joint spectral
//! radius on the length-2 word AB, with value (1+sqrt5)/2.
//!
//! Run with: cargo run --release --example certified_enclosure

use jsrlab::jsr;
use jsrlab::matrix::CMatrix;
use jsrlab::MatrixSet;

fn main() -> jsrlab::Result<()> {
    let set = MatrixSet::with_label(
        vec![
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]])?,
            CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]])?,
        ],
        "classic unipotent pair",
    )?;

    let enclosure = jsr::jsr_enclosure(&set, 14, 0.02)?;
    println!("set:        {}", set.label().unwrap_or("unnamed"));
    println!("enclosure:  [{:.12}, {:.12}]", enclosure.lo, enclosure.hi);
    println!("width:      {:.3e}", enclosure.width());
    println!(
        "witness:    {:?} (word over member indices)",
        enclosure.lo_witness
    );
    println!("nodes:      {}", enclosure.nodes_explored);
    println!("converged:  {}", enclosure.converged);

    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    println!("reference:  (1+sqrt5)/2 = {golden:.12}");
    Ok(())
}
