//! Exact trace polynomials of the transfer matrices and the Fricke-Vogt
//! invariant.
//!
//! cargo run --example trace_polynomials

use sturmspec::contfrac::ContFrac;
use sturmspec::export::g12;
use sturmspec::tracepoly::{
    fricke_vogt_poly, fricke_vogt_residual, rational, trace_eval, trace_map_sequence, trace_poly,
};

fn main() -> sturmspec::Result<()> {
    let v = rational(1, 1);
    for digits in [&[0, 0][..], &[0, 0, 1], &[0, 0, 2], &[0, 0, 1, 1], &[0, 0, 2, 1], &[0, 0, 1, 2]] {
        let c = ContFrac::new(digits)?;
        let t = trace_poly(&c, &v);
        println!("t_{c}(E; V=1) = {}", t.poly);
    }

    // The invariant vanishes identically in E.
    let c = ContFrac::new(&[0, 0, 1, 2])?;
    let fv = fricke_vogt_poly(&c, 3, &v)?;
    println!("\nFricke-Vogt polynomial for {c}, n = 3: {fv}");
    println!("float residual at E = 0.7, V = 2.5: {}", g12(fricke_vogt_residual(&c, 3, 0.7, 2.5)?));

    // The trace map recursion reproduces the direct products.
    let golden = [1i64; 12];
    let seq = trace_map_sequence(&golden, 0.3, 1.5);
    let direct = trace_eval(&ContFrac::approximant(&golden, 8)?, 0.3, 1.5)?;
    println!("\ngolden level 8 at E = 0.3, V = 1.5: trace map {}, product {}", g12(seq[9]), g12(direct));
    Ok(())
}
