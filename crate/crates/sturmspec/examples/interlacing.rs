//! The period of `[c, m, n]` as a rank-two perturbation of the periods of
//! `[c, m]` and `[c, m, n-1]` placed side by side, and the resulting
//! interlacing of eigenvalues.
//!
//! cargo run --example interlacing

use sturmspec::bandscan::Theta;
use sturmspec::contfrac::ContFrac;
use sturmspec::export::g12;
use sturmspec::interlace::{interlacing_check, rank2_decomposition};
use sturmspec::linalg::eigenvalues;

fn row(xs: &[f64]) -> String {
    xs.iter().map(|&x| format!(" {:>9}", g12((x * 1e6).round() / 1e6 + 0.0))).collect()
}

fn main() -> sturmspec::Result<()> {
    let c = ContFrac::new(&[0, 0, 1, 2])?;
    let (m, n, v) = (2, 1, 1.0);
    let theta = (Theta::Pi, Theta::Zero, Theta::Pi);
    let d = rank2_decomposition(&c, m, n, v, theta)?;
    println!("{c}, m = {m}, n = {n}, V = {v}, blocks {} + {}", d.d1, d.x.len() - d.d1);
    println!("  direct sum  {}", row(&eigenvalues(&d.z)?));
    println!("  [c,m,n]     {}", row(&eigenvalues(&d.y_mat)?));
    println!("  perturbation eigenvalues {}", row(&d.perturbation_spectrum()?));
    println!("  residual {}, trace {}", g12(d.residual()), g12(d.trace()));

    let r = interlacing_check(&c, m, n, v, theta)?;
    println!(
        "  interlacing holds: {} ({} simple eigenvalues, margin {})",
        r.holds(),
        r.simple,
        g12(r.min_strict_margin)
    );
    Ok(())
}
