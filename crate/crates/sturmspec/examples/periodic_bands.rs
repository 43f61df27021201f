//! Band spectra of periodic approximants: counts, measure and the exact
//! edge isolation for small periods.
//!
//! cargo run --release --example periodic_bands

use sturmspec::bandscan::{spectrum_bands, spectrum_bands_exact};
use sturmspec::contfrac::{parse_alpha, ContFrac};
use sturmspec::export::g12;
use sturmspec::tracepoly::rational;

fn main() -> sturmspec::Result<()> {
    let golden = parse_alpha("golden")?;
    let v = 1.0;
    println!("{:>3} {:>5} {:>6} {:>14} {:>14}", "k", "q", "bands", "measure", "smallest gap");
    for k in 1..=12 {
        let set = spectrum_bands(&ContFrac::approximant(&golden, k)?, v)?;
        let measure: f64 = set.bands.iter().map(|b| b.width()).sum();
        let gap = set.bands.windows(2).map(|w| w[1].left - w[0].right).fold(f64::INFINITY, f64::min);
        println!("{k:>3} {:>5} {:>6} {:>14} {:>14}", set.bands[0].q, set.len(), g12(measure), g12(gap));
    }

    let c = ContFrac::new(&[0, 0, 2, 1])?;
    let float = spectrum_bands(&c, 2.0)?;
    let exact = spectrum_bands_exact(&c, &rational(2, 1))?;
    println!("\n{c} at V = 2");
    for (a, b) in float.bands.iter().zip(&exact.bands) {
        println!(
            "  [{}, {}]  exact [{}, {}]  edge phases {}/{}",
            g12(a.left),
            g12(a.right),
            g12(b.left),
            g12(b.right),
            b.theta_left,
            b.theta_right
        );
    }
    Ok(())
}
