//! A/B band types, their counts per level and the duality between
//! `[c, m]` and `[c, m-1, 1]`.
//!
//! cargo run --release --example band_types

use sturmspec::bandtype::{band_types, BandType};
use sturmspec::contfrac::{denominators, parse_alpha, ContFrac};

fn main() -> sturmspec::Result<()> {
    let golden = parse_alpha("golden")?;
    let q = denominators(&golden, 8);
    for v in [0.5, 4.5] {
        println!("golden, V = {v}");
        for k in 1..=8 {
            let types = band_types(&ContFrac::approximant(&golden, k)?, v)?;
            let a = types.iter().filter(|&&t| t == BandType::A).count();
            let word: String = types.iter().map(|t| t.to_string()).collect();
            // q[0] is q_{-1}.
            println!("  k = {k}: {a:>2} A, {:>2} B (expected {}, {})  {word}", types.len() - a, q[k + 1] - q[k], q[k]);
        }
    }

    let c = ContFrac::new(&[0, 0, 2, 1])?;
    let a = band_types(&c.extend(3)?, 1.0)?;
    let b = band_types(&c.extend(2)?.extend(1)?, 1.0)?;
    println!("\n[c,3]     {a:?}\n[c,2,1]   {b:?}");
    Ok(())
}
