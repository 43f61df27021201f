//! The butterfly of golden approximants over a range of couplings, written
//! as CSV and SVG.
//!
//! cargo run --release --example butterfly -- [output directory]

use std::path::PathBuf;

use sturmspec::bandtype::classify_at;
use sturmspec::contfrac::{parse_alpha, ContFrac};
use sturmspec::export::{butterfly_csv, butterfly_svg, BandRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let golden = parse_alpha("golden")?;
    let mut records = Vec::new();
    for i in 0..60 {
        let v = 0.2 + 7.8 * i as f64 / 59.0;
        for k in 1..=6 {
            let (set, types) = classify_at(&ContFrac::approximant(&golden, k)?, v)?;
            records.extend(set.bands.iter().zip(types).map(|(b, t)| BandRecord::new(b, v, t)));
        }
    }
    let csv = dir.join("butterfly.csv");
    let svg = dir.join("butterfly.svg");
    std::fs::write(&csv, butterfly_csv(&records)?)?;
    std::fs::write(&svg, butterfly_svg(&records))?;
    println!("{} bands\n{}\n{}", records.len(), csv.display(), svg.display());
    Ok(())
}
