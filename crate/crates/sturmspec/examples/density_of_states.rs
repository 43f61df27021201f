//! Integrated density of states: from a boundary path, by eigenvalue counting
//! on a long chain, and the labels of the spectral gaps.
//!
//! cargo run --release --example density_of_states

use sturmspec::contfrac::{denominators, parse_alpha};
use sturmspec::export::g12;
use sturmspec::ids::{alpha_rational, dry_tmp_verify, ids_bruteforce, ids_path_bounded};
use sturmspec::spectree::{boundary_band, TreeShape};

fn main() -> sturmspec::Result<()> {
    let golden = parse_alpha("golden")?;
    let v = 1.0;
    let shape = TreeShape::new(&golden)?;
    let q = denominators(&golden, 16);
    let alpha = alpha_rational(&golden);
    for seed in [0usize, 1, 2] {
        let path = shape.extend_path(&Default::default(), 14, |n| seed % n)?;
        let e = boundary_band(&shape, &path, v, 0.0)?.mid();
        let ids = ids_path_bounded(&golden, &path)?;
        let brute = ids_bruteforce(alpha, v, e, 4 * q[16] as usize);
        println!("E = {:<16} path {} (bound {})  counted {}", g12(e), g12(ids.value), g12(ids.bound), g12(brute));
    }

    let report = dry_tmp_verify(&golden, 6, v, 5)?;
    println!("\ngaps of the level 6 and 7 bands at V = {v}:");
    for g in &report.gaps {
        let l = g.l.map_or("-".into(), |l| l.to_string());
        println!("  ({:>15}, {:>15})  N = {:<15} l = {l:>3}", g12(g.left), g12(g.right), g12(g.ids));
    }
    println!("labels realized: {:?}", report.realized);
    Ok(())
}
