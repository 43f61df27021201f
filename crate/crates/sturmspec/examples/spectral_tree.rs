//! The spectral tree of the golden mean: vertex counts, the band attached to
//! a vertex and the boundary energy of a path.
//!
//! cargo run --release --example spectral_tree

use sturmspec::contfrac::parse_alpha;
use sturmspec::export::g12;
use sturmspec::spectree::{boundary_energy, BoundaryPath, SpectralTree, TreeShape};

fn main() -> sturmspec::Result<()> {
    let golden = parse_alpha("golden")?;
    let tree = SpectralTree::build(&golden, 6)?;
    for level in 0..=6 {
        let (a, b) = tree.level_counts(level);
        println!("level {level}: {a} A, {b} B");
    }

    let v = 2.0;
    let leaf = *tree.level(6).first().expect("level 6 is not empty");
    let path = tree.path(leaf);
    println!("\nleftmost leaf {path}:");
    let mut id = Some(leaf);
    while let Some(i) = id {
        let vx = tree.vertex(i);
        let (l, r) = tree.psi(i, v)?.interval();
        println!("  level {:>2} {:>4}  [{}, {}]", vx.level, vx.label.to_string(), g12(l), g12(r));
        id = vx.parent;
    }

    // Deep paths pin down a single energy.
    let shape = TreeShape::new(&golden)?;
    let deep = shape.extend_path(&BoundaryPath::default(), 24, |n| n / 2)?;
    println!("\nE({deep}; V = {v}) = {}", g12(boundary_energy(&shape, &deep, v, 1e-6)?));

    println!("\ndepth 2 in DOT:\n{}", SpectralTree::build(&golden, 2)?.to_dot());
    Ok(())
}
