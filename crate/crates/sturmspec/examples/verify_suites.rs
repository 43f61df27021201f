//! Runs the verification suites given on the command line (all by default).
//!
//! cargo run --release --example verify_suites -- traces edges words

use sturmspec::verify::{run, Params, Suite};

fn main() -> sturmspec::Result<()> {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let suites = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<sturmspec::Result<_>>()?
    };
    let params = Params::default();
    let mut failed = 0;
    for s in suites {
        let t = std::time::Instant::now();
        let r = run(s, &params)?;
        print!("{r}");
        println!("     ({:.2?})", t.elapsed());
        failed += usize::from(!r.passed);
    }
    std::process::exit(i32::from(failed > 0));
}
