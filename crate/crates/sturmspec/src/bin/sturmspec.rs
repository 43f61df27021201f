//! Command-line front end: band tables, the butterfly sweep and the
//! verification suites.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use sturmspec::bandscan::{spectrum_bands_exact, BandSet};
use sturmspec::bandtype::classify_at;
use sturmspec::contfrac::{parse_alpha, parse_digit_list, ContFrac};
use sturmspec::export::{bands_csv, bands_json, butterfly_csv, butterfly_svg, BandRecord};
use sturmspec::verify::{self, Params, Suite, DEFAULT_SEED};
use sturmspec::Error;

#[derive(Parser)]
#[command(name = "sturmspec", version, about = "Spectra of Sturmian Hamiltonians and their periodic approximants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bands of one periodic approximant, with their A/B types.
    Bands(BandsArgs),
    /// Bands of every approximant up to a depth, over a grid of couplings.
    Butterfly(ButterflyArgs),
    /// Run a verification suite, or `all`.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AlphaArgs {
    /// Digits c_1,c_2,... (optionally prefixed by `cf:`).
    #[arg(long)]
    cf: Option<String>,
    /// A rational p/q in [0, 1].
    #[arg(long)]
    rat: Option<String>,
    /// `golden` or `silver`.
    #[arg(long)]
    preset: Option<String>,
}

impl AlphaArgs {
    fn digits(&self) -> Result<Vec<i64>, Error> {
        if let Some(cf) = &self.cf {
            parse_digit_list(cf.strip_prefix("cf:").unwrap_or(cf))
        } else if let Some(rat) = &self.rat {
            parse_alpha(&format!("rat:{}", rat.strip_prefix("rat:").unwrap_or(rat)))
        } else {
            let preset = self.preset.as_deref().unwrap_or_default();
            match preset {
                "golden" | "silver" => parse_alpha(preset),
                _ => Err(Error::Input(format!("unknown preset {preset:?}"))),
            }
        }
    }

    fn is_preset(&self) -> bool {
        self.preset.is_some()
    }
}

#[derive(Args)]
struct BandsArgs {
    #[command(flatten)]
    alpha: AlphaArgs,
    /// Coupling constant; a decimal or p/q.
    #[arg(long = "V", allow_hyphen_values = true)]
    v: String,
    /// Approximant level (defaults to all given digits, or 8 for presets).
    #[arg(long, visible_alias = "depth")]
    k: Option<usize>,
    /// Isolate the edges exactly from the trace polynomial.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ButterflyArgs {
    #[command(flatten)]
    alpha: AlphaArgs,
    /// Coupling grid `a:b:n` (n evenly spaced samples).
    #[arg(long = "V-grid", allow_hyphen_values = true, conflicts_with = "v")]
    v_grid: Option<String>,
    /// A single coupling.
    #[arg(long = "V", allow_hyphen_values = true)]
    v: Option<f64>,
    /// Largest approximant level.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long = "V", allow_hyphen_values = true)]
    v: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "L")]
    l: Option<i64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<String>,
}

const PRESET_LEVEL: usize = 8;
const DEFAULT_GRID: &str = "0.2:8:32";

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Input(_)
            | Error::ZeroCoupling
            | Error::MalformedDigits(_)
            | Error::DegenerateExpansion
            | Error::SizeCap { .. }
            | Error::Io(_)
    )
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if is_input_error(e) { 2 } else { 1 })
}

fn emit(out: Option<&str>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{path}: {e}"))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

/// A decimal like `-1.25e2` or a fraction `p/q`, read exactly.
fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Input(format!("bad coupling {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.starts_with(['+', '-']) || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let int = if int.is_empty() || int == "-" || int == "+" { format!("{int}0") } else { int.to_string() };
    let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor =
        if scale >= 0 { num_traits::pow(ten, scale as usize) } else { num_traits::pow(ten, (-scale) as usize).recip() };
    Ok(BigRational::from_integer(digits) * factor)
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::Input(format!("bad grid {s:?}, expected a:b:n"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok(match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    })
}

fn approximant(alpha: &AlphaArgs, k: Option<usize>) -> Result<ContFrac, Error> {
    let digits = alpha.digits()?;
    let k = match k {
        Some(k) => k,
        None if alpha.is_preset() => PRESET_LEVEL,
        None => digits.len(),
    };
    ContFrac::approximant(&digits, k)
}

fn typed_records(c: &ContFrac, v: f64) -> Result<Vec<BandRecord>, Error> {
    let (set, types) = classify_at(c, v)?;
    Ok(set.bands.iter().zip(types).map(|(b, t)| BandRecord::new(b, v, t)).collect())
}

fn cmd_bands(args: &BandsArgs) -> Result<String, Error> {
    let c = approximant(&args.alpha, args.k)?;
    let v_exact = parse_rational(&args.v)?;
    let v = to_f64(&v_exact);
    let records = if args.exact {
        let set: BandSet = spectrum_bands_exact(&c, &v_exact)?;
        let (_, types) = classify_at(&c, v)?;
        set.bands.iter().zip(types).map(|(b, t)| BandRecord::new(b, v, t)).collect()
    } else {
        typed_records(&c, v)?
    };
    match args.format {
        Format::Json => Ok(bands_json(&records)),
        Format::Csv => bands_csv(&records),
        Format::Svg => Ok(butterfly_svg(&records)),
    }
}

fn cmd_butterfly(args: &ButterflyArgs) -> Result<String, Error> {
    let digits = args.alpha.digits()?;
    let depth = args.depth.min(digits.len());
    let vs = match (args.v, &args.v_grid) {
        (Some(v), _) => vec![v],
        (None, Some(g)) => parse_grid(g)?,
        (None, None) => parse_grid(DEFAULT_GRID)?,
    };
    let levels = (1..=depth).map(|k| ContFrac::approximant(&digits, k)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<BandRecord>> = vs
        .par_iter()
        .map(|&v| {
            let mut out = Vec::new();
            for c in &levels {
                out.extend(typed_records(c, v)?);
            }
            Ok(out)
        })
        .collect::<Result<_, Error>>()?;
    let records: Vec<BandRecord> = rows.into_iter().flatten().collect();
    match args.format {
        Format::Csv => butterfly_csv(&records),
        Format::Json => Ok(bands_json(&records)),
        Format::Svg => Ok(butterfly_svg(&records)),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), Error> {
    let params = Params { v: args.v, k: args.k, l: args.l, depth: args.depth, tol: args.tol, seed: args.seed };
    let reports = if args.suite == "all" {
        verify::run_all(&params)?
    } else {
        vec![verify::run(args.suite.parse::<Suite>()?, &params)?]
    };
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
    }
    let passed = reports.iter().all(|r| r.passed);
    if reports.len() > 1 {
        let n = reports.iter().filter(|r| r.passed).count();
        text.push_str(&format!("{n}/{} suites passed\n", reports.len()));
    }
    Ok((text, passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bands(a) => cmd_bands(a).and_then(|s| emit(a.out.as_deref(), &s)).map(|_| true),
        Command::Butterfly(a) => cmd_butterfly(a).and_then(|s| emit(a.out.as_deref(), &s)).map(|_| true),
        Command::Verify(a) => cmd_verify(a).and_then(|(s, ok)| emit(a.out.as_deref(), &s).map(|_| ok)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(parse_rational("1").unwrap(), r(1, 1));
        assert_eq!(parse_rational("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rational("3/6").unwrap(), r(1, 2));
        assert_eq!(parse_rational("1.5e-1").unwrap(), r(3, 20));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_grid("0:1:0").unwrap().is_empty());
        assert_eq!(parse_grid("2:9:1").unwrap(), vec![2.0]);
        assert!(parse_grid("0:1").is_err());
    }
}
