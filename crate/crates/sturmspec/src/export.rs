//! Byte-stable text output: `%.12g` floats, JSON and CSV records, and the
//! SVG butterfly.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::bandscan::{Band, BandSet, Theta};
use crate::bandtype::BandType;
use crate::error::{Error, Result};
use crate::ids::GapReport;

const SIGNIFICANT: i32 = 12;

/// Formats `x` like C's `%.12g`.
pub fn g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // The exponent after rounding to 12 significant digits.
    let sci = format!("{:.*e}", (SIGNIFICANT - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..SIGNIFICANT).contains(&exp) {
        let fixed = format!("{:.*}", (SIGNIFICANT - 1 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number printed as `%.12g`, or `null` when not finite.
pub fn json_float(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&g12(x)).expect("g12 is valid JSON"))
    } else {
        Value::Null
    }
}

fn theta_str(t: Theta) -> &'static str {
    match t {
        Theta::Zero => "0",
        Theta::Pi => "pi",
    }
}

fn type_str(t: Option<BandType>) -> String {
    t.map(|t| t.to_string()).unwrap_or_default()
}

fn cf_str(digits: &[i64]) -> String {
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

/// One band together with the expansion, coupling and type it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct BandRecord {
    pub cf: Vec<i64>,
    pub v: f64,
    pub index: usize,
    pub left: f64,
    pub right: f64,
    pub theta_left: Theta,
    pub theta_right: Theta,
    pub band_type: Option<BandType>,
}

impl BandRecord {
    pub fn new(band: &Band, v: f64, band_type: Option<BandType>) -> Self {
        BandRecord {
            cf: band.parent.digits().to_vec(),
            v,
            index: band.index,
            left: band.left,
            right: band.right,
            theta_left: band.theta_left,
            theta_right: band.theta_right,
            band_type,
        }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("cf".into(), Value::Array(self.cf.iter().map(|&d| Value::from(d)).collect()));
        m.insert("V".into(), json_float(self.v));
        m.insert("index".into(), Value::from(self.index));
        m.insert("left".into(), json_float(self.left));
        m.insert("right".into(), json_float(self.right));
        m.insert("theta_left".into(), Value::from(theta_str(self.theta_left)));
        m.insert("theta_right".into(), Value::from(theta_str(self.theta_right)));
        m.insert("type".into(), self.band_type.map_or(Value::Null, |t| Value::from(t.to_string())));
        Value::Object(m)
    }
}

/// Records for a band set, with types when known.
pub fn band_records(set: &BandSet, types: Option<&[BandType]>) -> Vec<BandRecord> {
    set.bands
        .iter()
        .enumerate()
        .map(|(i, b)| BandRecord::new(b, set.v, types.and_then(|t| t.get(i).copied())))
        .collect()
}

pub fn bands_json(records: &[BandRecord]) -> String {
    let v = Value::Array(records.iter().map(BandRecord::to_json).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut any = false;
    for row in rows {
        if !any {
            w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
            any = true;
        }
        w.write_record(&row).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// CSV with one line per band; an empty input gives an empty string.
pub fn bands_csv(records: &[BandRecord]) -> Result<String> {
    csv_string(
        &["cf", "V", "index", "left", "right", "theta_left", "theta_right", "type"],
        records.iter().map(|r| {
            vec![
                cf_str(&r.cf),
                g12(r.v),
                r.index.to_string(),
                g12(r.left),
                g12(r.right),
                theta_str(r.theta_left).into(),
                theta_str(r.theta_right).into(),
                type_str(r.band_type),
            ]
        }),
    )
}

/// Butterfly table: `cf, V, left, right, type`.
pub fn butterfly_csv(records: &[BandRecord]) -> Result<String> {
    csv_string(
        &["cf", "V", "left", "right", "type"],
        records.iter().map(|r| vec![cf_str(&r.cf), g12(r.v), g12(r.left), g12(r.right), type_str(r.band_type)]),
    )
}

/// Gap table: `alpha, V, k, gap_left, gap_right, ids, l, residual`.
pub fn gaps_csv(alpha: &[i64], v: f64, k: usize, gaps: &[GapReport]) -> Result<String> {
    csv_string(
        &["alpha", "V", "k", "gap_left", "gap_right", "ids", "l", "residual"],
        gaps.iter().map(|g| {
            vec![
                cf_str(alpha),
                g12(v),
                k.to_string(),
                g12(g.left),
                g12(g.right),
                g12(g.ids),
                g.l.map(|l| l.to_string()).unwrap_or_default(),
                g12(g.residual),
            ]
        }),
    )
}

pub fn gaps_json(alpha: &[i64], v: f64, k: usize, gaps: &[GapReport]) -> String {
    let rows = gaps
        .iter()
        .map(|g| {
            let mut m = Map::new();
            m.insert("alpha".into(), Value::Array(alpha.iter().map(|&d| Value::from(d)).collect()));
            m.insert("V".into(), json_float(v));
            m.insert("k".into(), Value::from(k));
            m.insert("gap_left".into(), json_float(g.left));
            m.insert("gap_right".into(), json_float(g.right));
            m.insert("ids".into(), json_float(g.ids));
            m.insert("l".into(), g.l.map_or(Value::Null, Value::from));
            m.insert("residual".into(), json_float(g.residual));
            Value::Object(m)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
    s.push('\n');
    s
}

pub const COLOR_A: &str = "#1f77b4";
pub const COLOR_B: &str = "#d62728";
const COLOR_NONE: &str = "#7f7f7f";

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 40.0;

/// The butterfly as SVG rects: energy across, coupling downwards, colored by
/// band type. An empty input gives an empty string.
pub fn butterfly_svg(records: &[BandRecord]) -> String {
    if records.is_empty() {
        return String::new();
    }
    let mut vs: Vec<f64> = records.iter().map(|r| r.v).collect();
    vs.sort_by(f64::total_cmp);
    vs.dedup();
    let emin = records.iter().map(|r| r.left).fold(f64::INFINITY, f64::min);
    let emax = records.iter().map(|r| r.right).fold(f64::NEG_INFINITY, f64::max);
    let span = if emax > emin { emax - emin } else { 1.0 };
    let plot_w = SVG_WIDTH - 2.0 * MARGIN;
    let plot_h = SVG_HEIGHT - 2.0 * MARGIN;
    let row_h = plot_h / vs.len() as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        SVG_WIDTH, SVG_HEIGHT, SVG_WIDTH, SVG_HEIGHT
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="12">E in [{}, {}], V in [{}, {}]</text>"#,
        MARGIN * 0.6,
        g12(emin),
        g12(emax),
        g12(vs[0]),
        g12(vs[vs.len() - 1])
    );
    for r in records {
        let row = vs.partition_point(|&v| v < r.v);
        let x = MARGIN + (r.left - emin) / span * plot_w;
        let w = ((r.right - r.left) / span * plot_w).max(0.5);
        let y = MARGIN + row as f64 * row_h;
        let fill = match r.band_type {
            Some(BandType::A) => COLOR_A,
            Some(BandType::B) => COLOR_B,
            None => COLOR_NONE,
        };
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
            g12(x),
            g12(y),
            g12(w),
            g12(row_h)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (2f64.sqrt(), "1.41421356237"),
            (1e-5, "1e-05"),
            (1.5e-4, "0.00015"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (999999999999.5, "1e+12"),
            (-1e100, "-1e+100"),
            (6.02214076e23, "6.02214076e+23"),
        ];
        for (x, want) in cases {
            assert_eq!(g12(x), want, "{x}");
        }
    }

    #[test]
    fn json_numbers_verbatim() {
        let v = json_float(0.1 + 0.2);
        assert_eq!(serde_json::to_string(&v).unwrap(), "0.3");
        assert_eq!(json_float(f64::NAN), Value::Null);
    }

    #[test]
    fn empty_outputs() {
        assert_eq!(butterfly_csv(&[]).unwrap(), "");
        assert_eq!(butterfly_svg(&[]), "");
    }
}
