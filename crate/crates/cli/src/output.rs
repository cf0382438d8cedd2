//! Number formatting, the sweep row schema and output sinks.

use std::io::Write;
use std::path::Path;

use fracineq::{BoundReport, TheoremId};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Columns of a sweep CSV, in order.
pub const SWEEP_COLUMNS: [&str; 14] = [
    "alpha", "s", "q", "a", "b", "x", "abs_sf", "b22", "b23", "b24", "b25", "b26", "tightest", "violation",
];

/// Significant digits in CSV output; enough for a lossless float round trip.
pub const CSV_DIGITS: usize = 17;

/// `%g`-style formatting with `digits` significant digits: fixed notation
/// for decimal exponents in `[-5, digits)`, scientific otherwise, with
/// trailing zeros removed.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { "-" } else { "+" };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub s: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub abs_sf: f64,
    pub b22: f64,
    pub b23: f64,
    pub b24: f64,
    pub b25: Option<f64>,
    pub b26: Option<f64>,
    pub tightest: TheoremId,
    pub violation: u8,
}

impl SweepRow {
    pub fn new(point: [f64; 6], report: &BoundReport) -> Self {
        let [alpha, s, q, a, b, x] = point;
        Self {
            alpha,
            s,
            q,
            a,
            b,
            x,
            abs_sf: report.abs_sf,
            b22: report.b22,
            b23: report.b23,
            b24: report.b24,
            b25: report.b25,
            b26: report.b26,
            tightest: report.tightest,
            violation: u8::from(!report.violations.is_empty()),
        }
    }

    fn record(&self) -> Vec<String> {
        let f = |v: f64| format_sig(v, CSV_DIGITS);
        let opt = |v: Option<f64>| v.map(f).unwrap_or_default();
        vec![
            f(self.alpha),
            f(self.s),
            f(self.q),
            f(self.a),
            f(self.b),
            f(self.x),
            f(self.abs_sf),
            f(self.b22),
            f(self.b23),
            f(self.b24),
            opt(self.b25),
            opt(self.b26),
            self.tightest.label().to_string(),
            self.violation.to_string(),
        ]
    }
}

/// Renders rows as CSV, preceded by `# seed=N` when `seed` is given.
pub fn sweep_csv(rows: &[SweepRow], seed: Option<u64>) -> CliResult<String> {
    let mut buf = Vec::new();
    if let Some(seed) = seed {
        writeln!(buf, "# seed={seed}")?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(SWEEP_COLUMNS)?;
        for row in rows {
            w.write_record(row.record())?;
        }
        w.flush()?;
    }
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

/// Parses CSV produced by [`sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> CliResult<Vec<SweepRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    if headers.iter().ne(SWEEP_COLUMNS) {
        return Err(CliError::Usage(format!("unexpected header {headers:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let num = |i: usize| -> CliResult<f64> {
                rec[i].parse().map_err(|_| CliError::Usage(format!("bad number {:?} in column {}", &rec[i], SWEEP_COLUMNS[i])))
            };
            let opt = |i: usize| -> CliResult<Option<f64>> {
                if rec[i].is_empty() {
                    Ok(None)
                } else {
                    num(i).map(Some)
                }
            };
            Ok(SweepRow {
                alpha: num(0)?,
                s: num(1)?,
                q: num(2)?,
                a: num(3)?,
                b: num(4)?,
                x: num(5)?,
                abs_sf: num(6)?,
                b22: num(7)?,
                b23: num(8)?,
                b24: num(9)?,
                b25: opt(10)?,
                b26: opt(11)?,
                tightest: rec[12].parse().map_err(|e: fracineq::Error| CliError::Usage(e.to_string()))?,
                violation: rec[13].parse().map_err(|_| CliError::Usage(format!("bad violation flag {:?}", &rec[13])))?,
            })
        })
        .collect()
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(24.0, 15), "24");
        assert_eq!(format_sig(1.0, 15), "1");
        assert_eq!(format_sig(0.5, 17), "0.5");
        assert_eq!(format_sig(0.1, 17), "0.10000000000000001");
        assert_eq!(format_sig(1.5e-7, 17), "1.4999999999999999e-07");
        assert_eq!(format_sig(-2.5e20, 15), "-2.5e+20");
        assert_eq!(format_sig(1.3862943611198906, 15), "1.38629436111989");
        assert_eq!(format_sig(0.0, 17), "0");
    }

    #[test]
    fn formatting_round_trips() {
        for v in [std::f64::consts::PI, 1e-300, 6.02214076e23, 0.1 + 0.2, 123456.789, 9.999999999999999e-6] {
            assert_eq!(format_sig(v, CSV_DIGITS).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_round_trip() {
        let report = BoundReport::from_bounds(0.1, &[(TheoremId::T22, 0.3), (TheoremId::T23, 0.2), (TheoremId::T24, 0.25)]);
        let rows = vec![SweepRow::new([0.5, 1.0, 1.0, 1.0, 2.0, 1.5], &report)];
        let text = sweep_csv(&rows, Some(3)).unwrap();
        assert!(text.starts_with("# seed=3\nalpha,s,q,a,b,x,abs_sf,b22,b23,b24,b25,b26,tightest,violation\n"));
        assert_eq!(parse_sweep_csv(&text).unwrap(), rows);
    }
}
