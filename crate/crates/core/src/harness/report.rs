//! Pass/fail report rows and their CSV form.

use std::fmt;
use std::io::Write;
use std::path::Path;

use crate::io::{csv_err, csv_writer, fmt_f64};
use crate::{Error, Result};

/// Acceptance bound applied to a row's statistic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    Above(f64),
    Below(f64),
    Within { target: f64, tol: f64 },
}

impl Bound {
    pub fn holds(&self, x: f64) -> bool {
        match *self {
            Bound::AtMost(b) => x <= b,
            Bound::Above(b) => x > b,
            Bound::Below(b) => x < b,
            Bound::Within { target, tol } => (x - target).abs() <= tol,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::AtMost(b) => write!(f, "<= {}", fmt_f64(b)),
            Bound::Above(b) => write!(f, "> {}", fmt_f64(b)),
            Bound::Below(b) => write!(f, "< {}", fmt_f64(b)),
            Bound::Within { target, tol } => write!(f, "{} +- {}", fmt_f64(target), fmt_f64(tol)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub test: String,
    pub parameters: String,
    pub statistic: f64,
    pub threshold: String,
    pub pass: bool,
}

impl ReportRow {
    pub fn check(
        test: impl Into<String>,
        parameters: impl Into<String>,
        statistic: f64,
        bound: Bound,
    ) -> Self {
        ReportRow {
            test: test.into(),
            parameters: parameters.into(),
            statistic,
            threshold: bound.to_string(),
            // NaN statistics fail every bound.
            pass: bound.holds(statistic),
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] statistic={} threshold {}",
            self.verdict().to_uppercase(),
            self.test,
            self.parameters,
            fmt_f64(self.statistic),
            self.threshold
        )
    }
}

pub const REPORT_HEADER: [&str; 5] = ["test", "parameters", "statistic", "threshold", "verdict"];

pub fn write_report<W: Write>(rows: &[ReportRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv_writer(out);
    w.write_record(REPORT_HEADER)?;
    for r in rows {
        w.write_record([
            r.test.as_str(),
            r.parameters.as_str(),
            &fmt_f64(r.statistic),
            r.threshold.as_str(),
            r.verdict(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<Vec<ReportRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let headers = reader.headers().map_err(csv_err(path))?.clone();
    if headers.iter().ne(REPORT_HEADER) {
        return Err(Error::Degenerate(format!(
            "{}: not a report file",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err(path))?;
        let bad = || Error::Degenerate(format!("{}: malformed report row", path.display()));
        let pass = match &record[4] {
            "pass" => true,
            "fail" => false,
            _ => return Err(bad()),
        };
        rows.push(ReportRow {
            test: record[0].to_string(),
            parameters: record[1].to_string(),
            statistic: record[2].parse().map_err(|_| bad())?,
            threshold: record[3].to_string(),
            pass,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert!(Bound::AtMost(3.0).holds(3.0));
        assert!(!Bound::Above(3.0).holds(3.0));
        assert!(Bound::Within {
            target: 1.0,
            tol: 0.1
        }
        .holds(1.05));
        assert!(!Bound::AtMost(3.0).holds(f64::NAN));
        assert!(!Bound::Below(3.0).holds(f64::NAN));
    }

    #[test]
    fn report_round_trip() {
        let rows = vec![
            ReportRow::check("laplace", "alpha=0.5, s=1", 0.7, Bound::AtMost(3.0)),
            ReportRow::check(
                "hill",
                "k=10000",
                0.62,
                Bound::Within {
                    target: 0.5,
                    tol: 0.05,
                },
            ),
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        write_report(&rows, std::fs::File::create(&path).unwrap()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("test,parameters,statistic,threshold,verdict\n"));
        assert!(!text.contains('\r'));
        let back = read_report(&path).unwrap();
        assert_eq!(back, rows);
        assert!(!back[1].pass);
    }
}
