//! CSV plumbing: LF line endings, `.` decimals, header row always present.

use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Terminator, WriterBuilder};

use crate::error::HarnessError;

/// Fixed six-decimal rendering; negative zero prints as `0.000000`.
pub fn fmt_f(v: f64) -> String {
    format!("{:.6}", v + 0.0)
}

/// Fixed-decimal rendering that never prints `-0`.
pub fn fmt_dp(v: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals, v);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn to_csv_string<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = WriterBuilder::new().terminator(Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<(), HarnessError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    std::fs::write(path, to_csv_string(header, rows)).map_err(|e| HarnessError::io(path, e))
}

/// Reads a CSV with a header row, checking that `required` columns exist.
/// Returns the header and the records.
pub fn read_table(path: &Path, required: &[&str]) -> Result<(StringRecord, Vec<StringRecord>), HarnessError> {
    let mut rdr = ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| HarnessError::csv(path, e))?;
    let header = rdr.headers().map_err(|e| HarnessError::csv(path, e))?.clone();
    for col in required {
        if !header.iter().any(|h| h == *col) {
            return Err(HarnessError::Validation(format!(
                "{}: missing column `{col}`",
                path.display()
            )));
        }
    }
    let records = rdr
        .records()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| HarnessError::csv(path, e))?;
    Ok((header, records))
}

/// Column accessor over a header row.
pub struct Columns<'a> {
    header: &'a StringRecord,
    path: &'a Path,
}

impl<'a> Columns<'a> {
    pub fn new(header: &'a StringRecord, path: &'a Path) -> Self {
        Self { header, path }
    }

    pub fn get<'r>(&self, rec: &'r StringRecord, col: &str) -> &'r str {
        let idx = self.header.iter().position(|h| h == col).expect("column checked on read");
        rec.get(idx).unwrap_or("")
    }

    pub fn parse<T: std::str::FromStr>(&self, rec: &StringRecord, col: &str) -> Result<T, HarnessError> {
        let raw = self.get(rec, col);
        raw.parse().map_err(|_| {
            let line = rec.position().map_or(0, |p| p.line());
            HarnessError::Validation(format!(
                "{}:{line}: bad value `{raw}` in column `{col}`",
                self.path.display()
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_f(-0.0), "0.000000");
        assert_eq!(fmt_f(1.5), "1.500000");
        assert_eq!(fmt_dp(-0.001, 2), "0.00");
        assert_eq!(fmt_dp(-2.449, 2), "-2.45");
        assert_eq!(fmt_dp(74.7, 2), "74.70");
    }

    #[test]
    fn lf_endings_and_header() {
        let s = to_csv_string(&["a", "b"], vec![vec!["1".to_string(), "x;y".to_string()]]);
        assert_eq!(s, "a,b\n1,x;y\n");
    }
}
