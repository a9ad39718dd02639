//! CSV/JSON reading and writing.
//!
//! CSV outputs begin with `# key=value` metadata lines (skipped on load)
//! followed by a header row. Floating-point values are written with 17
//! significant digits so that a written sample reloads bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::{mendota::mendota_transform, CliError};
use monoboot::RegressionSample;

/// Full-precision decimal rendering: 17 significant digits round-trips
/// every finite f64.
pub fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads a two-column numeric CSV with header `x,y`. Lines starting with
/// `#` and blank lines are ignored; malformed rows report their line
/// number.
pub fn read_xy(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let parse_err = |line: usize, message: String| CliError::Parse {
        path: path.display().to_string(),
        line,
        message,
    };
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            let normalized: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            if normalized != "x,y" {
                return Err(parse_err(
                    line_no,
                    format!("expected header `x,y`, found `{line}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        let mut fields = line.split(',');
        let x = fields.next().unwrap_or("").trim();
        let y = fields.next().unwrap_or("").trim();
        if x.is_empty() || y.is_empty() || fields.next().is_some() {
            return Err(parse_err(
                line_no,
                format!("expected two comma-separated values, found `{line}`"),
            ));
        }
        let x: f64 = x
            .parse()
            .map_err(|_| parse_err(line_no, format!("cannot parse `{x}` as a number")))?;
        let y: f64 = y
            .parse()
            .map_err(|_| parse_err(line_no, format!("cannot parse `{y}` as a number")))?;
        rows.push((x, y));
    }
    if !header_seen {
        return Err(parse_err(1, "missing header `x,y`".into()));
    }
    Ok(rows)
}

/// Loads a regression sample: rows sorted by x with ties merged, or first
/// passed through the Mendota transform when requested.
pub fn load_sample(path: &Path, mendota: bool) -> Result<RegressionSample, CliError> {
    let mut rows = read_xy(path)?;
    if rows.is_empty() {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            line: 1,
            message: "no data rows".into(),
        });
    }
    if mendota {
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let (years, days): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        mendota_transform(&years, &days)
    } else {
        Ok(RegressionSample::from_unsorted(rows)?)
    }
}

/// Serializes a sample as a loadable `x,y` CSV at full precision.
pub fn sample_to_csv(sample: &RegressionSample) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in sample.xs().iter().zip(sample.ys()) {
        let _ = writeln!(out, "{},{}", full_precision(*x), full_precision(*y));
    }
    out
}

pub fn write_sample_csv(path: &Path, sample: &RegressionSample) -> Result<(), CliError> {
    fs::write(path, sample_to_csv(sample)).map_err(|e| io_err(path, e))
}

/// A columnar table with metadata, rendered as CSV or JSON.
pub struct Table {
    pub meta: Vec<(&'static str, String)>,
    pub header: Vec<&'static str>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        let rows = self.columns.first().map_or(0, Vec::len);
        for r in 0..rows {
            let line: Vec<String> = self
                .columns
                .iter()
                .map(|col| full_precision(col[r]))
                .collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut meta = serde_json::Map::new();
        for (k, v) in &self.meta {
            // Numbers and booleans keep their JSON types; everything else
            // is a string.
            let value = if let Ok(b) = v.parse::<bool>() {
                serde_json::Value::Bool(b)
            } else if let Some(n) = v.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                serde_json::Value::Number(n)
            } else {
                serde_json::Value::String(v.clone())
            };
            meta.insert((*k).to_string(), value);
        }
        let mut root = serde_json::Map::new();
        root.insert("meta".into(), serde_json::Value::Object(meta));
        for (name, col) in self.header.iter().zip(&self.columns) {
            root.insert(
                (*name).to_string(),
                serde_json::Value::Array(
                    col.iter()
                        .map(|&v| {
                            serde_json::Number::from_f64(v)
                                .map(serde_json::Value::Number)
                                .unwrap_or(serde_json::Value::Null)
                        })
                        .collect(),
                ),
            );
        }
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("table serializes");
        text.push('\n');
        text
    }
}

/// Writes rendered text to the path, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_precision_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, -7.25] {
            let s = full_precision(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_sample_round_trip() {
        let xs: Vec<f64> = (0..20).map(|i| (i as f64 + 0.37) / 20.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (x * 31.0).sin() / 3.0 + x).collect();
        let sample = RegressionSample::new(xs, ys).unwrap();
        let dir = std::env::temp_dir().join("monoboot-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sample.csv");
        write_sample_csv(&path, &sample).unwrap();
        let back = load_sample(&path, false).unwrap();
        assert_eq!(back.xs(), sample.xs());
        assert_eq!(back.ys(), sample.ys());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let dir = std::env::temp_dir().join("monoboot-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        fs::write(&path, "x,y\n0.1,0.2\n0.3,abc\n").unwrap();
        match read_xy(&path).unwrap_err() {
            CliError::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("abc"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(
            read_xy(&path).unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn unsorted_rows_are_sorted_on_load() {
        let dir = std::env::temp_dir().join("monoboot-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("unsorted.csv");
        fs::write(&path, "x,y\n0.9,3\n0.1,1\n0.5,2\n").unwrap();
        let s = load_sample(&path, false).unwrap();
        assert_eq!(s.xs(), &[0.1, 0.5, 0.9]);
        assert_eq!(s.ys(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn table_renders_both_formats() {
        let table = Table {
            meta: vec![("seed", "7".into()), ("estimator", "slse".into())],
            header: vec!["t", "estimate"],
            columns: vec![vec![0.25, 0.5], vec![1.0, 2.0]],
        };
        let csv = table.to_csv();
        assert!(csv.starts_with("# seed=7\n# estimator=slse\nt,estimate\n"));
        assert_eq!(csv.lines().count(), 5);
        let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(json["meta"]["seed"], 7.0);
        assert_eq!(json["meta"]["estimator"], "slse");
        assert_eq!(json["t"][1], 0.5);
    }
}
