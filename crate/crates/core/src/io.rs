//! Grid specs, float formatting and output sinks for the command line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Formats a float with 17 significant digits; non-finite values as `NaN`, `inf`, `-inf`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// JSON number, or `null` for non-finite values.
pub fn json_f64(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

/// Parses `start:stop:count` into `count` equally spaced points inside `(0, 1)`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "grid must be start:stop:count, got {spec:?}"
        )));
    }
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::Config(format!("grid bound {s:?} is not a number")))
    };
    let (a, b) = (num(parts[0])?, num(parts[1])?);
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("grid count {:?} is not an integer", parts[2])))?;
    if count == 0 {
        return Err(Error::Config("grid is empty".into()));
    }
    if !(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0) {
        return Err(Error::Config(format!(
            "grid bounds must lie in (0, 1), got {a} and {b}"
        )));
    }
    if count == 1 {
        return Ok(vec![a]);
    }
    Ok((0..count)
        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
        .collect())
}

/// `stdout` or a file, buffered.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

/// Writes a header line and rows of floats as CSV.
pub fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<f64>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| fmt_f64(*x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = parse_grid("0.1:0.9:9").unwrap();
        assert_eq!(g.len(), 9);
        assert!((g[4] - 0.5).abs() < 1e-15);
        assert!(parse_grid("0.1:0.9:0").is_err());
        assert!(parse_grid("0:0.9:3").is_err());
        assert!(parse_grid("0.1:0.9").is_err());
        assert_eq!(parse_grid("0.3:0.7:1").unwrap(), vec![0.3]);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_f64(20.0), "2.0000000000000000e1");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(json_f64(f64::NAN), serde_json::Value::Null);
    }
}
