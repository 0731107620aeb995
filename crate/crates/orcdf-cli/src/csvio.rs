//! CSV ingestion of censored samples and canonical emission of grid tables.
//!
//! Input format: a header row naming endpoint column pairs `l1,r1,...`
//! (a regression file ends with the response pair `lY,rY`), then one row
//! per observation. Interval endpoints are plain numbers with `-inf` and
//! `inf` allowed; an exact coordinate writes `=v` in both fields of the
//! pair. A numerically degenerate interval is rejected.

use orcdf::{CensoredScalar, CensoredVector, Sample};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsvError {
    #[error("input file is empty")]
    EmptyFile,
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
}

/// Parse a censored sample from CSV text.
pub fn parse_interval_csv(text: &str) -> Result<Sample, CsvError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(CsvError::EmptyFile);
    };
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() < 2 || !columns.len().is_multiple_of(2) {
        return Err(CsvError::Parse {
            line: 1,
            column: columns.len(),
            reason: "header must name an even number of l*/r* columns".into(),
        });
    }
    for (k, pair) in columns.chunks(2).enumerate() {
        let ok =
            pair[0].starts_with('l') && pair[1].starts_with('r') && pair[0][1..] == pair[1][1..];
        if !ok {
            return Err(CsvError::Parse {
                line: 1,
                column: 2 * k + 1,
                reason: format!(
                    "expected matching l/r pair, found `{}`,`{}`",
                    pair[0], pair[1]
                ),
            });
        }
    }
    let dims = columns.len() / 2;

    let mut observations = Vec::new();
    for (idx, row) in lines {
        let line = idx + 1;
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(CsvError::RaggedRow {
                line,
                expected: columns.len(),
                found: fields.len(),
            });
        }
        let mut coords = Vec::with_capacity(dims);
        for m in 0..dims {
            let column = 2 * m + 1;
            let (lt, rt) = (fields[2 * m], fields[2 * m + 1]);
            coords.push(parse_coordinate(lt, rt, line, column)?);
        }
        observations.push(CensoredVector::new(coords).expect("dims >= 1"));
    }
    if observations.is_empty() {
        return Err(CsvError::EmptyFile);
    }
    Ok(Sample::new(observations).expect("row widths already checked"))
}

fn parse_coordinate(
    lt: &str,
    rt: &str,
    line: usize,
    column: usize,
) -> Result<CensoredScalar, CsvError> {
    let exact_l = lt.strip_prefix('=');
    let exact_r = rt.strip_prefix('=');
    match (exact_l, exact_r) {
        (Some(a), Some(b)) => {
            let va = parse_number(a, line, column)?;
            let vb = parse_number(b, line, column + 1)?;
            if va != vb {
                return Err(CsvError::Parse {
                    line,
                    column,
                    reason: format!("exact markers disagree: ={a} vs ={b}"),
                });
            }
            CensoredScalar::exact(va).map_err(|e| CsvError::Parse {
                line,
                column,
                reason: e.to_string(),
            })
        }
        (None, None) => {
            let lo = if lt == "-inf" {
                f64::NEG_INFINITY
            } else {
                parse_number(lt, line, column)?
            };
            let hi = if rt == "inf" {
                f64::INFINITY
            } else {
                parse_number(rt, line, column + 1)?
            };
            if lo == hi {
                return Err(CsvError::Parse {
                    line,
                    column,
                    reason: format!("degenerate interval ({lo}, {hi}]"),
                });
            }
            CensoredScalar::interval(lo, hi).map_err(|e| CsvError::Parse {
                line,
                column,
                reason: e.to_string(),
            })
        }
        _ => Err(CsvError::Parse {
            line,
            column,
            reason: "exact coordinates need the `=` marker in both fields".into(),
        }),
    }
}

fn parse_number(token: &str, line: usize, column: usize) -> Result<f64, CsvError> {
    let value: f64 = token.parse().map_err(|_| CsvError::Parse {
        line,
        column,
        reason: format!("not a number: `{token}`"),
    })?;
    if value.is_nan() {
        return Err(CsvError::Parse {
            line,
            column,
            reason: "NaN is not a valid endpoint".into(),
        });
    }
    Ok(value)
}

/// Canonical float formatting: 17 significant digits in scientific
/// notation, enough to round-trip any f64 byte-identically.
pub fn canonical(x: f64) -> String {
    format!("{x:.16e}")
}

/// Emit a grid-valued result as CSV: one coordinate column per axis, the
/// value last, rows in row-major grid order.
pub fn write_grid_csv(axes: &[Vec<f64>], values: &[f64], value_name: &str) -> String {
    let dims = axes.len();
    let mut out = String::new();
    for m in 1..=dims {
        out.push_str(&format!("x{m},"));
    }
    out.push_str(value_name);
    out.push('\n');
    let mut idx = vec![0usize; dims];
    for &v in values {
        for (m, &i) in idx.iter().enumerate() {
            out.push_str(&canonical(axes[m][i]));
            out.push(',');
        }
        out.push_str(&canonical(v));
        out.push('\n');
        for m in (0..dims).rev() {
            idx[m] += 1;
            if idx[m] < axes[m].len() {
                break;
            }
            idx[m] = 0;
        }
    }
    out
}

/// Re-read a grid CSV emitted by [`write_grid_csv`]: returns the numeric
/// fields of every data row.
pub fn read_grid_csv(text: &str) -> Result<Vec<Vec<f64>>, CsvError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(c, tok)| parse_number(tok.trim(), idx + 1, c + 1))
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CsvError::EmptyFile);
    }
    Ok(rows)
}
