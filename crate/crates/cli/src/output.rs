//! CSV and JSON rendering.
//!
//! Exact values print as `p/q` (integers without a denominator); float
//! values print with a fixed number of significant digits, trailing zeros
//! trimmed. In JSON, exact values become `{"num": "p", "den": "q"}` and
//! floats become decimal strings.

use crate::error::CliError;
use dsop::numerics::parse_scalar;
use dsop::Scalar;
use serde_json::{json, Value};

pub fn format_value(v: &Scalar, digits: usize) -> String {
    match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.to_decimal(digits),
    }
}

pub fn json_value(v: &Scalar, digits: usize) -> Value {
    match v.as_rational() {
        Some(r) => json!({"num": r.numer().to_string(), "den": r.denom().to_string()}),
        None => Value::String(v.to_decimal(digits)),
    }
}

pub fn json_opt(v: Option<&Scalar>, digits: usize) -> Value {
    v.map_or(Value::Null, |v| json_value(v, digits))
}

/// A CSV table of scalar cells; empty cells are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<Scalar>>>,
    /// significant digits for float cells
    pub digits: usize,
}

impl CsvTable {
    pub fn new(header: &[&str], digits: usize) -> CsvTable {
        CsvTable { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), digits }
    }

    pub fn push(&mut self, row: Vec<Option<Scalar>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn emit(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.as_ref().map_or_else(String::new, |v| format_value(v, self.digits))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Reads a table written by [`CsvTable::emit`]. Decimal cells come back as
    /// floats precise enough that emitting again reproduces the input.
    pub fn parse(text: &str) -> Result<CsvTable, CliError> {
        let bad = |line: usize, what: String| CliError::Usage(format!("csv line {line}: {what}"));
        let mut lines = text.lines();
        let header: Vec<String> = match lines.next() {
            Some(h) if !h.trim().is_empty() => h.split(',').map(|s| s.trim().to_string()).collect(),
            _ => return Err(bad(1, "missing header".into())),
        };
        let mut raw: Vec<Vec<Option<(Scalar, bool)>>> = Vec::new();
        let mut digits = 1;
        for (i, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != header.len() {
                return Err(bad(i + 2, format!("{} cells, header has {}", cells.len(), header.len())));
            }
            let mut row = Vec::with_capacity(cells.len());
            for cell in cells {
                let cell = cell.trim();
                if cell.is_empty() {
                    row.push(None);
                    continue;
                }
                let v = parse_scalar(cell).map_err(|e| bad(i + 2, e.to_string()))?;
                let decimal = cell.contains(['.', 'e', 'E']);
                if decimal {
                    digits = digits.max(significant_digits(cell));
                }
                row.push(Some((v, decimal)));
            }
            raw.push(row);
        }
        let prec = (digits as f64 * 3.33) as u32 + 64;
        let rows = raw
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.map(|(v, decimal)| if decimal { v.to_float(prec) } else { v })).collect())
            .collect();
        Ok(CsvTable { header, rows, digits })
    }
}

fn significant_digits(cell: &str) -> usize {
    let mantissa = cell.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn value_formats() {
        assert_eq!(format_value(&Scalar::ratio(7, 5), 5), "7/5");
        assert_eq!(format_value(&Scalar::int(2), 5), "2");
        assert_eq!(format_value(&Scalar::ratio(7, 5).to_float(128), 5), "1.4");
        assert_eq!(format_value(&Scalar::ratio(1, 3).to_float(128), 4), "0.3333");
        assert_eq!(json_value(&Scalar::ratio(-7, 5), 5), json!({"num": "-7", "den": "5"}));
        assert_eq!(json_value(&Scalar::ratio(1, 4).to_float(64), 5), json!("0.25"));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(CsvTable::parse("n,mu\n0,1\n1\n").is_err());
        assert!(CsvTable::parse("").is_err());
        assert!(CsvTable::parse("n,mu\n0,abc\n").is_err());
    }

    #[test]
    fn empty_cells_survive() {
        let text = "n,k,A,B\n0,-1,,1/2\n";
        let t = CsvTable::parse(text).unwrap();
        assert_eq!(t.rows[0][2], None);
        assert_eq!(t.emit(), text);
    }

    proptest! {
        #[test]
        fn float_rows_round_trip(vals in proptest::collection::vec((-1e6f64..1e6, 1i32..30), 1..20), digits in 1usize..40) {
            let mut t = CsvTable::new(&["n", "v"], digits);
            for (i, (v, e)) in vals.iter().enumerate() {
                let x = Scalar::from_f64(*v, 200) * Scalar::from_f64(10f64.powi(-e), 200);
                t.push(vec![Some(Scalar::int(i as i64)), Some(x)]);
            }
            let text = t.emit();
            prop_assert_eq!(CsvTable::parse(&text).unwrap().emit(), text);
        }

        #[test]
        fn exact_rows_round_trip(vals in proptest::collection::vec((-1000i64..1000, 1i64..1000), 1..20)) {
            let mut t = CsvTable::new(&["n", "v"], 10);
            for (i, (p, q)) in vals.iter().enumerate() {
                t.push(vec![Some(Scalar::int(i as i64)), Some(Scalar::ratio(*p, *q))]);
            }
            let text = t.emit();
            let back = CsvTable::parse(&text).unwrap();
            prop_assert_eq!(&back.rows, &t.rows);
            prop_assert_eq!(back.emit(), text);
        }
    }
}
