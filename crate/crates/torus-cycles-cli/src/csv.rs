//! Minimal RFC-4180 CSV writing and reading: header row, LF line endings,
//! '.' decimal separator, shortest-roundtrip float rendering.

/// A rectangular table with a header row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        emit_record(&mut out, &self.header);
        for row in &self.rows {
            emit_record(&mut out, row);
        }
        out
    }
}

/// Shortest representation that round-trips through f64 parsing, e.g. 0.03
/// rather than a 17-digit expansion.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn emit_record(out: &mut String, fields: &[String]) {
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if f.contains([',', '"', '\n', '\r']) {
            out.push('"');
            out.push_str(&f.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(f);
        }
    }
    out.push('\n');
}

/// Parse CSV text back into a table; the inverse of [`Table::emit`].
pub fn parse(text: &str) -> Result<Table, String> {
    let mut records: Vec<Vec<String>> = Vec::new();
    let mut field = String::new();
    let mut record: Vec<String> = Vec::new();
    let mut quoted = false;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if quoted {
            match c {
                '"' => {
                    if chars.peek() == Some(&'"') {
                        chars.next();
                        field.push('"');
                    } else {
                        quoted = false;
                    }
                }
                _ => field.push(c),
            }
            continue;
        }
        match c {
            '"' if field.is_empty() => quoted = true,
            ',' => record.push(std::mem::take(&mut field)),
            '\n' => {
                record.push(std::mem::take(&mut field));
                records.push(std::mem::take(&mut record));
            }
            '\r' => {}
            _ => field.push(c),
        }
    }
    if quoted {
        return Err("unterminated quoted field".into());
    }
    if !field.is_empty() || !record.is_empty() {
        record.push(field);
        records.push(record);
    }
    if records.is_empty() {
        return Err("empty input".into());
    }
    let header = records.remove(0);
    for r in &records {
        if r.len() != header.len() {
            return Err(format!(
                "ragged row: {} fields under a {}-field header",
                r.len(),
                header.len()
            ));
        }
    }
    Ok(Table { header, rows: records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_roundtrip_floats() {
        assert_eq!(fmt_f64(0.03), "0.03");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.3333333333333333");
        assert_eq!(fmt_f64(3787.81), "3787.81");
        for &v in &[0.1, 1e-300, std::f64::consts::PI, -2.5e17] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn emit_then_parse_round_trips() {
        let mut t = Table::new(&["n", "value", "note"]);
        t.push(vec!["3".into(), fmt_f64(0.03), "plain".into()]);
        t.push(vec!["4".into(), fmt_f64(-1.5), "with, comma and \"quote\"".into()]);
        let text = t.emit();
        assert!(text.ends_with('\n'));
        assert!(!text.contains("\r"));
        let back = parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(parse(&back.emit()).unwrap(), back);
    }

    #[test]
    fn header_only_table() {
        let t = Table::new(&["a", "b"]);
        assert_eq!(t.emit(), "a,b\n");
        let back = parse(&t.emit()).unwrap();
        assert!(back.rows.is_empty());
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(parse("a,b\n1\n").is_err());
    }
}
