//! Row-based report rendering. Every subcommand produces a list of rows
//! (ordered key/value pairs); the three formats are value-equivalent views
//! of the same rows.

use clap::ValueEnum;
use serde_json::{Map, Value};

use ranklist::bounds::log_q_f64;
use ranklist::decimal::parse_dec;

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub type Row = Vec<(String, Value)>;

/// Displayed integers longer than this get shortened in table output, with a
/// base-q exponent suffix carrying the magnitude.
pub const TABLE_DIGIT_CAP: usize = 40;

/// Flattens a serialized struct into a row, keeping field order.
pub fn row_from_value(v: Value) -> Row {
    match v {
        Value::Object(map) => map.into_iter().collect(),
        other => vec![("value".to_string(), other)],
    }
}

pub fn render(rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => render_json(rows),
        Format::Csv => render_csv(rows),
        Format::Table => render_table(rows),
    }
}

fn render_json(rows: &[Row]) -> String {
    let arr: Vec<Value> = rows
        .iter()
        .map(|row| Value::Object(Map::from_iter(row.iter().cloned())))
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("plain values");
    s.push('\n');
    s
}

/// Column order: first appearance across rows. Rows missing a column emit an
/// empty field.
fn columns(rows: &[Row]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        for (key, _) in row {
            if !cols.contains(key) {
                cols.push(key.clone());
            }
        }
    }
    cols
}

fn lookup<'a>(row: &'a Row, key: &str) -> Option<&'a Value> {
    row.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

/// Bare text of a value: strings unquoted, everything else as JSON renders
/// it. This is what keeps CSV cells and JSON values comparable.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn render_csv(rows: &[Row]) -> String {
    let cols = columns(rows);
    let mut s = String::new();
    s.push_str(
        &cols
            .iter()
            .map(|c| csv_field(c))
            .collect::<Vec<_>>()
            .join(","),
    );
    s.push('\n');
    for row in rows {
        let line: Vec<String> = cols
            .iter()
            .map(|c| csv_field(&lookup(row, c).map(plain).unwrap_or_default()))
            .collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

fn row_q(row: &Row) -> u64 {
    lookup(row, "q").and_then(Value::as_u64).unwrap_or(2)
}

/// Shortens an all-digit cell beyond the display cap, appending the exact
/// magnitude as a base-q exponent.
fn table_cell(v: &Value, q: u64) -> String {
    let text = plain(v);
    if text.len() > TABLE_DIGIT_CAP && text.bytes().all(|b| b.is_ascii_digit()) {
        if let Ok(big) = parse_dec(&text) {
            let e = log_q_f64(&big, q);
            return format!("{}... (q^E form: q^{:.2})", &text[..TABLE_DIGIT_CAP], e);
        }
    }
    text
}

fn render_table(rows: &[Row]) -> String {
    let cols = columns(rows);
    if cols.is_empty() {
        return String::new();
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let q = row_q(row);
            cols.iter()
                .map(|c| lookup(row, c).map(|v| table_cell(v, q)).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain(std::iter::once(c.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    let fmt_line = |fields: Vec<String>| -> String {
        fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    s.push_str(&fmt_line(cols.clone()));
    s.push('\n');
    for row in cells {
        s.push_str(&fmt_line(row));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Vec<Row> {
        vec![
            vec![
                ("q".into(), json!(2)),
                ("name".into(), json!("first, quoted \"x\"")),
                ("count".into(), json!("35")),
            ],
            vec![
                ("q".into(), json!(2)),
                ("name".into(), json!("second")),
                ("extra".into(), json!(true)),
            ],
        ]
    }

    #[test]
    fn csv_and_json_are_value_equivalent() {
        let rows = sample();
        let parsed: Value = serde_json::from_str(&render_json(&rows)).unwrap();
        let csv = render_csv(&rows);
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(header, ["q", "name", "count", "extra"]);
        // second row has no quoting to worry about
        let second: Vec<&str> = lines.nth(1).unwrap().split(',').collect();
        let obj = &parsed.as_array().unwrap()[1];
        assert_eq!(second[0], obj["q"].to_string());
        assert_eq!(second[1], obj["name"].as_str().unwrap());
        assert_eq!(second[2], ""); // count absent from row 2
        assert_eq!(second[3], obj["extra"].to_string());
    }

    #[test]
    fn csv_quotes_commas_and_doubles_quotes() {
        let csv = render_csv(&sample());
        assert!(csv.contains("\"first, quoted \"\"x\"\"\""));
    }

    #[test]
    fn table_caps_long_integers_with_exponent_suffix() {
        let big = "1".to_string() + &"0".repeat(60); // 10^60
        let rows = vec![vec![
            ("q".to_string(), json!(2)),
            ("v".to_string(), json!(big.clone())),
        ]];
        let table = render_table(&rows);
        assert!(table.contains("(q^E form: q^199.32)"), "{table}");
        assert!(!table.contains(&big));
        // short integers stay verbatim
        let rows = vec![vec![("v".to_string(), json!("35"))]];
        assert!(render_table(&rows).contains("35"));
    }

    #[test]
    fn table_aligns_columns() {
        let rows = vec![
            vec![("a".to_string(), json!("x")), ("bb".to_string(), json!(1))],
            vec![("a".to_string(), json!("longer")), ("bb".to_string(), json!(22))],
        ];
        let t = render_table(&rows);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "a       bb");
        assert_eq!(lines[1], "x       1");
        assert_eq!(lines[2], "longer  22");
    }
}
