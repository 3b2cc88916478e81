use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

pub struct Table {
    pub name: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&str]) -> Self {
        Table {
            name,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }
}

/// A command result: scalar fields plus at most one table. Numbers are
/// carried as decimal strings.
#[derive(Default)]
pub struct Report {
    pub fields: BTreeMap<String, Value>,
    pub table: Option<Table>,
    /// The table is for CSV and markdown only; JSON carries the same data in `fields`.
    pub table_text_only: bool,
}

impl Report {
    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.insert(key.to_string(), Value::String(value.to_string()));
        self
    }

    pub fn flag(mut self, key: &str, value: bool) -> Self {
        self.fields.insert(key.to_string(), Value::Bool(value));
        self
    }

    pub fn list<I, S>(mut self, key: &str, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let v = values.into_iter().map(|s| Value::String(s.to_string())).collect();
        self.fields.insert(key.to_string(), Value::Array(v));
        self
    }

    pub fn value(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn with_text_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self.table_text_only = true;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Md => self.markdown(),
        }
    }

    fn json(&self) -> String {
        let mut obj: Map<String, Value> = self.fields.clone().into_iter().collect();
        if let Some(t) = self.table.as_ref().filter(|_| !self.table_text_only) {
            let rows = t
                .rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        t.header.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect();
                    Value::Object(m)
                })
                .collect();
            obj.insert(t.name.to_string(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("values serialize");
        s.push('\n');
        s
    }

    fn key_values(&self) -> Vec<[String; 2]> {
        let shadowed = self.table.as_ref().filter(|_| self.table_text_only).map(|t| t.name);
        self.fields
            .iter()
            .filter(|(k, _)| Some(k.as_str()) != shadowed)
            .map(|(k, v)| [k.clone(), plain(v)])
            .collect()
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.header).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["field", "value"]).expect("in-memory write");
                for kv in self.key_values() {
                    w.write_record(&kv).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        if !self.fields.is_empty() {
            let rows: Vec<Vec<String>> = self.key_values().into_iter().map(Vec::from).collect();
            md_table(&mut out, &["field".into(), "value".into()], &rows);
        }
        if let Some(t) = &self.table {
            if !out.is_empty() {
                out.push('\n');
            }
            md_table(&mut out, &t.header, &t.rows);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join("; "),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn md_table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let line = |cells: &[String]| format!("| {} |", cells.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | "));
    writeln!(out, "{}", line(header)).unwrap();
    writeln!(out, "|{}", header.iter().map(|_| "---|").collect::<String>()).unwrap();
    for r in rows {
        writeln!(out, "{}", line(r)).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new("rows", &["k", "v"]);
        t.push(["1", "a|b"]);
        Report::default().field("z", 3).flag("ok", true).with_table(t)
    }

    #[test]
    fn json_keys_are_sorted() {
        let s = sample().render(Format::Json);
        assert!(s.find("\"ok\"").unwrap() < s.find("\"rows\"").unwrap());
        assert!(s.find("\"rows\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.contains("\"z\": \"3\""));
    }

    #[test]
    fn csv_prefers_the_table() {
        assert_eq!(sample().render(Format::Csv), "k,v\n1,a|b\n");
        assert_eq!(Report::default().field("x", 1).render(Format::Csv), "field,value\nx,1\n");
    }

    #[test]
    fn markdown_escapes_pipes() {
        let s = sample().render(Format::Md);
        assert!(s.contains("| 1 | a\\|b |"));
        assert!(s.starts_with("| field | value |\n|---|---|\n| ok | true |"));
    }
}
