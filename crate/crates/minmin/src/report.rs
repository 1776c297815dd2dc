//! Plain-text reports: an ordered list of sections, each holding
//! `key = value` lines and an optional comma-separated table.
//!
//! ```text
//! minmin-report 1
//!
//! [config]
//! command = verify
//! seed = 7
//!
//! [points]
//! table = index,h_analytic,pass
//! 0,1.000000000000e-13,true
//! ```
//!
//! Floats are written with [`fmt_f64`] so equal inputs give identical bytes.

use std::fmt::Write as _;

pub const REPORT_VERSION: u32 = 1;

/// Fixed-width scientific notation with 12 fractional digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.12e}")
    }
}

/// Space-separated floats, for vector-valued cells.
pub fn fmt_vec(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            entries: Vec::new(),
            table: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn set_f64(&mut self, key: &str, value: f64) -> &mut Self {
        self.set(key, fmt_f64(value))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a section and returns it for filling in.
    pub fn section(&mut self, name: &str) -> &mut Section {
        self.sections.push(Section::new(name));
        self.sections.last_mut().expect("just pushed")
    }

    pub fn find(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("minmin-report {REPORT_VERSION}\n");
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.name);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "{k} = {v}");
            }
            if let Some(t) = &s.table {
                let _ = writeln!(out, "table = {}", t.columns.join(","));
                for row in &t.rows {
                    let _ = writeln!(out, "{}", row.join(","));
                }
            }
        }
        out
    }
}
