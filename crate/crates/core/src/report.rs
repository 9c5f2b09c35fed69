//! Plain tables and their text, CSV and JSON renderings. Exact scalars are
//! written with [`ExactScalar`](crate::ExactScalar)'s `p/q+r/s√3` form, never as floats.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::glue::{table_l4, table_l8, GlueRow};
use crate::laminate::GluedLattice;
use crate::project::{minimal_split_census, table4};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.text()),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string())),
        }
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "{}", line(&self.headers));
        for r in &self.rows {
            let _ = writeln!(out, "{}", line(r));
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.headers).map_err(err)?;
        for r in &self.rows {
            w.write_record(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Several tables in one document: blank-line separated text, CSV blocks
/// headed by `# title`, or a JSON array.
pub fn render_all(tables: &[Table], format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(tables).map_err(|e| Error::Parse(e.to_string())),
        Format::Text => Ok(tables.iter().map(Table::text).collect::<Vec<_>>().join("\n")),
        Format::Csv => {
            let mut out = String::new();
            for t in tables {
                let _ = writeln!(out, "# {}", t.title);
                out.push_str(&t.csv()?);
            }
            Ok(out)
        }
    }
}

fn glue_table(title: &str, rows: &[GlueRow], delta: &str, tau: &str) -> Table {
    let mut t = Table::new(title, &["glue", "orbit size", delta, tau]);
    for r in rows {
        t.push(vec![r.h.to_string(), r.orbit_size.to_string(), r.delta.to_string(), r.tau.to_string()]);
    }
    t
}

/// The four tables, recomputed: glue orbits in `L8` and `L4`, short vectors
/// of `L12` by glue orbit, and the invariant-plane split of minimal vectors.
pub fn all_tables(l12: &GluedLattice) -> Result<Vec<Table>> {
    let t1 = glue_table("Table 1: glue orbits in L8", &table_l8(&l12.l8)?, "Δ8", "τ8");
    let t2 = glue_table("Table 2: glue orbits in L4", &table_l4(&l12.l4)?, "Δ4", "τ4");
    let mut t3 = Table::new("Table 3: short vectors of L12", &["glue", "orbit size", "norm", "per class", "total"]);
    for r in l12.table3()? {
        t3.push(vec![
            r.h.to_string(),
            r.orbit_size.to_string(),
            r.norm.to_string(),
            r.per_class.to_string(),
            r.total.to_string(),
        ]);
    }
    let mut t4 =
        Table::new("Table 4: invariant-plane split of minimal L4 parts", &["x4", "orbit size", "x∥·x∥", "x⊥·x⊥"]);
    for r in table4(&minimal_split_census(l12)?)? {
        let rep: Vec<String> = r.representative.iter().map(ToString::to_string).collect();
        t4.push(vec![format!("[{}]", rep.join(" ")), r.size.to_string(), r.n_par.to_string(), r.n_perp.to_string()]);
    }
    Ok(vec![t1, t2, t3, t4])
}
