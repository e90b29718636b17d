use std::io::{self, Write};

use clap::ValueEnum;
use kloo_core::FieldCtx;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub r: u32,
    pub q: u32,
    /// Hex, no prefix.
    pub modulus: String,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldInfo {
            r: ctx.r(),
            q: ctx.q(),
            modulus: format!("{:x}", ctx.modulus()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    field: &'a FieldInfo,
    #[serde(flatten)]
    body: &'a T,
}

/// A finished command: the JSON document plus a flat table for csv/text.
pub struct Report {
    command: &'static str,
    field: FieldInfo,
    json: String,
    summary: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new<T: Serialize>(
        command: &'static str,
        field: FieldInfo,
        body: &T,
    ) -> serde_json::Result<Self> {
        let json = serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            field: &field,
            body,
        })?;
        Ok(Report {
            command,
            field,
            json,
            summary: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        })
    }

    pub fn summary(mut self, key: &str, value: impl ToString) -> Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }

    pub fn table(mut self, columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.columns = columns;
        self.rows = rows;
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> anyhow::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.json)?,
            Format::Csv => self.write_csv(out)?,
            Format::Text => self.write_text(out)?,
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut impl Write) -> anyhow::Result<()> {
        writeln!(
            out,
            "# schema_version={} command={} r={} q={} modulus={}",
            SCHEMA_VERSION, self.command, self.field.r, self.field.q, self.field.modulus
        )?;
        let mut w = csv::Writer::from_writer(out);
        if self.columns.is_empty() {
            w.write_record(["key", "value"])?;
            for (k, v) in &self.summary {
                w.write_record([k, v])?;
            }
        } else {
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    fn write_text(&self, out: &mut impl Write) -> anyhow::Result<()> {
        writeln!(
            out,
            "{}: GF(2^{}), q = {}, modulus 0x{}",
            self.command, self.field.r, self.field.q, self.field.modulus
        )?;
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {v}")?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        writeln!(out)?;
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
            cells
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(&mut self.columns.iter().copied()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
        }
        Ok(())
    }
}

pub fn print(report: &Report, format: Format) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    report.write(format, &mut buf)?;
    match io::stdout().lock().write_all(&buf) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
