use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON document.
    Json,
    /// One JSON object per line.
    Jsonl,
    /// Comma-separated values with a header row.
    Csv,
    /// Human-readable lines.
    Text,
}

/// A record printable in every format.
pub struct Row {
    pub json: Value,
    pub csv: Vec<String>,
    pub text: String,
}

pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, json: Value, csv: Vec<String>, text: String) {
        self.rows.push(Row { json, csv, text });
    }

    pub fn emit(self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let all: Vec<Value> = self.rows.into_iter().map(|r| r.json).collect();
                serde_json::to_writer_pretty(&mut *out, &all)?;
                writeln!(out)
            }
            Format::Jsonl => {
                for row in self.rows {
                    serde_json::to_writer(&mut *out, &row.json)?;
                    writeln!(out)?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.header)?;
                for row in self.rows {
                    w.write_record(&row.csv)?;
                }
                w.flush()
            }
            Format::Text => {
                for row in self.rows {
                    writeln!(out, "{}", row.text)?;
                }
                Ok(())
            }
        }
    }
}

/// Parts joined by spaces, for CSV cells.
pub fn spaced<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
