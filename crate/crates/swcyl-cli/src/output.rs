use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};
use swcyl::verify::PropertyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes a header echoing the resolved config, then rows or reports.
pub struct Emitter {
    format: Format,
    sink: Box<dyn Write>,
}

impl Emitter {
    pub fn open(format: Format, out: Option<&Path>) -> io::Result<Self> {
        let sink: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { format, sink })
    }

    pub fn header(&mut self, command: &str, seed: u64, config: &BTreeMap<String, String>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let line = json!({ "header": { "command": command, "seed": seed, "config": config } });
                writeln!(self.sink, "{line}")
            }
            Format::Csv => {
                writeln!(self.sink, "# command={command}")?;
                writeln!(self.sink, "# seed={seed}")?;
                for (k, v) in config {
                    writeln!(self.sink, "# {k}={v}")?;
                }
                Ok(())
            }
        }
    }

    pub fn reports(&mut self, reports: &[PropertyReport]) -> io::Result<()> {
        match self.format {
            Format::Json => {
                for r in reports {
                    writeln!(self.sink, "{}", r.to_json_line())?;
                }
                Ok(())
            }
            Format::Csv => {
                let rows = reports
                    .iter()
                    .map(|r| {
                        vec![
                            Value::from(r.name.clone()),
                            Value::from(r.residual),
                            Value::from(r.tolerance),
                            Value::from(r.pass),
                            Value::from(Value::Object(r.context.clone()).to_string()),
                        ]
                    })
                    .collect::<Vec<_>>();
                self.table(&["name", "residual", "tolerance", "pass", "context"], &rows)
            }
        }
    }

    /// JSON writes one object per row; CSV writes a header row then records.
    pub fn table(&mut self, columns: &[&str], rows: &[Vec<Value>]) -> io::Result<()> {
        match self.format {
            Format::Json => {
                for row in rows {
                    let obj: Map<String, Value> = columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect();
                    writeln!(self.sink, "{}", Value::Object(obj))?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut self.sink);
                w.write_record(columns)?;
                for row in rows {
                    w.write_record(row.iter().map(cell))?;
                }
                w.flush()
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.sink.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
