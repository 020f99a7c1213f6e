use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use yokonuma::report::{CheckRecord, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// Plain lines for reading.
    Text,
}

/// Ordered sink for one command's rows, notes and checks, closed by a
/// summary line.
pub struct Out {
    command: String,
    format: Format,
    sink: Box<dyn Write>,
    start: Instant,
    checks: Report,
}

impl Out {
    pub fn new(command: &str, format: Format, path: Option<&Path>) -> io::Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Out {
            command: command.to_string(),
            format,
            sink,
            start: Instant::now(),
            checks: Report::new(),
        })
    }

    fn emit(&mut self, kind: &str, body: Value, text: String) {
        let line = match self.format {
            Format::Json => {
                let mut obj = json!({ "kind": kind, "command": self.command });
                if let (Value::Object(o), Value::Object(b)) = (&mut obj, body) {
                    o.extend(b);
                }
                obj.to_string()
            }
            Format::Text => text,
        };
        // A closed pipe is not worth a panic; the exit code still reports.
        let _ = writeln!(self.sink, "{line}");
    }

    /// Data row; `text` is its plain rendering.
    pub fn row(&mut self, body: impl Serialize, text: impl Into<String>) {
        let body = serde_json::to_value(body).expect("rows serialize");
        let body = match body {
            Value::Object(_) => body,
            other => json!({ "value": other }),
        };
        self.emit("row", body, text.into());
    }

    pub fn note(&mut self, text: &str) {
        self.emit("note", json!({ "text": text }), format!("note: {text}"));
    }

    pub fn check(&mut self, rec: CheckRecord) {
        let status = match rec.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let mut text = format!("[{status}] {} {}", rec.id, rec.instance);
        if let Some(d) = &rec.detail {
            text.push_str(&format!(": {d}"));
        }
        self.emit(
            "check",
            serde_json::to_value(&rec).expect("records serialize"),
            text,
        );
        self.checks.push(rec);
    }

    pub fn checks(&mut self, report: Report) {
        for rec in report.records {
            self.check(rec);
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        id: &str,
        instance: &str,
        got: T,
        want: T,
    ) {
        let ok = got == want;
        self.check(CheckRecord::from_bool(id, instance, ok, || {
            format!("got {got}, expected {want}")
        }));
    }

    /// Writes the summary and returns the process exit code.
    pub fn finish(mut self, args: Value) -> u8 {
        let total = self.checks.records.len();
        let passed = self.checks.count(Status::Pass);
        let failed = self.checks.count(Status::Fail);
        let skipped = self.checks.count(Status::Skipped);
        let elapsed_ms = self.start.elapsed().as_millis();
        let status = if failed == 0 { "pass" } else { "fail" };
        let body = json!({
            "args": args,
            "checks": total,
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
            "elapsed_ms": elapsed_ms,
            "status": status,
        });
        let text = format!("{status}: {passed}/{total} checks passed");
        self.emit("summary", body, text);
        let _ = self.sink.flush();
        eprintln!(
            "{}: {status} ({passed} passed, {failed} failed, {skipped} skipped of {total} checks) in {elapsed_ms} ms",
            self.command
        );
        for rec in self.checks.failures().take(10) {
            eprintln!(
                "  failed {} {}: {}",
                rec.id,
                rec.instance,
                rec.detail.as_deref().unwrap_or("")
            );
        }
        u8::from(failed > 0)
    }
}
