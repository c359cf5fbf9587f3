//! Deterministic output formatting: 17 significant digits, LF terminators,
//! fixed header rows.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// 17 significant digits, enough to reproduce any f64 exactly.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvWriter {
    buf: String,
}

impl CsvWriter {
    pub fn new(header: &str) -> Self {
        let mut buf = String::new();
        buf.push_str(header);
        buf.push('\n');
        Self { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.buf, "{}", fields.join(","));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

pub fn write_output(path: Option<&str>, contents: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            if let Some(parent) = Path::new(p).parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
                }
            }
            std::fs::write(p, contents).map_err(|e| format!("cannot write {p}: {e}"))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| format!("stdout write failed: {e}"))
        }
    }
}
