//! Output plumbing: format selection, the output sink, and decimal
//! formatting that round-trips f64 exactly.

use std::env;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits: lossless round-trip of an f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex_csv(z: Complex64) -> String {
    format!("{},{}", fmt_float(z.re), fmt_float(z.im))
}

/// Where the report goes: stdout, or a file. Relative paths resolve against
/// EXPSPLIT_OUTPUT_DIR when it is set.
pub fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, String> {
    match path {
        None => Ok(Box::new(io::stdout())),
        Some(p) => {
            let resolved = resolve_path(p);
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() && !parent.exists() {
                    return Err(format!(
                        "output directory {} does not exist",
                        parent.display()
                    ));
                }
            }
            let file = File::create(&resolved)
                .map_err(|e| format!("cannot create {}: {e}", resolved.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn resolve_path(p: &Path) -> PathBuf {
    if p.is_relative() {
        if let Some(dir) = env::var_os("EXPSPLIT_OUTPUT_DIR") {
            return PathBuf::from(dir).join(p);
        }
    }
    p.to_path_buf()
}

pub fn write_all(sink: &mut dyn Write, content: &str) -> Result<(), String> {
    sink.write_all(content.as_bytes())
        .and_then(|_| sink.flush())
        .map_err(|e| format!("write failed: {e}"))
}
