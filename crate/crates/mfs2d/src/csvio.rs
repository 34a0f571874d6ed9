//! CSV emission helpers: UTF-8, LF line endings, `.` decimal separator,
//! 17 significant digits for floats, and an embedded copy of the resolved
//! experiment configuration so every result file can be re-run.

use crate::error::Result;
use std::io::Write;
use std::path::Path;

pub const CONFIG_BEGIN: &str = "# --- config ---";
pub const CONFIG_END: &str = "# --- end config ---";

/// Render a float with 17 significant digits.
pub fn fmt_f(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{x:.16e}")
}

/// Write a CSV file with optional comment metadata and an optional embedded
/// config block.
pub fn write_csv(
    path: &Path,
    metadata: &[(String, String)],
    config_toml: Option<&str>,
    header: &str,
    rows: impl IntoIterator<Item = String>,
) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for (key, value) in metadata {
        writeln!(out, "# {key} = {value}")?;
    }
    if let Some(cfg) = config_toml {
        writeln!(out, "{CONFIG_BEGIN}")?;
        for line in cfg.lines() {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "{CONFIG_END}")?;
    }
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(())
}

/// Recover the embedded config block from a result file.
pub fn embedded_config(path: &Path) -> Result<Option<String>> {
    let text = std::fs::read_to_string(path)?;
    let mut inside = false;
    let mut cfg = String::new();
    for line in text.lines() {
        if line == CONFIG_BEGIN {
            inside = true;
            continue;
        }
        if line == CONFIG_END {
            return Ok(Some(cfg));
        }
        if inside {
            cfg.push_str(line.strip_prefix("# ").unwrap_or(line));
            cfg.push('\n');
        }
    }
    Ok(None)
}
