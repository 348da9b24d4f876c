//! Writing results: rounded JSON and all-or-nothing file replacement.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use outbreak_opt::export::round_sig;
use serde::Serialize;
use serde_json::Value;

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut text = serde_json::to_string_pretty(&v)?;
    text.push('\n');
    Ok(text)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            if let Some(rounded) = serde_json::Number::from_f64(x) {
                *n = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Replaces `path` with `contents` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// A finished result: either one JSON document or a set of named CSV
/// tables. Everything is rendered before anything is written.
pub enum Rendered {
    Json(String),
    Tables(Vec<(String, String)>),
}

impl Rendered {
    /// JSON goes to `out` or stdout; tables go into the directory `out`.
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        match (self, out) {
            (Rendered::Json(text), Some(path)) => write_atomic(path, text),
            (Rendered::Json(text), None) => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
            (Rendered::Tables(_), None) => anyhow::bail!("--format csv needs --out DIR"),
            (Rendered::Tables(files), Some(dir)) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, text) in files {
                    write_atomic(&dir.join(name), text)?;
                }
                Ok(())
            }
        }
    }
}
