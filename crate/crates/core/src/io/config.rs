use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type ConfigMap = BTreeMap<String, String>;

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// ignored and duplicate keys are rejected.
pub fn parse_config(text: &str) -> Result<ConfigMap> {
    let mut map = ConfigMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {line_no}: expected `key = value`"
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Config(format!(
                "line {line_no}: bad key `{}`",
                key.escape_debug()
            )));
        }
        if value.is_empty() {
            return Err(Error::Config(format!(
                "line {line_no}: key `{key}` has no value"
            )));
        }
        if map.insert(key.to_owned(), value.to_owned()).is_some() {
            return Err(Error::Config(format!(
                "line {line_no}: duplicate key `{key}`"
            )));
        }
    }
    Ok(map)
}

/// One `key = value` line per entry in the given order.
pub fn render_config<'a>(entries: impl IntoIterator<Item = (&'a str, String)>) -> String {
    let mut out = String::new();
    for (k, v) in entries {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    }
    out
}
