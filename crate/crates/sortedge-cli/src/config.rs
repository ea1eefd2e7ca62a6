//! Merging a JSON config file into the command line.
//!
//! The file holds a flat object keyed by long flag names. Each entry the
//! user did not also pass as a flag is appended to the arguments, so clap
//! validates config values exactly like typed ones and rejects unknown keys.

use crate::error::CliError;
use serde_json::Value;
use std::ffi::OsString;

/// Path given to `--config`, if any.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn given(args: &[OsString], flag: &str) -> bool {
    let eq = format!("{flag}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&eq)
    })
}

fn render(key: &str, value: &Value) -> Result<Option<String>, CliError> {
    let text = match value {
        Value::Null | Value::Bool(false) => return Ok(None),
        Value::Bool(true) => String::new(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                Value::Number(n) => Ok(n.to_string()),
                Value::String(s) => Ok(s.clone()),
                _ => Err(CliError::Usage(format!(
                    "config key {key}: unsupported list item {v}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        Value::Object(_) => {
            return Err(CliError::Usage(format!(
                "config key {key}: nested objects are not flags"
            )))
        }
    };
    Ok(Some(text))
}

/// Returns `args` extended by the config entries not overridden by a flag.
pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::Usage(format!(
            "cannot read config {}: {e}",
            path.to_string_lossy()
        ))
    })?;
    let object = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(m)) => m,
        Ok(_) => return Err(CliError::Usage("config must be a JSON object".into())),
        Err(e) => return Err(CliError::Usage(format!("config is not valid JSON: {e}"))),
    };
    let mut out = args.clone();
    for (key, value) in &object {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" || given(&args, &flag) {
            continue;
        }
        match render(key, value)? {
            None => {}
            Some(v) if v.is_empty() && value.is_boolean() => out.push(flag.into()),
            Some(v) => out.push(format!("{flag}={v}").into()),
        }
    }
    Ok(out)
}
