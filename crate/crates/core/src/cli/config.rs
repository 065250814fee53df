//! Flat `key = value` config files holding the same keys as the CLI flags.

use std::path::Path;

/// Boolean flags: `key = true` becomes `--key`, `key = false` is dropped.
const SWITCHES: &[&str] = &["half-angle-timestep"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

/// Parses config text into flag arguments (`--key value`).
pub fn config_to_args(text: &str) -> Result<Vec<String>, ConfigError> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError(format!("line {}: expected key=value, got {raw:?}", i + 1)));
        };
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(ConfigError(format!("line {}: invalid key {key:?}", i + 1)));
        }
        if SWITCHES.contains(&key) {
            match value {
                "true" | "1" | "yes" => args.push(format!("--{key}")),
                "false" | "0" | "no" => {}
                other => {
                    return Err(ConfigError(format!(
                        "line {}: {key} expects true/false, got {other:?}",
                        i + 1
                    )))
                }
            }
        } else {
            args.push(format!("--{key}"));
            args.push(value.to_string());
        }
    }
    Ok(args)
}

pub fn load_config(path: &Path) -> Result<Vec<String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    config_to_args(&text)
}

/// Finds `--config <path>` or `--config=<path>` in the raw arguments.
pub fn find_config_path(argv: &[String]) -> Option<String> {
    let mut iter = argv.iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}
