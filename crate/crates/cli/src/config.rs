//! `key = value` defaults file. Recognized keys: `precision`, `output`, `signed`.

use std::fs;
use std::path::Path;

use crate::OutputMode;

pub const DEFAULT_PRECISION: u32 = 8;
pub const PRECISION_ENV: &str = "WITTP_PRECISION";
pub const CONFIG_ENV: &str = "WITTP_CONFIG";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub precision: Option<u32>,
    pub output: Option<OutputMode>,
    pub signed: Option<bool>,
}

pub fn parse_config(text: &str) -> Result<FileConfig, String> {
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| {
            format!(
                "config line {}: {key} must be {what}, got {value:?}",
                lineno + 1
            )
        };
        match key {
            "precision" => {
                let k: u32 = value.parse().map_err(|_| bad("a positive integer"))?;
                if k == 0 {
                    return Err(bad("a positive integer"));
                }
                cfg.precision = Some(k);
            }
            "output" => {
                cfg.output = Some(match value {
                    "human" => OutputMode::Human,
                    "json" => OutputMode::Json,
                    _ => return Err(bad("human or json")),
                })
            }
            "signed" => cfg.signed = Some(value.parse().map_err(|_| bad("true or false"))?),
            _ => return Err(format!("config line {}: unknown key {key:?}", lineno + 1)),
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<FileConfig, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config(&text)
}

/// Flag, then environment, then config file, then the default.
pub fn resolve_precision(
    flag: Option<u32>,
    env: Option<&str>,
    file: &FileConfig,
) -> Result<u32, String> {
    let from_env = env
        .map(|v| {
            v.trim()
                .parse::<u32>()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| format!("{PRECISION_ENV} must be a positive integer, got {v:?}"))
        })
        .transpose()?;
    let k = flag
        .or(from_env)
        .or(file.precision)
        .unwrap_or(DEFAULT_PRECISION);
    if k == 0 {
        return Err("precision must be at least 1".into());
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg =
            parse_config("# defaults\nprecision = 5\noutput=json  # machine\n\nsigned = false\n")
                .unwrap();
        assert_eq!(
            cfg,
            FileConfig {
                precision: Some(5),
                output: Some(OutputMode::Json),
                signed: Some(false)
            }
        );
        assert!(parse_config("precision = 0").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("precision 5").is_err());
    }

    #[test]
    fn precedence() {
        let file = FileConfig {
            precision: Some(5),
            ..Default::default()
        };
        assert_eq!(resolve_precision(Some(3), Some("4"), &file), Ok(3));
        assert_eq!(resolve_precision(None, Some("4"), &file), Ok(4));
        assert_eq!(resolve_precision(None, None, &file), Ok(5));
        assert_eq!(
            resolve_precision(None, None, &FileConfig::default()),
            Ok(DEFAULT_PRECISION)
        );
        assert!(resolve_precision(None, Some("x"), &file).is_err());
        assert!(resolve_precision(Some(0), None, &file).is_err());
    }
}
