use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::embedding::Curvature;
use crate::error::Error;
use crate::scalefactor::{Preset, ScaleExpr};

use super::CliError;

/// Inclusive grid `start:stop:count`; a bare number is a one-point grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Grid, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |p: &str| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(Grid { start: v, stop: v, count: 1 })
            }
            [a, b, c] => {
                let count: usize = c.parse().map_err(|_| format!("`{c}` is not a point count"))?;
                if count == 0 {
                    return Err("grid needs at least one point".into());
                }
                let (start, stop) = (num(a)?, num(b)?);
                if count == 1 && start != stop {
                    return Err("a one-point grid needs start == stop".into());
                }
                Ok(Grid { start, stop, count })
            }
            _ => Err(format!("expected start:stop:count, got `{s}`")),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

/// Merged settings: config file entries overridden by command-line flags.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<&'static str, String>,
}

impl Settings {
    /// `flags` lists every key the subcommand accepts, with the flag value if given.
    pub fn merge(config: Option<&Path>, flags: Vec<(&'static str, Option<String>)>) -> Result<Settings, CliError> {
        let mut values = BTreeMap::new();
        if let Some(path) = config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::config("config", format!("line {}: expected `key = value`", lineno + 1)));
                };
                let key = key.trim().replace('_', "-");
                let Some(&(known, _)) = flags.iter().find(|(k, _)| *k == key) else {
                    return Err(CliError::config(&key, format!("line {}: unknown key", lineno + 1)));
                };
                values.insert(known, unquote(value.trim()).to_string());
            }
        }
        for (key, v) in flags {
            if let Some(v) = v {
                values.insert(key, v);
            }
        }
        Ok(Settings { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| CliError::config(key, "missing value".into()))
    }

    pub fn parse_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.trim().parse().map_err(|_| CliError::config(key, format!("cannot parse `{v}`"))),
        }
    }

    pub fn grid(&self, key: &str, default: &str) -> Result<Grid, CliError> {
        Grid::parse(self.get(key).unwrap_or(default)).map_err(|m| CliError::config(key, m))
    }

    pub fn curvature(&self) -> Result<Curvature, CliError> {
        let v = self.require("k")?;
        v.parse().map_err(|_| CliError::config("k", format!("expected -1, 0 or +1, got `{v}`")))
    }

    pub fn scale(&self) -> Result<ScaleExpr, CliError> {
        let src = self.require("scale")?;
        ScaleExpr::resolve(src).map_err(|e| match e {
            Error::Syntax { offset, .. } | Error::UnknownFunction { offset, .. } => {
                CliError::config("scale", format!("{e}\n  {src}\n  {}^", " ".repeat(offset)))
            }
            e => CliError::config("scale", e.to_string()),
        })
    }

    /// Sampling interval of a preset, or `fallback` for free expressions.
    pub fn time_range(&self, key: &str, scale: &ScaleExpr, fallback: (f64, f64)) -> Result<(f64, f64), CliError> {
        let Some(v) = self.get(key) else {
            return Ok(scale.preset.map(Preset::sample_domain).unwrap_or(fallback));
        };
        let parts: Vec<&str> = v.split(':').collect();
        let bad = || CliError::config(key, format!("expected lo:hi, got `{v}`"));
        let [lo, hi] = parts.as_slice() else { return Err(bad()) };
        let (lo, hi): (f64, f64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
        if lo >= hi {
            return Err(bad());
        }
        Ok((lo, hi))
    }

    pub fn vector(&self, key: &str, default: &str, len: usize) -> Result<Vec<f64>, CliError> {
        let v = self.get(key).unwrap_or(default);
        let xs: Result<Vec<f64>, _> = v.split(',').map(|s| s.trim().parse::<f64>()).collect();
        match xs {
            Ok(xs) if xs.len() == len => Ok(xs),
            _ => Err(CliError::config(key, format!("expected {len} comma-separated numbers, got `{v}`"))),
        }
    }
}

fn unquote(s: &str) -> &str {
    s.strip_prefix('"').and_then(|r| r.strip_suffix('"')).unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_inclusive() {
        assert_eq!(Grid::parse("0.5:2:4").unwrap().values(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(Grid::parse("3").unwrap().values(), vec![3.0]);
        assert!(Grid::parse("0:1:0").is_err());
        assert!(Grid::parse("0:1").is_err());
        assert!(Grid::parse("a:1:2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("nullcone-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# section\nk = -1\nscale = \"t^2\"  # matter\n\nt = 0:1:3\n").unwrap();
        let flags = vec![("k", Some("+1".into())), ("scale", None), ("t", None), ("chi", None)];
        let s = Settings::merge(Some(&path), flags).unwrap();
        assert_eq!(s.get("k"), Some("+1"));
        assert_eq!(s.get("scale"), Some("t^2"));
        assert_eq!(s.get("t"), Some("0:1:3"));
        assert_eq!(s.get("chi"), None);

        fs::write(&path, "bogus = 1\n").unwrap();
        let err = Settings::merge(Some(&path), vec![("k", None)]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("bogus"));
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn scale_errors_point_at_offset() {
        let s = Settings::merge(None, vec![("scale", Some("1 + foo(t)".into()))]).unwrap();
        let msg = s.scale().unwrap_err().to_string();
        assert!(msg.contains("byte 4"), "{msg}");
    }
}
