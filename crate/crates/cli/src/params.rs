//! Scenario inputs from flags and an optional `key=value` file; flags win.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use hierarchy_core::sweep::{Model, Scenario};
use hierarchy_core::{Mode, ModelParams};

use crate::CliError;

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// File of `key=value` lines using the flag names; `#` starts a comment.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Solver: standard, productivity, coupled, capability, dual, expert-knowledge.
    #[arg(long)]
    pub model: Option<String>,
    /// baseline, worker-auto, worker-aug, expert-auto or expert-aug.
    #[arg(long)]
    pub mode: Option<String>,
    /// Cost of acquiring knowledge (wage curvature).
    #[arg(long)]
    pub k: Option<f64>,
    /// Base wage.
    #[arg(long)]
    pub w: Option<f64>,
    /// Expert time per escalated problem.
    #[arg(long)]
    pub tc: Option<f64>,
    /// Time to validate one tool output.
    #[arg(long)]
    pub tv: Option<f64>,
    /// Time to redo one hallucinated output.
    #[arg(long)]
    pub tr: Option<f64>,
    /// Capability of the deployed tool.
    #[arg(long)]
    pub r: Option<f64>,
    /// Hallucination rate.
    #[arg(long)]
    pub h: Option<f64>,
    /// Capability-reliability coupling coefficient.
    #[arg(long)]
    pub b: Option<f64>,
    /// Productivity gain intensity.
    #[arg(long = "A", visible_alias = "a")]
    pub a: Option<f64>,
    /// Capability investment cost coefficient.
    #[arg(long = "c-r")]
    pub c_r: Option<f64>,
    /// Reliability investment cost coefficient.
    #[arg(long = "c-h")]
    pub c_h: Option<f64>,
    /// Hallucination rate without reliability investment.
    #[arg(long = "h-bar0")]
    pub h_bar0: Option<f64>,
}

const KEYS: [&str; 14] =
    ["model", "mode", "k", "w", "tc", "tv", "tr", "r", "h", "b", "A", "c-r", "c-h", "h-bar0"];

fn canonical(key: &str) -> Option<&'static str> {
    let key = match key {
        "t_c" => "tc",
        "t_v" => "tv",
        "t_r" => "tr",
        "a" => "A",
        "c_r" => "c-r",
        "c_h" => "c-h",
        "h_bar0" => "h-bar0",
        other => other,
    };
    KEYS.into_iter().find(|k| *k == key)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<&'static str, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("config line {}: expected key=value", i + 1)))?;
        let key = canonical(key.trim()).ok_or_else(|| {
            CliError::input(format!("config line {}: unknown key `{}`", i + 1, key.trim()))
        })?;
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

impl ParamArgs {
    fn file(&self) -> Result<BTreeMap<&'static str, String>, CliError> {
        match &self.config {
            None => Ok(BTreeMap::new()),
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
                parse_config(&text)
            }
        }
    }

    pub fn resolve(&self) -> Result<Scenario, CliError> {
        let file = self.file()?;
        let num = |flag: Option<f64>, key: &str| -> Result<Option<f64>, CliError> {
            match (flag, file.get(key)) {
                (Some(v), _) => Ok(Some(v)),
                (None, Some(s)) => s.parse().map(Some).map_err(|_| {
                    CliError::input(format!("config value for `{key}` is not a number: {s}"))
                }),
                (None, None) => Ok(None),
            }
        };
        let required = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| CliError::input(format!("missing --{key}")))
        };
        let text =
            |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

        let model: Model = match text(&self.model, "model") {
            Some(s) => s.parse()?,
            None => Model::Standard,
        };
        let mode: Mode =
            text(&self.mode, "mode").ok_or_else(|| CliError::input("missing --mode"))?.parse()?;
        let params = ModelParams::full(
            required(num(self.k, "k")?, "k")?,
            required(num(self.w, "w")?, "w")?,
            required(num(self.tc, "tc")?, "tc")?,
            num(self.tv, "tv")?.unwrap_or(0.0),
            num(self.tr, "tr")?.unwrap_or(0.0),
        );
        let mut s = Scenario::new(model, mode, params);
        s.r = num(self.r, "r")?;
        s.h = num(self.h, "h")?;
        s.b = num(self.b, "b")?;
        s.a = num(self.a, "A")?;
        s.c_r = num(self.c_r, "c-r")?;
        s.c_h = num(self.c_h, "c-h")?;
        s.h_bar0 = num(self.h_bar0, "h-bar0")?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_aliases() {
        let m = parse_config("# fig 2\nk = 0.8 # premium\nt_c=0.8\n\nmode=worker-auto\n").unwrap();
        assert_eq!(m["k"], "0.8");
        assert_eq!(m["tc"], "0.8");
        assert_eq!(m["mode"], "worker-auto");
        assert!(parse_config("q=1").is_err());
        assert!(parse_config("k").is_err());
    }
}
