//! Run configuration: flags, optional key=value config file, and the
//! canonical text form.  Flags win over file entries on conflict.

use cosetnet_core::error::{Error, Result};
use cosetnet_core::groups::{parse_group_spec, GroupFamily};
use cosetnet_core::net::pipeline::AnalysisConfig;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: String,
    pub subgroup: String,
    pub radius: u32,
    pub signature_radius: Option<u32>,
    pub difference_bound: Option<u32>,
    pub c1: Option<i64>,
    pub mode: Mode,
    pub diagnostic: bool,
    pub seed: u64,
    pub workers: usize,
    pub outdir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled(usize),
}

impl Mode {
    pub fn parse(text: &str) -> Result<Mode> {
        if text == "exhaustive" {
            return Ok(Mode::Exhaustive);
        }
        if let Some(n) = text.strip_prefix("sampled:") {
            return Ok(Mode::Sampled(n.parse().map_err(|_| Error::GroupSpecParse {
                input: text.to_string(),
                reason: "bad sample count".into(),
            })?));
        }
        Err(Error::GroupSpecParse {
            input: text.to_string(),
            reason: "mode is `exhaustive` or `sampled:N`".into(),
        })
    }

    pub fn canonical(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled(n) => format!("sampled:{n}"),
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: String::new(),
            subgroup: String::new(),
            radius: 6,
            signature_radius: None,
            difference_bound: None,
            c1: None,
            mode: Mode::Sampled(20_000),
            diagnostic: false,
            seed: 0,
            workers: 1,
            outdir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn family(&self) -> Result<GroupFamily> {
        parse_group_spec(&self.group)
    }

    /// Canonical key=value text; parsing it back yields an equal config.
    pub fn to_canonical_text(&self) -> String {
        let mut pairs: BTreeMap<&str, String> = BTreeMap::new();
        pairs.insert("group", self.group.clone());
        pairs.insert("subgroup", self.subgroup.clone());
        pairs.insert("radius", self.radius.to_string());
        if let Some(k) = self.signature_radius {
            pairs.insert("k", k.to_string());
        }
        if let Some(d) = self.difference_bound {
            pairs.insert("difference_bound", d.to_string());
        }
        if let Some(c1) = self.c1 {
            pairs.insert("c1", c1.to_string());
        }
        pairs.insert("mode", self.mode.canonical());
        pairs.insert("diagnostic", self.diagnostic.to_string());
        pairs.insert("seed", self.seed.to_string());
        pairs.insert("workers", self.workers.to_string());
        pairs.insert("outdir", self.outdir.display().to_string());
        let mut out = String::new();
        for (k, v) in pairs {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }

    /// Applies key=value lines; `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::GroupSpecParse {
                input: line.to_string(),
                reason: format!("config line {} is not key=value", lineno + 1),
            })?;
            let bad = |reason: &str| Error::GroupSpecParse {
                input: line.to_string(),
                reason: reason.to_string(),
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "group" => self.group = value.to_string(),
                "subgroup" => self.subgroup = value.to_string(),
                "radius" => self.radius = value.parse().map_err(|_| bad("bad radius"))?,
                "k" => self.signature_radius = Some(value.parse().map_err(|_| bad("bad k"))?),
                "difference_bound" => {
                    self.difference_bound = Some(value.parse().map_err(|_| bad("bad bound"))?)
                }
                "c1" => self.c1 = Some(value.parse().map_err(|_| bad("bad c1"))?),
                "mode" => self.mode = Mode::parse(value)?,
                "diagnostic" => {
                    self.diagnostic = value.parse().map_err(|_| bad("bad diagnostic flag"))?
                }
                "seed" => self.seed = value.parse().map_err(|_| bad("bad seed"))?,
                "workers" => self.workers = value.parse().map_err(|_| bad("bad workers"))?,
                "outdir" => self.outdir = PathBuf::from(value),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn to_analysis_config(&self) -> Result<AnalysisConfig> {
        let mut cfg = AnalysisConfig::new(self.family()?, &self.subgroup, self.radius);
        cfg.signature_radius = self.signature_radius;
        cfg.difference_bound = self.difference_bound;
        cfg.c1 = self.c1;
        cfg.seed = self.seed;
        cfg.workers = self.workers.max(1);
        cfg.diagnostic = self.diagnostic;
        match self.mode {
            Mode::Exhaustive => {
                cfg.exhaustive_delta_radius = self.radius.min(4);
                cfg.sample_count = 0;
            }
            Mode::Sampled(n) => {
                cfg.exhaustive_delta_radius = self.radius.min(3);
                cfg.sample_count = n;
            }
        }
        Ok(cfg)
    }

    /// Artifact directory `<outdir>/<group>/<subgroup>/<R>/`.
    pub fn artifact_dir(&self) -> PathBuf {
        let sub = if self.subgroup.is_empty() {
            "trivial".to_string()
        } else {
            self.subgroup.replace('/', "_")
        };
        self.outdir
            .join(self.group.replace('/', "_"))
            .join(sub)
            .join(self.radius.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_roundtrips() {
        let mut config = RunConfig {
            group: "free:2".into(),
            subgroup: "a".into(),
            radius: 8,
            signature_radius: Some(2),
            difference_bound: None,
            c1: Some(8),
            mode: Mode::Sampled(500),
            diagnostic: true,
            seed: 7,
            workers: 3,
            outdir: PathBuf::from("artifacts"),
        };
        let text = config.to_canonical_text();
        let mut parsed = RunConfig::default();
        parsed.apply_file_text(&text).unwrap();
        // Fields absent from the text stay at their defaults.
        config.difference_bound = parsed.difference_bound;
        assert_eq!(parsed, config);
        assert_eq!(parsed.to_canonical_text(), text);
    }

    #[test]
    fn bad_mode_is_rejected() {
        assert!(Mode::parse("banana").is_err());
        assert_eq!(Mode::parse("sampled:10").unwrap(), Mode::Sampled(10));
    }
}
