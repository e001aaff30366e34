use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure};
use lexcycle::classes::ClassTag;
use serde::Serialize;

/// Graph families the harness can sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenClass {
    Interval,
    Cocomp,
    P2p3barFreeCocomp,
    DiamondFreeCocomp,
    Girth4Cocomp,
}

impl GenClass {
    pub const ALL: [GenClass; 5] = [
        GenClass::Interval,
        GenClass::Cocomp,
        GenClass::P2p3barFreeCocomp,
        GenClass::DiamondFreeCocomp,
        GenClass::Girth4Cocomp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenClass::Interval => "interval",
            GenClass::Cocomp => "cocomp",
            GenClass::P2p3barFreeCocomp => "p2p3bar-free-cocomp",
            GenClass::DiamondFreeCocomp => "diamond-free-cocomp",
            GenClass::Girth4Cocomp => "girth4-cocomp",
        }
    }

    /// Tag enforced by rejection sampling on top of the poset sampler.
    pub fn rejection_tag(self) -> Option<ClassTag> {
        match self {
            GenClass::P2p3barFreeCocomp => Some(ClassTag::Theorem31Applicable),
            GenClass::DiamondFreeCocomp => Some(ClassTag::DiamondFree),
            GenClass::Girth4Cocomp => Some(ClassTag::Girth4),
            GenClass::Interval | GenClass::Cocomp => None,
        }
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenClass {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match GenClass::ALL.into_iter().find(|c| c.name() == s) {
            Some(c) => Ok(c),
            None => bail!(
                "unknown class `{s}` (expected one of: {})",
                GenClass::ALL.map(GenClass::name).join(", ")
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Plain,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "plain" => Ok(Format::Plain),
            _ => bail!("unknown format `{s}` (expected json or plain)"),
        }
    }
}

/// Parameters of a batch run. Instance `i` uses seed `seed + i`, size
/// `n_min + i mod (n_max - n_min + 1)` and probability `probabilities[i mod len]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub class: GenClass,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub probabilities: Vec<f64>,
    pub seed: u64,
    /// Draw budget for rejection-sampled classes.
    pub budget: usize,
    pub extra_starts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            class: GenClass::P2p3barFreeCocomp,
            count: 1,
            n_min: 2,
            n_max: 12,
            probabilities: vec![0.2, 0.5, 0.8],
            seed: 0,
            budget: 100_000,
            extra_starts: 3,
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        ensure!(self.count >= 1, "instance count must be at least 1");
        ensure!(
            self.n_min <= self.n_max,
            "empty size range {}..={}",
            self.n_min,
            self.n_max
        );
        ensure!(
            !self.probabilities.is_empty(),
            "at least one probability is required"
        );
        for &p in &self.probabilities {
            ensure!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
        }
        ensure!(self.budget >= 1, "rejection budget must be at least 1");
        Ok(())
    }

    pub fn instance_seed(&self, index: usize) -> u64 {
        self.seed.wrapping_add(index as u64)
    }

    pub fn instance_n(&self, index: usize) -> usize {
        self.n_min + index % (self.n_max - self.n_min + 1)
    }

    pub fn instance_p(&self, index: usize) -> f64 {
        self.probabilities[index % self.probabilities.len()]
    }
}
