use std::collections::BTreeSet;
use std::fmt::Write as _;

use lexcycle::certify::{
    check_c4_property, check_flip_pair, is_lbfs_ordering, is_umbrella_free, CheckKind, CheckReport,
    Verdict,
};
use lexcycle::classes::{
    classify, gen_interval, gen_poset_cocomp, gen_rejection, is_cocomparability, named,
    ClassSample, ClassTag, Provenance,
};
use lexcycle::io::to_graph6;
use lexcycle::lexcycle::{
    default_sweep_budget, detect_orbit, lexcycle_exact, lexcycle_sampled, random_cocomp_ordering,
    theorem_check, Divergence, EstimateMode, LexCycleEstimate, TheoremVerdict, EXACT_MAX_N,
};
use lexcycle::{Graph, Ordering};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, GenClass};
use crate::report::{ErrorRecord, Outcome, Record};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn sample_instance(
    cfg: &ExperimentConfig,
    index: usize,
) -> lexcycle::Result<(ClassSample, Option<usize>)> {
    let (n, p, seed) = (
        cfg.instance_n(index),
        cfg.instance_p(index),
        cfg.instance_seed(index),
    );
    match cfg.class.rejection_tag() {
        Some(tag) => gen_rejection(n, p, seed, tag, cfg.budget).map(|(s, d)| (s, Some(d))),
        None if cfg.class == GenClass::Interval => Ok((gen_interval(n, seed), None)),
        None => gen_poset_cocomp(n, p, seed).map(|s| (s, None)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratedRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub source: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    #[serde(skip)]
    pub sample: Option<ClassSample>,
}

impl GeneratedRecord {
    fn from_sample(sample: ClassSample, source: String) -> Self {
        GeneratedRecord {
            index: None,
            seed: None,
            source,
            n: sample.graph.n(),
            graph6: Some(to_graph6(&sample.graph)),
            m: Some(sample.graph.m()),
            draws: None,
            witness: match sample.witness {
                Provenance::None => None,
                ref w => Some(w.clone()),
            },
            error: None,
            sample: Some(sample),
        }
    }

    pub fn sidecar(&self) -> Option<String> {
        self.sample.as_ref().and_then(ClassSample::witness_sidecar)
    }
}

impl Record for GeneratedRecord {
    fn plain(&self) -> String {
        match (&self.graph6, &self.error) {
            (Some(g6), _) => g6.clone(),
            (None, Some(e)) => format!("# instance {}: {}", self.index.unwrap_or(0), e.message),
            (None, None) => String::new(),
        }
    }

    fn outcome(&self) -> Outcome {
        if self.error.is_some() {
            Outcome::Error
        } else {
            Outcome::Ok
        }
    }
}

/// Samples `cfg.count` graphs; failed rejection runs become error records.
pub fn generate(cfg: &ExperimentConfig) -> Vec<GeneratedRecord> {
    (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.instance_seed(i);
            let mut record = match sample_instance(cfg, i) {
                Ok((sample, draws)) => {
                    let mut r = GeneratedRecord::from_sample(sample, cfg.class.name().to_string());
                    r.draws = draws;
                    r
                }
                Err(e) => GeneratedRecord {
                    index: None,
                    seed: None,
                    source: cfg.class.name().to_string(),
                    n: cfg.instance_n(i),
                    graph6: None,
                    m: None,
                    draws: None,
                    witness: None,
                    error: Some(ErrorRecord::from_core(&e)),
                    sample: None,
                },
            };
            record.index = Some(i);
            record.seed = Some(seed);
            record
        })
        .collect()
}

pub fn generate_named(name: &str, k: usize) -> lexcycle::Result<GeneratedRecord> {
    let graph = named(name, k)?;
    let source = format!("{name}({k})");
    Ok(GeneratedRecord::from_sample(
        ClassSample {
            graph,
            witness: Provenance::None,
        },
        source,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LexMode {
    /// Exact when the size guard allows it, sampled otherwise.
    #[default]
    Auto,
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub preperiod: usize,
    pub period: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cycle: Vec<Ordering>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LexCycleRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    #[serde(flatten)]
    pub estimate: Option<LexCycleEstimate>,
    /// Orbit of the reported start.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl Record for LexCycleRecord {
    fn plain(&self) -> String {
        match (&self.estimate, &self.error) {
            (Some(e), _) => {
                let bound = match e.mode {
                    EstimateMode::Exact => "=",
                    EstimateMode::Sampled => ">=",
                };
                format!(
                    "{}: LexCycle {bound} {} over {} starts (from [{}])",
                    self.graph6, e.value, e.starts_examined, e.argmax_start
                )
            }
            (None, Some(e)) => format!("{}: error: {}", self.graph6, e.message),
            (None, None) => self.graph6.clone(),
        }
    }

    fn outcome(&self) -> Outcome {
        if self.error.is_some() {
            Outcome::Error
        } else {
            Outcome::Ok
        }
    }
}

pub fn lexcycle_record(
    index: usize,
    g: &Graph,
    mode: LexMode,
    trials: usize,
    seed: u64,
) -> LexCycleRecord {
    let exact = match mode {
        LexMode::Auto => g.n() <= EXACT_MAX_N,
        LexMode::Exact => true,
        LexMode::Sampled => false,
    };
    let estimate = if exact {
        lexcycle_exact(g)
    } else {
        lexcycle_sampled(g, trials, seed)
    };
    let mut record = LexCycleRecord {
        index,
        graph6: to_graph6(g),
        n: g.n(),
        estimate: None,
        orbit: None,
        error: None,
    };
    match estimate {
        Ok(est) => {
            record.orbit = detect_orbit(g, &est.argmax_start, usize::MAX)
                .ok()
                .map(|o| OrbitRecord {
                    preperiod: o.preperiod,
                    period: o.period,
                    cycle: o.cycle,
                });
            record.estimate = Some(est);
        }
        Err(e) => record.error = Some(ErrorRecord::from_core(&e)),
    }
    record
}

/// One theorem check from a single starting ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StartCheck {
    pub source: &'static str,
    pub start: Ordering,
    pub verdict: TheoremVerdict,
    /// `σ₀ ..= σ₃`, kept for failures only.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<Ordering>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<Divergence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<lexcycle::certify::Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "BTreeSet::is_empty")]
    pub tags: BTreeSet<ClassTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<TheoremVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<StartCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl Record for InstanceRecord {
    fn plain(&self) -> String {
        let mut s = format!("#{} n={} ", self.index, self.n);
        match (&self.verdict, &self.error) {
            (Some(v), _) => {
                let _ = write!(s, "{v:?} ({} starts)", self.checks.len());
                if let Some(o) = &self.orbit {
                    let _ = write!(s, " preperiod={} period={}", o.preperiod, o.period);
                }
                for c in self
                    .checks
                    .iter()
                    .filter(|c| c.verdict == TheoremVerdict::Fail)
                {
                    let _ = write!(
                        s,
                        " fail from [{}] {}",
                        c.start,
                        self.graph6.as_deref().unwrap_or("")
                    );
                }
            }
            (None, Some(e)) => s.push_str(&e.message),
            (None, None) => {}
        }
        for note in &self.notes {
            let _ = write!(s, " note: {note}");
        }
        s
    }

    fn outcome(&self) -> Outcome {
        match (self.verdict, &self.error) {
            (Some(TheoremVerdict::Pass), _) => Outcome::Ok,
            (Some(TheoremVerdict::Fail), _) => Outcome::Fail,
            (Some(TheoremVerdict::NotApplicable), _) => Outcome::NotApplicable,
            (None, _) => Outcome::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub errors: usize,
    pub checks: usize,
}

/// Trailing record of a batch report.
#[derive(Debug, Clone, Serialize)]
pub struct Footer {
    pub summary: Summary,
    pub config: ExperimentConfig,
    pub version: &'static str,
}

impl Record for Footer {
    fn plain(&self) -> String {
        let s = &self.summary;
        format!(
            "{} instances of {}: {} pass, {} fail, {} not applicable, {} errors ({} checks)",
            s.instances, self.config.class, s.pass, s.fail, s.not_applicable, s.errors, s.checks
        )
    }

    fn outcome(&self) -> Outcome {
        let s = &self.summary;
        [
            (s.fail > 0, Outcome::Fail),
            (s.errors > 0, Outcome::Error),
            (s.not_applicable > 0, Outcome::NotApplicable),
        ]
        .into_iter()
        .filter(|c| c.0)
        .map(|c| c.1)
        .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub records: Vec<InstanceRecord>,
    pub footer: Footer,
}

fn check_from(g: &Graph, source: &'static str, start: Ordering) -> lexcycle::Result<StartCheck> {
    let report = theorem_check(g, &start)?;
    let failed = report.verdict == TheoremVerdict::Fail;
    Ok(StartCheck {
        source,
        start,
        verdict: report.verdict,
        sweeps: if failed { report.sweeps } else { Vec::new() },
        divergence: report.divergence,
        witness: report.witness,
    })
}

fn run_instance(cfg: &ExperimentConfig, index: usize) -> InstanceRecord {
    let seed = cfg.instance_seed(index);
    let mut record = InstanceRecord {
        index,
        seed,
        n: cfg.instance_n(index),
        p: cfg.instance_p(index),
        graph6: None,
        m: None,
        tags: BTreeSet::new(),
        orbit: None,
        verdict: None,
        checks: Vec::new(),
        notes: Vec::new(),
        error: None,
    };
    let sample = match sample_instance(cfg, index) {
        Ok((s, _)) => s,
        Err(e) => {
            record.error = Some(ErrorRecord::from_core(&e));
            return record;
        }
    };
    let g = &sample.graph;
    record.graph6 = Some(to_graph6(g));
    record.m = Some(g.m());
    record.tags = classify(g);

    let mut starts = Vec::new();
    if let Some(w) = sample.witness_ordering() {
        starts.push(("witness", w));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..cfg.extra_starts {
        match random_cocomp_ordering(g, rng.next_u64()) {
            Some(o) => starts.push(("extra", o)),
            None => record.notes.push(format!(
                "extra start {k}: no umbrella-free sweep within n + 1 sweeps"
            )),
        }
    }
    if let Some((_, first)) = starts.first() {
        match detect_orbit(g, first, default_sweep_budget(g.n())) {
            Ok(o) => {
                record.orbit = Some(OrbitRecord {
                    preperiod: o.preperiod,
                    period: o.period,
                    cycle: Vec::new(),
                })
            }
            Err(e) => record.notes.push(e.to_string()),
        }
    }
    for (source, start) in starts {
        match check_from(g, source, start) {
            Ok(c) => record.checks.push(c),
            Err(e) => {
                record.error = Some(ErrorRecord::from_core(&e));
                return record;
            }
        }
    }
    let verdicts: Vec<_> = record.checks.iter().map(|c| c.verdict).collect();
    record.verdict = Some(if verdicts.contains(&TheoremVerdict::Fail) {
        TheoremVerdict::Fail
    } else if verdicts.contains(&TheoremVerdict::NotApplicable) || verdicts.is_empty() {
        TheoremVerdict::NotApplicable
    } else {
        TheoremVerdict::Pass
    });
    record
}

/// Runs the σ₁ = σ₃ check on every generated instance. Records come back in
/// index order whatever the thread count.
pub fn check_theorem(cfg: &ExperimentConfig) -> ExperimentReport {
    let records: Vec<InstanceRecord> = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_instance(cfg, i))
        .collect();
    let mut summary = Summary {
        instances: records.len(),
        ..Summary::default()
    };
    for r in &records {
        summary.checks += r.checks.len();
        match r.outcome() {
            Outcome::Ok => summary.pass += 1,
            Outcome::Fail => summary.fail += 1,
            Outcome::NotApplicable => summary.not_applicable += 1,
            Outcome::Error => summary.errors += 1,
        }
    }
    ExperimentReport {
        records,
        footer: Footer {
            summary,
            config: cfg.clone(),
            version: VERSION,
        },
    }
}

pub fn parse_check(name: &str) -> anyhow::Result<CheckKind> {
    Ok(match name {
        "umbrella" => CheckKind::Umbrella,
        "lbfs" | "4-point" => CheckKind::Lbfs,
        "flip" => CheckKind::Flip,
        "c4" => CheckKind::C4,
        _ => anyhow::bail!("unknown check `{name}` (expected umbrella, lbfs, flip or c4)"),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyRecord {
    pub index: usize,
    pub graph6: String,
    pub ordering: Ordering,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Ordering>,
    #[serde(flatten)]
    pub report: CheckReport,
}

impl Record for CertifyRecord {
    fn plain(&self) -> String {
        let mut s = format!(
            "{} [{}] {}: {}",
            self.graph6,
            self.ordering,
            label(&self.report.check),
            label(&self.report.verdict)
        );
        if let Some(w) = &self.report.witness {
            let _ = write!(s, " {}", serde_json::to_string(w).unwrap_or_default());
        }
        s
    }

    fn outcome(&self) -> Outcome {
        match self.report.verdict {
            Verdict::Pass => Outcome::Ok,
            Verdict::Fail => Outcome::Fail,
            Verdict::NotApplicable => Outcome::NotApplicable,
        }
    }
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

pub fn certify(
    index: usize,
    g: &Graph,
    ordering: &str,
    check: CheckKind,
    tau: Option<&str>,
) -> lexcycle::Result<CertifyRecord> {
    let sigma = Ordering::parse(ordering, g.n())?;
    let tau = tau.map(|t| Ordering::parse(t, g.n())).transpose()?;
    let report = match check {
        CheckKind::Umbrella => is_umbrella_free(g, &sigma),
        CheckKind::Lbfs => is_lbfs_ordering(g, &sigma),
        CheckKind::C4 => check_c4_property(g, &sigma),
        CheckKind::Flip => {
            let tau = tau.as_ref().ok_or_else(|| {
                lexcycle::Error::InvalidParameter("the flip check needs --tau".into())
            })?;
            check_flip_pair(g, &sigma, tau)
        }
    };
    Ok(CertifyRecord {
        index,
        graph6: to_graph6(g),
        ordering: sigma,
        tau,
        report,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RecognizeRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub tags: BTreeSet<ClassTag>,
    pub cocomparability: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Ordering>,
    pub sweeps: usize,
}

impl Record for RecognizeRecord {
    fn plain(&self) -> String {
        let tags: Vec<_> = self.tags.iter().map(|t| t.name()).collect();
        let mut s = format!("{}: {}", self.graph6, tags.join(" "));
        if let Some(w) = &self.witness {
            let _ = write!(s, " [{w}]");
        }
        s
    }
}

pub fn recognize(index: usize, g: &Graph) -> RecognizeRecord {
    let r = is_cocomparability(g);
    RecognizeRecord {
        index,
        graph6: to_graph6(g),
        n: g.n(),
        m: g.m(),
        tags: classify(g),
        cocomparability: r.cocomparability,
        witness: r.witness,
        sweeps: r.sweeps,
    }
}
