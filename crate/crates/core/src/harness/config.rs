//! Plain-text experiment configuration: one `section.key = value` per line,
//! `#` starts a comment. Unknown keys are errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use thiserror::Error;

use super::{AgentKind, BaselineKind, ExperimentSpec, PhaseTemplate, ReportFormat, WorkloadSource, WorkloadSpec};
use crate::control::Actuation;
use crate::features::{BinningScheme, Feature, NormBounds, FEATURE_COUNT};
use crate::par::Execution;
use crate::simenv::DevicePreset;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected 'section.key = value'")]
    Syntax { line: usize },
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("key '{key}': {reason}")]
    BadValue { key: String, reason: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

const KEYS: &[&str] = &[
    "experiment.name",
    "experiment.agent",
    "experiment.baseline",
    "experiment.seeds",
    "experiment.train_episodes",
    "experiment.eval_episodes",
    "experiment.execution",
    "device.preset",
    "workload.preset",
    "workload.phases",
    "workload.file",
    "workload.address_space",
    "workload.reference_bytes_per_s",
    "workload.total_ops",
    "tunables.readahead_pages",
    "tunables.queue_depth",
    "tunables.cache_pages",
    "loop.decision_interval_us",
    "loop.reward_lambda",
    "loop.smoothing_alpha",
    "loop.throughput_norm",
    "loop.latency_norm_us",
    "loop.feedback_enabled",
    "loop.collector_enabled",
    "loop.actuation",
    "loop.binning",
    "loop.bounds",
    "agent.alpha",
    "agent.gamma",
    "agent.epsilon_start",
    "agent.epsilon_end",
    "agent.epsilon_decay_steps",
    "agent.replay_capacity",
    "agent.batch_size",
    "agent.target_sync_interval",
    "agent.learning_rate",
    "agent.hidden",
    "harness.objective_weights",
    "harness.gain_beta",
    "harness.gamma_adj",
    "harness.wall_clock",
    "harness.depths",
    "harness.format",
];

/// A full experiment description plus output preferences.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub experiment: ExperimentSpec,
    pub depths: Vec<usize>,
    pub format: ReportFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            experiment: ExperimentSpec::new(
                "default",
                DevicePreset::Sata,
                WorkloadSpec::preset("oltp-mixed").expect("preset exists"),
            ),
            depths: vec![3, 4, 5],
            format: ReportFormat::Text,
        }
    }
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| bad(key, format!("cannot parse '{v}'")))
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| num(key, s))
        .collect()
}

fn flag(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "on" | "1" => Ok(true),
        "false" | "off" | "0" => Ok(false),
        _ => Err(bad(key, format!("expected true or false, got '{v}'"))),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// `feature:edge/edge;feature:edge` form.
fn render_binning(s: &BinningScheme) -> String {
    s.features
        .iter()
        .map(|(f, e)| format!("{}:{}", f.name(), e.iter().map(f64::to_string).collect::<Vec<_>>().join("/")))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_binning(key: &str, v: &str) -> Result<BinningScheme, ConfigError> {
    let mut features = Vec::new();
    for part in v.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, edges) = part.split_once(':').ok_or_else(|| bad(key, format!("'{part}' lacks ':'")))?;
        let f: Feature = name.trim().parse().map_err(|e| bad(key, format!("{e}")))?;
        let edges = edges
            .split('/')
            .map(str::trim)
            .filter(|e| !e.is_empty())
            .map(|e| num(key, e))
            .collect::<Result<Vec<f64>, _>>()?;
        features.push((f, edges));
    }
    let scheme = BinningScheme { features };
    scheme.validate().map_err(|e| bad(key, e.to_string()))?;
    Ok(scheme)
}

fn render_bounds(b: &NormBounds) -> String {
    b.bounds.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect::<Vec<_>>().join(",")
}

fn parse_bounds(key: &str, v: &str) -> Result<NormBounds, ConfigError> {
    let pairs = v
        .split(',')
        .map(|p| {
            let (lo, hi) = p.trim().split_once(':').ok_or_else(|| bad(key, format!("'{p}' lacks ':'")))?;
            Ok((num(key, lo.trim())?, num(key, hi.trim())?))
        })
        .collect::<Result<Vec<(f64, f64)>, ConfigError>>()?;
    let bounds: [(f64, f64); FEATURE_COUNT] = pairs
        .try_into()
        .map_err(|_| bad(key, format!("need {FEATURE_COUNT} lo:hi pairs")))?;
    let b = NormBounds { bounds };
    b.validate().map_err(|e| bad(key, e.to_string()))?;
    Ok(b)
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let k = k.trim();
            if !k.contains('.') {
                return Err(ConfigError::Syntax { line: i + 1 });
            }
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey(k.to_string()));
            }
            map.insert(k.to_string(), v.trim().to_string());
        }
        Self::from_map(&map)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn from_map(map: &BTreeMap<String, String>) -> Result<Self, ConfigError> {
        let mut c = Config::default();
        let get = |k: &str| map.get(k).map(String::as_str);
        let e = &mut c.experiment;

        if let Some(v) = get("experiment.name") {
            e.name = v.to_string();
        }
        if let Some(v) = get("experiment.agent") {
            e.agent = v.parse().map_err(|r: String| bad("experiment.agent", r))?;
        }
        if let Some(v) = get("experiment.baseline") {
            e.baseline = v.parse().map_err(|r: String| bad("experiment.baseline", r))?;
        }
        if let Some(v) = get("experiment.seeds") {
            e.seeds = list("experiment.seeds", v)?;
        }
        if let Some(v) = get("experiment.train_episodes") {
            e.train_episodes = num("experiment.train_episodes", v)?;
        }
        if let Some(v) = get("experiment.eval_episodes") {
            e.eval_episodes = num("experiment.eval_episodes", v)?;
        }
        if let Some(v) = get("experiment.execution") {
            e.execution = match v {
                "parallel" => Execution::Parallel,
                "sequential" => Execution::Sequential,
                _ => return Err(bad("experiment.execution", "expected parallel or sequential")),
            };
        }
        if let Some(v) = get("device.preset") {
            e.device = v.parse().map_err(|_| bad("device.preset", format!("unknown device '{v}'")))?;
        }

        if let Some(v) = get("workload.preset") {
            e.workload = WorkloadSpec::preset(v).ok_or_else(|| bad("workload.preset", format!("unknown preset '{v}'")))?;
        }
        if let Some(v) = get("workload.phases") {
            let phases = v
                .split(';')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| PhaseTemplate::parse(p).map_err(|r| bad("workload.phases", r)))
                .collect::<Result<Vec<_>, _>>()?;
            if phases.is_empty() {
                return Err(bad("workload.phases", "no phases"));
            }
            let name = get("workload.preset").unwrap_or("custom");
            let old = std::mem::replace(&mut e.workload, WorkloadSpec::phased(name, phases));
            if let (
                WorkloadSource::Phased {
                    address_space,
                    reference_bytes_per_s,
                    ..
                },
                WorkloadSource::Phased {
                    address_space: a,
                    reference_bytes_per_s: r,
                    ..
                },
            ) = (old.source, &mut e.workload.source)
            {
                *a = address_space;
                *r = reference_bytes_per_s;
            }
        }
        if let Some(v) = get("workload.address_space") {
            let n: u64 = num("workload.address_space", v)?;
            if let WorkloadSource::Phased { address_space, .. } = &mut e.workload.source {
                *address_space = n;
            }
        }
        if let Some(v) = get("workload.reference_bytes_per_s") {
            let r: f64 = num("workload.reference_bytes_per_s", v)?;
            if !(r > 0.0) {
                return Err(bad("workload.reference_bytes_per_s", "must be positive"));
            }
            e.workload = e.workload.clone().with_reference(r);
        }
        if let Some(v) = get("workload.total_ops") {
            let n: u64 = num("workload.total_ops", v)?;
            e.workload = e.workload.clone().with_total_ops(n);
        }
        if let Some(v) = get("workload.file") {
            if !v.is_empty() {
                let path = PathBuf::from(v);
                let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                e.workload = WorkloadSpec {
                    name,
                    source: WorkloadSource::File(path),
                };
            }
        }

        let mut t = e.initial;
        if let Some(v) = get("tunables.readahead_pages") {
            t.readahead_pages = num("tunables.readahead_pages", v)?;
        }
        if let Some(v) = get("tunables.queue_depth") {
            t.queue_depth = num("tunables.queue_depth", v)?;
        }
        if let Some(v) = get("tunables.cache_pages") {
            t.cache_pages = num("tunables.cache_pages", v)?;
        }
        t.validate().map_err(|err| ConfigError::Invalid(err.to_string()))?;
        e.initial = t;

        let l = &mut e.loop_cfg;
        if let Some(v) = get("loop.decision_interval_us") {
            l.decision_interval_us = num("loop.decision_interval_us", v)?;
        }
        if let Some(v) = get("loop.reward_lambda") {
            l.reward_lambda = num("loop.reward_lambda", v)?;
        }
        if let Some(v) = get("loop.smoothing_alpha") {
            l.smoothing_alpha = num("loop.smoothing_alpha", v)?;
        }
        if let Some(v) = get("loop.throughput_norm") {
            l.throughput_norm = num("loop.throughput_norm", v)?;
        }
        if let Some(v) = get("loop.latency_norm_us") {
            l.latency_norm_us = num("loop.latency_norm_us", v)?;
        }
        if let Some(v) = get("loop.feedback_enabled") {
            l.feedback_enabled = flag("loop.feedback_enabled", v)?;
        }
        if let Some(v) = get("loop.collector_enabled") {
            l.collector_enabled = flag("loop.collector_enabled", v)?;
        }
        if let Some(v) = get("loop.actuation") {
            l.actuation = match v {
                "direct" => Actuation::Direct,
                "smoothed" => Actuation::Smoothed,
                _ => return Err(bad("loop.actuation", "expected direct or smoothed")),
            };
        }
        if let Some(v) = get("loop.binning") {
            l.scheme = parse_binning("loop.binning", v)?;
        }
        if let Some(v) = get("loop.bounds") {
            l.bounds = parse_bounds("loop.bounds", v)?;
        }

        let a = &mut e.agent_params;
        if let Some(v) = get("agent.alpha") {
            a.alpha = num("agent.alpha", v)?;
        }
        if let Some(v) = get("agent.gamma") {
            a.gamma = num("agent.gamma", v)?;
        }
        let mut eps = a.epsilon;
        if let Some(v) = get("agent.epsilon_start") {
            eps.start = num("agent.epsilon_start", v)?;
        }
        if let Some(v) = get("agent.epsilon_end") {
            eps.end = num("agent.epsilon_end", v)?;
        }
        if let Some(v) = get("agent.epsilon_decay_steps") {
            eps.decay_steps = num("agent.epsilon_decay_steps", v)?;
        }
        a.epsilon = eps;
        if let Some(v) = get("agent.replay_capacity") {
            a.replay_capacity = num("agent.replay_capacity", v)?;
        }
        if let Some(v) = get("agent.batch_size") {
            a.batch_size = num("agent.batch_size", v)?;
        }
        if let Some(v) = get("agent.target_sync_interval") {
            a.target_sync_interval = num("agent.target_sync_interval", v)?;
        }
        if let Some(v) = get("agent.learning_rate") {
            a.learning_rate = num("agent.learning_rate", v)?;
        }
        if let Some(v) = get("agent.hidden") {
            a.hidden = list("agent.hidden", v)?;
        }

        if let Some(v) = get("harness.objective_weights") {
            e.objective_weights = list("harness.objective_weights", v)?;
        }
        if let Some(v) = get("harness.gain_beta") {
            e.gain_beta = num("harness.gain_beta", v)?;
        }
        if let Some(v) = get("harness.gamma_adj") {
            e.gamma_adj = num("harness.gamma_adj", v)?;
        }
        if let Some(v) = get("harness.wall_clock") {
            e.wall_clock = flag("harness.wall_clock", v)?;
        }
        if let Some(v) = get("harness.depths") {
            c.depths = list("harness.depths", v)?;
        }
        if let Some(v) = get("harness.format") {
            c.format = v.parse().map_err(|r: String| bad("harness.format", r))?;
        }

        c.validate()?;
        Ok(c)
    }

    /// Checks everything that can be checked without running.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let e = &self.experiment;
        e.validate().map_err(|err| ConfigError::Invalid(err.to_string()))?;
        let p = &e.agent_params;
        let params = crate::agent::AgentParams { seed: 0, ..p.clone() };
        match e.agent {
            AgentKind::Tabular => params.tabular(e.loop_cfg.scheme.state_count()).map(drop),
            AgentKind::Dqn => params.dqn().map(drop),
            AgentKind::None => Ok(()),
        }
        .map_err(|err| ConfigError::Invalid(format!("agent: {err}")))?;
        if self.depths.iter().any(|&d| d < 2) {
            return Err(ConfigError::Invalid("depths must be at least 2".into()));
        }
        Ok(())
    }

    /// Every key with its current value; parsing the result gives back `self`.
    pub fn render(&self) -> String {
        let e = &self.experiment;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("experiment.name", e.name.clone());
        kv("experiment.agent", e.agent.to_string());
        kv(
            "experiment.baseline",
            match e.baseline {
                BaselineKind::Static => "static",
                BaselineKind::Heuristic => "heuristic",
            }
            .into(),
        );
        kv("experiment.seeds", join(&e.seeds));
        kv("experiment.train_episodes", e.train_episodes.to_string());
        kv("experiment.eval_episodes", e.eval_episodes.to_string());
        kv(
            "experiment.execution",
            match e.execution {
                Execution::Parallel => "parallel",
                Execution::Sequential => "sequential",
            }
            .into(),
        );
        kv("device.preset", e.device.to_string());
        match &e.workload.source {
            WorkloadSource::Phased {
                phases,
                address_space,
                reference_bytes_per_s,
            } => {
                kv("workload.preset", e.workload.name.clone());
                kv(
                    "workload.phases",
                    phases.iter().map(PhaseTemplate::render).collect::<Vec<_>>().join("; "),
                );
                kv("workload.address_space", address_space.to_string());
                kv("workload.reference_bytes_per_s", reference_bytes_per_s.to_string());
            }
            WorkloadSource::File(path) => kv("workload.file", path.display().to_string()),
        }
        kv("tunables.readahead_pages", e.initial.readahead_pages.to_string());
        kv("tunables.queue_depth", e.initial.queue_depth.to_string());
        kv("tunables.cache_pages", e.initial.cache_pages.to_string());
        let l = &e.loop_cfg;
        kv("loop.decision_interval_us", l.decision_interval_us.to_string());
        kv("loop.reward_lambda", l.reward_lambda.to_string());
        kv("loop.smoothing_alpha", l.smoothing_alpha.to_string());
        kv("loop.throughput_norm", l.throughput_norm.to_string());
        kv("loop.latency_norm_us", l.latency_norm_us.to_string());
        kv("loop.feedback_enabled", l.feedback_enabled.to_string());
        kv("loop.collector_enabled", l.collector_enabled.to_string());
        kv(
            "loop.actuation",
            match l.actuation {
                Actuation::Direct => "direct",
                Actuation::Smoothed => "smoothed",
            }
            .into(),
        );
        kv("loop.binning", render_binning(&l.scheme));
        kv("loop.bounds", render_bounds(&l.bounds));
        let a = &e.agent_params;
        kv("agent.alpha", a.alpha.to_string());
        kv("agent.gamma", a.gamma.to_string());
        kv("agent.epsilon_start", a.epsilon.start.to_string());
        kv("agent.epsilon_end", a.epsilon.end.to_string());
        kv("agent.epsilon_decay_steps", a.epsilon.decay_steps.to_string());
        kv("agent.replay_capacity", a.replay_capacity.to_string());
        kv("agent.batch_size", a.batch_size.to_string());
        kv("agent.target_sync_interval", a.target_sync_interval.to_string());
        kv("agent.learning_rate", a.learning_rate.to_string());
        kv("agent.hidden", join(&a.hidden));
        kv("harness.objective_weights", join(&e.objective_weights));
        kv("harness.gain_beta", e.gain_beta.to_string());
        kv("harness.gamma_adj", e.gamma_adj.to_string());
        kv("harness.wall_clock", e.wall_clock.to_string());
        kv("harness.depths", join(&self.depths));
        kv("harness.format", self.format.to_string());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_render_roundtrips() {
        let c = Config::default();
        let text = c.render();
        for k in KEYS.iter().filter(|k| **k != "workload.file" && **k != "workload.total_ops") {
            assert!(text.contains(&format!("{k} = ")), "missing {k}");
        }
        assert_eq!(Config::parse(&text).unwrap(), c);
    }

    #[test]
    fn overrides_apply() {
        let c = Config::parse(
            "# tuned\nexperiment.agent = dqn\ntunables.queue_depth = 8\nloop.actuation = smoothed\nagent.hidden = 16,16\n",
        )
        .unwrap();
        assert_eq!(c.experiment.agent, AgentKind::Dqn);
        assert_eq!(c.experiment.initial.queue_depth, 8);
        assert_eq!(c.experiment.loop_cfg.actuation, Actuation::Smoothed);
        assert_eq!(c.experiment.agent_params.hidden, vec![16, 16]);
    }

    #[test]
    fn errors() {
        assert_eq!(Config::parse("nonsense").unwrap_err(), ConfigError::Syntax { line: 1 });
        assert_eq!(
            Config::parse("x.y = 1").unwrap_err(),
            ConfigError::UnknownKey("x.y".into())
        );
        assert!(matches!(
            Config::parse("tunables.queue_depth = 3").unwrap_err(),
            ConfigError::Invalid(_)
        ));
        assert!(matches!(
            Config::parse("experiment.agent = genius").unwrap_err(),
            ConfigError::BadValue { .. }
        ));
        assert!(matches!(
            Config::parse("agent.alpha = 0").unwrap_err(),
            ConfigError::Invalid(_)
        ));
        assert!(matches!(
            Config::parse("experiment.seeds = ").unwrap_err(),
            ConfigError::Invalid(_)
        ));
    }

    #[test]
    fn custom_phases_keep_reference() {
        let c = Config::parse(
            "workload.reference_bytes_per_s = 5e6\nworkload.phases = rand,4096,1,0.5,100\n",
        )
        .unwrap();
        let WorkloadSource::Phased {
            reference_bytes_per_s,
            phases,
            ..
        } = &c.experiment.workload.source
        else {
            panic!()
        };
        assert_eq!(*reference_bytes_per_s, 5e6);
        assert_eq!(phases.len(), 1);
    }
}
