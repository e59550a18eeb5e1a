//! Experiment orchestration: tuned runs versus baselines on matched traces,
//! component ablations, network-depth sweeps and report rendering.

mod config;
mod report;
mod workload;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

pub use config::{Config, ConfigError};
pub use report::{emit_report, emit_ablation, metrics_csv, ReportFormat, METRICS_HEADER, SUMMARY_HEADER};
pub use workload::{PhaseTemplate, WorkloadSource, WorkloadSpec, DEFAULT_ADDRESS_SPACE};

use crate::agent::{save_agent, Agent, AgentError, AgentParams};
use crate::control::{
    gain, perf_total, run_episode, util_eff, ControlError, EpisodeResult, HeuristicTuner, LoopConfig,
    NoOpTuner, Tuner,
};
use crate::par::{self, Execution};
use crate::simenv::{DevicePreset, TunableConfig};
use crate::trace::{Trace, TraceError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("invalid experiment: {0}")]
    Spec(String),
    #[error("trace: {0}")]
    Trace(#[from] TraceError),
    #[error("control: {0}")]
    Control(#[from] ControlError),
    #[error("agent: {0}")]
    Agent(#[from] AgentError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Σ w_i · x_i.
pub fn weighted_objective(weights: &[f64], contributions: &[f64]) -> Result<f64, HarnessError> {
    if weights.len() != contributions.len() {
        return Err(HarnessError::Spec(format!(
            "objective weights ({}) and contributions ({}) differ in length",
            weights.len(),
            contributions.len()
        )));
    }
    Ok(weights.iter().zip(contributions).map(|(w, x)| w * x).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentKind {
    Tabular,
    Dqn,
    None,
}

impl FromStr for AgentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tabular" => Ok(AgentKind::Tabular),
            "dqn" => Ok(AgentKind::Dqn),
            "none" => Ok(AgentKind::None),
            other => Err(format!("unknown agent kind '{other}'")),
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgentKind::Tabular => "tabular",
            AgentKind::Dqn => "dqn",
            AgentKind::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Static,
    Heuristic,
}

impl FromStr for BaselineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(BaselineKind::Static),
            "heuristic" => Ok(BaselineKind::Heuristic),
            other => Err(format!("unknown baseline kind '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub device: DevicePreset,
    pub workload: WorkloadSpec,
    pub initial: TunableConfig,
    pub agent: AgentKind,
    pub agent_params: AgentParams,
    pub baseline: BaselineKind,
    pub loop_cfg: LoopConfig,
    pub seeds: Vec<u64>,
    pub train_episodes: usize,
    pub eval_episodes: usize,
    /// Weights over (normalized throughput, normalized p99, hit rate, utilization).
    pub objective_weights: Vec<f64>,
    pub gain_beta: f64,
    pub gamma_adj: f64,
    /// Record wall-clock timings; off keeps reports byte-for-byte reproducible.
    pub wall_clock: bool,
    pub execution: Execution,
}

impl ExperimentSpec {
    pub fn new(name: &str, device: DevicePreset, workload: WorkloadSpec) -> Self {
        ExperimentSpec {
            name: name.to_string(),
            device,
            workload,
            initial: TunableConfig::default(),
            agent: AgentKind::Tabular,
            agent_params: AgentParams::default(),
            baseline: BaselineKind::Static,
            loop_cfg: LoopConfig::default(),
            seeds: vec![1, 2, 3, 4, 5],
            train_episodes: 30,
            eval_episodes: 1,
            objective_weights: vec![1.0, -0.5, 0.0, 0.0],
            gain_beta: 1.0,
            gamma_adj: 0.01,
            wall_clock: false,
            execution: Execution::Parallel,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.seeds.is_empty() {
            return Err(HarnessError::Spec("seed list is empty".into()));
        }
        if self.eval_episodes == 0 {
            return Err(HarnessError::Spec("eval_episodes must be at least 1".into()));
        }
        if self.objective_weights.len() != 4 {
            return Err(HarnessError::Spec("objective weights need exactly 4 entries".into()));
        }
        self.initial.validate().map_err(ControlError::from)?;
        self.loop_cfg.validate()?;
        Ok(())
    }

    fn policy_name(&self) -> String {
        self.agent.to_string()
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the training trace for `episode` under experiment seed `seed`.
pub fn train_trace_seed(seed: u64, episode: usize) -> u64 {
    splitmix(seed.wrapping_mul(0x1_0000).wrapping_add(episode as u64 + 1))
}

/// Seed of evaluation trace `k`; `k = 0` is the experiment seed itself.
pub fn eval_trace_seed(seed: u64, k: usize) -> u64 {
    if k == 0 {
        seed
    } else {
        splitmix(seed ^ (0xe7a1 + k as u64))
    }
}

/// Fresh agent of the experiment's kind, or `None` when it has no agent.
pub fn build_agent(spec: &ExperimentSpec, seed: u64) -> Result<Option<Agent>, HarnessError> {
    let params = AgentParams {
        seed,
        ..spec.agent_params.clone()
    };
    Ok(match spec.agent {
        AgentKind::Tabular => Some(params.tabular(spec.loop_cfg.scheme.state_count())?),
        AgentKind::Dqn => Some(params.dqn()?),
        AgentKind::None => None,
    })
}

/// Runs `tuner` once over `trace` with the experiment's device and loop settings.
pub fn run_policy(
    spec: &ExperimentSpec,
    trace: &Trace,
    tuner: &mut dyn Tuner,
    loop_cfg: &LoopConfig,
    seed: u64,
) -> Result<EpisodeResult, HarnessError> {
    Ok(run_episode(spec.device.profile(), spec.initial, trace, tuner, loop_cfg, seed)?)
}

/// Episode with the initial configuration held fixed.
pub fn baseline_static(spec: &ExperimentSpec, trace: &Trace, seed: u64) -> Result<EpisodeResult, HarnessError> {
    run_policy(spec, trace, &mut NoOpTuner, &spec.loop_cfg, seed)
}

/// Episode under the sequentiality-driven readahead rule.
pub fn baseline_heuristic(spec: &ExperimentSpec, trace: &Trace, seed: u64) -> Result<EpisodeResult, HarnessError> {
    run_policy(spec, trace, &mut HeuristicTuner::default(), &spec.loop_cfg, seed)
}

/// Trains `agent` for `spec.train_episodes` fresh-simulator episodes and
/// returns the per-episode results.
pub fn train_agent(
    spec: &ExperimentSpec,
    agent: &mut Agent,
    loop_cfg: &LoopConfig,
    seed: u64,
) -> Result<Vec<EpisodeResult>, HarnessError> {
    agent.set_exploration(true);
    let fixed = match spec.workload.source {
        WorkloadSource::File(_) => Some(spec.workload.generate(seed)?),
        WorkloadSource::Phased { .. } => None,
    };
    let mut out = Vec::with_capacity(spec.train_episodes);
    for e in 0..spec.train_episodes {
        let trace = match &fixed {
            Some(t) => t.clone(),
            None => spec.workload.generate(train_trace_seed(seed, e))?,
        };
        out.push(run_policy(spec, &trace, agent, loop_cfg, seed)?);
    }
    Ok(out)
}

/// Everything produced for one seed.
#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    /// Evaluation episodes per policy, policy names in report order.
    pub policies: Vec<(String, Vec<EpisodeResult>)>,
    pub training: Vec<EpisodeResult>,
    pub agent_bytes: usize,
    pub c_model: Option<u64>,
    pub runtime_ms: f64,
}

fn eval_traces(spec: &ExperimentSpec, seed: u64) -> Result<Vec<Trace>, HarnessError> {
    (0..spec.eval_episodes)
        .map(|k| Ok(spec.workload.generate(eval_trace_seed(seed, k))?))
        .collect()
}

fn run_seed(
    spec: &ExperimentSpec,
    loop_cfg: &LoopConfig,
    seed: u64,
    pretrained: Option<&Agent>,
) -> Result<SeedRun, HarnessError> {
    let traces = eval_traces(spec, seed)?;
    let mut policies = Vec::new();
    let statics = traces
        .iter()
        .map(|t| baseline_static(spec, t, seed))
        .collect::<Result<Vec<_>, _>>()?;
    policies.push(("static".to_string(), statics));
    if spec.baseline == BaselineKind::Heuristic {
        let h = traces
            .iter()
            .map(|t| baseline_heuristic(spec, t, seed))
            .collect::<Result<Vec<_>, _>>()?;
        policies.push(("heuristic".to_string(), h));
    }
    let started = Instant::now();
    let mut training = Vec::new();
    let mut agent_bytes = 0;
    let mut c_model = None;
    let agent = match pretrained {
        Some(a) => Some(a.clone()),
        None => build_agent(spec, seed)?,
    };
    let evals = match agent {
        Some(mut agent) => {
            if pretrained.is_none() {
                training = train_agent(spec, &mut agent, loop_cfg, seed)?;
            }
            agent.set_exploration(false);
            let evals = traces
                .iter()
                .map(|t| run_policy(spec, t, &mut agent, loop_cfg, seed))
                .collect::<Result<Vec<_>, _>>()?;
            agent_bytes = save_agent(&agent).len();
            c_model = agent.complexity();
            evals
        }
        None => traces
            .iter()
            .map(|t| run_policy(spec, t, &mut NoOpTuner, loop_cfg, seed))
            .collect::<Result<Vec<_>, _>>()?,
    };
    policies.push((spec.policy_name(), evals));
    let runtime_ms = if spec.wall_clock {
        started.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    Ok(SeedRun {
        seed,
        policies,
        training,
        agent_bytes,
        c_model,
        runtime_ms,
    })
}

fn run_seeds(
    spec: &ExperimentSpec,
    loop_cfg: &LoopConfig,
    pretrained: Option<&Agent>,
) -> Result<Vec<SeedRun>, HarnessError> {
    par::map(spec.execution, &spec.seeds, |&s| run_seed(spec, loop_cfg, s, pretrained))
        .into_iter()
        .collect()
}

/// Comparison of one policy's episode against the matched static episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub throughput_ratio: f64,
    pub latency_ratio: f64,
    pub gain: f64,
    pub objective: f64,
}

/// Gain over the common prefix of two throughput series, in units of the
/// loop's throughput normalizer.
pub fn series_gain(
    policy: &EpisodeResult,
    baseline: &EpisodeResult,
    throughput_norm: f64,
    beta: f64,
) -> Result<f64, HarnessError> {
    let f = policy.throughput_series();
    let b = baseline.throughput_series();
    let n = f.len().min(b.len());
    let norm = |s: &[f64]| s[..n].iter().map(|x| x / throughput_norm).collect::<Vec<_>>();
    Ok(gain(&norm(&f), &norm(&b), beta)?)
}

/// Contributions fed to the weighted objective.
pub fn objective_terms(ep: &EpisodeResult, cfg: &LoopConfig) -> [f64; 4] {
    let t = &ep.totals;
    let utilization = if t.makespan_us > 0.0 {
        (t.busy_us / t.makespan_us).min(1.0)
    } else {
        0.0
    };
    [
        t.bytes_per_s() / cfg.throughput_norm,
        t.p99_latency_us / cfg.latency_norm_us,
        t.hit_rate,
        utilization,
    ]
}

fn pair_stats(spec: &ExperimentSpec, policy: &EpisodeResult, baseline: &EpisodeResult) -> Result<PairStats, HarnessError> {
    let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else { 1.0 };
    Ok(PairStats {
        throughput_ratio: ratio(policy.totals.iops(), baseline.totals.iops()),
        latency_ratio: ratio(policy.totals.mean_latency_us, baseline.totals.mean_latency_us),
        gain: series_gain(policy, baseline, spec.loop_cfg.throughput_norm, spec.gain_beta)?,
        objective: weighted_objective(&spec.objective_weights, &objective_terms(policy, &spec.loop_cfg))?,
    })
}

#[derive(Debug, Clone)]
pub struct SeedRow {
    pub seed: u64,
    pub episodes: Vec<EpisodeResult>,
    /// One entry per evaluation episode, matched against the static baseline.
    pub pairs: Vec<PairStats>,
}

impl SeedRow {
    fn mean(&self, f: impl Fn(&PairStats) -> f64) -> f64 {
        self.pairs.iter().map(f).sum::<f64>() / self.pairs.len() as f64
    }

    pub fn throughput_ratio(&self) -> f64 {
        self.mean(|p| p.throughput_ratio)
    }

    pub fn iops(&self) -> f64 {
        self.episodes.iter().map(|e| e.totals.iops()).sum::<f64>() / self.episodes.len() as f64
    }
}

/// Diagnostic scores computed from a policy's episodes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    pub perf_total: f64,
    pub util_eff: Option<f64>,
    /// Wall-clock decision time over simulated time; zero unless timing is on.
    pub overhead_proxy: f64,
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub workload: String,
    pub device: String,
    pub policy: String,
    pub seeds: Vec<SeedRow>,
    pub throughput_ratio: f64,
    pub latency_ratio: f64,
    pub gain: f64,
    pub objective: f64,
    pub c_model: Option<u64>,
    pub agent_bytes: usize,
    pub runtime_ms: f64,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub experiment: String,
    pub rows: Vec<ReportRow>,
    /// Per seed, the discounted return of each training episode.
    pub training_returns: Vec<(u64, Vec<f64>)>,
}

impl Report {
    pub fn row(&self, policy: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.policy == policy)
    }
}

fn diagnostics(spec: &ExperimentSpec, episodes: &[&EpisodeResult]) -> Diagnostics {
    let mut total = 0.0;
    let mut eff = Vec::new();
    let mut overhead = 0.0;
    for ep in episodes {
        let n = ep.records.len().max(1) as f64;
        let mean = |f: &dyn Fn(&crate::control::IntervalRecord) -> f64| ep.records.iter().map(f).sum::<f64>() / n;
        let c = ep.final_config;
        let intensities = [
            mean(&|r| r.features.sequentiality),
            mean(&|r| r.features.utilization),
            mean(&|r| r.features.read_fraction),
        ];
        let knobs = [
            (c.readahead_pages as f64 + 1.0).log2(),
            (c.queue_depth as f64).log2(),
            (c.cache_pages as f64).log2(),
        ];
        let queues: Vec<f64> = ep.records.iter().map(|r| r.config.queue_depth as f64).collect();
        let p = perf_total(&intensities, &knobs, spec.gamma_adj, &queues).unwrap_or(0.0);
        let disk_mb: Vec<f64> = ep.records.iter().map(|r| r.metrics.bytes_transferred as f64 / 1e6).collect();
        if let Ok(u) = util_eff(p, &disk_mb) {
            eff.push(u);
        }
        total += p;
        if spec.wall_clock && ep.totals.makespan_us > 0.0 {
            overhead += ep.decision_wall_ns as f64 / 1e3 / ep.totals.makespan_us;
        }
    }
    let k = episodes.len().max(1) as f64;
    Diagnostics {
        perf_total: total / k,
        util_eff: (!eff.is_empty()).then(|| eff.iter().sum::<f64>() / eff.len() as f64),
        overhead_proxy: overhead / k,
    }
}

fn assemble(spec: &ExperimentSpec, runs: Vec<SeedRun>) -> Result<Report, HarnessError> {
    let policy_names: Vec<String> = runs[0].policies.iter().map(|(n, _)| n.clone()).collect();
    let mut rows = Vec::new();
    for (pi, name) in policy_names.iter().enumerate() {
        let mut seeds = Vec::new();
        for run in &runs {
            let statics = &run.policies[0].1;
            let episodes = run.policies[pi].1.clone();
            let pairs = episodes
                .iter()
                .zip(statics)
                .map(|(p, b)| pair_stats(spec, p, b))
                .collect::<Result<Vec<_>, _>>()?;
            seeds.push(SeedRow {
                seed: run.seed,
                episodes,
                pairs,
            });
        }
        let k = seeds.len() as f64;
        let avg = |f: &dyn Fn(&PairStats) -> f64| seeds.iter().map(|s| s.mean(f)).sum::<f64>() / k;
        let is_agent = pi == policy_names.len() - 1 && spec.agent != AgentKind::None;
        let all_eps: Vec<&EpisodeResult> = seeds.iter().flat_map(|s| &s.episodes).collect();
        rows.push(ReportRow {
            workload: spec.workload.name.clone(),
            device: spec.device.to_string(),
            policy: name.clone(),
            throughput_ratio: avg(&|p| p.throughput_ratio),
            latency_ratio: avg(&|p| p.latency_ratio),
            gain: avg(&|p| p.gain),
            objective: avg(&|p| p.objective),
            c_model: if is_agent { runs[0].c_model } else { None },
            agent_bytes: if is_agent { runs[0].agent_bytes } else { 0 },
            runtime_ms: if is_agent { runs.iter().map(|r| r.runtime_ms).sum() } else { 0.0 },
            diagnostics: diagnostics(spec, &all_eps),
            seeds,
        });
    }
    let training_returns = runs
        .iter()
        .map(|r| (r.seed, r.training.iter().map(|e| e.discounted_return).collect()))
        .collect();
    Ok(Report {
        experiment: spec.name.clone(),
        rows,
        training_returns,
    })
}

/// Trains, evaluates greedily and compares against matched baselines on
/// identical traces for every seed.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, HarnessError> {
    spec.validate()?;
    let runs = run_seeds(spec, &spec.loop_cfg, None)?;
    assemble(spec, runs)
}

/// Evaluates an already trained agent against the baselines without further
/// training. Learning during evaluation still follows `feedback_enabled`.
pub fn evaluate_agent(spec: &ExperimentSpec, agent: &Agent) -> Result<Report, HarnessError> {
    spec.validate()?;
    let kind = match agent {
        Agent::Tabular(_) => AgentKind::Tabular,
        Agent::Dqn(_) => AgentKind::Dqn,
    };
    let spec = ExperimentSpec {
        agent: kind,
        ..spec.clone()
    };
    let runs = run_seeds(&spec, &spec.loop_cfg, Some(agent))?;
    assemble(&spec, runs)
}

#[derive(Debug, Clone)]
pub struct AblationVariant {
    pub name: &'static str,
    pub feedback_enabled: bool,
    pub collector_enabled: bool,
    /// Evaluation episodes per seed, in seed order.
    pub episodes: Vec<Vec<EpisodeResult>>,
    /// Mean throughput change versus the full variant, in percent.
    pub throughput_delta_pct: f64,
    /// Gain of the full variant over this one.
    pub gain_vs_full: f64,
}

impl AblationVariant {
    pub fn seed_iops(&self) -> Vec<f64> {
        self.episodes
            .iter()
            .map(|eps| eps.iter().map(|e| e.totals.iops()).sum::<f64>() / eps.len() as f64)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AblationReport {
    pub experiment: String,
    pub workload: String,
    pub device: String,
    pub seeds: Vec<u64>,
    pub variants: Vec<AblationVariant>,
    /// Matched static-baseline episodes per seed.
    pub static_baseline: Vec<Vec<EpisodeResult>>,
}

impl AblationReport {
    pub fn variant(&self, name: &str) -> Option<&AblationVariant> {
        self.variants.iter().find(|v| v.name == name)
    }
}

/// Runs the full loop and the three disabled-component variants on identical
/// seeds and workloads.
pub fn run_ablation(spec: &ExperimentSpec) -> Result<AblationReport, HarnessError> {
    spec.validate()?;
    if spec.agent == AgentKind::None {
        return Err(HarnessError::Spec("ablation needs a learning agent".into()));
    }
    let combos = [
        ("full", true, true),
        ("feedback-off", false, true),
        ("collector-off", true, false),
        ("both-off", false, false),
    ];
    let mut runs = Vec::new();
    for (_, feedback, collector) in combos {
        let cfg = LoopConfig {
            feedback_enabled: feedback,
            collector_enabled: collector,
            ..spec.loop_cfg.clone()
        };
        runs.push(run_seeds(spec, &cfg, None)?);
    }
    let agent_eps = |rs: &Vec<SeedRun>| -> Vec<Vec<EpisodeResult>> {
        rs.iter().map(|r| r.policies.last().expect("agent policy").1.clone()).collect()
    };
    let full = agent_eps(&runs[0]);
    let mut variants = Vec::new();
    for ((name, feedback, collector), rs) in combos.iter().zip(&runs) {
        let eps = agent_eps(rs);
        let mut delta = 0.0;
        let mut g = 0.0;
        let mut count = 0.0;
        for (full_seed, var_seed) in full.iter().zip(&eps) {
            for (f, v) in full_seed.iter().zip(var_seed) {
                delta += 100.0 * (v.totals.iops() / f.totals.iops() - 1.0);
                g += series_gain(f, v, spec.loop_cfg.throughput_norm, spec.gain_beta)?;
                count += 1.0;
            }
        }
        variants.push(AblationVariant {
            name,
            feedback_enabled: *feedback,
            collector_enabled: *collector,
            episodes: eps,
            throughput_delta_pct: delta / count,
            gain_vs_full: g / count,
        });
    }
    Ok(AblationReport {
        experiment: spec.name.clone(),
        workload: spec.workload.name.clone(),
        device: spec.device.to_string(),
        seeds: spec.seeds.clone(),
        static_baseline: runs[0].iter().map(|r| r.policies[0].1.clone()).collect(),
        variants,
    })
}

#[derive(Debug, Clone)]
pub struct DepthResult {
    /// Weight layers in the network.
    pub depth: usize,
    pub layer_sizes: Vec<usize>,
    pub c_model: u64,
    pub param_count: usize,
    pub report: Report,
}

/// Repeats the experiment with DQN agents of each depth; hidden layers all
/// have the width of the experiment's first hidden layer.
pub fn run_depth_ablation(spec: &ExperimentSpec, depths: &[usize]) -> Result<Vec<DepthResult>, HarnessError> {
    let width = spec.agent_params.hidden.first().copied().unwrap_or(32);
    let mut out = Vec::new();
    for &depth in depths {
        if depth < 2 {
            return Err(HarnessError::Spec("DQN depth must be at least 2 weight layers".into()));
        }
        let mut s = spec.clone();
        s.agent = AgentKind::Dqn;
        s.agent_params.hidden = vec![width; depth - 1];
        let report = run_experiment(&s)?;
        let probe = AgentParams {
            hidden: s.agent_params.hidden.clone(),
            ..AgentParams::default()
        }
        .dqn()?;
        let Agent::Dqn(net) = &probe else { unreachable!("dqn() builds a DQN") };
        out.push(DepthResult {
            depth,
            layer_sizes: net.online.layer_sizes().to_vec(),
            c_model: report.row("dqn").and_then(|r| r.c_model).unwrap_or(0),
            param_count: net.online.param_count(),
            report,
        });
    }
    Ok(out)
}
