use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rlstorage::agent::{load_agent_with, save_agent, AgentParams};
use rlstorage::harness::{
    build_agent, emit_ablation, emit_report, evaluate_agent, metrics_csv, run_ablation, run_depth_ablation,
    run_experiment, train_agent, AgentKind, Config, HarnessError, Report, ReportFormat,
};
use rlstorage::trace::write_trace;

#[derive(Parser)]
#[command(name = "rlstorage", version, about = "Simulated storage tuning with reinforcement learning")]
struct Cli {
    /// Run a single seed instead of the configured seed list.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Experiment configuration file (`section.key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the static baseline only and write its metrics and traces.
    Simulate,
    /// Train one agent per seed and save it.
    Train,
    /// Train and evaluate against the baselines, or evaluate a saved agent.
    Evaluate {
        /// Agent file written by `train`.
        #[arg(long)]
        agent: Option<PathBuf>,
    },
    /// Compare the full loop with feedback and collector disabled.
    Ablate {
        /// Also sweep DQN depths from the config.
        #[arg(long)]
        depths: bool,
    },
    /// Run the experiment and print the report.
    Report {
        /// csv, text or plotdata; defaults to the config's format.
        #[arg(long)]
        format: Option<ReportFormat>,
    },
    /// Print every configuration key with its effective value.
    Config,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(_) | HarnessError::Spec(_) => Failure::Config(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn io(e: std::io::Error, path: &Path) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| io(e, dir))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io(e, &path))?;
    Ok(path)
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = match &cli.config {
        Some(path) => Config::from_file(path).map_err(|e| Failure::Config(e.to_string()))?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.experiment.seeds = vec![seed];
    }
    Ok(config)
}

fn write_report(out: &Path, report: &Report) -> Result<(), Failure> {
    write(out, "summary.csv", emit_report(report, ReportFormat::Csv))?;
    write(out, "metrics.csv", metrics_csv(report))?;
    write(out, "plot.dat", emit_report(report, ReportFormat::PlotData))?;
    let text = emit_report(report, ReportFormat::Text);
    write(out, "report.txt", &text)?;
    print!("{text}");
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let config = load_config(cli)?;
    let spec = &config.experiment;
    match &cli.command {
        Command::Config => print!("{}", config.render()),
        Command::Simulate => {
            let mut baseline = spec.clone();
            baseline.agent = AgentKind::None;
            let mut report = run_experiment(&baseline)?;
            report.rows.retain(|r| r.policy == "static");
            for &seed in &spec.seeds {
                let trace = spec.workload.generate(seed).map_err(HarnessError::from)?;
                let mut buf = Vec::new();
                write_trace(&trace, &mut buf).map_err(HarnessError::from)?;
                write(&cli.out, &format!("trace-{seed}.txt"), buf)?;
            }
            write_report(&cli.out, &report)?;
        }
        Command::Train => {
            if spec.agent == AgentKind::None {
                return Err(Failure::Config("experiment.agent is none; nothing to train".into()));
            }
            for &seed in &spec.seeds {
                let mut agent = build_agent(spec, seed)?.expect("agent kind checked above");
                let episodes = train_agent(spec, &mut agent, &spec.loop_cfg, seed)?;
                let path = write(&cli.out, &format!("agent-{seed}.bin"), save_agent(&agent))?;
                let last = episodes.last().map_or(0.0, |e| e.discounted_return);
                println!(
                    "seed {seed}: {} episodes, final return {last:.4}, saved {}",
                    episodes.len(),
                    path.display()
                );
            }
        }
        Command::Evaluate { agent } => {
            let report = match agent {
                Some(path) => {
                    let bytes = fs::read(path).map_err(|e| io(e, path))?;
                    let params = AgentParams {
                        seed: spec.seeds[0],
                        ..spec.agent_params.clone()
                    };
                    let agent = load_agent_with(&bytes, &params)
                        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
                    evaluate_agent(spec, &agent)?
                }
                None => run_experiment(spec)?,
            };
            write_report(&cli.out, &report)?;
        }
        Command::Ablate { depths } => {
            let report = run_ablation(spec)?;
            let mut text = emit_ablation(&report);
            if *depths {
                for r in run_depth_ablation(spec, &config.depths)? {
                    let ratio = r.report.row("dqn").map_or(f64::NAN, |row| row.throughput_ratio);
                    text.push_str(&format!(
                        "depth {} layers {:?} c_model {} params {} throughput_ratio {ratio:.4}\n",
                        r.depth, r.layer_sizes, r.c_model, r.param_count
                    ));
                }
            }
            write(&cli.out, "ablation.txt", &text)?;
            print!("{text}");
        }
        Command::Report { format } => {
            let report = run_experiment(spec)?;
            print!("{}", emit_report(&report, format.unwrap_or(config.format)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
