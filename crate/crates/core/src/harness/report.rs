use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::{AblationReport, Report};

pub const SUMMARY_HEADER: &str =
    "experiment,workload,device,policy,throughput_ratio,latency_ratio,gain,objective,c_model,agent_bytes,runtime_ms";

pub const METRICS_HEADER: &str = "experiment,workload,device,policy,seed,interval,iops,mean_lat_us,p99_lat_us,hit_rate,utilization,reward,readahead,queue_depth,cache_pages";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    /// Summary table, one row per policy.
    Csv,
    #[default]
    Text,
    /// Gnuplot-style blocks: one throughput series per policy and seed.
    PlotData,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            "plotdata" => Ok(ReportFormat::PlotData),
            other => Err(format!("unknown report format '{other}'")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
            ReportFormat::PlotData => "plotdata",
        })
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => summary_csv(report),
        ReportFormat::Text => text(report),
        ReportFormat::PlotData => plot_data(report),
    }
}

fn summary_csv(report: &Report) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{},{},{:.3}",
            field(&report.experiment),
            field(&r.workload),
            field(&r.device),
            field(&r.policy),
            r.throughput_ratio,
            r.latency_ratio,
            // adding +0.0 turns a negative zero into a positive one
            r.gain + 0.0,
            r.objective + 0.0,
            r.c_model.map(|c| c.to_string()).unwrap_or_default(),
            r.agent_bytes,
            r.runtime_ms
        );
    }
    out
}

/// Per-interval metrics of every evaluation episode; interval numbers run on
/// across a seed's episodes.
pub fn metrics_csv(report: &Report) -> String {
    let mut out = format!("{METRICS_HEADER}\n");
    for r in &report.rows {
        for s in &r.seeds {
            let mut interval = 0u64;
            for ep in &s.episodes {
                for rec in &ep.records {
                    let m = &rec.metrics;
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{:.3},{},{},{},{:.6},{:.6},{},{},{}",
                        field(&report.experiment),
                        field(&r.workload),
                        field(&r.device),
                        field(&r.policy),
                        s.seed,
                        interval,
                        m.iops,
                        opt(m.mean_latency_us),
                        opt(m.p99_latency_us),
                        opt(m.cache_hit_rate),
                        m.utilization,
                        rec.reward,
                        rec.config.readahead_pages,
                        rec.config.queue_depth,
                        rec.config.cache_pages
                    );
                    interval += 1;
                }
            }
        }
    }
    out
}

fn text(report: &Report) -> String {
    let mut out = format!("experiment {}\n", report.experiment);
    let _ = writeln!(
        out,
        "{:<10} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} {:>10} {:>10}",
        "policy", "tput_x", "lat_x", "gain", "objective", "c_model", "bytes", "perf_tot", "util_eff"
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<10} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>8} {:>8} {:>10.4} {:>10}",
            r.policy,
            r.throughput_ratio,
            r.latency_ratio,
            r.gain + 0.0,
            r.objective + 0.0,
            r.c_model.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            r.agent_bytes,
            r.diagnostics.perf_total,
            r.diagnostics
                .util_eff
                .map(|u| format!("{u:.4}"))
                .unwrap_or_else(|| "-".into()),
        );
    }
    for r in &report.rows {
        let ratios: Vec<String> = r.seeds.iter().map(|s| format!("{}:{:.4}", s.seed, s.throughput_ratio())).collect();
        let _ = writeln!(out, "{} per-seed throughput ratio: {}", r.policy, ratios.join(" "));
        if r.runtime_ms > 0.0 {
            let _ = writeln!(
                out,
                "{} runtime {:.1} ms, decision overhead {:.3e}",
                r.policy, r.runtime_ms, r.diagnostics.overhead_proxy
            );
        }
    }
    out
}

fn plot_data(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.rows {
        for s in &r.seeds {
            let _ = writeln!(
                out,
                "# experiment={} workload={} device={} policy={} seed={} x=interval y=throughput_mb_s",
                report.experiment, r.workload, r.device, r.policy, s.seed
            );
            let mut x = 0u64;
            for ep in &s.episodes {
                for y in ep.throughput_series() {
                    let _ = writeln!(out, "{x} {:.6}", y / 1e6);
                    x += 1;
                }
            }
            out.push_str("\n\n");
        }
    }
    for (seed, returns) in &report.training_returns {
        if returns.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            "# experiment={} seed={} x=episode y=discounted_return",
            report.experiment, seed
        );
        for (i, g) in returns.iter().enumerate() {
            let _ = writeln!(out, "{i} {g:.6}");
        }
        out.push_str("\n\n");
    }
    out
}

pub fn emit_ablation(report: &AblationReport) -> String {
    let mut out = format!(
        "ablation {} workload={} device={} seeds={:?}\n",
        report.experiment, report.workload, report.device, report.seeds
    );
    let _ = writeln!(
        out,
        "{:<14} {:>9} {:>10} {:>12} {:>12}  per-seed iops",
        "variant", "feedback", "collector", "delta_pct", "gain_full"
    );
    for v in &report.variants {
        let iops: Vec<String> = v.seed_iops().iter().map(|x| format!("{x:.1}")).collect();
        let _ = writeln!(
            out,
            "{:<14} {:>9} {:>10} {:>12.3} {:>12.4}  {}",
            v.name,
            v.feedback_enabled,
            v.collector_enabled,
            v.throughput_delta_pct,
            v.gain_vs_full,
            iops.join(" ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_names_roundtrip() {
        for f in [ReportFormat::Csv, ReportFormat::Text, ReportFormat::PlotData] {
            assert_eq!(f.to_string().parse::<ReportFormat>().unwrap(), f);
        }
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn field_quoting() {
        assert_eq!(field("plain"), "plain");
        assert_eq!(field("a,b"), "\"a,b\"");
        assert_eq!(field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
