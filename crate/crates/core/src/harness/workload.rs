use std::path::PathBuf;

use crate::trace::{gen_phased, read_trace, Pattern, PhaseSpec, PhasedParams, Trace, TraceError};

pub const DEFAULT_ADDRESS_SPACE: u64 = 4 << 30;
pub const DEFAULT_REFERENCE_BYTES_PER_S: f64 = 100e6;

/// One phase described by its request count instead of its duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTemplate {
    pub pattern: Pattern,
    pub block_size_bytes: u64,
    pub read_fraction: f64,
    pub target_utilization: f64,
    pub ops: u64,
}

impl PhaseTemplate {
    pub fn to_phase(&self, reference_bytes_per_s: f64) -> PhaseSpec {
        let mut p = PhaseSpec {
            duration_us: 0,
            pattern: self.pattern,
            block_size_bytes: self.block_size_bytes,
            read_fraction: self.read_fraction,
            target_utilization: self.target_utilization,
        };
        let gap = p.inter_arrival_us(reference_bytes_per_s);
        // smallest duration that admits exactly `ops` arrivals
        p.duration_us = ((self.ops.saturating_sub(1)) as f64 * gap).floor() as u64 + 1;
        p
    }

    /// `pattern,block_bytes,read_fraction,utilization,ops` where pattern is
    /// `seq`, `rand` or `mixed:<sequential_fraction>`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let f: Vec<&str> = text.split(',').map(str::trim).collect();
        if f.len() != 5 {
            return Err(format!("phase '{text}' needs 5 comma-separated fields"));
        }
        let pattern = match f[0] {
            "seq" => Pattern::Sequential,
            "rand" => Pattern::Random,
            other => match other.strip_prefix("mixed:") {
                Some(x) => Pattern::Mixed {
                    sequential_fraction: x.parse().map_err(|_| format!("bad fraction in '{other}'"))?,
                },
                None => return Err(format!("unknown pattern '{other}'")),
            },
        };
        let num = |i: usize| f[i].parse::<f64>().map_err(|_| format!("bad number '{}'", f[i]));
        Ok(PhaseTemplate {
            pattern,
            block_size_bytes: f[1].parse().map_err(|_| format!("bad block size '{}'", f[1]))?,
            read_fraction: num(2)?,
            target_utilization: num(3)?,
            ops: f[4].parse().map_err(|_| format!("bad op count '{}'", f[4]))?,
        })
    }

    pub fn render(&self) -> String {
        let pattern = match self.pattern {
            Pattern::Sequential => "seq".to_string(),
            Pattern::Random => "rand".to_string(),
            Pattern::Mixed { sequential_fraction } => format!("mixed:{sequential_fraction}"),
        };
        format!(
            "{pattern},{},{},{},{}",
            self.block_size_bytes, self.read_fraction, self.target_utilization, self.ops
        )
    }
}

/// Where an experiment's requests come from.
#[derive(Debug, Clone, PartialEq)]
pub enum WorkloadSource {
    Phased {
        phases: Vec<PhaseTemplate>,
        address_space: u64,
        reference_bytes_per_s: f64,
    },
    /// A recorded trace, replayed unchanged every episode.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadSpec {
    pub name: String,
    pub source: WorkloadSource,
}

impl WorkloadSpec {
    pub fn phased(name: &str, phases: Vec<PhaseTemplate>) -> Self {
        WorkloadSpec {
            name: name.to_string(),
            source: WorkloadSource::Phased {
                phases,
                address_space: DEFAULT_ADDRESS_SPACE,
                reference_bytes_per_s: DEFAULT_REFERENCE_BYTES_PER_S,
            },
        }
    }

    /// Named preset, if one exists.
    pub fn preset(name: &str) -> Option<Self> {
        let t = |pattern, block, read, util, ops| PhaseTemplate {
            pattern,
            block_size_bytes: block,
            read_fraction: read,
            target_utilization: util,
            ops,
        };
        let phases = match name {
            "kv-random" => vec![t(Pattern::Random, 4096, 0.8, 0.5, 10_000)],
            "oltp-mixed" => {
                let mixed = Pattern::Mixed {
                    sequential_fraction: 0.5,
                };
                vec![
                    t(mixed, 8192, 0.7, 0.3, 2500),
                    t(mixed, 65536, 0.7, 0.9, 2500),
                    t(mixed, 16384, 0.7, 0.9, 2500),
                    t(mixed, 32768, 0.7, 0.3, 2500),
                ]
            }
            "scan-sequential" => vec![t(Pattern::Sequential, 131_072, 1.0, 0.5, 10_000)],
            "seq-to-random" => vec![
                t(Pattern::Sequential, 131_072, 1.0, 0.9, 5000),
                t(Pattern::Random, 16384, 0.8, 0.9, 5000),
            ],
            _ => return None,
        };
        Some(Self::phased(name, phases))
    }

    pub const PRESETS: [&'static str; 4] = ["kv-random", "oltp-mixed", "scan-sequential", "seq-to-random"];

    pub fn with_reference(mut self, bytes_per_s: f64) -> Self {
        if let WorkloadSource::Phased {
            reference_bytes_per_s,
            ..
        } = &mut self.source
        {
            *reference_bytes_per_s = bytes_per_s;
        }
        self
    }

    /// Scales every phase's request count so the total is about `ops`.
    pub fn with_total_ops(mut self, ops: u64) -> Self {
        if let WorkloadSource::Phased { phases, .. } = &mut self.source {
            let total: u64 = phases.iter().map(|p| p.ops).sum();
            if total > 0 {
                for p in phases.iter_mut() {
                    p.ops = (p.ops as f64 * ops as f64 / total as f64).round().max(1.0) as u64;
                }
            }
        }
        self
    }

    pub fn generate(&self, seed: u64) -> Result<Trace, TraceError> {
        match &self.source {
            WorkloadSource::Phased {
                phases,
                address_space,
                reference_bytes_per_s,
            } => {
                let specs: Vec<PhaseSpec> = phases.iter().map(|p| p.to_phase(*reference_bytes_per_s)).collect();
                let mut trace = gen_phased(
                    &specs,
                    PhasedParams {
                        address_space: *address_space,
                        reference_bytes_per_s: *reference_bytes_per_s,
                    },
                    seed,
                )?;
                trace.header.description = self.name.clone();
                Ok(trace)
            }
            WorkloadSource::File(path) => {
                let file = std::fs::File::open(path)?;
                read_trace(std::io::BufReader::new(file))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_have_ten_thousand_ops() {
        for name in WorkloadSpec::PRESETS {
            let t = WorkloadSpec::preset(name).unwrap().generate(1).unwrap();
            assert_eq!(t.len(), 10_000, "{name}");
            t.validate().unwrap();
        }
        assert!(WorkloadSpec::preset("nope").is_none());
    }

    #[test]
    fn phase_text_roundtrip() {
        let p = PhaseTemplate::parse("mixed:0.25,8192,0.7,0.9,100").unwrap();
        assert_eq!(PhaseTemplate::parse(&p.render()).unwrap(), p);
        assert!(PhaseTemplate::parse("zig,1,1,1,1").is_err());
        assert!(PhaseTemplate::parse("seq,1,1").is_err());
    }

    #[test]
    fn op_scaling() {
        let w = WorkloadSpec::preset("oltp-mixed").unwrap().with_total_ops(2000);
        assert_eq!(w.generate(3).unwrap().len(), 2000);
    }
}
