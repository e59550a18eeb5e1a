//! Synthetic block-level workloads and the line-oriented trace file format.
//!
//! Generators are pure functions of their arguments: the same parameters and
//! seed always produce the same [`Trace`]. Random draws use ChaCha8 so traces
//! are stable across platforms.

use std::fmt;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Logical block size; every offset and size is a multiple of this.
pub const SECTOR_BYTES: u64 = 512;

const MAGIC: &str = "#rlstorage-trace v1";

#[derive(Debug, Error, PartialEq)]
pub enum TraceError {
    #[error("block size {0} is not a positive multiple of 512")]
    Misaligned(u64),
    #[error("request at offset {offset} with size {size} exceeds address space {address_space}")]
    OutOfBounds {
        offset: u64,
        size: u64,
        address_space: u64,
    },
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("fraction {name}={value} outside its allowed range")]
    BadFraction { name: &'static str, value: f64 },
    #[error("phase list is empty")]
    NoPhases,
    #[error("reference throughput must be positive")]
    BadReference,
    #[error("requests are not sorted by arrival time at index {0}")]
    Unsorted(usize),
    #[error("trace header missing or malformed")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for TraceError {
    fn from(e: std::io::Error) -> Self {
        TraceError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Read,
    Write,
}

impl Op {
    pub fn code(self) -> char {
        match self {
            Op::Read => 'R',
            Op::Write => 'W',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IoRequest {
    /// Microseconds since trace start.
    pub arrival_us: u64,
    pub op: Op,
    pub offset: u64,
    pub size: u64,
}

impl IoRequest {
    pub fn end(&self) -> u64 {
        self.offset + self.size
    }

    pub fn is_read(&self) -> bool {
        self.op == Op::Read
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceHeader {
    pub address_space_bytes: u64,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub header: TraceHeader,
    pub requests: Vec<IoRequest>,
}

impl Trace {
    pub fn new(address_space_bytes: u64, description: impl Into<String>) -> Self {
        Trace {
            header: TraceHeader {
                address_space_bytes,
                description: description.into(),
            },
            requests: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requests.is_empty()
    }

    /// Checks every request invariant and arrival ordering.
    pub fn validate(&self) -> Result<(), TraceError> {
        let space = self.header.address_space_bytes;
        let mut last = 0u64;
        for (i, r) in self.requests.iter().enumerate() {
            if r.size == 0 || r.size % SECTOR_BYTES != 0 || r.offset % SECTOR_BYTES != 0 {
                return Err(TraceError::Misaligned(r.size));
            }
            match r.offset.checked_add(r.size) {
                Some(end) if end <= space => {}
                _ => {
                    return Err(TraceError::OutOfBounds {
                        offset: r.offset,
                        size: r.size,
                        address_space: space,
                    })
                }
            }
            if r.arrival_us < last {
                return Err(TraceError::Unsorted(i));
            }
            last = r.arrival_us;
        }
        Ok(())
    }

    /// Total bytes requested.
    pub fn total_bytes(&self) -> u64 {
        self.requests.iter().map(|r| r.size).sum()
    }

    /// Offered load in bytes per second over `[from_us, to_us)`.
    pub fn offered_load(&self, from_us: u64, to_us: u64) -> f64 {
        if to_us <= from_us {
            return 0.0;
        }
        let bytes: u64 = self
            .requests
            .iter()
            .filter(|r| r.arrival_us >= from_us && r.arrival_us < to_us)
            .map(|r| r.size)
            .sum();
        bytes as f64 / ((to_us - from_us) as f64 / 1e6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pattern {
    Sequential,
    Random,
    /// Each request continues the previous one with probability `sequential_fraction`.
    Mixed { sequential_fraction: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpec {
    pub duration_us: u64,
    pub pattern: Pattern,
    pub block_size_bytes: u64,
    pub read_fraction: f64,
    pub target_utilization: f64,
}

impl PhaseSpec {
    pub fn validate(&self) -> Result<(), TraceError> {
        check_block(self.block_size_bytes)?;
        check_fraction("read_fraction", self.read_fraction)?;
        if !(self.target_utilization > 0.0 && self.target_utilization <= 1.0) {
            return Err(TraceError::BadFraction {
                name: "target_utilization",
                value: self.target_utilization,
            });
        }
        if let Pattern::Mixed {
            sequential_fraction,
        } = self.pattern
        {
            check_fraction("sequential_fraction", sequential_fraction)?;
        }
        Ok(())
    }

    /// Inter-arrival gap so that this phase offers `target_utilization` of the
    /// reference throughput.
    pub fn inter_arrival_us(&self, reference_bytes_per_s: f64) -> f64 {
        self.block_size_bytes as f64 * 1e6 / (self.target_utilization * reference_bytes_per_s)
    }
}

/// Shared parameters for [`gen_phased`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasedParams {
    pub address_space: u64,
    /// Device throughput that `target_utilization` is measured against.
    pub reference_bytes_per_s: f64,
}

fn check_block(block: u64) -> Result<(), TraceError> {
    if block == 0 || block % SECTOR_BYTES != 0 {
        Err(TraceError::Misaligned(block))
    } else {
        Ok(())
    }
}

fn check_fraction(name: &'static str, value: f64) -> Result<(), TraceError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(TraceError::BadFraction { name, value })
    }
}

pub fn gen_sequential(
    address_space: u64,
    start_offset: u64,
    count: usize,
    block_size: u64,
    inter_arrival_us: u64,
) -> Result<Trace, TraceError> {
    check_block(block_size)?;
    if count == 0 {
        return Err(TraceError::EmptyCount);
    }
    if start_offset % SECTOR_BYTES != 0 {
        return Err(TraceError::Misaligned(start_offset));
    }
    let last_end = (count as u64)
        .checked_mul(block_size)
        .and_then(|b| b.checked_add(start_offset));
    if last_end.map_or(true, |end| end > address_space) {
        return Err(TraceError::OutOfBounds {
            offset: start_offset,
            size: block_size.saturating_mul(count as u64),
            address_space,
        });
    }
    let mut trace = Trace::new(address_space, "sequential");
    trace.requests = (0..count as u64)
        .map(|i| IoRequest {
            arrival_us: i * inter_arrival_us,
            op: Op::Read,
            offset: start_offset + i * block_size,
            size: block_size,
        })
        .collect();
    Ok(trace)
}

pub fn gen_random(
    address_space: u64,
    count: usize,
    block_size: u64,
    read_fraction: f64,
    inter_arrival_us: u64,
    seed: u64,
) -> Result<Trace, TraceError> {
    check_block(block_size)?;
    check_fraction("read_fraction", read_fraction)?;
    if count == 0 {
        return Err(TraceError::EmptyCount);
    }
    if address_space < block_size {
        return Err(TraceError::OutOfBounds {
            offset: 0,
            size: block_size,
            address_space,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Trace::new(address_space, "random");
    let mut cursor = 0;
    let phase = PhaseSpec {
        duration_us: 0,
        pattern: Pattern::Random,
        block_size_bytes: block_size,
        read_fraction,
        target_utilization: 1.0,
    };
    for i in 0..count as u64 {
        let req = draw_request(&mut rng, &phase, address_space, &mut cursor, i * inter_arrival_us);
        trace.requests.push(req);
    }
    Ok(trace)
}

fn draw_request(
    rng: &mut ChaCha8Rng,
    phase: &PhaseSpec,
    address_space: u64,
    seq_cursor: &mut u64,
    arrival_us: u64,
) -> IoRequest {
    let block = phase.block_size_bytes;
    let slots = address_space / block;
    let sequential = match phase.pattern {
        Pattern::Sequential => true,
        Pattern::Random => false,
        Pattern::Mixed {
            sequential_fraction,
        } => rng.gen::<f64>() < sequential_fraction,
    };
    let offset = if sequential {
        if *seq_cursor % block != 0 || *seq_cursor + block > address_space {
            *seq_cursor = 0;
        }
        *seq_cursor
    } else {
        rng.gen_range(0..slots) * block
    };
    *seq_cursor = offset + block;
    let op = if rng.gen::<f64>() < phase.read_fraction {
        Op::Read
    } else {
        Op::Write
    };
    IoRequest {
        arrival_us,
        op,
        offset,
        size: block,
    }
}

/// Concatenates one sub-trace per phase, each shifted by the durations of
/// the phases before it.
pub fn gen_phased(
    phases: &[PhaseSpec],
    params: PhasedParams,
    seed: u64,
) -> Result<Trace, TraceError> {
    if phases.is_empty() {
        return Err(TraceError::NoPhases);
    }
    if !(params.reference_bytes_per_s > 0.0) {
        return Err(TraceError::BadReference);
    }
    for p in phases {
        p.validate()?;
        if params.address_space < p.block_size_bytes {
            return Err(TraceError::OutOfBounds {
                offset: 0,
                size: p.block_size_bytes,
                address_space: params.address_space,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Trace::new(params.address_space, "phased");
    let mut phase_start = 0u64;
    let mut cursor = 0u64;
    for phase in phases {
        let gap = phase.inter_arrival_us(params.reference_bytes_per_s);
        let mut i = 0u64;
        loop {
            let at = (i as f64 * gap).floor() as u64;
            if at >= phase.duration_us {
                break;
            }
            let req = draw_request(&mut rng, phase, params.address_space, &mut cursor, phase_start + at);
            trace.requests.push(req);
            i += 1;
        }
        phase_start += phase.duration_us;
    }
    Ok(trace)
}

/// Writes the trace in the `#rlstorage-trace v1` text format.
pub fn write_trace<W: Write>(trace: &Trace, mut out: W) -> Result<(), TraceError> {
    write!(out, "{MAGIC} address_space={}", trace.header.address_space_bytes)?;
    if !trace.header.description.is_empty() {
        write!(out, " description={}", trace.header.description)?;
    }
    out.write_all(b"\n")?;
    for r in &trace.requests {
        writeln!(out, "{},{},{},{}", r.arrival_us, r.op.code(), r.offset, r.size)?;
    }
    Ok(())
}

pub fn trace_to_string(trace: &Trace) -> String {
    let mut buf = Vec::new();
    write_trace(trace, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("trace text is ASCII")
}

fn parse_header(line: &str) -> Result<TraceHeader, TraceError> {
    let rest = line.strip_prefix(MAGIC).ok_or(TraceError::MissingHeader)?;
    let rest = rest.strip_prefix(" address_space=").ok_or(TraceError::MissingHeader)?;
    let (space, description) = match rest.split_once(" description=") {
        Some((s, d)) => (s, d.to_string()),
        None => (rest, String::new()),
    };
    let address_space_bytes = space.trim().parse().map_err(|_| TraceError::MissingHeader)?;
    Ok(TraceHeader {
        address_space_bytes,
        description,
    })
}

fn parse_line(text: &str, line: usize, space: u64) -> Result<IoRequest, TraceError> {
    let bad = |reason: String| TraceError::Malformed { line, reason };
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != 4 {
        return Err(bad(format!("expected 4 fields, found {}", fields.len())));
    }
    let num = |idx: usize, name: &str| -> Result<u64, TraceError> {
        fields[idx]
            .trim()
            .parse::<u64>()
            .map_err(|_| bad(format!("invalid {name} '{}'", fields[idx])))
    };
    let arrival_us = num(0, "arrival_us")?;
    let op = match fields[1].trim() {
        "R" => Op::Read,
        "W" => Op::Write,
        other => return Err(bad(format!("invalid op '{other}'"))),
    };
    let offset = num(2, "offset")?;
    let size = num(3, "size")?;
    if size == 0 || size % SECTOR_BYTES != 0 || offset % SECTOR_BYTES != 0 {
        return Err(bad("offset and size must be positive multiples of 512".into()));
    }
    if offset.checked_add(size).map_or(true, |end| end > space) {
        return Err(bad(format!("request exceeds address space {space}")));
    }
    Ok(IoRequest {
        arrival_us,
        op,
        offset,
        size,
    })
}

pub fn read_trace<R: BufRead>(input: R) -> Result<Trace, TraceError> {
    let mut lines = input.lines();
    let header = match lines.next() {
        Some(l) => parse_header(&l?)?,
        None => return Err(TraceError::MissingHeader),
    };
    let space = header.address_space_bytes;
    let mut trace = Trace {
        header,
        requests: Vec::new(),
    };
    let mut last = 0;
    for (idx, l) in lines.enumerate() {
        let l = l?;
        let line = idx + 2;
        if l.is_empty() {
            continue;
        }
        let req = parse_line(&l, line, space)?;
        if req.arrival_us < last {
            return Err(TraceError::Malformed {
                line,
                reason: "arrival times must be non-decreasing".into(),
            });
        }
        last = req.arrival_us;
        trace.requests.push(req);
    }
    Ok(trace)
}

pub fn trace_from_str(text: &str) -> Result<Trace, TraceError> {
    read_trace(text.as_bytes())
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GIB: u64 = 1 << 30;

    #[test]
    fn sequential_offsets_and_arrivals() {
        let t = gen_sequential(GIB, 0, 4, 4096, 100).unwrap();
        let offsets: Vec<u64> = t.requests.iter().map(|r| r.offset).collect();
        let arrivals: Vec<u64> = t.requests.iter().map(|r| r.arrival_us).collect();
        assert_eq!(offsets, [0, 4096, 8192, 12288]);
        assert_eq!(arrivals, [0, 100, 200, 300]);
        assert!(t.requests.iter().all(|r| r.op == Op::Read));

        let t = gen_sequential(GIB, 0, 1, 4096, 100).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.requests[0].offset, 0);

        let t = gen_sequential(GIB, 512, 3, 512, 10).unwrap();
        let offsets: Vec<u64> = t.requests.iter().map(|r| r.offset).collect();
        assert_eq!(offsets, [512, 1024, 1536]);
    }

    #[test]
    fn sequential_rejects_bad_inputs() {
        assert_eq!(gen_sequential(GIB, 0, 4, 1000, 1), Err(TraceError::Misaligned(1000)));
        assert!(matches!(
            gen_sequential(8192, 0, 3, 4096, 1),
            Err(TraceError::OutOfBounds { .. })
        ));
        assert_eq!(gen_sequential(GIB, 0, 0, 4096, 1), Err(TraceError::EmptyCount));
    }

    #[test]
    fn random_is_deterministic_and_aligned() {
        let a = gen_random(GIB, 2000, 8192, 0.7, 5, 42).unwrap();
        let b = gen_random(GIB, 2000, 8192, 0.7, 5, 42).unwrap();
        assert_eq!(trace_to_string(&a), trace_to_string(&b));
        assert!(a.requests.iter().all(|r| r.offset % 8192 == 0));
        a.validate().unwrap();
        let c = gen_random(GIB, 2000, 8192, 0.7, 5, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_read_fraction() {
        let all = gen_random(GIB, 500, 4096, 1.0, 1, 3).unwrap();
        assert!(all.requests.iter().all(|r| r.is_read()));
        let half = gen_random(GIB, 10_000, 4096, 0.5, 1, 3).unwrap();
        let reads = half.requests.iter().filter(|r| r.is_read()).count();
        assert!((4500..=5500).contains(&reads), "reads = {reads}");
        assert!(matches!(
            gen_random(GIB, 10, 4096, 1.5, 1, 3),
            Err(TraceError::BadFraction { .. })
        ));
    }

    fn phase(duration_us: u64, pattern: Pattern, util: f64) -> PhaseSpec {
        PhaseSpec {
            duration_us,
            pattern,
            block_size_bytes: 4096,
            read_fraction: 0.5,
            target_utilization: util,
        }
    }

    #[test]
    fn single_phase_matches_gen_random() {
        // 4096 B every 100 us is 40.96 MB/s.
        let params = PhasedParams {
            address_space: GIB,
            reference_bytes_per_s: 40.96e6,
        };
        let phased = gen_phased(&[phase(100 * 300, Pattern::Random, 1.0)], params, 9).unwrap();
        let random = gen_random(GIB, 300, 4096, 0.5, 100, 9).unwrap();
        assert_eq!(phased.requests, random.requests);
    }

    #[test]
    fn heavier_phase_offers_more_load() {
        let params = PhasedParams {
            address_space: GIB,
            reference_bytes_per_s: 100e6,
        };
        let t = gen_phased(
            &[
                phase(1_000_000, Pattern::Random, 0.2),
                phase(1_000_000, Pattern::Random, 0.8),
            ],
            params,
            1,
        )
        .unwrap();
        let light = t.offered_load(0, 1_000_000);
        let heavy = t.offered_load(1_000_000, 2_000_000);
        assert!(heavy > light);
        assert!((light / 20e6 - 1.0).abs() < 0.01, "light = {light}");
        t.validate().unwrap();
    }

    #[test]
    fn zero_duration_phase_is_empty() {
        let params = PhasedParams {
            address_space: GIB,
            reference_bytes_per_s: 100e6,
        };
        let t = gen_phased(&[phase(0, Pattern::Sequential, 0.5)], params, 1).unwrap();
        assert!(t.is_empty());
        assert_eq!(gen_phased(&[], params, 1), Err(TraceError::NoPhases));
    }

    #[test]
    fn empty_trace_roundtrip() {
        let t = Trace::new(4096, "");
        let text = trace_to_string(&t);
        assert_eq!(text, "#rlstorage-trace v1 address_space=4096\n");
        assert_eq!(trace_from_str(&text).unwrap(), t);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let text = "#rlstorage-trace v1 address_space=1048576\n0,R,0,4096\n5,W,-4096,4096\n";
        assert_eq!(
            trace_from_str(text).unwrap_err(),
            TraceError::Malformed {
                line: 3,
                reason: "invalid offset '-4096'".into()
            }
        );
        assert_eq!(trace_from_str("0,R,0,4096\n").unwrap_err(), TraceError::MissingHeader);
        assert_eq!(trace_from_str("").unwrap_err(), TraceError::MissingHeader);
        assert!(matches!(
            trace_from_str("#rlstorage-trace v1 address_space=4096\n0,X,0,512\n"),
            Err(TraceError::Malformed { line: 2, .. })
        ));
    }
}
