//! Discrete-event model of a block device behind an LRU page cache.
//!
//! Requests arrive at the times recorded in the trace. Reads whose pages are
//! all resident complete after [`CACHE_HIT_LATENCY_US`]; everything else
//! becomes a device command. Commands wait in a FIFO admission queue until
//! one of `min(queue_depth, internal_parallelism)` service slots frees up,
//! then occupy it for [`service_time`]. Cache contents change at arrival
//! time, so hit/miss outcomes do not depend on device timing.
//!
//! A read whose first page directly follows the previous read stream is
//! sequential; if it misses, the command is extended by a readahead window
//! of `readahead_pages` times the request's page count and those pages are
//! inserted into the cache.

mod cache;
mod device;
mod metrics;

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

pub use cache::{cache_access, AccessOutcome, LruCache};
pub use device::{
    service_time, DevicePreset, DeviceProfile, TunableConfig, MAX_CACHE_PAGES, MAX_QUEUE_DEPTH,
    MAX_READAHEAD_PAGES,
};
pub use metrics::{nearest_rank, summarize, CompletionRecord, MetricsSample};

use crate::trace::{IoRequest, Trace, TraceError};

pub const PAGE_BYTES: u64 = 4096;
pub const CACHE_HIT_LATENCY_US: f64 = 5.0;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("invalid device profile")]
    InvalidProfile,
    #[error("configuration out of bounds: {0}")]
    InvalidConfig(TunableConfig),
    #[error("invalid trace: {0}")]
    InvalidTrace(#[from] TraceError),
    #[error("window length must be positive")]
    InvalidWindow,
    #[error("trace arrivals start before the current simulation clock")]
    ArrivalInPast,
}

#[derive(Debug, Clone, Copy)]
enum EventKind {
    Arrival,
    CacheHit,
    DeviceDone { submit_us: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    request: usize,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    // Reversed so the max-heap pops the earliest (time, seq) first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone, Copy)]
struct Command {
    request: usize,
    offset: u64,
    bytes: u64,
}

/// Output of one [`Simulator::advance_to`] call.
#[derive(Debug, Clone, Default)]
pub struct Window {
    pub start_us: f64,
    pub end_us: f64,
    pub records: Vec<CompletionRecord>,
    pub busy_us: f64,
}

impl Window {
    pub fn len_us(&self) -> f64 {
        self.end_us - self.start_us
    }

    pub fn summarize(&self) -> MetricsSample {
        summarize(&self.records, self.len_us(), self.busy_us)
    }
}

#[derive(Debug, Clone)]
pub struct Simulator {
    profile: DeviceProfile,
    config: TunableConfig,
    seed: u64,
    clock: f64,
    cache: LruCache,
    stream_next_page: Option<u64>,
    address_pages: u64,
    requests: Vec<IoRequest>,
    events: BinaryHeap<Event>,
    next_seq: u64,
    admission: VecDeque<Command>,
    in_flight: usize,
    last_dispatch_end: Option<u64>,
    busy_since: Option<f64>,
    window_start: f64,
    window_busy: f64,
    window_records: Vec<CompletionRecord>,
    outstanding: usize,
    prefetched_pages: u64,
}

impl Simulator {
    /// Empty cache, idle device, clock at zero.
    ///
    /// The device model is deterministic; `seed` is carried so that a run is
    /// identified by (profile, config, trace, seed).
    pub fn new(profile: DeviceProfile, config: TunableConfig, seed: u64) -> Result<Self, SimError> {
        profile.validate()?;
        config.validate()?;
        Ok(Simulator {
            profile,
            config,
            seed,
            clock: 0.0,
            cache: LruCache::new(config.cache_pages as usize),
            stream_next_page: None,
            address_pages: u64::MAX,
            requests: Vec::new(),
            events: BinaryHeap::new(),
            next_seq: 0,
            admission: VecDeque::new(),
            in_flight: 0,
            last_dispatch_end: None,
            busy_since: None,
            window_start: 0.0,
            window_busy: 0.0,
            window_records: Vec::new(),
            outstanding: 0,
            prefetched_pages: 0,
        })
    }

    pub fn profile(&self) -> &DeviceProfile {
        &self.profile
    }

    pub fn config(&self) -> TunableConfig {
        self.config
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn cache(&self) -> &LruCache {
        &self.cache
    }

    /// Commands waiting for a device slot.
    pub fn admission_len(&self) -> usize {
        self.admission.len()
    }

    pub fn in_flight(&self) -> usize {
        self.in_flight
    }

    pub fn prefetched_pages(&self) -> u64 {
        self.prefetched_pages
    }

    /// True once every loaded request has completed.
    pub fn is_idle(&self) -> bool {
        self.outstanding == 0
    }

    fn servers(&self) -> usize {
        (self.config.queue_depth as usize).min(self.profile.internal_parallelism)
    }

    /// Schedules the arrivals of `trace`.
    pub fn load(&mut self, trace: &Trace) -> Result<(), SimError> {
        trace.validate()?;
        if let Some(first) = trace.requests.first() {
            if (first.arrival_us as f64) < self.clock {
                return Err(SimError::ArrivalInPast);
            }
        }
        self.address_pages = trace.header.address_space_bytes.div_ceil(PAGE_BYTES);
        for req in &trace.requests {
            let idx = self.requests.len();
            self.requests.push(*req);
            self.push_event(req.arrival_us as f64, idx, EventKind::Arrival);
        }
        self.outstanding += trace.requests.len();
        Ok(())
    }

    fn push_event(&mut self, time: f64, request: usize, kind: EventKind) {
        let seq = self.next_seq;
        self.next_seq += 1;
        self.events.push(Event {
            time,
            seq,
            request,
            kind,
        });
    }

    /// Processes every event strictly before `until` and closes the window
    /// that started at the previous boundary.
    pub fn advance_to(&mut self, until: f64) -> Window {
        while let Some(ev) = self.events.peek() {
            if ev.time >= until {
                break;
            }
            let ev = self.events.pop().expect("peeked");
            self.clock = ev.time;
            match ev.kind {
                EventKind::Arrival => self.on_arrival(ev.request),
                EventKind::CacheHit => self.complete(ev.request, ev.time, ev.time, true),
                EventKind::DeviceDone { submit_us } => self.on_device_done(ev.request, submit_us),
            }
        }
        let end = until.max(self.window_start);
        if let Some(since) = self.busy_since {
            self.window_busy += end - since.max(self.window_start);
        }
        self.clock = self.clock.max(end);
        let window = Window {
            start_us: self.window_start,
            end_us: end,
            records: std::mem::take(&mut self.window_records),
            busy_us: self.window_busy,
        };
        self.window_start = end;
        self.window_busy = 0.0;
        window
    }

    fn on_arrival(&mut self, idx: usize) {
        let req = self.requests[idx];
        let first = req.offset / PAGE_BYTES;
        let last = (req.end() - 1) / PAGE_BYTES;
        let pages: Vec<u64> = (first..=last).collect();
        let outcome = self.cache.access(&pages);
        let mut bytes = req.size;
        if req.is_read() {
            let sequential = self.stream_next_page == Some(first);
            self.stream_next_page = Some(last + 1);
            if outcome.misses.is_empty() {
                self.push_event(self.clock + CACHE_HIT_LATENCY_US, idx, EventKind::CacheHit);
                return;
            }
            if sequential && self.config.readahead_pages > 0 {
                let window = self.config.readahead_pages as u64 * pages.len() as u64;
                let stop = (last + window).min(self.address_pages.saturating_sub(1));
                let mut evicted = Vec::new();
                for p in last + 1..=stop {
                    self.cache.touch(p, &mut evicted);
                }
                let fetched = stop.saturating_sub(last);
                self.prefetched_pages += fetched;
                bytes += fetched * PAGE_BYTES;
            }
        }
        self.admission.push_back(Command {
            request: idx,
            offset: req.offset,
            bytes,
        });
        self.dispatch();
    }

    fn dispatch(&mut self) {
        while self.in_flight < self.servers() {
            let Some(cmd) = self.admission.pop_front() else {
                break;
            };
            let contiguous = self.last_dispatch_end == Some(cmd.offset);
            let svc = device::service_time_bytes(&self.profile, cmd.bytes, contiguous);
            self.last_dispatch_end = Some(cmd.offset + cmd.bytes);
            if self.in_flight == 0 {
                self.busy_since = Some(self.clock);
            }
            self.in_flight += 1;
            let submit_us = self.clock;
            self.push_event(self.clock + svc, cmd.request, EventKind::DeviceDone { submit_us });
        }
    }

    fn on_device_done(&mut self, idx: usize, submit_us: f64) {
        self.in_flight -= 1;
        if self.in_flight == 0 {
            if let Some(since) = self.busy_since.take() {
                self.window_busy += self.clock - since.max(self.window_start);
            }
        }
        self.complete(idx, submit_us, self.clock, false);
        self.dispatch();
    }

    fn complete(&mut self, idx: usize, submit_us: f64, complete_us: f64, cache_hit: bool) {
        let request = self.requests[idx];
        let submit_us = submit_us.max(request.arrival_us as f64);
        self.window_records.push(CompletionRecord {
            request,
            submit_us,
            complete_us,
            cache_hit,
        });
        self.outstanding -= 1;
    }

    /// Installs a new configuration and returns the old one. Queue depth
    /// changes affect only commands dispatched from now on; shrinking the
    /// cache evicts immediately.
    pub fn apply_config(&mut self, config: TunableConfig) -> Result<TunableConfig, SimError> {
        config.validate()?;
        let previous = self.config;
        if config.cache_pages != previous.cache_pages {
            self.cache.resize(config.cache_pages as usize);
        }
        self.config = config;
        self.dispatch();
        Ok(previous)
    }
}

/// Output of [`run`].
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub records: Vec<CompletionRecord>,
    pub windows: Vec<MetricsSample>,
}

/// Runs `trace` to completion under a fixed configuration, sampling metrics
/// every `window_us`.
pub fn run(sim: &mut Simulator, trace: &Trace, window_us: f64) -> Result<RunOutput, SimError> {
    if !(window_us > 0.0) || !window_us.is_finite() {
        return Err(SimError::InvalidWindow);
    }
    sim.load(trace)?;
    let mut out = RunOutput::default();
    let mut k = (sim.clock() / window_us).floor() as u64;
    while !sim.is_idle() {
        k += 1;
        let w = sim.advance_to(k as f64 * window_us);
        out.windows.push(w.summarize());
        out.records.extend(w.records);
    }
    Ok(out)
}

/// Completion log as CSV text, one row per record in completion order.
pub fn completion_log(records: &[CompletionRecord]) -> String {
    let mut s = String::from("arrival_us,op,offset,size,submit_us,complete_us,cache_hit\n");
    for r in records {
        s.push_str(&format!(
            "{},{},{},{},{:.3},{:.3},{}\n",
            r.request.arrival_us,
            r.request.op,
            r.request.offset,
            r.request.size,
            r.submit_us,
            r.complete_us,
            u8::from(r.cache_hit)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{gen_random, gen_sequential, Op};

    const GIB: u64 = 1 << 30;

    fn single(offset: u64, size: u64, arrival_us: u64) -> IoRequest {
        IoRequest {
            arrival_us,
            op: Op::Read,
            offset,
            size,
        }
    }

    fn trace_of(reqs: Vec<IoRequest>) -> Trace {
        let mut t = Trace::new(GIB, "");
        t.requests = reqs;
        t
    }

    #[test]
    fn zero_steps_window_is_empty() {
        let mut sim = Simulator::new(DeviceProfile::NVME, TunableConfig::default(), 7).unwrap();
        let m = sim.advance_to(1000.0).summarize();
        assert_eq!(m.iops, 0.0);
        assert_eq!(m.completions, 0);
    }

    #[test]
    fn zero_cache_rejected() {
        let cfg = TunableConfig {
            cache_pages: 0,
            ..Default::default()
        };
        assert!(matches!(
            Simulator::new(DeviceProfile::NVME, cfg, 1),
            Err(SimError::InvalidConfig(_))
        ));
    }

    #[test]
    fn cold_read_latency_then_hit() {
        let mut sim = Simulator::new(DeviceProfile::NVME, TunableConfig::default(), 7).unwrap();
        let t = trace_of(vec![single(0, 4096, 0), single(0, 4096, 1000)]);
        let out = run(&mut sim, &t, 10_000.0).unwrap();
        assert_eq!(out.records.len(), 2);
        assert!((out.records[0].latency_us() - 120.96).abs() < 1e-9);
        assert!(!out.records[0].cache_hit);
        assert!(out.records[1].cache_hit);
        assert_eq!(out.records[1].latency_us(), CACHE_HIT_LATENCY_US);
    }

    #[test]
    fn queueing_at_depth_one() {
        let cfg = TunableConfig {
            queue_depth: 1,
            ..Default::default()
        };
        let mut sim = Simulator::new(DeviceProfile::NVME, cfg, 0).unwrap();
        let t = trace_of(vec![single(0, 4096, 0), single(1 << 20, 4096, 0)]);
        let out = run(&mut sim, &t, 1000.0).unwrap();
        assert!((out.records[1].submit_us - 120.96).abs() < 1e-9);
        assert!((out.records[1].complete_us - 241.92).abs() < 1e-9);
        let busy: f64 = out.windows.iter().map(|w| w.utilization * w.window_us).sum();
        assert!((busy - 241.92).abs() < 1e-6);
    }

    #[test]
    fn conservation_and_monotone_clock() {
        let t = gen_random(GIB, 3000, 8192, 0.7, 20, 5).unwrap();
        let mut sim = Simulator::new(DeviceProfile::SATA, TunableConfig::default(), 5).unwrap();
        let out = run(&mut sim, &t, 5000.0).unwrap();
        assert_eq!(out.records.len(), t.len());
        assert!(out.records.windows(2).all(|w| w[0].complete_us <= w[1].complete_us));
        for r in &out.records {
            assert!(r.complete_us >= r.submit_us && r.submit_us >= r.request.arrival_us as f64);
        }
        for w in &out.windows {
            assert!((0.0..=1.0).contains(&w.utilization));
        }
    }

    #[test]
    fn readahead_hits_following_requests() {
        let cfg = TunableConfig {
            readahead_pages: 4,
            queue_depth: 8,
            cache_pages: 1024,
        };
        let t = gen_sequential(GIB, 0, 101, 4096, 1000).unwrap();
        let mut sim = Simulator::new(DeviceProfile::NVME, cfg, 0).unwrap();
        let out = run(&mut sim, &t, 100_000.0).unwrap();
        let hits: Vec<bool> = out.records.iter().map(|r| r.cache_hit).collect();
        // first read is not detected as sequential; afterwards one miss per five.
        assert!(!hits[0] && !hits[1]);
        assert!(hits[2..6].iter().all(|&h| h));
        assert!(!hits[6]);
        let rate = hits.iter().filter(|&&h| h).count() as f64 / hits.len() as f64;
        assert!(rate >= 0.78, "{rate}");
    }

    #[test]
    fn shrink_cache_evicts_down_to_capacity() {
        let cfg = TunableConfig {
            readahead_pages: 0,
            queue_depth: 8,
            cache_pages: 8,
        };
        let mut sim = Simulator::new(DeviceProfile::NVME, cfg, 0).unwrap();
        let reqs = (0..8).map(|i| single(i * 8 * 4096, 4096, i)).collect();
        run(&mut sim, &trace_of(reqs), 1000.0).unwrap();
        assert_eq!(sim.cache().len(), 8);
        let prev = sim
            .apply_config(TunableConfig {
                cache_pages: 2,
                ..cfg
            })
            .unwrap();
        assert_eq!(prev, cfg);
        assert_eq!(sim.cache().pages_mru(), vec![56, 48]);
    }

    #[test]
    fn apply_same_config_is_noop() {
        let t = gen_random(GIB, 500, 4096, 0.5, 2, 1).unwrap();
        let cfg = TunableConfig::default();
        let mut a = Simulator::new(DeviceProfile::SATA, cfg, 1).unwrap();
        let mut b = a.clone();
        a.load(&t).unwrap();
        b.load(&t).unwrap();
        let mut la = Vec::new();
        let mut lb = Vec::new();
        for k in 1..200 {
            la.extend(a.advance_to(k as f64 * 500.0).records);
            b.apply_config(cfg).unwrap();
            lb.extend(b.advance_to(k as f64 * 500.0).records);
        }
        assert_eq!(la, lb);
    }

    #[test]
    fn raising_queue_depth_mid_overload_drains_faster() {
        let cfg = TunableConfig {
            readahead_pages: 0,
            queue_depth: 2,
            cache_pages: 64,
        };
        let t = gen_random(GIB, 4000, 4096, 1.0, 1, 3).unwrap();
        let mut slow = Simulator::new(DeviceProfile::SATA, cfg, 3).unwrap();
        slow.load(&t).unwrap();
        slow.advance_to(20_000.0);
        let mut fast = slow.clone();
        fast.apply_config(TunableConfig {
            queue_depth: 16,
            ..cfg
        })
        .unwrap();
        let ws = slow.advance_to(40_000.0).summarize();
        let wf = fast.advance_to(40_000.0).summarize();
        assert!(wf.utilization >= ws.utilization);
        assert!(wf.completions > ws.completions);
        assert!(fast.admission_len() < slow.admission_len());
    }
}
