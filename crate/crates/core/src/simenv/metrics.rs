use crate::trace::IoRequest;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletionRecord {
    pub request: IoRequest,
    /// When the request was admitted to the device (arrival time for cache hits).
    pub submit_us: f64,
    pub complete_us: f64,
    pub cache_hit: bool,
}

impl CompletionRecord {
    pub fn latency_us(&self) -> f64 {
        self.complete_us - self.request.arrival_us as f64
    }
}

/// Windowed performance figures. Latency and hit-rate fields are `None` when
/// the window saw no completions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSample {
    pub window_us: f64,
    pub completions: usize,
    pub iops: f64,
    pub mean_latency_us: Option<f64>,
    pub p99_latency_us: Option<f64>,
    pub cache_hit_rate: Option<f64>,
    pub utilization: f64,
    pub bytes_transferred: u64,
}

impl MetricsSample {
    pub fn throughput_bytes_per_s(&self) -> f64 {
        self.bytes_transferred as f64 / (self.window_us / 1e6)
    }
}

/// Nearest-rank percentile over an ascending slice: element at 1-based rank
/// `ceil(q * n)`.
pub fn nearest_rank(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    Some(sorted[rank.min(sorted.len()) - 1])
}

pub fn summarize(records: &[CompletionRecord], window_us: f64, busy_us: f64) -> MetricsSample {
    assert!(window_us > 0.0, "window must be positive");
    let n = records.len();
    let utilization = (busy_us / window_us).clamp(0.0, 1.0);
    let bytes_transferred = records.iter().map(|r| r.request.size).sum();
    if n == 0 {
        return MetricsSample {
            window_us,
            completions: 0,
            iops: 0.0,
            mean_latency_us: None,
            p99_latency_us: None,
            cache_hit_rate: None,
            utilization,
            bytes_transferred,
        };
    }
    let mut lat: Vec<f64> = records.iter().map(CompletionRecord::latency_us).collect();
    let mean = lat.iter().sum::<f64>() / n as f64;
    lat.sort_by(f64::total_cmp);
    let hits = records.iter().filter(|r| r.cache_hit).count();
    MetricsSample {
        window_us,
        completions: n,
        iops: n as f64 / (window_us / 1e6),
        mean_latency_us: Some(mean),
        p99_latency_us: nearest_rank(&lat, 0.99),
        cache_hit_rate: Some(hits as f64 / n as f64),
        utilization,
        bytes_transferred,
    }
}
