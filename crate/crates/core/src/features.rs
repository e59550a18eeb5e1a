//! Data collector: window of completions to feature vector, then to a
//! tabular state id or a normalized network input.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::simenv::{CompletionRecord, Window};

pub const FEATURE_COUNT: usize = 7;

#[derive(Debug, Error, PartialEq)]
pub enum FeatureError {
    #[error("bin edges for {0} must be non-empty and strictly increasing")]
    BadEdges(Feature),
    #[error("binning scheme selects no features")]
    EmptyScheme,
    #[error("normalization bounds for {0} need min < max")]
    DegenerateBounds(Feature),
    #[error("unknown feature '{0}'")]
    UnknownFeature(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    MeanRequestBytes,
    ReadFraction,
    Sequentiality,
    ArrivalRate,
    MeanLatency,
    CacheHitRate,
    Utilization,
}

impl Feature {
    pub const ALL: [Feature; FEATURE_COUNT] = [
        Feature::MeanRequestBytes,
        Feature::ReadFraction,
        Feature::Sequentiality,
        Feature::ArrivalRate,
        Feature::MeanLatency,
        Feature::CacheHitRate,
        Feature::Utilization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::MeanRequestBytes => "mean_request_bytes",
            Feature::ReadFraction => "read_fraction",
            Feature::Sequentiality => "sequentiality",
            Feature::ArrivalRate => "arrival_rate_per_s",
            Feature::MeanLatency => "mean_latency_us",
            Feature::CacheHitRate => "cache_hit_rate",
            Feature::Utilization => "utilization",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FeatureError::UnknownFeature(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureVector {
    pub mean_request_bytes: f64,
    pub read_fraction: f64,
    /// Fraction of consecutive request pairs (in arrival order) that are contiguous.
    pub sequentiality: f64,
    pub arrival_rate_per_s: f64,
    pub mean_latency_us: f64,
    pub cache_hit_rate: f64,
    pub utilization: f64,
}

impl FeatureVector {
    pub fn get(&self, f: Feature) -> f64 {
        self.as_array()[f.index()]
    }

    pub fn as_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.mean_request_bytes,
            self.read_fraction,
            self.sequentiality,
            self.arrival_rate_per_s,
            self.mean_latency_us,
            self.cache_hit_rate,
            self.utilization,
        ]
    }

    pub fn from_array(a: [f64; FEATURE_COUNT]) -> Self {
        FeatureVector {
            mean_request_bytes: a[0],
            read_fraction: a[1],
            sequentiality: a[2],
            arrival_rate_per_s: a[3],
            mean_latency_us: a[4],
            cache_hit_rate: a[5],
            utilization: a[6],
        }
    }
}

/// Computes the feature vector of a non-empty window. Returns `None` when
/// there are no records so the caller can carry the previous vector forward.
pub fn extract(records: &[CompletionRecord], window_us: f64, busy_us: f64) -> Option<FeatureVector> {
    assert!(window_us > 0.0, "window must be positive");
    if records.is_empty() {
        return None;
    }
    let n = records.len() as f64;
    let mut by_arrival: Vec<&CompletionRecord> = records.iter().collect();
    by_arrival.sort_by_key(|r| r.request.arrival_us);
    let contiguous = by_arrival
        .windows(2)
        .filter(|w| w[0].request.end() == w[1].request.offset)
        .count();
    let sequentiality = if records.len() < 2 {
        0.0
    } else {
        contiguous as f64 / (records.len() - 1) as f64
    };
    Some(FeatureVector {
        mean_request_bytes: records.iter().map(|r| r.request.size as f64).sum::<f64>() / n,
        read_fraction: records.iter().filter(|r| r.request.is_read()).count() as f64 / n,
        sequentiality,
        arrival_rate_per_s: n / (window_us / 1e6),
        mean_latency_us: records.iter().map(CompletionRecord::latency_us).sum::<f64>() / n,
        cache_hit_rate: records.iter().filter(|r| r.cache_hit).count() as f64 / n,
        utilization: (busy_us / window_us).clamp(0.0, 1.0),
    })
}

/// Stateful collector that reuses the last vector across empty windows.
#[derive(Debug, Clone, Default)]
pub struct DataCollector {
    last: Option<FeatureVector>,
}

impl DataCollector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, window: &Window) -> FeatureVector {
        match extract(&window.records, window.len_us(), window.busy_us) {
            Some(v) => {
                self.last = Some(v);
                v
            }
            None => self.last.unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Debug, Clone, PartialEq)]
pub struct BinningScheme {
    /// Selected features, most significant first, each with its interior edges.
    pub features: Vec<(Feature, Vec<f64>)>,
}

impl Default for BinningScheme {
    /// Four fraction-valued features, three bins each: 81 states.
    fn default() -> Self {
        let edges = vec![0.33, 0.66];
        BinningScheme {
            features: [
                Feature::Sequentiality,
                Feature::ReadFraction,
                Feature::Utilization,
                Feature::CacheHitRate,
            ]
            .into_iter()
            .map(|f| (f, edges.clone()))
            .collect(),
        }
    }
}

impl BinningScheme {
    pub fn validate(&self) -> Result<(), FeatureError> {
        if self.features.is_empty() {
            return Err(FeatureError::EmptyScheme);
        }
        for (f, edges) in &self.features {
            let ok = !edges.is_empty()
                && edges.iter().all(|e| e.is_finite())
                && edges.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(FeatureError::BadEdges(*f));
            }
        }
        Ok(())
    }

    pub fn radices(&self) -> Vec<u32> {
        self.features.iter().map(|(_, e)| e.len() as u32 + 1).collect()
    }

    pub fn state_count(&self) -> u32 {
        self.radices().iter().product()
    }

    /// Bin of `value` among edges: below the first edge is bin 0, at or
    /// above the last edge is the last bin.
    pub fn bin_of(edges: &[f64], value: f64) -> u32 {
        edges.iter().take_while(|&&e| value >= e).count() as u32
    }

    pub fn bins(&self, v: &FeatureVector) -> Vec<u32> {
        self.features
            .iter()
            .map(|(f, edges)| Self::bin_of(edges, v.get(*f)))
            .collect()
    }

    pub fn encode(&self, bins: &[u32]) -> StateId {
        let id = self
            .radices()
            .iter()
            .zip(bins)
            .fold(0u32, |acc, (radix, b)| acc * radix + b.min(&(radix - 1)));
        StateId(id)
    }

    pub fn decode(&self, id: StateId) -> Vec<u32> {
        let mut rest = id.0;
        let mut bins: Vec<u32> = self
            .radices()
            .iter()
            .rev()
            .map(|r| {
                let b = rest % r;
                rest /= r;
                b
            })
            .collect();
        bins.reverse();
        bins
    }
}

pub fn discretize(v: &FeatureVector, scheme: &BinningScheme) -> StateId {
    scheme.encode(&scheme.bins(v))
}

/// Per-feature (min, max) used to scale network inputs into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBounds {
    pub bounds: [(f64, f64); FEATURE_COUNT],
}

impl Default for NormBounds {
    fn default() -> Self {
        NormBounds {
            bounds: [
                (0.0, 524_288.0),
                (0.0, 1.0),
                (0.0, 1.0),
                (0.0, 50_000.0),
                (0.0, 200_000.0),
                (0.0, 1.0),
                (0.0, 1.0),
            ],
        }
    }
}

impl NormBounds {
    pub fn unit() -> Self {
        NormBounds {
            bounds: [(0.0, 1.0); FEATURE_COUNT],
        }
    }

    pub fn validate(&self) -> Result<(), FeatureError> {
        for (f, (lo, hi)) in Feature::ALL.iter().zip(self.bounds) {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(FeatureError::DegenerateBounds(*f));
            }
        }
        Ok(())
    }
}

pub fn normalize(v: &FeatureVector, bounds: &NormBounds) -> Result<[f32; FEATURE_COUNT], FeatureError> {
    bounds.validate()?;
    let raw = v.as_array();
    let mut out = [0f32; FEATURE_COUNT];
    for i in 0..FEATURE_COUNT {
        let (lo, hi) = bounds.bounds[i];
        out[i] = ((raw[i] - lo) / (hi - lo)).clamp(0.0, 1.0) as f32;
    }
    Ok(out)
}

/// What the tuner sees at a decision point: raw features plus both
/// encodings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub features: FeatureVector,
    pub state: StateId,
    pub input: [f32; FEATURE_COUNT],
}

impl Observation {
    pub fn new(features: FeatureVector, scheme: &BinningScheme, bounds: &NormBounds) -> Result<Self, FeatureError> {
        Ok(Observation {
            features,
            state: discretize(&features, scheme),
            input: normalize(&features, bounds)?,
        })
    }
}
