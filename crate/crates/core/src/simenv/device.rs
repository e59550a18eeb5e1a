use std::fmt;
use std::str::FromStr;

use super::SimError;
use crate::trace::IoRequest;

/// Fixed-cost plus per-byte service model of a block device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceProfile {
    pub base_latency_us: f64,
    pub per_byte_us: f64,
    /// Added when a command does not start where the previous one ended.
    pub seek_penalty_us: f64,
    /// Commands the device can service at once, regardless of queue depth.
    pub internal_parallelism: usize,
}

impl DeviceProfile {
    pub const NVME: DeviceProfile = DeviceProfile {
        base_latency_us: 80.0,
        per_byte_us: 0.01,
        seek_penalty_us: 0.0,
        internal_parallelism: 64,
    };

    pub const SATA: DeviceProfile = DeviceProfile {
        base_latency_us: 400.0,
        per_byte_us: 0.02,
        seek_penalty_us: 400.0,
        internal_parallelism: 32,
    };

    pub fn validate(&self) -> Result<(), SimError> {
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !finite_nonneg(self.base_latency_us)
            || !finite_nonneg(self.per_byte_us)
            || !finite_nonneg(self.seek_penalty_us)
            || self.internal_parallelism == 0
        {
            return Err(SimError::InvalidProfile);
        }
        Ok(())
    }

    /// Bytes per second at full internal parallelism for `block` sized random commands.
    pub fn peak_bytes_per_s(&self, block: u64) -> f64 {
        let svc = self.base_latency_us + self.seek_penalty_us + block as f64 * self.per_byte_us;
        self.internal_parallelism as f64 * block as f64 * 1e6 / svc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DevicePreset {
    Nvme,
    Sata,
}

impl DevicePreset {
    pub fn profile(self) -> DeviceProfile {
        match self {
            DevicePreset::Nvme => DeviceProfile::NVME,
            DevicePreset::Sata => DeviceProfile::SATA,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DevicePreset::Nvme => "nvme",
            DevicePreset::Sata => "sata",
        }
    }
}

impl fmt::Display for DevicePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DevicePreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nvme" => Ok(DevicePreset::Nvme),
            "sata" => Ok(DevicePreset::Sata),
            other => Err(format!("unknown device preset '{other}'")),
        }
    }
}

pub const MAX_READAHEAD_PAGES: u32 = 256;
pub const MAX_QUEUE_DEPTH: u32 = 1024;
pub const MAX_CACHE_PAGES: u32 = 1 << 22;

/// The knobs the tuner controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TunableConfig {
    /// Readahead window per detected-sequential miss, in units of the
    /// triggering request's length (one page for single-page reads).
    pub readahead_pages: u32,
    pub queue_depth: u32,
    pub cache_pages: u32,
}

impl Default for TunableConfig {
    fn default() -> Self {
        TunableConfig {
            readahead_pages: 4,
            queue_depth: 32,
            cache_pages: 4096,
        }
    }
}

impl TunableConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let ra = self.readahead_pages;
        let ok = (ra == 0 || ra.is_power_of_two())
            && ra <= MAX_READAHEAD_PAGES
            && self.queue_depth.is_power_of_two()
            && self.queue_depth <= MAX_QUEUE_DEPTH
            && self.cache_pages.is_power_of_two()
            && self.cache_pages <= MAX_CACHE_PAGES;
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidConfig(*self))
        }
    }
}

impl fmt::Display for TunableConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "readahead={} queue_depth={} cache_pages={}",
            self.readahead_pages, self.queue_depth, self.cache_pages
        )
    }
}

/// Device time to service `request`.
pub fn service_time(profile: &DeviceProfile, request: &IoRequest, contiguous: bool) -> f64 {
    service_time_bytes(profile, request.size, contiguous)
}

pub(crate) fn service_time_bytes(profile: &DeviceProfile, bytes: u64, contiguous: bool) -> f64 {
    let seek = if contiguous { 0.0 } else { profile.seek_penalty_us };
    profile.base_latency_us + bytes as f64 * profile.per_byte_us + seek
}
