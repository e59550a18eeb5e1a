use std::fmt;

use rand::Rng;

use crate::simenv::{TunableConfig, MAX_CACHE_PAGES, MAX_QUEUE_DEPTH, MAX_READAHEAD_PAGES};

pub const ACTION_COUNT: usize = 7;

/// Halve/double/no-op move on one knob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(u8);

impl ActionId {
    pub const NOOP: ActionId = ActionId(0);
    pub const READAHEAD_DOWN: ActionId = ActionId(1);
    pub const READAHEAD_UP: ActionId = ActionId(2);
    pub const QUEUE_DOWN: ActionId = ActionId(3);
    pub const QUEUE_UP: ActionId = ActionId(4);
    pub const CACHE_DOWN: ActionId = ActionId(5);
    pub const CACHE_UP: ActionId = ActionId(6);

    pub fn new(index: usize) -> Option<Self> {
        (index < ACTION_COUNT).then_some(ActionId(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = ActionId> {
        (0..ACTION_COUNT as u8).map(ActionId)
    }

    pub fn label(self) -> &'static str {
        match self.0 {
            0 => "noop",
            1 => "readahead/2",
            2 => "readahead*2",
            3 => "queue_depth/2",
            4 => "queue_depth*2",
            5 => "cache/2",
            _ => "cache*2",
        }
    }
}

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn halve(v: u32, min: u32) -> u32 {
    (v / 2).max(min)
}

fn double(v: u32, max: u32) -> u32 {
    v.saturating_mul(2).clamp(1, max)
}

pub fn apply_action(config: TunableConfig, action: ActionId) -> TunableConfig {
    let mut c = config;
    match action {
        ActionId::READAHEAD_DOWN => c.readahead_pages /= 2,
        ActionId::READAHEAD_UP => c.readahead_pages = double(c.readahead_pages, MAX_READAHEAD_PAGES),
        ActionId::QUEUE_DOWN => c.queue_depth = halve(c.queue_depth, 1),
        ActionId::QUEUE_UP => c.queue_depth = double(c.queue_depth, MAX_QUEUE_DEPTH),
        ActionId::CACHE_DOWN => c.cache_pages = halve(c.cache_pages, 1),
        ActionId::CACHE_UP => c.cache_pages = double(c.cache_pages, MAX_CACHE_PAGES),
        _ => {}
    }
    c
}

/// Index of the largest value; the lowest index wins ties.
pub fn greedy(q_values: &[f32]) -> ActionId {
    let mut best = 0;
    for (i, &q) in q_values.iter().enumerate().take(ACTION_COUNT) {
        if q > q_values[best] {
            best = i;
        }
    }
    ActionId(best as u8)
}

/// Epsilon-greedy choice; exploration is uniform over the row's actions.
pub fn select_action<R: Rng + ?Sized>(q_values: &[f32], epsilon: f64, rng: &mut R) -> ActionId {
    if rng.gen::<f64>() < epsilon {
        ActionId(rng.gen_range(0..q_values.len().min(ACTION_COUNT) as u8))
    } else {
        greedy(q_values)
    }
}

/// Linear decay from `start` to `end` over `decay_steps` decisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonSchedule {
    pub start: f64,
    pub end: f64,
    pub decay_steps: u64,
}

impl Default for EpsilonSchedule {
    fn default() -> Self {
        EpsilonSchedule {
            start: 1.0,
            end: 0.05,
            decay_steps: 2000,
        }
    }
}

impl EpsilonSchedule {
    pub fn value(&self, step: u64) -> f64 {
        if self.decay_steps == 0 || step >= self.decay_steps {
            return self.end;
        }
        let t = step as f64 / self.decay_steps as f64;
        self.start + (self.end - self.start) * t
    }
}
