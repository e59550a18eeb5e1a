use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::action::{greedy, select_action, ActionId, EpsilonSchedule, ACTION_COUNT};
use super::AgentError;
use crate::features::StateId;

/// Σ γ^t · r_t, t counted from zero.
pub fn discounted_return(rewards: &[f64], gamma: f64) -> f64 {
    let mut total = 0.0;
    let mut weight = 1.0;
    for &r in rewards {
        total += weight * r;
        weight *= gamma;
    }
    total
}

/// Dense `[state][action]` table of 32-bit Q-values.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    states: usize,
    actions: usize,
    values: Vec<f32>,
    pub alpha: f64,
    pub gamma: f64,
}

impl QTable {
    pub fn new(states: usize, actions: usize, alpha: f64, gamma: f64) -> Result<Self, AgentError> {
        if states == 0 || actions == 0 {
            return Err(AgentError::InvalidShape);
        }
        if !(alpha > 0.0 && alpha <= 1.0) || !(0.0..1.0).contains(&gamma) {
            return Err(AgentError::InvalidHyperparams);
        }
        Ok(QTable {
            states,
            actions,
            values: vec![0.0; states * actions],
            alpha,
            gamma,
        })
    }

    pub(crate) fn from_values(states: usize, actions: usize, values: Vec<f32>) -> Result<Self, AgentError> {
        if states == 0 || actions == 0 || values.len() != states * actions {
            return Err(AgentError::InvalidShape);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(AgentError::Corrupt);
        }
        Ok(QTable {
            states,
            actions,
            values,
            alpha: 0.1,
            gamma: 0.9,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn row(&self, s: StateId) -> &[f32] {
        let start = s.0 as usize * self.actions;
        &self.values[start..start + self.actions]
    }

    pub fn get(&self, s: StateId, a: ActionId) -> f32 {
        self.row(s)[a.index()]
    }

    pub fn set(&mut self, s: StateId, a: ActionId, v: f32) {
        let idx = s.0 as usize * self.actions + a.index();
        self.values[idx] = v;
    }

    pub fn max_value(&self, s: StateId) -> f32 {
        self.row(s).iter().copied().fold(f32::NEG_INFINITY, f32::max)
    }

    /// Q(s,a) += α · (r + γ · max_a' Q(s',a') − Q(s,a)). Returns the new value.
    pub fn q_update(&mut self, s: StateId, a: ActionId, r: f64, s_next: StateId) -> f32 {
        let target = r + self.gamma * self.max_value(s_next) as f64;
        self.move_toward(s, a, target)
    }

    /// Terminal form of the update: the bootstrap term is dropped.
    pub fn q_update_terminal(&mut self, s: StateId, a: ActionId, r: f64) -> f32 {
        self.move_toward(s, a, r)
    }

    fn move_toward(&mut self, s: StateId, a: ActionId, target: f64) -> f32 {
        let q = self.get(s, a) as f64;
        let updated = (q + self.alpha * (target - q)) as f32;
        self.set(s, a, updated);
        updated
    }
}

/// Epsilon-greedy tabular Q-learner.
#[derive(Debug, Clone)]
pub struct TabularAgent {
    pub table: QTable,
    pub epsilon: EpsilonSchedule,
    decisions: u64,
    explore: bool,
    rng: ChaCha8Rng,
}

impl TabularAgent {
    pub fn new(
        states: usize,
        alpha: f64,
        gamma: f64,
        epsilon: EpsilonSchedule,
        seed: u64,
    ) -> Result<Self, AgentError> {
        Ok(Self::from_table(QTable::new(states, ACTION_COUNT, alpha, gamma)?, epsilon, seed))
    }

    pub fn from_table(table: QTable, epsilon: EpsilonSchedule, seed: u64) -> Self {
        TabularAgent {
            table,
            epsilon,
            decisions: 0,
            explore: true,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn decisions(&self) -> u64 {
        self.decisions
    }

    pub fn set_exploration(&mut self, on: bool) {
        self.explore = on;
    }

    pub fn current_epsilon(&self) -> f64 {
        if self.explore {
            self.epsilon.value(self.decisions)
        } else {
            0.0
        }
    }

    pub fn act(&mut self, s: StateId) -> ActionId {
        if !self.explore {
            return greedy(self.table.row(s));
        }
        let eps = self.current_epsilon();
        self.decisions += 1;
        select_action(self.table.row(s), eps, &mut self.rng)
    }

    pub fn learn(&mut self, s: StateId, a: ActionId, r: f64, s_next: StateId, terminal: bool) {
        if terminal {
            self.table.q_update_terminal(s, a, r);
        } else {
            self.table.q_update(s, a, r, s_next);
        }
    }
}
