use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::action::{greedy, select_action, ActionId, EpsilonSchedule, ACTION_COUNT};
use super::AgentError;
use crate::features::FEATURE_COUNT;
use crate::neuralnet::{Gradients, Mlp};

#[derive(Debug, Clone, PartialEq)]
pub struct Transition<S> {
    pub state: S,
    pub action: ActionId,
    pub reward: f64,
    pub next_state: S,
    pub terminal: bool,
}

pub type VectorTransition = Transition<Vec<f32>>;

/// Fixed-capacity ring of transitions with a seeded uniform sampler.
#[derive(Debug, Clone)]
pub struct ReplayBuffer<T> {
    capacity: usize,
    items: Vec<T>,
    next: usize,
    rng: ChaCha8Rng,
}

impl<T: Clone> ReplayBuffer<T> {
    pub fn new(capacity: usize, seed: u64) -> Self {
        assert!(capacity > 0, "replay capacity must be positive");
        ReplayBuffer {
            capacity,
            items: Vec::with_capacity(capacity.min(1 << 16)),
            next: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Inserts, overwriting the oldest entry once full.
    pub fn push(&mut self, item: T) {
        if self.items.len() < self.capacity {
            self.items.push(item);
        } else {
            self.items[self.next] = item;
        }
        self.next = (self.next + 1) % self.capacity;
    }

    /// Uniform sample with replacement.
    pub fn sample(&mut self, n: usize) -> Vec<T> {
        if self.items.is_empty() {
            return Vec::new();
        }
        (0..n)
            .map(|_| self.items[self.rng.gen_range(0..self.items.len())].clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DqnParams {
    pub hidden: Vec<usize>,
    pub gamma: f64,
    pub learning_rate: f32,
    pub epsilon: EpsilonSchedule,
    pub replay_capacity: usize,
    pub batch_size: usize,
    pub target_sync_interval: u64,
}

impl Default for DqnParams {
    fn default() -> Self {
        DqnParams {
            hidden: vec![32, 32],
            gamma: 0.9,
            learning_rate: 0.01,
            epsilon: EpsilonSchedule::default(),
            replay_capacity: 4096,
            batch_size: 32,
            target_sync_interval: 250,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DqnAgent {
    pub online: Mlp,
    pub target: Mlp,
    pub replay: ReplayBuffer<VectorTransition>,
    pub params: DqnParams,
    train_steps: u64,
    decisions: u64,
    explore: bool,
    rng: ChaCha8Rng,
}

impl DqnAgent {
    pub fn new(params: DqnParams, seed: u64) -> Result<Self, AgentError> {
        let mut sizes = vec![FEATURE_COUNT];
        sizes.extend(&params.hidden);
        sizes.push(ACTION_COUNT);
        let online = Mlp::new(&sizes, seed)?;
        Self::from_network(online, params, seed)
    }

    pub fn from_network(online: Mlp, params: DqnParams, seed: u64) -> Result<Self, AgentError> {
        if online.input_len() != FEATURE_COUNT || online.output_len() != ACTION_COUNT {
            return Err(AgentError::InvalidShape);
        }
        if !(0.0..1.0).contains(&params.gamma) || params.batch_size == 0 || !(params.learning_rate > 0.0) {
            return Err(AgentError::InvalidHyperparams);
        }
        Ok(DqnAgent {
            target: online.clone(),
            online,
            replay: ReplayBuffer::new(params.replay_capacity, seed ^ 0x9e37_79b9_7f4a_7c15),
            params,
            train_steps: 0,
            decisions: 0,
            explore: true,
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)),
        })
    }

    pub fn train_steps(&self) -> u64 {
        self.train_steps
    }

    pub fn set_exploration(&mut self, on: bool) {
        self.explore = on;
    }

    pub fn q_values(&self, state: &[f32]) -> Result<Vec<f32>, AgentError> {
        Ok(self.online.forward(state)?)
    }

    pub fn act(&mut self, state: &[f32]) -> Result<ActionId, AgentError> {
        let q = self.q_values(state)?;
        if !self.explore {
            return Ok(greedy(&q));
        }
        let eps = self.params.epsilon.value(self.decisions);
        self.decisions += 1;
        Ok(select_action(&q, eps, &mut self.rng))
    }

    /// One SGD step on the mean squared TD error of `batch`. Targets come
    /// from the target network; returns the loss before the step.
    pub fn dqn_train_step(&mut self, batch: &[VectorTransition]) -> Result<f64, AgentError> {
        if batch.is_empty() {
            return Err(AgentError::EmptyBatch);
        }
        let n = batch.len() as f32;
        let mut grads = Gradients::zeros_like(&self.online);
        let mut loss = 0.0f64;
        for t in batch {
            let y = if t.terminal {
                t.reward
            } else {
                let next = self.target.forward(&t.next_state)?;
                let best = next.iter().copied().fold(f32::NEG_INFINITY, f32::max);
                t.reward + self.params.gamma * best as f64
            };
            let pred = self.online.forward(&t.state)?;
            let err = pred[t.action.index()] as f64 - y;
            loss += err * err;
            let mut out_grad = vec![0.0f32; ACTION_COUNT];
            out_grad[t.action.index()] = 2.0 * err as f32 / n;
            grads.add_assign(&self.online.backward(&t.state, &out_grad)?);
        }
        self.online.sgd_step(&grads, self.params.learning_rate)?;
        Ok(loss / batch.len() as f64)
    }

    pub fn target_sync(&mut self) {
        self.target = self.online.clone();
    }

    /// Stores the transition and, once the buffer holds a full batch, runs a
    /// training step and syncs the target network when due.
    pub fn learn(&mut self, transition: VectorTransition) -> Result<Option<f64>, AgentError> {
        self.replay.push(transition);
        if self.replay.len() < self.params.batch_size {
            return Ok(None);
        }
        let batch = self.replay.sample(self.params.batch_size);
        let loss = self.dqn_train_step(&batch)?;
        self.train_steps += 1;
        if self.params.target_sync_interval > 0 && self.train_steps % self.params.target_sync_interval == 0 {
            self.target_sync();
        }
        Ok(Some(loss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transition(state: Vec<f32>, a: usize, r: f64, terminal: bool) -> VectorTransition {
        Transition {
            next_state: state.clone(),
            state,
            action: ActionId::new(a).unwrap(),
            reward: r,
            terminal,
        }
    }

    #[test]
    fn replay_is_bounded_and_deterministic() {
        let mut a = ReplayBuffer::new(4, 5);
        let mut b = ReplayBuffer::new(4, 5);
        for i in 0..10 {
            a.push(i);
            b.push(i);
        }
        assert_eq!(a.len(), 4);
        let sa = a.sample(16);
        assert_eq!(sa, b.sample(16));
        assert!(sa.iter().all(|x| (6..10).contains(x)));
    }

    #[test]
    fn terminal_unit_reward_loss() {
        let mut agent = DqnAgent::new(DqnParams::default(), 3).unwrap();
        // zero the output layer so every prediction is 0
        let last = agent.online.depth() - 1;
        agent.online.weights_mut()[last].iter_mut().for_each(|w| *w = 0.0);
        let loss = agent.dqn_train_step(&[transition(vec![0.5; 7], 2, 1.0, true)]).unwrap();
        assert!((loss - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_point_batch_leaves_parameters() {
        let mut agent = DqnAgent::new(DqnParams::default(), 4).unwrap();
        let s = vec![0.2f32; 7];
        let q = agent.q_values(&s).unwrap();
        let batch = vec![transition(s, 1, q[1] as f64, true)];
        let before = agent.online.clone();
        let loss = agent.dqn_train_step(&batch).unwrap();
        assert_eq!(loss, 0.0);
        assert_eq!(agent.online, before);
    }

    #[test]
    fn target_sync_semantics() {
        let mut agent = DqnAgent::new(DqnParams::default(), 8).unwrap();
        let probe: Vec<Vec<f32>> = (0..5).map(|i| vec![i as f32 * 0.2; 7]).collect();
        let batch = vec![transition(probe[1].clone(), 0, 3.0, true)];
        agent.dqn_train_step(&batch).unwrap();
        assert_ne!(agent.online, agent.target);
        agent.target_sync();
        for x in &probe {
            assert_eq!(agent.online.forward(x).unwrap(), agent.target.forward(x).unwrap());
        }
        let snapshot = agent.target.clone();
        agent.target_sync();
        assert_eq!(agent.target, snapshot);
        agent.dqn_train_step(&batch).unwrap();
        assert_ne!(agent.online, agent.target);
    }

    #[test]
    fn loss_falls_on_stationary_stream() {
        let params = DqnParams {
            hidden: vec![16, 16],
            ..DqnParams::default()
        };
        let mut agent = DqnAgent::new(params, 21).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut losses = Vec::new();
        for _ in 0..500 {
            let batch: Vec<VectorTransition> = (0..32)
                .map(|_| {
                    let s: Vec<f32> = (0..7).map(|_| rng.gen::<f32>()).collect();
                    let a = rng.gen_range(0..7);
                    let r = (s[a] as f64) - 0.5 * s[6] as f64 + 0.1 * a as f64;
                    transition(s, a, r, true)
                })
                .collect();
            losses.push(agent.dqn_train_step(&batch).unwrap());
        }
        let start: f64 = losses[..10].iter().sum::<f64>() / 10.0;
        let end: f64 = losses[490..].iter().sum::<f64>() / 10.0;
        assert!(end <= 0.5 * start, "start {start} end {end}");
    }
}
