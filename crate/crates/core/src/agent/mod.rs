//! RL inference engine: action set, tabular Q-learning and a small DQN.

mod action;
mod dqn;
mod tabular;

use thiserror::Error;

pub use action::{
    apply_action, greedy, select_action, ActionId, EpsilonSchedule, ACTION_COUNT,
};
pub use dqn::{DqnAgent, DqnParams, ReplayBuffer, Transition, VectorTransition};
pub use tabular::{discounted_return, QTable, TabularAgent};

use crate::features::Observation;
use crate::neuralnet::{Mlp, NetError};

const MAGIC: &[u8; 4] = b"RLSA";
const VERSION: u8 = 1;
const KIND_TABULAR: u8 = 0;
const KIND_DQN: u8 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum AgentError {
    #[error("table or network shape is invalid")]
    InvalidShape,
    #[error("hyperparameter out of range")]
    InvalidHyperparams,
    #[error("training batch is empty")]
    EmptyBatch,
    #[error("network: {0}")]
    Net(#[from] NetError),
    #[error("agent bytes have bad magic or version")]
    BadHeader,
    #[error("unknown agent kind {0}")]
    UnknownKind(u8),
    #[error("agent bytes truncated or corrupt")]
    Corrupt,
}

/// A learning tuner: either a Q-table over discretized states or a DQN over
/// normalized feature vectors.
#[derive(Debug, Clone)]
pub enum Agent {
    Tabular(TabularAgent),
    Dqn(Box<DqnAgent>),
}

impl Agent {
    pub fn kind(&self) -> &'static str {
        match self {
            Agent::Tabular(_) => "tabular",
            Agent::Dqn(_) => "dqn",
        }
    }

    pub fn discount(&self) -> f64 {
        match self {
            Agent::Tabular(a) => a.table.gamma,
            Agent::Dqn(a) => a.params.gamma,
        }
    }

    pub fn set_exploration(&mut self, on: bool) {
        match self {
            Agent::Tabular(a) => a.set_exploration(on),
            Agent::Dqn(a) => a.set_exploration(on),
        }
    }

    pub fn act(&mut self, obs: &Observation) -> Result<ActionId, AgentError> {
        match self {
            Agent::Tabular(a) => Ok(a.act(obs.state)),
            Agent::Dqn(a) => a.act(&obs.input),
        }
    }

    pub fn learn(
        &mut self,
        prev: &Observation,
        action: ActionId,
        reward: f64,
        next: &Observation,
        terminal: bool,
    ) -> Result<(), AgentError> {
        match self {
            Agent::Tabular(a) => a.learn(prev.state, action, reward, next.state, terminal),
            Agent::Dqn(a) => {
                a.learn(Transition {
                    state: prev.input.to_vec(),
                    action,
                    reward,
                    next_state: next.input.to_vec(),
                    terminal,
                })?;
            }
        }
        Ok(())
    }

    /// Layer-count times input-width times output-width of the network, if any.
    pub fn complexity(&self) -> Option<u64> {
        match self {
            Agent::Tabular(_) => None,
            Agent::Dqn(a) => Some(a.online.complexity()),
        }
    }

    pub fn q_row(&self, obs: &Observation) -> Vec<f32> {
        match self {
            Agent::Tabular(a) => a.table.row(obs.state).to_vec(),
            Agent::Dqn(a) => a.q_values(&obs.input).unwrap_or_default(),
        }
    }
}

/// Serializes Q-values or network parameters. Hyperparameters, replay
/// contents and RNG state are not persisted.
pub fn save_agent(agent: &Agent) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    match agent {
        Agent::Tabular(a) => {
            out.push(KIND_TABULAR);
            out.extend_from_slice(&(a.table.states() as u32).to_le_bytes());
            out.extend_from_slice(&(a.table.actions() as u32).to_le_bytes());
            for v in a.table.values() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        Agent::Dqn(a) => {
            out.push(KIND_DQN);
            out.extend_from_slice(&a.online.to_bytes());
        }
    }
    out
}

/// Restores an agent saved by [`save_agent`] with default hyperparameters.
pub fn load_agent(bytes: &[u8]) -> Result<Agent, AgentError> {
    load_agent_with(bytes, &AgentParams::default())
}

pub fn load_agent_with(bytes: &[u8], params: &AgentParams) -> Result<Agent, AgentError> {
    if bytes.len() < 6 {
        return Err(AgentError::Corrupt);
    }
    if &bytes[..4] != MAGIC || bytes[4] != VERSION {
        return Err(AgentError::BadHeader);
    }
    let body = &bytes[6..];
    match bytes[5] {
        KIND_TABULAR => {
            if body.len() < 8 {
                return Err(AgentError::Corrupt);
            }
            let states = u32::from_le_bytes(body[0..4].try_into().expect("4 bytes")) as usize;
            let actions = u32::from_le_bytes(body[4..8].try_into().expect("4 bytes")) as usize;
            let payload = &body[8..];
            let expected = states.checked_mul(actions).and_then(|n| n.checked_mul(4));
            if expected != Some(payload.len()) || actions != ACTION_COUNT {
                return Err(AgentError::Corrupt);
            }
            let values = payload
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")))
                .collect();
            let mut table = QTable::from_values(states, actions, values)?;
            table.alpha = params.alpha;
            table.gamma = params.gamma;
            Ok(Agent::Tabular(TabularAgent::from_table(table, params.epsilon, params.seed)))
        }
        KIND_DQN => {
            let (net, used) = Mlp::from_bytes(body).map_err(|e| match e {
                NetError::BadHeader => AgentError::BadHeader,
                _ => AgentError::Corrupt,
            })?;
            if used != body.len() {
                return Err(AgentError::Corrupt);
            }
            let dqn = DqnAgent::from_network(net, params.dqn_params(), params.seed)?;
            Ok(Agent::Dqn(Box::new(dqn)))
        }
        k => Err(AgentError::UnknownKind(k)),
    }
}

/// Every agent hyperparameter in one place.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentParams {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon: EpsilonSchedule,
    pub replay_capacity: usize,
    pub batch_size: usize,
    pub target_sync_interval: u64,
    pub learning_rate: f32,
    pub hidden: Vec<usize>,
    pub seed: u64,
}

impl Default for AgentParams {
    fn default() -> Self {
        let d = DqnParams::default();
        AgentParams {
            alpha: 0.1,
            gamma: 0.9,
            epsilon: EpsilonSchedule::default(),
            replay_capacity: d.replay_capacity,
            batch_size: d.batch_size,
            target_sync_interval: d.target_sync_interval,
            learning_rate: d.learning_rate,
            hidden: d.hidden,
            seed: 0,
        }
    }
}

impl AgentParams {
    pub fn dqn_params(&self) -> DqnParams {
        DqnParams {
            hidden: self.hidden.clone(),
            gamma: self.gamma,
            learning_rate: self.learning_rate,
            epsilon: self.epsilon,
            replay_capacity: self.replay_capacity,
            batch_size: self.batch_size,
            target_sync_interval: self.target_sync_interval,
        }
    }

    pub fn tabular(&self, states: u32) -> Result<Agent, AgentError> {
        Ok(Agent::Tabular(TabularAgent::new(
            states as usize,
            self.alpha,
            self.gamma,
            self.epsilon,
            self.seed,
        )?))
    }

    pub fn dqn(&self) -> Result<Agent, AgentError> {
        Ok(Agent::Dqn(Box::new(DqnAgent::new(self.dqn_params(), self.seed)?)))
    }
}
