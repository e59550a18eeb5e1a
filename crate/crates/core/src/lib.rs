//! Storage-stack simulator with a reinforcement-learning tuner for
//! readahead, queue depth and page-cache size.
//!
//! The pieces form a closed loop: [`trace`] generates workloads, [`simenv`]
//! replays them against a modeled device, [`features`] turns completion
//! windows into observations, [`agent`] chooses knob adjustments, [`control`]
//! runs the observe/act/reward cycle and [`harness`] compares tuned runs
//! against baselines.

pub mod agent;
pub mod control;
pub mod features;
pub mod harness;
pub mod neuralnet;
pub mod par;
pub mod simenv;
pub mod trace;
