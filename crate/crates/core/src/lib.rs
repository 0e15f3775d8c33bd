//! Context-aware user association for two-tier macro/pico networks.
//!
//! Users and small cells rank each other with utilities that depend on device
//! type, QoS urgency, mobility and handover-failure risk. Association is a
//! many-to-one matching with externalities, solved by repeated deferred
//! acceptance and compared against a max-SINR baseline.

pub mod baseline;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod handover;
pub mod harness;
pub mod matching;
pub mod scenario;
pub mod utility;

pub use error::{Error, Result};
pub use matching::{solve, ContextGame, Matching, Outcome, SolveResult};
pub use scenario::{generate_scenario, load_config, CellId, Config, Scenario, UserId};
