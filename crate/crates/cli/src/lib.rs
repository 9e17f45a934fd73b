//! Command-line front end for the quantum opinion games.

pub mod commands;
pub mod config;
pub mod report;
pub mod reproduce;

use mw_opinion::equilibrium::EquilibriumError;
use mw_opinion::games::GameError;
use mw_opinion::mw::MwError;
use mw_opinion::tensor::TensorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Mw(#[from] MwError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
}

/// Exit status for runs where at least one claim failed.
pub const EXIT_CLAIM_FAILURE: i32 = 1;
/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
