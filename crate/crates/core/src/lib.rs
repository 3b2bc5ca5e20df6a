//! Desk-scale simulator of all-photonic quantum teleportation between two
//! dissimilar quantum-dot photon sources over a hybrid fiber/free-space
//! network.
//!
//! The crate is organised in layers that mirror the experiment:
//!
//! * [`quantum`] — polarization-qubit linear algebra: states, operators,
//!   fidelity, concurrence, tensor products and partial traces.
//! * [`emitter`] — quantum-dot physics: fine-structure splitting under
//!   strain, magnetic-field tuning, and the time-averaged entangled-pair
//!   density matrix of the biexciton-exciton cascade.
//! * [`interference`] — time-resolved two-photon interference between
//!   dissimilar photons, detector jitter, window-dependent HOM visibility
//!   and the effective Bell-state-measurement operators.
//! * [`teleport`] — the teleportation protocol: BSM conditioning, Pauli
//!   corrections, average fidelity and the resource landscape.
//! * [`event`] — Monte Carlo time-tag generation across the network
//!   (clocks, losses, jitter, dark counts), clock synchronization and
//!   coincidence analysis.
//! * [`tomography`] — state and process reconstruction from coincidence
//!   counts, including χ-matrix extraction.

pub mod emitter;
pub mod event;
pub mod interference;
pub mod quantum;
pub mod teleport;
pub mod tomography;

use thiserror::Error;

/// Errors surfaced by the simulation and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no solution in search range: {0}")]
    NoSolution(String),
    #[error("visibility undefined: no cross-polarized counts in window")]
    UndefinedVisibility,
    #[error("retained fraction undefined: no events in reference window")]
    UndefinedFraction,
    #[error("degenerate teleportation outcome: projection probability is zero")]
    DegenerateOutcome,
    #[error("clock synchronization failed: {0}")]
    SyncFailure(String),
    #[error("incomplete tomography data: {0}")]
    IncompleteTomography(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Reduced Planck constant in µeV·ps.
pub const HBAR_UEV_PS: f64 = 658.211_956_9;

/// Bohr magneton in µeV/T.
pub const MU_B_UEV_PER_T: f64 = 57.88;
