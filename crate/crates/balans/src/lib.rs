//! Structural balance, trace-norm conditioning, and eigenvalue-based
//! systemic-risk indicators on signed correlation networks.
//!
//! The crate turns an asset-return panel into a sequence of signed
//! networks (rolling correlation matrices), then measures on each one:
//!
//! - **balance** — the global walk-balance index κ(G) = tr e^A / tr e^|A|,
//!   its per-node variant, and balanced/antibalanced classification;
//! - **conditioning** — the trace-norm condition number of e^{-A}, the
//!   signed/unsigned ratio ℛ(A) with three independent evaluation routes,
//!   and even/odd walk-weight dominance;
//! - **diffusion** — the averaged peer-pressure dynamics whose factorial
//!   schedule converges to x(∞) = e^A x(0);
//! - **risk** — asset-mispricing (AMRI) and concentration (CRF) ratios,
//!   empirical value-at-risk, and principal-component variance checks.
//!
//! The [`pipeline`] module covers the data path (CSV panels, log returns,
//! rolling windows, event detection, balance-conditional return bins,
//! random correlation matrices, and the ratio-vs-balance experiment);
//! [`cli`] wires everything into the `balans` binary. Each major
//! capability also has a runnable example under `examples/`.
//!
//! Determinism is a design goal throughout: fixed seeds give bit-identical
//! results whether or not windows are evaluated in parallel, and every
//! float written to CSV round-trips exactly.

pub mod balance;
pub mod cli;
pub mod conditioning;
pub mod diffusion;
pub mod error;
pub mod linalg;
pub mod output;
pub mod pipeline;
pub mod risk;
pub mod sgraph;
pub mod toy;

pub use error::{Error, Result};
pub use linalg::{eig_sym, SpectralDecomposition, SymmetricMatrix};
pub use sgraph::{NetworkKind, SignedNetwork, SpectralPair};
