//! Numerical laboratory for the planar 1:1 co-orbital resonance.
//!
//! The crate implements the integrable horseshoe model of the co-orbital
//! three-body problem and everything needed to check it against the full
//! problem: the canonical charts (Poincaré, resonant, uncoupled), the full
//! Hamiltonian with a symplectic splitting integrator, quadrature-based
//! action-angle data of the mechanical system near the L3 separatrix, the
//! averaged secular spectrum with its near-separatrix asymptotics, the 2d
//! co-orbital torus embedding, fundamental-frequency extraction, and a
//! Melnikov small-divisor scan.
//!
//! The [`acceptance`] module bundles the quantitative checks behind the
//! `verify` subcommand of the CLI.

pub mod acceptance;
pub mod action_angle;
mod error;
pub mod exec;
pub mod freq;
pub mod kepler;
pub mod quad;
pub mod resonant;
pub mod secular;
pub mod separatrix;
pub mod system;
pub mod three_body;

pub use error::{Error, Result};
