//! Spin precession and EPR correlations of particle pairs orbiting a
//! Kerr-Newman black hole.
//!
//! The pipeline runs metric → Christoffel symbols (dual-number AD) → spin
//! connection → local Lorentz transformation → Wigner rotation → two-spin
//! state and CHSH correlators. [`doran`] covers the horizon-regular chart of
//! an infalling observer.

pub mod config;
pub mod connection;
pub mod doran;
pub mod dual;
pub mod epr;
pub mod error;
pub mod expm;
pub mod orbit;
pub mod spacetime;
pub mod sweep;
pub mod wigner;

pub use error::{PhysicsError, Result};
