//! Deterministic simulation library for a RIS-aided full-duplex mmWave MIMO
//! link: duplex-array geometry, sparse channel synthesis, joint
//! downlink-uplink compressive channel estimation, angular-domain passive
//! beamforming, hybrid WMMSE beamforming with self-interference cancellation,
//! and a Monte Carlo experiment harness with a CLI front end.

pub mod beamforming;
pub mod channels;
pub mod dictionaries;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod pipelines;
pub mod recovery;

pub use error::{Result, SimError};
