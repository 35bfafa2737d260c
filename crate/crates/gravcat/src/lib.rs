//! Thermal two-qubit gravitational cat states: channels, measures, sweeps.
//!
//! Two massive particles, each trapped in a double-well potential, form a
//! pair of effective qubits coupled only through gravity. This crate builds
//! the two-qubit Hamiltonian and its Gibbs state, pushes that state through
//! classical dephasing channels (constant and exponentially decaying
//! stochastic fields, power-law classical noise) and a weak-measurement
//! reversal map, and evaluates correlation and purity estimators on the
//! result: steerability (ST), Bell nonlocality (BN), concurrence (CN),
//! purity (PR) and an entanglement witness (EW).
//!
//! The primary interface is the `examples/` directory; each example is a
//! runnable tour of one capability:
//!
//! ```text
//! cargo run --example spectrum_crossover          # energy levels vs gamma
//! cargo run --example thermal_state_tour          # Gibbs state + measures
//! cargo run --example constant_field_witness      # EW under a constant stochastic field
//! cargo run --example decaying_field_witness      # EW revival under a decaying field
//! cargo run --example pl_noise_dephasing          # measure decay under power-law noise
//! cargo run --example weak_measurement_reversal   # reversal protection surface
//! ```
//!
//! A thin CLI (`gravcat run|presets|selfcheck|gnuplot`) exposes the same
//! sweep engine for scripted use; see the README for the CSV and config
//! contracts.
//!
//! Numeric conventions: hbar = k_B = 1; basis order |00>, |01>, |10>, |11>;
//! all states are validated 4x4 density matrices.

pub mod channels;
pub mod error;
pub mod measures;
pub mod model;
pub mod scenario;
pub mod selfcheck;
pub mod smallmat;

pub use error::CoreError;
pub use smallmat::{ComplexMatrix, DensityMatrix, C64};
