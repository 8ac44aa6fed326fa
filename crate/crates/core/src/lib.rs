//! Relativistic hydrogen bound states through real conjugate spinors.
//!
//! The Dirac-Coulomb problem is recast in terms of two real two-component
//! spinors `Φ` and `Φ̃` that share one spherical spinor. `Φ` obeys a single
//! second-order equation (a Klein-Gordon equation plus a spin term `Γ`),
//! `Φ̃` follows from `Φ` by a first-order relation, and the usual bi-spinor
//! components are linear combinations of the two.
//!
//! Modules:
//!
//! * [`quantum`]: physical configuration, quantum-number bookkeeping, `γ`, `λ`.
//! * [`specfun`]: Kummer's confluent hypergeometric series.
//! * [`angular`]: spherical harmonics, ½⊗l coupling, spherical spinors.
//! * [`spectrum`]: bound-state energies and fine-structure utilities.
//! * [`wavefn`]: closed-form radial functions, the conjugate transform, normalization.
//! * [`verify`]: residual certification of every radial equation.
//! * [`cli`]: the `hydrogen-dirac` command line (tables in CSV or JSON).
//!
//! Everything internal runs in natural units (`ħ = c = m₀ = 1`): lengths are
//! reduced Compton wavelengths, energies are fractions of `m₀c²`, and the Bohr
//! radius is `1/α`.

pub mod angular;
pub mod cli;
mod error;
pub mod quad;
pub mod quantum;
pub mod specfun;
pub mod spectrum;
pub mod verify;
pub mod wavefn;

pub use error::{Error, Result};
pub use quantum::{EnergyValue, HalfInt, PhysicsConfig, QuantumState};
pub use spectrum::{energy, SpectrumRow};
pub use wavefn::{RadialGrid, RadialSolution};
