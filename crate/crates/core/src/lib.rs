//! Finite-dimensional quantum channels, their time reversals, and exact
//! checks of the Jarzynski and Crooks fluctuation relations.
//!
//! The crate is organised bottom-up:
//!
//! * [`numkernel`]: dense complex linear algebra (eigendecomposition, SVD,
//!   PSD square roots, partial traces).
//! * [`channel`]: Kraus-form channels, Choi matrices, canonical Kraus form,
//!   dual maps and predicates.
//! * [`reversal`]: essential map and the reversal constructions (essential,
//!   dual, Crooks, two-Kraus, environmental).
//! * [`environment`]: Stinespring dilations and the environmental reversal.
//! * [`thermo`]: two-point-measurement statistics, entropy production and the
//!   fluctuation-relation checks.
//! * [`zoo`]: named channels and seeded random generators.
//! * [`cli`]: the `chanrev` command-line front end and its JSON file formats.

pub mod channel;
pub mod cli;
pub mod environment;
pub mod error;
pub mod numkernel;
pub mod reversal;
pub mod thermo;
pub mod zoo;

pub use channel::{ChoiMatrix, DensityMatrix, QuantumChannel};
pub use error::{Error, Result};
pub use numkernel::{ComplexMatrix, Complex64};
