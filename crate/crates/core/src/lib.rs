//! 3D bin packing with heterogeneous containers and 6-way box rotation.
//!
//! Candidate solutions are pairs of permutations: a box packing sequence
//! and a container loading sequence. A best-matching heuristic decodes
//! them against an empty-maximal-space model of free space, and a
//! genetic algorithm searches the permutation space on a deterministic
//! coordinator/worker engine.
//!
//! ```
//! use binpack3d::{engine, GaConfig, Instance};
//!
//! let inst = Instance::parse("2 1\n1 5 5 5\n2 5 5 5\n1 10 5 5")?;
//! let cfg = GaConfig {
//!     pop_size: 8,
//!     generations: 5,
//!     seed: 1,
//!     ..GaConfig::default()
//! };
//! let report = engine::run(&inst, &cfg)?;
//! assert_eq!(report.best.fitness, 1.0);
//! assert!(report.solution.feasible);
//! # Ok::<(), binpack3d::Error>(())
//! ```

pub mod cli;
pub mod engine;
pub mod error;
pub mod genetic;
pub mod model;
pub mod packer;

pub use error::{Error, Result};
pub use genetic::{GaConfig, Individual};
pub use model::{BoxSpec, Chromosome, ContainerSpec, Dims, Instance};
pub use packer::{decode, PackingSolution};
