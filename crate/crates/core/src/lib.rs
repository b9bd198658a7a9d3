//! Laplacian eigenvalue counting on trees by congruence diagonalization,
//! together with exact and weight-propagation dominating-set constructions.
//!
//! The main entry points are [`inertia::diagonalize`] and the counting
//! helpers built on it ([`inertia::mu`], [`inertia::nu`],
//! [`inertia::count_interval`]), the dominating-set algorithms in
//! [`domination`] and [`propagation`], and the invariant suite in [`verify`].
//!
//! For trees the Laplacian and signless Laplacian spectra coincide, so every
//! count here applies to both.

pub mod analysis;
pub mod contract;
pub mod domination;
pub mod generators;
pub mod inertia;
pub mod oracles;
pub mod propagation;
pub mod rational;
pub mod spectrum;
pub mod tree;
pub mod verify;

pub use rational::Rational;
pub use tree::{Tree, TreeError};
