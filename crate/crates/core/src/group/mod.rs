//! Finite groups as multiplication tables, their endomorphisms, and
//! ordinary and twisted conjugacy.

pub mod catalog;
mod conjugacy;
mod endo;
mod finite;

pub use conjugacy::{eventual_image, ordinary_conjugacy_classes, phi_conjugacy_classes, ConjugacyPartition, EventualImage};
pub use endo::{all_endomorphisms, endo_from_generator_images, GroupEndomorphism};
pub use finite::{group_from_permutations, FiniteGroup, DEFAULT_ORDER_CAP};
