//! Permutations, permutation groups and the coset, quotient, homomorphism
//! and product machinery built on element enumeration.

mod coset;
mod group;
mod hom;
mod permutation;
mod products;

pub use coset::{action_on_cosets, cosets, normal_core, quotient, Coset, Side};
pub use group::{default_cap, PermGroup, DEFAULT_CAP};
pub use hom::GroupHom;
pub use permutation::Permutation;
pub use products::{direct_product, power_map_images, semidirect_product};
