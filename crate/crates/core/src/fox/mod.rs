//! Fox calculus, Alexander matrices, Magnus expansions and the cup product of a presentation.

mod alexander;
mod cup;
mod group_ring;
pub mod magnus;

pub use alexander::{alexander_matrix, h1_dim_at, AlexanderMatrix};
pub use cup::{cup_tensor, CupTensor};
pub use group_ring::{fox_derivative, GroupRingElement};
pub use magnus::{magnus_expand, MagnusExpansion, NcSeries, Substitution};
