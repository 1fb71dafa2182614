//! Formal expansions, subdivision operators and Laurent expansions.

pub mod expand;
pub mod expansion;
pub mod kernel;
pub mod subdivision;

pub use expand::{laurent_expand, laurent_expand_germsum, move_to_support};
pub use expansion::{phi, DecoratedCone, FormalExpansion};
pub use kernel::{kernel_generators, kernel_type_one, kernel_type_two};
pub use subdivision::{delta_op, stellar_subdivision, subdivide_simple, subdivision_operator};
