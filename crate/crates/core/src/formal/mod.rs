//! Formal vector fields and formal coordinate changes on ℂⁿ, truncated at a
//! working degree.

mod field;
mod index;
mod map;
mod series;

pub use field::{bracket, star, FieldKey, FormalVectorField};
pub use index::MultiIndex;
pub use map::{
    apply_derivation, compose_field_map, compose_maps, invert_map, pushforward, pushforward_with_inverse, FormalMap,
};
pub use series::{Series, Substitution};
