//! Exact knot invariants from planar diagram codes.

mod bracket;
mod goeritz;
mod laurent;
mod profile;

pub use bracket::{
    bracket_with_states, determinant, jones, kauffman_bracket, MAX_STATE_SUM_CROSSINGS,
};
pub use goeritz::goeritz_determinant;
pub use laurent::LaurentPoly;
pub use profile::{profile, same_knot_type, InvariantProfile, SameKnotType};
