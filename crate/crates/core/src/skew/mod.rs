//! Normal-ordered arithmetic in the skew algebras `k[z,z⁻¹]⟨z∂z⟩`,
//! `k[η]⟨Φ,Φ⁻¹⟩` and local operators over `k((x))`.

mod diffnce;
mod diffop;
mod local;
mod stirling;

pub use diffnce::DiffnceOp;
pub use diffop::{DiffOp, Presentation};
pub use local::{germ_at_zero, invert_coordinate, translate_op, LocalDiffOp};
pub use stirling::{stirling_first_signed, stirling_second};
