//! Finite fields, multivariate polynomials over them, and the polynomial parser.

pub mod field;
pub mod fp_poly;
pub mod gf;
pub mod multipoly;
pub mod parse;
pub mod variety;

pub use field::{
    build_field, enumerate_elements, extend_and_embed, field_arithmetic, Embedding, FieldElement,
    FieldOp, FieldSpec,
};
pub use gf::Gf;
pub use multipoly::{Coeff, FieldMultiPoly, IntMultiPoly, MultiPoly, VarStyle};
pub use parse::parse_poly;
pub use variety::{Ambient, VarietySpec};

/// Homogenizes an affine polynomial of total degree `d` with the new variable `x0`.
pub fn homogenize<C: Coeff>(f: &MultiPoly<C>, d: u32) -> crate::Result<MultiPoly<C>> {
    f.homogenize(d)
}
