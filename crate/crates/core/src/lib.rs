//! Exact divisor class theory for positive normal affine monoids.
//!
//! Given a pointed full-dimensional rational cone (by generators or by
//! support forms), this crate computes the divisor class group of the
//! associated monoid algebra, enumerates conic divisor classes with their
//! cell volumes, classifies Cohen-Macaulay divisor classes over Segre
//! products, and evaluates Hilbert-Kunz functions and multiplicities.
//!
//! All arithmetic is exact: integers are arbitrary precision and every
//! geometric quantity is a rational number. No floating point is used
//! anywhere.

pub mod classgroup;
pub mod cone;
pub mod conic;
pub mod error;
pub mod hk;
pub mod linalg;
pub mod polyhedra;
pub mod presets;
pub mod segre;

pub use classgroup::{class_group, ClassGroup, ClassLabel, DivisorialIdeal};
pub use cone::{Cone, SigmaValue};
pub use conic::{
    conic_polytope, enumerate_conic_classes, is_conic, ConicPolytope, ConicRow, ConicTable,
};
pub use error::{Error, Result};
pub use hk::{
    fit_quasi_polynomial, frobenius_colength_oracle, hk_function, hk_multiplicity,
    is_totally_unimodular, min_generators, multiplicity_vector, GeneratorSet, MultiplicityVector,
    QuasiPolynomial,
};
pub use linalg::{primitive_part, smith_normal_form, IntMatrix, SmithDecomposition};
pub use polyhedra::{feasible, split, CellPiece, LinConstraint, LinearSystem, Rel};
pub use segre::{
    cm_permutation, cm_region, cm_region_with_depth, depth, is_cm, veronese_segre_cm_set,
    GradedFactor, SegreClass,
};

/// Arbitrary precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number used throughout.
pub type Rat = num_rational::BigRational;

pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

pub(crate) fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}
