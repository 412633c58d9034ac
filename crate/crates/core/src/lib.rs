//! Exact arithmetic for axes in finite-dimensional nonassociative algebras over ℚ or GF(p).
//!
//! Start from an [`Algebra`] (built directly, from the [`catalog`], or parsed with
//! [`parse_presentation`]), inspect candidate axes with [`axis_check`], generate
//! Miyamoto closures with [`axis_closure`] and build invariant forms with [`build_form`].

// Errors carry exact scalars; they are cold paths, so boxing buys nothing.
#![allow(clippy::result_large_err)]

pub mod linalg;
pub use linalg::*;
pub mod algebra;
pub use algebra::{Algebra, AlgebraBuilder, AlgebraError, Element, Subspace};
pub mod axis;
pub use axis::{
    axis_check, fusion_check, jordan_condition, jordan_label, special_check, subalgebra_sum_check, AxisError,
    AxisReport, Component, Decomposition, EigenPair, EigenvaluePair, FusionRule, FusionViolation, JordanLabel,
    NotAxisReason, SpecialReport,
};
pub mod catalog;
pub use catalog::{build, distinctness_demo, CatalogEntry, CatalogError, CatalogParams, Entry, NamedAxis};
pub mod miyamoto;
pub use miyamoto::{
    ab_identity_holds, axis_closure, axis_closure_with, conjugation_check, generating_maps, is_automorphism,
    miyamoto_map, module_closure, spanning_checks, AxisOrbit, CheckOutcome, ClosureMode, MiyamotoError, MiyamotoMap,
    SpanningReport, DEFAULT_CAP,
};
pub mod frobenius;
pub use frobenius::{
    a0s_check, build_form, homogeneous_pair, radical_report, uniqueness_check, verify_form, A0sReport,
    FormVerification, FrobeniusError, FrobeniusForm, OrthogonalityFailure, RadicalReport, SquareIntoZero,
    TransposePairing, Uniqueness, ZReport,
};
pub mod presentation;
pub use presentation::{
    parse_document, parse_element, parse_presentation, render_presentation, Document, MissingProduct, ParseError,
    ParseErrorKind, ProductLine,
};
