//! Finite poset-enriched categories and their exact completion.
//!
//! The crate models finite categories whose hom-sets carry a partial order
//! with composition monotone in both variables. On top of that it provides:
//!
//! - brute-force solvers for weak and strict finite limits and coinserters
//!   ([`limits`]),
//! - morphism-class detection (order-monos, so-morphisms, effective epis),
//!   congruence machinery and regularity/exactness verdicts ([`regexact`]),
//! - the exact completion of a weakly lex category together with its
//!   canonical embedding and the presentation of every morphism by
//!   coinserters ([`completion`]),
//! - poset-enriched functors, left-covering detection and the extension of a
//!   left covering functor to a regular functor on the completion
//!   ([`functor`]),
//! - an exhaustive enumerator for small categories used as a property-test
//!   corpus ([`enumerate`]), and a theorem battery over that corpus
//!   ([`battery`]).
//!
//! Everything is exact finite search: universal properties are decided by
//! quantifying over all generalized elements.

pub mod battery;
pub mod category;
pub mod completion;
pub mod diagram;
pub mod enumerate;
pub mod functor;
pub mod ids;
pub mod json;
pub mod limits;
pub mod par;
pub mod regexact;
pub mod report;

pub use category::{
    builtin, fixture_arrow, fixture_idem, fixture_one, validate_category, FinPosCategory,
    RawCategory, ValidationError,
};
pub use diagram::{Cone, DiagramSpec};
pub use ids::{MorphismId, ObjectId};
