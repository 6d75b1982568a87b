//! Finite racks and quandles, reduced words in free and universal Coxeter
//! groups, the free involutory quandle in canonical form, and a few group
//! models whose involutions realise it.
//!
//! ```
//! use kei::{FiniteQuandle, orbits};
//!
//! let r5 = FiniteQuandle::dihedral(5).unwrap();
//! assert!(r5.is_involutory());
//! assert_eq!(orbits(&r5).unwrap().len(), 1);
//! ```

pub mod enveloping;
pub mod error;
pub mod fiq;
pub mod format;
pub mod group;
pub mod limits;
pub mod models;
pub mod morphism;
pub mod orbit;
pub mod quandle;
pub mod word;

pub use enveloping::{
    derive_equal, enveloping_presentation, enveloping_presentation_named, replay,
    verify_certificate, DerivationCertificate, DeriveBounds, PresentedGroup, Step,
};
pub use error::{Error, ParseError, Result};
pub use fiq::{
    fiq_ball, fiq_op, freeness_probe, universal_extend, Evaluator, FiqElement, ProbeReport,
    QuandleOp, Relation,
};
pub use group::FiniteGroup;
pub use limits::Limits;
pub use morphism::{are_isomorphic, enumerate_homs, hom_count, QuandleMorphism};
pub use orbit::{orbits, OrbitPartition};
pub use quandle::{FiniteQuandle, InvolutoryReport, QuandleReport, RackReport, RackViolation};
pub use word::{ball_enumerate, ball_size, evaluate, Alphabet, Letter, Mode, ReducedWord};
