//! Exact computation of Nash multiplicity sequences, orders of contact of
//! arcs with Rees algebras, and Hironaka's order function for hypersurfaces
//! over ℚ and prime fields.
//!
//! ```
//! use nashorder_core::poly::var_names;
//! use nashorder_core::{nash_sequence, normalized_contact, Arc, FieldSpec, MultiPoly, NashOptions, ReesAlgebra};
//!
//! let vars = var_names(&["x", "y"]);
//! let f = MultiPoly::parse("y^2 - x^3", &vars, FieldSpec::Prime(2))?;
//! let phi = Arc::parse(&vars, FieldSpec::Prime(2), &["t^2", "t^3"])?;
//!
//! let nash = nash_sequence(&f, &phi, NashOptions::default())?;
//! assert_eq!(nash.sequence, vec![2, 2, 2, 2, 1]);
//!
//! let g = ReesAlgebra::hypersurface(&f, 2)?.diff_closure();
//! let c = normalized_contact(&g, &phi)?;
//! assert_eq!(c.r_bar.to_string(), "2");
//! # Ok::<(), nashorder_core::Error>(())
//! ```

pub mod arc;
pub mod blowup;
pub mod contact;
pub mod elimination;
pub mod error;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rees;
pub mod series;
pub mod value;

pub use arc::Arc;
pub use blowup::{nash_sequence, persistence_oracle, NashOptions, NashReport};
pub use contact::{
    contact_order, integral_invariance_check, normalized_contact, phi_sample, ArcSampler, ContactResult,
    DependenceWitness, Parametrization, PhiSample, SamplerConfig, WitnessTerm,
};
pub use elimination::{
    minimizing_arc, ord_d, verify_main_theorem, EliminationMethod, EliminationResult, MonicPresentation, TheoremReport,
    Verdict,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use poly::{MultiPoly, Point};
pub use rees::{ReesAlgebra, WeightedPoly};
pub use series::TruncatedSeries;
pub use value::{ExtRational, Order};
