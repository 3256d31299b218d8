//! Diagrams on a line: labeled external points, unlabeled internal vertices,
//! and oriented segments, with the orientation-set sign rules.
//!
//! A [`Diagram`] stores its orientation implicitly in the normal order
//! `[internal vertices by label, segments in list order]`; inside
//! totalizations the external points are prepended as `[e_1, …, e_n]`.
//! Every operation that permutes orientation elements returns the Koszul sign
//! of bringing the result back to normal order.

mod canon;
mod config;
mod contract;
mod diagram;
mod enumerate;
mod text;

pub use canon::{canonicalize, canonicalize_unchecked};
pub use config::{Config, OrientationElement};
pub use contract::{contract, contractible_segments};
pub use diagram::{Diagram, Endpoint};
pub use enumerate::{enumerate_diagrams, enumerate_normalized, enumerate_with_internal};
pub use text::{format_diagram, parse_diagram};
