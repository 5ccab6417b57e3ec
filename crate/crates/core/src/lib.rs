//! Including-degree relation mappings between finite universes, Pawlak rough
//! approximations, and an exhaustive checker for statements about them.
//!
//! Elements of a universe are dense indices `0..n`; labels only exist at the
//! IO boundary. Subsets and relation rows are `u64` membership masks, so a
//! universe holds at most [`MAX_ELEMENTS`] elements.
//!
//! The main entry points are:
//!
//! * [`structures`]: universes, subsets, binary relations and partitions.
//! * [`relmap`]: including degrees and the relation mapping `f(R)`.
//! * [`approx`]: lower/upper approximations.
//! * [`enumerate`]: canonical generators for partitions, subsets and maps.
//! * [`claims`]: the claim registry, per-instance evaluation and search.
//! * [`io`]: instance/report documents and text rendering.

pub mod approx;
pub mod claims;
pub mod enumerate;
mod error;
pub mod io;
pub mod relmap;
pub mod structures;

pub use error::{Condition, Error, Result};
pub use structures::MAX_ELEMENTS;
