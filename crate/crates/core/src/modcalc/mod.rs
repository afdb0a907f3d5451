//! Modules over local complete intersections: presentations, resolutions,
//! Ext, isomorphism testing and numerical invariants.

pub mod ideal;
pub mod invariants;
pub mod iso;
pub mod module;
pub mod resolution;
pub mod ring;

pub use ideal::Ideal;
pub use invariants::{annihilator, classify, invariants, regular_sequence_in, socle, Classification, Extended, InvariantsRecord};
pub use iso::{hom_maps, is_isomorphic, is_stably_equivalent, iso_witness, strip_free_summands, Stripped};
pub use module::PresentedModule;
pub use resolution::{dual, ext, resolve, syzygy, transpose, FreeResolution, ProjDim};
pub use ring::{make_ring, QuotientRing, Ring};
