//! Exact computations with finite commutative rings: Howell forms over `Z/N`,
//! ring constructions (quotients, products, trivial extensions, amalgamations),
//! spectra, minimal free resolutions, and executable checks of the structural
//! lemmas about amalgamated algebras along an ideal.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod amalgam;
pub mod checks;
pub mod error;
pub mod group;
pub mod instances;
pub mod linalg;
pub mod module_spec;
pub mod resolution;
pub mod ring;
pub mod spectrum;
pub mod submodule;
pub mod zn;

pub use error::{Error, Result};
pub use group::AdditiveGroup;
pub use linalg::{HowellBasis, ZnMatrix};
pub use module_spec::{trivial_extension, ModuleSpec};
pub use ring::{verify_ring, FiniteRing, RingHom};
pub use spectrum::LocalRing;
pub use submodule::{Ideal, ModuleQuotient, Submodule};
pub use zn::Cardinality;
