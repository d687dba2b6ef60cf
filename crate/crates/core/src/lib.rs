//! Exact lattice-polytope toolkit: cracked polytopes, scaffoldings, Laurent
//! inversion, reflexive pieces and the classification of cracked 3-topes.

pub mod classifier;
pub mod cone;
pub mod cracked;
pub mod dd;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod ks_io;
pub mod lattice;
pub mod laurent;
pub mod normal_form;
pub mod pieces;
pub mod polytope;
pub mod scaffolding;

pub use cone::Cone;
pub use error::{Error, Result};
pub use normal_form::{normal_form, Mode, NormalFormKey};
pub use polytope::{Facet, Point, Polytope};
