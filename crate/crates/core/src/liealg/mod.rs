//! Root systems, Chevalley bases, embeddings and finite-dimensional representations.

pub mod chevalley;
pub mod embedding;
pub mod reps;
pub mod roots;

pub use chevalley::{format_lie, ChevalleyBasis, GenKind, LieElem};
pub use embedding::Embedding;
pub use reps::{freudenthal_multiplicity, standard_rep_b3, weyl_dimension, MatrixRep};
pub use roots::{CartanType, RootSystem, Weight};

use std::sync::Arc;

/// Build the Chevalley basis of a supported type.
pub fn build_algebra(ty: CartanType) -> Arc<ChevalleyBasis> {
    Arc::new(ChevalleyBasis::new(ty))
}
