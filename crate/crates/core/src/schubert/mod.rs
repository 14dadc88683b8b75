//! Schubert calculus on products of Grassmannians.

pub mod chern;
pub mod cohomology;
pub mod lr;

pub use chern::{
    chern_dual_universal, chern_dual_universal_on, chern_tensor_product, ChernData, ChernRing, FormalPoly,
    DEFAULT_RANK_LIMIT,
};
pub use cohomology::{CohomologyElement, Grassmannian, SchubertClassTuple};
pub use lr::{lr_coefficient, schubert_product};
