//! Exact lower-bound machinery for the border rank of matrix multiplication.
//!
//! Koszul flattenings of the matrix multiplication tensor, the diagonal
//! combinatorics behind their reduced ranks, closed-form bound tables, and
//! Schubert-calculus obstructions to compressing tensors.

pub mod bounds;
pub mod compression;
pub mod error;
pub mod exact_linalg;
pub mod koszul;
pub mod order;
pub mod partition;
pub mod schubert;
pub mod subset;
pub mod tensor;
pub mod verify;

pub use num_bigint::BigInt;

pub use bounds::{best_bound, previous_bound, table_row, theorem_bound, BoundResult, TableRow};
pub use compression::{summarize, CompressionProfile, CompressionSummary};
pub use error::{Error, Result};
pub use exact_linalg::{rank_certified, rank_mod_p, IntMatrix, PrimeField, PrimeFieldMatrix, DEFAULT_PRIMES};
pub use koszul::{
    koszul_matrix, reduced_flattening, reduced_flattening_rank, FlatteningRank, KoszulMatrixSpec, Projection,
};
pub use order::{f_lambda, g, SourceBasisLabel, TargetBasisLabel};
pub use tensor::{matmul_tensor, MatMulSpec, Mode, RemovedSlotSet, Tensor3, YoungDiagram};
pub use verify::{run_suite, Suite, SuiteReport};
