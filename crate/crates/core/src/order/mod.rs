//! Finite posets, their standard families and combinators, linear
//! extensions, realizers and chain-product embeddings.

pub mod embedding;
pub mod families;
pub mod linear;
pub mod poset;

pub use embedding::{check_embedding, is_embedding, Embedding, EmbeddingFailure, EmbeddingViolation};
pub use families::*;
pub use linear::{linearize, linearize_default, linearize_reversing, LinearExtension, Realizer, RealizerDefect};
pub use poset::{Poset, DEFAULT_MAX_ELEMENTS};
