//! Exact computations in the annular Temperley-Lieb category.
//!
//! - [`tangle`]: annular tangles, composition with loop accounting, involution.
//! - [`analysis`]: cap/cup indices, relative star position, types, factorizations.
//! - [`word`]: the presented category, words and the standard-form normalizer.
//! - [`functors`]: the functors between tangles and words, the cyclic category
//!   and its embeddings, and the pushout relabeling.
//! - [`linalg`]: Smith normal form and homology of integer chain complexes.
//! - [`homology`]: annular modules, Hochschild and cyclic homology.

pub mod error;
pub mod functors;
pub mod homology;
pub mod linalg;
pub mod object;
pub mod analysis;
pub mod tangle;
pub mod word;

pub use error::{HomologyError, LinAlgError, TangleError, WordError};
pub use object::BoundaryObject;
pub use tangle::{generator, glue, validate_tangle, AtlMorphism, AtlTangle, Endpoint, GeneratorKind, RawTangle, Side};
