//! Entanglement witness toolkit.
//!
//! Build witnesses and positive maps on `C^{d_A} ⊗ C^{d_B}`, classify them
//! numerically (block-positivity for every Schmidt rank, spanning dimension,
//! structural physical approximation) and use them to detect entanglement.
//!
//! ```
//! use ewt::classifier::{min_schmidt_k_expectation, OptimOptions};
//! use ewt::states::flip;
//!
//! let w = flip(3);
//! let r = min_schmidt_k_expectation(&w, 2, &OptimOptions::with_seed(7)).unwrap();
//! assert!((r.min_value + 1.0).abs() < 1e-9);
//! ```

pub mod classifier;
pub mod cli;
pub mod error;
pub mod io;
pub mod maps;
pub mod sample;
pub mod states;
pub mod tensor;
pub mod witnesses;

pub use error::{Error, Result};
pub use tensor::{BipartiteOperator, CMatrix, CVector, PureState, Side, C64};
