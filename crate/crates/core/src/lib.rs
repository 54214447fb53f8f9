//! Fixed-length cycle packings of de Bruijn graphs.
//!
//! A ring of `k` LEDs in `q` colours, seen `l` at a time, identifies a robot
//! and its orientation exactly when every length-`l` window across all
//! robots is unique. Such colourings are sets of disjoint `k`-cycles in the
//! de Bruijn graph dB(q, l). This crate builds them (finite-field LFSR
//! constructions and necklace combinators), checks them, decodes windows
//! back to `(robot, rotation)`, and searches for them exhaustively at small
//! sizes.
//!
//! ```
//! use ebug_core::{lfsr, necklace};
//!
//! let two = lfsr::lfsr_translate(2, 5, None).unwrap();
//! assert!(two.is_optimal_partition());
//! let many = necklace::product(&two, &two).unwrap();
//! assert_eq!((many.q(), many.k(), many.n()), (4, 16, 64));
//! assert!(many.is_optimal_partition());
//! ```

pub mod arith;
pub mod error;
pub mod field;
pub mod format;
pub mod lfsr;
pub mod necklace;
pub mod oracle;
pub mod par;
pub mod words;

pub use error::{Error, Result};
pub use field::{BaseField, ExtensionField, FieldElement, PrimePower};
pub use par::Exec;
pub use words::{Colouring, CyclicWord, DecoderTable, ValidityReport};
