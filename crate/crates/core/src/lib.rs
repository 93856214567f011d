//! Minimal absent words of run-length encoded strings.
//!
//! [`ReprBundle`] keeps every minimal absent word (MAW) of a text `T` in
//! space linear in the number of runs `m` of `T`, and lists them in time
//! linear in their number. Each MAW is reported as a constant-size
//! [`MawHandle`] that expands back to the word in time proportional to its
//! run count.
//!
//! ```
//! use rlemaw::{encode, symbols, ReprBundle};
//!
//! let rle = encode(&symbols("bbacccbaa")).unwrap();
//! let bundle = ReprBundle::from_rle(&rle);
//! assert_eq!(bundle.counts(), [3, 3, 2, 1, 3]);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod handle;
pub mod oracle;
pub mod repr;
pub mod rle;
pub mod symbol;

pub use error::{Error, Result};
pub use handle::MawHandle;
pub use repr::{
    BuildOptions, CountSink, EnumStats, FnSink, MawSink, ReprBundle, SpaceReport, TypeFilter,
};
pub use rle::{decode, encode, parse_rle_text, to_rle_text, RleString, Run};
pub use symbol::{symbols, to_string, Alphabet, Symbol};
