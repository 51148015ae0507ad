//! Indexes for jumbled pattern matching on binary strings.
//!
//! Given a binary string of length `n` with `rho` runs of 1s, the index is
//! built in `O(n + rho^2)` time from the run-length encoding and answers
//! "is there a substring with exactly `z` 0s and `o` 1s?" with two rank
//! queries. Optional position tables let it also report where such a
//! substring starts, and a blocked construction keeps the working memory at
//! `O(n)` bits.
//!
//! ```
//! use bjpm_core::{BuildOptions, JumbledIndex};
//!
//! let ix = JumbledIndex::from_bits("010101110011", BuildOptions { witness: true, compact: false }).unwrap();
//! assert!(ix.exists(2, 3));
//! assert!(!ix.exists(4, 1));
//! assert_eq!(ix.witness(2, 3).unwrap(), Some(2));
//! ```

pub mod bits;
pub mod compact;
mod error;
pub mod gen;
pub mod index;
pub mod io;
pub mod oracle;
pub mod packed;
pub mod rle;
pub mod table;
pub mod witness;
pub mod workspace;

pub use bits::{RankBitvector, RawBits};
pub use compact::{build_max_table_compact, BlockedTable, CompactBuilder};
pub use error::{Error, Result};
pub use index::{BuildOptions, JumbledIndex};
pub use rle::RunLengthString;
pub use table::{
    build_max_table, build_min_table, delta_encode, CountTable, MonotoneBitvector, TableKind,
};
pub use witness::{build_witness_tables, WitnessTables};
