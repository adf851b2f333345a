//! Super-monochromatic factorisations of infinite words.
//!
//! Word generators ([`words`]), a first-occurrence index ([`index`]),
//! consecutive length ([`conslen`]), the canonical-form calculus of the
//! Zimin word ([`zimin`]), the colorings ([`colorings`]), bounded Ramsey
//! constructions ([`ramsey`]) and the refutation search and proof replays
//! ([`verifier`]). [`oracle`] holds the naive reference implementations the
//! invariant suites in [`props`] compare against; [`cli`] backs the `rw`
//! binary.
//!
//! ```
//! use wordramsey::index::FactorIndex;
//! use wordramsey::conslen::consecutive_length;
//! use wordramsey::words::{Word, WordSource, ZiminDefinition};
//!
//! let z = WordSource::zimin(ZiminDefinition::Limit);
//! assert_eq!(z.prefix(8).unwrap().to_string(), "x1 x2 x1 x3 x1 x2 x1 x4");
//! let idx = FactorIndex::build(&z, 255).unwrap();
//! assert_eq!(consecutive_length(&idx, &Word::zimin(&[1, 2, 1])).unwrap(), 2);
//! ```

pub mod cli;
pub mod colorings;
pub mod conslen;
pub mod error;
pub mod index;
pub mod oracle;
pub mod props;
pub mod ramsey;
pub mod verifier;
pub mod words;
pub mod zimin;

pub use error::{Error, Result};
