//! Rough objects of granular operator spaces, the lattice of maximal
//! antichains they form, the AC-algebra operations on it, and a finite
//! checker for ternary deductive systems.
//!
//! ```
//! use acrough::{build_quotient, parse_space, AcAlgebra, DEFAULT_UNIVERSE_CAP};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let space = parse_space("universe: 1 2\ngranule: 1 2\n", DEFAULT_UNIVERSE_CAP)?;
//! let ac = AcAlgebra::new(build_quotient(&space)?)?;
//! assert_eq!(ac.len(), 3);
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod antichain;
pub mod deduction;
pub mod export;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod lattice;
pub mod poset;
pub mod quotient;
pub mod space;
pub mod subset;
pub mod verify;

pub use algebra::{AcAlgebra, AcError, ComplementKind};
pub use antichain::{build_ac_lattice, build_acm_lattice, maximal_antichains, Antichain, AntichainLattice};
pub use format::{format_space, parse_space, FormatError};
pub use lattice::{BoundedLattice, LatticeError};
pub use poset::Poset;
pub use quotient::{build_quotient, build_quotient_with_cap, QuotientError, QuotientPoset, RoughObject};
pub use space::{GranularOperatorSpace, RelationKind, SpaceError, DEFAULT_UNIVERSE_CAP};
pub use subset::Subset;
pub use verify::{verify, Status, Suite, VerificationReport, VerifyOptions};
