//! Polychromatic numbers of small subsets of `Z_n`.
//!
//! Given `S ⊆ Z_n`, a `k`-coloring of `Z_n` is `S`-polychromatic when every
//! translate `a + S` contains all `k` colors, and the polychromatic number
//! `p_n(S)` is the largest such `k`. This crate computes `p_n(S)` in closed
//! form for all sets of size 2 and 3, constructs an explicit witness coloring
//! for every instance, and checks both against independent exhaustive
//! searches.
//!
//! - [`zn`]: residue sets, translates, subgroup orders, and the
//!   equivalence/normalization machinery (with coloring pull-back).
//! - [`classify`]: the closed-form classification, the mod-3 tiling
//!   criterion, and the prime-power tiling condition over the integers.
//! - [`construct`]: witness colorings realizing the classified number.
//! - [`oracle`]: ground truth — translate verification, exhaustive
//!   polychromatic search, exact-cover tiling, and blocking sets.
//!
//! ```
//! use polychrome::{classify, construct, oracle, zn::ResidueSet};
//!
//! let fano = ResidueSet::new(7, [0, 1, 3]).unwrap();
//! assert_eq!(classify::poly_number_size3(&fano).unwrap().p(), 1);
//!
//! let s = ResidueSet::new(9, [0, 1, 2]).unwrap();
//! let w = construct::witness(&s).unwrap();
//! assert_eq!(w.coloring.digits(), "012012012");
//! assert!(oracle::verifies(&s, &w.coloring));
//! ```

pub mod classify;
pub mod coloring;
pub mod construct;
pub mod oracle;
pub mod zn;

pub use classify::{CaseTag, Classification};
pub use coloring::Coloring;
pub use construct::{Witness, WitnessBranch};
pub use oracle::{SearchBounds, TileCertificate, Violation};
pub use zn::{CanonicalForm, CaseKind, ResidueSet, TransformChain, TransformStep};
