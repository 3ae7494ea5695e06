//! Exact integral lattice computations for K3 surfaces and the Douady spaces `S^[n]` of
//! points on them.
//!
//! Everything is computed with arbitrary-precision integers and rationals. The crate covers
//! the generic lattice toolkit ([`lattice`]), the K3 and Douady lattices with the index of an
//! isometry and the naturality criterion ([`k3`]), and invariant/coinvariant lattices of finite
//! isometry groups ([`group`]).
//!
//! ```
//! use hilblat::k3::{index_invariant, is_natural_on_lattice};
//! use hilblat::{DouadyLattice, IntMatrix, Isometry, Lattice, MarkedClass};
//!
//! let ns = Lattice::diagonal(&[4, -8]);
//! let d = DouadyLattice::with_marked_class(&ns, 1, MarkedClass::Exceptional)?;
//! let f = Isometry::new(&ns, IntMatrix::from_i64(&[&[3, 4], &[-2, -3]]))?;
//! assert_eq!(index_invariant(&d, &f)?.to_string(), "-3");
//! assert!(!is_natural_on_lattice(&d, &f)?);
//! # Ok::<(), hilblat::LatticeError>(())
//! ```

pub mod error;
pub mod group;
pub mod k3;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
#[cfg(feature = "sampling")]
pub mod sampling;

pub use error::{GramViolation, LatticeError, Result};
pub use group::{IsometryGroup, NsType};
pub use k3::{DouadyLattice, IndexValue, MarkedClass, PullbackDecomposition};
pub use lattice::{Isometry, Lattice, LatticeVector, SignatureTriple, Sublattice};
pub use matrix::IntMatrix;
