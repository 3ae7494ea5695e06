use num_bigint::BigInt;
use num_traits::One;

use super::{Lattice, LatticeVector, SignatureTriple};
use crate::error::{LatticeError, Result};
use crate::matrix::IntMatrix;
use crate::normal_form;

/// A sublattice given by a column basis in the ambient coordinates.
///
/// Bases are always stored in column Hermite normal form, so two sublattices of the same
/// ambient lattice span the same module iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    /// Sublattice with the given independent basis columns.
    pub fn new(ambient: &Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.rows() != ambient.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient.rank(),
                found: basis.rows(),
            });
        }
        if basis.rank() != basis.cols() {
            return Err(LatticeError::DependentBasis);
        }
        Ok(Self::from_canonical(
            ambient,
            normal_form::column_hnf(&basis),
        ))
    }

    /// Integer span of arbitrary (possibly dependent) generator columns.
    pub fn spanned_by(ambient: &Lattice, generators: &IntMatrix) -> Result<Self> {
        if generators.rows() != ambient.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient.rank(),
                found: generators.rows(),
            });
        }
        Ok(Self::from_canonical(
            ambient,
            normal_form::column_hnf(generators),
        ))
    }

    pub fn from_vectors(ambient: &Lattice, vectors: &[LatticeVector]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        let m = IntMatrix::from_columns(ambient.rank(), &cols)?;
        Self::new(ambient, m)
    }

    pub fn full(ambient: &Lattice) -> Self {
        Sublattice {
            ambient: ambient.clone(),
            basis: IntMatrix::identity(ambient.rank()),
            saturated: true,
        }
    }

    pub fn zero(ambient: &Lattice) -> Self {
        Sublattice {
            ambient: ambient.clone(),
            basis: IntMatrix::zeros(ambient.rank(), 0),
            saturated: true,
        }
    }

    pub(crate) fn from_canonical(ambient: &Lattice, basis: IntMatrix) -> Self {
        let saturated = normal_form::saturation_index(&basis).is_one();
        Sublattice {
            ambient: ambient.clone(),
            basis,
            saturated,
        }
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    /// Column basis (`ambient rank × rank`).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<LatticeVector> {
        self.basis
            .columns()
            .into_iter()
            .map(LatticeVector)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// `[saturate(S) : S]`
    pub fn saturation_index(&self) -> BigInt {
        normal_form::saturation_index(&self.basis)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.len() == self.ambient.rank() && normal_form::in_column_span(&self.basis, &v.0)
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_sublattice(&self, other: &Sublattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Sublattice) -> bool {
        self.basis == other.basis
    }

    /// Gram matrix of the restricted form in this basis.
    pub fn gram(&self) -> IntMatrix {
        self.ambient
            .restricted_gram(&self.basis)
            .expect("basis rows match ambient rank")
    }

    /// The sublattice as a lattice in its own right.
    pub fn as_lattice(&self) -> Lattice {
        Lattice::new(self.gram()).expect("restricted Gram is symmetric")
    }

    pub fn signature(&self) -> SignatureTriple {
        super::signature_of(&self.gram())
    }

    pub fn determinant(&self) -> BigInt {
        self.gram().determinant().expect("square")
    }

    /// Whether `self ∩ other = {0}`, i.e. the two rational spans are independent.
    pub fn meets_trivially(&self, other: &Sublattice) -> bool {
        let joint = self.basis.hstack(&other.basis).expect("same ambient rank");
        joint.rank() == self.rank() + other.rank()
    }

    /// Restricted form is negative definite (vacuously true in rank 0).
    pub fn is_negative_definite(&self) -> bool {
        self.signature() == SignatureTriple::new(0, 0, self.rank())
    }
}

/// Saturated basis of `{x ∈ Z^c : m·x = 0}` in column HNF.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    normal_form::integer_kernel(m)
}

/// `{x ∈ L : (x, s) = 0 for all s ∈ S}`, always saturated.
pub fn orthogonal_complement(l: &Lattice, s: &Sublattice) -> Result<Sublattice> {
    if !l.same_form(s.ambient()) {
        return Err(LatticeError::DimensionMismatch {
            expected: l.rank(),
            found: s.ambient().rank(),
        });
    }
    let conditions = s.basis().transpose().mul(l.gram())?;
    let basis = normal_form::integer_kernel(&conditions);
    Ok(Sublattice {
        ambient: l.clone(),
        basis,
        saturated: true,
    })
}

/// `(Q·S) ∩ L`
pub fn saturate(l: &Lattice, s: &Sublattice) -> Result<Sublattice> {
    if !l.same_form(s.ambient()) {
        return Err(LatticeError::DimensionMismatch {
            expected: l.rank(),
            found: s.ambient().rank(),
        });
    }
    Ok(Sublattice {
        ambient: l.clone(),
        basis: normal_form::saturation(s.basis()),
        saturated: true,
    })
}
