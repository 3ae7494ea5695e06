use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Lattice, LatticeVector};
use crate::error::{GramViolation, LatticeError, Result};
use crate::matrix::IntMatrix;
use crate::normal_form;

/// An automorphism of a lattice, acting on coordinate columns by `x ↦ M·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    ambient: Lattice,
    matrix: IntMatrix,
}

/// First Gram relation `Mᵀ·G·M = G` that fails, scanning row by row.
pub fn isometry_defect(l: &Lattice, m: &IntMatrix) -> Result<Option<GramViolation>> {
    if m.rows() != l.rank() || m.cols() != l.rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: l.rank(),
            found: if m.rows() != l.rank() {
                m.rows()
            } else {
                m.cols()
            },
        });
    }
    let pulled = l.restricted_gram(m)?;
    for i in 0..l.rank() {
        for j in 0..l.rank() {
            if pulled[(i, j)] != l.gram()[(i, j)] {
                return Ok(Some(GramViolation {
                    row: i,
                    col: j,
                    found: pulled[(i, j)].clone(),
                    expected: l.gram()[(i, j)].clone(),
                }));
            }
        }
    }
    Ok(None)
}

fn validate(l: &Lattice, m: &IntMatrix) -> Result<()> {
    if let Some(v) = isometry_defect(l, m)? {
        return Err(LatticeError::NotIsometry(v));
    }
    let det = m.determinant()?;
    if det.abs() != BigInt::one() {
        return Err(LatticeError::NotUnimodular(det));
    }
    Ok(())
}

/// `Mᵀ·G·M = G` and `|det M| = 1`.
pub fn is_isometry(l: &Lattice, m: &IntMatrix) -> Result<bool> {
    match validate(l, m) {
        Ok(()) => Ok(true),
        Err(LatticeError::NotIsometry(_)) | Err(LatticeError::NotUnimodular(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

impl Isometry {
    pub fn new(ambient: &Lattice, matrix: IntMatrix) -> Result<Self> {
        validate(ambient, &matrix)?;
        Ok(Isometry {
            ambient: ambient.clone(),
            matrix,
        })
    }

    pub fn identity(ambient: &Lattice) -> Self {
        Isometry {
            ambient: ambient.clone(),
            matrix: IntMatrix::identity(ambient.rank()),
        }
    }

    pub(crate) fn new_unchecked(ambient: &Lattice, matrix: IntMatrix) -> Self {
        debug_assert!(validate(ambient, &matrix).is_ok());
        Isometry {
            ambient: ambient.clone(),
            matrix,
        }
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        Ok(LatticeVector(self.matrix.mul_vec(&v.0)?))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if !self.ambient.same_form(&other.ambient) {
            return Err(LatticeError::ForeignIsometry);
        }
        Ok(Isometry {
            ambient: self.ambient.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> Isometry {
        // HNF of a unimodular matrix is the identity, so the transform is the inverse
        let rh = normal_form::row_hermite(&self.matrix);
        debug_assert_eq!(rh.hnf, IntMatrix::identity(self.ambient.rank()));
        Isometry {
            ambient: self.ambient.clone(),
            matrix: rh.transform,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.ambient.rank())
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant().expect("square")
    }
}

/// Reflection `x ↦ x − (2(x, v)/q(v))·v` in a non-isotropic vector `v`.
pub fn reflection_isometry(l: &Lattice, v: &LatticeVector) -> Result<Isometry> {
    let norm = l.norm(v)?;
    if norm.is_zero() {
        return Err(LatticeError::IsotropicReflection);
    }
    let gv = l.gram().mul_vec(&v.0)?;
    let n = l.rank();
    let mut m = IntMatrix::identity(n);
    for (j, pairing) in gv.iter().enumerate() {
        let (coef, rem) = (pairing * BigInt::from(2)).div_rem(&norm);
        if !rem.is_zero() {
            return Err(LatticeError::NonIntegralReflection { norm });
        }
        for i in 0..n {
            let x = &m[(i, j)] - &coef * &v.0[i];
            m[(i, j)] = x;
        }
    }
    Isometry::new(l, m)
}
