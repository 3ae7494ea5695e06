//! Integral lattices: a free `Z`-module with a symmetric integral Gram matrix.

mod isometry;
mod sublattice;

pub use isometry::{is_isometry, isometry_defect, reflection_isometry, Isometry};
pub use sublattice::{integer_kernel, orthogonal_complement, saturate, Sublattice};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    label: Option<String>,
}

/// Coordinates of a lattice element in the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The `i`-th standard basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Counts of positive, zero and negative eigenvalues of the real form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignatureTriple {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
}

impl SignatureTriple {
    pub const fn new(pos: usize, zero: usize, neg: usize) -> Self {
        SignatureTriple { pos, zero, neg }
    }

    pub fn rank(&self) -> usize {
        self.pos + self.zero + self.neg
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

impl std::ops::Add for SignatureTriple {
    type Output = SignatureTriple;

    fn add(self, rhs: SignatureTriple) -> SignatureTriple {
        SignatureTriple::new(self.pos + rhs.pos, self.zero + rhs.zero, self.neg + rhs.neg)
    }
}

impl fmt::Display for SignatureTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.zero, self.neg)
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(LatticeError::NotSymmetric { row, col });
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(gram))
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        Lattice {
            gram: IntMatrix::diagonal(&d),
            label: None,
        }
    }

    /// The rank-0 lattice.
    pub fn empty() -> Self {
        Lattice {
            gram: IntMatrix::zeros(0, 0),
            label: None,
        }
    }

    /// Hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_i64(&[&[0, 1], &[1, 0]])
            .expect("symmetric")
            .with_label("U")
    }

    /// Positive definite `E8` root lattice (Bourbaki labelling, diagonal 2).
    pub fn e8() -> Self {
        const EDGES: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g[(i, i)] = BigInt::from(2);
        }
        for (a, b) in EDGES {
            g[(a, b)] = BigInt::from(-1);
            g[(b, a)] = BigInt::from(-1);
        }
        Lattice::new(g).expect("symmetric").with_label("E8")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Same Gram matrix, ignoring labels.
    pub fn same_form(&self, other: &Lattice) -> bool {
        self.gram == other.gram
    }

    fn check_vector(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `xᵀ·G·y`
    pub fn pairing(&self, x: &LatticeVector, y: &LatticeVector) -> Result<BigInt> {
        self.check_vector(&x.0)?;
        self.check_vector(&y.0)?;
        let gy = self.gram.mul_vec(&y.0)?;
        Ok(x.0.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self, x: &LatticeVector) -> Result<BigInt> {
        self.pairing(x, x)
    }

    /// Pairing extended to rational coordinates.
    pub fn pairing_rational(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.rank() || y.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: if x.len() != self.rank() {
                    x.len()
                } else {
                    y.len()
                },
            });
        }
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let g = &self.gram[(i, j)];
                if !g.is_zero() && !yj.is_zero() {
                    acc += xi * yj * BigRational::from_integer(g.clone());
                }
            }
        }
        Ok(acc)
    }

    /// Inertia of the real form, by exact symmetric Gaussian elimination.
    pub fn signature(&self) -> SignatureTriple {
        signature_of(&self.gram)
    }

    pub fn discriminant(&self) -> BigInt {
        self.gram.determinant().expect("Gram matrices are square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// Whether `q(b)` is even for every basis vector `b`.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % BigInt::from(2)).is_zero())
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice {
            gram: self.gram.block_diagonal(&other.gram),
            label,
        }
    }

    pub fn rescale(&self, k: &BigInt) -> Result<Lattice> {
        if k.is_zero() {
            return Err(LatticeError::ZeroScale);
        }
        Ok(Lattice {
            gram: self.gram.scale(k),
            label: self.label.as_ref().map(|l| format!("{l}({k})")),
        })
    }

    /// Gram matrix of the form restricted to the columns of `basis`: `Bᵀ·G·B`.
    pub fn restricted_gram(&self, basis: &IntMatrix) -> Result<IntMatrix> {
        basis.transpose().mul(&self.gram)?.mul(basis)
    }
}

pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    a.direct_sum(b)
}

pub fn rescale(l: &Lattice, k: &BigInt) -> Result<Lattice> {
    l.rescale(k)
}

/// Signature of a symmetric integer matrix.
pub fn signature_of(gram: &IntMatrix) -> SignatureTriple {
    let n = gram.rows();
    let mut a = gram.to_rational();
    let mut sig = SignatureTriple::default();
    let sym_swap = |a: &mut crate::matrix::RatMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..n {
            let t = a[(i, k)].clone();
            a[(i, k)] = a[(j, k)].clone();
            a[(j, k)] = t;
        }
        for k in 0..n {
            let t = a[(k, i)].clone();
            a[(k, i)] = a[(k, j)].clone();
            a[(k, j)] = t;
        }
    };
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            sym_swap(&mut a, k, p);
        } else {
            let off = (k..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero());
            let Some((i, j)) = off else {
                sig.zero += n - k;
                return sig;
            };
            // row/column j into row/column i: new diagonal entry is 2·a[i][j]
            for c in 0..n {
                let v = &a[(i, c)] + &a[(j, c)];
                a[(i, c)] = v;
            }
            for r in 0..n {
                let v = &a[(r, i)] + &a[(r, j)];
                a[(r, i)] = v;
            }
            sym_swap(&mut a, k, i);
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_positive() {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        for i in (k + 1)..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &pivot;
            for j in (k + 1)..n {
                let v = &a[(i, j)] - &f * &a[(k, j)];
                a[(i, j)] = v;
            }
        }
        for i in (k + 1)..n {
            a[(i, k)] = BigRational::zero();
            a[(k, i)] = BigRational::zero();
        }
    }
    sig
}
