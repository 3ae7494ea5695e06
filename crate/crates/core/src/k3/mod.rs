//! The K3 lattice, the lattice of the Douady space of `n` points on a K3 surface, and the
//! invariants of its isometries.
//!
//! `H²(S^[n], Z) = ι(H²(S, Z)) ⊕ Zδ` with `q(δ) = −2(n−1)`, and the exceptional class is
//! `e = 2δ`, so `q(e) = −8(n−1)`. The surface part is modelled by the even unimodular
//! lattice `U³ ⊕ E8(−1)²` in that basis order.

mod cone;
mod index;

pub use cone::{
    decomposed_class, kahler_candidate_check, same_positive_cone_component, KahlerDiagnostic,
};
pub use index::{
    extract_surface_isometry, image_of_delta, index_invariant, index_norm_solutions,
    is_natural_on_lattice, natural_lift, pullback_decomposition, IndexValue, PullbackDecomposition,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector, Sublattice};
use crate::matrix::IntMatrix;

/// Rank of `H²` of a K3 surface.
pub const K3_RANK: usize = 22;

/// `U ⊕ U ⊕ U ⊕ E8(−1) ⊕ E8(−1)`
pub fn k3_lattice() -> Lattice {
    let u = Lattice::hyperbolic_plane();
    let e8m = Lattice::e8()
        .rescale(&BigInt::from(-1))
        .expect("nonzero scale");
    u.direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e8m)
        .direct_sum(&e8m)
        .with_label("K3")
}

/// Which class the marked basis vector represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkedClass {
    /// The basis vector is `δ`; then `e = 2·b`.
    Delta,
    /// The basis vector is `e` itself (as in a Néron–Severi lattice with basis `(h, e)`).
    Exceptional,
}

impl MarkedClass {
    fn multiplier(self) -> i64 {
        match self {
            MarkedClass::Delta => 2,
            MarkedClass::Exceptional => 1,
        }
    }
}

/// A lattice `Λ ⊕ Z·b` where `b` is either `δ` or `e`, orthogonal to the surface part `Λ`.
///
/// [`DouadyLattice::new`] builds the full `Λ_K3 ⊕ ⟨−2(n−1)⟩`; [`DouadyLattice::with_marked_class`]
/// admits smaller lattices (Néron–Severi pieces) that carry the same structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DouadyLattice {
    n: i64,
    full: Lattice,
    marked: usize,
    class: MarkedClass,
    surface: Lattice,
}

impl DouadyLattice {
    pub fn new(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(LatticeError::InvalidOrder(n));
        }
        let delta = Lattice::diagonal(&[-2 * (n - 1)]);
        let surface = k3_lattice();
        let full = surface
            .direct_sum(&delta)
            .with_label(format!("DOUADY({n})"));
        Ok(DouadyLattice {
            n,
            full,
            marked: K3_RANK,
            class: MarkedClass::Delta,
            surface,
        })
    }

    /// Marks basis vector `coordinate` of `lattice` as `δ` or `e`. The marked vector must be
    /// orthogonal to every other basis vector and `q(e)` must equal `−8(n−1)` for some `n ≥ 2`.
    pub fn with_marked_class(
        lattice: &Lattice,
        coordinate: usize,
        class: MarkedClass,
    ) -> Result<Self> {
        let rank = lattice.rank();
        if coordinate >= rank {
            return Err(LatticeError::InvalidMarking(format!(
                "coordinate {coordinate} out of range for rank {rank}"
            )));
        }
        let g = lattice.gram();
        if let Some(j) = (0..rank).find(|&j| j != coordinate && !g[(coordinate, j)].is_zero()) {
            return Err(LatticeError::InvalidMarking(format!(
                "marked vector pairs nontrivially with basis vector {j}"
            )));
        }
        let m = BigInt::from(class.multiplier());
        let qe = &g[(coordinate, coordinate)] * &m * &m;
        let (quot, rem) = qe.div_rem(&BigInt::from(-8));
        if !rem.is_zero() || !quot.is_positive() {
            return Err(LatticeError::InvalidMarking(format!(
                "q(e) = {qe} is not of the form -8(n-1) with n >= 2"
            )));
        }
        let n = i64::try_from(quot + 1)
            .map_err(|_| LatticeError::InvalidMarking("n does not fit in 64 bits".into()))?;
        Ok(DouadyLattice {
            n,
            full: lattice.clone(),
            marked: coordinate,
            class,
            surface: Lattice::new(g.minor(coordinate, coordinate)).expect("minor of symmetric"),
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn full(&self) -> &Lattice {
        &self.full
    }

    /// Position of the marked basis vector.
    pub fn delta_index(&self) -> usize {
        self.marked
    }

    pub fn marked_class(&self) -> MarkedClass {
        self.class
    }

    /// The surface part as a lattice (`Λ_K3` for [`DouadyLattice::new`]).
    pub fn surface_lattice(&self) -> &Lattice {
        &self.surface
    }

    /// `ι(surface)`, the span of every basis vector except the marked one.
    pub fn k3_part(&self) -> Sublattice {
        let rank = self.full.rank();
        let cols: Vec<LatticeVector> = (0..rank)
            .filter(|&i| i != self.marked)
            .map(|i| LatticeVector::basis(rank, i))
            .collect();
        Sublattice::from_vectors(&self.full, &cols).expect("independent")
    }

    pub(crate) fn multiplier(&self) -> BigInt {
        BigInt::from(self.class.multiplier())
    }

    /// `e = 2δ`
    pub fn e_class(&self) -> LatticeVector {
        LatticeVector::basis(self.full.rank(), self.marked).scale(&self.multiplier())
    }

    /// `δ`, when it is an element of the lattice.
    pub fn delta_class(&self) -> Option<LatticeVector> {
        match self.class {
            MarkedClass::Delta => Some(LatticeVector::basis(self.full.rank(), self.marked)),
            MarkedClass::Exceptional => None,
        }
    }

    /// `−8(n−1)`
    pub fn e_norm(&self) -> BigInt {
        BigInt::from(-8) * BigInt::from(self.n - 1)
    }

    /// Pads a surface vector with a zero marked coordinate.
    pub fn iota(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.len() != self.surface.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.surface.rank(),
                found: v.len(),
            });
        }
        let mut coords = v.0.clone();
        coords.insert(self.marked, BigInt::zero());
        Ok(LatticeVector(coords))
    }

    /// Drops the marked coordinate.
    pub(crate) fn surface_coords<T: Clone>(&self, coords: &[T]) -> Vec<T> {
        coords
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.marked)
            .map(|(_, x)| x.clone())
            .collect()
    }

    pub(crate) fn embed_block(&self, phi: &IntMatrix) -> IntMatrix {
        let rank = self.full.rank();
        let outer = |i: usize| if i < self.marked { i } else { i - 1 };
        let mut m = IntMatrix::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                m[(i, j)] = match (i == self.marked, j == self.marked) {
                    (true, true) => BigInt::from(1),
                    (false, false) => phi[(outer(i), outer(j))].clone(),
                    _ => BigInt::zero(),
                };
            }
        }
        m
    }
}

/// `Λ_K3 ⊕ ⟨−2(n−1)⟩` with `δ` the last basis vector.
pub fn douady_lattice(n: i64) -> Result<DouadyLattice> {
    DouadyLattice::new(n)
}

/// First Chern class `k·n·ι(c) − e` of `ψ(L^{kn})`, where `c = c₁(L)`.
pub fn psi_first_chern(d: &DouadyLattice, c: &LatticeVector, k: u64) -> Result<LatticeVector> {
    if k == 0 {
        return Err(LatticeError::InvalidArgument("k must be positive".into()));
    }
    let lifted = d.iota(c)?;
    let factor = BigInt::from(k) * BigInt::from(d.n());
    Ok(lifted.scale(&factor).sub(&d.e_class()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{orthogonal_complement, SignatureTriple};

    #[test]
    fn k3_constants() {
        let k3 = k3_lattice();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.signature(), SignatureTriple::new(3, 0, 19));
        assert_eq!(k3.discriminant(), BigInt::from(-1));
        assert!(k3.is_even());
    }

    #[test]
    fn douady_constants() {
        let d = DouadyLattice::new(2).unwrap();
        let delta = d.delta_class().unwrap();
        assert_eq!(d.full().norm(&delta).unwrap(), BigInt::from(-2));
        assert_eq!(d.full().norm(&d.e_class()).unwrap(), BigInt::from(-8));
        assert_eq!(d.full().signature(), SignatureTriple::new(3, 0, 20));
        assert_eq!(d.full().discriminant(), BigInt::from(2));
        let d5 = DouadyLattice::new(5).unwrap();
        assert_eq!(d5.full().norm(&d5.e_class()).unwrap(), BigInt::from(-32));
        let d3 = DouadyLattice::new(3).unwrap();
        assert_eq!(d3.full().norm(&d3.e_class()).unwrap(), BigInt::from(-16));
        assert_eq!(DouadyLattice::new(1), Err(LatticeError::InvalidOrder(1)));
    }

    #[test]
    fn e_is_twice_delta() {
        let d = DouadyLattice::new(4).unwrap();
        let delta = d.delta_class().unwrap();
        assert!(d.e_class().sub(&delta.scale(&BigInt::from(2))).is_zero());
    }

    #[test]
    fn iota_pads_orthogonally() {
        let d = DouadyLattice::new(2).unwrap();
        let zero = d.iota(&LatticeVector::zero(22)).unwrap();
        assert!(zero.is_zero() && zero.len() == 23);
        let mut c = vec![0i64; 22];
        c[0] = 1;
        c[1] = 3;
        c[6] = 2;
        let v = LatticeVector::from_i64(&c);
        let iv = d.iota(&v).unwrap();
        assert_eq!(d.full().norm(&iv).unwrap(), k3_lattice().norm(&v).unwrap());
        assert!(d
            .full()
            .pairing(&iv, &d.delta_class().unwrap())
            .unwrap()
            .is_zero());
        assert!(d.iota(&LatticeVector::zero(23)).is_err());
    }

    #[test]
    fn complement_of_surface_part_is_delta() {
        let d = DouadyLattice::new(2).unwrap();
        let c = orthogonal_complement(d.full(), &d.k3_part()).unwrap();
        let delta = Sublattice::from_vectors(d.full(), &[d.delta_class().unwrap()]).unwrap();
        assert!(c.same_span(&delta));
    }

    #[test]
    fn psi_chern_examples() {
        let d = DouadyLattice::new(2).unwrap();
        let c0 = psi_first_chern(&d, &LatticeVector::zero(22), 1).unwrap();
        assert_eq!(c0, d.e_class().neg());
        assert_eq!(d.full().norm(&c0).unwrap(), BigInt::from(-8));
        let mut c = vec![0i64; 22];
        c[0] = 1;
        c[1] = 2; // c² = 4 in U
        let out = psi_first_chern(&d, &LatticeVector::from_i64(&c), 1).unwrap();
        assert_eq!(d.full().norm(&out).unwrap(), BigInt::from(8));
        assert_eq!(out.0[22], BigInt::from(-2));
        assert!(psi_first_chern(&d, &LatticeVector::zero(22), 0).is_err());
    }

    #[test]
    fn marked_class_validation() {
        let l = Lattice::diagonal(&[4, -8]);
        let d = DouadyLattice::with_marked_class(&l, 1, MarkedClass::Exceptional).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.e_class(), LatticeVector::from_i64(&[0, 1]));
        assert!(d.delta_class().is_none());
        assert!(DouadyLattice::with_marked_class(&l, 0, MarkedClass::Exceptional).is_err());
        let bad = Lattice::from_i64(&[&[4, 1], &[1, -8]]).unwrap();
        assert!(DouadyLattice::with_marked_class(&bad, 1, MarkedClass::Exceptional).is_err());
        let l2 = Lattice::diagonal(&[2, -4]);
        assert_eq!(
            DouadyLattice::with_marked_class(&l2, 1, MarkedClass::Delta)
                .unwrap()
                .n(),
            3
        );
    }
}
