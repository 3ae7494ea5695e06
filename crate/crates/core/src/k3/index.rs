use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::DouadyLattice;
use crate::error::{LatticeError, Result};
use crate::lattice::{Isometry, LatticeVector};

/// The index `λ(f) = q(f(e), e) / q(e)`, kept as an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexValue(pub BigRational);

impl IndexValue {
    pub fn from_integer(n: i64) -> Self {
        IndexValue(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for IndexValue {
    /// `p/q` with `q > 0`, or just `p` when integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// `f(e) = λ·e + ι(d)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDecomposition {
    pub lambda: IndexValue,
    /// Surface coordinates of `d`.
    pub d: LatticeVector,
}

fn check_ambient(d: &DouadyLattice, f: &Isometry) -> Result<()> {
    if f.ambient().same_form(d.full()) {
        Ok(())
    } else {
        Err(LatticeError::ForeignIsometry)
    }
}

pub fn index_invariant(d: &DouadyLattice, f: &Isometry) -> Result<IndexValue> {
    check_ambient(d, f)?;
    let e = d.e_class();
    let fe = f.apply(&e)?;
    let num = d.full().pairing(&fe, &e)?;
    Ok(IndexValue(BigRational::new(num, d.e_norm())))
}

/// Reads `λ` off the marked coordinate of `f(e)`; the remaining coordinates are `d`.
pub fn pullback_decomposition(d: &DouadyLattice, f: &Isometry) -> Result<PullbackDecomposition> {
    check_ambient(d, f)?;
    let fe = f.apply(&d.e_class())?;
    let lambda = BigRational::new(fe.0[d.delta_index()].clone(), d.multiplier());
    Ok(PullbackDecomposition {
        lambda: IndexValue(lambda),
        d: LatticeVector(d.surface_coords(&fe.0)),
    })
}

/// Image of `δ`, in rational coordinates (`δ = e/2` need not be a lattice vector).
pub fn image_of_delta(d: &DouadyLattice, f: &Isometry) -> Result<Vec<BigRational>> {
    check_ambient(d, f)?;
    let fb = f.apply(&LatticeVector::basis(d.full().rank(), d.delta_index()))?;
    let scale = BigRational::new(d.multiplier(), BigInt::from(2));
    Ok(fb
        .0
        .into_iter()
        .map(|x| BigRational::from_integer(x) * &scale)
        .collect())
}

/// `f(δ) = δ` (equivalently `f(e) = e`).
pub fn is_natural_on_lattice(d: &DouadyLattice, f: &Isometry) -> Result<bool> {
    check_ambient(d, f)?;
    let b = LatticeVector::basis(d.full().rank(), d.delta_index());
    Ok(f.apply(&b)? == b)
}

/// The isometry `(φ, id)` of the full lattice.
pub fn natural_lift(d: &DouadyLattice, phi: &Isometry) -> Result<Isometry> {
    if !phi.ambient().same_form(d.surface_lattice()) {
        return Err(LatticeError::ForeignIsometry);
    }
    Isometry::new(d.full(), d.embed_block(phi.matrix()))
}

/// The surface block `φ` of a natural isometry `f = (φ, id)`.
pub fn extract_surface_isometry(d: &DouadyLattice, f: &Isometry) -> Result<Isometry> {
    if !is_natural_on_lattice(d, f)? {
        return Err(LatticeError::NotNatural);
    }
    let m = f.matrix();
    let k = d.delta_index();
    // f fixes e and preserves q, so it preserves e^⊥ = ι(surface): row k vanishes off the diagonal
    debug_assert!((0..m.cols()).all(|j| j == k || m[(k, j)].is_zero()));
    Ok(Isometry::new_unchecked(d.surface_lattice(), m.minor(k, k)))
}

/// All `(λ, μ)` with `|λ|, |μ| ≤ bound` and `−8(n−1) = −8(n−1)·λ² + μ²·d2`, sorted.
pub fn index_norm_solutions(n: i64, d2: i64, bound: u64) -> Result<Vec<(i64, i64)>> {
    if n < 2 {
        return Err(LatticeError::InvalidOrder(n));
    }
    if d2 == 0 {
        return Err(LatticeError::InvalidArgument("d2 must be nonzero".into()));
    }
    if bound == 0 {
        return Err(LatticeError::InvalidArgument(
            "bound must be positive".into(),
        ));
    }
    let b = i64::try_from(bound)
        .map_err(|_| LatticeError::InvalidArgument("bound too large".into()))?;
    let qe = -8 * i128::from(n - 1);
    let d2 = i128::from(d2);
    let mut out = Vec::new();
    for lambda in -b..=b {
        let l = i128::from(lambda);
        for mu in -b..=b {
            let m = i128::from(mu);
            if qe * l * l + m * m * d2 == qe {
                out.push((lambda, mu));
            }
        }
    }
    Ok(out)
}
