use num_rational::BigRational;
use num_traits::Signed;

use super::DouadyLattice;
use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector, SignatureTriple};

/// For a lattice of signature `(1, 0, k)`, two positive vectors lie in the same component of
/// the positive cone iff they pair positively.
pub fn same_positive_cone_component(
    l: &Lattice,
    x: &LatticeVector,
    y: &LatticeVector,
) -> Result<bool> {
    let sig = l.signature();
    if sig != SignatureTriple::new(1, 0, l.rank().saturating_sub(1)) || l.rank() == 0 {
        return Err(LatticeError::ConePrecondition(format!(
            "signature {sig} is not hyperbolic"
        )));
    }
    for v in [x, y] {
        if !l.norm(v)?.is_positive() {
            return Err(LatticeError::ConePrecondition(format!(
                "q{v} is not positive"
            )));
        }
    }
    Ok(l.pairing(x, y)?.is_positive())
}

/// Necessary lattice-level conditions for `ω = ι(ω₀) + λ·e` to be a Kähler class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerDiagnostic {
    pub lambda: BigRational,
    pub surface_part: Vec<BigRational>,
    /// `q(ω)`
    pub norm: BigRational,
    /// `q(ω, e) = λ·q(e)`
    pub pairing_with_e: BigRational,
    /// `q(ω₀) = q(ω) − λ²·q(e)`
    pub surface_norm: BigRational,
    pub positive_norm: bool,
    pub lambda_negative: bool,
    pub surface_positive: bool,
}

impl KahlerDiagnostic {
    pub fn passes_all(&self) -> bool {
        self.positive_norm && self.lambda_negative && self.surface_positive
    }

    /// `q(ω, e) > 0`, which for `q(e) < 0` is the same as `λ < 0`.
    pub fn pairs_positively_with_e(&self) -> bool {
        self.pairing_with_e.is_positive()
    }
}

/// Full rational coordinates of `ι(ω₀) + λ·e`.
pub fn decomposed_class(
    d: &DouadyLattice,
    surface: &[BigRational],
    lambda: &BigRational,
) -> Result<Vec<BigRational>> {
    if surface.len() != d.surface_lattice().rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: d.surface_lattice().rank(),
            found: surface.len(),
        });
    }
    let mut coords = surface.to_vec();
    coords.insert(
        d.delta_index(),
        lambda * BigRational::from_integer(d.multiplier()),
    );
    Ok(coords)
}

/// Evaluates the three necessary conditions on a rational class given in full coordinates.
/// Does not decide whether the class is Kähler.
pub fn kahler_candidate_check(
    d: &DouadyLattice,
    omega: &[BigRational],
) -> Result<KahlerDiagnostic> {
    let full = d.full();
    if omega.len() != full.rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: full.rank(),
            found: omega.len(),
        });
    }
    let to_q = |v: &LatticeVector| -> Vec<BigRational> {
        v.0.iter().cloned().map(BigRational::from_integer).collect()
    };
    let lambda = &omega[d.delta_index()] / BigRational::from_integer(d.multiplier());
    let surface_part = d.surface_coords(omega);
    let e = to_q(&d.e_class());
    let norm = full.pairing_rational(omega, omega)?;
    let pairing_with_e = full.pairing_rational(omega, &e)?;
    let surface_norm = d
        .surface_lattice()
        .pairing_rational(&surface_part, &surface_part)?;
    Ok(KahlerDiagnostic {
        positive_norm: norm.is_positive(),
        lambda_negative: lambda.is_negative(),
        surface_positive: surface_norm.is_positive(),
        lambda,
        surface_part,
        norm,
        pairing_with_e,
        surface_norm,
    })
}
