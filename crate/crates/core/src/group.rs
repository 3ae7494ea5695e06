//! Finite isometry groups, their invariant and coinvariant lattices, and the Néron–Severi type
//! of a sublattice.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{LatticeError, Result};
use crate::k3::DouadyLattice;
use crate::lattice::{orthogonal_complement, Isometry, Lattice, SignatureTriple, Sublattice};
use crate::matrix::IntMatrix;
use crate::normal_form;

use num_traits::Zero;

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A finite group of isometries, stored fully enumerated.
#[derive(Clone, Debug)]
pub struct IsometryGroup {
    ambient: Lattice,
    generators: Vec<Isometry>,
    /// Sorted, identity included.
    elements: Vec<IntMatrix>,
}

/// Enumerates the group generated by `generators` breadth-first, failing once more than
/// `cap` elements appear.
pub fn closure(l: &Lattice, generators: &[IntMatrix], cap: usize) -> Result<IsometryGroup> {
    let generators = generators
        .iter()
        .map(|m| Isometry::new(l, m.clone()))
        .collect::<Result<Vec<_>>>()?;
    let identity = IntMatrix::identity(l.rank());
    let mut seen: HashSet<IntMatrix> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    if cap == 0 {
        return Err(LatticeError::GroupTooLarge { cap });
    }
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = g.matrix().mul(&x)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(LatticeError::GroupTooLarge { cap });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<IntMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(IsometryGroup {
        ambient: l.clone(),
        generators,
        elements,
    })
}

impl IsometryGroup {
    pub fn trivial(l: &Lattice) -> Self {
        IsometryGroup {
            ambient: l.clone(),
            generators: Vec::new(),
            elements: vec![IntMatrix::identity(l.rank())],
        }
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `g(S) ⊆ S` for every generator.
    pub fn stabilizes(&self, s: &Sublattice) -> Result<bool> {
        for g in &self.generators {
            for v in s.basis_vectors() {
                if !s.contains(&g.apply(&v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `Tr_G = {x : g·x = x for all g}`, the kernel of the stacked `g − I` over the generators.
pub fn invariant_sublattice(g: &IsometryGroup) -> Sublattice {
    let l = g.ambient();
    let id = IntMatrix::identity(l.rank());
    let blocks: Vec<IntMatrix> = g
        .generators
        .iter()
        .map(|h| h.matrix().sub(&id).expect("square of ambient rank"))
        .collect();
    let stacked = IntMatrix::vstack(l.rank(), &blocks).expect("uniform columns");
    Sublattice::from_canonical(l, normal_form::integer_kernel(&stacked))
}

/// `Ss_G = Tr_G^⊥`
pub fn coinvariant_sublattice(g: &IsometryGroup) -> Sublattice {
    orthogonal_complement(g.ambient(), &invariant_sublattice(g)).expect("same ambient")
}

/// Checks on the pair `(Tr_G, Ss_G)` that hold for any finite group on a nondegenerate lattice.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub trivial_intersection: bool,
    pub invariant_nondegenerate: bool,
    pub coinvariant_nondegenerate: bool,
}

impl PairReport {
    pub fn all_hold(&self) -> bool {
        self.trivial_intersection && self.invariant_nondegenerate && self.coinvariant_nondegenerate
    }
}

pub fn verify_pair_properties(g: &IsometryGroup) -> Result<PairReport> {
    if !g.ambient().is_nondegenerate() {
        return Err(LatticeError::DegenerateLattice);
    }
    let invariant = invariant_sublattice(g);
    let coinvariant = coinvariant_sublattice(g);
    Ok(PairReport {
        trivial_intersection: invariant.meets_trivially(&coinvariant),
        invariant_nondegenerate: !invariant.determinant().is_zero(),
        coinvariant_nondegenerate: !coinvariant.determinant().is_zero(),
        invariant,
        coinvariant,
    })
}

/// `Tr = NS^⊥`
pub fn transcendental_sublattice(l: &Lattice, ns: &Sublattice) -> Result<Sublattice> {
    orthogonal_complement(l, ns)
}

/// Whether every generator fixes `S` pointwise. `S` must be stable under the group.
pub fn acts_trivially_on(g: &IsometryGroup, s: &Sublattice) -> Result<bool> {
    if !g.ambient().same_form(s.ambient()) {
        return Err(LatticeError::ForeignIsometry);
    }
    if !g.stabilizes(s)? {
        return Err(LatticeError::NotStable);
    }
    for h in &g.generators {
        for v in s.basis_vectors() {
            if h.apply(&v)? != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_negative_definite(s: &Sublattice) -> bool {
    s.is_negative_definite()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NsType {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl NsType {
    /// Type read off the signature of the Néron–Severi lattice.
    pub fn from_signature(sig: SignatureTriple) -> Option<NsType> {
        let rho = sig.rank();
        if rho == 0 {
            // the empty lattice is negative definite
            return Some(NsType::Elliptic);
        }
        if sig == SignatureTriple::new(1, 0, rho - 1) {
            Some(NsType::Hyperbolic)
        } else if sig == SignatureTriple::new(0, 1, rho - 1) {
            Some(NsType::Parabolic)
        } else if sig == SignatureTriple::new(0, 0, rho) {
            Some(NsType::Elliptic)
        } else {
            None
        }
    }

    /// Signature the transcendental lattice has alongside an NS lattice of rank `rho`
    /// inside `H²` of rank `b2`; `None` when the pattern has a negative entry.
    pub fn companion_signature(self, b2: usize, rho: usize) -> Option<SignatureTriple> {
        let (pos, zero, drop) = match self {
            NsType::Hyperbolic => (2, 0, 2),
            NsType::Parabolic => (2, 1, 3),
            NsType::Elliptic => (3, 0, 3),
        };
        let neg = b2.checked_sub(rho)?.checked_sub(drop)?;
        Some(SignatureTriple::new(pos, zero, neg))
    }
}

impl fmt::Display for NsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NsType::Hyperbolic => "Hyperbolic",
            NsType::Parabolic => "Parabolic",
            NsType::Elliptic => "Elliptic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsClassification {
    pub ns_type: NsType,
    pub ns_signature: SignatureTriple,
    pub tr_signature: SignatureTriple,
    pub expected_tr_signature: Option<SignatureTriple>,
}

impl NsClassification {
    pub fn tr_pattern_matches(&self) -> bool {
        self.expected_tr_signature == Some(self.tr_signature)
    }
}

pub fn classify_ns_type(l: &Lattice, ns: &Sublattice) -> Result<NsClassification> {
    if !l.is_nondegenerate() {
        return Err(LatticeError::DegenerateLattice);
    }
    let ns_signature = ns.signature();
    let ns_type =
        NsType::from_signature(ns_signature).ok_or(LatticeError::UnknownNsType(ns_signature))?;
    let tr = transcendental_sublattice(l, ns)?;
    Ok(NsClassification {
        ns_type,
        ns_signature,
        tr_signature: tr.signature(),
        expected_tr_signature: ns_type.companion_signature(l.rank(), ns.rank()),
    })
}

/// Conclusions about `(Tr, Tr_G, Ss_G)` for a group acting on a Douady lattice.
#[derive(Clone, Debug)]
pub struct TranscendentalReport {
    pub classification: NsClassification,
    pub transcendental: Sublattice,
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub acts_trivially_on_transcendental: bool,
    pub transcendental_in_invariant: bool,
    pub coinvariant_in_ns: bool,
    /// Only checked for parabolic and elliptic types.
    pub coinvariant_negative_definite: Option<bool>,
    pub coinvariant_signature: SignatureTriple,
}

impl TranscendentalReport {
    pub fn all_hold(&self) -> bool {
        self.acts_trivially_on_transcendental
            && self.transcendental_in_invariant
            && self.coinvariant_in_ns
            && self.coinvariant_negative_definite.unwrap_or(true)
    }
}

/// Verifies, on user-supplied `(G, NS)`, the conclusions that hold for finite symplectic
/// groups. A failure means the input does not model such an action.
pub fn lemma_transcendant_report(
    d: &DouadyLattice,
    g: &IsometryGroup,
    ns: &Sublattice,
) -> Result<TranscendentalReport> {
    let l = d.full();
    if !g.ambient().same_form(l) || !ns.ambient().same_form(l) {
        return Err(LatticeError::ForeignIsometry);
    }
    if !g.stabilizes(ns)? {
        return Err(LatticeError::NotStable);
    }
    let classification = classify_ns_type(l, ns)?;
    let transcendental = transcendental_sublattice(l, ns)?;
    let invariant = invariant_sublattice(g);
    let coinvariant = coinvariant_sublattice(g);
    let acts_trivially_on_transcendental = acts_trivially_on(g, &transcendental)?;
    let coinvariant_negative_definite = match classification.ns_type {
        NsType::Hyperbolic => None,
        NsType::Parabolic | NsType::Elliptic => Some(coinvariant.is_negative_definite()),
    };
    Ok(TranscendentalReport {
        transcendental_in_invariant: invariant.contains_sublattice(&transcendental),
        coinvariant_in_ns: ns.contains_sublattice(&coinvariant),
        coinvariant_signature: coinvariant.signature(),
        acts_trivially_on_transcendental,
        coinvariant_negative_definite,
        classification,
        transcendental,
        invariant,
        coinvariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVector;

    fn swap() -> IntMatrix {
        IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
    }

    fn span(l: &Lattice, vs: &[&[i64]]) -> Sublattice {
        let vs: Vec<LatticeVector> = vs.iter().map(|c| LatticeVector::from_i64(c)).collect();
        Sublattice::from_vectors(l, &vs).unwrap()
    }

    #[test]
    fn closure_examples() {
        let u = Lattice::hyperbolic_plane();
        assert_eq!(closure(&u, &[], 10).unwrap().order(), 1);
        assert_eq!(closure(&u, &[swap()], 10).unwrap().order(), 2);
        let uu = u.direct_sum(&u);
        let s1 = swap().block_diagonal(&IntMatrix::identity(2));
        let s2 = IntMatrix::identity(2).block_diagonal(&swap());
        assert_eq!(closure(&uu, &[s1, s2], 10).unwrap().order(), 4);
    }

    #[test]
    fn closure_rejects_bad_input() {
        let u = Lattice::hyperbolic_plane();
        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            closure(&u, &[shear], 10),
            Err(LatticeError::NotIsometry(_))
        ));
        // Pell solution 3² − 2·2² = 1 gives an infinite-order isometry of diag(1, −2)
        let l = Lattice::diagonal(&[1, -2]);
        let boost = IntMatrix::from_i64(&[&[3, 4], &[2, 3]]);
        assert!(crate::lattice::is_isometry(&l, &boost).unwrap());
        assert_eq!(
            closure(&l, &[boost], 50).unwrap_err(),
            LatticeError::GroupTooLarge { cap: 50 }
        );
    }

    #[test]
    fn swap_invariants() {
        let u = Lattice::hyperbolic_plane();
        let g = closure(&u, &[swap()], 10).unwrap();
        let tr = invariant_sublattice(&g);
        assert!(tr.same_span(&span(&u, &[&[1, 1]])));
        assert_eq!(tr.gram(), IntMatrix::from_i64(&[&[2]]));
        let ss = coinvariant_sublattice(&g);
        assert!(ss.same_span(&span(&u, &[&[1, -1]])));
        assert_eq!(ss.gram(), IntMatrix::from_i64(&[&[-2]]));
        assert!(verify_pair_properties(&g).unwrap().all_hold());
        assert!(acts_trivially_on(&g, &tr).unwrap());
        assert!(!acts_trivially_on(&g, &ss).unwrap());
        assert_eq!(
            acts_trivially_on(&g, &span(&u, &[&[1, 0]])),
            Err(LatticeError::NotStable)
        );
    }

    #[test]
    fn trivial_group() {
        let u = Lattice::hyperbolic_plane();
        let g = IsometryGroup::trivial(&u);
        assert!(invariant_sublattice(&g).same_span(&Sublattice::full(&u)));
        assert_eq!(coinvariant_sublattice(&g).rank(), 0);
        let rep = verify_pair_properties(&g).unwrap();
        assert!(rep.all_hold());
        assert!(acts_trivially_on(&g, &span(&u, &[&[1, 0]])).unwrap());
    }

    #[test]
    fn sign_flip_group() {
        let l = Lattice::hyperbolic_plane().direct_sum(&Lattice::diagonal(&[-2]));
        let flip = IntMatrix::diagonal(&[1.into(), 1.into(), (-1).into()]);
        let g = closure(&l, &[flip], 10).unwrap();
        let rep = verify_pair_properties(&g).unwrap();
        assert!(rep
            .invariant
            .same_span(&span(&l, &[&[1, 0, 0], &[0, 1, 0]])));
        assert!(rep.coinvariant.same_span(&span(&l, &[&[0, 0, 1]])));
        assert!(rep.all_hold());
    }

    #[test]
    fn degenerate_ambient_rejected() {
        let l = Lattice::new(IntMatrix::zeros(2, 2)).unwrap();
        let g = IsometryGroup::trivial(&l);
        assert_eq!(
            verify_pair_properties(&g).unwrap_err(),
            LatticeError::DegenerateLattice
        );
    }

    #[test]
    fn classification_examples() {
        let h = Lattice::diagonal(&[4, -2]);
        let c = classify_ns_type(&h, &Sublattice::full(&h)).unwrap();
        assert_eq!(c.ns_type, NsType::Hyperbolic);
        let e = Lattice::diagonal(&[-2, -4]);
        assert_eq!(
            classify_ns_type(&e, &Sublattice::full(&e)).unwrap().ns_type,
            NsType::Elliptic
        );
        // [[0]] sits inside U as an isotropic line
        let u = Lattice::hyperbolic_plane();
        let c = classify_ns_type(&u, &span(&u, &[&[1, 0]])).unwrap();
        assert_eq!(c.ns_type, NsType::Parabolic);
        assert_eq!(c.ns_signature, SignatureTriple::new(0, 1, 0));
        let bad = Lattice::diagonal(&[2, 2]);
        assert!(matches!(
            classify_ns_type(&bad, &Sublattice::full(&bad)),
            Err(LatticeError::UnknownNsType(_))
        ));
    }

    #[test]
    fn transcendental_examples() {
        let l = Lattice::diagonal(&[4, -2, 2]);
        assert!(transcendental_sublattice(&l, &Sublattice::zero(&l))
            .unwrap()
            .same_span(&Sublattice::full(&l)));
        let ns = span(&l, &[&[1, 0, 0], &[0, 1, 0]]);
        let tr = transcendental_sublattice(&l, &ns).unwrap();
        assert!(tr.same_span(&span(&l, &[&[0, 0, 1]])));
    }

    #[test]
    fn companion_patterns() {
        assert_eq!(
            NsType::Hyperbolic.companion_signature(22, 1),
            Some(SignatureTriple::new(2, 0, 19))
        );
        assert_eq!(NsType::Elliptic.companion_signature(2, 2), None);
    }
}
