//! Random isometries built from reflections in short vectors. Used to drive property tests.

use rand::seq::index::sample;
use rand::Rng;

use crate::k3::{natural_lift, DouadyLattice};
use crate::lattice::{reflection_isometry, Isometry, Lattice, LatticeVector};

const MAX_ATTEMPTS: usize = 100_000;

/// A vector with at most `support` nonzero coordinates in `{-1, 1}` whose norm lies in
/// `norms`, restricted to the coordinates in `allowed`.
///
/// Panics if no such vector turns up after many attempts.
pub fn random_short_vector<R: Rng + ?Sized>(
    l: &Lattice,
    rng: &mut R,
    allowed: &[usize],
    support: usize,
    norms: &[i64],
) -> LatticeVector {
    for _ in 0..MAX_ATTEMPTS {
        let k = rng.gen_range(1..=support.min(allowed.len()));
        let mut v = LatticeVector::zero(l.rank());
        for idx in sample(rng, allowed.len(), k).iter() {
            v.0[allowed[idx]] = if rng.gen_bool(0.5) {
                1.into()
            } else {
                (-1).into()
            };
        }
        let q = l.norm(&v).expect("rank matches");
        if norms.iter().any(|&n| q == n.into()) {
            return v;
        }
    }
    panic!("no short vector with norm in {norms:?} found");
}

/// Product of up to `max_len` reflections in vectors of norm `±2` supported on `allowed`.
pub fn random_reflection_product<R: Rng + ?Sized>(
    l: &Lattice,
    rng: &mut R,
    allowed: &[usize],
    max_len: usize,
) -> Isometry {
    let len = rng.gen_range(1..=max_len);
    let mut f = Isometry::identity(l);
    for _ in 0..len {
        let v = random_short_vector(l, rng, allowed, 4, &[2, -2]);
        let r = reflection_isometry(l, &v).expect("norm ±2 reflections are integral");
        f = r.compose(&f).expect("same lattice");
    }
    f
}

/// Random isometry of the whole lattice.
pub fn random_isometry<R: Rng + ?Sized>(l: &Lattice, rng: &mut R, max_len: usize) -> Isometry {
    let all: Vec<usize> = (0..l.rank()).collect();
    random_reflection_product(l, rng, &all, max_len)
}

/// Random isometry of the surface part, lifted to fix `δ`.
pub fn random_natural_isometry<R: Rng + ?Sized>(
    d: &DouadyLattice,
    rng: &mut R,
    max_len: usize,
) -> (Isometry, Isometry) {
    let phi = random_isometry(d.surface_lattice(), rng, max_len);
    let lift = natural_lift(d, &phi).expect("phi is an isometry of the surface part");
    (phi, lift)
}
