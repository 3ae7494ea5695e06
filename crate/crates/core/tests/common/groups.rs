//! Random finite isometry groups and an independent oracle for their invariant lattices.
#![allow(dead_code)]

use hilblat::group::{closure, IsometryGroup};
use hilblat::lattice::{is_isometry, reflection_isometry};
use hilblat::matrix::RatMatrix;
use hilblat::{IntMatrix, Lattice, LatticeError, LatticeVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_ORDER: usize = 8;

pub fn signed_permutation<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = IntMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = if rng.gen_bool(0.5) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
    }
    m
}

/// Matrix group generated by `gens`, as an isometry group of the standard form.
fn matrix_group(gens: &[IntMatrix], n: usize) -> Option<Vec<IntMatrix>> {
    let standard = Lattice::diagonal(&vec![1; n]);
    match closure(&standard, gens, MAX_ORDER) {
        Ok(g) => Some(g.elements().to_vec()),
        Err(LatticeError::GroupTooLarge { .. }) => None,
        Err(e) => panic!("signed permutations are orthogonal: {e}"),
    }
}

/// `Σ gᵀ·A·g` over the group, for a random symmetric `A`.
fn averaged_gram<R: Rng>(rng: &mut R, elements: &[IntMatrix], n: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = BigInt::from(rng.gen_range(-3i64..=3));
            a[(i, j)] = x.clone();
            a[(j, i)] = x;
        }
    }
    let mut sum = IntMatrix::zeros(n, n);
    for g in elements {
        let term = g.transpose().mul(&a).unwrap().mul(g).unwrap();
        sum = sum.sub(&term.scale(&BigInt::from(-1))).unwrap();
    }
    sum
}

fn short_roots(l: &Lattice) -> Vec<LatticeVector> {
    let n = l.rank();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for mut idx in 1..total {
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push((idx % 3) as i64 - 1);
            idx /= 3;
        }
        let v = LatticeVector::from_i64(&c);
        let q = l.norm(&v).unwrap();
        if !q.is_zero() && q.abs() <= BigInt::from(2) {
            out.push(v);
        }
    }
    out
}

/// A random group of order at most 8 acting on a nondegenerate lattice of rank at most
/// `max_rank`, generated by signed permutations and/or reflections.
pub fn random_finite_group<R: Rng>(rng: &mut R, max_rank: usize) -> IsometryGroup {
    loop {
        let n = rng.gen_range(2..=max_rank);
        let kind = rng.gen_range(0..3);
        let mut gens = Vec::new();
        if kind != 1 {
            for _ in 0..rng.gen_range(1..=2) {
                gens.push(signed_permutation(rng, n));
            }
        }
        let elements = match matrix_group(&gens, n) {
            Some(e) => e,
            None => continue,
        };
        let gram = averaged_gram(rng, &elements, n);
        let Ok(l) = Lattice::new(gram) else { continue };
        if !l.is_nondegenerate() {
            continue;
        }
        if kind != 0 {
            let roots = short_roots(&l);
            if roots.is_empty() {
                continue;
            }
            let count = if kind == 1 { rng.gen_range(1..=2) } else { 1 };
            for _ in 0..count {
                let v = roots.choose(rng).unwrap();
                gens.push(reflection_isometry(&l, v).unwrap().into_matrix());
            }
        }
        debug_assert!(gens.iter().all(|g| is_isometry(&l, g).unwrap()));
        match closure(&l, &gens, MAX_ORDER) {
            Ok(g) => return g,
            Err(LatticeError::GroupTooLarge { .. }) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

/// Rational 1-eigenspace of `P = (1/|G|)·Σ g`, returned as primitive integer vectors.
pub fn average_projector_fixed_space(g: &IsometryGroup) -> Vec<Vec<BigInt>> {
    let n = g.ambient().rank();
    let order = BigRational::from_integer(BigInt::from(g.order()));
    let mut p = RatMatrix::zeros(n, n);
    for h in g.elements() {
        for i in 0..n {
            for j in 0..n {
                let v = &p[(i, j)] + BigRational::from_integer(h[(i, j)].clone()) / &order;
                p[(i, j)] = v;
            }
        }
    }
    // nullspace of P − I from its reduced row echelon form
    for i in 0..n {
        let v = &p[(i, i)] - BigRational::one();
        p[(i, i)] = v;
    }
    let pivots = p.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -p[(r, f)].clone();
            }
            primitive(&x)
        })
        .collect()
}

fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let den = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter().map(|v| v / &g).collect()
}
