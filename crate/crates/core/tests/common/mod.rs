#![allow(dead_code)]

use hilblat::{IntMatrix, Lattice, LatticeVector};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Random symmetric integer matrix of the given size with entries in `[-bound, bound]`.
pub fn symmetric(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = IntMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = BigInt::from(upper[k]);
                m[(j, i)] = BigInt::from(upper[k]);
                k += 1;
            }
        }
        m
    })
}

pub fn lattice(max_rank: usize, bound: i64) -> impl Strategy<Value = Lattice> {
    (1..=max_rank)
        .prop_flat_map(move |n| symmetric(n, bound).prop_map(|g| Lattice::new(g).unwrap()))
}

pub fn nondegenerate_lattice(max_rank: usize, bound: i64) -> impl Strategy<Value = Lattice> {
    lattice(max_rank, bound).prop_filter("nondegenerate", |l| l.is_nondegenerate())
}

pub fn vector(n: usize, bound: i64) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-bound..=bound, n).prop_map(|c| LatticeVector::from_i64(&c))
}

pub fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols).prop_map(move |d| {
        let rows_v: Vec<Vec<i64>> = d.chunks(cols.max(1)).map(|c| c.to_vec()).collect();
        if cols == 0 {
            IntMatrix::zeros(rows, 0)
        } else {
            IntMatrix::from_rows(cols, &rows_v).unwrap()
        }
    })
}

pub fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("small test value")
}

/// Every integer vector with coordinates in `[-h, h]`, skipping zero.
pub fn box_points(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let side = (2 * h + 1) as usize;
    let total = side.pow(n as u32);
    for mut idx in 0..total {
        let mut p = Vec::with_capacity(n);
        for _ in 0..n {
            p.push((idx % side) as i64 - h);
            idx /= side;
        }
        if p.iter().any(|&x| x != 0) {
            out.push(p);
        }
    }
    out
}

pub fn gram_i64(l: &Lattice) -> Vec<Vec<i64>> {
    l.gram()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect()
}

pub fn pair_i64(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}
pub mod groups;
