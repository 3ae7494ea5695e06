//! Hermite normal form over the integers and the kernel/saturation machinery built on it.
//!
//! Bases of sublattices of `Z^r` are kept as *columns* of an `r × k` matrix. The canonical
//! form of such a basis is the column-style Hermite normal form: the transpose of the row
//! HNF of `Bᵀ`. Two bases span the same lattice iff their canonical forms are identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Result of a row Hermite reduction `transform · input = hnf`.
#[derive(Clone, Debug)]
pub struct RowHermite {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    /// Pivot column of each nonzero row of `hnf`, in order.
    pub pivots: Vec<usize>,
}

impl RowHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Unimodular step on rows `(r, i)`: `r ← s·r + t·i`, `i ← (a/g)·i − (b/g)·r`.
struct RowStep {
    s: BigInt,
    t: BigInt,
    a_g: BigInt,
    b_g: BigInt,
}

impl RowStep {
    /// Step that moves `gcd(a, b)` into row `r` and clears row `i` in the current column.
    fn clearing(a: &BigInt, b: &BigInt) -> Self {
        let e = a.extended_gcd(b);
        RowStep {
            s: e.x,
            t: e.y,
            a_g: a / &e.gcd,
            b_g: b / &e.gcd,
        }
    }

    fn apply(&self, m: &mut IntMatrix, r: usize, i: usize) {
        for j in 0..m.cols() {
            let x = m[(r, j)].clone();
            let y = m[(i, j)].clone();
            m[(r, j)] = &self.s * &x + &self.t * &y;
            m[(i, j)] = &self.a_g * &y - &self.b_g * &x;
        }
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -x.clone();
    }
}

/// `m[dst] -= q · m[src]`
fn sub_row_multiple(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = &m[(dst, j)] - q * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

/// Row Hermite normal form with a unimodular transform.
///
/// Nonzero rows come first, pivots are strictly increasing and positive, and entries above
/// each pivot lie in `[0, pivot)`.
pub fn row_hermite(input: &IntMatrix) -> RowHermite {
    let (m, n) = (input.rows(), input.cols());
    let mut h = input.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in (r + 1)..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let step = RowStep::clearing(&h[(r, c)], &h[(i, c)]);
            step.apply(&mut h, r, i);
            step.apply(&mut u, r, i);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&p);
            sub_row_multiple(&mut h, i, r, &q);
            sub_row_multiple(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    RowHermite {
        hnf: h,
        transform: u,
        pivots,
    }
}

/// Row HNF of the rows of `rows`, with zero rows removed.
pub fn row_hnf_basis(rows: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let rh = row_hermite(rows);
    let k = rh.rank();
    let mut out = IntMatrix::zeros(k, rows.cols());
    for i in 0..k {
        out.row_mut(i).clone_from_slice(rh.hnf.row(i));
    }
    (out, rh.pivots)
}

/// Canonical column basis of the lattice spanned by the columns of `generators`
/// (`r × k`, columns may be dependent). Returns an `r × rank` matrix.
pub fn column_hnf(generators: &IntMatrix) -> IntMatrix {
    row_hnf_basis(&generators.transpose()).0.transpose()
}

/// Saturated basis of `{x ∈ Z^c : m·x = 0}`, in column HNF (`c × (c - rank m)`).
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let c = m.cols();
    let rh = row_hermite(&m.transpose());
    let rank = rh.rank();
    // rows of the transform that annihilate mᵀ from the left span the kernel
    let mut gens = IntMatrix::zeros(c - rank, c);
    for (k, i) in (rank..c).enumerate() {
        gens.row_mut(k).clone_from_slice(rh.transform.row(i));
    }
    row_hnf_basis(&gens).0.transpose()
}

/// `(rational span of the columns) ∩ Z^r`, as a column HNF basis.
pub fn saturation(generators: &IntMatrix) -> IntMatrix {
    let annihilator = integer_kernel(&generators.transpose());
    integer_kernel(&annihilator.transpose())
}

/// Whether `v` is an integer combination of the columns of the column-HNF basis `basis`.
pub fn in_column_span(basis: &IntMatrix, v: &[BigInt]) -> bool {
    let rows = basis.transpose();
    let mut w = v.to_vec();
    let mut start = 0;
    for i in 0..rows.rows() {
        let row = rows.row(i);
        let Some(p) = (start..row.len()).find(|&j| !row[j].is_zero()) else {
            continue;
        };
        if w[start..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = w[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
        start = p + 1;
    }
    w.iter().all(Zero::is_zero)
}

/// Index `[saturation : span]` for a column HNF basis of full column rank.
pub fn saturation_index(basis: &IntMatrix) -> BigInt {
    let pivot_product = |rows: &IntMatrix| {
        let (h, pivots) = row_hnf_basis(rows);
        pivots
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &c)| acc * &h[(i, c)])
    };
    let sat = saturation(basis);
    pivot_product(&basis.transpose()) / pivot_product(&sat.transpose())
}
