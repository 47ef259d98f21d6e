//! Column-style Hermite normal form over ℤ with a unimodular transform.
//!
//! Used for membership, preimages and canonical coset representatives in
//! finitely generated abelian groups, and for injectivity checks of edge maps.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Mat = Vec<Vec<BigInt>>;

/// `a · u = h` with `h` in column echelon form.
///
/// Column `c < rank` has a positive pivot at row `pivots[c]`, zeros above it,
/// and pivot rows strictly increase with `c`. Entries left of a pivot in its
/// row lie in `[0, pivot)`. Columns `rank..` of `h` are zero, so the matching
/// columns of `u` span the integer kernel of `a`.
#[derive(Debug, Clone)]
pub(crate) struct Hnf {
    pub cols: usize,
    pub h: Mat,
    pub u: Mat,
    pub pivots: Vec<usize>,
}

fn col_axpy(m: &mut Mat, dst: usize, q: &BigInt, src: usize) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn col_swap(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_neg(m: &mut Mat, a: usize) {
    for row in m.iter_mut() {
        row[a] = -core::mem::take(&mut row[a]);
    }
}

pub(crate) fn identity(n: usize) -> Mat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

impl Hnf {
    /// `a` is `rows × cols`; `rows` is passed separately so that empty
    /// generating sets still know their ambient dimension.
    pub fn new(rows: usize, a: &Mat) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        let mut h: Mat = if a.is_empty() {
            vec![Vec::new(); rows]
        } else {
            a.clone()
        };
        let mut u = identity(cols);
        let mut pivots = Vec::new();
        let mut c = 0;
        for i in 0..rows {
            if c == cols {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for j in c..cols {
                    if !h[i][j].is_zero() && best.map_or(true, |b| h[i][j].abs() < h[i][b].abs()) {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { break };
                if b != c {
                    col_swap(&mut h, b, c);
                    col_swap(&mut u, b, c);
                }
                let mut done = true;
                for j in c + 1..cols {
                    if !h[i][j].is_zero() {
                        let q = h[i][j].div_floor(&h[i][c]);
                        col_axpy(&mut h, j, &q, c);
                        col_axpy(&mut u, j, &q, c);
                        if !h[i][j].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h[i][c].is_zero() {
                continue;
            }
            if h[i][c].is_negative() {
                col_neg(&mut h, c);
                col_neg(&mut u, c);
            }
            for k in 0..c {
                let q = h[i][k].div_floor(&h[i][c]);
                if !q.is_zero() {
                    col_axpy(&mut h, k, &q, c);
                    col_axpy(&mut u, k, &q, c);
                }
            }
            pivots.push(i);
            c += 1;
        }
        Hnf { cols, h, u, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `g` modulo the column lattice. Returns the canonical remainder
    /// and coefficients `x` (over the original columns) with
    /// `g = remainder + a · x`.
    pub fn reduce(&self, g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut r = g.to_vec();
        let mut y = vec![BigInt::zero(); self.rank()];
        for (c, &row) in self.pivots.iter().enumerate() {
            let q = r[row].div_floor(&self.h[row][c]);
            if !q.is_zero() {
                for (i, ri) in r.iter_mut().enumerate() {
                    *ri -= &self.h[i][c] * &q;
                }
                y[c] = q;
            }
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for (j, xj) in x.iter_mut().enumerate() {
            for (c, yc) in y.iter().enumerate() {
                if !yc.is_zero() {
                    *xj += &self.u[j][c] * yc;
                }
            }
        }
        (r, x)
    }

    /// Integer kernel basis of the original matrix, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols)
            .map(|c| (0..self.cols).map(|j| self.u[j][c].clone()).collect())
            .collect()
    }
}

/// Columns given as vectors; returns the `rows × cols` matrix.
pub(crate) fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Mat {
    let mut m = vec![Vec::with_capacity(cols.len()); rows];
    for col in cols {
        for (i, row) in m.iter_mut().enumerate() {
            row.push(col[i].clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        let k = b.len();
        let p = b.first().map_or(0, |r| r.len());
        let mut out = vec![vec![BigInt::zero(); p]; n];
        for i in 0..n {
            for j in 0..p {
                for t in 0..k {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
        out
    }

    #[test]
    fn transform_is_consistent() {
        let a = m(&[&[4, 6, 2], &[2, 3, 1], &[0, 5, 5]]);
        let hnf = Hnf::new(3, &a);
        assert_eq!(mul(&a, &hnf.u), hnf.h);
        assert_eq!(hnf.rank(), 2);
        for k in hnf.kernel() {
            let kc = from_columns(3, &[k]);
            assert!(mul(&a, &kc).iter().all(|r| r[0].is_zero()));
        }
    }

    #[test]
    fn reduce_gives_membership_and_coefficients() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let hnf = Hnf::new(2, &a);
        let g = [BigInt::from(7), BigInt::from(-4)];
        let (r, x) = hnf.reduce(&g);
        assert_eq!(r, [BigInt::from(1), BigInt::from(2)]);
        assert_eq!(&x[0] * 2 + &r[0], g[0]);
        assert_eq!(&x[1] * 3 + &r[1], g[1]);
    }
}
