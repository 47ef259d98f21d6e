//! Finitely generated abelian groups `ℤ^k / diag(d)` and their subgroups.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::intmat::{from_columns, Hnf};

/// Reduces each coordinate into `[0, d_i)` where `d_i > 0`.
pub(crate) fn canonical(factors: &[BigInt], v: &mut [BigInt]) {
    for (x, d) in v.iter_mut().zip(factors) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

pub(crate) fn add(factors: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    canonical(factors, &mut v);
    v
}

pub(crate) fn neg(factors: &[BigInt], a: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|x| -x).collect();
    canonical(factors, &mut v);
    v
}

/// `n_1 c_1 + … + n_k c_k` for column vectors `c_i`.
pub(crate) fn combine(factors: &[BigInt], cols: &[Vec<BigInt>], coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut v = alloc::vec![BigInt::zero(); factors.len()];
    for (c, n) in cols.iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(c) {
            *x += y * n;
        }
    }
    canonical(factors, &mut v);
    v
}

/// The subgroup of `ℤ^n / diag(d)` generated by the columns of `M`, kept as
/// the lattice `col(M) + col(D)` in Hermite form.
#[derive(Debug, Clone)]
pub(crate) struct Sublattice {
    factors: Vec<BigInt>,
    k: usize,
    hnf: Hnf,
}

impl Sublattice {
    pub fn new(factors: &[BigInt], gens: &[Vec<BigInt>]) -> Self {
        let n = factors.len();
        let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
        for (i, d) in factors.iter().enumerate() {
            if !d.is_zero() {
                let mut e = alloc::vec![BigInt::zero(); n];
                e[i] = d.clone();
                cols.push(e);
            }
        }
        let hnf = Hnf::new(n, &from_columns(n, &cols));
        Sublattice {
            factors: factors.to_vec(),
            k: gens.len(),
            hnf,
        }
    }

    /// `(r, c)` with `g = r + M c`, `r` the canonical coset representative.
    pub fn split(&self, g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let (mut r, x) = self.hnf.reduce(g);
        canonical(&self.factors, &mut r);
        (r, x[..self.k].to_vec())
    }

    /// Coefficients `c` with `g = M c`, if `g` lies in the subgroup.
    pub fn preimage(&self, g: &[BigInt]) -> Option<Vec<BigInt>> {
        let (r, c) = self.split(g);
        r.iter().all(Zero::is_zero).then_some(c)
    }
}

/// Whether `c ↦ M c` is a well-defined injective map
/// `ℤ^k / diag(d_e) → ℤ^n / diag(d)`.
pub(crate) fn is_embedding(
    source: &[BigInt],
    target: &[BigInt],
    images: &[Vec<BigInt>],
) -> Result<(), &'static str> {
    let n = target.len();
    let k = source.len();
    let sub = Sublattice::new(target, &[]);
    for (d, col) in source.iter().zip(images) {
        let v: Vec<BigInt> = col.iter().map(|x| x * d).collect();
        if sub.preimage(&v).is_none() {
            return Err("edge map is not well defined on the torsion of the edge group");
        }
    }
    let mut cols: Vec<Vec<BigInt>> = images.to_vec();
    for (i, d) in target.iter().enumerate() {
        if !d.is_zero() {
            let mut e = alloc::vec![BigInt::zero(); n];
            e[i] = d.clone();
            cols.push(e);
        }
    }
    let hnf = Hnf::new(n, &from_columns(n, &cols));
    for kv in hnf.kernel() {
        for (x, d) in kv[..k].iter().zip(source) {
            let ok = if d.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(d)
            };
            if !ok {
                return Err("edge map is not injective");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn split_is_canonical_on_cosets() {
        let f = v(&[0, 6]);
        let s = Sublattice::new(&f, &[v(&[2, 3])]);
        let (r1, _) = s.split(&v(&[5, 1]));
        let (r2, _) = s.split(&add(&f, &v(&[5, 1]), &v(&[-6, -9])));
        assert_eq!(r1, r2);
        let (r, c) = s.split(&v(&[4, 0]));
        assert_eq!(add(&f, &r, &combine(&f, &[v(&[2, 3])], &c)), v(&[4, 0]));
    }

    #[test]
    fn embedding_checks() {
        assert!(is_embedding(&v(&[0]), &v(&[0]), &[v(&[2])]).is_ok());
        assert!(is_embedding(&v(&[0]), &v(&[4]), &[v(&[1])]).is_err());
        assert!(is_embedding(&v(&[2]), &v(&[4]), &[v(&[2])]).is_ok());
        assert!(is_embedding(&v(&[2]), &v(&[4]), &[v(&[1])]).is_err());
        assert!(is_embedding(&v(&[0, 0]), &v(&[0]), &[v(&[1]), v(&[1])]).is_err());
    }
}
