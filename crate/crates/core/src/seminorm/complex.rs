//! Finite weighted chain complexes and pairs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use crate::{Error, Result, Q};

/// A bounded chain complex `C_top → … → C_0` of finite-dimensional rational
/// vector spaces with a named basis and a weighted ℓ¹ norm in each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteChainComplex {
    names: Vec<Vec<String>>,
    weights: Vec<Vec<Q>>,
    /// `boundary[n] : C_n → C_{n-1}` for `n = 0..=top+1`.
    boundary: Vec<Matrix>,
    empty: Matrix,
}

impl FiniteChainComplex {
    /// `boundaries[k]` is `∂_{k+1}`, a `dim C_k × dim C_{k+1}` matrix.
    pub fn new(
        names: Vec<Vec<String>>,
        boundaries: Vec<Matrix>,
        weights: Vec<Vec<Q>>,
    ) -> Result<Self> {
        let top = names
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidComplex("no degrees".into()))?;
        if boundaries.len() != top {
            return Err(Error::InvalidComplex(format!(
                "expected {top} boundary matrices, got {}",
                boundaries.len()
            )));
        }
        if weights.len() != names.len() {
            return Err(Error::InvalidComplex(
                "one weight list per degree required".into(),
            ));
        }
        for (n, (w, b)) in weights.iter().zip(&names).enumerate() {
            if w.len() != b.len() {
                return Err(Error::InvalidComplex(format!(
                    "degree {n}: {} weights for {} cells",
                    w.len(),
                    b.len()
                )));
            }
            if let Some(x) = w.iter().find(|x| !x.is_positive()) {
                return Err(Error::InvalidComplex(format!(
                    "degree {n}: weight {x} is not positive"
                )));
            }
        }
        let mut boundary = Vec::with_capacity(top + 2);
        boundary.push(Matrix::zeros(0, names[0].len()));
        for (k, m) in boundaries.into_iter().enumerate() {
            if m.rows() != names[k].len() || m.cols() != names[k + 1].len() {
                return Err(Error::InvalidComplex(format!(
                    "boundary of degree {} is {}×{}, expected {}×{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    names[k].len(),
                    names[k + 1].len()
                )));
            }
            boundary.push(m);
        }
        boundary.push(Matrix::zeros(names[top].len(), 0));
        let c = FiniteChainComplex {
            names,
            weights,
            boundary,
            empty: Matrix::zeros(0, 0),
        };
        for n in 2..=top {
            if !c.boundary(n - 1).mul(c.boundary(n)).is_zero() {
                return Err(Error::InvalidComplex(format!("∂∘∂ ≠ 0 in degree {n}")));
            }
        }
        Ok(c)
    }

    pub fn with_unit_weights(names: Vec<Vec<String>>, boundaries: Vec<Matrix>) -> Result<Self> {
        let weights = names.iter().map(|b| vec![Q::one(); b.len()]).collect();
        Self::new(names, boundaries, weights)
    }

    /// The ordered simplicial complex generated by the given simplices.
    ///
    /// A face is oriented by its vertex order in the first listed simplex
    /// containing it; boundary signs follow the alternating convention,
    /// corrected by the permutation sign where orders disagree.
    pub fn from_simplices(simplices: &[Vec<String>]) -> Result<Self> {
        let top = simplices
            .iter()
            .map(|s| s.len())
            .max()
            .ok_or_else(|| Error::InvalidComplex("no simplices".into()))?;
        if top == 0 {
            return Err(Error::InvalidComplex("empty simplex".into()));
        }
        let mut cells: Vec<Vec<Vec<String>>> = vec![Vec::new(); top];
        let mut index: BTreeMap<Vec<String>, (usize, usize)> = BTreeMap::new();
        for s in simplices {
            let mut sorted = s.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in {s:?}")));
            }
            for mask in 1u64..(1 << s.len()) {
                let face: Vec<String> = (0..s.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i].clone())
                    .collect();
                let mut key = face.clone();
                key.sort();
                if !index.contains_key(&key) {
                    let d = face.len() - 1;
                    index.insert(key, (d, cells[d].len()));
                    cells[d].push(face);
                }
            }
        }
        let mut boundaries = Vec::new();
        for d in 1..top {
            let mut m = Matrix::zeros(cells[d - 1].len(), cells[d].len());
            for (j, s) in cells[d].iter().enumerate() {
                for k in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(k);
                    let mut key = face.clone();
                    key.sort();
                    let (_, i) = index[&key];
                    let mut sign = if k % 2 == 0 { 1 } else { -1 };
                    sign *= permutation_sign(&face, &cells[d - 1][i]);
                    m.set(i, j, Q::from_integer(sign.into()));
                }
            }
            boundaries.push(m);
        }
        let names = cells
            .iter()
            .map(|c| c.iter().map(|s| s.join(",")).collect())
            .collect();
        Self::with_unit_weights(names, boundaries)
    }

    pub fn top(&self) -> usize {
        self.names.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.names.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, n: usize, name: &str) -> Option<usize> {
        self.names(n).iter().position(|s| s == name)
    }

    pub fn weights(&self, n: usize) -> &[Q] {
        self.weights.get(n).map_or(&[], Vec::as_slice)
    }

    /// `∂_n : C_n → C_{n-1}` (zero outside the complex).
    pub fn boundary(&self, n: usize) -> &Matrix {
        self.boundary.get(n).unwrap_or(&self.empty)
    }

    pub fn with_weights(&self, weights: Vec<Vec<Q>>) -> Result<Self> {
        let boundaries = self.boundary[1..=self.top()].to_vec();
        Self::new(self.names.clone(), boundaries, weights)
    }

    pub fn chain(&self, n: usize, terms: &[(&str, i64)]) -> Result<Vec<Q>> {
        let mut c = vec![Q::zero(); self.dim(n)];
        for (name, k) in terms {
            let i = self
                .find(n, name)
                .ok_or_else(|| Error::InvalidComplex(format!("no cell `{name}` in degree {n}")))?;
            c[i] += Q::from_integer((*k).into());
        }
        Ok(c)
    }

    pub(crate) fn check_chain(&self, n: usize, c: &[Q]) -> Result<()> {
        if c.len() == self.dim(n) {
            Ok(())
        } else {
            Err(Error::InvalidComplex(format!(
                "chain of length {} in degree {n} of dimension {}",
                c.len(),
                self.dim(n)
            )))
        }
    }

    pub fn apply_boundary(&self, n: usize, c: &[Q]) -> Vec<Q> {
        if n == 0 {
            return Vec::new();
        }
        self.boundary(n).apply(c)
    }

    /// Weighted ℓ¹ norm.
    pub fn norm(&self, n: usize, c: &[Q]) -> Q {
        weighted_l1(self.weights(n), c)
    }

    /// `‖c‖₁(θ) = ‖c‖₁ + θ‖∂c‖₁`.
    pub fn theta_norm(&self, n: usize, c: &[Q], theta: &Q) -> Result<Q> {
        if theta.is_negative() {
            return Err(Error::NegativeTheta);
        }
        self.check_chain(n, c)?;
        let b = self.apply_boundary(n, c);
        Ok(self.norm(n, c) + theta * self.norm(n.wrapping_sub(1), &b))
    }

    /// A basis of the cycles in degree `n`.
    pub fn cycles(&self, n: usize) -> Vec<Vec<Q>> {
        if n == 0 {
            return (0..self.dim(0))
                .map(|i| {
                    (0..self.dim(0))
                        .map(|j| if i == j { Q::one() } else { Q::zero() })
                        .collect()
                })
                .collect();
        }
        self.boundary(n).kernel()
    }

    pub fn betti(&self, n: usize) -> usize {
        self.cycles(n).len() - self.boundary(n + 1).rank()
    }
}

pub(crate) fn weighted_l1(w: &[Q], c: &[Q]) -> Q {
    w.iter()
        .zip(c)
        .filter(|(_, x)| !x.is_zero())
        .map(|(w, x)| w * x.abs())
        .sum()
}

fn permutation_sign(a: &[String], b: &[String]) -> i64 {
    let mut p: Vec<usize> = a
        .iter()
        .map(|x| b.iter().position(|y| y == x).expect("same vertices"))
        .collect();
    let mut sign = 1;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// A complex `X` with a subcomplex `Y` spanned by a subset of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairComplex {
    x: FiniteChainComplex,
    sub: Vec<Vec<usize>>,
}

impl PairComplex {
    /// `sub[n]` lists the basis indices of `Y` in degree `n`.
    pub fn new(x: FiniteChainComplex, mut sub: Vec<Vec<usize>>) -> Result<Self> {
        if sub.len() > x.top() + 1 && sub[x.top() + 1..].iter().any(|s| !s.is_empty()) {
            return Err(Error::InvalidComplex(
                "subcomplex has cells above the top degree".into(),
            ));
        }
        sub.resize(x.top() + 1, Vec::new());
        for (n, s) in sub.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.last().is_some_and(|&i| i >= x.dim(n)) {
                return Err(Error::InvalidComplex(format!(
                    "subcomplex index out of range in degree {n}"
                )));
            }
        }
        for n in 1..=x.top() {
            for &j in &sub[n] {
                for i in 0..x.dim(n - 1) {
                    if !x.boundary(n).get(i, j).is_zero() && sub[n - 1].binary_search(&i).is_err() {
                        return Err(Error::InvalidComplex(format!(
                            "subcomplex not closed: ∂{} meets {}",
                            x.names(n)[j],
                            x.names(n - 1)[i]
                        )));
                    }
                }
            }
        }
        Ok(PairComplex { x, sub })
    }

    /// The pair `(X, ∅)`.
    pub fn absolute(x: FiniteChainComplex) -> Self {
        let sub = vec![Vec::new(); x.top() + 1];
        PairComplex { x, sub }
    }

    /// `Y` given by cell names per degree.
    pub fn by_names(x: FiniteChainComplex, names: &[&[&str]]) -> Result<Self> {
        let mut sub = Vec::new();
        for (n, ns) in names.iter().enumerate() {
            let mut s = Vec::new();
            for name in *ns {
                s.push(x.find(n, name).ok_or_else(|| {
                    Error::InvalidComplex(format!("no cell `{name}` in degree {n}"))
                })?);
            }
            sub.push(s);
        }
        Self::new(x, sub)
    }

    /// `Y` is the closure of the given cells.
    pub fn generated_by(x: FiniteChainComplex, cells: &[(usize, usize)]) -> Result<Self> {
        let mut sub = vec![Vec::new(); x.top() + 1];
        let mut stack: Vec<(usize, usize)> = cells.to_vec();
        while let Some((n, j)) = stack.pop() {
            if n > x.top() || j >= x.dim(n) {
                return Err(Error::InvalidComplex(format!("no cell {j} in degree {n}")));
            }
            if sub[n].contains(&j) {
                continue;
            }
            sub[n].push(j);
            if n > 0 {
                for i in 0..x.dim(n - 1) {
                    if !x.boundary(n).get(i, j).is_zero() {
                        stack.push((n - 1, i));
                    }
                }
            }
        }
        Self::new(x, sub)
    }

    pub fn ambient(&self) -> &FiniteChainComplex {
        &self.x
    }

    pub fn sub_basis(&self, n: usize) -> &[usize] {
        self.sub.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn in_sub(&self, n: usize, i: usize) -> bool {
        self.sub_basis(n).binary_search(&i).is_ok()
    }

    pub fn is_absolute(&self) -> bool {
        self.sub.iter().all(Vec::is_empty)
    }

    pub fn sub_dim(&self, n: usize) -> usize {
        self.sub_basis(n).len()
    }

    /// `i_n : C_n(Y) → C_n(X)`.
    pub fn include(&self, n: usize, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.x.dim(n)];
        for (k, &i) in self.sub_basis(n).iter().enumerate() {
            out[i] = y[k].clone();
        }
        out
    }

    /// Coordinates on `Y`; the caller guarantees support in `Y`.
    pub fn restrict(&self, n: usize, c: &[Q]) -> Vec<Q> {
        self.sub_basis(n).iter().map(|&i| c[i].clone()).collect()
    }

    /// Matrix of `i_n`.
    pub fn inclusion(&self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(self.x.dim(n), self.sub_dim(n));
        for (k, &i) in self.sub_basis(n).iter().enumerate() {
            m.set(i, k, Q::one());
        }
        m
    }

    /// `∂_n` of `Y` in the `Y` bases.
    pub fn sub_boundary(&self, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.sub_dim(n - 1) };
        let mut m = Matrix::zeros(rows, self.sub_dim(n));
        if n == 0 {
            return m;
        }
        for (r, &i) in self.sub_basis(n - 1).iter().enumerate() {
            for (c, &j) in self.sub_basis(n).iter().enumerate() {
                m.set(r, c, self.x.boundary(n).get(i, j).clone());
            }
        }
        m
    }

    pub fn sub_weights(&self, n: usize) -> Vec<Q> {
        self.sub_basis(n)
            .iter()
            .map(|&i| self.x.weights(n)[i].clone())
            .collect()
    }

    /// Whether `∂z` lies in `C(Y)`.
    pub fn is_relative_cycle(&self, n: usize, z: &[Q]) -> bool {
        z.len() == self.x.dim(n)
            && self
                .x
                .apply_boundary(n, z)
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || self.in_sub(n - 1, i))
    }

    pub fn check_relative_cycle(&self, class: &HomClass) -> Result<()> {
        self.x.check_chain(class.degree, &class.chain)?;
        if self.is_relative_cycle(class.degree, &class.chain) {
            Ok(())
        } else {
            Err(Error::NotACycle)
        }
    }

    /// A basis of relative cycles modulo nothing (kernel of `∂` followed by
    /// the projection away from `Y`).
    pub fn relative_cycles(&self, n: usize) -> Vec<Vec<Q>> {
        if n == 0 {
            return self.x.cycles(0);
        }
        let b = self.x.boundary(n);
        let outside: Vec<usize> = (0..self.x.dim(n - 1))
            .filter(|&i| !self.in_sub(n - 1, i))
            .collect();
        let mut m = Matrix::zeros(outside.len(), self.x.dim(n));
        for (r, &i) in outside.iter().enumerate() {
            for j in 0..self.x.dim(n) {
                m.set(r, j, b.get(i, j).clone());
            }
        }
        m.kernel()
    }
}

/// A homology class given by a representative chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClass {
    pub degree: usize,
    pub chain: Vec<Q>,
}

impl HomClass {
    pub fn new(degree: usize, chain: Vec<Q>) -> Self {
        HomClass { degree, chain }
    }
}

impl core::fmt::Display for HomClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let parts: Vec<String> = self
            .chain
            .iter()
            .map(|x| crate::rational::to_string(x))
            .collect();
        write!(f, "[{}]_{}", parts.join(" "), self.degree)
    }
}
