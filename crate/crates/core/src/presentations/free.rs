//! Reduced words in a free group, stored as syllables `x_i^{k}`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Generator index and nonzero exponent.
pub type Syllable = (u32, BigInt);

/// A freely reduced word: exponents nonzero, adjacent generators distinct.
///
/// `Ord` is shortlex on the letter expansion, with letters ordered
/// `x_0 < x_0⁻¹ < x_1 < x_1⁻¹ < …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<Syllable>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(g: u32, k: impl Into<BigInt>) -> Self {
        let mut w = FreeWord::identity();
        w.push(g, k.into());
        w
    }

    pub fn from_syllables(it: impl IntoIterator<Item = Syllable>) -> Self {
        let mut w = FreeWord::identity();
        for (g, k) in it {
            w.push(g, k);
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.0.len()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> BigInt {
        self.0.iter().map(|(_, k)| k.abs()).sum()
    }

    fn push(&mut self, g: u32, k: BigInt) {
        if k.is_zero() {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += k;
                if last.1.is_zero() {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, k));
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for (g, k) in &other.0 {
            out.push(*g, k.clone());
        }
        out
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|(g, k)| (*g, -k)).collect())
    }

    pub fn pow(&self, n: &BigInt) -> FreeWord {
        if n.is_zero() || self.is_identity() {
            return FreeWord::identity();
        }
        if self.0.len() == 1 {
            let (g, k) = &self.0[0];
            return FreeWord::generator(*g, k * n);
        }
        let (u, c) = self.cyclic_decomposition();
        let base = if n.is_negative() { c.inv() } else { c };
        let mut mid = FreeWord::identity();
        let mut i = BigInt::zero();
        let m = n.abs();
        while i < m {
            mid = mid.mul(&base);
            i += 1;
        }
        u.mul(&mid).mul(&u.inv())
    }

    /// `w = u c u⁻¹` with `c` cyclically reduced (a single syllable, or first
    /// and last generators distinct).
    pub fn cyclic_decomposition(&self) -> (FreeWord, FreeWord) {
        let mut u = FreeWord::identity();
        let mut c = self.0.clone();
        while c.len() >= 2 && c[0].0 == c[c.len() - 1].0 {
            let (g, p) = c.remove(0);
            let (_, q) = c.pop().expect("len >= 2");
            let s = &p + &q;
            u.push(g, p);
            if !s.is_zero() {
                c.push((g, s));
            }
        }
        (u, FreeWord(c))
    }

    /// Shortlex comparison; see the type docs.
    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        self.letter_len()
            .cmp(&other.letter_len())
            .then_with(|| lex_syllables(&self.0, &other.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

fn letter_key(s: &Syllable) -> (u32, bool) {
    (s.0, s.1.is_negative())
}

/// Lexicographic comparison of the letter expansions of two syllable lists.
pub(crate) fn lex_syllables(a: &[Syllable], b: &[Syllable]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    let mut ra = a.first().map(|s| s.1.abs()).unwrap_or_default();
    let mut rb = b.first().map(|s| s.1.abs()).unwrap_or_default();
    loop {
        match (i < a.len(), j < b.len()) {
            (false, false) => return Ordering::Equal,
            (false, true) => return Ordering::Less,
            (true, false) => return Ordering::Greater,
            _ => {}
        }
        let o = letter_key(&a[i]).cmp(&letter_key(&b[j]));
        if o != Ordering::Equal {
            return o;
        }
        let m = if ra < rb { ra.clone() } else { rb.clone() };
        ra -= &m;
        rb -= &m;
        if ra.is_zero() {
            i += 1;
            ra = a.get(i).map(|s| s.1.abs()).unwrap_or_default();
        }
        if rb.is_zero() {
            j += 1;
            rb = b.get(j).map(|s| s.1.abs()).unwrap_or_default();
        }
    }
}

/// The cyclic subgroup `⟨w⟩` of a free group with its coset machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    w: FreeWord,
    u: FreeWord,
    c: FreeWord,
}

impl CyclicSubgroup {
    pub fn new(w: FreeWord) -> Self {
        assert!(
            !w.is_identity(),
            "cyclic subgroup needs a nontrivial generator"
        );
        let (u, c) = w.cyclic_decomposition();
        CyclicSubgroup { w, u, c }
    }

    pub fn generator(&self) -> &FreeWord {
        &self.w
    }

    /// `k` with `g = w^k`, if any.
    pub fn exponent_of(&self, g: &FreeWord) -> Option<BigInt> {
        let h = self.u.inv().mul(g).mul(&self.u);
        if h.is_identity() {
            return Some(BigInt::zero());
        }
        if self.c.0.len() == 1 {
            let (x, m) = &self.c.0[0];
            if h.0.len() != 1 || h.0[0].0 != *x {
                return None;
            }
            let (q, r) = h.0[0].1.div_rem(m);
            return r.is_zero().then_some(q);
        }
        let s = self.c.0.len();
        if h.0.len() % s != 0 {
            return None;
        }
        let mut k = BigInt::from(h.0.len() / s);
        if h.0[0].0 != self.c.0[0].0 || h.0[0].1.is_negative() != self.c.0[0].1.is_negative() {
            k = -k;
        }
        (self.c.pow(&k) == h).then_some(k)
    }

    /// Returns `(r, k)` with `r = g·w^k` shortlex-minimal in `g⟨w⟩`; so
    /// `g = r·w^{-k}`.
    pub fn coset_split(&self, g: &FreeWord) -> (FreeWord, BigInt) {
        // g w^k = q c^k u⁻¹ with q = g u.
        let q = g.mul(&self.u);
        let mut ks: Vec<BigInt> = Vec::new();
        if self.c.0.len() == 1 {
            let (x, m) = &self.c.0[0];
            let n = match q.0.last() {
                Some((y, n)) if y == x => n.clone(),
                _ => BigInt::zero(),
            };
            let lo = (-&n).div_floor(m);
            for d in -1i32..=2 {
                ks.push(&lo + d);
            }
            ks.push(BigInt::zero());
        } else {
            let s = q.0.len() as i64 + 2;
            ks.extend((-s..=s).map(BigInt::from));
        }
        let mut best: Option<(FreeWord, BigInt)> = None;
        for k in ks {
            let r = g.mul(&self.w.pow(&k));
            let better = match &best {
                None => true,
                Some((b, bk)) => match r.cmp(b) {
                    Ordering::Less => true,
                    Ordering::Equal => k < *bk,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((r, k));
            }
        }
        best.expect("candidate set is nonempty")
    }
}

impl FreeWord {
    /// Exponent sum of a word in a rank-one group (or in generator `g`).
    pub fn exponent_sum(&self, g: u32) -> BigInt {
        self.0
            .iter()
            .filter(|(x, _)| *x == g)
            .map(|(_, k)| k.clone())
            .sum()
    }
}
