//! Vertex groups, their elements, and edge subgroups inside them.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::abelian::{self, Sublattice};
use super::free::{lex_syllables, CyclicSubgroup, FreeWord, Syllable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Free {
        rank: usize,
    },
    /// `ℤ^k / diag(d)`; `0` encodes an infinite factor.
    Abelian {
        invariant_factors: Vec<BigInt>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGroup {
    pub name: String,
    pub kind: GroupKind,
    pub generators: Vec<String>,
}

/// An element of some vertex group. Abelian elements are coordinate vectors
/// reduced into `[0, d_i)` on finite factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VElem {
    Free(FreeWord),
    Abelian(Vec<BigInt>),
}

impl VElem {
    /// Syllables `(generator index, exponent)` of the element's standard word.
    pub fn syllables(&self) -> Vec<Syllable> {
        match self {
            VElem::Free(w) => w.syllables().to_vec(),
            VElem::Abelian(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i as u32, x.clone()))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            VElem::Free(w) => w.is_identity(),
            VElem::Abelian(v) => v.iter().all(Zero::is_zero),
        }
    }
}

impl PartialOrd for VElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on the standard word.
impl Ord for VElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (VElem::Free(a), VElem::Free(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.syllables(), other.syllables());
                let la: BigInt = a.iter().map(|s| num_traits::Signed::abs(&s.1)).sum();
                let lb: BigInt = b.iter().map(|s| num_traits::Signed::abs(&s.1)).sum();
                la.cmp(&lb).then_with(|| lex_syllables(&a, &b))
            }
        }
    }
}

impl VertexGroup {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free { .. })
    }

    pub(crate) fn factors(&self) -> &[BigInt] {
        match &self.kind {
            GroupKind::Abelian { invariant_factors } => invariant_factors,
            GroupKind::Free { .. } => &[],
        }
    }

    pub fn identity(&self) -> VElem {
        match &self.kind {
            GroupKind::Free { .. } => VElem::Free(FreeWord::identity()),
            GroupKind::Abelian { invariant_factors } => {
                VElem::Abelian(alloc::vec![BigInt::zero(); invariant_factors.len()])
            }
        }
    }

    /// `x_g^k` for generator index `g`.
    pub fn generator_power(&self, g: usize, k: &BigInt) -> VElem {
        match &self.kind {
            GroupKind::Free { .. } => VElem::Free(FreeWord::generator(g as u32, k.clone())),
            GroupKind::Abelian { invariant_factors } => {
                let mut v = alloc::vec![BigInt::zero(); invariant_factors.len()];
                v[g] = k.clone();
                abelian::canonical(invariant_factors, &mut v);
                VElem::Abelian(v)
            }
        }
    }

    pub fn from_syllables(&self, s: &[Syllable]) -> VElem {
        match &self.kind {
            GroupKind::Free { .. } => VElem::Free(FreeWord::from_syllables(s.iter().cloned())),
            GroupKind::Abelian { invariant_factors } => {
                let mut v = alloc::vec![BigInt::zero(); invariant_factors.len()];
                for (g, k) in s {
                    v[*g as usize] += k;
                }
                abelian::canonical(invariant_factors, &mut v);
                VElem::Abelian(v)
            }
        }
    }

    pub fn mul(&self, a: &VElem, b: &VElem) -> VElem {
        match (a, b) {
            (VElem::Free(x), VElem::Free(y)) => VElem::Free(x.mul(y)),
            (VElem::Abelian(x), VElem::Abelian(y)) => {
                VElem::Abelian(abelian::add(self.factors(), x, y))
            }
            _ => panic!("mixed element kinds in vertex group {}", self.name),
        }
    }

    pub fn inv(&self, a: &VElem) -> VElem {
        match a {
            VElem::Free(x) => VElem::Free(x.inv()),
            VElem::Abelian(x) => VElem::Abelian(abelian::neg(self.factors(), x)),
        }
    }
}

/// Finitely generated abelian edge group `ℤ^k / diag(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGroup {
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<String>,
}

impl EdgeGroup {
    pub fn trivial() -> Self {
        EdgeGroup {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn canonical(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        abelian::canonical(&self.invariant_factors, &mut c);
        c
    }

    pub fn zero(&self) -> Vec<BigInt> {
        alloc::vec![BigInt::zero(); self.invariant_factors.len()]
    }

    /// Whether every factor is `ℤ/1`.
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.iter().all(|d| *d == BigInt::from(1))
    }
}

/// The image `h_e(Γ_e)` inside `Γ_{t(e)}` with coset and membership routines.
#[derive(Debug, Clone)]
pub(crate) enum EdgeImage {
    Trivial {
        k: usize,
    },
    /// Free target; generator `index` of the edge group maps to `⟨w⟩`'s `w`.
    Cyclic {
        k: usize,
        index: usize,
        sub: CyclicSubgroup,
    },
    Abelian {
        images: Vec<Vec<BigInt>>,
        sub: Sublattice,
    },
}

impl EdgeImage {
    pub fn apply(&self, vg: &VertexGroup, c: &[BigInt]) -> VElem {
        match self {
            EdgeImage::Trivial { .. } => vg.identity(),
            EdgeImage::Cyclic { index, sub, .. } => VElem::Free(sub.generator().pow(&c[*index])),
            EdgeImage::Abelian { images, .. } => {
                VElem::Abelian(abelian::combine(vg.factors(), images, c))
            }
        }
    }

    fn zero(&self) -> Vec<BigInt> {
        let k = match self {
            EdgeImage::Trivial { k } | EdgeImage::Cyclic { k, .. } => *k,
            EdgeImage::Abelian { images, .. } => images.len(),
        };
        alloc::vec![BigInt::zero(); k]
    }

    /// Edge-group coordinates of a preimage, if `g` lies in the image.
    pub fn preimage(&self, g: &VElem) -> Option<Vec<BigInt>> {
        match (self, g) {
            (EdgeImage::Trivial { .. }, _) => g.is_identity().then(|| self.zero()),
            (EdgeImage::Cyclic { index, sub, .. }, VElem::Free(w)) => sub.exponent_of(w).map(|n| {
                let mut c = self.zero();
                c[*index] = n;
                c
            }),
            (EdgeImage::Abelian { sub, .. }, VElem::Abelian(v)) => sub.preimage(v),
            _ => None,
        }
    }

    /// `(r, c)` with `g = r · h(c)` and `r` the canonical representative of
    /// the left coset `g·h(Γ_e)`.
    pub fn split(&self, g: &VElem) -> (VElem, Vec<BigInt>) {
        match (self, g) {
            (EdgeImage::Trivial { .. }, _) => (g.clone(), self.zero()),
            (EdgeImage::Cyclic { index, sub, .. }, VElem::Free(w)) => {
                let (r, k) = sub.coset_split(w);
                let mut c = self.zero();
                c[*index] = -k;
                (VElem::Free(r), c)
            }
            (EdgeImage::Abelian { sub, .. }, VElem::Abelian(v)) => {
                let (r, c) = sub.split(v);
                (VElem::Abelian(r), c)
            }
            _ => panic!("element kind does not match edge image"),
        }
    }
}
