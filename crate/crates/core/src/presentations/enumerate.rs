//! Bounded enumeration of words and elements.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::graph::GraphOfGroups;
use super::normal_form::{Letter, NormalForm};
use super::vertex::VElem;

/// All words `l₁^{k₁} … l_m^{k_m}` with `m ≤ max_syllables`,
/// `1 ≤ |kᵢ| ≤ max_exponent` and `lᵢ ≠ lᵢ₊₁`, in length-then-index order.
pub fn syllabic_words<L: Copy + PartialEq>(
    letters: &[L],
    max_syllables: usize,
    max_exponent: u32,
) -> Vec<Vec<(L, i64)>> {
    let exps: Vec<i64> = (1..=max_exponent as i64).flat_map(|k| [k, -k]).collect();
    let mut out = alloc::vec![Vec::new()];
    let mut frontier: Vec<Vec<(L, i64)>> = alloc::vec![Vec::new()];
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in letters {
                if w.last().is_some_and(|s: &(L, i64)| s.0 == l) {
                    continue;
                }
                for &k in &exps {
                    let mut x = w.clone();
                    x.push((l, k));
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl GraphOfGroups {
    /// Generators of the presentation of `π₁(𝒢, T)`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (v, vg) in self.vertices.iter().enumerate() {
            for index in 0..vg.rank() {
                out.push(Letter::Gen { vertex: v, index });
            }
        }
        for e in 0..self.edges.len() {
            if !self.in_tree[e] && self.positive(e) == e {
                out.push(Letter::Stable(e));
            }
        }
        out
    }

    pub fn letter_element(&self, l: Letter, k: &BigInt) -> NormalForm {
        match l {
            Letter::Gen { vertex, index } => {
                self.vertex_element(vertex, &self.vertices[vertex].generator_power(index, k))
            }
            Letter::Stable(e) => self.pow(&self.edge_element(e), k).expect("same graph"),
        }
    }

    /// Evaluates a word in the presentation letters.
    pub fn evaluate(&self, w: &[(Letter, i64)]) -> NormalForm {
        let mut acc = self.identity();
        for (l, k) in w {
            let x = self.letter_element(*l, &BigInt::from(*k));
            acc = self.multiply(&acc, &x).expect("same graph");
        }
        acc
    }

    /// Distinct elements represented by syllabic words within the bounds,
    /// sorted shortlex.
    pub fn enumerate_elements(&self, max_syllables: usize, max_exponent: u32) -> Vec<NormalForm> {
        let set: BTreeSet<NormalForm> =
            syllabic_words(&self.letters(), max_syllables, max_exponent)
                .iter()
                .map(|w| self.evaluate(w))
                .collect();
        let mut out: Vec<NormalForm> = set.into_iter().collect();
        out.sort_by(|a, b| self.shortlex_cmp(a, b));
        out
    }

    /// Distinct elements of `Γ_v` represented by syllabic words in its
    /// generators within the bounds, sorted shortlex.
    pub fn enumerate_vertex_elements(
        &self,
        v: usize,
        max_syllables: usize,
        max_exponent: u32,
    ) -> Vec<VElem> {
        let vg = &self.vertices[v];
        let gens: Vec<u32> = (0..vg.rank() as u32).collect();
        let set: BTreeSet<VElem> = syllabic_words(&gens, max_syllables, max_exponent)
            .iter()
            .map(|w| {
                let s: Vec<(u32, BigInt)> = w.iter().map(|&(g, k)| (g, BigInt::from(k))).collect();
                vg.from_syllables(&s)
            })
            .collect();
        set.into_iter().collect()
    }
}
