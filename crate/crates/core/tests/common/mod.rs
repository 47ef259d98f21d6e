#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use gogcone_core::instances;
use gogcone_core::presentations::{GraphOfGroups, NormalForm};
use num_bigint::BigInt;

pub fn zz() -> GraphOfGroups {
    instances::build(instances::free_product_zz())
}

pub fn trefoil() -> GraphOfGroups {
    instances::build(instances::trefoil())
}

pub fn bs12() -> GraphOfGroups {
    instances::build(instances::baumslag_solitar_1_2())
}

pub fn all_graphs() -> Vec<(&'static str, GraphOfGroups)> {
    instances::graphs()
        .into_iter()
        .map(|(n, s)| (n, instances::build(s)))
        .collect()
}

pub fn word(g: &GraphOfGroups, w: &[(&str, i64)]) -> NormalForm {
    let w: Vec<(String, BigInt)> = w
        .iter()
        .map(|(s, k)| (s.to_string(), BigInt::from(*k)))
        .collect();
    g.parse_word(&w).unwrap()
}

/// Letters are `(generator, ±1)`.
pub type Letters = Vec<(usize, i8)>;

fn free_reduce(w: &mut Letters) {
    let mut out: Letters = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last().is_some_and(|&(g, s)| g == l.0 && s == -l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *w = out;
}

pub fn letters(w: &[(usize, i64)]) -> Letters {
    let mut out = Vec::new();
    for &(g, k) in w {
        for _ in 0..k.abs() {
            out.push((g, k.signum() as i8));
        }
    }
    free_reduce(&mut out);
    out
}

fn inverse(w: &Letters) -> Letters {
    w.iter().rev().map(|&(g, s)| (g, -s)).collect()
}

/// Breadth-first rewriting with the relators (and their inverses and cyclic
/// conjugates) inside words of length at most `max_len`. `true` means `u = v`
/// was derived; `false` means not found within the bound.
pub fn rewriting_equal(relators: &[Letters], u: &Letters, v: &Letters, max_len: usize) -> bool {
    let mut rels: Vec<Letters> = Vec::new();
    for r in relators {
        for r in [r.clone(), inverse(r)] {
            for i in 0..r.len() {
                let mut c = r[i..].to_vec();
                c.extend_from_slice(&r[..i]);
                rels.push(c);
            }
        }
    }
    let mut start = u.clone();
    start.extend(inverse(v));
    free_reduce(&mut start);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if w.is_empty() {
            return true;
        }
        for i in 0..=w.len() {
            for r in &rels {
                // Replace a prefix of r found at position i by the inverse of
                // the rest of r.
                for p in 0..=r.len() {
                    if i + p > w.len() || w[i..i + p] != r[..p] {
                        break;
                    }
                    let mut x = w[..i].to_vec();
                    x.extend(inverse(&r[p..].to_vec()));
                    x.extend_from_slice(&w[i + p..]);
                    free_reduce(&mut x);
                    if x.len() <= max_len && seen.insert(x.clone()) {
                        queue.push_back(x);
                    }
                }
            }
        }
    }
    false
}

/// Points `(g, v)` and `gΓ_e` of `S_𝒢` for the enumerated elements `g`.
pub fn s_points(
    g: &GraphOfGroups,
    max_syllables: usize,
    max_exponent: u32,
) -> Vec<gogcone_core::bass_serre::SPoint> {
    use gogcone_core::bass_serre::SPoint;
    let mut out = std::collections::BTreeSet::new();
    for x in g.enumerate_elements(max_syllables, max_exponent) {
        for v in 0..g.vertex_count() {
            out.insert(SPoint::Group { g: x.clone(), v });
        }
        for e in 0..g.edge_count() {
            out.insert(g.edge_point(&x, e).unwrap());
        }
    }
    out.into_iter().collect()
}

/// Deterministic xorshift stream for sampling in tests.
pub struct Stream(pub u64);

impl Stream {
    pub fn below(&mut self, n: usize) -> usize {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 % n as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }
}
