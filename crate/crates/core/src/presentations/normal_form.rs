//! Reduced paths and normal forms for `π₁(𝒢, base)`.
//!
//! A path `g₀ e₁ g₁ … e_k g_k` starts at a vertex, `gᵢ ∈ Γ_{t(eᵢ)}`. It is
//! reduced when no `e g ē` with `g ∈ h_e(Γ_e)` occurs, and normalized when
//! each `gᵢ` with `i < k` is the canonical representative of
//! `gᵢ · h_{ē_{i+1}}(Γ_e)`. Loops at the base vertex are group elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::free::lex_syllables;
use super::graph::{GraphId, GraphOfGroups, WordSpec};
use super::vertex::VElem;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub(crate) start: usize,
    pub(crate) head: VElem,
    pub(crate) steps: Vec<(usize, VElem)>,
}

impl Path {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn head(&self) -> &VElem {
        &self.head
    }

    pub fn steps(&self) -> &[(usize, VElem)] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub(crate) fn last(&self) -> &VElem {
        self.steps.last().map_or(&self.head, |s| &s.1)
    }

    pub(crate) fn last_mut(&mut self) -> &mut VElem {
        match self.steps.last_mut() {
            Some(s) => &mut s.1,
            None => &mut self.head,
        }
    }
}

/// An element of `Γ = π₁(𝒢, base)` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub(crate) graph: GraphId,
    pub(crate) path: Path,
}

impl NormalForm {
    pub fn graph(&self) -> GraphId {
        self.graph
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn is_identity(&self) -> bool {
        self.path.steps.is_empty() && self.path.head.is_identity()
    }
}

/// A letter of the presentation of `π₁(𝒢, T)`: a vertex generator or the
/// stable letter of a geometric edge outside the spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Gen { vertex: usize, index: usize },
    Stable(usize),
}

/// One entry of an explicit path word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathLetter {
    Gen(String, BigInt),
    Edge(String),
}

impl GraphOfGroups {
    pub(crate) fn check(&self, x: &NormalForm) -> Result<()> {
        if x.graph == self.id {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub(crate) fn wrap(&self, path: Path) -> NormalForm {
        debug_assert_eq!(path.start, self.base);
        debug_assert_eq!(self.end(&path), self.base);
        NormalForm {
            graph: self.id,
            path,
        }
    }

    pub fn end(&self, p: &Path) -> usize {
        p.steps
            .last()
            .map_or(p.start, |(e, _)| self.edges[*e].target)
    }

    pub(crate) fn trivial_path(&self, v: usize) -> Path {
        Path {
            start: v,
            head: self.vertices[v].identity(),
            steps: Vec::new(),
        }
    }

    pub(crate) fn mul_elem(&self, p: &mut Path, g: &VElem) {
        let v = self.end(p);
        let last = p.last_mut();
        *last = self.vertices[v].mul(last, g);
    }

    /// Appends the edge `e` (with `o(e)` the current end) and reduces.
    pub(crate) fn push_edge(&self, p: &mut Path, e: usize) {
        debug_assert_eq!(self.edges[e].origin, self.end(p));
        if let Some((ek, gk)) = p.steps.last() {
            let ek = *ek;
            if self.edges[ek].reverse == e {
                if let Some(c) = self.edges[ek].image.preimage(gk) {
                    p.steps.pop();
                    let h = self.edge_map(e, &c);
                    self.mul_elem(p, &h);
                    return;
                }
            }
        }
        let r = self.edges[e].reverse;
        let (rep, c) = self.edges[r].image.split(p.last());
        *p.last_mut() = rep;
        let h = self.edge_map(e, &c);
        p.steps.push((e, h));
    }

    /// `p · q`, where `q` starts at the end of `p`.
    pub(crate) fn append(&self, p: &mut Path, q: &Path) {
        debug_assert_eq!(self.end(p), q.start);
        self.mul_elem(p, &q.head);
        for (e, g) in &q.steps {
            self.push_edge(p, *e);
            self.mul_elem(p, g);
        }
    }

    pub(crate) fn concat(&self, p: &Path, q: &Path) -> Path {
        let mut out = p.clone();
        self.append(&mut out, q);
        out
    }

    pub(crate) fn inverse_path(&self, p: &Path) -> Path {
        let v = self.end(p);
        let mut out = Path {
            start: v,
            head: self.vertices[v].inv(p.last()),
            steps: Vec::new(),
        };
        for i in (0..p.steps.len()).rev() {
            let e = p.steps[i].0;
            self.push_edge(&mut out, self.edges[e].reverse);
            let prev = if i == 0 { &p.head } else { &p.steps[i - 1].1 };
            let u = self.end(&out);
            let inv = self.vertices[u].inv(prev);
            self.mul_elem(&mut out, &inv);
        }
        out
    }

    /// Path from the base vertex to `v` along the spanning tree.
    pub(crate) fn tree_path(&self, v: usize) -> Path {
        let mut p = self.trivial_path(self.base);
        for &e in &self.tree_edges[v] {
            self.push_edge(&mut p, e);
        }
        p
    }

    pub fn identity(&self) -> NormalForm {
        self.wrap(self.trivial_path(self.base))
    }

    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.concat(&x.path, &y.path)))
    }

    pub fn inverse(&self, x: &NormalForm) -> Result<NormalForm> {
        self.check(x)?;
        Ok(self.wrap(self.inverse_path(&x.path)))
    }

    pub fn equal(&self, x: &NormalForm, y: &NormalForm) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x == y)
    }

    pub fn pow(&self, x: &NormalForm, n: &BigInt) -> Result<NormalForm> {
        self.check(x)?;
        let mut base = if n.is_negative() {
            self.inverse(x)?
        } else {
            x.clone()
        };
        let mut n = n.abs();
        let mut acc = self.identity();
        while !n.is_zero() {
            if (&n & BigInt::one()).is_one() {
                acc = self.multiply(&acc, &base)?;
            }
            n >>= 1;
            if !n.is_zero() {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `γ_v g γ_v⁻¹` for `g ∈ Γ_v`.
    pub fn vertex_element(&self, v: usize, g: &VElem) -> NormalForm {
        let t = self.tree_path(v);
        let mut p = t.clone();
        self.mul_elem(&mut p, g);
        self.append(&mut p, &self.inverse_path(&t));
        self.wrap(p)
    }

    /// The element `γ_{o(e)} e γ_{t(e)}⁻¹`; trivial for tree edges.
    pub fn edge_element(&self, e: usize) -> NormalForm {
        let mut p = self.tree_path(self.edges[e].origin);
        self.push_edge(&mut p, e);
        self.append(
            &mut p,
            &self.inverse_path(&self.tree_path(self.edges[e].target)),
        );
        self.wrap(p)
    }

    /// Element of `Γ_v` given as a loop at `v`'s tree vertex, if it is one.
    pub(crate) fn as_vertex_element(&self, v: usize, x: &NormalForm) -> Option<VElem> {
        let t = self.tree_path(v);
        let p = self.concat(&self.concat(&self.inverse_path(&t), &x.path), &t);
        p.steps.is_empty().then_some(p.head)
    }

    /// Reads a group word: letters are vertex generators or edge names.
    pub fn parse_word(&self, w: &[(String, BigInt)]) -> Result<NormalForm> {
        let mut acc = self.identity();
        for (name, k) in w {
            let x = if let Ok((v, j)) = self.lookup_generator(name) {
                self.vertex_element(v, &self.vertices[v].generator_power(j, k))
            } else if let Some(&e) = self.edge_names.get(name) {
                self.pow(&self.edge_element(e), k)?
            } else {
                return Err(Error::UnknownGenerator(name.clone()));
            };
            acc = self.multiply(&acc, &x)?;
        }
        Ok(acc)
    }

    /// Normal form of an explicit path word starting and ending at the base.
    pub fn normal_form(&self, w: &[PathLetter]) -> Result<NormalForm> {
        let mut p = self.trivial_path(self.base);
        for letter in w {
            let v = self.end(&p);
            match letter {
                PathLetter::Gen(name, k) => {
                    let (u, j) = self.lookup_generator(name)?;
                    if u != v {
                        return Err(Error::VertexMismatch(format!(
                            "generator `{name}` used at vertex `{}`",
                            self.vertices[v].name
                        )));
                    }
                    let g = self.vertices[v].generator_power(j, k);
                    self.mul_elem(&mut p, &g);
                }
                PathLetter::Edge(name) => {
                    let e = self.edge_index(name)?;
                    if self.edges[e].origin != v {
                        return Err(Error::VertexMismatch(format!(
                            "edge `{name}` does not start at vertex `{}`",
                            self.vertices[v].name
                        )));
                    }
                    self.push_edge(&mut p, e);
                }
            }
        }
        if self.end(&p) != self.base {
            return Err(Error::VertexMismatch(
                "path word does not return to the base vertex".into(),
            ));
        }
        Ok(self.wrap(p))
    }

    /// `x` spelled out as an explicit path word.
    pub fn path_letters(&self, x: &NormalForm) -> Vec<PathLetter> {
        let mut out = Vec::new();
        let emit = |v: usize, g: &VElem, out: &mut Vec<PathLetter>| {
            for (name, k) in self.vertex_word_names(v, g) {
                out.push(PathLetter::Gen(name, k));
            }
        };
        emit(x.path.start, &x.path.head, &mut out);
        for (e, g) in &x.path.steps {
            out.push(PathLetter::Edge(self.edges[*e].name.clone()));
            emit(self.edges[*e].target, g, &mut out);
        }
        out
    }

    /// The word of `x` in vertex generators and stable letters.
    pub fn global_word(&self, x: &NormalForm) -> Vec<(Letter, BigInt)> {
        self.path_word(&x.path)
    }

    pub(crate) fn path_word(&self, p: &Path) -> Vec<(Letter, BigInt)> {
        let mut out: Vec<(Letter, BigInt)> = Vec::new();
        let mut push = |l: Letter, k: BigInt| {
            if let Some(last) = out.last_mut() {
                if last.0 == l {
                    last.1 += k;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    return;
                }
            }
            out.push((l, k));
        };
        let mut v = p.start;
        for (g, k) in p.head.syllables() {
            push(
                Letter::Gen {
                    vertex: v,
                    index: g as usize,
                },
                k,
            );
        }
        for (e, g) in &p.steps {
            if !self.in_tree[*e] {
                let pos = self.positive(*e);
                push(
                    Letter::Stable(pos),
                    if pos == *e {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    },
                );
            }
            v = self.edges[*e].target;
            for (s, k) in g.syllables() {
                push(
                    Letter::Gen {
                        vertex: v,
                        index: s as usize,
                    },
                    k,
                );
            }
        }
        out
    }

    /// Global index of a letter: vertex generators in declaration order,
    /// then stable letters in edge order.
    pub fn letter_index(&self, l: Letter) -> usize {
        match l {
            Letter::Gen { vertex, index } => {
                self.vertices[..vertex]
                    .iter()
                    .map(|v| v.rank())
                    .sum::<usize>()
                    + index
            }
            Letter::Stable(e) => self.vertices.iter().map(|v| v.rank()).sum::<usize>() + e,
        }
    }

    pub fn letter_name(&self, l: Letter) -> &str {
        match l {
            Letter::Gen { vertex, index } => &self.vertices[vertex].generators[index],
            Letter::Stable(e) => &self.edges[e].name,
        }
    }

    /// `x` as a named group word; `parse_word` inverts this.
    pub fn word_names(&self, x: &NormalForm) -> WordSpec {
        self.global_word(x)
            .into_iter()
            .map(|(l, k)| (String::from(self.letter_name(l)), k))
            .collect()
    }

    /// Shortlex order on global words.
    pub fn shortlex_cmp(&self, x: &NormalForm, y: &NormalForm) -> Ordering {
        self.word_cmp(&self.global_word(x), &self.global_word(y))
            .then_with(|| x.cmp(y))
    }

    pub(crate) fn word_cmp(&self, a: &[(Letter, BigInt)], b: &[(Letter, BigInt)]) -> Ordering {
        let conv = |w: &[(Letter, BigInt)]| -> Vec<(u32, BigInt)> {
            w.iter()
                .map(|(l, k)| (self.letter_index(*l) as u32, k.clone()))
                .collect()
        };
        let (a, b) = (conv(a), conv(b));
        let la: BigInt = a.iter().map(|s| s.1.abs()).sum();
        let lb: BigInt = b.iter().map(|s| s.1.abs()).sum();
        la.cmp(&lb).then_with(|| lex_syllables(&a, &b))
    }

    /// Letter length of the global word.
    pub fn word_length(&self, x: &NormalForm) -> BigInt {
        self.global_word(x).iter().map(|s| s.1.abs()).sum()
    }
}
