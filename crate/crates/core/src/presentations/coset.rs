//! Canonical coset representatives for `gΓ_v` and `gΓ_e`.
//!
//! A vertex coset `gΓ_v` is stored as the normalized path `g·γ_v` with its
//! last element cleared; this path is canonical for the coset. An edge coset
//! is stored as the deeper of the two endpoint paths of the corresponding
//! edge of the Bass–Serre tree.

use super::graph::GraphOfGroups;
use super::normal_form::{NormalForm, Path};
use crate::Result;

/// A vertex of `G` or a geometric edge `{e, ē}` of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Vertex(usize),
    Edge(usize),
}

impl GraphOfGroups {
    pub(crate) fn clear_last(&self, mut p: Path) -> Path {
        let v = self.end(&p);
        *p.last_mut() = self.vertices[v].identity();
        p
    }

    /// Canonical path of the coset `g·Γ_v` (i.e. of the tree vertex `g·1Γ_v`).
    pub(crate) fn vertex_coset_path(&self, g: &Path, v: usize) -> Path {
        self.clear_last(self.concat(g, &self.tree_path(v)))
    }

    /// Canonical child path of the tree edge `g·1Γ_e`, `e` any orientation.
    pub(crate) fn edge_coset_child(&self, g: &Path, e: usize) -> Path {
        let pos = self.positive(e);
        let p = self.concat(g, &self.tree_path(self.edges[pos].origin));
        let mut q = p.clone();
        self.push_edge(&mut q, pos);
        let a = self.clear_last(p);
        let b = self.clear_last(q);
        if b.depth() > a.depth() {
            b
        } else {
            a
        }
    }

    /// The tree edge joining two adjacent vertex paths, as its child path.
    pub(crate) fn edge_between(&self, a: Path, b: Path) -> Path {
        if b.depth() > a.depth() {
            b
        } else {
            a
        }
    }

    /// Representative `σ` of the vertex coset with canonical path `p`.
    pub(crate) fn vertex_rep(&self, p: &Path) -> NormalForm {
        let v = self.end(p);
        self.wrap(self.concat(p, &self.inverse_path(&self.tree_path(v))))
    }

    /// Representative of the edge coset whose child path is `c`.
    pub(crate) fn edge_rep(&self, c: &Path) -> NormalForm {
        let (ek, _) = c.steps.last().expect("edge child paths are nonempty");
        let pos = self.positive(*ek);
        let back = self.inverse_path(&self.tree_path(self.edges[pos].origin));
        if *ek == pos {
            let mut q = c.clone();
            q.steps.pop();
            self.wrap(self.concat(&q, &back))
        } else {
            self.wrap(self.concat(c, &back))
        }
    }

    /// Geometric edge of a child path (its positive orientation).
    pub(crate) fn child_edge(&self, c: &Path) -> usize {
        self.positive(c.steps.last().expect("nonempty").0)
    }

    /// Canonical representative `σ` with `σ Γ_site = g Γ_site`.
    pub fn coset_rep(&self, g: &NormalForm, site: Site) -> Result<NormalForm> {
        self.check(g)?;
        Ok(match site {
            Site::Vertex(v) => self.vertex_rep(&self.vertex_coset_path(&g.path, v)),
            Site::Edge(e) => self.edge_rep(&self.edge_coset_child(&g.path, e)),
        })
    }

    /// Whether `g` lies in the stabilizer `γ_v Γ_v γ_v⁻¹` (for a vertex) or
    /// in the stabilizer of the standard tree edge (for a geometric edge).
    pub fn in_site_subgroup(&self, g: &NormalForm, site: Site) -> Result<bool> {
        self.check(g)?;
        let id = self.identity();
        Ok(match site {
            Site::Vertex(v) => {
                self.vertex_coset_path(&g.path, v) == self.vertex_coset_path(&id.path, v)
            }
            Site::Edge(e) => {
                self.edge_coset_child(&g.path, e) == self.edge_coset_child(&id.path, e)
            }
        })
    }
}
