//! The Bass–Serre tree `T` and its barycentric subdivision `T′`.
//!
//! Everything is lazy. A vertex `gΓ_v` of `T` is its canonical coset path;
//! an edge of `T` (a vertex of `T′ ∖ T`) is the canonical path of its endpoint
//! farther from the root `1Γ_base`. This roots `T′` at the base vertex and
//! makes parents, geodesics and first steps prefix computations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::presentations::{GraphId, GraphOfGroups, NormalForm, Path, Site};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// A vertex of `T`.
    Vertex,
    /// A subdivision vertex, i.e. an edge of `T`.
    Edge,
}

/// A vertex of `T′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TNode {
    pub(crate) graph: GraphId,
    pub(crate) kind: NodeKind,
    pub(crate) path: Path,
}

impl TNode {
    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn is_vertex(&self) -> bool {
        self.kind == NodeKind::Vertex
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Depth in `T′` below the root `1Γ_base`.
    pub fn depth(&self) -> usize {
        match self.kind {
            NodeKind::Vertex => 2 * self.path.depth(),
            NodeKind::Edge => 2 * self.path.depth() - 1,
        }
    }
}

/// A point of `S_𝒢 = (Γ × V(G)) ⊔ ⊔_e Γ/Γ_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SPoint {
    Group {
        g: NormalForm,
        v: usize,
    },
    /// An edge coset, kept as the corresponding vertex of `T′`.
    EdgeCoset(TNode),
}

impl GraphOfGroups {
    fn check_node(&self, n: &TNode) -> Result<()> {
        if n.graph == self.id {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub(crate) fn check_point(&self, x: &SPoint) -> Result<()> {
        match x {
            SPoint::Group { g, .. } => self.check(g),
            SPoint::EdgeCoset(n) => self.check_node(n),
        }
    }

    fn vnode(&self, path: Path) -> TNode {
        TNode {
            graph: self.id,
            kind: NodeKind::Vertex,
            path,
        }
    }

    fn enode(&self, path: Path) -> TNode {
        TNode {
            graph: self.id,
            kind: NodeKind::Edge,
            path,
        }
    }

    /// The root `1·Γ_base`.
    pub fn root(&self) -> TNode {
        self.vnode(self.trivial_path(self.base))
    }

    /// The vertex `g·Γ_v` of `T`.
    pub fn tree_vertex(&self, g: &NormalForm, v: usize) -> Result<TNode> {
        self.check(g)?;
        Ok(self.vnode(self.vertex_coset_path(&g.path, v)))
    }

    /// The edge `g·Γ_e` of `T`, for either orientation `e` of the edge.
    pub fn tree_edge(&self, g: &NormalForm, e: usize) -> Result<TNode> {
        self.check(g)?;
        Ok(self.enode(self.edge_coset_child(&g.path, e)))
    }

    /// `v` for `gΓ_v`, the geometric edge (positive orientation) for `gΓ_e`.
    pub fn node_site(&self, n: &TNode) -> Site {
        match n.kind {
            NodeKind::Vertex => Site::Vertex(self.end(&n.path)),
            NodeKind::Edge => Site::Edge(self.child_edge(&n.path)),
        }
    }

    /// The canonical representative `σ(n)` of the coset `n`.
    pub fn node_rep(&self, n: &TNode) -> NormalForm {
        match n.kind {
            NodeKind::Vertex => self.vertex_rep(&n.path),
            NodeKind::Edge => self.edge_rep(&n.path),
        }
    }

    fn truncate(&self, p: &Path, j: usize) -> Path {
        if j == 0 {
            return self.trivial_path(p.start);
        }
        let q = Path {
            start: p.start,
            head: p.head.clone(),
            steps: p.steps[..j].to_vec(),
        };
        self.clear_last(q)
    }

    /// The ancestor of `n` at `T′`-depth `t ≤ n.depth()`.
    pub fn ancestor(&self, n: &TNode, t: usize) -> TNode {
        debug_assert!(t <= n.depth());
        if t == n.depth() {
            return n.clone();
        }
        if t % 2 == 0 {
            self.vnode(self.truncate(&n.path, t / 2))
        } else {
            self.enode(self.truncate(&n.path, t.div_ceil(2)))
        }
    }

    pub fn parent(&self, n: &TNode) -> Option<TNode> {
        (n.depth() > 0).then(|| self.ancestor(n, n.depth() - 1))
    }

    fn common_depth(&self, a: &TNode, b: &TNode) -> usize {
        let m = a.depth().min(b.depth());
        let mut t = 0;
        while t < m && self.ancestor(a, t + 1) == self.ancestor(b, t + 1) {
            t += 1;
        }
        t
    }

    /// The geodesic from `u` to `v` in `T′`, both endpoints included.
    pub fn geodesic(&self, u: &TNode, v: &TNode) -> Result<Vec<TNode>> {
        self.check_node(u)?;
        self.check_node(v)?;
        let l = self.common_depth(u, v);
        let mut out: Vec<TNode> = (l..=u.depth()).rev().map(|t| self.ancestor(u, t)).collect();
        out.extend((l + 1..=v.depth()).map(|t| self.ancestor(v, t)));
        Ok(out)
    }

    pub fn distance(&self, u: &TNode, v: &TNode) -> Result<usize> {
        self.check_node(u)?;
        self.check_node(v)?;
        let l = self.common_depth(u, v);
        Ok(u.depth() + v.depth() - 2 * l)
    }

    /// The vertex after `from` on the geodesic to `to`.
    pub fn first_step(&self, from: &TNode, to: &TNode) -> Option<TNode> {
        if from == to {
            return None;
        }
        let l = self.common_depth(from, to);
        if from.depth() > l {
            self.parent(from)
        } else {
            Some(self.ancestor(to, from.depth() + 1))
        }
    }

    /// Membership in the star `N(w)` (distance at most one in `T′`).
    pub fn in_star(&self, w: &TNode, x: &TNode) -> bool {
        x == w || self.first_step(w, x).as_ref() == Some(x)
    }

    /// Neighbours in `T′`. For infinite-index edge groups the children are
    /// truncated to transversal elements within the given word bounds.
    pub fn neighbors(&self, n: &TNode, max_syllables: usize, max_exponent: u32) -> Vec<TNode> {
        let mut out = Vec::new();
        if let Some(p) = self.parent(n) {
            out.push(p);
        }
        match n.kind {
            NodeKind::Edge => out.push(self.vnode(n.path.clone())),
            NodeKind::Vertex => {
                let v = self.end(&n.path);
                let elems = self.enumerate_vertex_elements(v, max_syllables, max_exponent);
                for f in 0..self.edges.len() {
                    if self.edges[f].origin != v {
                        continue;
                    }
                    let rev = self.edges[f].reverse;
                    let mut seen = BTreeSet::new();
                    for r in &elems {
                        let (rep, _) = self.edges[rev].image.split(r);
                        if rep != *r || !seen.insert(rep.clone()) {
                            continue;
                        }
                        let mut q = n.path.clone();
                        *q.last_mut() = rep;
                        self.push_edge(&mut q, f);
                        if q.depth() > n.path.depth() {
                            out.push(self.enode(self.clear_last(q)));
                        }
                    }
                }
            }
        }
        out
    }

    /// `g · n`.
    pub fn translate(&self, g: &NormalForm, n: &TNode) -> Result<TNode> {
        self.check(g)?;
        self.check_node(n)?;
        Ok(match n.kind {
            NodeKind::Vertex => self.vnode(self.clear_last(self.concat(&g.path, &n.path))),
            NodeKind::Edge => {
                let parent = self.truncate(&n.path, n.path.depth() - 1);
                let a = self.clear_last(self.concat(&g.path, &parent));
                let b = self.clear_last(self.concat(&g.path, &n.path));
                self.enode(self.edge_between(a, b))
            }
        })
    }

    /// All barycenters of the tuple: vertices `ȳ` of `T` such that the
    /// entries different from `ȳ` lie in pairwise different components of
    /// `T′ ∖ {ȳ}` (equal entries never do).
    pub fn barycenters(&self, tuple: &[TNode]) -> Vec<TNode> {
        let mut candidates = BTreeSet::new();
        if self.faults.barycenter_entries_only {
            candidates.extend(tuple.iter().filter(|n| n.is_vertex()).cloned());
        } else {
            for i in 0..tuple.len() {
                for j in i..tuple.len() {
                    let path = self.geodesic(&tuple[i], &tuple[j]).expect("same graph");
                    candidates.extend(path.into_iter().filter(TNode::is_vertex));
                }
            }
        }
        candidates
            .into_iter()
            .filter(|c| self.separates(c, tuple))
            .collect()
    }

    /// Whether `c` separates the entries of the tuple different from `c`.
    pub fn separates(&self, c: &TNode, tuple: &[TNode]) -> bool {
        let mut steps = BTreeSet::new();
        tuple
            .iter()
            .filter(|y| *y != c)
            .all(|y| steps.insert(self.first_step(c, y).expect("distinct")))
    }

    /// The barycenter of a tuple of length at least three, if any.
    pub fn barycenter(&self, tuple: &[TNode]) -> Option<TNode> {
        self.barycenters(tuple).into_iter().next()
    }

    /// `p : S_𝒢 → V(T′)`.
    pub fn project(&self, x: &SPoint) -> Result<TNode> {
        match x {
            SPoint::Group { g, v } => self.tree_vertex(g, *v),
            SPoint::EdgeCoset(n) => {
                self.check_node(n)?;
                Ok(n.clone())
            }
        }
    }

    /// `γ · x` on `S_𝒢`.
    pub fn act(&self, gamma: &NormalForm, x: &SPoint) -> Result<SPoint> {
        Ok(match x {
            SPoint::Group { g, v } => SPoint::Group {
                g: self.multiply(gamma, g)?,
                v: *v,
            },
            SPoint::EdgeCoset(n) => SPoint::EdgeCoset(self.translate(gamma, n)?),
        })
    }

    /// The edge-coset point `g·Γ_e`.
    pub fn edge_point(&self, g: &NormalForm, e: usize) -> Result<SPoint> {
        Ok(SPoint::EdgeCoset(self.tree_edge(g, e)?))
    }

    /// `r⁰_w`: identity on `S_w = p⁻¹(N(w))`, otherwise the edge point of the
    /// first step from `w` towards `p(x)`.
    pub fn retract_point(&self, w: &TNode, x: &SPoint) -> Result<SPoint> {
        self.check_node(w)?;
        let p = self.project(x)?;
        if self.in_star(w, &p) {
            return Ok(x.clone());
        }
        let step = self.first_step(w, &p).expect("p(x) differs from w");
        debug_assert_eq!(step.kind, NodeKind::Edge);
        Ok(SPoint::EdgeCoset(step))
    }

    /// Vertex of `G` under a vertex of `T`.
    pub(crate) fn node_vertex(&self, n: &TNode) -> usize {
        self.end(&n.path)
    }

    pub(crate) fn node_from_child(&self, child: Path) -> TNode {
        self.enode(child)
    }

    /// The endpoint of an edge of `T` farther from the root.
    pub fn child_vertex(&self, n: &TNode) -> TNode {
        debug_assert_eq!(n.kind, NodeKind::Edge);
        self.vnode(n.path.clone())
    }

    /// `1·Γ_v` as a vertex of `T`.
    pub fn base_node(&self, v: usize) -> TNode {
        self.vnode(self.clear_last(self.tree_path(v)))
    }
}
