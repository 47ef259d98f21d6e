//! Construction and validation of graphs of groups.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abelian::{is_embedding, Sublattice};
use super::free::CyclicSubgroup;
use super::vertex::{EdgeGroup, EdgeImage, GroupKind, VElem, VertexGroup};
use crate::fault::Faults;
use crate::{Error, Result};

/// A word as `(symbol name, exponent)` pairs.
pub type WordSpec = Vec<(String, BigInt)>;

/// Identity tag of a constructed graph of groups; elements carry it so that
/// mixing groups is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(u32);

static NEXT_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub name: String,
    pub reverse: String,
    pub origin: String,
    pub target: String,
    pub edge_group: EdgeGroup,
    /// One word in the target vertex group per edge-group generator.
    pub image: Vec<WordSpec>,
}

/// Plain description of a graph of groups, as read from input files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<VertexGroup>,
    pub edges: Vec<EdgeSpec>,
    /// Edge names; either orientation of a geometric edge may be listed.
    pub spanning_tree: Vec<String>,
    pub base_vertex: String,
}

#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub name: String,
    pub reverse: usize,
    pub origin: usize,
    pub target: usize,
    pub group: EdgeGroup,
    pub image: EdgeImage,
}

/// A finite connected graph of groups with free or finitely generated
/// abelian vertex groups and finitely generated abelian edge groups.
///
/// Conventions: `h_e : Γ_e → Γ_{t(e)}`, and the stable letter of `e` satisfies
/// `e · h_e(c) · ē = h_ē(c)`. For an HNN loop with `h_e(t) = a`,
/// `h_ē(t) = a²` this reads `e a e⁻¹ = a²`.
///
/// Generator names and edge names must be globally unique, so that a group
/// word can be read without saying which vertex each letter belongs to.
#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    pub(crate) id: GraphId,
    pub(crate) spec: GraphSpec,
    pub(crate) vertices: Vec<VertexGroup>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) base: usize,
    pub(crate) in_tree: Vec<bool>,
    pub(crate) tree_edges: Vec<Vec<usize>>,
    pub(crate) generators: BTreeMap<String, (usize, usize)>,
    pub(crate) edge_names: BTreeMap<String, usize>,
    pub(crate) vertex_names: BTreeMap<String, usize>,
    pub(crate) faults: Faults,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGraph(msg.into())
}

impl GraphOfGroups {
    pub fn new(spec: GraphSpec) -> Result<Self> {
        let mut vertex_names = BTreeMap::new();
        let mut generators = BTreeMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if vertex_names.insert(v.name.clone(), i).is_some() {
                return Err(invalid(format!("duplicate vertex `{}`", v.name)));
            }
            match &v.kind {
                GroupKind::Free { rank } => {
                    if *rank != v.generators.len() {
                        return Err(invalid(format!(
                            "vertex `{}`: rank does not match generators",
                            v.name
                        )));
                    }
                }
                GroupKind::Abelian { invariant_factors } => {
                    if invariant_factors.len() != v.generators.len() {
                        return Err(invalid(format!(
                            "vertex `{}`: invariant factors do not match generators",
                            v.name
                        )));
                    }
                    if invariant_factors.iter().any(|d| d < &BigInt::zero()) {
                        return Err(invalid(format!(
                            "vertex `{}`: negative invariant factor",
                            v.name
                        )));
                    }
                }
            }
            for (j, g) in v.generators.iter().enumerate() {
                if generators.insert(g.clone(), (i, j)).is_some() {
                    return Err(invalid(format!("generator name `{g}` is not unique")));
                }
            }
        }
        let base = *vertex_names
            .get(&spec.base_vertex)
            .ok_or_else(|| invalid(format!("unknown base vertex `{}`", spec.base_vertex)))?;

        let mut edge_names = BTreeMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            if edge_names.insert(e.name.clone(), i).is_some() || generators.contains_key(&e.name) {
                return Err(invalid(format!("edge name `{}` is not unique", e.name)));
            }
        }
        let lookup_vertex = |name: &str| {
            vertex_names
                .get(name)
                .copied()
                .ok_or_else(|| invalid(format!("unknown vertex `{name}`")))
        };
        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            let reverse = *edge_names.get(&e.reverse).ok_or_else(|| {
                invalid(format!(
                    "edge `{}`: unknown reverse `{}`",
                    e.name, e.reverse
                ))
            })?;
            let origin = lookup_vertex(&e.origin)?;
            let target = lookup_vertex(&e.target)?;
            let r = &spec.edges[reverse];
            if r.name == e.name {
                return Err(invalid(format!("edge `{}` is its own reverse", e.name)));
            }
            if r.reverse != e.name {
                return Err(invalid(format!("edge involution broken at `{}`", e.name)));
            }
            if r.origin != e.target || r.target != e.origin {
                return Err(invalid(format!(
                    "edge `{}`: endpoints do not match its reverse",
                    e.name
                )));
            }
            if r.edge_group != e.edge_group {
                return Err(invalid(format!(
                    "edge `{}`: edge group differs from its reverse",
                    e.name
                )));
            }
            let eg = &e.edge_group;
            if eg.invariant_factors.len() != eg.generators.len() {
                return Err(invalid(format!(
                    "edge `{}`: invariant factors do not match generators",
                    e.name
                )));
            }
            if eg.invariant_factors.iter().any(|d| d < &BigInt::zero()) {
                return Err(invalid(format!(
                    "edge `{}`: negative invariant factor",
                    e.name
                )));
            }
            if e.image.len() != eg.generators.len() {
                return Err(invalid(format!(
                    "edge `{}`: one image word per edge generator expected",
                    e.name
                )));
            }
            let vg = &spec.vertices[target];
            let mut images = Vec::with_capacity(e.image.len());
            for w in &e.image {
                images.push(read_vertex_word(&generators, target, vg, w)?);
            }
            let image = build_image(&e.name, vg, eg, images)?;
            edges.push(Edge {
                name: e.name.clone(),
                reverse,
                origin,
                target,
                group: eg.clone(),
                image,
            });
        }

        let n = spec.vertices.len();
        let mut in_tree = alloc::vec![false; edges.len()];
        let mut geometric = BTreeSet::new();
        for name in &spec.spanning_tree {
            let e = *edge_names
                .get(name)
                .ok_or_else(|| invalid(format!("spanning tree: unknown edge `{name}`")))?;
            if edges[e].origin == edges[e].target {
                return Err(invalid(format!("spanning tree contains the loop `{name}`")));
            }
            in_tree[e] = true;
            in_tree[edges[e].reverse] = true;
            geometric.insert(e.min(edges[e].reverse));
        }
        if geometric.len() + 1 != n {
            return Err(invalid(
                "spanning tree must have one geometric edge fewer than vertices",
            ));
        }
        let mut tree_edges: Vec<Option<Vec<usize>>> = alloc::vec![None; n];
        tree_edges[base] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            let path = tree_edges[v].clone().expect("visited");
            for (i, e) in edges.iter().enumerate() {
                if in_tree[i] && e.origin == v && tree_edges[e.target].is_none() {
                    let mut p = path.clone();
                    p.push(i);
                    tree_edges[e.target] = Some(p);
                    queue.push_back(e.target);
                }
            }
        }
        let tree_edges = tree_edges
            .into_iter()
            .map(|p| p.ok_or_else(|| invalid("spanning tree does not reach every vertex")))
            .collect::<Result<Vec<_>>>()?;

        let id = GraphId(NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed));
        Ok(GraphOfGroups {
            id,
            vertices: spec.vertices.clone(),
            spec,
            edges,
            base,
            in_tree,
            tree_edges,
            generators,
            edge_names,
            vertex_names,
            faults: Faults::NONE,
        })
    }

    #[doc(hidden)]
    pub fn with_faults(mut self, faults: Faults) -> Self {
        self.faults = faults;
        self
    }

    pub fn faults(&self) -> Faults {
        self.faults
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn base_vertex(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_group(&self, v: usize) -> &VertexGroup {
        &self.vertices[v]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertex_names
            .get(name)
            .copied()
            .ok_or_else(|| Error::VertexMismatch(format!("unknown vertex `{name}`")))
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edge_names
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn origin(&self, e: usize) -> usize {
        self.edges[e].origin
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].target
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.edges[e].reverse
    }

    pub fn edge_group(&self, e: usize) -> &EdgeGroup {
        &self.edges[e].group
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// The orientation standing for the geometric edge `{e, ē}`.
    pub fn positive(&self, e: usize) -> usize {
        e.min(self.edges[e].reverse)
    }

    /// `h_e(c) ∈ Γ_{t(e)}`.
    pub fn edge_map(&self, e: usize, c: &[BigInt]) -> VElem {
        let edge = &self.edges[e];
        edge.image.apply(&self.vertices[edge.target], c)
    }

    /// Whether the graph is a tree with trivial edge groups, i.e. `Γ` is the
    /// free product of the vertex groups.
    pub fn is_free_product(&self) -> bool {
        self.edges.len() + 2 == 2 * self.vertices.len()
            && self.edges.iter().all(|e| e.group.is_trivial())
    }

    pub(crate) fn lookup_generator(&self, name: &str) -> Result<(usize, usize)> {
        self.generators
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Reads a word in the generators of vertex `v`.
    pub fn vertex_word(&self, v: usize, w: &[(String, BigInt)]) -> Result<VElem> {
        read_vertex_word(&self.generators, v, &self.vertices[v], w)
    }

    /// Names and exponents of a vertex element's standard word.
    pub fn vertex_word_names(&self, v: usize, g: &VElem) -> WordSpec {
        g.syllables()
            .into_iter()
            .map(|(i, k)| (self.vertices[v].generators[i as usize].clone(), k))
            .collect()
    }
}

fn read_vertex_word(
    generators: &BTreeMap<String, (usize, usize)>,
    v: usize,
    vg: &VertexGroup,
    w: &[(String, BigInt)],
) -> Result<VElem> {
    let mut syl = Vec::with_capacity(w.len());
    for (name, k) in w {
        let &(u, j) = generators
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        if u != v {
            return Err(Error::VertexMismatch(format!(
                "generator `{name}` does not belong to vertex `{}`",
                vg.name
            )));
        }
        syl.push((j as u32, k.clone()));
    }
    Ok(vg.from_syllables(&syl))
}

fn build_image(
    name: &str,
    vg: &VertexGroup,
    eg: &EdgeGroup,
    images: Vec<VElem>,
) -> Result<EdgeImage> {
    let k = eg.invariant_factors.len();
    match &vg.kind {
        GroupKind::Free { .. } => {
            let mut cyclic = None;
            for (i, (d, img)) in eg.invariant_factors.iter().zip(&images).enumerate() {
                let VElem::Free(w) = img else { unreachable!() };
                if d.is_one() {
                    if !w.is_identity() {
                        return Err(invalid(format!(
                            "edge `{name}`: trivial factor must map to the identity"
                        )));
                    }
                } else if !d.is_zero() {
                    return Err(invalid(format!(
                        "edge `{name}`: torsion cannot embed in a free group"
                    )));
                } else if w.is_identity() {
                    return Err(invalid(format!("edge `{name}`: edge map is not injective")));
                } else if cyclic.is_some() {
                    return Err(invalid(format!(
                        "edge `{name}`: abelian edge group of rank > 1 cannot embed in a free group"
                    )));
                } else {
                    cyclic = Some((i, w.clone()));
                }
            }
            Ok(match cyclic {
                None => EdgeImage::Trivial { k },
                Some((index, w)) => EdgeImage::Cyclic {
                    k,
                    index,
                    sub: CyclicSubgroup::new(w),
                },
            })
        }
        GroupKind::Abelian { invariant_factors } => {
            let cols: Vec<Vec<BigInt>> = images
                .into_iter()
                .map(|g| match g {
                    VElem::Abelian(v) => v,
                    VElem::Free(_) => unreachable!(),
                })
                .collect();
            is_embedding(&eg.invariant_factors, invariant_factors, &cols)
                .map_err(|m| invalid(format!("edge `{name}`: {m}")))?;
            let sub = Sublattice::new(invariant_factors, &cols);
            Ok(EdgeImage::Abelian { images: cols, sub })
        }
    }
}
