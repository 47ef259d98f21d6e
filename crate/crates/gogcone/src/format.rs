//! JSON file formats. Rationals are always strings `p/q` (or `p`).

use std::collections::BTreeMap;
use std::sync::Arc;

use gogcone_core::presentations::{
    EdgeGroup, EdgeSpec, GraphOfGroups, GraphSpec, GroupKind, VertexGroup, WordSpec,
};
use gogcone_core::rational;
use gogcone_core::seminorm::lp::Certificate;
use gogcone_core::seminorm::{
    FiniteChainComplex, GluePiece, HomClass, Identification, Interface, Matrix, PairComplex,
};
use gogcone_core::transplant::{invariant_cochain, Cochain, FamilyValues, SvPoint};
use gogcone_core::Q;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Result};
use crate::literal;

pub fn parse_q(s: &str) -> Result<Q> {
    rational::parse(s).ok_or_else(|| parse_err(format!("`{s}` is not a rational p/q")))
}

pub fn q_str(x: &Q) -> String {
    rational::to_string(x)
}

pub fn q_strs(v: &[Q]) -> Vec<String> {
    v.iter().map(q_str).collect()
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| parse_err(format!("integer {x} does not fit in 64 bits")))
}

// ---------------------------------------------------------------- graphs

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KindJson {
    Free { rank: usize },
    Abelian { invariant_factors: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub name: String,
    #[serde(flatten)]
    pub kind: KindJson,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeGroupJson {
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub name: String,
    pub reverse: String,
    pub origin: String,
    pub target: String,
    pub edge_group: EdgeGroupJson,
    /// One word per edge-group generator, as `[generator, exponent]` pairs.
    pub image: Vec<Vec<(String, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub spanning_tree: Vec<String>,
    pub base_vertex: String,
}

fn word_json(w: &WordSpec) -> Result<Vec<(String, i64)>> {
    w.iter().map(|(n, k)| Ok((n.clone(), small(k)?))).collect()
}

fn word_spec(w: &[(String, i64)]) -> WordSpec {
    w.iter()
        .map(|(n, k)| (n.clone(), BigInt::from(*k)))
        .collect()
}

fn ints(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

impl GraphJson {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let vertices = spec
            .vertices
            .iter()
            .map(|v| {
                let kind = match &v.kind {
                    GroupKind::Free { rank } => KindJson::Free { rank: *rank },
                    GroupKind::Abelian { invariant_factors } => KindJson::Abelian {
                        invariant_factors: ints(invariant_factors)?,
                    },
                };
                Ok(VertexJson {
                    name: v.name.clone(),
                    kind,
                    generators: v.generators.clone(),
                })
            })
            .collect::<Result<_>>()?;
        let edges = spec
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeJson {
                    name: e.name.clone(),
                    reverse: e.reverse.clone(),
                    origin: e.origin.clone(),
                    target: e.target.clone(),
                    edge_group: EdgeGroupJson {
                        invariant_factors: ints(&e.edge_group.invariant_factors)?,
                        generators: e.edge_group.generators.clone(),
                    },
                    image: e.image.iter().map(word_json).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(GraphJson {
            vertices,
            edges,
            spanning_tree: spec.spanning_tree.clone(),
            base_vertex: spec.base_vertex.clone(),
        })
    }

    pub fn to_spec(&self) -> GraphSpec {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        GraphSpec {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexGroup {
                    name: v.name.clone(),
                    kind: match &v.kind {
                        KindJson::Free { rank } => GroupKind::Free { rank: *rank },
                        KindJson::Abelian { invariant_factors } => GroupKind::Abelian {
                            invariant_factors: big(invariant_factors),
                        },
                    },
                    generators: v.generators.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    name: e.name.clone(),
                    reverse: e.reverse.clone(),
                    origin: e.origin.clone(),
                    target: e.target.clone(),
                    edge_group: EdgeGroup {
                        invariant_factors: big(&e.edge_group.invariant_factors),
                        generators: e.edge_group.generators.clone(),
                    },
                    image: e.image.iter().map(|w| word_spec(w)).collect(),
                })
                .collect(),
            spanning_tree: self.spanning_tree.clone(),
            base_vertex: self.base_vertex.clone(),
        }
    }

    pub fn build(&self) -> Result<GraphOfGroups> {
        Ok(GraphOfGroups::new(self.to_spec())?)
    }
}

pub fn graph_from_str(text: &str) -> Result<GraphJson> {
    Ok(serde_json::from_str(text)?)
}

pub fn graph_to_string(g: &GraphJson) -> String {
    let mut s = serde_json::to_string_pretty(g).expect("graph JSON serializes");
    s.push('\n');
    s
}

// ------------------------------------------------------- chain complexes

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub degree: usize,
    /// Coefficients by cell name; missing cells are 0.
    pub chain: BTreeMap<String, String>,
}

/// A finite chain complex, optionally with a subcomplex and a class.
///
/// Give either `simplices` (top simplices as vertex lists, faces named
/// `v0,v1,…`) or `cells` with `boundaries`, where `boundaries[k]` lists the
/// nonzero entries `[row, column, value]` of `∂_{k+1} : C_{k+1} → C_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<Vec<Vec<(usize, usize, String)>>>,
    /// Per degree, weights by cell name; unlisted cells weigh 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<BTreeMap<String, String>>>,
    /// Per degree, cell names generating the subcomplex (closed under ∂).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassJson>,
}

fn complex_skeleton(p: &PairJson) -> Result<FiniteChainComplex> {
    match (&p.simplices, &p.cells, &p.boundaries) {
        (Some(s), None, None) => {
            if s.is_empty() {
                return Err(parse_err("`simplices` is empty"));
            }
            Ok(FiniteChainComplex::from_simplices(s)?)
        }
        (None, Some(cells), Some(bds)) => {
            if cells.is_empty() {
                return Err(parse_err("`cells` is empty"));
            }
            let top = cells.len() - 1;
            if bds.len() != top {
                return Err(parse_err(format!(
                    "{} cell degrees need {} boundary matrices, got {}",
                    cells.len(),
                    top,
                    bds.len()
                )));
            }
            let mut mats = Vec::with_capacity(top);
            for (k, entries) in bds.iter().enumerate() {
                let mut m = Matrix::zeros(cells[k].len(), cells[k + 1].len());
                for (i, j, v) in entries {
                    if *i >= m.rows() || *j >= m.cols() {
                        return Err(parse_err(format!(
                            "boundary {} entry ({i}, {j}) out of range",
                            k + 1
                        )));
                    }
                    m.set(*i, *j, parse_q(v)?);
                }
                mats.push(m);
            }
            Ok(FiniteChainComplex::with_unit_weights(cells.clone(), mats)?)
        }
        _ => Err(parse_err(
            "give either `simplices`, or `cells` together with `boundaries`",
        )),
    }
}

fn check_unique_names(c: &FiniteChainComplex) -> Result<()> {
    for n in 0..=c.top() {
        let mut seen = std::collections::BTreeSet::new();
        for name in c.names(n) {
            if !seen.insert(name) {
                return Err(parse_err(format!(
                    "cell name `{name}` repeated in degree {n}"
                )));
            }
        }
    }
    Ok(())
}

fn find_cell(c: &FiniteChainComplex, n: usize, name: &str) -> Result<usize> {
    if n > c.top() {
        return Err(parse_err(format!("no cells in degree {n}")));
    }
    c.find(n, name)
        .ok_or_else(|| parse_err(format!("no cell `{name}` in degree {n}")))
}

impl PairJson {
    pub fn complex(&self) -> Result<FiniteChainComplex> {
        let c = complex_skeleton(self)?;
        check_unique_names(&c)?;
        let Some(ws) = &self.weights else {
            return Ok(c);
        };
        if ws.len() > c.top() + 1 {
            return Err(parse_err("weights given for degrees above the top"));
        }
        let mut weights: Vec<Vec<Q>> = (0..=c.top()).map(|n| vec![Q::one(); c.dim(n)]).collect();
        for (n, map) in ws.iter().enumerate() {
            for (name, w) in map {
                weights[n][find_cell(&c, n, name)?] = parse_q(w)?;
            }
        }
        Ok(c.with_weights(weights)?)
    }

    pub fn pair(&self) -> Result<PairComplex> {
        let x = self.complex()?;
        let Some(sub) = &self.subcomplex else {
            return Ok(PairComplex::absolute(x));
        };
        let mut cells = Vec::new();
        for (n, names) in sub.iter().enumerate() {
            for name in names {
                cells.push((n, find_cell(&x, n, name)?));
            }
        }
        Ok(PairComplex::generated_by(x, &cells)?)
    }

    pub fn class_in(&self, x: &FiniteChainComplex) -> Result<Option<HomClass>> {
        let Some(c) = &self.class else {
            return Ok(None);
        };
        Ok(Some(class_from_json(x, c)?))
    }

    /// The explicit form (`cells` and `boundaries`) of a pair and class.
    pub fn from_pair(pair: &PairComplex, class: Option<&HomClass>) -> Self {
        let x = pair.ambient();
        let cells: Vec<Vec<String>> = (0..=x.top()).map(|n| x.names(n).to_vec()).collect();
        let boundaries = (1..=x.top())
            .map(|n| {
                x.boundary(n)
                    .entries()
                    .map(|(i, j, v)| (i, j, q_str(v)))
                    .collect()
            })
            .collect();
        let weighted = (0..=x.top()).any(|n| x.weights(n).iter().any(|w| !w.is_one()));
        let weights = weighted.then(|| {
            (0..=x.top())
                .map(|n| {
                    x.names(n)
                        .iter()
                        .zip(x.weights(n))
                        .filter(|(_, w)| !w.is_one())
                        .map(|(name, w)| (name.clone(), q_str(w)))
                        .collect()
                })
                .collect()
        });
        let subcomplex = (!pair.is_absolute()).then(|| {
            (0..=x.top())
                .map(|n| {
                    pair.sub_basis(n)
                        .iter()
                        .map(|&i| x.names(n)[i].clone())
                        .collect()
                })
                .collect()
        });
        PairJson {
            simplices: None,
            cells: Some(cells),
            boundaries: Some(boundaries),
            weights,
            subcomplex,
            class: class.map(|c| class_to_json(x, c)),
        }
    }
}

pub fn class_from_json(x: &FiniteChainComplex, c: &ClassJson) -> Result<HomClass> {
    if c.degree > x.top() {
        return Err(parse_err(format!(
            "class degree {} above the top degree {}",
            c.degree,
            x.top()
        )));
    }
    let mut chain = vec![Q::zero(); x.dim(c.degree)];
    for (name, v) in &c.chain {
        chain[find_cell(x, c.degree, name)?] = parse_q(v)?;
    }
    Ok(HomClass::new(c.degree, chain))
}

pub fn class_to_json(x: &FiniteChainComplex, c: &HomClass) -> ClassJson {
    ClassJson {
        degree: c.degree,
        chain: chain_json(x, c.degree, &c.chain),
    }
}

/// Nonzero coefficients by cell name.
pub fn chain_json(x: &FiniteChainComplex, n: usize, c: &[Q]) -> BTreeMap<String, String> {
    x.names(n)
        .iter()
        .zip(c)
        .filter(|(_, v)| !v.is_zero())
        .map(|(name, v)| (name.clone(), q_str(v)))
        .collect()
}

pub fn pair_from_str(text: &str) -> Result<PairJson> {
    Ok(serde_json::from_str(text)?)
}

// ----------------------------------------------------------------- gluing

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentificationJson {
    pub degree: usize,
    pub left: String,
    pub right: String,
    #[serde(default = "plus_one")]
    pub sign: i8,
}

fn plus_one() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfaceJson {
    pub left: usize,
    pub right: usize,
    /// Identify subcomplex cells with equal vertex sets (simplicial pieces).
    #[serde(default)]
    pub by_vertex_labels: bool,
    #[serde(default)]
    pub cells: Vec<IdentificationJson>,
}

/// Pieces (each with its relative cycle as `class`) and the interfaces
/// along which they are glued.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueJson {
    pub degree: usize,
    pub pieces: Vec<PairJson>,
    pub interfaces: Vec<InterfaceJson>,
}

impl GlueJson {
    pub fn load(&self) -> Result<(Vec<GluePiece>, Vec<Interface>)> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (k, p) in self.pieces.iter().enumerate() {
            let pair = p.pair()?;
            let class = p
                .class_in(pair.ambient())?
                .ok_or_else(|| parse_err(format!("piece {k} has no `class`")))?;
            if class.degree != self.degree {
                return Err(parse_err(format!(
                    "piece {k}: class degree {} differs from {}",
                    class.degree, self.degree
                )));
            }
            pieces.push(GluePiece {
                pair,
                cycle: class.chain,
            });
        }
        let mut interfaces = Vec::with_capacity(self.interfaces.len());
        for f in &self.interfaces {
            if f.left >= pieces.len() || f.right >= pieces.len() {
                return Err(parse_err(format!(
                    "interface {}–{} names a missing piece",
                    f.left, f.right
                )));
            }
            let mut iface = if f.by_vertex_labels {
                Interface::by_vertex_labels(&pieces, f.left, f.right)
            } else {
                Interface {
                    left: f.left,
                    right: f.right,
                    cells: Vec::new(),
                }
            };
            for c in &f.cells {
                if c.sign != 1 && c.sign != -1 {
                    return Err(parse_err(format!(
                        "identification sign must be ±1, got {}",
                        c.sign
                    )));
                }
                iface.cells.push(Identification {
                    degree: c.degree,
                    left: find_cell(pieces[f.left].pair.ambient(), c.degree, &c.left)?,
                    right: find_cell(pieces[f.right].pair.ambient(), c.degree, &c.right)?,
                    sign: c.sign,
                });
            }
            interfaces.push(iface);
        }
        Ok((pieces, interfaces))
    }

    pub fn from_parts(degree: usize, pieces: &[GluePiece], interfaces: &[Interface]) -> Self {
        GlueJson {
            degree,
            pieces: pieces
                .iter()
                .map(|p| {
                    PairJson::from_pair(&p.pair, Some(&HomClass::new(degree, p.cycle.clone())))
                })
                .collect(),
            interfaces: interfaces
                .iter()
                .map(|f| InterfaceJson {
                    left: f.left,
                    right: f.right,
                    by_vertex_labels: false,
                    cells: f
                        .cells
                        .iter()
                        .map(|c| IdentificationJson {
                            degree: c.degree,
                            left: pieces[f.left].pair.ambient().names(c.degree)[c.left].clone(),
                            right: pieces[f.right].pair.ambient().names(c.degree)[c.right].clone(),
                            sign: c.sign,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

// --------------------------------------------------------------- cochains

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub tuple: Vec<String>,
    pub value: String,
}

/// A family of alternating invariant vertex cochains `f_v`, either seeded or
/// tabulated (values on orbit representatives, 0 elsewhere), plus optional
/// `S`-point tuples to evaluate at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertices: BTreeMap<String, Vec<CochainEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tuples: Vec<Vec<String>>,
}

impl CochainJson {
    /// Tables on canonical orbit keys, one per vertex.
    pub fn tables(&self, g: &GraphOfGroups) -> Result<Vec<BTreeMap<Vec<SvPoint>, Q>>> {
        let mut tables = vec![BTreeMap::new(); g.vertex_count()];
        for (name, entries) in &self.vertices {
            let v = g.vertex_index(name)?;
            for e in entries {
                if e.tuple.len() != self.degree + 1 {
                    return Err(parse_err(format!(
                        "tuple of length {} in a degree {} cochain",
                        e.tuple.len(),
                        self.degree
                    )));
                }
                let x = e
                    .tuple
                    .iter()
                    .map(|t| literal::parse_sv_point(g, v, t))
                    .collect::<Result<Vec<_>>>()?;
                let value = parse_q(&e.value)?;
                let Some((key, sign)) = g.alternating_key(v, &x)? else {
                    if value.is_zero() {
                        continue;
                    }
                    return Err(parse_err(format!(
                        "alternating invariant cochains vanish on {:?}, value {} given",
                        e.tuple, e.value
                    )));
                };
                let value = if sign < 0 { -value } else { value };
                match tables[v].get(&key) {
                    Some(old) if *old != value => {
                        return Err(parse_err(format!(
                            "tuple {:?} contradicts an earlier entry of its orbit",
                            e.tuple
                        )));
                    }
                    _ => {
                        tables[v].insert(key, value);
                    }
                }
            }
        }
        Ok(tables)
    }

    pub fn family(&self, g: &Arc<GraphOfGroups>) -> Result<Vec<Cochain<SvPoint>>> {
        if self.degree < 2 {
            return Err(gogcone_core::Error::DegreeTooLow(self.degree).into());
        }
        if let Some(seed) = self.seed {
            if !self.vertices.is_empty() {
                return Err(parse_err("give either `seed` or `vertices`, not both"));
            }
            return Ok((0..g.vertex_count())
                .map(|v| {
                    invariant_cochain(
                        g,
                        v,
                        self.degree,
                        FamilyValues::Seeded(seed.wrapping_add(v as u64)),
                    )
                })
                .collect());
        }
        let tables = self.tables(g)?;
        Ok(tables
            .into_iter()
            .enumerate()
            .map(|(v, t)| invariant_cochain(g, v, self.degree, FamilyValues::Table(t)))
            .collect())
    }
}

// ----------------------------------------------------------- certificates

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateJson {
    Optimal {
        value: String,
        primal: Vec<String>,
        dual: Vec<String>,
    },
    Infeasible {
        farkas: Vec<String>,
    },
    Unbounded {
        primal: Vec<String>,
        ray: Vec<String>,
    },
}

impl CertificateJson {
    pub fn new(c: &Certificate) -> Self {
        match c {
            Certificate::Optimal { x, y, value } => CertificateJson::Optimal {
                value: q_str(value),
                primal: q_strs(x),
                dual: q_strs(y),
            },
            Certificate::Infeasible { y } => CertificateJson::Infeasible { farkas: q_strs(y) },
            Certificate::Unbounded { x, ray } => CertificateJson::Unbounded {
                primal: q_strs(x),
                ray: q_strs(ray),
            },
        }
    }
}
