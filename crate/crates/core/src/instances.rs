//! Small graphs of groups used throughout the tests and the command line.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::presentations::{EdgeGroup, EdgeSpec, GraphOfGroups, GraphSpec, GroupKind, VertexGroup};
use crate::seminorm::{FiniteChainComplex, GluePiece, HomClass, Interface, Matrix, PairComplex};
use crate::Q;

fn s(x: &str) -> String {
    x.to_string()
}

fn free(name: &str, gens: &[&str]) -> VertexGroup {
    VertexGroup {
        name: s(name),
        kind: GroupKind::Free { rank: gens.len() },
        generators: gens.iter().map(|g| s(g)).collect(),
    }
}

fn z() -> EdgeGroup {
    EdgeGroup {
        invariant_factors: vec![BigInt::from(0)],
        generators: vec![s("t")],
    }
}

fn edge_pair(
    name: &str,
    rev: &str,
    origin: &str,
    target: &str,
    group: EdgeGroup,
    forward: Vec<(&str, i64)>,
    backward: Vec<(&str, i64)>,
) -> [EdgeSpec; 2] {
    let word = |w: Vec<(&str, i64)>| -> Vec<Vec<(String, BigInt)>> {
        if group.generators.is_empty() {
            Vec::new()
        } else {
            vec![w
                .into_iter()
                .map(|(g, k)| (s(g), BigInt::from(k)))
                .collect()]
        }
    };
    [
        EdgeSpec {
            name: s(name),
            reverse: s(rev),
            origin: s(origin),
            target: s(target),
            edge_group: group.clone(),
            image: word(forward),
        },
        EdgeSpec {
            name: s(rev),
            reverse: s(name),
            origin: s(target),
            target: s(origin),
            edge_group: group.clone(),
            image: word(backward),
        },
    ]
}

/// `ℤ ∗ ℤ = ⟨a⟩ ∗ ⟨b⟩`: vertices `v`, `w`, trivial edge group.
pub fn free_product_zz() -> GraphSpec {
    GraphSpec {
        vertices: vec![free("v", &["a"]), free("w", &["b"])],
        edges: edge_pair("e", "ebar", "v", "w", EdgeGroup::trivial(), vec![], vec![]).into(),
        spanning_tree: vec![s("e")],
        base_vertex: s("v"),
    }
}

/// Trefoil group `⟨x⟩ ∗_{x² = y³} ⟨y⟩`.
pub fn trefoil() -> GraphSpec {
    GraphSpec {
        vertices: vec![free("u", &["x"]), free("v", &["y"])],
        edges: edge_pair("e", "ebar", "u", "v", z(), vec![("y", 3)], vec![("x", 2)]).into(),
        spanning_tree: vec![s("e")],
        base_vertex: s("u"),
    }
}

/// `BS(1,2) = ⟨a, e | e a e⁻¹ = a²⟩` as an HNN extension.
pub fn baumslag_solitar_1_2() -> GraphSpec {
    GraphSpec {
        vertices: vec![free("v", &["a"])],
        edges: edge_pair("e", "ebar", "v", "v", z(), vec![("a", 1)], vec![("a", 2)]).into(),
        spanning_tree: vec![],
        base_vertex: s("v"),
    }
}

/// The three graphs of groups above, by short name.
pub fn graphs() -> Vec<(&'static str, GraphSpec)> {
    vec![
        ("zz", free_product_zz()),
        ("trefoil", trefoil()),
        ("bs12", baumslag_solitar_1_2()),
    ]
}

pub fn build(spec: GraphSpec) -> GraphOfGroups {
    GraphOfGroups::new(spec).expect("bundled graphs are valid")
}

fn simplices(list: &[&[&str]]) -> FiniteChainComplex {
    let v: Vec<Vec<String>> = list
        .iter()
        .map(|t| t.iter().map(|x| s(x)).collect())
        .collect();
    FiniteChainComplex::from_simplices(&v).expect("bundled complexes are valid")
}

fn unit(c: &FiniteChainComplex, n: usize, names: &[&str]) -> Vec<Q> {
    c.chain(n, &names.iter().map(|x| (*x, 1)).collect::<Vec<_>>())
        .expect("bundled cells exist")
}

/// Boundary of a triangle, with the class of the loop `[0,1] + [1,2] + [2,0]`.
pub fn triangle_circle() -> (PairComplex, HomClass) {
    let c = simplices(&[&["0", "1"], &["1", "2"], &["2", "0"]]);
    let z = unit(&c, 1, &["0,1", "1,2", "2,0"]);
    (PairComplex::absolute(c), HomClass::new(1, z))
}

/// The 2-simplex relative to its boundary, with the class of the 2-cell.
pub fn simplex_rel_boundary() -> (PairComplex, HomClass) {
    let c = simplices(&[&["0", "1", "2"]]);
    let z = unit(&c, 2, &["0,1,2"]);
    let pair =
        PairComplex::by_names(c, &[&["0", "1", "2"], &["0,1", "0,2", "1,2"]]).expect("closed");
    (pair, HomClass::new(2, z))
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> FiniteChainComplex {
    let mut list: Vec<Vec<String>> = Vec::new();
    for i in 0..7 {
        for t in [[i, i + 1, i + 3], [i, i + 2, i + 3]] {
            list.push(t.iter().map(|k| (k % 7).to_string()).collect());
        }
    }
    FiniteChainComplex::from_simplices(&list).expect("bundled complexes are valid")
}

/// A generator of `H_2` of a complex whose second homology is `ℚ`, scaled
/// so that its first nonzero coefficient is `1`.
pub fn fundamental_class(c: &FiniteChainComplex) -> Option<HomClass> {
    let mut cycles = c.cycles(2);
    if cycles.len() != 1 || c.dim(3) != 0 {
        return None;
    }
    let mut z = cycles.pop()?;
    let lead = z.iter().find(|x| !num_traits::Zero::is_zero(*x))?.clone();
    for x in z.iter_mut() {
        *x /= &lead;
    }
    Some(HomClass::new(2, z))
}

/// `C_2 = ⟨u, w⟩`, `C_1 = ⟨y⟩`, `∂u = ∂w = y`, with `Y = ⟨w, y⟩`, the
/// given weight on `w` and the class of `u`.
pub fn uw_pair(weight_w: Q) -> (PairComplex, HomClass) {
    let one = Q::from_integer(1.into());
    let names = vec![Vec::new(), vec![s("y")], vec![s("u"), s("w")]];
    let d1 = Matrix::zeros(0, 1);
    let d2 = Matrix::from_rows(vec![vec![one.clone(), one.clone()]], 2).expect("shape");
    let weights = vec![Vec::new(), vec![one.clone()], vec![one.clone(), weight_w]];
    let c = FiniteChainComplex::new(names, vec![d1, d2], weights).expect("valid");
    let pair = PairComplex::by_names(c, &[&[], &["y"], &["w"]]).expect("closed");
    (pair, HomClass::new(2, vec![one, Q::from_integer(0.into())]))
}

fn glue_problem(
    pieces: Vec<(FiniteChainComplex, Vec<&str>, usize, Vec<&str>)>,
) -> (Vec<GluePiece>, Vec<Interface>) {
    let mut out = Vec::new();
    for (c, boundary, degree, cycle) in pieces {
        let cells: Vec<(usize, usize)> = boundary
            .iter()
            .map(|name| {
                let d = name.split(',').count() - 1;
                (d, c.find(d, name).expect("bundled cells exist"))
            })
            .collect();
        let z = unit(&c, degree, &cycle);
        let pair = PairComplex::generated_by(c, &cells).expect("closed");
        out.push(GluePiece { pair, cycle: z });
    }
    let ifaces = (1..out.len())
        .map(|k| Interface::by_vertex_labels(&out, 0, k))
        .collect();
    (out, ifaces)
}

/// Two edges `[p,q]` and `[q,r]` glued at `q`.
pub fn glue_segments() -> (Vec<GluePiece>, Vec<Interface>) {
    glue_problem(vec![
        (simplices(&[&["p", "q"]]), vec!["p", "q"], 1, vec!["p,q"]),
        (simplices(&[&["q", "r"]]), vec!["q", "r"], 1, vec!["q,r"]),
    ])
}

/// Two triangles glued along `[a,c]` into a square.
pub fn glue_square() -> (Vec<GluePiece>, Vec<Interface>) {
    glue_problem(vec![
        (
            simplices(&[&["a", "b", "c"]]),
            vec!["b,c", "a,c", "a,b"],
            2,
            vec!["a,b,c"],
        ),
        (
            simplices(&[&["a", "c", "d"]]),
            vec!["c,d", "a,d", "a,c"],
            2,
            vec!["a,c,d"],
        ),
    ])
}

fn ring(inner: &str, outer: &str) -> Vec<[String; 3]> {
    let mut t = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        t.push([
            alloc::format!("{inner}{i}"),
            alloc::format!("{inner}{j}"),
            alloc::format!("{outer}{i}"),
        ]);
        t.push([
            alloc::format!("{inner}{j}"),
            alloc::format!("{outer}{j}"),
            alloc::format!("{outer}{i}"),
        ]);
    }
    t
}

/// Two annuli sharing a collar annulus between the circles `m` and `k`.
///
/// Piece 0 is the ring from the circle `a` to `m` plus the collar, with the
/// circle `a` and the collar as subcomplex and the outer ring as cycle.
/// Piece 1 is the collar plus the ring from `k` to `b`, likewise. The
/// summed cycles leave the two collar circles as interior boundary, which
/// only the collar itself fills.
pub fn glue_annuli() -> (Vec<GluePiece>, Vec<Interface>) {
    let piece = |outer_ring: Vec<[String; 3]>, circle: &str| {
        let collar = ring("m", "k");
        let mut all: Vec<Vec<String>> = outer_ring.iter().map(|t| t.to_vec()).collect();
        all.extend(collar.iter().map(|t| t.to_vec()));
        let c = FiniteChainComplex::from_simplices(&all).expect("valid");
        let mut gens: Vec<(usize, usize)> = collar
            .iter()
            .map(|t| (2, c.find(2, &t.join(",")).expect("collar cell")))
            .collect();
        for i in 0..3 {
            let j = (i + 1) % 3;
            let name = [alloc::format!("{circle}{i}"), alloc::format!("{circle}{j}")];
            let e = c
                .find(1, &name.join(","))
                .or_else(|| c.find(1, &alloc::format!("{},{}", name[1], name[0])));
            gens.push((1, e.expect("circle edge")));
        }
        let mut z = vec![Q::from_integer(0.into()); c.dim(2)];
        for t in &outer_ring {
            z[c.find(2, &t.join(",")).expect("ring cell")] = Q::from_integer(1.into());
        }
        let pair = PairComplex::generated_by(c, &gens).expect("closed");
        GluePiece { pair, cycle: z }
    };
    let a = piece(ring("a", "m"), "a");
    let b = piece(ring("k", "b"), "b");
    let pieces = vec![a, b];
    let iface = Interface::by_vertex_labels(&pieces, 0, 1);
    (pieces, vec![iface])
}
