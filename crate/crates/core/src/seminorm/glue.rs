//! Gluing relative cycles along identified boundary pieces.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::complex::{FiniteChainComplex, PairComplex};
use super::lp::{self, Certificate, LpProblem, Relation, VarKind};
use super::matrix::Matrix;
use crate::{Error, Result, Q};

/// A pair with a chosen relative cycle.
#[derive(Debug, Clone)]
pub struct GluePiece {
    pub pair: PairComplex,
    pub cycle: Vec<Q>,
}

/// `cell` of piece `left` is identified with `sign ·` `cell` of piece
/// `right`; both cells lie in the subcomplexes of their pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub degree: usize,
    pub left: usize,
    pub right: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interface {
    pub left: usize,
    pub right: usize,
    pub cells: Vec<Identification>,
}

impl Interface {
    /// Identifies the subcomplex cells of two simplicial pieces whose names,
    /// read as comma-separated vertex lists, have the same vertex set. The
    /// sign is the sign of the permutation between the two vertex orders.
    pub fn by_vertex_labels(pieces: &[GluePiece], left: usize, right: usize) -> Interface {
        let mut cells = Vec::new();
        let (l, r) = (&pieces[left].pair, &pieces[right].pair);
        for d in 0..=l.ambient().top() {
            for &i in l.sub_basis(d) {
                let a: Vec<&str> = l.ambient().names(d)[i].split(',').collect();
                for &j in r.sub_basis(d) {
                    let b: Vec<&str> = r.ambient().names(d)[j].split(',').collect();
                    if let Some(sign) = order_sign(&a, &b) {
                        cells.push(Identification {
                            degree: d,
                            left: i,
                            right: j,
                            sign,
                        });
                    }
                }
            }
        }
        Interface { left, right, cells }
    }
}

fn order_sign(a: &[&str], b: &[&str]) -> Option<i8> {
    if a.len() != b.len() {
        return None;
    }
    let mut p = Vec::with_capacity(a.len());
    for x in a {
        p.push(b.iter().position(|y| y == x)?);
    }
    let mut sign = 1;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    Some(sign)
}

#[derive(Debug, Clone)]
pub struct GlueResult {
    pub glued: PairComplex,
    /// Cells of the glued complex coming from identified cells.
    pub interface: Vec<Vec<usize>>,
    /// `c = Σ c_v` pushed into the glued complex.
    pub sum: Vec<Q>,
    pub correction: Vec<Q>,
    /// `c″ = c − c′`.
    pub cycle: Vec<Q>,
    pub piece_norms: Vec<Q>,
    pub correction_norm: Q,
    pub cycle_norm: Q,
    pub problem: LpProblem,
    pub certificate: Certificate,
}

impl GlueResult {
    /// `c″` is a relative cycle, `c′` is certified minimal and
    /// `‖c″‖₁ ≤ Σ‖c_v‖₁ + ‖c′‖₁`.
    pub fn verified(&self, degree: usize) -> bool {
        let bound: Q = self.piece_norms.iter().sum::<Q>() + &self.correction_norm;
        self.glued.is_relative_cycle(degree, &self.cycle)
            && self.certificate.verify(&self.problem)
            && self.certificate.value() == Some(&self.correction_norm)
            && self.cycle_norm <= bound
    }
}

struct Classes {
    /// `(piece, degree, cell) → (glued cell, sign)`.
    of: Vec<Vec<Vec<(usize, i8)>>>,
    /// Members of each glued cell per degree, with their signs.
    members: Vec<Vec<Vec<(usize, usize, i8)>>>,
}

fn find(parent: &mut [(usize, i8)], x: usize) -> (usize, i8) {
    let (p, s) = parent[x];
    if p == x {
        return (x, 1);
    }
    let (root, t) = find(parent, p);
    parent[x] = (root, s * t);
    (root, s * t)
}

fn classes(pieces: &[GluePiece], interfaces: &[Interface]) -> Result<Classes> {
    let top = pieces
        .iter()
        .map(|p| p.pair.ambient().top())
        .max()
        .unwrap_or(0);
    let mut offsets = vec![vec![0usize; top + 1]; pieces.len() + 1];
    let mut total = vec![0usize; top + 1];
    for (k, piece) in pieces.iter().enumerate() {
        for d in 0..=top {
            offsets[k][d] = total[d];
            total[d] += piece.pair.ambient().dim(d);
        }
    }
    let mut parent: Vec<Vec<(usize, i8)>> = total
        .iter()
        .map(|&t| (0..t).map(|i| (i, 1)).collect())
        .collect();
    for (idx, iface) in interfaces.iter().enumerate() {
        if iface.left >= pieces.len() || iface.right >= pieces.len() {
            return Err(Error::InterfaceMismatch(format!(
                "interface {idx} names a missing piece"
            )));
        }
        let mut used = BTreeSet::new();
        for c in &iface.cells {
            let (l, r) = (&pieces[iface.left].pair, &pieces[iface.right].pair);
            if c.degree > top || !l.in_sub(c.degree, c.left) || !r.in_sub(c.degree, c.right) {
                return Err(Error::InterfaceMismatch(format!(
                    "interface {idx}: cell pair ({}, {}) in degree {} is not in both boundary subcomplexes",
                    c.left, c.right, c.degree
                )));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InterfaceMismatch(format!(
                    "interface {idx}: sign must be ±1"
                )));
            }
            if !used.insert((0, c.degree, c.left)) || !used.insert((1, c.degree, c.right)) {
                return Err(Error::InterfaceMismatch(format!(
                    "interface {idx} is not a bijection"
                )));
            }
            if l.ambient().weights(c.degree)[c.left] != r.ambient().weights(c.degree)[c.right] {
                return Err(Error::InterfaceMismatch(format!(
                    "interface {idx}: weights differ"
                )));
            }
            let p = &mut parent[c.degree];
            let (a, sa) = find(p, offsets[iface.left][c.degree] + c.left);
            let (b, sb) = find(p, offsets[iface.right][c.degree] + c.right);
            // left = sign · right, so root_b = sa · sign · sb · root_a.
            let rel = sa * c.sign * sb;
            if a == b {
                if rel != 1 {
                    return Err(Error::InterfaceMismatch(format!(
                        "interface {idx}: inconsistent orientations"
                    )));
                }
                continue;
            }
            p[b] = (a, rel);
        }
    }
    let mut of = vec![vec![Vec::new(); top + 1]; pieces.len()];
    let mut members = vec![Vec::new(); top + 1];
    for d in 0..=top {
        let mut glued_of_root = vec![usize::MAX; total[d]];
        for (k, piece) in pieces.iter().enumerate() {
            for i in 0..piece.pair.ambient().dim(d) {
                let (root, s) = find(&mut parent[d], offsets[k][d] + i);
                if glued_of_root[root] == usize::MAX {
                    glued_of_root[root] = members[d].len();
                    members[d].push(Vec::new());
                }
                let g = glued_of_root[root];
                members[d][g].push((k, i, s));
                of[k][d].push((g, s));
            }
        }
    }
    Ok(Classes { of, members })
}

/// Glues the pieces, sums their cycles and corrects the sum by a minimal
/// chain on the interfaces so that it becomes a relative cycle of the
/// glued pair (whose subcomplex is generated by the unidentified boundary
/// cells).
pub fn glue_assemble(
    degree: usize,
    pieces: &[GluePiece],
    interfaces: &[Interface],
) -> Result<GlueResult> {
    for (k, p) in pieces.iter().enumerate() {
        p.pair.ambient().check_chain(degree, &p.cycle)?;
        if !p.pair.is_relative_cycle(degree, &p.cycle) {
            return Err(Error::InterfaceMismatch(format!(
                "piece {k}: chosen chain is not a relative cycle"
            )));
        }
    }
    let cl = classes(pieces, interfaces)?;
    let top = cl.members.len() - 1;
    let dims: Vec<usize> = cl.members.iter().map(Vec::len).collect();

    let mut names: Vec<Vec<String>> = Vec::new();
    let mut weights: Vec<Vec<Q>> = Vec::new();
    for d in 0..=top {
        let mut nd = Vec::new();
        let mut wd = Vec::new();
        for m in &cl.members[d] {
            let (k, i, _) = m[0];
            let x = pieces[k].pair.ambient();
            let label: Vec<String> = m
                .iter()
                .map(|(k, i, _)| format!("{k}:{}", pieces[*k].pair.ambient().names(d)[*i]))
                .collect();
            nd.push(label.join("="));
            wd.push(x.weights(d)[i].clone());
        }
        names.push(nd);
        weights.push(wd);
    }
    let mut boundaries = Vec::new();
    for d in 1..=top {
        let mut m = Matrix::zeros(dims[d - 1], dims[d]);
        for (g, mem) in cl.members[d].iter().enumerate() {
            let mut col: Option<Vec<Q>> = None;
            for &(k, i, s) in mem {
                let x = pieces[k].pair.ambient();
                let mut image = vec![Q::zero(); dims[d - 1]];
                for r in 0..x.dim(d - 1) {
                    let a = x.boundary(d).get(r, i);
                    if !a.is_zero() {
                        let (h, t) = cl.of[k][d - 1][r];
                        image[h] += a * Q::from_integer((t * s).into());
                    }
                }
                match &col {
                    None => col = Some(image),
                    Some(c) if *c != image => {
                        return Err(Error::InterfaceMismatch(format!(
                            "identification does not commute with the boundary at {}",
                            names[d][g]
                        )));
                    }
                    _ => {}
                }
            }
            for (r, a) in col.unwrap_or_default().into_iter().enumerate() {
                m.set(r, g, a);
            }
        }
        boundaries.push(m);
    }
    let complex = FiniteChainComplex::new(names, boundaries, weights)?;

    let identified: Vec<Vec<usize>> = cl
        .members
        .iter()
        .map(|ms| (0..ms.len()).filter(|&g| ms[g].len() > 1).collect())
        .collect();
    let mut exterior = Vec::new();
    for (d, ms) in cl.members.iter().enumerate() {
        for (g, m) in ms.iter().enumerate() {
            if m.len() == 1 && pieces[m[0].0].pair.in_sub(d, m[0].1) {
                exterior.push((d, g));
            }
        }
    }
    let glued = PairComplex::generated_by(complex, &exterior)?;
    let x = glued.ambient();

    let mut sum = vec![Q::zero(); x.dim(degree)];
    let mut piece_norms = Vec::new();
    for (k, p) in pieces.iter().enumerate() {
        piece_norms.push(p.pair.ambient().norm(degree, &p.cycle));
        for (i, a) in p.cycle.iter().enumerate() {
            if !a.is_zero() {
                let (g, s) = cl.of[k][degree][i];
                sum[g] += a * Q::from_integer(s.into());
            }
        }
    }

    // c′ on interface cells with ∂c′ = ∂c away from the glued subcomplex.
    let cells = identified.get(degree).cloned().unwrap_or_default();
    let mut p = LpProblem::new(vec![VarKind::Free; cells.len()]);
    let mut abs_vars = Vec::new();
    for (t, &g) in cells.iter().enumerate() {
        let w = x.weights(degree)[g].clone();
        let plus = p.add_var(VarKind::NonNeg, w.clone());
        let minus = p.add_var(VarKind::NonNeg, w);
        p.add_constraint(
            vec![(t, Q::one()), (plus, -Q::one()), (minus, Q::one())],
            Relation::Eq,
            Q::zero(),
        );
        abs_vars.push((plus, minus));
    }
    if degree > 0 {
        let bd = x.boundary(degree);
        let dc = x.apply_boundary(degree, &sum);
        for r in 0..x.dim(degree - 1) {
            if glued.in_sub(degree - 1, r) {
                continue;
            }
            let coeffs = cells
                .iter()
                .enumerate()
                .map(|(t, &g)| (t, bd.get(r, g).clone()))
                .collect();
            p.add_constraint(coeffs, Relation::Eq, dc[r].clone());
        }
    }
    let certificate = lp::solve(&p)?;
    let Certificate::Optimal { x: sol, value, .. } = &certificate else {
        return Err(Error::Unfillable);
    };
    let mut correction = vec![Q::zero(); x.dim(degree)];
    for (t, &g) in cells.iter().enumerate() {
        correction[g] = sol[t].clone();
    }
    let cycle: Vec<Q> = sum.iter().zip(&correction).map(|(a, b)| a - b).collect();
    let correction_norm = value.clone();
    let cycle_norm = x.norm(degree, &cycle);
    Ok(GlueResult {
        interface: identified,
        sum,
        correction,
        cycle,
        piece_norms,
        correction_norm,
        cycle_norm,
        problem: p,
        certificate,
        glued,
    })
}
