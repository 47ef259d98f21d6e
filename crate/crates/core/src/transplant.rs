//! Vertex sets `S_v`, cochains on them, and the transplant map `ψⁿ` from
//! vertex cochains to cochains on `S_𝒢`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bass_serre::{SPoint, TNode};
use crate::presentations::{GraphOfGroups, NormalForm, VElem};
use crate::rational::{frac, q};
use crate::{Error, Result, Q};

/// A point of `S_v = Γ_v ⊔ ⊔_{t(e)=v} Γ_v/h_e(Γ_e)`; the vertex is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SvPoint {
    Elem(VElem),
    /// The coset `rep · h_e(Γ_e)` with `rep` canonical.
    Coset {
        edge: usize,
        rep: VElem,
    },
}

type Evaluator<P> = dyn Fn(&[P]) -> Result<Q> + Send + Sync;

/// A homogeneous cochain of degree `n`, evaluated on `(n+1)`-tuples.
///
/// Evaluators must be pure; the harnesses may call them from several threads.
pub struct Cochain<P> {
    degree: usize,
    sup_bound: Q,
    alternating: bool,
    eval: Arc<Evaluator<P>>,
}

impl<P> Clone for Cochain<P> {
    fn clone(&self) -> Self {
        Cochain {
            degree: self.degree,
            sup_bound: self.sup_bound.clone(),
            alternating: self.alternating,
            eval: self.eval.clone(),
        }
    }
}

impl<P> core::fmt::Debug for Cochain<P> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Cochain")
            .field("degree", &self.degree)
            .field("sup_bound", &self.sup_bound)
            .field("alternating", &self.alternating)
            .finish_non_exhaustive()
    }
}

impl<P: 'static> Cochain<P> {
    pub fn new(
        degree: usize,
        sup_bound: Q,
        alternating: bool,
        eval: impl Fn(&[P]) -> Result<Q> + Send + Sync + 'static,
    ) -> Self {
        Cochain {
            degree,
            sup_bound,
            alternating,
            eval: Arc::new(eval),
        }
    }

    pub fn zero(degree: usize) -> Self {
        Cochain::new(degree, Q::zero(), true, |_| Ok(Q::zero()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sup_bound(&self) -> &Q {
        &self.sup_bound
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn evaluate(&self, x: &[P]) -> Result<Q> {
        if x.len() != self.degree + 1 {
            return Err(Error::DegreeMismatch {
                expected: self.degree + 1,
                got: x.len(),
            });
        }
        (self.eval)(x)
    }

    /// `(δf)(x₀,…,x_{n+1}) = Σ (−1)ⁱ f(x₀,…,x̂ᵢ,…,x_{n+1})`.
    pub fn coboundary(&self) -> Self
    where
        P: Clone,
    {
        let f = self.clone();
        let n = self.degree;
        Cochain::new(
            n + 1,
            q(n as i64 + 2) * &self.sup_bound,
            self.alternating,
            move |x: &[P]| {
                let mut acc = Q::zero();
                for i in 0..x.len() {
                    let face: Vec<P> = x
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, p)| p.clone())
                        .collect();
                    let v = f.evaluate(&face)?;
                    if i % 2 == 0 {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
                Ok(acc)
            },
        )
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    if n == 0 {
        return alloc::vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..n {
            let mut r = p.clone();
            r.insert(pos, n - 1);
            // Inserting n−1 at `pos` adds n−1−pos inversions.
            let sign = if (n - 1 - pos) % 2 == 0 { s } else { -s };
            out.push((r, sign));
        }
    }
    out
}

/// Signed average over permutations of the arguments.
pub fn alternate<P: Clone + 'static>(f: &Cochain<P>) -> Cochain<P> {
    let g = f.clone();
    let perms = permutations(f.degree + 1);
    let count = q(perms.len() as i64);
    Cochain::new(f.degree, f.sup_bound.clone(), true, move |x: &[P]| {
        let mut acc = Q::zero();
        for (p, s) in &perms {
            let y: Vec<P> = p.iter().map(|&i| x[i].clone()).collect();
            let v = g.evaluate(&y)?;
            if *s > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        Ok(acc / &count)
    })
}

impl GraphOfGroups {
    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::VertexMismatch(format!("no vertex with index {v}")))
        }
    }

    /// The canonical point `g · h_e(Γ_e)` of `S_{t(e)}`.
    pub fn sv_coset(&self, e: usize, g: &VElem) -> SvPoint {
        SvPoint::Coset {
            edge: e,
            rep: self.edges[e].image.split(g).0,
        }
    }

    /// Elements of `Γ_v` within the word bounds and the cosets they represent.
    pub fn sv_points(&self, v: usize, max_syllables: usize, max_exponent: u32) -> Vec<SvPoint> {
        let elems = self.enumerate_vertex_elements(v, max_syllables, max_exponent);
        let mut out: Vec<SvPoint> = elems.iter().cloned().map(SvPoint::Elem).collect();
        for e in 0..self.edges.len() {
            if self.edges[e].target != v {
                continue;
            }
            let mut seen = alloc::collections::BTreeSet::new();
            for g in &elems {
                let c = self.sv_coset(e, g);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Left multiplication of `Γ_v` on `S_v`.
    pub fn sv_act(&self, v: usize, g: &VElem, s: &SvPoint) -> SvPoint {
        let vg = &self.vertices[v];
        match s {
            SvPoint::Elem(h) => SvPoint::Elem(vg.mul(g, h)),
            SvPoint::Coset { edge, rep } => self.sv_coset(*edge, &vg.mul(g, rep)),
        }
    }

    fn check_sv(&self, v: usize, s: &SvPoint) -> Result<()> {
        if let SvPoint::Coset { edge, .. } = s {
            if *edge >= self.edges.len() || self.edges[*edge].target != v {
                return Err(Error::VertexMismatch(format!(
                    "coset point of edge {edge} does not lie in S_{}",
                    self.vertex_name(v)
                )));
            }
        }
        Ok(())
    }

    /// `φ_v : S_v → S_𝒢`. Elements go to `(g, v)`; the coset `r·h_e(Γ_e)`
    /// goes to the edge of `T` at `1Γ_v` leaving along `ē` from `r`.
    pub fn phi(&self, v: usize, s: &SvPoint) -> Result<SPoint> {
        self.check_vertex(v)?;
        self.check_sv(v, s)?;
        Ok(match s {
            SvPoint::Elem(g) => SPoint::Group {
                g: self.vertex_element(v, g),
                v,
            },
            SvPoint::Coset { edge, rep } => {
                let t = self.tree_path(v);
                let a = self.clear_last(t.clone());
                let mut b = t;
                self.mul_elem(&mut b, rep);
                self.push_edge(&mut b, self.edges[*edge].reverse);
                let b = self.clear_last(b);
                SPoint::EdgeCoset(self.node_from_child(self.edge_between(a, b)))
            }
        })
    }

    /// Inverse of `φ_v` on `S_v = p⁻¹(N(1Γ_v))`; `None` outside.
    pub fn phi_inverse(&self, v: usize, x: &SPoint) -> Result<Option<SvPoint>> {
        self.check_vertex(v)?;
        self.check_point(x)?;
        let base = self.base_node(v);
        match x {
            SPoint::Group { g, v: u } => {
                if *u != v {
                    return Ok(None);
                }
                Ok(self.as_vertex_element(v, g).map(SvPoint::Elem))
            }
            SPoint::EdgeCoset(n) => {
                if !self.in_star(&base, n) {
                    return Ok(None);
                }
                let parent = self.parent(n).expect("edge nodes have parents");
                let child = self.child_vertex(n);
                let other = if parent == base { child } else { parent };
                let back = self.inverse_path(&self.tree_path(v));
                let p = self.clear_last(self.concat(&back, other.path()));
                debug_assert_eq!(p.depth(), 1);
                let (f, _) = &p.steps[0];
                let e = self.edges[*f].reverse;
                Ok(Some(self.sv_coset(e, &p.head)))
            }
        }
    }

    /// The summand of `ψⁿ(⊕f_v)(x)` for the tree vertex `w`.
    pub fn psi_term(&self, family: &[Cochain<SvPoint>], w: &TNode, x: &[SPoint]) -> Result<Q> {
        let n = self.check_family(family)?;
        if x.len() != n + 1 {
            return Err(Error::DegreeMismatch {
                expected: n + 1,
                got: x.len(),
            });
        }
        let v = self.node_vertex(w);
        let s_inv = self.inverse(&self.node_rep(w))?;
        let mut pts = Vec::with_capacity(x.len());
        for xi in x {
            let r = self.retract_point(w, xi)?;
            let moved = self.act(&s_inv, &r)?;
            pts.push(
                self.phi_inverse(v, &moved)?
                    .expect("retraction lands in S_w"),
            );
        }
        family[v].evaluate(&pts)
    }

    /// `ψⁿ(⊕f_v)(x)`: the term at the barycenter of the projections, or 0.
    pub fn psi_eval(&self, family: &[Cochain<SvPoint>], x: &[SPoint]) -> Result<Q> {
        let n = self.check_family(family)?;
        if x.len() != n + 1 {
            return Err(Error::DegreeMismatch {
                expected: n + 1,
                got: x.len(),
            });
        }
        let ys = x
            .iter()
            .map(|xi| self.project(xi))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = Q::zero();
        for w in self.barycenters(&ys) {
            acc += self.psi_term(family, &w, x)?;
        }
        Ok(acc)
    }

    fn check_family(&self, family: &[Cochain<SvPoint>]) -> Result<usize> {
        if family.len() != self.vertices.len() {
            return Err(Error::VertexMismatch(format!(
                "expected one cochain per vertex ({}), got {}",
                self.vertices.len(),
                family.len()
            )));
        }
        let n = family[0].degree();
        if n < 2 {
            return Err(Error::DegreeTooLow(n));
        }
        for f in family {
            if f.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    got: f.degree(),
                });
            }
        }
        Ok(n)
    }

    /// Applies `Γ_v`-translations to bring a tuple into a canonical form of
    /// its orbit.
    fn orbit_canonical(&self, v: usize, x: &[SvPoint]) -> Result<Vec<SvPoint>> {
        let vg = &self.vertices[v];
        let apply = |g: &VElem| x.iter().map(|s| self.sv_act(v, g, s)).collect::<Vec<_>>();
        for s in x {
            match s {
                SvPoint::Elem(g) => return Ok(apply(&vg.inv(g))),
                SvPoint::Coset { edge, rep } if self.edges[*edge].group.is_trivial() => {
                    return Ok(apply(&vg.inv(rep)));
                }
                _ => {}
            }
        }
        match vg.rank() {
            0 => Ok(x.to_vec()),
            1 => {
                let gen = vg.generator_power(0, &BigInt::one());
                let mut period = 1usize;
                let mut power = gen.clone();
                while apply(&power) != x {
                    power = vg.mul(&power, &gen);
                    period += 1;
                    if period > PERIOD_LIMIT {
                        return Err(Error::UnsupportedOrbit(format!(
                            "translation period above {PERIOD_LIMIT}"
                        )));
                    }
                }
                let mut best = x.to_vec();
                let mut t = vg.identity();
                for _ in 1..period {
                    t = vg.mul(&t, &gen);
                    let y = apply(&t);
                    if y < best {
                        best = y;
                    }
                }
                Ok(best)
            }
            r => Err(Error::UnsupportedOrbit(format!(
                "coset-only tuple in a vertex group of rank {r}"
            ))),
        }
    }

    /// Canonical key of the orbit of `x` under `Γ_v` and permutations, with
    /// the sign of the permutation reaching it. `None` when every alternating
    /// invariant cochain must vanish on `x`.
    pub fn alternating_key(&self, v: usize, x: &[SvPoint]) -> Result<Option<(Vec<SvPoint>, i8)>> {
        self.check_vertex(v)?;
        for s in x {
            self.check_sv(v, s)?;
        }
        let drop_sign = self.faults.alternation_drops_sign;
        if !drop_sign && (0..x.len()).any(|i| x[i + 1..].contains(&x[i])) {
            return Ok(None);
        }
        let mut best: Option<(Vec<SvPoint>, i8)> = None;
        let mut clash = false;
        for (p, s) in permutations(x.len()) {
            let y: Vec<SvPoint> = p.iter().map(|&i| x[i].clone()).collect();
            let c = self.orbit_canonical(v, &y)?;
            match &best {
                Some((b, bs)) if c == *b => clash |= *bs != s,
                Some((b, _)) if c > *b => {}
                _ => {
                    best = Some((c, s));
                    clash = false;
                }
            }
        }
        let (key, sign) = best.expect("at least one permutation");
        if drop_sign {
            return Ok(Some((key, 1)));
        }
        Ok((!clash).then_some((key, sign)))
    }
}

const PERIOD_LIMIT: usize = 4096;

/// Values of an alternating `Γ_v`-invariant family on orbit keys.
#[derive(Debug, Clone)]
pub enum FamilyValues {
    /// Pseudo-random values in `[−1, 1]` with denominator 100, derived from
    /// the key and the seed.
    Seeded(u64),
    /// Explicit values on canonical keys; 0 elsewhere.
    Table(BTreeMap<Vec<SvPoint>, Q>),
}

/// Builds the alternating `Γ_v`-invariant cochain of the given degree whose
/// value on a canonical key is read from `values`.
pub fn invariant_cochain(
    graph: &Arc<GraphOfGroups>,
    v: usize,
    degree: usize,
    values: FamilyValues,
) -> Cochain<SvPoint> {
    let g = graph.clone();
    let bound = match &values {
        FamilyValues::Seeded(_) => Q::one(),
        FamilyValues::Table(t) => t.values().map(|x| x.abs()).max().unwrap_or_else(Q::zero),
    };
    let alternating = !graph.faults.alternation_drops_sign;
    Cochain::new(degree, bound, alternating, move |x| {
        let Some((key, sign)) = g.alternating_key(v, x)? else {
            return Ok(Q::zero());
        };
        let base = match &values {
            FamilyValues::Seeded(seed) => seeded_value(*seed, &key),
            FamilyValues::Table(t) => t.get(&key).cloned().unwrap_or_else(Q::zero),
        };
        Ok(if sign < 0 { -base } else { base })
    })
}

fn seeded_value(seed: u64, key: &[SvPoint]) -> Q {
    let text: String = format!("{key:?}");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    frac((h % 201) as i64 - 100, 100)
}

/// Tabulates seeded values on every orbit key met by tuples of `points`.
pub fn tabulate(
    graph: &GraphOfGroups,
    v: usize,
    degree: usize,
    points: &[SvPoint],
    seed: u64,
) -> Result<BTreeMap<Vec<SvPoint>, Q>> {
    let mut table = BTreeMap::new();
    for x in tuples(points, degree + 1) {
        if let Some((key, _)) = graph.alternating_key(v, &x)? {
            if !table.contains_key(&key) {
                let value = seeded_value(seed, &key);
                table.insert(key, value);
            }
        }
    }
    Ok(table)
}

/// All tuples of length `len` over `points`.
pub fn tuples<T: Clone>(points: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * points.len());
        for t in &out {
            for p in points {
                let mut u = t.clone();
                u.push(p.clone());
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// `ψⁿ(⊕f_v)` as a cochain on `S_𝒢`.
pub fn psi_cochain(
    graph: &Arc<GraphOfGroups>,
    family: Vec<Cochain<SvPoint>>,
) -> Result<Cochain<SPoint>> {
    let n = graph.check_family(&family)?;
    let bound = family
        .iter()
        .map(|f| f.sup_bound().clone())
        .max()
        .expect("nonempty");
    let g = graph.clone();
    let alternating = family.iter().all(|f| f.is_alternating());
    Ok(Cochain::new(n, bound, alternating, move |x| {
        g.psi_eval(&family, x)
    }))
}

/// `φ_vⁿ f`: the pullback of a cochain on `S_𝒢` to `S_v`.
pub fn phi_pullback(
    graph: &Arc<GraphOfGroups>,
    v: usize,
    f: &Cochain<SPoint>,
) -> Result<Cochain<SvPoint>> {
    graph.check_vertex(v)?;
    let g = graph.clone();
    let f = f.clone();
    Ok(Cochain::new(
        f.degree(),
        f.sup_bound().clone(),
        f.is_alternating(),
        move |x| {
            let y = x.iter().map(|s| g.phi(v, s)).collect::<Result<Vec<_>>>()?;
            f.evaluate(&y)
        },
    ))
}

/// `μf`: pulls a cochain on `Γ` back along the group coordinate
/// `S_𝒢 → Γ`, which exists when all edge groups are trivial.
pub fn mu_free_pullback(
    graph: &Arc<GraphOfGroups>,
    f: &Cochain<NormalForm>,
) -> Result<Cochain<SPoint>> {
    if !graph.is_free_product() {
        return Err(Error::NotFreeProduct(
            "some edge group is nontrivial".into(),
        ));
    }
    let g = graph.clone();
    let f = f.clone();
    Ok(Cochain::new(
        f.degree(),
        f.sup_bound().clone(),
        f.is_alternating(),
        move |x| {
            let y = x
                .iter()
                .map(|s| g.group_coordinate(s))
                .collect::<Result<Vec<_>>>()?;
            f.evaluate(&y)
        },
    ))
}

impl GraphOfGroups {
    /// The group element of an `S_𝒢` point when edge groups are trivial.
    pub fn group_coordinate(&self, x: &SPoint) -> Result<NormalForm> {
        self.check_point(x)?;
        Ok(match x {
            SPoint::Group { g, .. } => g.clone(),
            SPoint::EdgeCoset(n) => self.node_rep(n),
        })
    }
}

/// Counterexample of a chain-map or norm check.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub tuple: Vec<SPoint>,
    pub lhs: Q,
    pub rhs: Q,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainMapReport {
    pub checked: usize,
    pub failures: Vec<Discrepancy>,
    pub bound_violations: Vec<Discrepancy>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bound_violations.is_empty()
    }

    pub fn merge(&mut self, other: ChainMapReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.bound_violations.extend(other.bound_violations);
    }
}

/// Checks `δ(ψf)(x) = ψ(δf)(x)` and `|ψf| ≤ max_v sup|f_v|` on each
/// `(n+2)`-tuple `x`.
pub fn verify_chain_map(
    graph: &GraphOfGroups,
    family: &[Cochain<SvPoint>],
    tuples: &[Vec<SPoint>],
) -> Result<ChainMapReport> {
    let n = graph.check_family(family)?;
    let delta: Vec<Cochain<SvPoint>> = family.iter().map(|f| f.coboundary()).collect();
    let bound = family
        .iter()
        .map(|f| f.sup_bound().clone())
        .max()
        .expect("nonempty");
    let mut report = ChainMapReport::default();
    for x in tuples {
        if x.len() != n + 2 {
            return Err(Error::DegreeMismatch {
                expected: n + 2,
                got: x.len(),
            });
        }
        let mut lhs = Q::zero();
        for i in 0..x.len() {
            let face: Vec<SPoint> = x
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let v = graph.psi_eval(family, &face)?;
            if v.abs() > bound {
                report.bound_violations.push(Discrepancy {
                    tuple: face,
                    lhs: v.clone(),
                    rhs: bound.clone(),
                });
            }
            if i % 2 == 0 {
                lhs += v;
            } else {
                lhs -= v;
            }
        }
        let rhs = graph.psi_eval(&delta, x)?;
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(Discrepancy {
                tuple: x.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// Tuples on which an alternation check failed.
pub fn alternation_failures<P: Clone + 'static>(
    f: &Cochain<P>,
    tuples: &[Vec<P>],
) -> Result<Vec<Vec<P>>>
where
    P: PartialEq,
{
    let mut bad = Vec::new();
    for x in tuples {
        let v = f.evaluate(x)?;
        let repeated = (0..x.len()).any(|i| x[i + 1..].contains(&x[i]));
        let mut ok = !repeated || v.is_zero();
        for i in 0..x.len().saturating_sub(1) {
            let mut y = x.clone();
            y.swap(i, i + 1);
            ok &= f.evaluate(&y)? == -v.clone();
        }
        if !ok {
            bad.push(x.clone());
        }
    }
    Ok(bad)
}
