//! Bounded 2-cocycles on free products built from odd bounded functions on
//! the factors, and the comparison with the transplant map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bass_serre::{SPoint, TNode};
use crate::presentations::{GraphOfGroups, GroupKind, NormalForm, VElem};
use crate::rational::q;
use crate::transplant::{Cochain, SvPoint};
use crate::{Error, Result, Q};

/// Odd bounded functions of the coordinate `k` of a vertex group element
/// (the exponent sum of the first generator).
#[derive(Debug, Clone, PartialEq)]
pub enum OddFunction {
    Zero,
    /// `sgn(k)`.
    Sign,
    /// `min(max(k, −N), N) / N`.
    Clamped(BigInt),
    /// `sgn(k)` when `k` is odd and `|k| ≤ N`, else 0.
    ParityWindow(BigInt),
    /// Explicit values; 0 off the table.
    Table(BTreeMap<BigInt, Q>),
}

impl OddFunction {
    /// A tabulated function; rejects tables that are not odd.
    pub fn table(values: BTreeMap<BigInt, Q>) -> Result<Self> {
        for (k, v) in &values {
            let back = values.get(&-k).cloned().unwrap_or_else(Q::zero);
            if back != -v.clone() {
                return Err(Error::NotOdd(format!(
                    "f({}) = {v} but f({}) = {back}",
                    k, -k
                )));
            }
        }
        Ok(OddFunction::Table(values))
    }

    pub fn eval(&self, k: &BigInt) -> Q {
        match self {
            OddFunction::Zero => Q::zero(),
            OddFunction::Sign => Q::from_integer(k.signum()),
            OddFunction::Clamped(n) => {
                let c = if k > n {
                    n.clone()
                } else if *k < -n {
                    -n
                } else {
                    k.clone()
                };
                Q::new(c, n.clone())
            }
            OddFunction::ParityWindow(n) => {
                if k.abs() <= *n && (k % 2u32) != BigInt::zero() {
                    Q::from_integer(k.signum())
                } else {
                    Q::zero()
                }
            }
            OddFunction::Table(t) => t.get(k).cloned().unwrap_or_else(Q::zero),
        }
    }

    pub fn sup_bound(&self) -> Q {
        match self {
            OddFunction::Zero => Q::zero(),
            OddFunction::Sign | OddFunction::Clamped(_) | OddFunction::ParityWindow(_) => q(1),
            OddFunction::Table(t) => t.values().map(|v| v.abs()).max().unwrap_or_else(Q::zero),
        }
    }
}

/// An inhomogeneous cochain `Γⁿ → ℚ`.
pub struct InhomCochain {
    degree: usize,
    eval: Arc<dyn Fn(&[NormalForm]) -> Result<Q> + Send + Sync>,
}

impl Clone for InhomCochain {
    fn clone(&self) -> Self {
        InhomCochain {
            degree: self.degree,
            eval: self.eval.clone(),
        }
    }
}

impl InhomCochain {
    pub fn new(
        degree: usize,
        eval: impl Fn(&[NormalForm]) -> Result<Q> + Send + Sync + 'static,
    ) -> Self {
        InhomCochain {
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn evaluate(&self, x: &[NormalForm]) -> Result<Q> {
        if x.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: x.len(),
            });
        }
        (self.eval)(x)
    }
}

/// `d̄f(g₁,…,g_{n+1}) = f(g₂,…) + Σ (−1)ⁱ f(…,gᵢg_{i+1},…) + (−1)^{n+1} f(g₁,…,g_n)`.
pub fn inhom_coboundary(graph: &Arc<GraphOfGroups>, f: &InhomCochain) -> InhomCochain {
    let g = graph.clone();
    let f = f.clone();
    let n = f.degree;
    InhomCochain::new(n + 1, move |x| {
        let mut acc = f.evaluate(&x[1..])?;
        for i in 0..n {
            let mut y: Vec<NormalForm> = x[..i].to_vec();
            y.push(g.multiply(&x[i], &x[i + 1])?);
            y.extend_from_slice(&x[i + 2..]);
            let v = f.evaluate(&y)?;
            if i % 2 == 0 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        let last = f.evaluate(&x[..n])?;
        if n % 2 == 0 {
            acc -= last;
        } else {
            acc += last;
        }
        Ok(acc)
    })
}

/// `hⁿ(f)(x₀,…,x_n) = f(x₀⁻¹x₁,…,x_{n−1}⁻¹x_n)`.
pub fn homogenize(
    graph: &Arc<GraphOfGroups>,
    f: &InhomCochain,
    sup_bound: Q,
) -> Cochain<NormalForm> {
    let g = graph.clone();
    let f = f.clone();
    Cochain::new(f.degree, sup_bound, false, move |x| {
        let y = x
            .windows(2)
            .map(|w| g.multiply(&g.inverse(&w[0])?, &w[1]))
            .collect::<Result<Vec<_>>>()?;
        f.evaluate(&y)
    })
}

/// One odd function per vertex group of a free product.
#[derive(Debug, Clone)]
pub struct RolliFamily {
    graph: Arc<GraphOfGroups>,
    functions: Vec<OddFunction>,
}

/// Reduced expression of an element as `(vertex, nontrivial element)` pairs.
pub type Syllables = Vec<(usize, VElem)>;

impl RolliFamily {
    pub fn new(graph: Arc<GraphOfGroups>, functions: Vec<OddFunction>) -> Result<Self> {
        if !graph.is_free_product() {
            return Err(Error::NotFreeProduct(
                "some edge group is nontrivial".into(),
            ));
        }
        if functions.len() != graph.vertex_count() {
            return Err(Error::VertexMismatch(format!(
                "expected {} functions, got {}",
                graph.vertex_count(),
                functions.len()
            )));
        }
        for v in 0..graph.vertex_count() {
            let vg = graph.vertex_group(v);
            let ok = match &vg.kind {
                GroupKind::Free { rank } => *rank >= 1,
                GroupKind::Abelian { invariant_factors } => {
                    invariant_factors.first().is_some_and(Zero::is_zero)
                }
            };
            if !ok && functions[v] != OddFunction::Zero {
                return Err(Error::NotOdd(format!(
                    "vertex group {} has no integer coordinate to evaluate on",
                    vg.name
                )));
            }
        }
        for f in &functions {
            if let OddFunction::Clamped(n) | OddFunction::ParityWindow(n) = f {
                if !n.is_positive() {
                    return Err(Error::NotOdd(format!("window {n} must be positive")));
                }
            }
        }
        let family = RolliFamily { graph, functions };
        for v in 0..family.graph.vertex_count() {
            for g in family.graph.enumerate_vertex_elements(v, 2, 4) {
                let inv = family.graph.vertex_group(v).inv(&g);
                let (a, b) = (family.eval(v, &g), family.eval(v, &inv));
                if a != -b.clone() {
                    return Err(Error::NotOdd(format!(
                        "f({g:?}) = {a}, f of its inverse = {b}"
                    )));
                }
                if a.abs() > family.functions[v].sup_bound() {
                    return Err(Error::NotOdd(format!(
                        "f({g:?}) = {a} exceeds the declared bound"
                    )));
                }
            }
        }
        Ok(family)
    }

    pub fn graph(&self) -> &Arc<GraphOfGroups> {
        &self.graph
    }

    pub fn functions(&self) -> &[OddFunction] {
        &self.functions
    }

    pub fn sup_bound(&self) -> Q {
        self.functions
            .iter()
            .map(OddFunction::sup_bound)
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// `f_v(g)`.
    pub fn eval(&self, v: usize, g: &VElem) -> Q {
        let k = match g {
            VElem::Free(w) => w.exponent_sum(0),
            VElem::Abelian(c) => c.first().cloned().unwrap_or_default(),
        };
        self.functions[v].eval(&k)
    }

    /// The reduced expression of `x` as a word in the factors.
    pub fn syllables(&self, x: &NormalForm) -> Syllables {
        let p = x.path();
        let g = &self.graph;
        let mut out = Vec::new();
        if !p.head().is_identity() {
            out.push((p.start(), p.head().clone()));
        }
        for (e, h) in p.steps() {
            if !h.is_identity() {
                out.push((g.target(*e), h.clone()));
            }
        }
        out
    }

    /// `α(⊕f_v)(x) = Σ f_{vᵢ}(xᵢ)` over the reduced expression.
    pub fn alpha(&self, x: &NormalForm) -> Result<Q> {
        self.graph.check(x)?;
        Ok(self
            .syllables(x)
            .iter()
            .map(|(v, h)| self.eval(*v, h))
            .sum())
    }

    /// Splits `x = a γ₁ b`, `y = b⁻¹ γ₂ c` with `b` maximal. Returns the
    /// length of `a` and, when `γ₁, γ₂` exist in a common factor, the vertex
    /// and both elements.
    pub fn junction(&self, x: &Syllables, y: &Syllables) -> (usize, Option<(usize, VElem, VElem)>) {
        let mut j = 0;
        while j < x.len() && j < y.len() {
            let (v, g) = &x[x.len() - 1 - j];
            let (u, h) = &y[j];
            if v != u || self.graph.vertex_group(*v).inv(g) != *h {
                break;
            }
            j += 1;
        }
        let a_len = x.len().saturating_sub(j + 1);
        if j < x.len() && j < y.len() {
            let (v, g1) = &x[x.len() - 1 - j];
            let (u, g2) = &y[j];
            if v == u {
                return (a_len, Some((*v, g1.clone(), g2.clone())));
            }
        }
        (a_len, None)
    }

    /// `R(x, y) = f_v(γ₂) − f_v(γ₁γ₂) + f_v(γ₁)`, zero when the junction
    /// syllables lie in different factors.
    pub fn rolli(&self, x: &NormalForm, y: &NormalForm) -> Result<Q> {
        self.graph.check(x)?;
        self.graph.check(y)?;
        let (_, j) = self.junction(&self.syllables(x), &self.syllables(y));
        Ok(match j {
            Some((v, g1, g2)) => self.three_term(v, &g1, &g2),
            None => Q::zero(),
        })
    }

    fn three_term(&self, v: usize, g1: &VElem, g2: &VElem) -> Q {
        let prod = self.graph.vertex_group(v).mul(g1, g2);
        self.eval(v, g2) - self.eval(v, &prod) + self.eval(v, g1)
    }

    /// `d̄α(x, y) = α(y) − α(xy) + α(x)`.
    pub fn rolli_oracle(&self, x: &NormalForm, y: &NormalForm) -> Result<Q> {
        let xy = self.graph.multiply(x, y)?;
        Ok(self.alpha(y)? - self.alpha(&xy)? + self.alpha(x)?)
    }

    pub fn alpha_cochain(&self) -> InhomCochain {
        let f = self.clone();
        InhomCochain::new(1, move |x| f.alpha(&x[0]))
    }

    pub fn rolli_cochain(&self) -> InhomCochain {
        let f = self.clone();
        InhomCochain::new(2, move |x| f.rolli(&x[0], &x[1]))
    }

    /// `sup |R|` over pairs of elements with at most `max_syllables`
    /// syllables and exponents bounded by `max_exponent`. `R` only sees the
    /// junction syllables, so single vertex elements realize every value.
    pub fn defect(&self, max_syllables: usize, max_exponent: u32) -> Q {
        let mut best = Q::zero();
        if max_syllables == 0 {
            return best;
        }
        for v in 0..self.graph.vertex_count() {
            let elems = self
                .graph
                .enumerate_vertex_elements(v, max_syllables, max_exponent);
            for g1 in &elems {
                for g2 in &elems {
                    let r = self.three_term(v, g1, g2).abs();
                    if r > best {
                        best = r;
                    }
                }
            }
        }
        best
    }

    /// `sup |R|` by evaluating every pair of enumerated elements.
    pub fn defect_exhaustive(&self, max_syllables: usize, max_exponent: u32) -> Result<Q> {
        let elems = self.graph.enumerate_elements(max_syllables, max_exponent);
        let mut best = Q::zero();
        for x in &elems {
            for y in &elems {
                let r = self.rolli(x, y)?.abs();
                if r > best {
                    best = r;
                }
            }
        }
        Ok(best)
    }

    /// `μ_v h² d̄ f_v` on `S_v`: with group coordinates `γᵢ`,
    /// `F_v = f_v(γ₁⁻¹γ₂) − f_v(γ₀⁻¹γ₂) + f_v(γ₀⁻¹γ₁)`.
    pub fn vertex_cocycles(&self) -> Vec<Cochain<SvPoint>> {
        (0..self.graph.vertex_count())
            .map(|v| {
                let f = self.clone();
                Cochain::new(
                    2,
                    q(3) * self.functions[v].sup_bound(),
                    true,
                    move |x: &[SvPoint]| {
                        let vg = f.graph.vertex_group(v);
                        let c: Vec<&VElem> = x
                            .iter()
                            .map(|s| match s {
                                SvPoint::Elem(g) => g,
                                SvPoint::Coset { rep, .. } => rep,
                            })
                            .collect();
                        let d = |i: usize, j: usize| f.eval(v, &vg.mul(&vg.inv(c[i]), c[j]));
                        Ok(d(1, 2) - d(0, 2) + d(0, 1))
                    },
                )
            })
            .collect()
    }

    /// Predicted barycenter `x₀ a Γ_v` of a triple, when `x₀⁻¹x₁ = aγ₁b` and
    /// `x₁⁻¹x₂ = b⁻¹γ₂c` with `γ₁, γ₂ ∈ Γ_v`.
    pub fn predicted_barycenter(&self, x: &[NormalForm; 3]) -> Result<Option<TNode>> {
        let g = &self.graph;
        let u = g.multiply(&g.inverse(&x[0])?, &x[1])?;
        let w = g.multiply(&g.inverse(&x[1])?, &x[2])?;
        let su = self.syllables(&u);
        let (a_len, j) = self.junction(&su, &self.syllables(&w));
        let Some((v, _, _)) = j else {
            return Ok(None);
        };
        let mut a = x[0].clone();
        for (t, h) in &su[..a_len] {
            a = g.multiply(&a, &g.vertex_element(*t, h))?;
        }
        Ok(Some(g.tree_vertex(&a, v)?))
    }

    /// Checks both claims on one labelled triple `((x₀,v₀),(x₁,v₁),(x₂,v₂))`.
    pub fn diagram_at(&self, x: &[NormalForm; 3], labels: [usize; 3]) -> Result<DiagramOutcome> {
        let g = &self.graph;
        let pts: Vec<SPoint> = (0..3)
            .map(|i| SPoint::Group {
                g: x[i].clone(),
                v: labels[i],
            })
            .collect();
        let ys = pts
            .iter()
            .map(|p| g.project(p))
            .collect::<Result<Vec<_>>>()?;
        let barycenter = g.barycenter(&ys);
        let predicted = self.predicted_barycenter(x)?;
        let barycenter_ok = predicted.as_ref().map(|p| Some(p) == barycenter.as_ref());
        let via_psi = g.psi_eval(&self.vertex_cocycles(), &pts)?;
        let u = g.multiply(&g.inverse(&x[0])?, &x[1])?;
        let w = g.multiply(&g.inverse(&x[1])?, &x[2])?;
        let via_r = self.rolli(&u, &w)?;
        Ok(DiagramOutcome {
            barycenter_ok,
            via_psi,
            via_r,
        })
    }

    /// Runs [`RolliFamily::diagram_at`] on every triple and every labelling.
    pub fn diagram_check(&self, triples: &[[NormalForm; 3]]) -> Result<DiagramReport> {
        let n = self.graph.vertex_count();
        let mut report = DiagramReport::default();
        for x in triples {
            for l in 0..n * n * n {
                let labels = [l % n, (l / n) % n, l / (n * n)];
                let out = self.diagram_at(x, labels)?;
                report.record(x, labels, out);
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramOutcome {
    /// `None` when the reduced expressions do not single out a vertex group.
    pub barycenter_ok: Option<bool>,
    pub via_psi: Q,
    pub via_r: Q,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagramReport {
    pub checked: usize,
    pub barycenter_checked: usize,
    pub barycenter_failures: Vec<String>,
    pub value_failures: Vec<String>,
}

impl DiagramReport {
    pub fn record(&mut self, x: &[NormalForm; 3], labels: [usize; 3], out: DiagramOutcome) {
        self.checked += 1;
        if let Some(ok) = out.barycenter_ok {
            self.barycenter_checked += 1;
            if !ok {
                self.barycenter_failures
                    .push(format!("{x:?} labels {labels:?}"));
            }
        }
        if out.via_psi != out.via_r {
            self.value_failures.push(format!(
                "{x:?} labels {labels:?}: psi {} vs R {}",
                out.via_psi, out.via_r
            ));
        }
    }

    pub fn merge(&mut self, other: DiagramReport) {
        self.checked += other.checked;
        self.barycenter_checked += other.barycenter_checked;
        self.barycenter_failures.extend(other.barycenter_failures);
        self.value_failures.extend(other.value_failures);
    }

    pub fn passed(&self) -> bool {
        self.barycenter_failures.is_empty() && self.value_failures.is_empty()
    }
}
