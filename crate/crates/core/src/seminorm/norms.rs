//! θ-seminorms on relative homology, the homology mapping cone, its dual
//! and the ε-representative procedure.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::complex::{weighted_l1, HomClass, PairComplex};
use super::lp::{self, Certificate, LpProblem, Relation, VarKind};
use super::matrix::Matrix;
use crate::fault::Faults;
use crate::{Error, Result, Q};

/// `θ ∈ [0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theta {
    Finite(Q),
    Infinite,
}

impl Theta {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Theta::Finite(t) => Some(t),
            Theta::Infinite => None,
        }
    }
}

/// `minimize Σ_i weight_i |base_i + (gens·β)_i|` over free `β`.
struct L1Min<'a> {
    base: &'a [Q],
    gens: &'a Matrix,
}

struct L1Solution {
    problem: LpProblem,
    certificate: Certificate,
    beta: Vec<Q>,
}

impl L1Min<'_> {
    fn build(&self, weights: &[Q]) -> LpProblem {
        let k = self.gens.cols();
        let mut p = LpProblem::new(vec![VarKind::Free; k]);
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let plus = p.add_var(VarKind::NonNeg, w.clone());
            let minus = p.add_var(VarKind::NonNeg, w.clone());
            let mut coeffs = vec![(plus, Q::one()), (minus, -Q::one())];
            coeffs.extend((0..k).map(|j| (j, -self.gens.get(i, j).clone())));
            p.add_constraint(coeffs, Relation::Eq, self.base[i].clone());
        }
        p
    }

    fn finish(&self, problem: LpProblem, certificate: Certificate) -> Result<L1Solution> {
        let x = match &certificate {
            Certificate::Optimal { x, .. } => x,
            _ => {
                return Err(Error::MalformedProblem(
                    "ℓ¹ minimization did not reach an optimum".into(),
                ))
            }
        };
        let beta = x[..self.gens.cols()].to_vec();
        Ok(L1Solution {
            problem,
            certificate,
            beta,
        })
    }

    fn solve(&self, weights: &[Q]) -> Result<L1Solution> {
        let p = self.build(weights);
        let c = lp::solve(&p)?;
        self.finish(p, c)
    }

    /// Minimizes the `secondary` terms among minimizers of the `primary` ones.
    fn solve_lex(&self, primary: &[Q], secondary: &[Q]) -> Result<(L1Solution, L1Solution)> {
        let first = self.solve(primary)?;
        let m = first.certificate.value().cloned().unwrap_or_default();
        let mut p = self.build(secondary);
        let k = self.gens.cols();
        // Cap Σ primary_i |·| ≤ m with fresh absolute-value pairs.
        let mut cap = Vec::new();
        for (i, w) in primary.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let plus = p.add_var(VarKind::NonNeg, Q::zero());
            let minus = p.add_var(VarKind::NonNeg, Q::zero());
            let mut coeffs = vec![(plus, Q::one()), (minus, -Q::one())];
            coeffs.extend((0..k).map(|j| (j, -self.gens.get(i, j).clone())));
            p.add_constraint(coeffs, Relation::Eq, self.base[i].clone());
            cap.push((plus, w.clone()));
            cap.push((minus, w.clone()));
        }
        p.add_constraint(cap, Relation::Le, m.clone());
        let c = lp::solve(&p)?;
        Ok((first, self.finish(p, c)?))
    }
}

/// An exact seminorm value with its minimizing representative.
#[derive(Debug, Clone)]
pub struct SeminormResult {
    pub value: Q,
    /// A representative `c` of the class with `‖c‖₁(θ) = value`.
    pub representative: Vec<Q>,
    pub problem: LpProblem,
    pub certificate: Certificate,
}

impl SeminormResult {
    pub fn verified(&self) -> bool {
        self.certificate.verify(&self.problem) && self.certificate.value() == Some(&self.value)
    }
}

/// `θ = ∞`: the least boundary norm over representatives and, when it is
/// zero, the least chain norm among representatives that are cycles.
#[derive(Debug, Clone)]
pub struct LexicographicResult {
    pub boundary_min: Q,
    pub value: Option<Q>,
    pub representative: Vec<Q>,
    pub certificates: [(LpProblem, Certificate); 2],
}

impl PairComplex {
    /// Representatives `z + ∂b + y` together with their boundaries, as an
    /// affine image of `(b, y)`.
    fn representative_map(&self, class: &HomClass) -> (Vec<Q>, Matrix, usize) {
        let x = self.ambient();
        let n = class.degree;
        let dn = x.dim(n);
        let dm = if n == 0 { 0 } else { x.dim(n - 1) };
        let nb = x.dim(n + 1);
        let ny = self.sub_dim(n);
        let mut gens = Matrix::zeros(dn + dm, nb + ny);
        let bd = x.boundary(n + 1);
        for (i, j, a) in bd.entries() {
            gens.set(i, j, a.clone());
        }
        for (k, &i) in self.sub_basis(n).iter().enumerate() {
            gens.set(i, nb + k, Q::one());
            if n > 0 {
                for r in 0..dm {
                    let a = x.boundary(n).get(r, i);
                    if !a.is_zero() {
                        gens.set(dn + r, nb + k, a.clone());
                    }
                }
            }
        }
        let mut base = class.chain.clone();
        base.extend(x.apply_boundary(n, &class.chain));
        (base, gens, dn)
    }

    fn representative_from(&self, class: &HomClass, beta: &[Q]) -> Vec<Q> {
        let x = self.ambient();
        let n = class.degree;
        let nb = x.dim(n + 1);
        let mut c = class.chain.clone();
        for (ci, bi) in c.iter_mut().zip(x.apply_boundary(n + 1, &beta[..nb])) {
            *ci += bi;
        }
        for (k, &i) in self.sub_basis(n).iter().enumerate() {
            c[i] += &beta[nb + k];
        }
        c
    }

    /// The θ-seminorm of the relative class `[z] ∈ H_n(X, Y)`:
    /// `min ‖z + ∂b + y‖₁(θ)` over `b ∈ C_{n+1}(X)`, `y ∈ C_n(Y)`.
    pub fn homology_seminorm(&self, class: &HomClass, theta: &Q) -> Result<SeminormResult> {
        if theta.is_negative() {
            return Err(Error::NegativeTheta);
        }
        self.check_relative_cycle(class)?;
        let (base, gens, dn) = self.representative_map(class);
        let n = class.degree;
        let mut weights = self.ambient().weights(n).to_vec();
        if n > 0 {
            weights.extend(self.ambient().weights(n - 1).iter().map(|w| w * theta));
        }
        debug_assert_eq!(weights.len(), base.len());
        let sol = L1Min {
            base: &base,
            gens: &gens,
        }
        .solve(&weights)?;
        let representative = self.representative_from(class, &sol.beta);
        debug_assert_eq!(representative.len(), dn);
        let value = sol.certificate.value().cloned().unwrap_or_default();
        Ok(SeminormResult {
            value,
            representative,
            problem: sol.problem,
            certificate: sol.certificate,
        })
    }

    /// `θ = ∞`, solved lexicographically.
    pub fn homology_seminorm_infinite(&self, class: &HomClass) -> Result<LexicographicResult> {
        self.check_relative_cycle(class)?;
        let (base, gens, dn) = self.representative_map(class);
        let n = class.degree;
        let x = self.ambient();
        let dm = base.len() - dn;
        let mut primary = vec![Q::zero(); dn];
        primary.extend(x.weights(n.wrapping_sub(1)).iter().take(dm).cloned());
        let mut secondary = x.weights(n).to_vec();
        secondary.extend(vec![Q::zero(); dm]);
        let (first, sol) = L1Min {
            base: &base,
            gens: &gens,
        }
        .solve_lex(&primary, &secondary)?;
        let boundary_min = first.certificate.value().cloned().unwrap_or_default();
        let representative = self.representative_from(class, &sol.beta);
        let value = boundary_min.is_zero().then(|| x.norm(n, &representative));
        Ok(LexicographicResult {
            boundary_min,
            value,
            representative,
            certificates: [
                (first.problem, first.certificate),
                (sol.problem, sol.certificate),
            ],
        })
    }

    /// `θ` in `[0, ∞]`; `None` for an infinite value.
    pub fn homology_seminorm_at(&self, class: &HomClass, theta: &Theta) -> Result<Option<Q>> {
        match theta {
            Theta::Finite(t) => Ok(Some(self.homology_seminorm(class, t)?.value)),
            Theta::Infinite => Ok(self.homology_seminorm_infinite(class)?.value),
        }
    }

    /// Whether two relative cycles define the same class (feasibility LP).
    pub fn homologous(&self, a: &HomClass, b: &HomClass) -> Result<bool> {
        self.check_relative_cycle(a)?;
        self.check_relative_cycle(b)?;
        if a.degree != b.degree {
            return Ok(false);
        }
        let diff: Vec<Q> = a.chain.iter().zip(&b.chain).map(|(x, y)| x - y).collect();
        let (base, gens, dn) = self.representative_map(&HomClass::new(a.degree, diff));
        feasible_zero(&base[..dn], &gens, dn)
    }
}

/// Whether `base + gens·β = 0` (first `rows` rows) has a solution.
fn feasible_zero(base: &[Q], gens: &Matrix, rows: usize) -> Result<bool> {
    let k = gens.cols();
    let mut p = LpProblem::new(vec![VarKind::Free; k]);
    for (i, b) in base.iter().enumerate().take(rows) {
        let coeffs = (0..k).map(|j| (j, gens.get(i, j).clone())).collect();
        p.add_constraint(coeffs, Relation::Eq, -b.clone());
    }
    let c = lp::solve(&p)?;
    debug_assert!(c.verify(&p));
    Ok(matches!(c, Certificate::Optimal { .. }))
}

/// A chain `(u, v) ∈ C_n(X) ⊕ C_{n-1}(Y)` of the mapping cone, `v` in the
/// basis of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeChain {
    pub u: Vec<Q>,
    pub v: Vec<Q>,
}

/// The homology mapping cone `C_n(Y → X) = C_n(X) ⊕ C_{n-1}(Y)` with
/// differential `(u, v) ↦ (∂u + i(v), −∂v)`.
#[derive(Debug, Clone)]
pub struct MappingCone {
    pair: PairComplex,
    faults: Faults,
}

impl MappingCone {
    pub fn new(pair: PairComplex) -> Result<Self> {
        Self::with_faults(pair, Faults::NONE)
    }

    #[doc(hidden)]
    pub fn with_faults(pair: PairComplex, faults: Faults) -> Result<Self> {
        let cone = MappingCone { pair, faults };
        for n in 2..=cone.pair.ambient().top() + 2 {
            if !cone
                .differential(n - 1)
                .mul(&cone.differential(n))
                .is_zero()
            {
                return Err(Error::InvalidComplex(format!(
                    "cone differential squares to nonzero in degree {n}"
                )));
            }
        }
        Ok(cone)
    }

    pub fn pair(&self) -> &PairComplex {
        &self.pair
    }

    pub fn dim(&self, n: usize) -> usize {
        self.pair.ambient().dim(n) + if n == 0 { 0 } else { self.pair.sub_dim(n - 1) }
    }

    /// `d̄_n : C_n(Y → X) → C_{n-1}(Y → X)`.
    pub fn differential(&self, n: usize) -> Matrix {
        let x = self.pair.ambient();
        if n == 0 {
            return Matrix::zeros(0, self.dim(0));
        }
        let mut m = Matrix::zeros(self.dim(n - 1), self.dim(n));
        let (xn, xm) = (x.dim(n), x.dim(n - 1));
        for (i, j, a) in x.boundary(n).entries() {
            m.set(i, j, a.clone());
        }
        for (k, &i) in self.pair.sub_basis(n - 1).iter().enumerate() {
            m.set(i, xn + k, Q::one());
        }
        if n >= 2 {
            let sign = if self.faults.cone_sign_flip {
                Q::one()
            } else {
                -Q::one()
            };
            for (i, j, a) in self.pair.sub_boundary(n - 1).entries() {
                m.set(xm + i, xn + j, &sign * a);
            }
        }
        m
    }

    fn flatten(&self, n: usize, c: &ConeChain) -> Result<Vec<Q>> {
        let x = self.pair.ambient();
        let vd = if n == 0 { 0 } else { self.pair.sub_dim(n - 1) };
        if c.u.len() != x.dim(n) || c.v.len() != vd {
            return Err(Error::InvalidComplex(format!(
                "cone chain has the wrong shape for degree {n}"
            )));
        }
        let mut out = c.u.clone();
        out.extend(c.v.iter().cloned());
        Ok(out)
    }

    pub fn apply(&self, n: usize, c: &ConeChain) -> Result<ConeChain> {
        let flat = self.flatten(n, c)?;
        let d = self.differential(n).apply(&flat);
        let xm = self.pair.ambient().dim(n.wrapping_sub(1));
        let split = xm.min(d.len());
        Ok(ConeChain {
            u: d[..split].to_vec(),
            v: d[split..].to_vec(),
        })
    }

    pub fn is_cycle(&self, n: usize, c: &ConeChain) -> Result<bool> {
        let d = self.apply(n, c)?;
        Ok(d.u.iter().chain(&d.v).all(Zero::is_zero))
    }

    fn weights(&self, n: usize, theta: &Q) -> Vec<Q> {
        let mut w = self.pair.ambient().weights(n).to_vec();
        if n > 0 {
            w.extend(self.pair.sub_weights(n - 1).into_iter().map(|x| x * theta));
        }
        w
    }

    /// `‖(u, v)‖₁(θ) = ‖u‖₁ + θ‖v‖₁`.
    pub fn norm(&self, n: usize, c: &ConeChain, theta: &Q) -> Result<Q> {
        if theta.is_negative() {
            return Err(Error::NegativeTheta);
        }
        let flat = self.flatten(n, c)?;
        Ok(weighted_l1(&self.weights(n, theta), &flat))
    }

    /// The θ-seminorm of the cone class of `(u, v)`: the least norm over
    /// `(u, v) + d̄(b, b′)`.
    pub fn cone_seminorm(&self, n: usize, c: &ConeChain, theta: &Q) -> Result<SeminormResult> {
        if theta.is_negative() {
            return Err(Error::NegativeTheta);
        }
        let base = self.flatten(n, c)?;
        if !self.is_cycle(n, c)? {
            return Err(Error::NotAConeCycle);
        }
        let gens = self.differential(n + 1);
        let sol = L1Min {
            base: &base,
            gens: &gens,
        }
        .solve(&self.weights(n, theta))?;
        let mut rep = base.clone();
        for (r, d) in rep.iter_mut().zip(gens.apply(&sol.beta)) {
            *r += d;
        }
        let value = sol.certificate.value().cloned().unwrap_or_default();
        Ok(SeminormResult {
            value,
            representative: rep,
            problem: sol.problem,
            certificate: sol.certificate,
        })
    }

    /// Whether `a − b` is a cone boundary (feasibility LP).
    pub fn homologous(&self, n: usize, a: &ConeChain, b: &ConeChain) -> Result<bool> {
        let fa = self.flatten(n, a)?;
        let fb = self.flatten(n, b)?;
        let diff: Vec<Q> = fa.iter().zip(&fb).map(|(x, y)| x - y).collect();
        feasible_zero(&diff, &self.differential(n + 1), diff.len())
    }

    /// `β_n(u, v) = [u]`.
    pub fn beta_forward(&self, n: usize, c: &ConeChain) -> Result<HomClass> {
        if !self.is_cycle(n, c)? {
            return Err(Error::NotAConeCycle);
        }
        Ok(HomClass::new(n, c.u.clone()))
    }

    /// `[u] ↦ [(u, −∂u)]`.
    pub fn beta_inverse(&self, class: &HomClass) -> Result<ConeChain> {
        self.pair.check_relative_cycle(class)?;
        let n = class.degree;
        let bd = self.pair.ambient().apply_boundary(n, &class.chain);
        let v = if n == 0 {
            Vec::new()
        } else {
            self.pair
                .restrict(n - 1, &bd)
                .into_iter()
                .map(|x| -x)
                .collect()
        };
        Ok(ConeChain {
            u: class.chain.clone(),
            v,
        })
    }
}

/// A bounded cochain `(f, g) ∈ C^n(X) ⊕ C^{n-1}(Y)` of the dual cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCochain {
    pub f: Vec<Q>,
    pub g: Vec<Q>,
}

/// Dual of the mapping cone: differential `(f, g) ↦ (δf, −i*f − δg)`,
/// pairing `⟨(f, g), (u, v)⟩ = f(u) − g(v)` and norm
/// `max{‖f‖_∞, θ⁻¹‖g‖_∞}` (weighted dually to the chain norm).
#[derive(Debug, Clone)]
pub struct DualCone<'a> {
    pair: &'a PairComplex,
}

#[derive(Debug, Clone)]
pub struct DualityResult {
    pub value: Q,
    pub witness: ConeCochain,
    pub problem: LpProblem,
    pub certificate: Certificate,
}

impl<'a> DualCone<'a> {
    pub fn new(pair: &'a PairComplex) -> Self {
        DualCone { pair }
    }

    /// `δ̄ⁿ(f, g) = (dⁿf, −iⁿf − d^{n-1}g)` with `dⁿf = f∘∂_{n+1}`.
    pub fn coboundary(&self, n: usize, c: &ConeCochain) -> ConeCochain {
        let x = self.pair.ambient();
        let f1 = x.boundary(n + 1).transpose().apply(&c.f);
        let restricted = self.pair.restrict(n, &c.f);
        let dg = if n == 0 {
            vec![Q::zero(); self.pair.sub_dim(n)]
        } else {
            self.pair.sub_boundary(n).transpose().apply(&c.g)
        };
        let g1 = restricted.iter().zip(&dg).map(|(a, b)| -a - b).collect();
        ConeCochain { f: f1, g: g1 }
    }

    pub fn pairing(&self, c: &ConeCochain, chain: &ConeChain) -> Q {
        let a: Q = c.f.iter().zip(&chain.u).map(|(x, y)| x * y).sum();
        let b: Q = c.g.iter().zip(&chain.v).map(|(x, y)| x * y).sum();
        a - b
    }

    /// `max{‖f‖_∞, θ⁻¹‖g‖_∞}` with weights; `None` when `θ = 0` and `g ≠ 0`.
    pub fn norm(&self, n: usize, c: &ConeCochain, theta: &Q) -> Option<Q> {
        let x = self.pair.ambient();
        let mut m = Q::zero();
        for (f, w) in c.f.iter().zip(x.weights(n)) {
            m = m.max(f.abs() / w);
        }
        if n > 0 {
            for (g, w) in c.g.iter().zip(self.pair.sub_weights(n - 1)) {
                if g.is_zero() {
                    continue;
                }
                if theta.is_zero() {
                    return None;
                }
                m = m.max(g.abs() / (w * theta));
            }
        }
        Some(m)
    }

    /// `max ⟨β, (z, −∂z)⟩` over dual cone cocycles `β` of norm at most one.
    pub fn duality_max(&self, class: &HomClass, theta: &Q) -> Result<DualityResult> {
        if theta.is_negative() {
            return Err(Error::NegativeTheta);
        }
        self.pair.check_relative_cycle(class)?;
        let n = class.degree;
        let x = self.pair.ambient();
        let nf = x.dim(n);
        let ng = if n == 0 { 0 } else { self.pair.sub_dim(n - 1) };
        let bd = x.apply_boundary(n, &class.chain);
        let v: Vec<Q> = if n == 0 {
            Vec::new()
        } else {
            self.pair
                .restrict(n - 1, &bd)
                .into_iter()
                .map(|t| -t)
                .collect()
        };
        let mut p = LpProblem::new(vec![VarKind::Free; nf + ng]);
        for (i, z) in class.chain.iter().enumerate() {
            p.objective[i] = -z.clone();
        }
        for (k, vk) in v.iter().enumerate() {
            p.objective[nf + k] = vk.clone();
        }
        let mut bounds: Vec<Q> = x.weights(n).to_vec();
        if n > 0 {
            bounds.extend(self.pair.sub_weights(n - 1).into_iter().map(|w| w * theta));
        }
        for (j, b) in bounds.iter().enumerate() {
            p.add_constraint(vec![(j, Q::one())], Relation::Le, b.clone());
            p.add_constraint(vec![(j, Q::one())], Relation::Ge, -b.clone());
        }
        // Cocycle condition, one equation per coordinate of δ̄ⁿ(f, g).
        let d_next = x.boundary(n + 1);
        for col in 0..d_next.cols() {
            let coeffs = (0..nf).map(|i| (i, d_next.get(i, col).clone())).collect();
            p.add_constraint(coeffs, Relation::Eq, Q::zero());
        }
        let sub_d = self.pair.sub_boundary(n);
        for (k, &i) in self.pair.sub_basis(n).iter().enumerate() {
            let mut coeffs = vec![(i, -Q::one())];
            if n > 0 {
                coeffs.extend((0..ng).map(|r| (nf + r, -sub_d.get(r, k).clone())));
            }
            p.add_constraint(coeffs, Relation::Eq, Q::zero());
        }
        let certificate = lp::solve(&p)?;
        let Certificate::Optimal { x: sol, value, .. } = &certificate else {
            return Err(Error::MalformedProblem("duality LP has no optimum".into()));
        };
        let witness = ConeCochain {
            f: sol[..nf].to_vec(),
            g: sol[nf..].to_vec(),
        };
        let value = -value.clone();
        Ok(DualityResult {
            value,
            witness,
            problem: p,
            certificate,
        })
    }

    /// Independent check of a duality witness.
    pub fn check_witness(&self, class: &HomClass, theta: &Q, r: &DualityResult) -> bool {
        let n = class.degree;
        let cob = self.coboundary(n, &r.witness);
        let closed = cob.f.iter().chain(&cob.g).all(Zero::is_zero);
        let bounded = self
            .norm(n, &r.witness, theta)
            .is_some_and(|m| m <= Q::one());
        let chain = MappingCone {
            pair: self.pair.clone(),
            faults: Faults::NONE,
        }
        .beta_inverse(class);
        let paired = chain.is_ok_and(|c| self.pairing(&r.witness, &c) == r.value);
        closed && bounded && paired && r.certificate.verify(&r.problem)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThurstonStatus {
    Success,
    NotGuaranteed,
}

#[derive(Debug, Clone)]
pub struct ThurstonResult {
    /// `‖α‖₁`, the relative seminorm at `θ = 0`.
    pub seminorm: Q,
    pub theta: Q,
    pub chain: Vec<Q>,
    pub chain_norm: Q,
    pub boundary_norm: Q,
    pub status: ThurstonStatus,
}

impl PairComplex {
    /// With `θ = (‖α‖₁ + ε)/ε`, a representative minimizing `‖c‖₁(θ)`;
    /// success iff `‖c‖₁ ≤ ‖α‖₁ + ε` and `‖∂c‖₁ ≤ ε`.
    pub fn thurston_representative(&self, class: &HomClass, epsilon: &Q) -> Result<ThurstonResult> {
        if !epsilon.is_positive() {
            return Err(Error::NonpositiveEpsilon);
        }
        let seminorm = self.homology_seminorm(class, &Q::zero())?.value;
        let theta = (&seminorm + epsilon) / epsilon;
        let best = self.homology_seminorm(class, &theta)?;
        let x = self.ambient();
        let n = class.degree;
        let chain = best.representative;
        let chain_norm = x.norm(n, &chain);
        let boundary_norm = x.norm(n.wrapping_sub(1), &x.apply_boundary(n, &chain));
        let ok = chain_norm <= &seminorm + epsilon && &boundary_norm <= epsilon;
        let status = if ok {
            ThurstonStatus::Success
        } else {
            ThurstonStatus::NotGuaranteed
        };
        Ok(ThurstonResult {
            seminorm,
            theta,
            chain,
            chain_norm,
            boundary_norm,
            status,
        })
    }
}

/// Whether `θ` lies outside `θ ≥ 1`, the range treated in the literature on
/// the dual cone.
pub fn below_unit_theta(theta: &Q) -> bool {
    theta < &Q::one()
}
