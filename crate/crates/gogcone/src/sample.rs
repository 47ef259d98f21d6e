//! Seeded random pairs `(X, Y)` with a relative class, for the seminorm
//! sweeps.

use gogcone_core::bass_serre::SPoint;
use gogcone_core::presentations::GraphOfGroups;
use gogcone_core::rational::{frac, q};
use gogcone_core::seminorm::{FiniteChainComplex, HomClass, Matrix, PairComplex};
use gogcone_core::Q;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_CELLS: usize = 30;

#[derive(Debug, Clone)]
pub struct RandomPair {
    pub pair: PairComplex,
    pub class: HomClass,
}

impl RandomPair {
    pub fn cells(&self) -> usize {
        let x = self.pair.ambient();
        (0..=x.top()).map(|n| x.dim(n)).sum()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rescales basis vectors by `s`: `∂′ᵢⱼ = ∂ᵢⱼ · sⱼ / sᵢ`.
fn rescale(
    x: &FiniteChainComplex,
    rng: &mut ChaCha8Rng,
    weights: Vec<Vec<Q>>,
) -> FiniteChainComplex {
    let factors = [q(1), q(-1), q(2), frac(1, 3), frac(-3, 2)];
    let s: Vec<Vec<Q>> = (0..=x.top())
        .map(|n| {
            (0..x.dim(n))
                .map(|_| factors.choose(rng).expect("nonempty").clone())
                .collect()
        })
        .collect();
    let mats = (1..=x.top())
        .map(|n| {
            let b = x.boundary(n);
            let mut m = Matrix::zeros(b.rows(), b.cols());
            for (i, j, v) in b.entries() {
                m.set(i, j, v * &s[n][j] / &s[n - 1][i]);
            }
            m
        })
        .collect();
    let names = (0..=x.top()).map(|n| x.names(n).to_vec()).collect();
    FiniteChainComplex::new(names, mats, weights).expect("rescaling keeps ∂∂ = 0")
}

/// A simplicial complex on six vertices with at most [`MAX_CELLS`] cells,
/// weights in `{1/2, 1, 3/2, 2}`, a random subcomplex and a random relative
/// cycle of degree 1 or 2. Half of the complexes get a rescaled basis.
pub fn random_pair(rng: &mut ChaCha8Rng) -> RandomPair {
    let triangles = subsets(6, 3);
    let edges = subsets(6, 2);
    loop {
        let (t, e) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
        let mut simplices: Vec<Vec<usize>> = triangles.choose_multiple(rng, t).cloned().collect();
        simplices.extend(edges.choose_multiple(rng, e).cloned());
        let list: Vec<Vec<String>> = simplices
            .iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect())
            .collect();
        let x = FiniteChainComplex::from_simplices(&list).expect("simplices are valid");
        let cells: usize = (0..=x.top()).map(|n| x.dim(n)).sum();
        if cells > MAX_CELLS {
            continue;
        }
        let weights: Vec<Vec<Q>> = (0..=x.top())
            .map(|n| {
                (0..x.dim(n))
                    .map(|_| frac(rng.gen_range(1..=4), 2))
                    .collect()
            })
            .collect();
        let x = if rng.gen_bool(0.5) {
            rescale(&x, rng, weights)
        } else {
            x.with_weights(weights).expect("positive")
        };
        let ycells: Vec<(usize, usize)> = (0..rng.gen_range(0..=4))
            .map(|_| {
                let n = usize::from(rng.gen_bool(0.4));
                (n, rng.gen_range(0..x.dim(n)))
            })
            .collect();
        let pair = PairComplex::generated_by(x, &ycells).expect("closure is a subcomplex");
        let n = if rng.gen_bool(0.5) { 1 } else { 2 };
        let basis = pair.relative_cycles(n);
        if basis.is_empty() {
            continue;
        }
        let mut z = vec![Q::zero(); pair.ambient().dim(n)];
        while z.iter().all(Zero::is_zero) {
            for b in &basis {
                let k = q(rng.gen_range(-2..=2));
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi += bi * &k;
                }
            }
        }
        return RandomPair {
            pair,
            class: HomClass::new(n, z),
        };
    }
}

/// The points `(x, v)` and edge points `xΓ_e` for `x` in the enumeration
/// ball, sorted.
pub fn s_point_pool(g: &GraphOfGroups, syllables: usize, exponent: u32) -> Vec<SPoint> {
    let mut out = Vec::new();
    for x in g.enumerate_elements(syllables, exponent) {
        for v in 0..g.vertex_count() {
            out.push(SPoint::Group { g: x.clone(), v });
        }
        for e in 0..g.edge_count() {
            out.push(g.edge_point(&x, e).expect("same graph"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `samples` tuples of `len` points drawn uniformly from `pool`.
pub fn sample_tuples(pool: &[SPoint], len: usize, samples: usize, seed: u64) -> Vec<Vec<SPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            (0..len)
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect()
        })
        .collect()
}

pub fn thetas() -> [Q; 3] {
    [frac(1, 2), Q::one(), q(3)]
}
