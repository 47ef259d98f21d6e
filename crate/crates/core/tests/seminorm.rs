use gogcone_core::instances;
use gogcone_core::rational::{frac, q};
use gogcone_core::seminorm::lp::{self, Certificate, LpProblem, Relation, VarKind};
use gogcone_core::seminorm::{
    glue_assemble, DualCone, FiniteChainComplex, HomClass, Identification, Interface, MappingCone,
    PairComplex, ThurstonStatus,
};
use gogcone_core::{Error, Q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Rank by plain Gaussian elimination, kept apart from the library's.
fn rank_oracle(rows: Vec<Vec<Q>>) -> usize {
    let mut m: Vec<Vec<Q>> = rows;
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn matrix_rows(c: &FiniteChainComplex, n: usize) -> Vec<Vec<Q>> {
    let b = c.boundary(n);
    (0..b.rows()).map(|i| b.row(i).to_vec()).collect()
}

#[test]
fn lp_examples() {
    let mut p = LpProblem::new(vec![VarKind::NonNeg]);
    p.objective[0] = q(1);
    p.add_constraint(vec![(0, q(1))], Relation::Ge, q(2));
    let c = lp::solve(&p).unwrap();
    assert_eq!(c.value(), Some(&q(2)));
    assert!(c.verify(&p));

    let mut p = LpProblem::new(vec![VarKind::Free]);
    p.add_constraint(vec![(0, q(1))], Relation::Le, q(0));
    p.add_constraint(vec![(0, q(1))], Relation::Ge, q(1));
    let c = lp::solve(&p).unwrap();
    assert!(matches!(c, Certificate::Infeasible { .. }));
    assert!(c.verify(&p));

    let mut bad = LpProblem::new(vec![VarKind::Free]);
    bad.add_constraint(vec![(3, q(1))], Relation::Le, q(0));
    assert!(matches!(lp::solve(&bad), Err(Error::MalformedProblem(_))));
}

#[test]
fn certificates_reject_tampering() {
    let mut p = LpProblem::new(vec![VarKind::NonNeg, VarKind::NonNeg]);
    p.objective = vec![q(1), q(2)];
    p.add_constraint(vec![(0, q(1)), (1, q(1))], Relation::Ge, q(3));
    let c = lp::solve(&p).unwrap();
    assert_eq!(c.value(), Some(&q(3)));
    let Certificate::Optimal { x, y, value } = c else {
        panic!()
    };
    let worse = Certificate::Optimal {
        x: vec![q(0), q(3)],
        y: y.clone(),
        value: value.clone(),
    };
    assert!(!worse.verify(&p));
    let loose = Certificate::Optimal {
        x,
        y: vec![q(2)],
        value,
    };
    assert!(!loose.verify(&p));
}

/// Minimum over all vertices of the box-bounded polytope.
fn vertex_oracle(p: &LpProblem) -> Option<Q> {
    let n = p.vars.len();
    let rows: Vec<(Vec<Q>, Q)> = p
        .constraints
        .iter()
        .map(|c| {
            let mut a = vec![Q::zero(); n];
            for (j, x) in &c.coeffs {
                a[*j] += x;
            }
            (a, c.rhs.clone())
        })
        .collect();
    let mut best: Option<Q> = None;
    let k = rows.len();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<&(Vec<Q>, Q)> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &rows[i])
            .collect();
        if let Some(x) = solve_square(&chosen) {
            if p.is_feasible(&x) {
                let v = p.objective_at(&x);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

fn solve_square(rows: &[&(Vec<Q>, Q)]) -> Option<Vec<Q>> {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|(a, b)| a.iter().cloned().chain([b.clone()]).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        cost in proptest::collection::vec(-4i64..5, 3),
        rows in proptest::collection::vec((proptest::collection::vec(-3i64..4, 3), 0u8..3, -6i64..7), 0..4),
    ) {
        let mut p = LpProblem::new(vec![VarKind::Free; 3]);
        p.objective = cost.iter().map(|&c| q(c)).collect();
        for j in 0..3 {
            p.add_constraint(vec![(j, q(1))], Relation::Le, q(5));
            p.add_constraint(vec![(j, q(1))], Relation::Ge, q(-5));
        }
        for (a, r, b) in &rows {
            let rel = [Relation::Le, Relation::Eq, Relation::Ge][*r as usize];
            p.add_constraint(a.iter().enumerate().map(|(j, &x)| (j, q(x))).collect(), rel, q(*b));
        }
        let c = lp::solve(&p).unwrap();
        prop_assert!(c.verify(&p));
        let oracle = vertex_oracle(&p);
        match (&c, oracle) {
            (Certificate::Optimal { value, .. }, Some(v)) => prop_assert_eq!(value, &v),
            (Certificate::Infeasible { .. }, None) => {}
            (c, o) => prop_assert!(false, "solver {:?} vs oracle {:?}", c, o),
        }
    }
}

#[test]
fn theta_norm_examples() {
    let (pair, class) = instances::simplex_rel_boundary();
    let x = pair.ambient();
    assert_eq!(x.theta_norm(2, &class.chain, &q(2)).unwrap(), q(7));
    assert_eq!(x.theta_norm(2, &[q(0)], &q(5)).unwrap(), q(0));
    assert_eq!(
        x.theta_norm(2, &class.chain, &q(-1)),
        Err(Error::NegativeTheta)
    );
    let (circle, z) = instances::triangle_circle();
    assert_eq!(
        circle.ambient().theta_norm(1, &z.chain, &q(9)).unwrap(),
        q(3)
    );
}

#[test]
fn circle_seminorm_is_three() {
    let (pair, class) = instances::triangle_circle();
    assert_eq!(pair.ambient().dim(2), 0);
    let r = pair.homology_seminorm(&class, &q(0)).unwrap();
    assert!(r.verified());
    assert_eq!(r.value, q(3));
    assert_eq!(r.value, pair.ambient().norm(1, &class.chain));
    let d = DualCone::new(&pair).duality_max(&class, &q(0)).unwrap();
    assert_eq!(d.value, q(3));
    assert_eq!(d.witness.f, vec![q(1); 3]);
    assert!(DualCone::new(&pair).check_witness(&class, &q(0), &d));
}

#[test]
fn simplex_pair_seminorm_is_one() {
    let (pair, class) = instances::simplex_rel_boundary();
    assert_eq!(pair.sub_dim(2), 0);
    assert_eq!(pair.ambient().dim(3), 0);
    let r = pair.homology_seminorm(&class, &q(0)).unwrap();
    assert!(r.verified());
    assert_eq!(r.value, q(1));
}

#[test]
fn torus_seminorm_is_fourteen() {
    let t = instances::torus7();
    assert_eq!((t.dim(0), t.dim(1), t.dim(2), t.dim(3)), (7, 21, 14, 0));
    let r2 = rank_oracle(matrix_rows(&t, 2));
    let r1 = rank_oracle(matrix_rows(&t, 1));
    // C_3 = 0, so B_2 = 0 and H_2 = Z_2.
    assert_eq!((7 - r1, 21 - r1 - r2, 14 - r2), (1, 2, 1));
    let class = instances::fundamental_class(&t).unwrap();
    assert!(class.chain.iter().all(|x| x.abs() == q(1)));
    let oracle: Q = class.chain.iter().map(Signed::abs).sum();
    assert_eq!(oracle, q(14));
    let pair = PairComplex::absolute(t);
    let r = pair.homology_seminorm(&class, &q(0)).unwrap();
    assert!(r.verified());
    assert_eq!(r.value, q(14));
    let d = DualCone::new(&pair).duality_max(&class, &q(0)).unwrap();
    assert_eq!(d.value, q(14));
    assert!(d.witness.f.iter().all(|x| x.abs() == q(1)));
    assert!(DualCone::new(&pair).check_witness(&class, &q(0), &d));
}

#[test]
fn relative_seminorm_errors() {
    let (pair, _) = instances::simplex_rel_boundary();
    let edge = HomClass::new(1, pair.ambient().chain(1, &[("0,1", 1)]).unwrap());
    let circle = instances::triangle_circle().0;
    let open = HomClass::new(1, circle.ambient().chain(1, &[("0,1", 1)]).unwrap());
    assert!(matches!(
        circle.homology_seminorm(&open, &q(0)),
        Err(Error::NotACycle)
    ));
    // Every 1-chain on the boundary is a relative cycle, and it is zero.
    assert_eq!(pair.homology_seminorm(&edge, &q(1)).unwrap().value, q(0));
}

/// `min_λ a + b|λ| + θ|1 + λ|` is attained at a breakpoint `λ ∈ {0, −1}`.
fn uw_oracle(weight: Q, theta: Q) -> Q {
    let f = |l: Q| q(1) + &weight * l.abs() + &theta * (q(1) + &l).abs();
    std::cmp::min(f(q(0)), f(q(-1)))
}

#[test]
fn cone_examples() {
    let (pair, class) = instances::simplex_rel_boundary();
    let cone = MappingCone::new(pair.clone()).unwrap();
    let c = cone.beta_inverse(&class).unwrap();
    let a = cone.cone_seminorm(2, &c, &q(1)).unwrap();
    let b = pair.homology_seminorm(&class, &q(1)).unwrap();
    assert!(a.verified() && b.verified());
    assert_eq!(a.value, b.value);
    assert_eq!(a.value, q(4));

    let zero = cone.beta_inverse(&HomClass::new(2, vec![q(0)])).unwrap();
    assert_eq!(cone.cone_seminorm(2, &zero, &q(3)).unwrap().value, q(0));

    let (uw, uclass) = instances::uw_pair(q(1));
    let cone = MappingCone::new(uw.clone()).unwrap();
    let c = cone.beta_inverse(&uclass).unwrap();
    assert_eq!(c.v, vec![q(-1)]);
    let a = cone.cone_seminorm(2, &c, &q(3)).unwrap();
    assert_eq!(a.value, q(2));
    assert_eq!(a.value, uw_oracle(q(1), q(3)));
    assert_eq!(a.value, uw.homology_seminorm(&uclass, &q(3)).unwrap().value);

    let mut broken = c.clone();
    broken.v[0] = q(1);
    assert!(matches!(
        cone.cone_seminorm(2, &broken, &q(3)),
        Err(Error::NotAConeCycle)
    ));
}

#[test]
fn beta_maps() {
    let (circle, z) = instances::triangle_circle();
    let cone = MappingCone::new(circle).unwrap();
    let c = cone.beta_inverse(&z).unwrap();
    assert!(c.v.is_empty());
    assert_eq!(cone.beta_forward(1, &c).unwrap(), z);

    let (uw, uclass) = instances::uw_pair(q(1));
    let cone = MappingCone::new(uw.clone()).unwrap();
    let c = cone.beta_inverse(&uclass).unwrap();
    assert_eq!(cone.beta_forward(2, &c).unwrap(), uclass);
    // Another representative of the same relative class: u − w.
    let other = HomClass::new(2, vec![q(1), q(-1)]);
    assert!(uw.homologous(&uclass, &other).unwrap());
    let c2 = cone.beta_inverse(&other).unwrap();
    assert!(cone.homologous(2, &c, &c2).unwrap());
    assert!(!cone
        .homologous(
            2,
            &c,
            &cone
                .beta_inverse(&HomClass::new(2, vec![q(2), q(0)]))
                .unwrap()
        )
        .unwrap());
}

#[test]
fn faulty_cone_is_rejected() {
    let (uw, _) = instances::uw_pair(q(1));
    let faults = gogcone_core::fault::Faults::by_name("cone-sign").unwrap();
    assert!(matches!(
        MappingCone::with_faults(uw, faults),
        Err(Error::InvalidComplex(_))
    ));
}

#[test]
fn thurston_examples() {
    let (uw, class) = instances::uw_pair(frac(2, 5));
    let r = uw.thurston_representative(&class, &frac(1, 2)).unwrap();
    assert_eq!(r.seminorm, q(1));
    assert_eq!(r.theta, q(3));
    assert_eq!(r.chain, vec![q(1), q(-1)]);
    assert_eq!(r.chain_norm, frac(7, 5));
    assert_eq!(r.chain_norm, uw_oracle(frac(2, 5), q(3)));
    assert_eq!(r.boundary_norm, q(0));
    assert_eq!(r.status, ThurstonStatus::Success);

    let (pair, class) = instances::simplex_rel_boundary();
    let r = pair.thurston_representative(&class, &q(1)).unwrap();
    assert_eq!(r.chain, class.chain);
    assert_eq!(r.boundary_norm, q(3));
    assert_eq!(r.status, ThurstonStatus::NotGuaranteed);

    let (circle, z) = instances::triangle_circle();
    let r = circle.thurston_representative(&z, &frac(1, 10)).unwrap();
    assert_eq!(r.chain, z.chain);
    assert_eq!(r.boundary_norm, q(0));
    assert_eq!(r.status, ThurstonStatus::Success);

    assert!(matches!(
        circle.thurston_representative(&z, &q(0)),
        Err(Error::NonpositiveEpsilon)
    ));
}

#[test]
fn infinite_theta_is_lexicographic() {
    let (uw, class) = instances::uw_pair(q(1));
    let r = uw.homology_seminorm_infinite(&class).unwrap();
    assert_eq!(r.boundary_min, q(0));
    assert_eq!(r.value, Some(q(2)));
    let (pair, class) = instances::simplex_rel_boundary();
    let r = pair.homology_seminorm_infinite(&class).unwrap();
    assert_eq!(r.boundary_min, q(3));
    assert_eq!(r.value, None);
    for (p, c) in &r.certificates {
        assert!(c.verify(p));
    }
}

#[test]
fn gluing_examples() {
    let (pieces, ifaces) = instances::glue_segments();
    let r = glue_assemble(1, &pieces, &ifaces).unwrap();
    assert!(r.verified(1));
    assert!(r.correction.iter().all(Zero::is_zero));
    assert_eq!(r.cycle, r.sum);
    assert_eq!(r.cycle_norm, q(2));

    let (pieces, ifaces) = instances::glue_square();
    let r = glue_assemble(2, &pieces, &ifaces).unwrap();
    assert!(r.verified(2));
    assert!(r.interface[2].is_empty());
    assert_eq!(r.correction_norm, q(0));
    assert_eq!(r.cycle, vec![q(1), q(1)]);
    assert_eq!(r.glued.ambient().dim(1), 5);

    let (pieces, ifaces) = instances::glue_annuli();
    let r = glue_assemble(2, &pieces, &ifaces).unwrap();
    assert!(r.verified(2));
    assert_eq!(r.interface[2].len(), 6);
    assert_eq!(r.correction_norm, q(6));
    assert_eq!(r.cycle_norm, q(18));
    assert_eq!(r.piece_norms, vec![q(6), q(6)]);
    // Uniqueness oracle: the collar has no 2-cycles, so c′ is forced.
    let x = r.glued.ambient();
    let collar_rows: Vec<Vec<Q>> = (0..x.dim(1))
        .map(|i| {
            r.interface[2]
                .iter()
                .map(|&g| x.boundary(2).get(i, g).clone())
                .collect()
        })
        .collect();
    assert_eq!(rank_oracle(collar_rows), 6);
    assert!(r.cycle.iter().all(|c| c.abs() == q(1)));
    // c″ is the whole glued annulus: a relative cycle with boundary on the
    // two outer circles only.
    assert_eq!(x.dim(2), 18);
}

#[test]
fn gluing_errors() {
    let (square, mut flipped) = instances::glue_square();
    for c in flipped[0].cells.iter_mut().filter(|c| c.degree == 1) {
        c.sign = -c.sign;
    }
    assert!(matches!(
        glue_assemble(2, &square, &flipped),
        Err(Error::InterfaceMismatch(_))
    ));

    let (mut pieces, ifaces) = instances::glue_segments();
    let bogus = vec![Interface {
        left: 0,
        right: 1,
        cells: vec![Identification {
            degree: 1,
            left: 0,
            right: 0,
            sign: 1,
        }],
    }];
    assert!(matches!(
        glue_assemble(1, &pieces, &bogus),
        Err(Error::InterfaceMismatch(_))
    ));

    pieces[1].cycle[0] = q(-1);
    assert!(matches!(
        glue_assemble(1, &pieces, &ifaces),
        Err(Error::Unfillable)
    ));
}

#[test]
fn invalid_complexes_are_rejected() {
    let (pair, _) = instances::simplex_rel_boundary();
    let x = pair.ambient();
    assert!(matches!(
        x.with_weights(vec![vec![q(1); 3], vec![q(1); 3], vec![q(0)]]),
        Err(Error::InvalidComplex(_))
    ));
    let names = vec![
        vec!["a".to_string()],
        vec!["e".to_string()],
        vec!["f".to_string()],
    ];
    let d1 = gogcone_core::seminorm::Matrix::from_rows(vec![vec![q(1)]], 1).unwrap();
    let d2 = gogcone_core::seminorm::Matrix::from_rows(vec![vec![q(1)]], 1).unwrap();
    assert!(matches!(
        FiniteChainComplex::with_unit_weights(names, vec![d1, d2]),
        Err(Error::InvalidComplex(_))
    ));
    assert!(matches!(
        PairComplex::by_names(x.clone(), &[&[], &["0,1"]]),
        Err(Error::InvalidComplex(_))
    ));
}

/// Random pairs built from simplices on five vertices.
fn random_pair() -> impl Strategy<Value = (PairComplex, HomClass, Q)> {
    let tri = proptest::collection::vec(
        proptest::sample::subsequence((0..5).collect::<Vec<_>>(), 3),
        1..4,
    );
    let edges = proptest::collection::vec(
        proptest::sample::subsequence((0..5).collect::<Vec<_>>(), 2),
        0..4,
    );
    (
        tri,
        edges,
        proptest::collection::vec(0usize..40, 0..4),
        proptest::collection::vec(1i64..5, 40),
        proptest::collection::vec(-2i64..3, 8),
        0usize..2,
        0u8..3,
    )
        .prop_map(|(tris, edges, ycells, ws, coeffs, deg, th)| {
            let list: Vec<Vec<String>> = tris
                .iter()
                .chain(&edges)
                .map(|s| s.iter().map(|v| v.to_string()).collect())
                .collect();
            let x = FiniteChainComplex::from_simplices(&list).unwrap();
            let weights = (0..=x.top())
                .map(|n| {
                    (0..x.dim(n))
                        .map(|i| frac(ws[(7 * n + i) % ws.len()], 2))
                        .collect()
                })
                .collect();
            let x = x.with_weights(weights).unwrap();
            let cells: Vec<(usize, usize)> = ycells
                .iter()
                .filter_map(|&k| {
                    let n = k % 2;
                    (x.dim(n) > 0).then(|| (n, (k / 2) % x.dim(n)))
                })
                .collect();
            let pair = PairComplex::generated_by(x, &cells).unwrap();
            let n = deg + 1;
            let basis = pair.relative_cycles(n);
            let mut z = vec![Q::zero(); pair.ambient().dim(n)];
            for (b, k) in basis.iter().zip(&coeffs) {
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi += bi * q(*k);
                }
            }
            let theta = [frac(1, 2), q(1), q(3)][th as usize].clone();
            (pair, HomClass::new(n, z), theta)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn cone_and_relative_seminorms_agree((pair, class, theta) in random_pair()) {
        let cone = MappingCone::new(pair.clone()).unwrap();
        let c = cone.beta_inverse(&class).unwrap();
        let a = cone.cone_seminorm(class.degree, &c, &theta).unwrap();
        let b = pair.homology_seminorm(&class, &theta).unwrap();
        prop_assert!(a.verified() && b.verified());
        prop_assert_eq!(&a.value, &b.value);
        let x = pair.ambient();
        prop_assert_eq!(x.theta_norm(class.degree, &b.representative, &theta).unwrap(), b.value.clone());
        prop_assert!(pair.homologous(&class, &HomClass::new(class.degree, b.representative.clone())).unwrap());
    }

    #[test]
    fn duality_matches_seminorm((pair, class, theta) in random_pair()) {
        let d = DualCone::new(&pair).duality_max(&class, &theta).unwrap();
        let b = pair.homology_seminorm(&class, &theta).unwrap();
        prop_assert!(DualCone::new(&pair).check_witness(&class, &theta, &d));
        prop_assert_eq!(d.value, b.value);
    }

    #[test]
    fn seminorm_is_monotone_and_concave_in_theta((pair, class, _) in random_pair()) {
        let thetas = [q(0), frac(1, 3), frac(1, 2), q(1), q(2), q(3), q(7)];
        let vals: Vec<Q> = thetas.iter().map(|t| pair.homology_seminorm(&class, t).unwrap().value).collect();
        for w in vals.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for i in 0..thetas.len() - 2 {
            let (a, b, c) = (&thetas[i], &thetas[i + 1], &thetas[i + 2]);
            let interp = &vals[i] + (&vals[i + 2] - &vals[i]) * (b - a) / (c - a);
            prop_assert!(vals[i + 1] >= interp);
        }
        prop_assert_eq!(&vals[0], &pair.homology_seminorm(&class, &q(0)).unwrap().value);
        let lex = pair.homology_seminorm_infinite(&class).unwrap();
        match &lex.value {
            Some(v) => prop_assert!(vals.iter().all(|x| x <= v)),
            None => prop_assert!(vals.iter().zip(&thetas).all(|(x, t)| x >= &(t * &lex.boundary_min))),
        }
    }

    #[test]
    fn boundaries_square_to_zero((pair, _, _) in random_pair()) {
        let cone = MappingCone::new(pair.clone()).unwrap();
        for n in 1..=pair.ambient().top() + 1 {
            prop_assert!(cone.differential(n).mul(&cone.differential(n + 1)).is_zero());
        }
    }
}
