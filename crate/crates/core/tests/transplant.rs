mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use gogcone_core::bass_serre::SPoint;
use gogcone_core::fault::Faults;
use gogcone_core::presentations::{GraphOfGroups, NormalForm, VElem};
use gogcone_core::rational::{frac, q};
use gogcone_core::transplant::{
    alternate, alternation_failures, invariant_cochain, mu_free_pullback, phi_pullback,
    psi_cochain, tabulate, tuples, verify_chain_map, Cochain, FamilyValues, SvPoint,
};
use gogcone_core::{instances, Error, Q};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn seeded_family(g: &Arc<GraphOfGroups>, degree: usize, seed: u64) -> Vec<Cochain<SvPoint>> {
    (0..g.vertex_count())
        .map(|v| invariant_cochain(g, v, degree, FamilyValues::Seeded(seed + v as u64)))
        .collect()
}

fn elem(g: &GraphOfGroups, v: usize, k: i64) -> VElem {
    g.vertex_group(v).generator_power(0, &BigInt::from(k))
}

#[test]
fn projection_examples() {
    let g = zz();
    let v = g.vertex_index("v").unwrap();
    let w = g.vertex_index("w").unwrap();
    let p = g.project(&SPoint::Group { g: g.identity(), v }).unwrap();
    assert_eq!(p, g.base_node(v));
    let p = g
        .project(&SPoint::Group {
            g: word(&g, &[("a", 1), ("b", 1)]),
            v: w,
        })
        .unwrap();
    assert_eq!(p, g.tree_vertex(&word(&g, &[("a", 1)]), w).unwrap());
    let e = g.tree_edge(&g.identity(), 0).unwrap();
    assert_eq!(g.project(&SPoint::EdgeCoset(e.clone())).unwrap(), e);
}

#[test]
fn projection_is_equivariant() {
    for (name, g) in all_graphs() {
        let pts = s_points(&g, 2, 2);
        for gamma in g.enumerate_elements(2, 1) {
            for x in &pts {
                let lhs = g.project(&g.act(&gamma, x).unwrap()).unwrap();
                let rhs = g.translate(&gamma, &g.project(x).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }
}

#[test]
fn alternation_examples() {
    let constant: Cochain<i64> = Cochain::new(1, q(1), false, |_| Ok(q(1)));
    let a = alternate(&constant);
    for (x, y) in [(0, 1), (3, 3), (-2, 5)] {
        assert!(a.evaluate(&[x, y]).unwrap().is_zero());
    }
    let first: Cochain<i64> = Cochain::new(1, q(9), false, |x| Ok(q(x[0] * x[0])));
    let a = alternate(&first);
    for (x, y) in [(0i64, 1i64), (3, 3), (-2, 5)] {
        assert_eq!(a.evaluate(&[x, y]).unwrap(), frac(x * x - y * y, 2));
    }
    let general: Cochain<i64> = Cochain::new(2, q(100), false, |x| {
        Ok(q(x[0] + 2 * x[1] * x[2] + 3 * x[2]))
    });
    let once = alternate(&general);
    let twice = alternate(&once);
    let pts: Vec<i64> = (-2..3).collect();
    let ts = tuples(&pts, 3);
    for t in &ts {
        assert_eq!(once.evaluate(t).unwrap(), twice.evaluate(t).unwrap());
        assert!(once.evaluate(t).unwrap() <= q(100));
    }
    assert!(alternation_failures(&once, &ts).unwrap().is_empty());
    assert!(!alternation_failures(&general, &ts).unwrap().is_empty());
}

#[test]
fn phi_identifies_sv_with_the_star() {
    for (name, g) in all_graphs() {
        for v in 0..g.vertex_count() {
            let base = g.base_node(v);
            let pts = g.sv_points(v, 3, 3);
            let mut images = BTreeSet::new();
            for s in &pts {
                let x = g.phi(v, s).unwrap();
                assert!(g.in_star(&base, &g.project(&x).unwrap()), "{name}");
                assert_eq!(g.phi_inverse(v, &x).unwrap().as_ref(), Some(s), "{name}");
                assert!(images.insert(x), "{name}: φ not injective");
                for k in [-2, 1, 3] {
                    let h = elem(&g, v, k);
                    let moved = g.phi(v, &g.sv_act(v, &h, s)).unwrap();
                    let lhs = g
                        .act(&g.vertex_element(v, &h), &g.phi(v, s).unwrap())
                        .unwrap();
                    assert_eq!(moved, lhs, "{name}: φ not equivariant");
                }
            }
            for n in g.neighbors(&base, 1, 3) {
                let x = SPoint::EdgeCoset(n);
                let s = g
                    .phi_inverse(v, &x)
                    .unwrap()
                    .expect("star edges come from S_v");
                assert_eq!(g.phi(v, &s).unwrap(), x, "{name}");
            }
            let far = g.tree_vertex(&g.identity(), v).unwrap();
            let out = g
                .neighbors(&far, 1, 3)
                .into_iter()
                .flat_map(|n| g.neighbors(&n, 1, 3));
            for m in out {
                if m.is_vertex() && m != far {
                    let x = SPoint::Group {
                        g: g.node_rep(&m),
                        v: g.vertex_count() - 1,
                    };
                    if !g.in_star(&base, &g.project(&x).unwrap()) {
                        assert_eq!(g.phi_inverse(v, &x).unwrap(), None, "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn psi_inside_one_vertex_group() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        let family = seeded_family(&g, 2, 11);
        for v in 0..g.vertex_count() {
            for (a, b, c) in [(0, 1, 2), (1, -3, 2), (5, 0, -1)] {
                let xs: Vec<SPoint> = [a, b, c]
                    .iter()
                    .map(|&k| SPoint::Group {
                        g: g.vertex_element(v, &elem(&g, v, k)),
                        v,
                    })
                    .collect();
                let ss: Vec<SvPoint> = [a, b, c]
                    .iter()
                    .map(|&k| SvPoint::Elem(elem(&g, v, k)))
                    .collect();
                assert_eq!(
                    g.psi_eval(&family, &xs).unwrap(),
                    family[v].evaluate(&ss).unwrap(),
                    "{name}"
                );
                assert!(
                    !family[v].evaluate(&ss).unwrap().is_zero(),
                    "{name}: degenerate sample"
                );
            }
        }
    }
}

#[test]
fn psi_zz_examples() {
    let g = Arc::new(zz());
    let v = g.vertex_index("v").unwrap();
    let w = g.vertex_index("w").unwrap();
    let ebar = g.edge_index("ebar").unwrap();
    let family = seeded_family(&g, 2, 3);
    let x = [
        SPoint::Group { g: g.identity(), v },
        SPoint::Group {
            g: word(&g, &[("a", 1)]),
            v,
        },
        SPoint::Group {
            g: word(&g, &[("a", 1), ("b", 1)]),
            v: w,
        },
    ];
    let s = [
        SvPoint::Elem(elem(&g, v, 0)),
        SvPoint::Elem(elem(&g, v, 1)),
        g.sv_coset(ebar, &elem(&g, v, 1)),
    ];
    let expected = family[v].evaluate(&s).unwrap();
    assert!(!expected.is_zero());
    assert_eq!(g.psi_eval(&family, &x).unwrap(), expected);

    // The median of Γ_v, 1Γ_e, Γ_w is the edge midpoint, not a vertex of T.
    let x = [
        SPoint::Group { g: g.identity(), v },
        g.edge_point(&g.identity(), 0).unwrap(),
        SPoint::Group {
            g: word(&g, &[("b", 1)]),
            v: w,
        },
    ];
    let ys: Vec<_> = x.iter().map(|p| g.project(p).unwrap()).collect();
    assert_eq!(g.barycenter(&ys), None);
    assert!(g.psi_eval(&family, &x).unwrap().is_zero());
}

#[test]
fn degree_and_shape_errors() {
    let g = Arc::new(zz());
    let low = seeded_family(&g, 1, 0);
    let x = [
        SPoint::Group {
            g: g.identity(),
            v: 0,
        },
        SPoint::Group {
            g: g.identity(),
            v: 1,
        },
    ];
    assert_eq!(g.psi_eval(&low, &x), Err(Error::DegreeTooLow(1)));
    let fam = seeded_family(&g, 2, 0);
    assert_eq!(
        g.psi_eval(&fam, &x),
        Err(Error::DegreeMismatch {
            expected: 3,
            got: 2
        })
    );
    assert!(matches!(
        g.psi_eval(&fam[..1], &x),
        Err(Error::VertexMismatch(_))
    ));
    let mixed = vec![fam[0].clone(), seeded_family(&g, 3, 0)[1].clone()];
    assert!(matches!(
        psi_cochain(&g, mixed),
        Err(Error::DegreeMismatch { .. })
    ));
    let t = Arc::new(trefoil());
    let f: Cochain<NormalForm> = Cochain::zero(1);
    assert!(matches!(
        mu_free_pullback(&t, &f),
        Err(Error::NotFreeProduct(_))
    ));
}

#[test]
fn families_are_alternating_and_invariant() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        for degree in [2, 3] {
            let family = seeded_family(&g, degree, 7);
            for v in 0..g.vertex_count() {
                let pts = g.sv_points(v, 1, 2);
                let mut rng = Stream(0xabcdef + v as u64);
                let sample: Vec<Vec<SvPoint>> = (0..300)
                    .map(|_| (0..=degree).map(|_| rng.pick(&pts).clone()).collect())
                    .collect();
                assert!(
                    alternation_failures(&family[v], &sample)
                        .unwrap()
                        .is_empty(),
                    "{name}"
                );
                for x in &sample {
                    for k in [-3, 1, 2] {
                        let h = elem(&g, v, k);
                        let y: Vec<SvPoint> = x.iter().map(|s| g.sv_act(v, &h, s)).collect();
                        assert_eq!(
                            family[v].evaluate(&y).unwrap(),
                            family[v].evaluate(x).unwrap(),
                            "{name}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn phi_after_psi_is_identity() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        for degree in [2, 3] {
            let mut family = Vec::new();
            let mut points = Vec::new();
            for v in 0..g.vertex_count() {
                let pts = g.sv_points(v, 1, 2);
                let table = tabulate(&g, v, degree, &pts, 5).unwrap();
                family.push(invariant_cochain(&g, v, degree, FamilyValues::Table(table)));
                points.push(pts);
            }
            let psi = psi_cochain(&g, family.clone()).unwrap();
            for v in 0..g.vertex_count() {
                let back = phi_pullback(&g, v, &psi).unwrap();
                let mut nonzero = 0;
                for x in tuples(&points[v], degree + 1) {
                    let f = family[v].evaluate(&x).unwrap();
                    nonzero += usize::from(!f.is_zero());
                    assert_eq!(back.evaluate(&x).unwrap(), f, "{name} degree {degree}");
                }
                assert!(nonzero > 0, "{name}");
            }
        }
    }
}

#[test]
fn psi_is_a_bounded_chain_map() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        let family = seeded_family(&g, 2, 21);
        let pts = s_points(&g, 2, 2);
        let mut rng = Stream(0x1234_5678);
        let sample: Vec<Vec<SPoint>> = (0..400)
            .map(|_| (0..4).map(|_| rng.pick(&pts).clone()).collect())
            .collect();
        let report = verify_chain_map(&g, &family, &sample).unwrap();
        assert_eq!(report.checked, 400);
        assert!(report.passed(), "{name}: {:?}", report.failures.first());
    }
}

#[test]
fn zero_family_is_a_chain_map() {
    let g = Arc::new(bs12());
    let family = vec![Cochain::zero(2)];
    let pts = s_points(&g, 1, 1);
    let sample: Vec<Vec<SPoint>> = tuples(&pts[..6], 4);
    assert!(verify_chain_map(&g, &family, &sample).unwrap().passed());
}

#[test]
fn psi_is_equivariant() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        let family = seeded_family(&g, 2, 8);
        let pts = s_points(&g, 2, 2);
        let gammas = g.enumerate_elements(2, 2);
        let mut rng = Stream(99);
        for _ in 0..300 {
            let x: Vec<SPoint> = (0..3).map(|_| rng.pick(&pts).clone()).collect();
            let gamma = rng.pick(&gammas);
            let y: Vec<SPoint> = x.iter().map(|p| g.act(gamma, p).unwrap()).collect();
            assert_eq!(
                g.psi_eval(&family, &x).unwrap(),
                g.psi_eval(&family, &y).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn only_the_barycenter_contributes() {
    for (name, g) in all_graphs() {
        let g = Arc::new(g);
        let family = seeded_family(&g, 3, 4);
        let pts = s_points(&g, 1, 1);
        let mut rng = Stream(4242);
        let centers: Vec<_> = pts
            .iter()
            .map(|p| g.project(p).unwrap())
            .filter(|n| n.is_vertex())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for _ in 0..150 {
            let x: Vec<SPoint> = (0..4).map(|_| rng.pick(&pts).clone()).collect();
            let ys: Vec<_> = x.iter().map(|p| g.project(p).unwrap()).collect();
            let bary = g.barycenters(&ys);
            assert!(bary.len() <= 1, "{name}");
            for w in &centers {
                let t = g.psi_term(&family, w, &x).unwrap();
                if !bary.contains(w) {
                    assert!(t.is_zero(), "{name}");
                }
            }
        }
    }
}

#[test]
fn mu_pullback_reads_group_coordinates() {
    let g = Arc::new(zz());
    let one: Cochain<NormalForm> = Cochain::new(0, q(1), false, |_| Ok(q(1)));
    let pulled = mu_free_pullback(&g, &one).unwrap();
    let pts = s_points(&g, 2, 1);
    for p in &pts {
        assert_eq!(pulled.evaluate(std::slice::from_ref(p)).unwrap(), q(1));
    }
    let eq: Cochain<NormalForm> = Cochain::new(1, q(1), false, |x| {
        Ok(if x[0] == x[1] { q(1) } else { Q::zero() })
    });
    let pulled = mu_free_pullback(&g, &eq).unwrap();
    for a in &pts {
        for b in &pts {
            let same = g.group_coordinate(a).unwrap() == g.group_coordinate(b).unwrap();
            assert_eq!(
                pulled.evaluate(&[a.clone(), b.clone()]).unwrap(),
                if same { q(1) } else { Q::zero() }
            );
        }
    }
    let e = g.edge_point(&word(&g, &[("b", 2), ("a", -1)]), 1).unwrap();
    assert_eq!(
        g.group_coordinate(&e).unwrap(),
        word(&g, &[("b", 2), ("a", -1)])
    );
}

#[test]
fn dropped_sign_is_detected() {
    let g = Arc::new(
        instances::build(instances::free_product_zz())
            .with_faults(Faults::by_name("alternation-sign").unwrap()),
    );
    let family = seeded_family(&g, 2, 1);
    let pts = g.sv_points(0, 1, 2);
    let ts = tuples(&pts, 3);
    assert!(!alternation_failures(&family[0], &ts).unwrap().is_empty());
    let psi = psi_cochain(&g, family.clone()).unwrap();
    let back = phi_pullback(&g, 0, &psi).unwrap();
    let mismatches = ts
        .iter()
        .filter(|x| back.evaluate(x).unwrap() != family[0].evaluate(x).unwrap())
        .count();
    assert!(mismatches > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_keys_are_invariant(k in -6i64..6, picks in proptest::collection::vec(0usize..40, 3), which in 0usize..3) {
        let (_, g) = &all_graphs()[which];
        let v = 0;
        let pts = g.sv_points(v, 1, 3);
        let x: Vec<SvPoint> = picks.iter().map(|&i| pts[i % pts.len()].clone()).collect();
        let h = elem(g, v, k);
        let y: Vec<SvPoint> = x.iter().map(|s| g.sv_act(v, &h, s)).collect();
        prop_assert_eq!(g.alternating_key(v, &x).unwrap(), g.alternating_key(v, &y).unwrap());
    }
}
