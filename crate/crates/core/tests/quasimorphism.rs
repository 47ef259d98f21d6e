mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use gogcone_core::presentations::{GraphOfGroups, NormalForm};
use gogcone_core::quasimorphism::{homogenize, inhom_coboundary, OddFunction, RolliFamily};
use gogcone_core::rational::{frac, q};
use gogcone_core::{Error, Q};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn family(fa: OddFunction, fb: OddFunction) -> RolliFamily {
    RolliFamily::new(Arc::new(zz()), vec![fa, fb]).unwrap()
}

fn sgn_a() -> RolliFamily {
    family(OddFunction::Sign, OddFunction::Zero)
}

fn w(f: &RolliFamily, letters: &[(&str, i64)]) -> NormalForm {
    word(f.graph(), letters)
}

#[test]
fn alpha_examples() {
    let f = sgn_a();
    assert_eq!(f.alpha(&f.graph().identity()).unwrap(), q(0));
    assert_eq!(
        f.alpha(&w(&f, &[("a", 1), ("b", 1), ("a", -2)])).unwrap(),
        q(0)
    );
    assert_eq!(f.alpha(&w(&f, &[("a", 1), ("b", 1)])).unwrap(), q(1));
}

#[test]
fn rolli_examples() {
    let f = sgn_a();
    let a = w(&f, &[("a", 1)]);
    let a_inv = w(&f, &[("a", -1)]);
    assert_eq!(f.rolli(&a, &a_inv).unwrap(), q(0));
    assert_eq!(f.rolli(&a, &a).unwrap(), q(1));
    assert_eq!(f.rolli_oracle(&a, &a).unwrap(), q(1));
    let x = w(&f, &[("a", 1), ("b", 1)]);
    let y = w(&f, &[("b", -1), ("a", 1)]);
    assert_eq!(f.rolli(&x, &y).unwrap(), q(1));
    assert_eq!(f.rolli_oracle(&x, &y).unwrap(), q(1));
}

fn families() -> Vec<RolliFamily> {
    vec![
        sgn_a(),
        family(OddFunction::Sign, OddFunction::Sign),
        family(
            OddFunction::Clamped(BigInt::from(2)),
            OddFunction::ParityWindow(BigInt::from(3)),
        ),
        family(
            OddFunction::table(BTreeMap::from([
                (BigInt::from(1), frac(1, 3)),
                (BigInt::from(-1), frac(-1, 3)),
                (BigInt::from(2), q(-2)),
                (BigInt::from(-2), q(2)),
            ]))
            .unwrap(),
            OddFunction::Clamped(BigInt::from(3)),
        ),
    ]
}

#[test]
fn formula_matches_coboundary_of_alpha() {
    for f in families() {
        let elems = f.graph().enumerate_elements(3, 2);
        let bound = q(3) * f.sup_bound();
        for x in &elems {
            for y in &elems {
                let r = f.rolli(x, y).unwrap();
                assert_eq!(r, f.rolli_oracle(x, y).unwrap());
                assert!(r.abs() <= bound);
            }
        }
    }
}

#[test]
fn rolli_is_a_cocycle() {
    for f in families() {
        let elems = f.graph().enumerate_elements(3, 1);
        let g = f.graph();
        for x in &elems {
            for y in &elems {
                let xy = g.multiply(x, y).unwrap();
                for z in &elems {
                    let yz = g.multiply(y, z).unwrap();
                    let d = f.rolli(y, z).unwrap() - f.rolli(&xy, z).unwrap()
                        + f.rolli(x, &yz).unwrap()
                        - f.rolli(x, y).unwrap();
                    assert!(d.is_zero());
                }
            }
        }
    }
}

#[test]
fn generic_coboundary_agrees() {
    let f = families().remove(2);
    let g = f.graph().clone();
    let d_alpha = inhom_coboundary(&g, &f.alpha_cochain());
    let d_r = inhom_coboundary(&g, &f.rolli_cochain());
    let elems = g.enumerate_elements(2, 2);
    for x in &elems {
        for y in elems.iter().step_by(3) {
            let pair = [x.clone(), y.clone()];
            assert_eq!(d_alpha.evaluate(&pair).unwrap(), f.rolli(x, y).unwrap());
            for z in elems.iter().step_by(7) {
                assert!(d_r
                    .evaluate(&[x.clone(), y.clone(), z.clone()])
                    .unwrap()
                    .is_zero());
            }
        }
    }
}

#[test]
fn alpha_is_odd() {
    for f in families() {
        for x in f.graph().enumerate_elements(4, 2) {
            let inv = f.graph().inverse(&x).unwrap();
            assert_eq!(f.alpha(&inv).unwrap(), -f.alpha(&x).unwrap());
        }
    }
}

#[test]
fn defect_examples() {
    let zero = family(OddFunction::Zero, OddFunction::Zero);
    assert_eq!(zero.defect(6, 3), q(0));
    assert_eq!(sgn_a().defect(6, 3), q(1));
    assert_eq!(
        family(OddFunction::Sign, OddFunction::Sign).defect(6, 3),
        q(1)
    );
}

#[test]
fn defect_matches_exhaustive_pairs() {
    for f in families() {
        let mut last = Q::zero();
        for (l, e) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let d = f.defect(l, e);
            assert_eq!(d, f.defect_exhaustive(l, e).unwrap());
            assert!(d >= last);
            assert!(d <= q(3) * f.sup_bound());
            last = d;
        }
    }
}

#[test]
fn homogenization_examples() {
    let f = sgn_a();
    let g = f.graph().clone();
    let h1 = homogenize(&g, &f.alpha_cochain(), Q::zero());
    let a = w(&f, &[("a", 1)]);
    assert_eq!(h1.evaluate(&[g.identity(), a.clone()]).unwrap(), q(1));
    let h2 = homogenize(&g, &f.rolli_cochain(), q(3));
    let elems = g.enumerate_elements(2, 2);
    for x in elems.iter().step_by(3) {
        for y in elems.iter().step_by(5) {
            let xy = g.multiply(x, y).unwrap();
            let r = f.rolli(x, y).unwrap();
            assert_eq!(
                h2.evaluate(&[g.identity(), x.clone(), xy.clone()]).unwrap(),
                r
            );
            for t in elems.iter().step_by(11) {
                let moved = [
                    t.clone(),
                    g.multiply(t, x).unwrap(),
                    g.multiply(t, &xy).unwrap(),
                ];
                assert_eq!(h2.evaluate(&moved).unwrap(), r);
            }
        }
    }
}

#[test]
fn diagram_examples() {
    let f = sgn_a();
    let g = f.graph();
    let v = g.vertex_index("v").unwrap();
    let a = w(&f, &[("a", 1)]);
    let a2 = w(&f, &[("a", 2)]);
    let t = [g.identity(), a.clone(), a2];
    assert_eq!(f.predicted_barycenter(&t).unwrap(), Some(g.base_node(v)));
    let out = f.diagram_at(&t, [v, v, v]).unwrap();
    assert_eq!(out.barycenter_ok, Some(true));
    assert_eq!(out.via_psi, q(1));
    assert_eq!(out.via_r, q(1));
    let t = [g.identity(), a.clone(), w(&f, &[("a", 1), ("b", 1)])];
    let report = f.diagram_check(&[t]).unwrap();
    assert!(report.passed(), "{report:?}");
    let t = [a.clone(), a.clone(), g.identity()];
    for labels in [[0, 0, 1], [1, 1, 0]] {
        let out = f.diagram_at(&t, labels).unwrap();
        assert_eq!(out.via_psi, q(0));
        assert_eq!(out.via_r, q(0));
    }
}

#[test]
fn diagram_commutes_on_small_triples() {
    for f in families() {
        let g = f.graph();
        let elems = g.enumerate_elements(2, 1);
        let mut triples = Vec::new();
        for x in &elems {
            for y in &elems {
                triples.push([g.identity(), x.clone(), y.clone()]);
            }
        }
        let report = f.diagram_check(&triples).unwrap();
        assert!(
            report.passed(),
            "{:?} {:?}",
            report.barycenter_failures.first(),
            report.value_failures.first()
        );
        assert!(report.barycenter_checked > 0);
    }
}

#[test]
fn rejects_bad_input() {
    let t = Arc::new(trefoil());
    assert!(matches!(
        RolliFamily::new(t, vec![OddFunction::Sign, OddFunction::Sign]),
        Err(Error::NotFreeProduct(_))
    ));
    let bad = OddFunction::table(BTreeMap::from([(BigInt::from(1), q(1))]));
    assert!(matches!(bad, Err(Error::NotOdd(_))));
    let g = Arc::new(zz());
    assert!(matches!(
        RolliFamily::new(
            g.clone(),
            vec![OddFunction::Clamped(BigInt::zero()), OddFunction::Zero]
        ),
        Err(Error::NotOdd(_))
    ));
    assert!(matches!(
        RolliFamily::new(g, vec![OddFunction::Sign]),
        Err(Error::VertexMismatch(_))
    ));
}

fn random_family(g: &Arc<GraphOfGroups>, vals: &[i64]) -> RolliFamily {
    let mut t = BTreeMap::new();
    for (i, &v) in vals.iter().enumerate() {
        let k = BigInt::from(i as i64 + 1);
        t.insert(-k.clone(), frac(-v, 4));
        t.insert(k, frac(v, 4));
    }
    let f = OddFunction::table(t).unwrap();
    RolliFamily::new(g.clone(), vec![f.clone(), f]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tables_satisfy_the_formula(vals in proptest::collection::vec(-8i64..8, 3), i in 0usize..5000, j in 0usize..5000) {
        let g = Arc::new(zz());
        let f = random_family(&g, &vals);
        let elems = g.enumerate_elements(4, 3);
        let x = &elems[i % elems.len()];
        let y = &elems[j % elems.len()];
        prop_assert_eq!(f.rolli(x, y).unwrap(), f.rolli_oracle(x, y).unwrap());
        prop_assert!(f.rolli(x, y).unwrap().abs() <= q(3) * f.sup_bound());
    }
}
