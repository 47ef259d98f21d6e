use gogcone::bundled;
use gogcone::format::{
    graph_from_str, graph_to_string, pair_from_str, CochainEntry, CochainJson, PairJson,
};
use gogcone::literal::{self, parse_word, word_to_string};
use gogcone::sample::random_pair;
use gogcone_core::instances;
use gogcone_core::rational::frac;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

#[test]
fn graph_json_round_trips_exactly() {
    for name in bundled::GRAPHS {
        let json = bundled::graph(name).unwrap();
        let text = graph_to_string(&json);
        let back = graph_from_str(&text).unwrap();
        assert_eq!(graph_to_string(&back), text, "{name}");
        assert_eq!(back.to_spec(), json.to_spec());
        back.build().unwrap();
    }
}

#[test]
fn graph_json_rejects_unknown_fields() {
    let mut v: serde_json::Value =
        serde_json::from_str(&graph_to_string(&bundled::graph("zz").unwrap())).unwrap();
    v["colour"] = "red".into();
    assert!(graph_from_str(&v.to_string()).is_err());
}

#[test]
fn pair_json_round_trips() {
    for name in bundled::PAIRS {
        let json = bundled::pair(name).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back = pair_from_str(&text).unwrap();
        assert_eq!(back, json);
        let pair = back.pair().unwrap();
        let class = back.class_in(pair.ambient()).unwrap().unwrap();
        assert_eq!(PairJson::from_pair(&pair, Some(&class)), json, "{name}");
    }
}

#[test]
fn simplicial_shorthand() {
    let json: PairJson = serde_json::from_str(
        r#"{"simplices": [["0", "1", "2"]], "subcomplex": [[], ["0,1", "1,2", "0,2"]],
            "class": {"degree": 2, "chain": {"0,1,2": "1"}}}"#,
    )
    .unwrap();
    let pair = json.pair().unwrap();
    let class = json.class_in(pair.ambient()).unwrap().unwrap();
    assert_eq!(
        pair.homology_seminorm(&class, &frac(0, 1)).unwrap().value,
        frac(1, 1)
    );
    assert_eq!(
        pair.homology_seminorm(&class, &frac(2, 1)).unwrap().value,
        frac(7, 1)
    );
}

#[test]
fn cochain_tables_respect_orbits() {
    let g = Arc::new(instances::build(instances::free_product_zz()));
    let entry = |t: &[&str], v: &str| CochainEntry {
        tuple: t.iter().map(|s| s.to_string()).collect(),
        value: v.into(),
    };
    let table = |entries: Vec<CochainEntry>| CochainJson {
        degree: 2,
        seed: None,
        vertices: BTreeMap::from([("v".to_string(), entries)]),
        tuples: Vec::new(),
    };
    let ok = table(vec![
        entry(&["1", "a", "a^3"], "1/2"),
        entry(&["a", "1", "a^3"], "-1/2"),
    ]);
    let family = ok.family(&g).unwrap();
    let x: Vec<_> = ["a", "a^2", "a^4"]
        .iter()
        .map(|s| literal::parse_sv_point(&g, 0, s).unwrap())
        .collect();
    assert_eq!(family[0].evaluate(&x).unwrap(), frac(1, 2));
    let contradiction = table(vec![
        entry(&["1", "a", "a^3"], "1/2"),
        entry(&["a", "1", "a^3"], "1/2"),
    ]);
    assert!(contradiction.family(&g).is_err());
    let repeated = table(vec![entry(&["1", "1", "a"], "1")]);
    assert!(repeated.family(&g).is_err());
}

fn word_strategy() -> impl Strategy<Value = Vec<(&'static str, i64)>> {
    prop::collection::vec(
        (prop::sample::select(vec!["a", "b", "x_1", "t'"]), -5i64..=5),
        0..8,
    )
}

fn reduce(w: &[(&str, i64)]) -> Vec<(String, num_bigint::BigInt)> {
    let mut out: Vec<(String, i64)> = Vec::new();
    for (n, k) in w {
        match out.last_mut() {
            Some((m, j)) if m == n => {
                *j += k;
                if *j == 0 {
                    out.pop();
                }
            }
            _ if *k != 0 => out.push((n.to_string(), *k)),
            _ => {}
        }
    }
    out.into_iter().map(|(n, k)| (n, k.into())).collect()
}

proptest! {
    #[test]
    fn printed_words_parse_back(w in word_strategy()) {
        let spec: Vec<(String, num_bigint::BigInt)> = w.iter().map(|(n, k)| (n.to_string(), (*k).into())).collect();
        let text = word_to_string(&spec);
        prop_assert_eq!(parse_word(&text).unwrap(), reduce(&w));
    }

    #[test]
    fn random_pairs_round_trip(seed in 0u64..500) {
        let p = random_pair(&mut ChaCha8Rng::seed_from_u64(seed));
        let json = PairJson::from_pair(&p.pair, Some(&p.class));
        let back = pair_from_str(&serde_json::to_string(&json).unwrap()).unwrap();
        let pair = back.pair().unwrap();
        let class = back.class_in(pair.ambient()).unwrap().unwrap();
        prop_assert_eq!(&class, &p.class);
        let theta = frac(1, 2);
        prop_assert_eq!(
            pair.homology_seminorm(&class, &theta).unwrap().value,
            p.pair.homology_seminorm(&p.class, &theta).unwrap().value
        );
    }
}
