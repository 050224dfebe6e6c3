use proptest::prelude::*;
use tcg::esp_core::EsDecl;
use tcg::{EventSet, EventStructure, Polarity};

#[derive(Clone, Debug)]
struct Raw {
    pol: Vec<bool>,
    edges: Vec<(usize, usize)>,
    conflicts: Vec<(usize, usize)>,
}

fn raw() -> impl Strategy<Value = Raw> {
    (0usize..=8).prop_flat_map(|n| {
        let pair = (0..n.max(1), 0..n.max(1));
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(pair.clone(), 0..=n + 2),
            proptest::collection::vec(pair, 0..=3),
        )
            .prop_map(move |(pol, e, c)| Raw {
                pol,
                // only forward edges, so the order is acyclic
                edges: e.into_iter().filter(|&(a, b)| a < b && b < n).collect(),
                conflicts: c.into_iter().filter(|&(a, b)| a < b && b < n).collect(),
            })
    })
}

fn decl(r: &Raw) -> EsDecl {
    let mut d = EsDecl::default();
    for (i, &p) in r.pol.iter().enumerate() {
        d.event(if p { Polarity::Positive } else { Polarity::Negative }, &format!("e{}", i));
    }
    for &(a, b) in &r.edges {
        d.edge(a, b);
    }
    for &(a, b) in &r.conflicts {
        d.conflict(a, b);
    }
    d
}

/// `leq[a][b]` iff `a ≤ b`, from the raw forward edges.
fn order(r: &Raw) -> Vec<Vec<bool>> {
    let n = r.pol.len();
    let mut leq = vec![vec![false; n]; n];
    for a in 0..n {
        leq[a][a] = true;
    }
    for b in 0..n {
        for &(x, y) in &r.edges {
            if y == b {
                for a in 0..n {
                    if leq[a][x] {
                        leq[a][b] = true;
                    }
                }
            }
        }
    }
    leq
}

fn brute_configurations(r: &Raw) -> Vec<u128> {
    let n = r.pol.len();
    let leq = order(r);
    let clash = |a: usize, b: usize| {
        r.conflicts
            .iter()
            .any(|&(x, y)| (leq[x][a] && leq[y][b]) || (leq[y][a] && leq[x][b]))
    };
    (0u128..1 << n)
        .filter(|&x| {
            let has = |e: usize| x >> e & 1 == 1;
            (0..n).all(|b| !has(b) || (0..n).all(|a| !leq[a][b] || has(a)))
                && (0..n).all(|a| (0..n).all(|b| !(has(a) && has(b) && clash(a, b))))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn configurations_match_subset_scan(r in raw()) {
        let d = decl(&r);
        let Ok(es) = EventStructure::new(&d) else {
            // a conflict inside one causal history
            let leq = order(&r);
            prop_assert!(r.conflicts.iter().any(|&(a, b)| (0..r.pol.len()).any(|c| leq[a][c] && leq[b][c])));
            return Ok(());
        };
        let mut got: Vec<u128> = es.configurations().unwrap().iter().map(|x| x.0).collect();
        got.sort();
        prop_assert_eq!(got, brute_configurations(&r));
    }

    #[test]
    fn configurations_are_stable(r in raw()) {
        let Ok(es) = EventStructure::new(&decl(&r)) else { return Ok(()) };
        let configs = es.configurations().unwrap();
        for &x in &configs {
            prop_assert!(es.is_configuration(x));
            for &y in &configs {
                prop_assert!(es.is_configuration(x.inter(y)));
                let u = x.union(y);
                let consistent = u.iter().all(|a| es.conflicts(a).is_disjoint(u));
                prop_assert_eq!(consistent, es.is_configuration(u));
            }
        }
    }

    #[test]
    fn plus_covered_iff_no_negative_maximal(r in raw()) {
        let Ok(es) = EventStructure::new(&decl(&r)) else { return Ok(()) };
        for x in es.configurations().unwrap() {
            let neg_max = es.maximal_events(x).iter().any(|e| es.polarity(e) == Polarity::Negative);
            prop_assert_eq!(es.is_plus_covered(x), !neg_max);
        }
        prop_assert!(es.is_plus_covered(EventSet::EMPTY));
    }

    #[test]
    fn decl_round_trip(r in raw()) {
        let Ok(es) = EventStructure::new(&decl(&r)) else { return Ok(()) };
        let again = EventStructure::new(&es.to_decl()).unwrap();
        prop_assert_eq!(again, es);
    }
}
