use std::time::Duration;

use pekr_core::counting::build_table;
use pekr_core::family::{
    construct_hm, construct_trivial, is_t_intersecting, triviality_witness, HmWitness,
};
use pekr_core::search::{build_graph, max_family, Mode, SearchOptions};
use pekr_core::Error;

fn opts(threads: usize) -> SearchOptions {
    SearchOptions {
        timeout: None,
        threads: Some(threads),
    }
}

#[test]
fn reports_do_not_depend_on_threads() {
    for (n, t, mode) in [
        (5, 1, Mode::Nontrivial),
        (6, 1, Mode::Unrestricted),
        (6, 2, Mode::Nontrivial),
        (6, 1, Mode::Nontrivial),
    ] {
        let g = build_graph(n, t).unwrap();
        let one = max_family(&g, mode, &opts(1)).unwrap();
        let four = max_family(&g, mode, &opts(4)).unwrap();
        assert_eq!(one.to_json(false), four.to_json(false));
        assert_eq!(one.nodes, four.nodes);
    }
}

#[test]
fn optima_dominate_constructions() {
    let table = build_table(8);
    for n in 2..=6 {
        for t in 1..n {
            let g = build_graph(n, t).unwrap();
            let r = max_family(&g, Mode::Unrestricted, &opts(2)).unwrap();
            let triv = construct_trivial(n, &(1..=t).collect::<Vec<_>>()).unwrap();
            assert!(is_t_intersecting(&triv, t));
            assert!(
                r.optimum.to_u64().unwrap() >= triv.len() as u64,
                "n={} t={}",
                n,
                t
            );
            assert_eq!(table.bell(n - t).unwrap(), triv.len() as u64);

            if n >= t + 3 {
                let h = construct_hm(n, &HmWitness::new((1..=t).collect(), n).unwrap()).unwrap();
                let r = max_family(&g, Mode::Nontrivial, &opts(2)).unwrap();
                assert!(
                    r.optimum.to_u64().unwrap() >= h.len() as u64,
                    "n={} t={}",
                    n,
                    t
                );
                assert!(is_t_intersecting(&r.witness, t));
                assert_eq!(triviality_witness(&r.witness, t).unwrap(), None);
            }
        }
    }
}

#[test]
fn exhausted_budget_reports_best_so_far() {
    let g = build_graph(7, 1).unwrap();
    let r = max_family(
        &g,
        Mode::Nontrivial,
        &SearchOptions {
            timeout: Some(Duration::from_millis(1)),
            threads: Some(1),
        },
    )
    .unwrap();
    assert!(!r.optimal);
    // still a valid non-trivial family, at least as large as H
    assert!(is_t_intersecting(&r.witness, 1));
    assert_eq!(triviality_witness(&r.witness, 1).unwrap(), None);
    assert!(r.witness.len() >= 152);
}

#[test]
fn json_shape() {
    let g = build_graph(2, 1).unwrap();
    let r = max_family(&g, Mode::Unrestricted, &opts(1)).unwrap();
    assert_eq!(
        r.to_json(false),
        r#"{"n":2,"t":1,"mode":"unrestricted","optimum":"1","optimal":true,"witness":["1,2"],"hm_witness":null,"bounds":{"hm_size":null,"trivial":"1","equals_hm":null,"equals_trivial":true},"nodes":4}"#
    );
    assert!(r.to_json(true).contains(r#""ms":"#));
}

#[test]
fn limits() {
    assert!(matches!(build_graph(99, 1), Err(Error::Limit { .. })));
}
