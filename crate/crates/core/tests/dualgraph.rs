mod common;

use common::{alpha_by_conjugates, config, local_pairs};
use keyform::{build_dual_graph, export_graph, CharacteristicData, DualGraph, GraphFormat};
use proptest::prelude::*;

/// Partial quotients of `p/q` summed: the number of blow-ups resolving
/// `v^p = u^q` together with the line `u = 0`, counted until the branch is
/// transversal to a single curve.
fn euclid_steps(mut p: i64, mut q: i64) -> i64 {
    let mut n = 0;
    while q != 0 {
        n += p / q;
        (p, q) = (q, p % q);
    }
    n
}

#[test]
fn dot_for_eight_extra_blowups() {
    let g = build_dual_graph(&CharacteristicData::new(vec![(3, 5)]).unwrap(), 8).unwrap();
    let dot = export_graph(&g, GraphFormat::Dot);
    assert!(dot.starts_with("graph G {\n"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 12);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 11);
    assert!(dot.contains("\"L\" [label=\"w=-1\", shape=box];"));
}

#[test]
fn json_keeps_field_names() {
    let g = build_dual_graph(&CharacteristicData::new(vec![(3, 5)]).unwrap(), 0).unwrap();
    let json = export_graph(&g, GraphFormat::Json);
    assert!(json.contains("\"is_Ltilde\": true"));
    assert!(json.contains("\"estar_attachment\""));
    assert!(DualGraph::from_json("{\"vertices\": 3}").is_err());
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn single_pair_vertex_count(p in 2i64..=9, q in 1i64..=8, r in 0u32..=15) {
        prop_assume!(q < p && common::gcd(q, p) == 1);
        let g = build_dual_graph(&CharacteristicData::new(vec![(q, p)]).unwrap(), r).unwrap();
        prop_assert_eq!(g.vertices.len() as i64, euclid_steps(p, q) + r as i64);
        // The origin plus the centers on the line until the branch leaves it.
        let on_line = if q == 1 { p } else { p / q + 1 };
        prop_assert_eq!(g.vertices[0].weight, 1 - on_line);
    }

    #[test]
    fn graphs_are_forests_with_one_line(pairs in local_pairs(), r in 0u32..=12) {
        let g = build_dual_graph(&pairs, r).unwrap();
        prop_assert_eq!(g.vertices.len(), g.edges.len() + g.component_count());
        prop_assert_eq!(g.vertices.iter().filter(|v| v.is_ltilde).count(), 1);
        prop_assert!(g.vertices[0].weight <= -1);
        prop_assert!(g.vertices[1..].iter().all(|v| v.weight <= -2));
        prop_assert!(!g.estar_attachment.is_empty() && g.estar_attachment.len() <= 2);
        if r > 0 {
            prop_assert_eq!(g.component_count(), 1);
        }
    }

    #[test]
    fn negative_definite_iff_alpha_below_p_squared(pairs in local_pairs(), r in 0u32..=40) {
        let g = build_dual_graph(&pairs, r).unwrap();
        let big_p = pairs.polydromy();
        prop_assert_eq!(g.is_negative_definite(), alpha_by_conjugates(&pairs, r) < big_p * big_p);
    }

    #[test]
    fn json_round_trip(pairs in local_pairs(), r in 0u32..=12) {
        let g = build_dual_graph(&pairs, r).unwrap();
        prop_assert_eq!(DualGraph::from_json(&export_graph(&g, GraphFormat::Json)).unwrap(), g);
    }
}
