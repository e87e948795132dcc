mod common;

use proptest::prelude::*;
use svdyn::explicit_graph;
use svdyn::oracle::{brute_force, domain_mixing, oracle_check};
use svdyn::recurrence::{condense, final_classes, final_recurrent_set, recurrent_set};
use svdyn::spectral::{is_mixing, is_transitive};
use svdyn::CellSet;

fn rows_strategy() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n.min(4)), n)
            .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().collect()).collect())
    })
}

#[test]
fn fixtures_agree_with_oracle() {
    for (name, g) in common::graph_fixtures() {
        let items = oracle_check(&g).unwrap();
        for item in &items {
            assert!(item.agree, "{name}: {item:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_graphs_agree_with_oracle(rows in rows_strategy()) {
        let g = explicit_graph(&common::unit(rows.len()), rows).unwrap();
        for item in oracle_check(&g).unwrap() {
            prop_assert!(item.agree, "{:?}", item);
        }
    }

    #[test]
    fn final_set_inside_recurrent_set(rows in rows_strategy()) {
        let g = explicit_graph(&common::unit(rows.len()), rows).unwrap();
        let c = condense(&g);
        prop_assert!(final_recurrent_set(&c).is_subset(&recurrent_set(&c)));
        let facts = brute_force(&g).unwrap();
        prop_assert_eq!(final_recurrent_set(&c).to_vec(), facts.omega_final);
    }

    #[test]
    fn mixing_matches_eventual_hitting(rows in rows_strategy()) {
        let g = explicit_graph(&common::unit(rows.len()), rows).unwrap();
        let all = CellSet::full(g.space());
        let ids: Vec<usize> = all.to_vec();
        prop_assert_eq!(is_mixing(&g, &all), domain_mixing(&g, &ids));
    }

    #[test]
    fn transitive_graphs_have_one_class(rows in rows_strategy()) {
        let g = explicit_graph(&common::unit(rows.len()), rows).unwrap();
        let all = CellSet::full(g.space());
        if is_transitive(&g, &all) {
            let c = condense(&g);
            let image = g.full_image();
            prop_assert_eq!(recurrent_set(&c), image.clone());
            prop_assert_eq!(final_recurrent_set(&c), image.clone());
            prop_assert_eq!(final_classes(&g, &c).unwrap().len(), 1);
            // The forward orbit of any single cell sweeps the image.
            for x in 0..g.len() {
                let start = CellSet::from_cells(g.space(), [x]).unwrap();
                let mut reached = CellSet::empty(g.space());
                let mut cur = start;
                for _ in 0..g.len() {
                    cur = g.image(&cur);
                    reached.union_with(&cur);
                }
                prop_assert_eq!(&reached, &image);
            }
        }
    }
}
