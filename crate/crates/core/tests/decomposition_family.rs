mod common;

use svdyn::spectral::{decompose, is_mixing, is_transitive, period, power_mixing_on, return_time};
use svdyn::{fatten, BaseMap, CellSet, CellSpace, TransitionGraph};

fn family(interval_cells: &[usize], torus_sides: &[usize]) -> Vec<(String, TransitionGraph)> {
    let mut out = Vec::new();
    let maps = [
        ("identity", BaseMap::identity()),
        ("doubling", BaseMap::doubling()),
        ("logistic-3.6", BaseMap::logistic(3.6).unwrap()),
        ("logistic-3.9", BaseMap::logistic(3.9).unwrap()),
    ];
    for &n in interval_cells {
        let space = common::unit(n);
        for (name, map) in &maps {
            for widths in [1.0, 2.0, 4.0] {
                let eps = widths * space.cell_size();
                out.push((format!("{name} n={n} eps={widths}w"), fatten(&space, map, eps).unwrap()));
            }
        }
    }
    let cat = BaseMap::toral([[2, 1], [1, 1]]).unwrap();
    for &side in torus_sides {
        let space = CellSpace::torus(side, side).unwrap();
        for widths in [1.0, 2.0, 4.0] {
            let eps = widths * space.cell_size();
            out.push((format!("cat {side}x{side} eps={widths}w"), fatten(&space, &cat, eps).unwrap()));
        }
    }
    out
}

#[test]
fn decomposition_items_hold() {
    for (name, g) in family(&[64, 256], &[16, 32]) {
        let d = decompose(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!d.classes.is_empty(), "{name}");
        for class in &d.classes {
            let lambda = &class.class_cells;
            assert_eq!(&g.image(lambda), lambda, "{name}: class not invariant");
            let n = class.period;
            for k in 0..n {
                assert_eq!(g.image(&class.components[k]), class.components[(k + 1) % n], "{name}: component {k}");
            }
            assert!(is_transitive(&g, lambda), "{name}: class not transitive");
            assert_eq!(period(&g, lambda).unwrap(), n, "{name}: period");
            for comp in &class.components {
                assert!(power_mixing_on(&g, n, comp), "{name}: power not mixing");
            }
        }
    }
}

#[test]
fn transitive_on_connected_space_means_period_one() {
    for (name, g) in family(&[64, 256], &[16, 32]) {
        let image = g.full_image();
        if is_transitive(&g, &image) {
            assert_eq!(period(&g, &image).unwrap(), 1, "{name}");
            assert!(is_mixing(&g, &image), "{name}");
        }
    }
}

#[test]
fn invariant_connected_pieces_mix() {
    for (name, g) in family(&[64], &[16]) {
        let d = decompose(&g).unwrap();
        for class in &d.classes {
            for comp in &class.components {
                let parts = g.space().spatial_components(comp);
                if parts.len() == 1 && g.image(comp).is_subset(comp) && is_transitive(&g, comp) {
                    assert!(is_mixing(&g, comp), "{name}");
                }
            }
        }
    }
}

#[test]
fn fattened_rows_are_connected() {
    for (name, g) in family(&[64], &[16]) {
        if name.starts_with("doubling") {
            continue;
        }
        assert!(g.rows_connected(), "{name}");
    }
}

#[test]
fn transitivity_is_monotone_in_radius() {
    let cat = BaseMap::toral([[2, 1], [1, 1]]).unwrap();
    let space = CellSpace::torus(24, 24).unwrap();
    let mut was = false;
    for k in 1..=6 {
        let g = fatten(&space, &cat, k as f64 * 0.01).unwrap();
        let now = is_transitive(&g, &CellSet::full(&space));
        assert!(!was || now);
        was = now;
        let wider = fatten(&space, &cat, k as f64 * 0.01 + 0.005).unwrap();
        for c in 0..g.len() {
            assert!(g.row_set(c).is_subset(&wider.row_set(c)));
        }
    }
    assert!(was);
}

#[test]
fn open_sets_in_the_image_return() {
    let space = common::unit(64);
    let g = fatten(&space, &BaseMap::logistic(3.9).unwrap(), 2.0 / 64.0).unwrap();
    let d = decompose(&g).unwrap();
    let class = &d.classes[0].class_cells;
    let image = g.full_image();
    if is_transitive(&g, &image) {
        for c in class.iter().step_by(7) {
            let u = CellSet::from_cells(&space, [c]).unwrap();
            assert!(return_time(&g, &u).unwrap() >= 1);
        }
    }
}
