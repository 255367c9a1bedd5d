mod common;

use polycell::bsp::OriginFilter;
use common::graphs::*;
use polycell::classify::{build_dual_graph, min_cut_label};
use polycell::coloring::finalize_colors;
use polycell::Origin;
use polycell_testkit::models;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn two_d_example_energies() {
    let g = two_d_example();
    let left = labeling(&[id(1, 1), id(1, 2), id(2, 1), id(2, 2)]);
    let right = labeling(&[id(1, 1), id(1, 2), id(2, 2)]);
    assert_eq!(g.energy(&left), 4.0);
    assert_eq!(g.energy(&right), 6.0);
    let data = |l: &[bool]| (0..g.len()).map(|v| if l[v] { g.d_in[v] } else { g.d_out[v] }).sum::<f64>();
    assert_eq!(data(&left), 2.0);
    assert_eq!(data(&right), 2.0);
    let cut = min_cut_label(&g);
    assert_eq!(cut, left);
    assert_eq!(g.energy(&cut), 4.0);
}

#[test]
fn min_cut_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..1000 {
        let n = rng.gen_range(1..=16);
        let g = random_graph(&mut rng, n, i % 2 == 0);
        let (best, arg) = brute_force(&g);
        let l = min_cut_label(&g);
        assert_eq!(g.energy(&l), best, "graph {i}");
        assert!(arg.contains(&mask_of(&l)));
    }
}

#[test]
fn closed_cube_has_zero_energy() {
    let mut cx = common::subdivided(&[(&models::unit_cube(), Origin::A)]);
    finalize_colors(&mut cx).unwrap();
    let approx = cx.approximate_vertices().unwrap();
    let g = build_dual_graph(&cx, OriginFilter::A, &approx);
    assert!(g.len() <= 16);
    assert_eq!(brute_force_min(&g), 0.0);
    let l = min_cut_label(&g);
    assert_eq!(g.energy(&l), 0.0);
    assert!(l[..cx.cells.len()].iter().all(|&x| x));
    assert!(!l[cx.cells.len()]);
}

#[test]
fn flipped_normal_costs_data_energy() {
    let m = models::unit_cube().flipped(0);
    let mut cx = common::subdivided(&[(&m, Origin::A)]);
    finalize_colors(&mut cx).unwrap();
    let approx = cx.approximate_vertices().unwrap();
    let g = build_dual_graph(&cx, OriginFilter::A, &approx);
    let best = brute_force_min(&g);
    assert!(best > 0.0);
    let l = min_cut_label(&g);
    assert_eq!(g.energy(&l), best);
    // the flipped triangle's area, charged to both of its cells
    assert!((best - 1.0).abs() < 1e-12, "{best}");
    assert!(l[..cx.cells.len()].iter().all(|&x| x));
}

proptest! {
    #[test]
    fn argmin_invariant_under_area_scaling(seed in any::<u64>(), n in 1usize..=10, k in 1u32..1000, shift in -20i32..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, true);
        let s = k as f64 * 2f64.powi(shift);
        let mut h = g.clone();
        for x in h.d_in.iter_mut().chain(h.d_out.iter_mut()) {
            *x *= s;
        }
        for a in &mut h.arcs {
            a.2 *= s;
        }
        let (e0, arg0) = brute_force(&g);
        let (e1, arg1) = brute_force(&h);
        prop_assert_eq!(&arg0, &arg1);
        prop_assert_eq!(e1, e0 * s);
        prop_assert!(arg1.contains(&mask_of(&min_cut_label(&h))));
        prop_assert_eq!(mask_of(&min_cut_label(&h)), mask_of(&min_cut_label(&g)));
    }
}
