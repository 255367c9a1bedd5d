use polycell::delaunay::{build_delaunay, DelaunayOptions, TetMesh};
use polycell_testkit::rational as r;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn empty_spheres(m: &TetMesh) {
    let q: Vec<r::QP> = m.points.iter().map(r::qp).collect();
    for t in m.finite_tets() {
        let v = m.tets[t as usize];
        let [a, b, c, d] = v.map(|i| &q[i as usize]);
        assert_eq!(r::orient3d(a, b, c, d), 1);
        for (i, p) in q.iter().enumerate() {
            if v.contains(&(i as u32)) {
                continue;
            }
            assert!(r::insphere(a, b, c, d, p) <= 0, "vertex {i} inside sphere of tet {t}");
        }
    }
}

fn volume(m: &TetMesh) -> f64 {
    m.finite_tets()
        .map(|t| {
            let [a, b, c, d] = m.tets[t as usize].map(|i| m.points[i as usize]);
            let u = [a[0] - d[0], a[1] - d[1], a[2] - d[2]];
            let v = [b[0] - d[0], b[1] - d[1], b[2] - d[2]];
            let w = [c[0] - d[0], c[1] - d[1], c[2] - d[2]];
            (u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]))
                / 6.0
        })
        .sum()
}

fn tet_set(m: &TetMesh) -> BTreeSet<[u32; 4]> {
    m.finite_tets()
        .map(|t| {
            let mut v = m.tets[t as usize];
            v.sort_unstable();
            v
        })
        .collect()
}

#[test]
fn cube_corners() {
    let pts: Vec<[f64; 3]> = (0..8)
        .map(|i| [(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64])
        .collect();
    let m = build_delaunay(&pts, DelaunayOptions { presort: true }).unwrap();
    m.validate().unwrap();
    empty_spheres(&m);
    assert!((volume(&m) - 1.0).abs() < 1e-15);
    for v in 0..8 {
        let brute: Vec<u32> = m.finite_tets().filter(|&t| m.tets[t as usize].contains(&v)).collect();
        assert_eq!(m.incident_tets(v), brute);
    }
}

#[test]
fn random_clouds_are_delaunay() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..12 {
        let n = 8 + round * 4;
        let pts: Vec<[f64; 3]> = (0..n)
            .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let m = build_delaunay(&pts, DelaunayOptions { presort: round % 2 == 0 }).unwrap();
        m.validate().unwrap();
        empty_spheres(&m);
    }
}

#[test]
fn lattice_is_order_independent() {
    // a 4x4x4 lattice is maximally cospherical
    let mut pts = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                pts.push([i as f64, j as f64, k as f64]);
            }
        }
    }
    let a = build_delaunay(&pts, DelaunayOptions { presort: false }).unwrap();
    let b = build_delaunay(&pts, DelaunayOptions { presort: true }).unwrap();
    a.validate().unwrap();
    b.validate().unwrap();
    empty_spheres(&a);
    assert!((volume(&a) - 27.0).abs() < 1e-12);
    assert_eq!(tet_set(&a), tet_set(&b));
}

#[test]
fn sphere_points_with_coplanar_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pts: Vec<[f64; 3]> = Vec::new();
    // integer points on the sphere of radius 3 plus points on hull facets
    for x in -3i32..=3 {
        for y in -3i32..=3 {
            for z in -3i32..=3 {
                if x * x + y * y + z * z == 9 {
                    pts.push([x as f64, y as f64, z as f64]);
                }
            }
        }
    }
    for _ in 0..20 {
        pts.push([rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]);
    }
    let m = build_delaunay(&pts, DelaunayOptions { presort: true }).unwrap();
    m.validate().unwrap();
    empty_spheres(&m);
    let n = build_delaunay(&pts, DelaunayOptions { presort: false }).unwrap();
    assert_eq!(tet_set(&m), tet_set(&n));
}
