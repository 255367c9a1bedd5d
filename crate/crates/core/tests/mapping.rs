mod common;

use common::prepare;
use polycell::constraints::{build_virtual_constraints, detect_boundary_edges};
use polycell::delaunay::TetMesh;
use polycell::mapping::{map_constraints, walk};
use polycell::{Constraint, Origin};
use polycell_testkit::models::{self, Mesh};
use polycell_testkit::rational::{self as r, QP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn qtri(mesh: &TetMesh, v: &[u32; 3]) -> [QP; 3] {
    v.map(|i| r::qp(&mesh.points[i as usize]))
}

fn qtet(mesh: &TetMesh, t: u32) -> [QP; 4] {
    mesh.tets[t as usize].map(|i| r::qp(&mesh.points[i as usize]))
}

/// Coplanar triangles overlap with positive area: clip `a` by the edge
/// half-planes of `b` and look for a non-degenerate remainder.
fn oracle_coplanar_overlap(a: &[QP; 3], b: &[QP; 3]) -> bool {
    let nb = r::cross(&r::sub(&b[1], &b[0]), &r::sub(&b[2], &b[0]));
    let mut poly = a.to_vec();
    for i in 0..3 {
        let (p, q, o) = (&b[i], &b[(i + 1) % 3], &b[(i + 2) % 3]);
        let mut n = r::cross(&r::sub(q, p), &nb);
        if r::dot(&n, &r::sub(o, p)) > r::qi(0) {
            n = r::scale(&n, &r::qi(-1));
        }
        let off = r::dot(&n, p);
        poly = r::clip(&poly, &n, &off);
        if poly.len() < 3 {
            return false;
        }
    }
    !r::is_zero_vec(&r::polygon_normal(&poly))
}

/// Exact on f64 inputs: disjoint closed boxes cannot meet.
fn boxes_apart(mesh: &TetMesh, a: &[u32], b: &[u32]) -> bool {
    let bb = |v: &[u32]| {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &i in v {
            let p = mesh.points[i as usize];
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    };
    let (la, ha) = bb(a);
    let (lb, hb) = bb(b);
    (0..3).any(|k| ha[k] < lb[k] || hb[k] < la[k])
}

fn check_against_oracle(mesh: &TetMesh, cons: &[Constraint]) {
    let map = map_constraints(mesh, cons);
    let finite: Vec<u32> = mesh.finite_tets().collect();
    let coincident: BTreeSet<u32> = map.coincident.iter().copied().collect();
    for (ci, c) in cons.iter().enumerate() {
        let ci = ci as u32;
        let tri = qtri(mesh, &c.v);
        let s: BTreeSet<u32> = walk(mesh, &c.v).into_iter().collect();
        for &t in &finite {
            if boxes_apart(mesh, &c.v, &mesh.tets[t as usize]) {
                assert!(!s.contains(&t) && !map.tet_constraints[t as usize].contains(&ci));
                continue;
            }
            let tet = qtet(mesh, t);
            assert_eq!(s.contains(&t), r::triangle_meets_tet(&tri, &tet), "walk c{ci} t{t}");
            let want = !coincident.contains(&ci) && r::triangle_meets_tet_interior(&tri, &tet);
            let got = map.tet_constraints[t as usize].contains(&ci);
            assert_eq!(got, want, "interior c{ci} t{t} {:?}", mesh.tets[t as usize]);
        }
    }
    // coplanar face lists
    let mut faces = BTreeSet::new();
    for t in &finite {
        for i in 0..4 {
            faces.insert(mesh.face(*t, i));
        }
    }
    for f in faces {
        let ft = qtri(mesh, &f);
        let want: Vec<u32> = cons
            .iter()
            .enumerate()
            .filter(|(_, c)| c.origin != Origin::Virtual && !boxes_apart(mesh, &c.v, &f))
            .filter(|(_, c)| {
                let ct = qtri(mesh, &c.v);
                ct.iter().all(|p| r::coplanar(&ft[0], &ft[1], &ft[2], p)) && oracle_coplanar_overlap(&ct, &ft)
            })
            .map(|(i, _)| i as u32)
            .collect();
        let mut got = map.facet_coplanar.get(&f).cloned().unwrap_or_default();
        got.sort_unstable();
        assert_eq!(got, want, "face {f:?}");
    }
}

fn random_soup(rng: &mut ChaCha8Rng, n: usize, grid: bool) -> Mesh {
    let mut m = Mesh::default();
    for _ in 0..n {
        let base = m.vertices.len() as u32;
        for _ in 0..3 {
            let p = if grid {
                [0, 1, 2].map(|_| rng.gen_range(0..4) as f64 * 0.5)
            } else {
                [0, 1, 2].map(|_| rng.gen_range(-64..64) as f64 / 32.0)
            };
            m.vertices.push(p);
        }
        m.triangles.push([base, base + 1, base + 2]);
    }
    m
}

#[test]
fn map_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases: Vec<Vec<(Mesh, Origin)>> = vec![
        vec![(models::unit_cube(), Origin::A), (models::unit_cube().translated([0.5, 0.5, 0.5]), Origin::B)],
        vec![(models::open_pyramid(1.0), Origin::A)],
        vec![(models::unit_cube(), Origin::A), (models::cuboid([0.0, 0.0, 0.0], [1.0, 1.0, 2.0]), Origin::B)],
        vec![(models::random_rotated_cube(&mut rng, [0.0; 3]), Origin::A), (models::unit_cube(), Origin::B)],
    ];
    for k in 0..8 {
        cases.push(vec![(random_soup(&mut rng, 6 + k, k % 2 == 0), Origin::A)]);
    }
    let mut fine = random_soup(&mut rng, 5, false);
    for v in &mut fine.vertices {
        for x in v.iter_mut() {
            *x += rng.gen_range(-1e-3..1e-3);
        }
    }
    cases.push(vec![(fine, Origin::A)]);
    for parts in &cases {
        let refs: Vec<(&Mesh, Origin)> = parts.iter().map(|(m, o)| (m, *o)).collect();
        let (cond, mesh) = prepare(&refs);
        let mut cons = cond.constraints.clone();
        let boundary = detect_boundary_edges(&mesh.points, &cons);
        let (virt, _) = build_virtual_constraints(&mesh, &cons, &boundary).unwrap();
        cons.extend(virt);
        check_against_oracle(&mesh, &cons);
    }
}

#[test]
fn open_pyramid_boundary_and_virtuals() {
    let m = models::open_pyramid(1.0);
    let (cond, mesh) = prepare(&[(&m, Origin::A)]);
    let boundary = detect_boundary_edges(&mesh.points, &cond.constraints);
    assert_eq!(boundary.len(), 3);
    let (virt, stats) = build_virtual_constraints(&mesh, &cond.constraints, &boundary).unwrap();
    assert_eq!(virt.len(), 3);
    assert_eq!(stats.local + stats.global, 3);
    for v in &virt {
        let [a, b, c] = v.v.map(|i| r::qp(&mesh.points[i as usize]));
        assert!(!r::collinear(&a, &b, &c));
        assert_eq!(v.origin, Origin::Virtual);
    }
    // each boundary edge is closed by a virtual constraint leaving the
    // plane of its incident constraint
    for (e, v) in boundary.iter().zip(&virt) {
        assert_eq!(&v.v[..2], &[e.a, e.b]);
        let t = cond.constraints[e.constraint as usize].v.map(|i| r::qp(&mesh.points[i as usize]));
        assert!(!r::coplanar(&t[0], &t[1], &t[2], &r::qp(&mesh.points[v.v[2] as usize])));
    }
}

#[test]
fn closed_surfaces_have_no_boundary() {
    for m in [models::unit_cube(), models::icosphere(2, 1.0), models::pyramid(2.0)] {
        let (cond, mesh) = prepare(&[(&m, Origin::A)]);
        assert!(detect_boundary_edges(&mesh.points, &cond.constraints).is_empty());
    }
}

#[test]
fn isolated_triangle_gets_three_virtuals() {
    let cube = models::cuboid([5.0, 5.0, 5.0], [6.0, 6.0, 6.0]);
    let tri = Mesh {
        vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        triangles: vec![[0, 1, 2]],
    };
    let (cond, mesh) = prepare(&[(&cube, Origin::A), (&tri, Origin::B)]);
    let boundary = detect_boundary_edges(&mesh.points, &cond.constraints);
    assert_eq!(boundary.len(), 3);
    let (virt, _) = build_virtual_constraints(&mesh, &cond.constraints, &boundary).unwrap();
    assert_eq!(virt.len(), 3);
}
