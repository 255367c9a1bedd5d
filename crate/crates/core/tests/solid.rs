mod common;

use common::{punctured_sphere, random_box, soup};
use polycell::solid::{boolean, make_solid, resolve_self_intersections, BoolOp, PipelineOptions, Solid};
use polycell::{Error, Soup};
use polycell_testkit::models::{self, Mesh};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const O: PipelineOptions = PipelineOptions { presort: true };

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

fn manifold(s: &Solid) -> &Solid {
    s.skin.check_manifold().unwrap();
    s
}

#[test]
fn unit_cube_skin() {
    let s = make_solid(&soup(&models::unit_cube()), O).unwrap();
    s.complex.validate().unwrap();
    manifold(&s);
    assert_eq!(s.skin.volume(), 1.0);
    assert_eq!(s.skin.area(), 6.0);
}

#[test]
fn open_pyramid_is_closed_by_repair() {
    for h in [1.0, 0.3, 2.5] {
        let s = make_solid(&soup(&models::open_pyramid(h)), O).unwrap();
        manifold(&s);
        let want = 1.0 * h / 3.0;
        assert!(close(s.skin.volume(), want, 1e-9), "{} vs {want}", s.skin.volume());
    }
}

#[test]
fn punctured_sphere_is_closed_by_repair() {
    let (m, full) = punctured_sphere(3, 100, 4);
    let s = make_solid(&soup(&m), O).unwrap();
    manifold(&s);
    assert!(close(s.skin.volume(), full.volume(), 1e-9), "{} vs {}", s.skin.volume(), full.volume());
}

#[test]
fn offset_cube_booleans() {
    let a = soup(&models::unit_cube());
    let b = soup(&models::unit_cube().translated([0.5, 0.5, 0.5]));
    for (op, want) in [(BoolOp::Union, 1.875), (BoolOp::Intersection, 0.125), (BoolOp::Difference, 0.875)] {
        let s = boolean(&a, &b, op, O).unwrap();
        manifold(&s);
        assert!(close(s.skin.volume(), want, 1e-9), "{op:?} {}", s.skin.volume());
    }
}

#[test]
fn disjoint_union_has_two_shells() {
    let a = soup(&models::unit_cube());
    let b = soup(&models::unit_cube().translated([3.0, 0.0, 0.0]));
    let s = boolean(&a, &b, BoolOp::Union, O).unwrap();
    manifold(&s);
    assert_eq!(s.skin.volume(), 2.0);
    assert_eq!(s.skin.area(), 12.0);
}

#[test]
fn self_booleans() {
    let m = models::rotated(&models::unit_cube(), [0.9, 0.3, -0.2, 0.1], [0.5; 3]);
    let a = soup(&m);
    let d = boolean(&a, &a, BoolOp::Difference, O).unwrap();
    assert!(d.skin.is_empty());
    assert!(d.inside.iter().all(|&x| !x));
    let i = boolean(&a, &a, BoolOp::Intersection, O).unwrap();
    manifold(&i);
    assert!(close(i.skin.volume(), m.volume(), 1e-12), "{} vs {}", i.skin.volume(), m.volume());
}

#[test]
fn inclusion_exclusion_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..50 {
        let (a, va) = random_box(&mut rng);
        let off: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.6..0.6));
        let b = models::random_rotated_cube(&mut rng, off);
        let (sa, sb) = (soup(&a), soup(&b));
        let u = boolean(&sa, &sb, BoolOp::Union, O).unwrap();
        let n = boolean(&sa, &sb, BoolOp::Intersection, O).unwrap();
        manifold(&u);
        manifold(&n);
        let lhs = u.skin.volume() + n.skin.volume();
        let rhs = va + b.volume();
        assert!(close(lhs, rhs, 1e-9), "pair {i}: {lhs} vs {rhs}");
    }
}

#[test]
fn resolve_keeps_area_and_splits_crossings() {
    let a = Mesh {
        vertices: vec![[0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0]],
        triangles: vec![[0, 1, 2]],
    };
    let b = Mesh {
        vertices: vec![[0.5, 0.5, -1.0], [0.5, 0.5, 1.0], [1.5, -0.5, 0.0]],
        triangles: vec![[0, 1, 2]],
    };
    let m = Mesh::merged(&[a, b]);
    let (mesh, cx, _) = resolve_self_intersections(&soup(&m), O).unwrap();
    cx.validate().unwrap();
    assert!(mesh.faces.len() > 2);
    let want = 2.0 + (2.0f64.sqrt() * 2.0) / 2.0;
    assert!(close(mesh.area(), want, 1e-12), "{} vs {want}", mesh.area());
}

#[test]
fn flat_and_empty_inputs_are_reported() {
    let flat = Soup {
        vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        triangles: vec![[0, 1, 2]],
    };
    match make_solid(&flat, O) {
        Ok(s) => assert!(s.skin.is_empty() || s.skin.check_manifold().is_ok()),
        Err(e) => assert_eq!(e.exit_code(), 1, "{e}"),
    }
    let empty = Soup {
        vertices: vec![],
        triangles: vec![],
    };
    assert!(matches!(make_solid(&empty, O), Err(Error::EmptyInput)));
}

#[test]
fn presort_does_not_change_the_result() {
    let a = soup(&models::unit_cube());
    let b = soup(&models::rotated(&models::unit_cube(), [0.8, 0.1, 0.5, -0.3], [0.9, 0.7, 0.6]));
    let x = boolean(&a, &b, BoolOp::Union, O).unwrap();
    let y = boolean(&a, &b, BoolOp::Union, PipelineOptions { presort: false }).unwrap();
    assert!(close(x.skin.volume(), y.skin.volume(), 1e-12));
}
