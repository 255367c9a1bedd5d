#![allow(dead_code)]

pub mod graphs;

use polycell::delaunay::{build_delaunay, DelaunayOptions, TetMesh};
use polycell::{condition_input, Conditioned, Origin, Soup};
use polycell_testkit::models::{self, Mesh};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

pub fn soup(m: &Mesh) -> Soup {
    Soup {
        vertices: m.vertices.clone(),
        triangles: m.triangles.clone(),
    }
}

pub fn prepare(parts: &[(&Mesh, Origin)]) -> (Conditioned, TetMesh) {
    let soups: Vec<Soup> = parts.iter().map(|(m, _)| soup(m)).collect();
    let args: Vec<(&Soup, Origin)> = soups.iter().zip(parts).map(|(s, (_, o))| (s, *o)).collect();
    let cond = condition_input(&args).expect("condition");
    let mesh = build_delaunay(&cond.points, DelaunayOptions::default()).expect("delaunay");
    (cond, mesh)
}

pub fn subdivided(parts: &[(&Mesh, Origin)]) -> polycell::bsp::BspComplex {
    use polycell::constraints::{build_virtual_constraints, detect_boundary_edges};
    let (cond, mesh) = prepare(parts);
    let mut cons = cond.constraints.clone();
    let boundary = detect_boundary_edges(&mesh.points, &cons);
    let (virt, _) = build_virtual_constraints(&mesh, &cons, &boundary).unwrap();
    cons.extend(virt);
    let map = polycell::mapping::map_constraints(&mesh, &cons);
    let mut cx = polycell::bsp::BspComplex::from_tetmesh(&mesh, &cons, &map);
    cx.validate().expect("initial complex");
    cx.subdivide_all();
    cx
}

/// An icosphere of the given subdivision level with `holes` triangles removed, no two sharing a vertex.
pub fn punctured_sphere(level: u32, holes: usize, seed: u64) -> (Mesh, Mesh) {
    let full = models::icosphere(level, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..full.triangles.len()).collect();
    order.shuffle(&mut rng);
    let mut used = HashSet::new();
    let mut removed = HashSet::new();
    for t in order {
        if removed.len() == holes {
            break;
        }
        let tri = full.triangles[t];
        if tri.iter().all(|v| !used.contains(v)) {
            used.extend(tri);
            removed.insert(t);
        }
    }
    assert_eq!(removed.len(), holes);
    let mut m = full.clone();
    m.triangles = (0..full.triangles.len()).filter(|t| !removed.contains(t)).map(|t| full.triangles[t]).collect();
    (m, full)
}

pub fn random_box(rng: &mut ChaCha8Rng) -> (Mesh, f64) {
    let lo: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.5..0.8));
    let size: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.2..1.2));
    let hi: [f64; 3] = std::array::from_fn(|k| lo[k] + size[k]);
    let m = models::cuboid(lo, hi);
    let v = m.volume();
    (m, v)
}
