//! Boundary edges of the constraint set and the virtual constraints that
//! close them.

use crate::delaunay::TetMesh;
use crate::error::{Error, Result};
use crate::geom::plane_projection;
use crate::soup::{Constraint, Origin};
use polycell_predicates::{orient2d, orient3d, Point3};
use std::collections::BTreeMap;

/// Which search found the witness vertex of a virtual constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WitnessStats {
    pub local: usize,
    pub global: usize,
}

/// A boundary edge `(a, b)` with the incident constraint whose plane the
/// closing virtual constraint must cross.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryEdge {
    pub a: u32,
    pub b: u32,
    pub constraint: u32,
}

fn edge_map(constraints: &[Constraint], origin: Origin) -> BTreeMap<(u32, u32), Vec<u32>> {
    let mut map: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for (i, c) in constraints.iter().enumerate() {
        if c.origin != origin {
            continue;
        }
        for k in 0..3 {
            let (a, b) = (c.v[k], c.v[(k + 1) % 3]);
            map.entry((a.min(b), a.max(b))).or_default().push(i as u32);
        }
    }
    map
}

fn opposite(c: &Constraint, a: u32, b: u32) -> u32 {
    *c.v.iter().find(|&&x| x != a && x != b).unwrap()
}

/// Edges whose realization is not in the interior of the union of the
/// constraints of one origin: no incident constraint leaves the plane of
/// another, and all coplanar incident constraints lie on one side of the
/// edge. Each origin is treated as a separate surface.
pub fn detect_boundary_edges(points: &[Point3], constraints: &[Constraint]) -> Vec<BoundaryEdge> {
    let p = |i: u32| &points[i as usize];
    let mut out = Vec::new();
    for origin in [Origin::A, Origin::B] {
        for ((a, b), inc) in edge_map(constraints, origin) {
            let c0 = &constraints[inc[0] as usize];
            let [x, y, z] = c0.v.map(p);
            let mut interior = false;
            let mut sides = [false; 2];
            let pr = plane_projection(x, y, z);
            for &ci in &inc {
                let o = opposite(&constraints[ci as usize], a, b);
                if orient3d(x, y, z, p(o)) != 0 {
                    interior = true;
                    break;
                }
                match orient2d(&pr.apply(p(a)), &pr.apply(p(b)), &pr.apply(p(o))) {
                    1 => sides[0] = true,
                    -1 => sides[1] = true,
                    _ => {}
                }
            }
            if !(interior || sides[0] && sides[1]) {
                out.push(BoundaryEdge { a, b, constraint: inc[0] });
            }
        }
    }
    out
}

/// One virtual constraint per boundary edge, closing it with a vertex off
/// the plane of its incident constraint. Candidates come from the tets
/// around the edge (or around its endpoints when the edge is not in the
/// mesh); all vertices are scanned if none qualifies.
pub fn build_virtual_constraints(
    mesh: &TetMesh,
    constraints: &[Constraint],
    boundary: &[BoundaryEdge],
) -> Result<(Vec<Constraint>, WitnessStats)> {
    let p = |i: u32| &mesh.points[i as usize];
    let mut out = Vec::with_capacity(boundary.len());
    let mut stats = WitnessStats::default();
    for &BoundaryEdge { a, b, constraint } in boundary {
        let [x, y, z] = constraints[constraint as usize].v.map(p);
        let off = |v: &u32| *v != a && *v != b && orient3d(x, y, z, p(*v)) != 0;
        let mut tets = mesh.tets_around_edge(a, b);
        if tets.is_empty() {
            tets = mesh.incident_tets(a);
            tets.extend(mesh.incident_tets(b));
        }
        let mut cand: Vec<u32> = tets.iter().flat_map(|&t| mesh.tets[t as usize]).collect();
        cand.sort_unstable();
        cand.dedup();
        let v = match cand.iter().find(|v| off(v)) {
            Some(&v) => {
                stats.local += 1;
                v
            }
            None => {
                stats.global += 1;
                (0..mesh.points.len() as u32)
                    .find(|v| off(v))
                    .ok_or(Error::NoWitnessVertex(a, b))?
            }
        };
        out.push(Constraint {
            v: [a, b, v],
            origin: Origin::Virtual,
        });
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: [u32; 3]) -> Constraint {
        Constraint { v, origin: Origin::A }
    }

    #[test]
    fn folded_flat_edge_is_boundary() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 2.0, 0.0], [0.0, -1.0, 0.0]];
        // 2 and 3 on the same side of edge 0-1
        let b = detect_boundary_edges(&pts, &[c([0, 1, 2]), c([1, 0, 3])]);
        assert!(b.iter().any(|e| (e.a, e.b) == (0, 1)));
        // 2 and 4 on opposite sides
        let b = detect_boundary_edges(&pts, &[c([0, 1, 2]), c([1, 0, 4])]);
        assert!(!b.iter().any(|e| (e.a, e.b) == (0, 1)));
        // coplanar halves from different origins do not close each other
        let b = detect_boundary_edges(&pts, &[c([0, 1, 2]), Constraint { v: [1, 0, 4], origin: Origin::B }]);
        assert_eq!(b.iter().filter(|e| (e.a, e.b) == (0, 1)).count(), 2);
    }
}
