//! Map from tets to the constraints meeting their interior, and from tet
//! faces to the coplanar constraints overlapping them.
//!
//! For each constraint the set `S` of tets whose closure meets it is grown
//! from the tets around its first vertex, crossing a face whenever the
//! constraint meets that closed face. Each tet of `S` is then classified as
//! proper or improper.

use crate::delaunay::TetMesh;
use crate::geom::{coplanar_overlap, triangles_meet};
use crate::soup::{Constraint, Origin};
use polycell_predicates::{orient3d, GenericPoint, Point3};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// The predicate contractions used to classify tet/constraint intersections.
pub mod contractions {
    use polycell_predicates::{derived, orient3d_indirect, GenericPoint as P, Sign};

    pub fn o3c(p: &P, c: [&P; 3]) -> Sign {
        orient3d_indirect(p, c[0], c[1], c[2])
    }

    #[allow(non_snake_case)]
    pub fn PinIT(p: &P, c: [&P; 3]) -> bool {
        derived::point_in_inner_triangle(p, c[0], c[1], c[2])
    }

    #[allow(non_snake_case)]
    pub fn PinT(p: &P, c: [&P; 3]) -> bool {
        derived::point_in_triangle(p, c[0], c[1], c[2])
    }

    pub fn two_pin_s(p0: &P, p1: &P, s0: &P, s1: &P) -> bool {
        derived::point_in_segment(p0, s0, s1) && derived::point_in_segment(p1, s0, s1)
    }

    #[allow(non_snake_case)]
    pub fn ISxT(s0: &P, s1: &P, c: [&P; 3]) -> bool {
        derived::inner_segment_crosses_triangle(s0, s1, c[0], c[1], c[2])
    }

    #[allow(non_snake_case)]
    pub fn ISxIT(s0: &P, s1: &P, c: [&P; 3]) -> bool {
        derived::inner_segment_crosses_inner_triangle(s0, s1, c[0], c[1], c[2])
    }

    /// Some edge of `c` crosses the open triangle `tau`.
    pub fn three_isx_it(c: [&P; 3], tau: [&P; 3]) -> bool {
        ISxIT(c[0], c[1], tau) || ISxIT(c[1], c[2], tau) || ISxIT(c[2], c[0], tau)
    }

    #[allow(non_snake_case)]
    pub fn ISxdT(s0: &P, s1: &P, c: [&P; 3]) -> bool {
        derived::inner_segments_cross(s0, s1, c[0], c[1])
            || derived::inner_segments_cross(s0, s1, c[1], c[2])
            || derived::inner_segments_cross(s0, s1, c[2], c[0])
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintMap {
    /// Per tet, sorted ids of the constraints meeting its interior.
    pub tet_constraints: Vec<Vec<u32>>,
    /// Per face (sorted vertex ids), sorted ids of coplanar non-virtual
    /// constraints overlapping it with positive area, coincident ones included.
    pub facet_coplanar: BTreeMap<[u32; 3], Vec<u32>>,
    /// Constraints equal to a mesh face; these are not mapped to tets.
    pub coincident: Vec<u32>,
}

/// Tet-local orientation: positive when `p` is on the side of face `i`
/// that contains the tet.
fn side(pts: &[Point3], t: &[u32; 4], i: usize, p: &Point3) -> i8 {
    let q = |k: usize| if k == i { p } else { &pts[t[k] as usize] };
    orient3d(q(0), q(1), q(2), q(3))
}

const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// Whether the open tet meets the closed triangle: fast accepts and rejects
/// from face orientations and the crossing contractions, then a search for
/// a plane through three of the seven points that weakly separates them.
pub fn tet_interior_meets(pts: &[Point3], t: &[u32; 4], c: &[u32; 3]) -> bool {
    let cp = c.map(|i| &pts[i as usize]);
    let mut inside = [true; 3];
    for i in 0..4 {
        let s = cp.map(|p| side(pts, t, i, p));
        if s.iter().all(|&x| x <= 0) {
            return false;
        }
        for j in 0..3 {
            inside[j] &= s[j] > 0;
        }
    }
    if inside.iter().any(|&x| x) {
        return true;
    }
    let g = |i: u32| GenericPoint::Explicit(pts[i as usize]);
    let tv = t.map(g);
    let cv = c.map(g);
    let cr = [&cv[0], &cv[1], &cv[2]];
    for f in FACES {
        if contractions::three_isx_it(cr, [&tv[f[0]], &tv[f[1]], &tv[f[2]]]) {
            return true;
        }
    }
    for a in 0..4 {
        for b in a + 1..4 {
            if contractions::ISxIT(&tv[a], &tv[b], cr) {
                return true;
            }
        }
    }
    !weakly_separated(pts, t, c)
}

fn weakly_separated(pts: &[Point3], t: &[u32; 4], c: &[u32; 3]) -> bool {
    let all: [u32; 7] = [t[0], t[1], t[2], t[3], c[0], c[1], c[2]];
    let p = |i: usize| &pts[all[i] as usize];
    for a in 0..7 {
        for b in a + 1..7 {
            for d in b + 1..7 {
                if d < 4 {
                    continue; // tet faces already tested
                }
                let (pa, pb, pd) = (p(a), p(b), p(d));
                let s: Vec<i8> = (0..7).map(|k| orient3d(pa, pb, pd, p(k))).collect();
                if s.iter().all(|&x| x == 0) {
                    continue;
                }
                let (st, sc) = (&s[..4], &s[4..]);
                if (st.iter().all(|&x| x >= 0) && sc.iter().all(|&x| x <= 0))
                    || (st.iter().all(|&x| x <= 0) && sc.iter().all(|&x| x >= 0))
                {
                    return true;
                }
            }
        }
    }
    false
}

fn face_tri(t: &[u32; 4], i: usize) -> [u32; 3] {
    let f = FACES[i];
    [t[f[0]], t[f[1]], t[f[2]]]
}

fn sorted3(mut v: [u32; 3]) -> [u32; 3] {
    v.sort_unstable();
    v
}

/// The tets whose closure meets constraint `c`, in discovery order.
pub fn walk(mesh: &TetMesh, c: &[u32; 3]) -> Vec<u32> {
    let pts = &mesh.points;
    let cp = c.map(|i| &pts[i as usize]);
    let star = mesh.incident_tets(c[0]);
    let mut visited: HashSet<u32> = star.iter().copied().collect();
    let mut queue = star;
    let mut k = 0;
    while k < queue.len() {
        let t = queue[k];
        k += 1;
        let tv = mesh.tets[t as usize];
        for i in 0..4 {
            let n = mesh.nbr[t as usize][i];
            if mesh.is_ghost(n) || visited.contains(&n) {
                continue;
            }
            if triangles_meet(cp, face_tri(&tv, i).map(|v| &pts[v as usize])) {
                visited.insert(n);
                queue.push(n);
            }
        }
    }
    queue
}

pub fn map_constraints(mesh: &TetMesh, constraints: &[Constraint]) -> ConstraintMap {
    let pts = &mesh.points;
    let mut map = ConstraintMap {
        tet_constraints: vec![Vec::new(); mesh.tets.len()],
        ..Default::default()
    };
    for (ci, c) in constraints.iter().enumerate() {
        let ci = ci as u32;
        let key = sorted3(c.v);
        let coincident = mesh
            .incident_tets(c.v[0])
            .iter()
            .any(|&t| (0..4).any(|i| mesh.face(t, i) == key));
        if coincident {
            if c.origin != Origin::Virtual {
                map.coincident.push(ci);
                map.facet_coplanar.entry(key).or_default().push(ci);
            }
            continue;
        }
        let cp = c.v.map(|i| &pts[i as usize]);
        let mut faces_done: BTreeSet<[u32; 3]> = BTreeSet::new();
        for t in walk(mesh, &c.v) {
            let tv = mesh.tets[t as usize];
            if tet_interior_meets(pts, &tv, &c.v) {
                map.tet_constraints[t as usize].push(ci);
            }
            if c.origin == Origin::Virtual {
                continue;
            }
            for i in 0..4 {
                let ft = face_tri(&tv, i);
                let fp = ft.map(|v| &pts[v as usize]);
                if cp.iter().all(|p| orient3d(fp[0], fp[1], fp[2], p) == 0) {
                    let fk = sorted3(ft);
                    if faces_done.insert(fk) && coplanar_overlap(cp, fp) {
                        map.facet_coplanar.entry(fk).or_default().push(ci);
                    }
                }
            }
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_tests() {
        let pts = [
            [0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.1, 0.1, 0.1],
            [5.0, 0.1, 0.1],
            [0.1, 5.0, 0.1],
            [0.5, 0.5, 0.0],
            [0.0, 0.0, -1.0],
            [0.5, 0.0, 0.5],
        ];
        let t = [0, 1, 2, 3];
        assert!(tet_interior_meets(&pts, &t, &[4, 5, 6]));
        // on the face plane z = 0
        assert!(!tet_interior_meets(&pts, &t, &[0, 2, 7]));
        // through an edge from outside, touching only
        assert!(!tet_interior_meets(&pts, &t, &[8, 0, 9]));
    }
}
