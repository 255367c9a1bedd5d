//! Predicates composed from orient2d/orient3d and coordinate comparisons.
//!
//! Two-dimensional tests combine the three coordinate-plane projections, so
//! no projection has to be chosen and degenerate projections are harmless.
//! Preconditions on coplanarity are the caller's responsibility.

use crate::implicit::{cmp_coord, orient2d_indirect, orient3d_indirect, same_point, GenericPoint, Projection};

type P = GenericPoint;

/// True if the three points are not collinear.
pub fn misaligned(p1: &P, p2: &P, p3: &P) -> bool {
    Projection::ALL
        .iter()
        .any(|&pr| orient2d_indirect(p1, p2, p3, pr) != 0)
}

fn strictly_between(p: &P, v1: &P, v2: &P, axis: usize) -> bool {
    let a = cmp_coord(v1, p, axis);
    let b = cmp_coord(p, v2, axis);
    (a < 0 && b < 0) || (a > 0 && b > 0)
}

/// `p` lies in the open segment `(v1, v2)`.
pub fn point_in_inner_segment(p: &P, v1: &P, v2: &P) -> bool {
    if misaligned(p, v1, v2) {
        return false;
    }
    (0..3).any(|axis| strictly_between(p, v1, v2, axis))
}

/// `p` lies in the closed segment `[v1, v2]`.
pub fn point_in_segment(p: &P, v1: &P, v2: &P) -> bool {
    point_in_inner_segment(p, v1, v2) || same_point(p, v1) || same_point(p, v2)
}

fn isc(a: &P, b: &P, p: &P, q: &P, pr: Projection) -> bool {
    let o1 = orient2d_indirect(p, a, b, pr);
    let o2 = orient2d_indirect(q, b, a, pr);
    let o3 = orient2d_indirect(a, p, q, pr);
    let o4 = orient2d_indirect(b, q, p, pr);
    (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0) && o1 == o2 && o3 == o4
}

/// The open segments `(a, b)` and `(p, q)` cross at a single point.
/// Precondition: the four points are coplanar.
pub fn inner_segments_cross(a: &P, b: &P, p: &P, q: &P) -> bool {
    Projection::ALL.iter().any(|&pr| isc(a, b, p, q, pr))
}

fn piit(p: &P, v1: &P, v2: &P, v3: &P, pr: Projection) -> bool {
    let o = orient2d_indirect(v1, v2, v3, pr);
    orient2d_indirect(p, v2, v3, pr) == o
        && orient2d_indirect(p, v3, v1, pr) == o
        && orient2d_indirect(p, v1, v2, pr) == o
}

/// `p` lies in the open triangle. Preconditions: the triangle is
/// non-degenerate and `p` is coplanar with it.
pub fn point_in_inner_triangle(p: &P, v1: &P, v2: &P, v3: &P) -> bool {
    Projection::ALL.iter().all(|&pr| piit(p, v1, v2, v3, pr))
}

/// `p` lies in the closed triangle. Same preconditions as
/// [`point_in_inner_triangle`].
pub fn point_in_triangle(p: &P, v1: &P, v2: &P, v3: &P) -> bool {
    point_in_segment(p, v1, v2)
        || point_in_segment(p, v2, v3)
        || point_in_segment(p, v3, v1)
        || point_in_inner_triangle(p, v1, v2, v3)
}

/// The open segment `(u1, u2)` crosses the open triangle transversally.
pub fn inner_segment_crosses_inner_triangle(u1: &P, u2: &P, v1: &P, v2: &P, v3: &P) -> bool {
    let s1 = orient3d_indirect(u1, v1, v2, v3);
    if s1 == 0 {
        return false;
    }
    let s2 = orient3d_indirect(u2, v1, v2, v3);
    if s2 == 0 || s1 == s2 {
        return false;
    }
    let w1 = orient3d_indirect(u1, u2, v1, v2);
    if w1 == 0 {
        return false;
    }
    orient3d_indirect(u1, u2, v2, v3) == w1 && orient3d_indirect(u1, u2, v3, v1) == w1
}

/// The open segment `(u1, u2)` meets the closed triangle. Precondition: the
/// segment and the triangle are not coplanar.
///
/// The edge-crossing terms only apply when the segment is coplanar with that
/// edge; without the check a segment ending on the triangle plane would be
/// reported as crossing whenever a projection of it crosses an edge.
pub fn inner_segment_crosses_triangle(u1: &P, u2: &P, v1: &P, v2: &P, v3: &P) -> bool {
    let edge_cross = |a: &P, b: &P| orient3d_indirect(a, b, u1, u2) == 0 && inner_segments_cross(a, b, u1, u2);
    point_in_inner_segment(v1, u1, u2)
        || point_in_inner_segment(v2, u1, u2)
        || point_in_inner_segment(v3, u1, u2)
        || edge_cross(v2, v3)
        || edge_cross(v3, v1)
        || edge_cross(v1, v2)
        || inner_segment_crosses_inner_triangle(u1, u2, v1, v2, v3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: f64, y: f64, z: f64) -> P {
        P::Explicit([x, y, z])
    }

    #[test]
    fn catalogue_examples() {
        assert!(misaligned(&e(0., 0., 0.), &e(1., 0., 0.), &e(0., 1., 0.)));
        assert!(!misaligned(&e(0., 0., 0.), &e(1., 1., 1.), &e(2., 2., 2.)));
        assert!(!misaligned(&e(0., 0., 0.), &e(1., 0., 0.), &e(5., 0., 0.)));

        let (a, b) = (e(0., 0., 0.), e(1., 0., 0.));
        assert!(point_in_inner_segment(&e(0.5, 0., 0.), &a, &b));
        assert!(!point_in_inner_segment(&a, &a, &b));
        assert!(point_in_segment(&a, &a, &b));
        assert!(!point_in_segment(&e(2., 0., 0.), &a, &b));

        assert!(inner_segments_cross(&e(0., -1., 0.), &e(0., 1., 0.), &e(-1., 0., 0.), &e(1., 0., 0.)));
        assert!(!inner_segments_cross(&e(0., 0., 0.), &e(0., 1., 0.), &e(0., 0., 0.), &e(1., 0., 0.)));
        assert!(!inner_segments_cross(&e(0., -1., 0.), &e(0., 1., 0.), &e(0., 0., 0.), &e(1., 0., 0.)));

        let (v1, v2, v3) = (e(0., 0., 0.), e(3., 0., 0.), e(0., 3., 0.));
        assert!(point_in_inner_triangle(&e(1., 1., 0.), &v1, &v2, &v3));
        assert!(!point_in_inner_triangle(&v1, &v1, &v2, &v3));
        assert!(point_in_triangle(&v1, &v1, &v2, &v3));
        assert!(!point_in_inner_triangle(&e(1.5, 0., 0.), &v1, &v2, &v3));
        assert!(point_in_triangle(&e(1.5, 0., 0.), &v1, &v2, &v3));
    }

    #[test]
    fn segment_triangle_examples() {
        let (v1, v2, v3) = (e(0., 0., 0.), e(1., 0., 0.), e(0., 1., 0.));
        let (u1, u2) = (e(0.2, 0.2, -1.), e(0.2, 0.2, 1.));
        assert!(inner_segment_crosses_inner_triangle(&u1, &u2, &v1, &v2, &v3));
        assert!(inner_segment_crosses_triangle(&u1, &u2, &v1, &v2, &v3));

        let (u1, u2) = (e(0., 0., -1.), e(0., 0., 1.));
        assert!(!inner_segment_crosses_inner_triangle(&u1, &u2, &v1, &v2, &v3));
        assert!(inner_segment_crosses_triangle(&u1, &u2, &v1, &v2, &v3));

        // endpoint on the plane, inside the triangle
        let (u1, u2) = (e(0.2, 0.2, 0.), e(0.3, 0.4, 1.));
        assert!(!inner_segment_crosses_inner_triangle(&u1, &u2, &v1, &v2, &v3));
        assert!(!inner_segment_crosses_triangle(&u1, &u2, &v1, &v2, &v3));
        // endpoint on the plane, outside the triangle, projection crossing an edge
        let (u1, u2) = (e(2., 2., 0.), e(-1., -1., 1.));
        assert!(!inner_segment_crosses_triangle(&u1, &u2, &v1, &v2, &v3));
    }
}
