//! Exact intersection tests on explicit points.

use polycell_predicates::{orient2d, orient3d, Point2, Point3, Projection};

/// A coordinate-plane projection in which the triangle stays
/// non-degenerate, preferring the axis of the largest normal component.
pub fn plane_projection(a: &Point3, b: &Point3, c: &Point3) -> Projection {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    let mut axes = [0usize, 1, 2];
    axes.sort_by(|&i, &j| n[j].abs().total_cmp(&n[i].abs()).then(i.cmp(&j)));
    for axis in axes {
        let p = Projection::dropping(axis);
        if orient2d(&p.apply(a), &p.apply(b), &p.apply(c)) != 0 {
            return p;
        }
    }
    Projection::XY
}

fn seg_seg_2d(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let on = |p: &Point2, q: &Point2, r: &Point2| {
        // r on closed segment pq, given collinear
        (p[0].min(q[0]) <= r[0] && r[0] <= p[0].max(q[0])) && (p[1].min(q[1]) <= r[1] && r[1] <= p[1].max(q[1]))
    };
    (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b))
}

/// `p` in the closed 2D triangle.
pub fn point_in_tri_2d(p: &Point2, t: &[Point2; 3]) -> bool {
    let o = orient2d(&t[0], &t[1], &t[2]);
    let s0 = orient2d(p, &t[1], &t[2]);
    let s1 = orient2d(&t[0], p, &t[2]);
    let s2 = orient2d(&t[0], &t[1], p);
    [s0, s1, s2].iter().all(|&s| s == 0 || s == o)
}

fn seg_tri_2d(a: &Point2, b: &Point2, t: &[Point2; 3]) -> bool {
    point_in_tri_2d(a, t)
        || point_in_tri_2d(b, t)
        || (0..3).any(|i| seg_seg_2d(a, b, &t[i], &t[(i + 1) % 3]))
}

fn tri_tri_2d(s: &[Point2; 3], t: &[Point2; 3]) -> bool {
    (0..3).any(|i| point_in_tri_2d(&s[i], t) || point_in_tri_2d(&t[i], s))
        || (0..3).any(|i| (0..3).any(|j| seg_seg_2d(&s[i], &s[(i + 1) % 3], &t[j], &t[(j + 1) % 3])))
}

/// Closed segment `uv` meets closed triangle `t`.
pub fn segment_meets_triangle(u: &Point3, v: &Point3, t: [&Point3; 3]) -> bool {
    let s1 = orient3d(t[0], t[1], t[2], u);
    let s2 = orient3d(t[0], t[1], t[2], v);
    if s1 == s2 && s1 != 0 {
        return false;
    }
    let pr = plane_projection(t[0], t[1], t[2]);
    let t2 = [pr.apply(t[0]), pr.apply(t[1]), pr.apply(t[2])];
    if s1 == 0 && s2 == 0 {
        return seg_tri_2d(&pr.apply(u), &pr.apply(v), &t2);
    }
    if s1 == 0 {
        return point_in_tri_2d(&pr.apply(u), &t2);
    }
    if s2 == 0 {
        return point_in_tri_2d(&pr.apply(v), &t2);
    }
    let w0 = orient3d(u, v, t[0], t[1]);
    let w1 = orient3d(u, v, t[1], t[2]);
    let w2 = orient3d(u, v, t[2], t[0]);
    (w0 >= 0 && w1 >= 0 && w2 >= 0) || (w0 <= 0 && w1 <= 0 && w2 <= 0)
}

/// Closed triangles intersect.
pub fn triangles_meet(a: [&Point3; 3], b: [&Point3; 3]) -> bool {
    let oa = a.map(|p| orient3d(b[0], b[1], b[2], p));
    if oa.iter().all(|&s| s > 0) || oa.iter().all(|&s| s < 0) {
        return false;
    }
    let ob = b.map(|p| orient3d(a[0], a[1], a[2], p));
    if ob.iter().all(|&s| s > 0) || ob.iter().all(|&s| s < 0) {
        return false;
    }
    if oa.iter().all(|&s| s == 0) {
        let pr = plane_projection(b[0], b[1], b[2]);
        return tri_tri_2d(&a.map(|p| pr.apply(p)), &b.map(|p| pr.apply(p)));
    }
    (0..3).any(|i| segment_meets_triangle(a[i], a[(i + 1) % 3], b))
        || (0..3).any(|i| segment_meets_triangle(b[i], b[(i + 1) % 3], a))
}

/// Coplanar triangles whose interiors overlap (positive-area intersection),
/// by the separating-axis test on their edge lines.
pub fn coplanar_overlap(a: [&Point3; 3], b: [&Point3; 3]) -> bool {
    let pr = plane_projection(b[0], b[1], b[2]);
    let a2 = a.map(|p| pr.apply(p));
    let b2 = b.map(|p| pr.apply(p));
    !(separates(&a2, &b2) || separates(&b2, &a2))
}

fn separates(s: &[Point2; 3], t: &[Point2; 3]) -> bool {
    let o = orient2d(&s[0], &s[1], &s[2]);
    (0..3).any(|i| {
        let (p, q) = (&s[i], &s[(i + 1) % 3]);
        t.iter().all(|x| orient2d(p, q, x) * o <= 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_pairs() {
        let o = [0.0, 0.0, 0.0];
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        let z = [0.0, 0.0, 1.0];
        // sharing a vertex
        assert!(triangles_meet([&o, &x, &y], [&o, &z, &[-1.0, 0.0, 1.0]]));
        // separated
        assert!(!triangles_meet([&o, &x, &y], [&[0.0, 0.0, 1.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]));
        // edge touching the interior
        assert!(triangles_meet([&o, &x, &y], [&[0.2, 0.2, 0.0], &[0.2, 0.2, 1.0], &[1.0, 1.0, 1.0]]));
        // coplanar overlap versus touching
        assert!(coplanar_overlap([&o, &x, &y], [&[0.1, 0.1, 0.0], &[2.0, 0.1, 0.0], &[0.1, 2.0, 0.0]]));
        assert!(!coplanar_overlap([&o, &x, &y], [&x, &y, &[1.0, 1.0, 0.0]]));
        assert!(triangles_meet([&o, &x, &y], [&x, &y, &[1.0, 1.0, 0.0]]));
    }
}
