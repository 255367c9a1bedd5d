//! Big-rational geometry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type QP = [Q; 3];

pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite coordinate")
}

pub fn qi(x: i64) -> Q {
    BigRational::from_integer(BigInt::from(x))
}

pub fn qp(p: &[f64; 3]) -> QP {
    [q(p[0]), q(p[1]), q(p[2])]
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sub(a: &QP, b: &QP) -> QP {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn add(a: &QP, b: &QP) -> QP {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn scale(a: &QP, s: &Q) -> QP {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

pub fn dot(a: &QP, b: &QP) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross(a: &QP, b: &QP) -> QP {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn is_zero_vec(a: &QP) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Determinant: each row is scaled to integers by the lcm of its
/// denominators, then fraction-free (Bareiss) elimination.
pub fn det(m: Vec<Vec<Q>>) -> Q {
    use num_integer::Integer;
    let n = m.len();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.into_iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut neg = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Q::zero();
        };
        if piv != k {
            a.swap(piv, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = Q::new(a[n - 1][n - 1].clone(), scale);
    if neg {
        -d
    } else {
        d
    }
}

/// Solves `m x = b` for a nonsingular square system.
pub fn solve(mut m: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        b.swap(piv, col);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &m[col][c] * &f;
                m[r][c] -= v;
            }
            let v = &b[col] * &f;
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// Sign of the 4x4 determinant with rows `(p, 1)`.
pub fn orient3d(a: &QP, b: &QP, c: &QP, d: &QP) -> i8 {
    let row = |p: &QP| vec![p[0].clone(), p[1].clone(), p[2].clone(), Q::one()];
    sign(&det(vec![row(a), row(b), row(c), row(d)]))
}

/// Sign of the 3x3 determinant with rows `(p, 1)`.
pub fn orient2d(a: &[Q; 2], b: &[Q; 2], c: &[Q; 2]) -> i8 {
    let row = |p: &[Q; 2]| vec![p[0].clone(), p[1].clone(), Q::one()];
    sign(&det(vec![row(a), row(b), row(c)]))
}

/// Insphere sign through the 5x5 lifted determinant, normalised so that a
/// point inside the sphere of a tet with positive orient3d gives +1.
pub fn insphere(a: &QP, b: &QP, c: &QP, d: &QP, e: &QP) -> i8 {
    let row = |p: &QP| {
        let l = dot(p, p);
        vec![p[0].clone(), p[1].clone(), p[2].clone(), l, Q::one()]
    };
    sign(&det(vec![row(a), row(b), row(c), row(d), row(e)]))
}

pub fn lpi(p: &QP, qq: &QP, r: &QP, s: &QP, t: &QP) -> QP {
    let n = cross(&sub(s, r), &sub(t, r));
    let dir = sub(qq, p);
    let den = dot(&n, &dir);
    assert!(!den.is_zero(), "line parallel to plane");
    let lambda = dot(&n, &sub(r, p)) / den;
    add(p, &scale(&dir, &lambda))
}

pub fn tpi(planes: [[QP; 3]; 3]) -> QP {
    let mut m = Vec::new();
    let mut b = Vec::new();
    for pl in &planes {
        let n = cross(&sub(&pl[1], &pl[0]), &sub(&pl[2], &pl[0]));
        b.push(dot(&n, &pl[0]));
        m.push(n.to_vec());
    }
    let x = solve(m, b).expect("planes do not meet in a point");
    [x[0].clone(), x[1].clone(), x[2].clone()]
}

/// Projection dropping the given axis, in the predicates' axis order.
pub fn project(p: &QP, proj: usize) -> [Q; 2] {
    match proj {
        0 => [p[0].clone(), p[1].clone()], // xy
        1 => [p[1].clone(), p[2].clone()], // yz
        _ => [p[2].clone(), p[0].clone()], // zx
    }
}

pub fn collinear(a: &QP, b: &QP, c: &QP) -> bool {
    is_zero_vec(&cross(&sub(b, a), &sub(c, a)))
}

/// Parameter of `p` along `a + t (b - a)`, assuming collinearity and `a != b`.
fn param(p: &QP, a: &QP, b: &QP) -> Q {
    let d = sub(b, a);
    dot(&sub(p, a), &d) / dot(&d, &d)
}

pub fn point_in_inner_segment(p: &QP, a: &QP, b: &QP) -> bool {
    if !collinear(p, a, b) {
        return false;
    }
    let t = param(p, a, b);
    t.is_positive() && t < Q::one()
}

pub fn point_in_segment(p: &QP, a: &QP, b: &QP) -> bool {
    if !collinear(p, a, b) {
        return false;
    }
    let t = param(p, a, b);
    !t.is_negative() && t <= Q::one()
}

/// Open segments (a,b) and (p,q) meet in exactly one point; assumes coplanar.
pub fn inner_segments_cross(a: &QP, b: &QP, p: &QP, qq: &QP) -> bool {
    let d1 = sub(b, a);
    let d2 = sub(qq, p);
    let n = cross(&d1, &d2);
    if is_zero_vec(&n) {
        return false;
    }
    // a + s d1 = p + t d2  =>  s = ((p-a) x d2).n / |n|^2, t = ((p-a) x d1).n / |n|^2
    let ap = sub(p, a);
    let nn = dot(&n, &n);
    let s = dot(&cross(&ap, &d2), &n) / &nn;
    let t = dot(&cross(&ap, &d1), &n) / &nn;
    // the lines must actually meet
    let x1 = add(a, &scale(&d1, &s));
    let x2 = add(p, &scale(&d2, &t));
    if x1 != x2 {
        return false;
    }
    let one = Q::one();
    s.is_positive() && s < one && t.is_positive() && t < one
}

/// Barycentric coordinates of a point coplanar with a non-degenerate triangle.
pub fn barycentric(p: &QP, a: &QP, b: &QP, c: &QP) -> [Q; 3] {
    let n = cross(&sub(b, a), &sub(c, a));
    let nn = dot(&n, &n);
    let u = dot(&cross(&sub(b, p), &sub(c, p)), &n) / &nn;
    let v = dot(&cross(&sub(c, p), &sub(a, p)), &n) / &nn;
    let w = Q::one() - &u - &v;
    [u, v, w]
}

pub fn coplanar(a: &QP, b: &QP, c: &QP, d: &QP) -> bool {
    orient3d(a, b, c, d) == 0
}

pub fn point_in_inner_triangle(p: &QP, a: &QP, b: &QP, c: &QP) -> bool {
    coplanar(p, a, b, c) && barycentric(p, a, b, c).iter().all(|x| x.is_positive())
}

pub fn point_in_triangle(p: &QP, a: &QP, b: &QP, c: &QP) -> bool {
    coplanar(p, a, b, c) && barycentric(p, a, b, c).iter().all(|x| !x.is_negative())
}

/// Intersection parameter of the line `u1 + t (u2 - u1)` with the plane of
/// the triangle, if unique.
fn line_plane(u1: &QP, u2: &QP, a: &QP, b: &QP, c: &QP) -> Option<(Q, QP)> {
    let n = cross(&sub(b, a), &sub(c, a));
    let d = sub(u2, u1);
    let den = dot(&n, &d);
    if den.is_zero() {
        return None;
    }
    let t = dot(&n, &sub(a, u1)) / den;
    let x = add(u1, &scale(&d, &t));
    Some((t, x))
}

pub fn inner_segment_crosses_inner_triangle(u1: &QP, u2: &QP, a: &QP, b: &QP, c: &QP) -> bool {
    match line_plane(u1, u2, a, b, c) {
        Some((t, x)) => {
            t.is_positive() && t < Q::one() && barycentric(&x, a, b, c).iter().all(|v| v.is_positive())
        }
        None => false,
    }
}

pub fn inner_segment_crosses_triangle(u1: &QP, u2: &QP, a: &QP, b: &QP, c: &QP) -> bool {
    match line_plane(u1, u2, a, b, c) {
        Some((t, x)) => {
            t.is_positive() && t < Q::one() && barycentric(&x, a, b, c).iter().all(|v| !v.is_negative())
        }
        None => false,
    }
}

/// Clips a convex polygon with the closed half-space `n . x <= off`.
pub fn clip(poly: &[QP], n: &QP, off: &Q) -> Vec<QP> {
    let mut out = Vec::new();
    let k = poly.len();
    for i in 0..k {
        let a = &poly[i];
        let b = &poly[(i + 1) % k];
        let da = dot(n, a) - off;
        let db = dot(n, b) - off;
        if !da.is_positive() {
            out.push(a.clone());
        }
        if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
            let t = &da / (&da - &db);
            out.push(add(a, &scale(&sub(b, a), &t)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Closed half-spaces `n . x <= off` bounding a non-degenerate tet.
pub fn tet_halfspaces(t: &[QP; 4]) -> Vec<(QP, Q)> {
    let mut hs = Vec::new();
    for i in 0..4 {
        let f: Vec<&QP> = (0..4).filter(|&j| j != i).map(|j| &t[j]).collect();
        let mut n = cross(&sub(f[1], f[0]), &sub(f[2], f[0]));
        let mut off = dot(&n, f[0]);
        if dot(&n, &t[i]) > off {
            n = scale(&n, &qi(-1));
            off = -off;
        }
        hs.push((n, off));
    }
    hs
}

/// The closed triangle clipped to the closed tet.
pub fn triangle_tet_intersection(tri: &[QP; 3], tet: &[QP; 4]) -> Vec<QP> {
    let mut poly: Vec<QP> = tri.to_vec();
    for (n, off) in tet_halfspaces(tet) {
        if poly.is_empty() {
            break;
        }
        poly = clip(&poly, &n, &off);
    }
    poly
}

/// Does the closed triangle meet the open tet?
pub fn triangle_meets_tet_interior(tri: &[QP; 3], tet: &[QP; 4]) -> bool {
    let poly = triangle_tet_intersection(tri, tet);
    if poly.is_empty() {
        return false;
    }
    // the vertex centroid lies in the relative interior of the clipped polygon
    let k = qi(poly.len() as i64);
    let mut c = [Q::zero(), Q::zero(), Q::zero()];
    for p in &poly {
        c = add(&c, p);
    }
    let c = scale(&c, &(Q::one() / k));
    tet_halfspaces(tet).iter().all(|(n, off)| dot(n, &c) < *off)
}

/// Does the closed triangle meet the closed tet?
pub fn triangle_meets_tet(tri: &[QP; 3], tet: &[QP; 4]) -> bool {
    !triangle_tet_intersection(tri, tet).is_empty()
}

/// Strict inclusion of a coplanar point in a convex polygon (any orientation).
pub fn point_in_convex_polygon(p: &QP, poly: &[QP], strict: bool) -> bool {
    let n = polygon_normal(poly);
    let mut seen = 0i8;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        let s = sign(&dot(&cross(&sub(b, a), &sub(p, a)), &n));
        if s == 0 {
            if strict {
                return false;
            }
            continue;
        }
        if seen == 0 {
            seen = s;
        } else if seen != s {
            return false;
        }
    }
    true
}

/// Newell normal of a planar polygon.
pub fn polygon_normal(poly: &[QP]) -> QP {
    let mut n = [Q::zero(), Q::zero(), Q::zero()];
    for i in 0..poly.len() {
        n = add(&n, &cross(&poly[i], &poly[(i + 1) % poly.len()]));
    }
    n
}

/// A rational point in the closed triangle with small denominators.
pub fn sample_in_triangle(tri: &[QP; 3], i: u64, j: u64, denom: u64) -> QP {
    // barycentric (i, j, denom - i - j) / denom with i + j <= denom
    let d = Q::from_integer(BigInt::from(denom));
    let u = Q::from_integer(BigInt::from(i)) / &d;
    let v = Q::from_integer(BigInt::from(j)) / &d;
    let w = Q::one() - &u - &v;
    add(&add(&scale(&tri[0], &u), &scale(&tri[1], &v)), &scale(&tri[2], &w))
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
