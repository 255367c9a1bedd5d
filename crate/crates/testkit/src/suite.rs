//! Randomized and curated predicate cases checked against the rational oracle.

use crate::rational::{self as r, Q, QP};
use num_traits::One;
use polycell_predicates as pr;
use polycell_predicates::{GenericPoint as G, Point3, Projection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Default)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub mismatches: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if got != want && self.mismatches.len() < 20 {
            self.mismatches.push(format!("got {:?} want {:?}: {}", got, want, ctx()));
        } else if got != want {
            self.mismatches.push(String::new());
        }
    }
}

/// Exact rational coordinates of a generic point.
pub fn gq(p: &G) -> QP {
    match p {
        G::Explicit(c) => r::qp(c),
        G::Lpi(l) => r::lpi(&r::qp(&l.p), &r::qp(&l.q), &r::qp(&l.r), &r::qp(&l.s), &r::qp(&l.t)),
        G::Tpi(t) => {
            let pl = |k: usize| [r::qp(&t.planes[k][0]), r::qp(&t.planes[k][1]), r::qp(&t.planes[k][2])];
            r::tpi([pl(0), pl(1), pl(2)])
        }
    }
}

fn proj_index(p: Projection) -> usize {
    match p {
        Projection::XY => 0,
        Projection::YZ => 1,
        Projection::ZX => 2,
    }
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coord(&mut self) -> f64 {
        match self.rng.gen_range(0..4) {
            0 => self.rng.gen_range(-1.0..1.0),
            1 => self.rng.gen_range(-3i32..=3) as f64,
            2 => self.rng.gen_range(-16i32..=16) as f64 / 8.0,
            _ => {
                let e = self.rng.gen_range(-20..20);
                self.rng.gen_range(-1.0..1.0) * 2f64.powi(e)
            }
        }
    }

    pub fn point(&mut self) -> Point3 {
        [self.coord(), self.coord(), self.coord()]
    }

    pub fn grid_point(&mut self, k: i32) -> Point3 {
        [
            self.rng.gen_range(-k..=k) as f64,
            self.rng.gen_range(-k..=k) as f64,
            self.rng.gen_range(-k..=k) as f64,
        ]
    }

    /// Perturbs each coordinate by a few units in the last place.
    pub fn jitter(&mut self, p: Point3) -> Point3 {
        let mut q = p;
        for c in &mut q {
            let k: i32 = self.rng.gen_range(-2..=2);
            let ulp = if *c == 0.0 { f64::EPSILON } else { c.abs() * f64::EPSILON };
            *c += k as f64 * ulp;
        }
        q
    }

    /// A point near (or on) the plane through `a, b, c`.
    pub fn near_plane(&mut self, a: Point3, b: Point3, c: Point3) -> Point3 {
        let u: f64 = self.rng.gen_range(-2.0..2.0);
        let v: f64 = self.rng.gen_range(-2.0..2.0);
        let p = [
            a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
            a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1]),
            a[2] + u * (b[2] - a[2]) + v * (c[2] - a[2]),
        ];
        if self.rng.gen_bool(0.5) {
            self.jitter(p)
        } else {
            p
        }
    }

    /// Integer point on the plane `a + i u + j v`.
    pub fn on_grid_plane(&mut self, a: Point3, u: Point3, v: Point3) -> Point3 {
        let i = self.rng.gen_range(-3i32..=3) as f64;
        let j = self.rng.gen_range(-3i32..=3) as f64;
        [
            a[0] + i * u[0] + j * v[0],
            a[1] + i * u[1] + j * v[1],
            a[2] + i * u[2] + j * v[2],
        ]
    }

    pub fn lpi(&mut self) -> G {
        loop {
            let g = if self.rng.gen_bool(0.5) {
                G::lpi(self.point(), self.point(), self.point(), self.point(), self.point())
            } else {
                G::lpi(
                    self.grid_point(3),
                    self.grid_point(3),
                    self.grid_point(3),
                    self.grid_point(3),
                    self.grid_point(3),
                )
            };
            if g.is_well_defined() {
                return g;
            }
        }
    }

    pub fn tpi(&mut self) -> G {
        loop {
            let mut tri = || -> [Point3; 3] {
                if self.rng.gen_bool(0.5) {
                    [self.point(), self.point(), self.point()]
                } else {
                    [self.grid_point(3), self.grid_point(3), self.grid_point(3)]
                }
            };
            let g = G::tpi(tri(), tri(), tri());
            if g.is_well_defined() {
                return g;
            }
        }
    }

    pub fn generic(&mut self) -> G {
        match self.rng.gen_range(0..3) {
            0 => G::Explicit(self.point()),
            1 => self.lpi(),
            _ => self.tpi(),
        }
    }
}

fn fmt_pts(p: &[Point3]) -> String {
    format!("{:?}", p)
}

fn q2(p: &Point3) -> [Q; 2] {
    [r::q(p[0]), r::q(p[1])]
}

/// orient2d, orient3d and insphere on explicit points, plus filter soundness.
pub fn base_predicates(seed: u64, n: usize) -> Vec<Report> {
    let mut g = Gen::new(seed);
    let mut o2 = Report::new("orient2d");
    let mut o3 = Report::new("orient3d");
    let mut is = Report::new("insphere");
    let mut sos = Report::new("insphere (symbolic perturbation)");
    let mut coin = Report::new("coincident_points");
    let mut filt = Report::new("filter soundness");
    for i in 0..n {
        // orient2d
        let (a, b) = (g.point(), g.point());
        let c = match i % 3 {
            0 => g.point(),
            1 => {
                let t: f64 = g.rng.gen_range(-2.0..2.0);
                g.jitter([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), 0.0])
            }
            _ => {
                let (a, b) = (g.grid_point(3), g.grid_point(3));
                let k = g.rng.gen_range(-2i32..=2) as f64;
                [a[0] + k * (b[0] - a[0]), a[1] + k * (b[1] - a[1]), 0.0]
            }
        };
        let (a2, b2, c2) = ([a[0], a[1]], [b[0], b[1]], [c[0], c[1]]);
        o2.check(pr::orient2d(&a2, &b2, &c2), r::orient2d(&q2(&a), &q2(&b), &q2(&c)), || {
            fmt_pts(&[a, b, c])
        });
        if let Some(s) = pr::kernel::orient2d_filter(&a2, &b2, &c2) {
            filt.check(s, pr::kernel::orient2d_exact(&a2, &b2, &c2), || fmt_pts(&[a, b, c]));
        }
        if let Some(s) = pr::kernel::orient2d_interval(&a2, &b2, &c2) {
            filt.check(s, pr::kernel::orient2d_exact(&a2, &b2, &c2), || fmt_pts(&[a, b, c]));
        }

        // orient3d
        let (a, b, c) = (g.point(), g.point(), g.point());
        let d = match i % 3 {
            0 => g.point(),
            1 => g.near_plane(a, b, c),
            _ => {
                let o = g.grid_point(2);
                let u = g.grid_point(2);
                let v = g.grid_point(2);
                let (a, b, c) = (g.on_grid_plane(o, u, v), g.on_grid_plane(o, u, v), g.on_grid_plane(o, u, v));
                let d = g.on_grid_plane(o, u, v);
                o3.check(pr::orient3d(&a, &b, &c, &d), r::orient3d(&r::qp(&a), &r::qp(&b), &r::qp(&c), &r::qp(&d)), || {
                    fmt_pts(&[a, b, c, d])
                });
                d
            }
        };
        let (qa, qb, qc, qd) = (r::qp(&a), r::qp(&b), r::qp(&c), r::qp(&d));
        o3.check(pr::orient3d(&a, &b, &c, &d), r::orient3d(&qa, &qb, &qc, &qd), || fmt_pts(&[a, b, c, d]));
        if let Some(s) = pr::kernel::orient3d_filter(&a, &b, &c, &d) {
            filt.check(s, pr::kernel::orient3d_exact(&a, &b, &c, &d), || fmt_pts(&[a, b, c, d]));
        }
        if let Some(s) = pr::kernel::orient3d_interval(&a, &b, &c, &d) {
            filt.check(s, pr::kernel::orient3d_exact(&a, &b, &c, &d), || fmt_pts(&[a, b, c, d]));
        }

        // insphere: random, cospherical on the integer sphere of radius 3, near-cospherical
        if i % 2 == 0 {
            let pts: Vec<Point3> = match i % 6 {
                0 => (0..5).map(|_| g.point()).collect(),
                2 => (0..5).map(|_| sphere3(&mut g)).collect(),
                _ => {
                    let mut v: Vec<Point3> = (0..5).map(|_| sphere3(&mut g)).collect();
                    v[4] = g.jitter(v[4]);
                    v
                }
            };
            let q: Vec<QP> = pts.iter().map(r::qp).collect();
            let want = r::insphere(&q[0], &q[1], &q[2], &q[3], &q[4]);
            is.check(pr::insphere(&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]), want, || fmt_pts(&pts));
            if let Some(s) = pr::kernel::insphere_filter(&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]) {
                filt.check(s, pr::kernel::insphere_exact(&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]), || {
                    fmt_pts(&pts)
                });
            }
            if r::orient3d(&q[0], &q[1], &q[2], &q[3]) != 0 {
                let mut ranks = [0u32, 1, 2, 3, 4];
                for k in (1..5).rev() {
                    let j = g.rng.gen_range(0..=k);
                    ranks.swap(k, j);
                }
                let got = pr::insphere_perturbed([&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]], ranks);
                sos.check(got, insphere_perturbed_oracle(&q, ranks), || format!("{:?} {:?}", pts, ranks));
            }
        }

        // coincidence
        let a = g.point();
        let b = if g.rng.gen_bool(0.5) { a } else { g.jitter(a) };
        let want = r::qp(&a) == r::qp(&b);
        coin.check(pr::coincident_points_3d(&a, &b), want, || fmt_pts(&[a, b]));
    }
    vec![o2, o3, is, sos, coin, filt]
}

fn sphere3(g: &mut Gen) -> Point3 {
    // integer points with x^2 + y^2 + z^2 = 9
    let base: [f64; 3] = if g.rng.gen_bool(0.2) { [3.0, 0.0, 0.0] } else { [2.0, 2.0, 1.0] };
    let mut p = base;
    for k in (1..3).rev() {
        let j = g.rng.gen_range(0..=k);
        p.swap(k, j);
    }
    for c in &mut p {
        if g.rng.gen_bool(0.5) {
            *c = -*c;
        }
    }
    p
}

/// Lifted determinant with the lift of each point raised by `delta^(5 - k)`,
/// `k` being its position in increasing rank order and `delta` tiny enough
/// that higher ranks dominate, evaluated exactly.
fn insphere_perturbed_oracle(q: &[QP], ranks: [u32; 5]) -> i8 {
    let plain = r::insphere(&q[0], &q[1], &q[2], &q[3], &q[4]);
    if plain != 0 {
        return plain;
    }
    let delta = Q::one() / Q::from_integer(num_bigint::BigInt::from(2).pow(1500u32));
    let mut rows = Vec::new();
    for (i, p) in q.iter().enumerate() {
        let k = ranks.iter().filter(|&&x| x < ranks[i]).count();
        let mut eps = Q::one();
        for _ in k..5 {
            eps *= &delta;
        }
        let lift = r::dot(p, p) + eps;
        rows.push(vec![p[0].clone(), p[1].clone(), p[2].clone(), lift, Q::one()]);
    }
    r::sign(&r::det(rows))
}

/// Indirect orient3d/orient2d, coordinate comparison, same_point and approximate.
pub fn indirect_predicates(seed: u64, n: usize) -> Vec<Report> {
    let mut g = Gen::new(seed);
    let mut o3 = Report::new("orient3d_indirect");
    let mut o2 = Report::new("orient2d_indirect");
    let mut cmp = Report::new("cmp_coord / same_point");
    let mut apx = Report::new("approximate (1 ulp)");
    let mut filt = Report::new("indirect filter soundness");
    for i in 0..n {
        let mut pts: Vec<G> = (0..4)
            .map(|_| if g.rng.gen_bool(0.5) { G::Explicit(g.point()) } else { g.generic() })
            .collect();
        // degenerate arrangements: test an implicit point against one of its own planes / lines
        match i % 4 {
            1 => {
                if let G::Lpi(l) = g.lpi() {
                    pts[0] = G::Lpi(l);
                    pts[1] = G::Explicit(l.r);
                    pts[2] = G::Explicit(l.s);
                    pts[3] = G::Explicit(l.t);
                    if g.rng.gen_bool(0.5) {
                        pts[3] = G::Explicit(l.p);
                        pts[2] = G::Explicit(l.q);
                        pts[1] = G::Explicit(g.point());
                    }
                }
            }
            2 => {
                if let G::Tpi(t) = g.tpi() {
                    let k = g.rng.gen_range(0..3);
                    pts[0] = G::Tpi(t);
                    pts[1] = G::Explicit(t.planes[k][0]);
                    pts[2] = G::Explicit(t.planes[k][1]);
                    pts[3] = G::Explicit(t.planes[k][2]);
                    // second implicit point sharing the plane
                    let other = G::lpi(g.point(), g.point(), t.planes[k][0], t.planes[k][1], t.planes[k][2]);
                    if other.is_well_defined() {
                        pts[1] = other;
                    }
                }
            }
            _ => {}
        }
        let mut perm = [0usize, 1, 2, 3];
        for k in (1..4).rev() {
            let j = g.rng.gen_range(0..=k);
            perm.swap(k, j);
        }
        let p: Vec<&G> = perm.iter().map(|&k| &pts[k]).collect();
        let q: Vec<QP> = p.iter().map(|x| gq(x)).collect();
        let want = r::orient3d(&q[0], &q[1], &q[2], &q[3]);
        o3.check(pr::orient3d_indirect(p[0], p[1], p[2], p[3]), want, || format!("{:?}", p));
        if let Some(s) = pr::implicit::orient3d_indirect_filter(p[0], p[1], p[2], p[3]) {
            filt.check(s, pr::implicit::orient3d_indirect_exact(p[0], p[1], p[2], p[3]), || format!("{:?}", p));
        }
        for proj in Projection::ALL {
            let k = proj_index(proj);
            let want = r::orient2d(&r::project(&q[0], k), &r::project(&q[1], k), &r::project(&q[2], k));
            o2.check(pr::orient2d_indirect(p[0], p[1], p[2], proj), want, || format!("{:?} {:?}", proj, p));
        }
        for axis in 0..3 {
            let want = r::sign(&(&q[0][axis] - &q[1][axis]));
            cmp.check(pr::cmp_coord(p[0], p[1], axis), want, || format!("{:?} {:?}", axis, p));
        }
        cmp.check(pr::same_point(p[0], p[1]), q[0] == q[1], || format!("{:?}", p));
        if let Ok(a) = p[0].approximate() {
            let ok = (0..3).all(|k| within_ulp(a[k], &q[0][k]));
            apx.check(ok, true, || format!("{:?} -> {:?}", p[0], a));
        }
    }
    vec![o3, o2, cmp, apx, filt]
}

fn within_ulp(a: f64, exact: &Q) -> bool {
    let lo = r::q(a.next_down());
    let hi = r::q(a.next_up());
    *exact >= lo && *exact <= hi
}

/// Coplanar configuration: points on an integer lattice plane, with some
/// implicit points lying on the same plane.
fn coplanar_set(g: &mut Gen, k: usize) -> Vec<G> {
    let o = g.grid_point(2);
    let (u, v) = loop {
        let u = g.grid_point(2);
        let v = g.grid_point(2);
        let n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
        if n != [0.0; 3] {
            break (u, v);
        }
    };
    let plane = [o, [o[0] + u[0], o[1] + u[1], o[2] + u[2]], [o[0] + v[0], o[1] + v[1], o[2] + v[2]]];
    (0..k)
        .map(|_| {
            if g.rng.gen_bool(0.75) {
                G::Explicit(g.on_grid_plane(o, u, v))
            } else {
                // line through two lattice points of the plane, cut by a random plane
                let a = g.on_grid_plane(o, u, v);
                let b = g.on_grid_plane(o, u, v);
                let l = G::lpi(a, b, g.grid_point(3), g.grid_point(3), g.grid_point(3));
                if a != b && l.is_well_defined() {
                    l
                } else {
                    let t = G::tpi(plane, [g.grid_point(3), g.grid_point(3), g.grid_point(3)], [
                        g.grid_point(3),
                        g.grid_point(3),
                        g.grid_point(3),
                    ]);
                    if t.is_well_defined() {
                        t
                    } else {
                        G::Explicit(g.on_grid_plane(o, u, v))
                    }
                }
            }
        })
        .collect()
}

/// The derived predicate catalogue against geometric rational oracles.
pub fn derived_predicates(seed: u64, n: usize) -> Vec<Report> {
    let mut g = Gen::new(seed);
    let mut mis = Report::new("misaligned");
    let mut seg = Report::new("point_in_(inner_)segment");
    let mut isc = Report::new("inner_segments_cross");
    let mut tri = Report::new("point_in_(inner_)triangle");
    let mut st = Report::new("inner_segment_crosses_(inner_)triangle");
    for i in 0..n {
        // collinear-rich triples
        let a = g.grid_point(2);
        let b = g.grid_point(2);
        let c = if i % 2 == 0 {
            let k = g.rng.gen_range(-3i32..=3) as f64;
            [a[0] + k * (b[0] - a[0]), a[1] + k * (b[1] - a[1]), a[2] + k * (b[2] - a[2])]
        } else {
            g.grid_point(2)
        };
        let (ga, gb) = (G::Explicit(a), G::Explicit(b));
        let gc = if i % 3 == 0 && a != b {
            let l = G::lpi(a, b, g.grid_point(3), g.grid_point(3), g.grid_point(3));
            if l.is_well_defined() {
                l
            } else {
                G::Explicit(c)
            }
        } else {
            G::Explicit(c)
        };
        let (qa, qb, qc) = (gq(&ga), gq(&gb), gq(&gc));
        mis.check(pr::misaligned(&ga, &gb, &gc), !r::collinear(&qa, &qb, &qc), || format!("{:?}", (a, b, &gc)));
        if qa != qb {
            seg.check(pr::point_in_inner_segment(&gc, &ga, &gb), r::point_in_inner_segment(&qc, &qa, &qb), || {
                format!("{:?}", (&gc, a, b))
            });
            seg.check(pr::point_in_segment(&gc, &ga, &gb), r::point_in_segment(&qc, &qa, &qb), || {
                format!("{:?}", (&gc, a, b))
            });
            // endpoint
            seg.check(pr::point_in_segment(&ga, &ga, &gb), true, String::new);
            seg.check(pr::point_in_inner_segment(&ga, &ga, &gb), false, String::new);
        }

        // coplanar segments and triangles
        let s = coplanar_set(&mut g, 5);
        let q: Vec<QP> = s.iter().map(gq).collect();
        if q[0] != q[1] && q[2] != q[3] {
            let want = r::inner_segments_cross(&q[0], &q[1], &q[2], &q[3]);
            isc.check(pr::inner_segments_cross(&s[0], &s[1], &s[2], &s[3]), want, || format!("{:?}", &s[..4]));
            isc.check(pr::inner_segments_cross(&s[2], &s[3], &s[0], &s[1]), want, || format!("{:?}", &s[..4]));
        }
        if !r::collinear(&q[0], &q[1], &q[2]) {
            tri.check(
                pr::point_in_inner_triangle(&s[3], &s[0], &s[1], &s[2]),
                r::point_in_inner_triangle(&q[3], &q[0], &q[1], &q[2]),
                || format!("{:?}", &s[..4]),
            );
            tri.check(
                pr::point_in_triangle(&s[3], &s[0], &s[1], &s[2]),
                r::point_in_triangle(&q[3], &q[0], &q[1], &q[2]),
                || format!("{:?}", &s[..4]),
            );
            tri.check(pr::point_in_triangle(&s[1], &s[0], &s[1], &s[2]), true, String::new);
        }

        // segment against a triangle, not coplanar
        let t = coplanar_set(&mut g, 3);
        let qt: Vec<QP> = t.iter().map(gq).collect();
        if r::collinear(&qt[0], &qt[1], &qt[2]) {
            continue;
        }
        let (u1, u2) = match i % 4 {
            0 => (G::Explicit(g.grid_point(3)), G::Explicit(g.grid_point(3))),
            1 => {
                // through a vertex or along a lattice line of the triangle plane
                let s2 = coplanar_set(&mut g, 1);
                let p = match &t[0] {
                    G::Explicit(v) => *v,
                    _ => g.grid_point(2),
                };
                let d = g.grid_point(2);
                (s2[0], G::Explicit([2.0 * p[0] - d[0], 2.0 * p[1] - d[1], 2.0 * p[2] - d[2]]))
            }
            2 => (G::Explicit(g.grid_point(3)), g.generic()),
            _ => {
                let v = match (&t[1], &t[2]) {
                    (G::Explicit(a), G::Explicit(b)) => [(a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5, (a[2] + b[2]) * 0.5],
                    _ => g.grid_point(2),
                };
                let d = g.grid_point(2);
                (G::Explicit(d), G::Explicit([2.0 * v[0] - d[0], 2.0 * v[1] - d[1], 2.0 * v[2] - d[2]]))
            }
        };
        let (q1, q2) = (gq(&u1), gq(&u2));
        if q1 == q2 {
            continue;
        }
        let coplanar = r::coplanar(&q1, &qt[0], &qt[1], &qt[2]) && r::coplanar(&q2, &qt[0], &qt[1], &qt[2]);
        if coplanar {
            continue;
        }
        st.check(
            pr::inner_segment_crosses_inner_triangle(&u1, &u2, &t[0], &t[1], &t[2]),
            r::inner_segment_crosses_inner_triangle(&q1, &q2, &qt[0], &qt[1], &qt[2]),
            || format!("{:?}", (&u1, &u2, &t)),
        );
        st.check(
            pr::inner_segment_crosses_triangle(&u1, &u2, &t[0], &t[1], &t[2]),
            r::inner_segment_crosses_triangle(&q1, &q2, &qt[0], &qt[1], &qt[2]),
            || format!("{:?}", (&u1, &u2, &t)),
        );
    }
    vec![mis, seg, isc, tri, st]
}

/// Hand-built degenerate configurations.
pub fn degenerate_corpus() -> Vec<Report> {
    let mut rep = Report::new("curated degenerate corpus");
    let e = |x: f64, y: f64, z: f64| G::Explicit([x, y, z]);
    let o = e(0.0, 0.0, 0.0);
    let x = e(1.0, 0.0, 0.0);
    let y = e(0.0, 1.0, 0.0);
    let z = e(0.0, 0.0, 1.0);
    // collinear along axes and diagonals
    for k in [-2.0, -1.0, 0.5, 2.0, 1e-30, 1e30, 2f64.powi(60)] {
        rep.check(pr::misaligned(&o, &x, &e(k, 0.0, 0.0)), false, || "corpus case 1".to_string());
        rep.check(pr::misaligned(&o, &e(1.0, 1.0, 1.0), &e(k, k, k)), false, || "corpus case 2".to_string());
        rep.check(pr::misaligned(&o, &e(1.0, 1.0, 1.0), &e(k, k, k + 1.0)), k + 1.0 != k, || "corpus case 3".to_string());
    }
    // coplanar quadruples
    rep.check(pr::orient3d_indirect(&o, &x, &y, &e(1.0, 1.0, 0.0)), 0, || "corpus case 4".to_string());
    rep.check(pr::orient3d_indirect(&o, &x, &y, &e(1e-300, 1e300, 0.0)), 0, || "corpus case 5".to_string());
    rep.check(pr::orient3d_indirect(&o, &x, &y, &z), -1, || "corpus case 6".to_string());
    // shared vertices / edges
    rep.check(pr::inner_segments_cross(&o, &x, &o, &y), false, || "corpus case 7".to_string());
    rep.check(pr::inner_segments_cross(&o, &x, &x, &y), false, || "corpus case 8".to_string());
    rep.check(pr::inner_segments_cross(&o, &e(2.0, 0.0, 0.0), &x, &e(3.0, 0.0, 0.0)), false, || "corpus case 9".to_string());
    rep.check(pr::point_in_triangle(&x, &o, &x, &y), true, || "corpus case 10".to_string());
    rep.check(pr::point_in_inner_triangle(&e(0.5, 0.5, 0.0), &o, &x, &y), false, || "corpus case 11".to_string());
    rep.check(pr::point_in_triangle(&e(0.5, 0.5, 0.0), &o, &x, &y), true, || "corpus case 12".to_string());
    // cospherical: the 8 cube corners
    let c: Vec<Point3> = (0..8)
        .map(|i| [(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64])
        .collect();
    for i in 4..8 {
        rep.check(pr::insphere(&c[0], &c[1], &c[2], &c[4], &c[i]), 0, || "corpus case 13".to_string());
    }
    // implicit points at lattice positions
    let l = G::lpi([0.0; 3], [4.0, 4.0, 4.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 0.0, 1.0]);
    rep.check(pr::same_point(&l, &e(1.0, 1.0, 1.0)), true, || "corpus case 14".to_string());
    let l2 = G::lpi([1.0, 1.0, -5.0], [1.0, 1.0, 5.0], [0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]);
    rep.check(pr::same_point(&l, &l2), true, || "corpus case 15".to_string());
    let t = G::tpi(
        [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 0.0, 1.0]],
        [[0.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0]],
        [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]],
    );
    rep.check(pr::same_point(&l, &t), true, || "corpus case 16".to_string());
    rep.check(pr::point_in_inner_segment(&t, &o, &e(2.0, 2.0, 2.0)), true, || "corpus case 17".to_string());
    rep.check(pr::point_in_inner_segment(&t, &o, &e(1.0, 1.0, 1.0)), false, || "corpus case 18".to_string());
    rep.check(pr::point_in_segment(&t, &o, &e(1.0, 1.0, 1.0)), true, || "corpus case 19".to_string());
    let far = G::lpi([0.0; 3], [1.0, 0.0, 0.0], [2f64.powi(-40), 0.0, 0.0], [2f64.powi(-40), 1.0, 0.0], [2f64.powi(-40), 0.0, 1.0]);
    rep.check(pr::same_point(&far, &o), false, || "corpus case 20".to_string());
    rep.check(pr::cmp_coord(&far, &o, 0), 1, || "corpus case 21".to_string());
    vec![rep]
}

pub fn all_reports(seed: u64, n_base: usize, n_indirect: usize, n_derived: usize) -> Vec<Report> {
    let mut v = base_predicates(seed, n_base);
    v.extend(indirect_predicates(seed ^ 0x9e37, n_indirect));
    v.extend(derived_predicates(seed ^ 0x7f4a, n_derived));
    v.extend(degenerate_corpus());
    v
}

