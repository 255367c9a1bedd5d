//! Invariant checks on a finished complex and its skin.

use crate::bsp::{BspComplex, Color};
use crate::geom::plane_projection;
use crate::soup::Origin;
use crate::solid::SurfaceMesh;
use polycell_predicates::{orient2d_indirect, orient3d, GenericPoint, Point3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub result: std::result::Result<String, String>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn push(&mut self, name: &'static str, result: std::result::Result<String, String>) {
        self.items.push(CheckItem { name, result });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.result.is_ok())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in &self.items {
            match &i.result {
                Ok(m) if m.is_empty() => s += &format!("ok   {}\n", i.name),
                Ok(m) => s += &format!("ok   {} ({m})\n", i.name),
                Err(m) => s += &format!("FAIL {}: {m}\n", i.name),
            }
        }
        s
    }
}

fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &Point3, b: &Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// An exact point inside triangle `t`, near the barycentric point `w`: the
/// meet of the triangle plane with two planes through a vertex and the
/// rounded target. `None` if that point falls outside the closed triangle.
pub fn exact_sample(t: &[Point3; 3], w: [f64; 3]) -> Option<GenericPoint> {
    let r: Point3 = std::array::from_fn(|k| w[0] * t[0][k] + w[1] * t[1][k] + w[2] * t[2][k]);
    let n = cross(&sub(&t[1], &t[0]), &sub(&t[2], &t[0]));
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if len == 0.0 {
        return None;
    }
    let scale = sub(&t[1], &t[0]).iter().map(|x| x.abs()).fold(0.0, f64::max) / len;
    let lift = |p: &Point3| -> Point3 { std::array::from_fn(|k| p[k] + n[k] * scale) };
    let g = GenericPoint::tpi([t[0], t[1], t[2]], [t[0], lift(&t[0]), r], [t[1], lift(&t[1]), r]);
    if !g.is_well_defined() || !polycell_predicates::derived::point_in_triangle(
        &g,
        &GenericPoint::Explicit(t[0]),
        &GenericPoint::Explicit(t[1]),
        &GenericPoint::Explicit(t[2]),
    ) {
        return None;
    }
    Some(g)
}

/// Whether the exact point `p`, known to lie on the plane of the facet, is
/// in the closed facet polygon.
fn in_facet(cx: &BspComplex, f: usize, p: &GenericPoint) -> bool {
    let fc = &cx.facets[f];
    let [a, b, c] = fc.plane.map(|i| &cx.points[i as usize]);
    let pr = plane_projection(a, b, c);
    let v: Vec<&GenericPoint> = fc.verts.iter().map(|&i| &cx.vertices[i as usize].point).collect();
    let n = v.len();
    let sigma = (0..n)
        .map(|i| orient2d_indirect(v[(i + n - 1) % n], v[i], v[(i + 1) % n], pr))
        .find(|&s| s != 0)
        .unwrap_or(0);
    (0..n).all(|i| {
        let s = orient2d_indirect(v[i], v[(i + 1) % n], p, pr);
        s == 0 || s == sigma
    })
}

/// Samples `per_triangle` exact points on every input constraint and checks
/// that each lies on a black facet. Returns the number of points tested.
pub fn check_conformity(cx: &BspComplex, approx: &[Point3], per_triangle: usize, seed: u64) -> std::result::Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boxes: Vec<(Point3, Point3)> = cx
        .facets
        .iter()
        .map(|f| {
            let mut lo = [f64::INFINITY; 3];
            let mut hi = [f64::NEG_INFINITY; 3];
            for &v in &f.verts {
                for k in 0..3 {
                    lo[k] = lo[k].min(approx[v as usize][k]);
                    hi[k] = hi[k].max(approx[v as usize][k]);
                }
            }
            (lo, hi)
        })
        .collect();
    let mut tested = 0;
    for (ki, k) in cx.constraints.iter().enumerate() {
        if k.origin == Origin::Virtual {
            continue;
        }
        let t = k.v.map(|i| cx.points[i as usize]);
        let candidates: Vec<usize> = (0..cx.facets.len())
            .filter(|&f| {
                let fc = &cx.facets[f];
                let [a, b, c] = fc.plane.map(|i| &cx.points[i as usize]);
                fc.color == Color::Black && t.iter().all(|p| orient3d(a, b, c, p) == 0)
            })
            .collect();
        let mut got = 0;
        let mut tries = 0;
        while got < per_triangle && tries < per_triangle * 20 {
            tries += 1;
            let (u, v): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
            let Some(p) = exact_sample(&t, [1.0 - u - v, u, v]) else {
                continue;
            };
            got += 1;
            let pa = p.approximate().map_err(|e| e.to_string())?;
            let hit = candidates.iter().any(|&f| {
                let (lo, hi) = &boxes[f];
                let tol = 1e-9 * (1.0 + hi.iter().chain(lo).fold(0.0f64, |m, x| m.max(x.abs())));
                (0..3).all(|j| pa[j] >= lo[j] - tol && pa[j] <= hi[j] + tol) && in_facet(cx, f, &p)
            });
            if !hit {
                return Err(format!("sample {pa:?} on constraint {ki} is on no black facet"));
            }
        }
        tested += got;
    }
    Ok(tested)
}

/// Structural, conformity and skin checks of a labeled complex.
pub fn check_all(cx: &BspComplex, skin: Option<&SurfaceMesh>, approx: &[Point3], samples: usize, seed: u64) -> CheckReport {
    let mut r = CheckReport::default();
    r.push(
        "complex (convex planar cells, closed shells, exact provenance)",
        cx.validate().map(|_| format!("{} cells, {} facets", cx.cells.len(), cx.facets.len())).map_err(|e| e.to_string()),
    );
    let grey = cx.facets.iter().filter(|f| f.color == Color::Grey).count();
    r.push(
        "no grey facets",
        if grey == 0 { Ok(String::new()) } else { Err(format!("{grey} grey facets")) },
    );
    r.push(
        "conformity",
        check_conformity(cx, approx, samples, seed).map(|n| format!("{n} samples")),
    );
    if let Some(s) = skin {
        r.push(
            "skin is a closed oriented 2-manifold",
            s.check_manifold().map(|_| format!("{} faces, volume {}", s.faces.len(), s.volume())).map_err(|e| e.to_string()),
        );
    }
    r
}
