//! Final colors of the facets left grey by the subdivision, and per-origin
//! black flags.
//!
//! After subdivision a facet is either covered by the union of its coplanar
//! constraints or interior-disjoint from it. A vertex strictly inside some
//! constraint proves coverage, a vertex outside all of them disproves it.
//! Otherwise an approximate barycenter certified to lie inside the facet
//! decides, and failing that a search for three non-collinear points on both
//! boundaries.

use crate::bsp::{BspComplex, Color};
use crate::error::Result;
use crate::geom::plane_projection;
use crate::soup::Origin;
use polycell_predicates::{cmp_coord, orient2d_indirect, orient2d_planar, GenericPoint, Planar, Point3, Projection, Sign};

/// Exact 2D tests on points of one plane, through a projection that keeps
/// the plane non-degenerate.
struct PlaneView {
    pr: Projection,
}

impl PlaneView {
    fn o2(&self, a: &GenericPoint, b: &GenericPoint, c: &GenericPoint) -> Sign {
        orient2d_indirect(a, b, c, self.pr)
    }

    fn on_segment(&self, p: &GenericPoint, a: &GenericPoint, b: &GenericPoint) -> bool {
        if self.o2(a, b, p) != 0 {
            return false;
        }
        let (i, j) = self.pr.axes();
        [i, j].iter().all(|&ax| cmp_coord(a, p, ax) * cmp_coord(p, b, ax) >= 0)
    }

    fn proper_cross(&self, u: &GenericPoint, w: &GenericPoint, a: &GenericPoint, b: &GenericPoint) -> bool {
        self.o2(u, w, a) * self.o2(u, w, b) < 0 && self.o2(a, b, u) * self.o2(a, b, w) < 0
    }

    fn in_triangle(&self, p: &GenericPoint, t: &[GenericPoint; 3], strict: bool) -> bool {
        let o = self.o2(&t[0], &t[1], &t[2]);
        (0..3).all(|i| {
            let s = self.o2(&t[i], &t[(i + 1) % 3], p);
            s == o || (!strict && s == 0)
        })
    }
}

/// A grey facet's geometry with the constraints it is tested against.
pub struct FacetQuery<'a> {
    view: PlaneView,
    verts: Vec<&'a GenericPoint>,
    cons: Vec<[GenericPoint; 3]>,
}

impl<'a> FacetQuery<'a> {
    pub fn new(cx: &'a BspComplex, f: u32, cons: &[u32]) -> FacetQuery<'a> {
        let fc = &cx.facets[f as usize];
        let [a, b, c] = fc.plane.map(|i| &cx.points[i as usize]);
        FacetQuery::from_parts(
            plane_projection(a, b, c),
            fc.verts.iter().map(|&v| &cx.vertices[v as usize].point).collect(),
            cons.iter()
                .map(|&k| cx.constraints[k as usize].v.map(|i| GenericPoint::Explicit(cx.points[i as usize])))
                .collect(),
        )
    }

    /// A convex polygon (as a vertex loop) and triangles, all on one plane
    /// that `pr` does not degenerate.
    pub fn from_parts(pr: Projection, verts: Vec<&'a GenericPoint>, cons: Vec<[GenericPoint; 3]>) -> FacetQuery<'a> {
        FacetQuery {
            view: PlaneView { pr },
            verts,
            cons,
        }
    }

    /// Orientation of the facet loop in the projection.
    fn loop_sign(&self) -> Sign {
        let n = self.verts.len();
        (0..n)
            .map(|i| self.view.o2(self.verts[(i + n - 1) % n], self.verts[i], self.verts[(i + 1) % n]))
            .find(|&s| s != 0)
            .unwrap_or(0)
    }

    /// Coverage decided from the vertices alone, when possible.
    pub fn vertex_test(&self) -> Option<bool> {
        let v = &self.view;
        if self.verts.iter().any(|p| self.cons.iter().any(|t| v.in_triangle(p, t, true))) {
            return Some(true);
        }
        if self.verts.iter().any(|p| self.cons.iter().all(|t| !v.in_triangle(p, t, false))) {
            return Some(false);
        }
        None
    }

    /// Tests the rounded barycenter of `approx`, the approximate facet
    /// vertices, if it is certified to lie strictly inside the facet.
    pub fn fast_barycenter_test(&self, approx: &[Point3]) -> Option<bool> {
        let n = approx.len() as f64;
        let mut b = [0.0; 3];
        for p in approx {
            for k in 0..3 {
                b[k] += p[k];
            }
        }
        let b = b.map(|x| x / n);
        let (i, j) = self.view.pr.axes();
        let bp = Planar::Coords([b[i], b[j]]);
        let sigma = self.loop_sign();
        if sigma == 0 {
            return None;
        }
        let m = self.verts.len();
        let inside = (0..m).all(|k| {
            let a = Planar::Point(self.verts[k]);
            let c = Planar::Point(self.verts[(k + 1) % m]);
            orient2d_planar(&a, &c, &bp, self.view.pr) == sigma
        });
        if !inside {
            return None;
        }
        Some(self.cons.iter().any(|t| {
            let tp = t.each_ref().map(Planar::Point);
            let o = orient2d_planar(&tp[0], &tp[1], &tp[2], self.view.pr);
            (0..3).all(|k| {
                let s = orient2d_planar(&tp[k], &tp[(k + 1) % 3], &bp, self.view.pr);
                s == o || s == 0
            })
        }))
    }

    /// Whether the facet interior meets the interior of constraint `t`,
    /// given that no facet vertex is strictly inside a constraint: three
    /// points on both boundaries, not on one edge of `t`, must exist.
    fn witnesses(&self, t: &[GenericPoint; 3]) -> bool {
        let v = &self.view;
        let n = self.verts.len();
        let mut masks: Vec<u8> = Vec::new();
        for j in 0..3 {
            let on = (0..n).any(|k| v.on_segment(&t[j], self.verts[k], self.verts[(k + 1) % n]));
            if on {
                masks.push(1 << j | 1 << ((j + 2) % 3));
            }
        }
        for &u in &self.verts {
            if t.iter().any(|a| polycell_predicates::same_point(u, a)) {
                continue;
            }
            let m = (0..3).fold(0u8, |m, j| if v.on_segment(u, &t[j], &t[(j + 1) % 3]) { m | 1 << j } else { m });
            if m != 0 {
                masks.push(m);
            }
        }
        for k in 0..n {
            let (u, w) = (self.verts[k], self.verts[(k + 1) % n]);
            for j in 0..3 {
                if v.proper_cross(u, w, &t[j], &t[(j + 1) % 3]) {
                    masks.push(1 << j);
                }
            }
        }
        masks.len() >= 3 && masks.iter().fold(7u8, |a, &m| a & m) == 0
    }

    /// Whether the facet interior meets the interior of the `i`-th
    /// constraint, by separating lines through the edges of either polygon.
    pub fn overlaps(&self, i: usize) -> bool {
        let t = &self.cons[i];
        let v = &self.view;
        let ot = v.o2(&t[0], &t[1], &t[2]);
        let sigma = self.loop_sign();
        let n = self.verts.len();
        let by_t = (0..3).any(|j| self.verts.iter().all(|p| v.o2(&t[j], &t[(j + 1) % 3], p) * ot <= 0));
        let by_f = (0..n).any(|k| {
            let (u, w) = (self.verts[k], self.verts[(k + 1) % n]);
            t.iter().all(|x| v.o2(u, w, x) * sigma <= 0)
        });
        !(by_t || by_f)
    }

    /// Exact coverage test by boundary witnesses.
    pub fn slow_exact_test(&self) -> bool {
        self.cons.iter().any(|t| self.witnesses(t))
    }

    /// Full decision: vertices, then the barycenter of the approximate
    /// vertices `approx`, then witnesses.
    pub fn covered(&self, approx: &[Point3]) -> bool {
        if self.cons.is_empty() {
            return false;
        }
        self.vertex_test()
            .or_else(|| self.fast_barycenter_test(approx))
            .unwrap_or_else(|| self.slow_exact_test())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColorStats {
    pub black: usize,
    pub white: usize,
    pub by_vertex: usize,
    pub by_barycenter: usize,
    pub by_witness: usize,
}

fn of_origin(cx: &BspComplex, f: u32, o: Origin) -> Vec<u32> {
    cx.facets[f as usize]
        .coplanar
        .iter()
        .copied()
        .filter(|&k| cx.constraints[k as usize].origin == o)
        .collect()
}

fn facet_approx(cx: &BspComplex, f: u32, approx: &[Point3]) -> Vec<Point3> {
    cx.facets[f as usize].verts.iter().map(|&v| approx[v as usize]).collect()
}

/// Colors every facet white or black and sets the per-origin black flags.
pub fn finalize_colors(cx: &mut BspComplex) -> Result<ColorStats> {
    let approx = cx.approximate_vertices()?;
    let mut stats = ColorStats::default();
    for f in 0..cx.facets.len() as u32 {
        let mut flags = [false; 2];
        if cx.facets[f as usize].color != Color::White {
            for (i, o) in [Origin::A, Origin::B].into_iter().enumerate() {
                let cons = of_origin(cx, f, o);
                if cons.is_empty() {
                    continue;
                }
                let q = FacetQuery::new(cx, f, &cons);
                flags[i] = if let Some(x) = q.vertex_test() {
                    stats.by_vertex += 1;
                    x
                } else if let Some(x) = q.fast_barycenter_test(&facet_approx(cx, f, &approx)) {
                    stats.by_barycenter += 1;
                    x
                } else {
                    stats.by_witness += 1;
                    q.slow_exact_test()
                };
            }
        }
        let fc = &mut cx.facets[f as usize];
        fc.black_a = flags[0];
        fc.black_b = flags[1];
        fc.color = if flags[0] || flags[1] { Color::Black } else { Color::White };
        if fc.color == Color::Black {
            stats.black += 1;
        } else {
            stats.white += 1;
        }
    }
    Ok(stats)
}
