//! The full pipeline and the operations built on it: repair, booleans and
//! self-intersection resolution.

use crate::bsp::{BspComplex, Color, OriginFilter, OUTER};
use crate::classify::classify_cells;
use crate::coloring::{finalize_colors, ColorStats};
use crate::constraints::{build_virtual_constraints, detect_boundary_edges, WitnessStats};
use crate::delaunay::{build_delaunay, DelaunayOptions};
use crate::error::{Error, Result};
use crate::mapping::map_constraints;
use crate::soup::{condition_input, ConditionStats, Origin, Soup};
use polycell_predicates::{orient2d_indirect, GenericPoint, Point3, Sign};
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub presort: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { presort: true }
    }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineStats {
    /// Wall time per phase, in pipeline order.
    pub phases: Vec<(&'static str, Duration)>,
    pub input: ConditionStats,
    pub points: usize,
    pub constraints: usize,
    pub virtual_constraints: usize,
    pub witnesses: WitnessStats,
    pub tets: usize,
    pub splits: usize,
    pub noop_splits: usize,
    pub cells: usize,
    pub facets: usize,
    pub vertices: usize,
    pub colors: ColorStats,
    /// Peak resident set size in KiB, where the platform reports it.
    pub peak_rss_kib: Option<u64>,
}

impl PipelineStats {
    fn time<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.phases.push((name, t0.elapsed()));
        out
    }
}

/// Peak resident set size of this process, from `/proc/self/status`.
pub fn peak_rss_kib() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = s.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Conditions the input and builds the colored, fully subdivided complex.
pub fn build_complex(parts: &[(&Soup, Origin)], opts: PipelineOptions) -> Result<(BspComplex, PipelineStats)> {
    let mut st = PipelineStats::default();
    let cond = st.time("input", || condition_input(parts))?;
    st.input = cond.stats.clone();
    let mesh = st.time("Delaunay", || {
        build_delaunay(&cond.points, DelaunayOptions { presort: opts.presort })
    })?;
    st.tets = mesh.num_finite();
    let (cons, map, ws) = st.time("map", || -> Result<_> {
        let mut cons = cond.constraints.clone();
        let boundary = detect_boundary_edges(&mesh.points, &cons);
        let (virt, ws) = build_virtual_constraints(&mesh, &cons, &boundary)?;
        cons.extend(virt);
        let map = map_constraints(&mesh, &cons);
        Ok((cons, map, ws))
    })?;
    st.witnesses = ws;
    st.virtual_constraints = ws.local + ws.global;
    st.points = mesh.points.len();
    st.constraints = cons.len();
    let mut cx = st.time("split", || {
        let mut cx = BspComplex::from_tetmesh(&mesh, &cons, &map);
        cx.subdivide_all();
        cx
    });
    st.colors = st.time("color", || finalize_colors(&mut cx))?;
    st.splits = cx.stats.splits;
    st.noop_splits = cx.stats.noops;
    st.cells = cx.cells.len();
    st.facets = cx.facets.len();
    st.vertices = cx.vertices.len();
    Ok((cx, st))
}

/// Polygonal surface with faces as vertex loops.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<u32>>,
}

impl SurfaceMesh {
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Fan triangulation from the first vertex of each face.
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        self.faces
            .iter()
            .flat_map(|f| (1..f.len() - 1).map(move |i| [f[0], f[i], f[i + 1]]))
            .collect()
    }

    /// Signed enclosed volume by the divergence theorem.
    pub fn volume(&self) -> f64 {
        self.triangles()
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i as usize]);
                a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
            })
            .sum::<f64>()
            / 6.0
    }

    pub fn area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| crate::classify::polygon_area(&f.iter().map(|&v| self.vertices[v as usize]).collect::<Vec<_>>()))
            .sum()
    }

    /// Closed, oriented 2-manifold check on the face loops: every directed
    /// edge is used once and its reverse once.
    pub fn check_manifold(&self) -> Result<()> {
        let mut used: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                *used.entry((f[i], f[(i + 1) % f.len()])).or_default() += 1;
            }
        }
        for (&(a, b), &k) in &used {
            if k != 1 {
                return Err(Error::Invariant(format!("directed edge {a}-{b} used {k} times")));
            }
            if !used.contains_key(&(b, a)) {
                return Err(Error::Invariant(format!("edge {a}-{b} has one incident face")));
            }
        }
        Ok(())
    }
}

/// Facet loop orientation in the projection of its plane.
fn loop_sign(cx: &BspComplex, f: u32, pr: polycell_predicates::Projection) -> Sign {
    let v: Vec<&GenericPoint> = cx.facets[f as usize]
        .verts
        .iter()
        .map(|&i| &cx.vertices[i as usize].point)
        .collect();
    let n = v.len();
    (0..n)
        .map(|i| orient2d_indirect(v[(i + n - 1) % n], v[i], v[(i + 1) % n], pr))
        .find(|&s| s != 0)
        .unwrap_or(0)
}

/// True when the loop of `f` must be reversed to turn the same way as the
/// triangle `plane` (or the opposite way, if `same` is false).
fn needs_flip(cx: &BspComplex, f: u32, plane: &[u32; 3], same: bool) -> bool {
    let fc = &cx.facets[f as usize];
    let [a, b, c] = fc.plane.map(|i| &cx.points[i as usize]);
    let pr = crate::geom::plane_projection(a, b, c);
    let [p, q, r] = plane.map(|i| GenericPoint::Explicit(cx.points[i as usize]));
    (loop_sign(cx, f, pr) == orient2d_indirect(&p, &q, &r, pr)) != same
}

/// Facets separating cells with different labels, oriented from IN to OUT.
pub fn extract_skin(cx: &BspComplex, inside: &[bool], approx: &[Point3]) -> SurfaceMesh {
    let is_in = |c: u32| c != OUTER && inside[c as usize];
    let mut faces = Vec::new();
    for (f, fc) in cx.facets.iter().enumerate() {
        let [c0, c1] = fc.cells;
        if is_in(c0) == is_in(c1) {
            continue;
        }
        let cin = if is_in(c0) { c0 } else { c1 };
        let Some(x) = cx.cell_vertices(cin).into_iter().find(|&v| cx.vertex_side(&fc.plane, v) != 0) else {
            continue;
        };
        // outward normal: orient3d(loop, x) > 0 for the IN vertex x
        let s = cx.vertex_side(&fc.plane, x);
        let flip = needs_flip(cx, f as u32, &fc.plane, s > 0);
        let mut loop_ = fc.verts.clone();
        if flip {
            loop_.reverse();
        }
        faces.push(loop_);
    }
    compact(faces, approx)
}

fn compact(faces: Vec<Vec<u32>>, approx: &[Point3]) -> SurfaceMesh {
    let mut index: HashMap<u32, u32> = HashMap::new();
    let mut vertices = Vec::new();
    let faces = faces
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|v| {
                    *index.entry(v).or_insert_with(|| {
                        vertices.push(approx[v as usize]);
                        vertices.len() as u32 - 1
                    })
                })
                .collect()
        })
        .collect();
    SurfaceMesh { vertices, faces }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
}

/// A complex with its IN labels.
pub struct Solid {
    pub complex: BspComplex,
    pub inside: Vec<bool>,
    pub skin: SurfaceMesh,
    pub stats: PipelineStats,
}

fn finish(stats: &mut PipelineStats) {
    stats.peak_rss_kib = peak_rss_kib();
}

/// Repair: the closed skin of the volume enclosed by a soup.
pub fn make_solid(soup: &Soup, opts: PipelineOptions) -> Result<Solid> {
    let (cx, mut st) = build_complex(&[(soup, Origin::A)], opts)?;
    let approx = cx.approximate_vertices()?;
    let inside = st.time("classify", || classify_cells(&cx, OriginFilter::A, &approx))?;
    let skin = st.time("output", || extract_skin(&cx, &inside, &approx));
    finish(&mut st);
    Ok(Solid {
        complex: cx,
        inside,
        skin,
        stats: st,
    })
}

/// Regularized boolean of the volumes enclosed by two soups.
pub fn boolean(a: &Soup, b: &Soup, op: BoolOp, opts: PipelineOptions) -> Result<Solid> {
    let (cx, mut st) = build_complex(&[(a, Origin::A), (b, Origin::B)], opts)?;
    let approx = cx.approximate_vertices()?;
    let inside = st.time("classify", || -> Result<Vec<bool>> {
        let ia = classify_cells(&cx, OriginFilter::A, &approx)?;
        let ib = classify_cells(&cx, OriginFilter::B, &approx)?;
        Ok(ia
            .iter()
            .zip(&ib)
            .map(|(&x, &y)| match op {
                BoolOp::Union => x || y,
                BoolOp::Intersection => x && y,
                BoolOp::Difference => x && !y,
            })
            .collect())
    })?;
    let skin = st.time("output", || extract_skin(&cx, &inside, &approx));
    finish(&mut st);
    Ok(Solid {
        complex: cx,
        inside,
        skin,
        stats: st,
    })
}

/// All black facets, each oriented like the first constraint covering it:
/// the input surface with its self-intersections resolved.
pub fn resolve_self_intersections(soup: &Soup, opts: PipelineOptions) -> Result<(SurfaceMesh, BspComplex, PipelineStats)> {
    let (cx, mut st) = build_complex(&[(soup, Origin::A)], opts)?;
    let approx = cx.approximate_vertices()?;
    let mesh = st.time("output", || {
        let mut faces = Vec::new();
        for (f, fc) in cx.facets.iter().enumerate() {
            if fc.color != Color::Black {
                continue;
            }
            let q = crate::coloring::FacetQuery::new(&cx, f as u32, &fc.coplanar);
            let k = (0..fc.coplanar.len()).find(|&i| q.overlaps(i)).unwrap_or(0);
            let plane = cx.constraints[fc.coplanar[k] as usize].v;
            let mut loop_ = fc.verts.clone();
            if needs_flip(&cx, f as u32, &plane, true) {
                loop_.reverse();
            }
            faces.push(loop_);
        }
        compact(faces, &approx)
    });
    finish(&mut st);
    Ok((mesh, cx, st))
}
