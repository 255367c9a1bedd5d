//! Convex polyhedral cell complex, initialized from the Delaunay tets and
//! refined by splitting cells with constraint planes.
//!
//! Split points are implicit: a point on an edge whose line is spanned by
//! two input points is an LPI, a point on an edge created as the meet of two
//! planes is a TPI. Every implicit vertex is defined from input points only.

use crate::delaunay::TetMesh;
use crate::error::{Error, Result};
use crate::mapping::ConstraintMap;
use crate::soup::{Constraint, Origin};
use polycell_predicates::{orient3d, orient3d_indirect, GenericPoint, Point3, Sign};
use std::collections::{BTreeMap, HashMap};

/// Cell id standing for the unbounded exterior.
pub const OUTER: u32 = u32::MAX;
const NO_CELL: u32 = u32::MAX - 1;

/// Input-point provenance of a complex vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexDef {
    Explicit(u32),
    Lpi { line: [u32; 2], plane: [u32; 3] },
    Tpi([[u32; 3]; 3]),
}

#[derive(Clone, Debug)]
pub struct BspVertex {
    pub point: GenericPoint,
    pub def: VertexDef,
}

/// Supporting line of an edge: two input points, or two planes each given
/// by three input points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineDef {
    Points([u32; 2]),
    Planes([[u32; 3]; 2]),
}

#[derive(Clone, Debug)]
pub struct BspEdge {
    pub v: [u32; 2],
    pub line: LineDef,
    /// Every facet having this edge on its boundary.
    pub facets: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Grey,
    Black,
}

#[derive(Clone, Debug)]
pub struct BspFacet {
    /// Boundary loop; `edges[i]` joins `verts[i]` and `verts[i + 1]`.
    pub verts: Vec<u32>,
    pub edges: Vec<u32>,
    pub plane: [u32; 3],
    pub cells: [u32; 2],
    pub color: Color,
    /// Coplanar non-virtual constraints overlapping the facet or its parent.
    pub coplanar: Vec<u32>,
    pub black_a: bool,
    pub black_b: bool,
}

impl BspFacet {
    pub fn black_for(&self, filter: OriginFilter) -> bool {
        match filter {
            OriginFilter::A => self.black_a,
            OriginFilter::B => self.black_b,
            OriginFilter::Any => self.color == Color::Black,
        }
    }

    /// The other incident cell.
    pub fn opposite(&self, c: u32) -> u32 {
        if self.cells[0] == c {
            self.cells[1]
        } else {
            self.cells[0]
        }
    }
}

/// Which constraints' black facets drive a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OriginFilter {
    A,
    B,
    Any,
}

impl OriginFilter {
    pub fn accepts(self, o: Origin) -> bool {
        match self {
            OriginFilter::A => o == Origin::A,
            OriginFilter::B => o == Origin::B,
            OriginFilter::Any => o != Origin::Virtual,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BspCell {
    pub facets: Vec<u32>,
    /// Constraints still to be used for splitting, consumed from the back.
    pub pending: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SplitStats {
    pub splits: usize,
    pub noops: usize,
}

#[derive(Clone, Debug)]
pub struct BspComplex {
    pub points: Vec<Point3>,
    pub constraints: Vec<Constraint>,
    pub vertices: Vec<BspVertex>,
    pub edges: Vec<BspEdge>,
    pub facets: Vec<BspFacet>,
    pub cells: Vec<BspCell>,
    pub stats: SplitStats,
}

const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

fn sorted3(mut v: [u32; 3]) -> [u32; 3] {
    v.sort_unstable();
    v
}

fn replace(list: &mut [u32], from: u32, to: u32) {
    for x in list.iter_mut() {
        if *x == from {
            *x = to;
        }
    }
}

impl BspComplex {
    /// One cell per finite tet, with the constraint lists of the map.
    pub fn from_tetmesh(mesh: &TetMesh, constraints: &[Constraint], map: &ConstraintMap) -> BspComplex {
        let vertices = mesh
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| BspVertex {
                point: GenericPoint::Explicit(*p),
                def: VertexDef::Explicit(i as u32),
            })
            .collect();
        let mut cx = BspComplex {
            points: mesh.points.clone(),
            constraints: constraints.to_vec(),
            vertices,
            edges: Vec::new(),
            facets: Vec::new(),
            cells: Vec::new(),
            stats: SplitStats::default(),
        };
        let mut cell_of = vec![OUTER; mesh.tets.len()];
        for t in mesh.finite_tets() {
            cell_of[t as usize] = cx.cells.len() as u32;
            cx.cells.push(BspCell {
                facets: Vec::with_capacity(4),
                pending: map.tet_constraints[t as usize].clone(),
            });
        }
        let mut edge_ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut facet_ids: HashMap<[u32; 3], u32> = HashMap::new();
        for t in mesh.finite_tets() {
            let c = cell_of[t as usize];
            let tv = mesh.tets[t as usize];
            for (i, f) in FACES.iter().enumerate() {
                let verts = [tv[f[0]], tv[f[1]], tv[f[2]]];
                let key = sorted3(verts);
                if let Some(&fid) = facet_ids.get(&key) {
                    cx.facets[fid as usize].cells[1] = c;
                    cx.cells[c as usize].facets.push(fid);
                    continue;
                }
                let fid = cx.facets.len() as u32;
                facet_ids.insert(key, fid);
                let n = mesh.nbr[t as usize][i];
                let other = if mesh.is_ghost(n) { OUTER } else { NO_CELL };
                let mut edges = Vec::with_capacity(3);
                for j in 0..3 {
                    let (a, b) = (verts[j], verts[(j + 1) % 3]);
                    let id = *edge_ids.entry((a.min(b), a.max(b))).or_insert_with(|| {
                        cx.edges.push(BspEdge {
                            v: [a.min(b), a.max(b)],
                            line: LineDef::Points([a.min(b), a.max(b)]),
                            facets: Vec::new(),
                        });
                        cx.edges.len() as u32 - 1
                    });
                    cx.edges[id as usize].facets.push(fid);
                    edges.push(id);
                }
                let coplanar: Vec<u32> = map.facet_coplanar.get(&key).cloned().unwrap_or_default();
                let coincident = coplanar.iter().any(|&k| sorted3(constraints[k as usize].v) == key);
                let color = if coincident {
                    Color::Black
                } else if coplanar.is_empty() {
                    Color::White
                } else {
                    Color::Grey
                };
                cx.facets.push(BspFacet {
                    verts: verts.to_vec(),
                    edges,
                    plane: verts,
                    cells: [c, other],
                    color,
                    coplanar,
                    black_a: false,
                    black_b: false,
                });
                cx.cells[c as usize].facets.push(fid);
            }
        }
        cx
    }

    pub fn pending_total(&self) -> usize {
        self.cells.iter().map(|c| c.pending.len()).sum()
    }

    fn gp(&self, i: u32) -> GenericPoint {
        GenericPoint::Explicit(self.points[i as usize])
    }

    /// Side of vertex `v` with respect to the plane through three input points.
    pub fn vertex_side(&self, plane: &[u32; 3], v: u32) -> Sign {
        let [a, b, c] = plane.map(|i| &self.points[i as usize]);
        match &self.vertices[v as usize].point {
            GenericPoint::Explicit(p) => orient3d(a, b, c, p),
            q => orient3d_indirect(&self.gp(plane[0]), &self.gp(plane[1]), &self.gp(plane[2]), q),
        }
    }

    /// Distinct vertices of a cell, in increasing id order.
    pub fn cell_vertices(&self, c: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self.cells[c as usize]
            .facets
            .iter()
            .flat_map(|&f| self.facets[f as usize].verts.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Distinct edges of a cell, in increasing id order.
    pub fn cell_edges(&self, c: u32) -> Vec<u32> {
        let mut e: Vec<u32> = self.cells[c as usize]
            .facets
            .iter()
            .flat_map(|&f| self.facets[f as usize].edges.iter().copied())
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    fn split_point(&self, line: &LineDef, plane: &[u32; 3]) -> BspVertex {
        let p = |i: u32| self.points[i as usize];
        match *line {
            LineDef::Points([a, b]) => BspVertex {
                point: GenericPoint::lpi(p(a), p(b), p(plane[0]), p(plane[1]), p(plane[2])),
                def: VertexDef::Lpi { line: [a, b], plane: *plane },
            },
            LineDef::Planes([s, t]) => BspVertex {
                point: GenericPoint::tpi(plane.map(p), s.map(p), t.map(p)),
                def: VertexDef::Tpi([*plane, s, t]),
            },
        }
    }

    /// Splits edge `e` at its crossing with `plane`; `e` keeps the first half.
    fn split_edge(&mut self, e: u32, plane: &[u32; 3]) -> u32 {
        let [a, b] = self.edges[e as usize].v;
        let line = self.edges[e as usize].line;
        let p = self.vertices.len() as u32;
        let vert = self.split_point(&line, plane);
        self.vertices.push(vert);
        let e2 = self.edges.len() as u32;
        let facets = self.edges[e as usize].facets.clone();
        self.edges[e as usize].v = [a, p];
        self.edges.push(BspEdge {
            v: [p, b],
            line,
            facets: facets.clone(),
        });
        for f in facets {
            let fc = &mut self.facets[f as usize];
            let i = fc.edges.iter().position(|&x| x == e).expect("edge in facet");
            if fc.verts[i] == a {
                fc.edges.insert(i + 1, e2);
            } else {
                fc.edges.insert(i, e2);
            }
            fc.verts.insert(i + 1, p);
        }
        p
    }

    /// Cuts facet `f` along the chord between its two vertices on the plane.
    /// `f` keeps the positive part; the negative part is returned.
    fn split_facet(&mut self, f: u32, plane: &[u32; 3], side: &HashMap<u32, Sign>) -> u32 {
        let fc = self.facets[f as usize].clone();
        let n = fc.verts.len();
        let zeros: Vec<usize> = (0..n).filter(|&i| side[&fc.verts[i]] == 0).collect();
        assert_eq!(zeros.len(), 2, "facet crossing a plane has two vertices on it");
        let (z0, z1) = (zeros[0], zeros[1]);
        let chord = self.edges.len() as u32;
        let f2 = self.facets.len() as u32;
        let mut pv = fc.verts[z0..=z1].to_vec();
        let mut pe = fc.edges[z0..z1].to_vec();
        pe.push(chord);
        let mut qv = fc.verts[z1..].to_vec();
        qv.extend_from_slice(&fc.verts[..=z0]);
        let mut qe = fc.edges[z1..].to_vec();
        qe.extend_from_slice(&fc.edges[..z0]);
        qe.push(chord);
        if pv.iter().any(|v| side[v] < 0) {
            std::mem::swap(&mut pv, &mut qv);
            std::mem::swap(&mut pe, &mut qe);
        }
        // keep the loop convention: the chord closes each loop
        let chord_v = [*pv.last().unwrap(), pv[0]];
        self.edges.push(BspEdge {
            v: chord_v,
            line: LineDef::Planes([*plane, fc.plane]),
            facets: vec![f, f2],
        });
        let neg = BspFacet {
            verts: qv,
            edges: qe,
            ..fc
        };
        for &e in &neg.edges[..neg.edges.len() - 1] {
            replace(&mut self.edges[e as usize].facets, f, f2);
        }
        let fc = &mut self.facets[f as usize];
        fc.verts = pv;
        fc.edges = pe;
        for c in neg.cells {
            if c != OUTER {
                self.cells[c as usize].facets.push(f2);
            }
        }
        self.facets.push(neg);
        f2
    }

    /// One step of the subdivision: pops the last pending constraint of
    /// `c` and splits the cell by its plane. Returns the new cell, or `None`
    /// when the plane misses the cell interior.
    pub fn split_cell(&mut self, c: u32) -> Option<u32> {
        let k = self.cells[c as usize].pending.pop()?;
        let plane = self.constraints[k as usize].v;
        let mut side: HashMap<u32, Sign> = HashMap::new();
        let (mut pos, mut neg) = (false, false);
        for v in self.cell_vertices(c) {
            let s = self.vertex_side(&plane, v);
            pos |= s > 0;
            neg |= s < 0;
            side.insert(v, s);
        }
        if !(pos && neg) {
            self.stats.noops += 1;
            return None;
        }
        self.stats.splits += 1;
        for e in self.cell_edges(c) {
            let [a, b] = self.edges[e as usize].v;
            if side[&a] * side[&b] < 0 {
                let p = self.split_edge(e, &plane);
                side.insert(p, 0);
            }
        }
        for f in self.cells[c as usize].facets.clone() {
            let vs = &self.facets[f as usize].verts;
            if vs.iter().any(|v| side[v] > 0) && vs.iter().any(|v| side[v] < 0) {
                self.split_facet(f, &plane, &side);
            }
        }
        let c2 = self.cells.len() as u32;
        let fnew = self.facets.len() as u32;
        let on_plane: Vec<u32> = self
            .cell_edges(c)
            .into_iter()
            .filter(|&e| self.edges[e as usize].v.iter().all(|v| side[v] == 0))
            .collect();
        let (verts, edges) = self.chain(&on_plane);
        for &e in &edges {
            self.edges[e as usize].facets.push(fnew);
        }
        let mut above = Vec::new();
        let mut below = Vec::new();
        for f in std::mem::take(&mut self.cells[c as usize].facets) {
            if self.facets[f as usize].verts.iter().any(|v| side[v] > 0) {
                above.push(f);
            } else {
                replace(&mut self.facets[f as usize].cells, c, c2);
                below.push(f);
            }
        }
        above.push(fnew);
        below.push(fnew);
        let mut coplanar = Vec::new();
        if self.constraints[k as usize].origin != Origin::Virtual {
            coplanar.push(k);
        }
        let mut k_above = Vec::new();
        let mut k_below = Vec::new();
        let pp = plane.map(|i| self.points[i as usize]);
        for &j in &self.cells[c as usize].pending {
            let cj = &self.constraints[j as usize];
            let s = cj.v.map(|i| orient3d(&pp[0], &pp[1], &pp[2], &self.points[i as usize]));
            if s.iter().all(|&x| x == 0) {
                if cj.origin != Origin::Virtual {
                    coplanar.push(j);
                }
                continue;
            }
            if s.iter().any(|&x| x > 0) {
                k_above.push(j);
            }
            if s.iter().any(|&x| x < 0) {
                k_below.push(j);
            }
        }
        coplanar.sort_unstable();
        self.facets.push(BspFacet {
            verts,
            edges,
            plane,
            cells: [c, c2],
            color: Color::Grey,
            coplanar,
            black_a: false,
            black_b: false,
        });
        self.cells[c as usize] = BspCell {
            facets: above,
            pending: k_above,
        };
        self.cells.push(BspCell {
            facets: below,
            pending: k_below,
        });
        Some(c2)
    }

    /// Orders a cycle of edges into a facet loop.
    fn chain(&self, edges: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut at: HashMap<u32, Vec<u32>> = HashMap::new();
        for &e in edges {
            for v in self.edges[e as usize].v {
                at.entry(v).or_default().push(e);
            }
        }
        let first = edges[0];
        let [start, mut cur] = self.edges[first as usize].v;
        let mut verts = vec![start];
        let mut loop_edges = vec![first];
        let mut prev = first;
        while cur != start {
            verts.push(cur);
            let next = *at[&cur].iter().find(|&&e| e != prev).expect("closed loop");
            let [a, b] = self.edges[next as usize].v;
            cur = if a == cur { b } else { a };
            loop_edges.push(next);
            prev = next;
        }
        assert_eq!(loop_edges.len(), edges.len(), "plane section is a single loop");
        (verts, loop_edges)
    }

    /// Splits until no cell has pending constraints, processing cells in
    /// id order and each cell's constraints last-first.
    pub fn subdivide_all(&mut self) {
        let mut stack: Vec<u32> = (0..self.cells.len() as u32).rev().collect();
        while let Some(c) = stack.pop() {
            while !self.cells[c as usize].pending.is_empty() {
                if let Some(c2) = self.split_cell(c) {
                    stack.push(c2);
                }
            }
        }
    }

    /// Double coordinates of every vertex.
    pub fn approximate_vertices(&self) -> Result<Vec<Point3>> {
        self.vertices
            .iter()
            .map(|v| v.point.approximate().map_err(Error::from))
            .collect()
    }

    /// Structural invariants of the complex: loop closure, incidences,
    /// planarity, convexity, line definitions and vertex provenance.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        let np = self.points.len() as u32;
        for (i, v) in self.vertices.iter().enumerate() {
            let p = |j: u32| self.points[j as usize];
            let ok = match v.def {
                VertexDef::Explicit(j) => j < np && v.point == GenericPoint::Explicit(p(j)),
                VertexDef::Lpi { line, plane } => {
                    line.iter().chain(&plane).all(|&j| j < np)
                        && v.point == GenericPoint::lpi(p(line[0]), p(line[1]), p(plane[0]), p(plane[1]), p(plane[2]))
                }
                VertexDef::Tpi(pl) => {
                    pl.iter().flatten().all(|&j| j < np) && v.point == GenericPoint::tpi(pl[0].map(p), pl[1].map(p), pl[2].map(p))
                }
            };
            if !ok || !v.point.is_well_defined() {
                return bad(format!("vertex {i} has invalid provenance"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let on_line = e.v.iter().all(|&v| match e.line {
                LineDef::Points([a, b]) => {
                    let g = &self.vertices[v as usize].point;
                    !polycell_predicates::misaligned(g, &self.gp(a), &self.gp(b))
                }
                LineDef::Planes([s, t]) => self.vertex_side(&s, v) == 0 && self.vertex_side(&t, v) == 0,
            });
            if !on_line {
                return bad(format!("edge {i} leaves its supporting line"));
            }
            for &f in &e.facets {
                if !self.facets[f as usize].edges.contains(&(i as u32)) {
                    return bad(format!("edge {i} lists facet {f} which does not contain it"));
                }
            }
        }
        for (i, f) in self.facets.iter().enumerate() {
            let n = f.verts.len();
            if n < 3 || f.edges.len() != n {
                return bad(format!("facet {i} has a malformed loop"));
            }
            for j in 0..n {
                let mut ev = self.edges[f.edges[j] as usize].v;
                let mut lv = [f.verts[j], f.verts[(j + 1) % n]];
                ev.sort_unstable();
                lv.sort_unstable();
                if ev != lv {
                    return bad(format!("facet {i} loop is not closed at position {j}"));
                }
                if !self.edges[f.edges[j] as usize].facets.contains(&(i as u32)) {
                    return bad(format!("facet {i} edge {} misses the back reference", f.edges[j]));
                }
            }
            if f.verts.iter().any(|&v| self.vertex_side(&f.plane, v) != 0) {
                return bad(format!("facet {i} is not planar"));
            }
            if f.cells[0] == OUTER || f.cells[0] == f.cells[1] {
                return bad(format!("facet {i} has invalid cells {:?}", f.cells));
            }
            for c in f.cells {
                if c != OUTER && !self.cells[c as usize].facets.contains(&(i as u32)) {
                    return bad(format!("facet {i} is missing from cell {c}"));
                }
            }
        }
        for c in 0..self.cells.len() as u32 {
            let verts = self.cell_vertices(c);
            let mut uses: BTreeMap<u32, usize> = BTreeMap::new();
            for &f in &self.cells[c as usize].facets {
                let fc = &self.facets[f as usize];
                if !fc.cells.contains(&c) {
                    return bad(format!("cell {c} lists foreign facet {f}"));
                }
                for &e in &fc.edges {
                    *uses.entry(e).or_default() += 1;
                }
                let mut sides = verts.iter().map(|&v| self.vertex_side(&fc.plane, v));
                let (mut p, mut m) = (false, false);
                for s in &mut sides {
                    p |= s > 0;
                    m |= s < 0;
                }
                if p && m {
                    return bad(format!("cell {c} is not convex at facet {f}"));
                }
            }
            if let Some((e, k)) = uses.iter().find(|(_, &k)| k != 2) {
                return bad(format!("cell {c} shell is open at edge {e} ({k} uses)"));
            }
        }
        Ok(())
    }
}
