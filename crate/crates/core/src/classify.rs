//! Inside/outside labeling of the cells by a minimum s-t cut.
//!
//! Nodes are the cells plus the outer cell, arcs are the facets that are not
//! black for the chosen origin. Labeling a node IN costs the area of its
//! black facets whose constraint normal points into the cell, labeling it
//! OUT costs the area of those whose normal points out of it, and an arc
//! between differently labeled nodes costs its facet area.

use crate::bsp::{BspComplex, OriginFilter, OUTER};
use crate::coloring::FacetQuery;
use crate::error::Result;
use polycell_predicates::Point3;
use std::collections::VecDeque;

#[derive(Clone, Debug, Default)]
pub struct DualGraph {
    pub d_in: Vec<f64>,
    pub d_out: Vec<f64>,
    pub arcs: Vec<(u32, u32, f64)>,
}

impl DualGraph {
    pub fn with_nodes(n: usize) -> DualGraph {
        DualGraph {
            d_in: vec![0.0; n],
            d_out: vec![0.0; n],
            arcs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.d_in.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_in.is_empty()
    }

    /// `inside[v]` is true for IN.
    pub fn energy(&self, inside: &[bool]) -> f64 {
        let data: f64 = (0..self.len())
            .map(|v| if inside[v] { self.d_in[v] } else { self.d_out[v] })
            .sum();
        let smooth: f64 = self
            .arcs
            .iter()
            .filter(|(a, b, _)| inside[*a as usize] != inside[*b as usize])
            .map(|a| a.2)
            .sum();
        data + smooth
    }
}

struct FlowEdge {
    to: usize,
    cap: f64,
}

/// Dinic's algorithm on a residual network with paired reverse edges.
struct Flow {
    edges: Vec<FlowEdge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Flow {
    fn new(n: usize) -> Flow {
        Flow {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    fn add(&mut self, a: usize, b: usize, ab: f64, ba: f64) {
        self.adj[a].push(self.edges.len());
        self.edges.push(FlowEdge { to: b, cap: ab });
        self.adj[b].push(self.edges.len());
        self.edges.push(FlowEdge { to: a, cap: ba });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0.0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: f64) -> f64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let e = self.adj[u][self.next[u]];
            let v = self.edges[e].to;
            if self.edges[e].cap > 0.0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.edges[e].cap));
                if got > 0.0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0.0
    }

    fn max_flow(&mut self, s: usize, t: usize) {
        while self.bfs(s, t) {
            self.next.fill(0);
            while self.dfs(s, t, f64::INFINITY) > 0.0 {}
        }
    }

    /// Nodes with a residual path to `t`.
    fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let u = self.edges[e].to;
                if self.edges[e ^ 1].cap > 0.0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// A minimum-energy labeling; among minima, the one with the most IN nodes
/// (the union of all optimal IN sets).
pub fn min_cut_label(g: &DualGraph) -> Vec<bool> {
    let n = g.len();
    let (s, t) = (n, n + 1);
    let mut flow = Flow::new(n + 2);
    for v in 0..n {
        if g.d_out[v] > 0.0 {
            flow.add(s, v, g.d_out[v], 0.0);
        }
        if g.d_in[v] > 0.0 {
            flow.add(v, t, g.d_in[v], 0.0);
        }
    }
    for &(a, b, w) in &g.arcs {
        if a != b && w > 0.0 {
            flow.add(a as usize, b as usize, w, w);
        }
    }
    flow.max_flow(s, t);
    flow.reaching(t)[..n].iter().map(|&x| !x).collect()
}

/// Area of a planar polygon from approximate coordinates.
pub fn polygon_area(pts: &[Point3]) -> f64 {
    let mut n = [0.0; 3];
    let o = pts[0];
    for i in 1..pts.len().saturating_sub(1) {
        let u = [pts[i][0] - o[0], pts[i][1] - o[1], pts[i][2] - o[2]];
        let w = [pts[i + 1][0] - o[0], pts[i + 1][1] - o[1], pts[i + 1][2] - o[2]];
        n[0] += u[1] * w[2] - u[2] * w[1];
        n[1] += u[2] * w[0] - u[0] * w[2];
        n[2] += u[0] * w[1] - u[1] * w[0];
    }
    0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
}

/// Smallest facet weight, relative to the largest facet area.
pub const AREA_FLOOR: f64 = 1e-12;

/// Dual graph of a colored complex. Node `cells.len()` is the outer cell,
/// pinned OUT by an IN cost larger than any finite labeling.
pub fn build_dual_graph(cx: &BspComplex, filter: OriginFilter, approx: &[Point3]) -> DualGraph {
    let n = cx.cells.len();
    let outer = n as u32;
    let node = |c: u32| if c == OUTER { outer } else { c };
    let mut g = DualGraph::with_nodes(n + 1);
    let areas: Vec<f64> = cx
        .facets
        .iter()
        .map(|fc| polygon_area(&fc.verts.iter().map(|&v| approx[v as usize]).collect::<Vec<_>>()))
        .collect();
    // slivers whose vertices round together keep a tiny positive weight
    let floor = areas.iter().fold(0.0f64, |m, &a| m.max(a)) * AREA_FLOOR;
    for (f, fc) in cx.facets.iter().enumerate() {
        let area = areas[f].max(floor);
        let [c0, c1] = fc.cells;
        if !fc.black_for(filter) {
            g.arcs.push((node(c0), node(c1), area));
            continue;
        }
        let cons: Vec<u32> = fc
            .coplanar
            .iter()
            .copied()
            .filter(|&k| filter.accepts(cx.constraints[k as usize].origin))
            .collect();
        // a vertex of c0 off the facet plane tells the side of each constraint
        let Some(x) = cx.cell_vertices(c0).into_iter().find(|&v| cx.vertex_side(&fc.plane, v) != 0) else {
            continue;
        };
        let sides: Vec<i8> = cons.iter().map(|&k| cx.vertex_side(&cx.constraints[k as usize].v, x)).collect();
        let mut toward_c0 = sides.iter().all(|&s| s < 0);
        let mut away_c0 = sides.iter().all(|&s| s > 0);
        if !toward_c0 && !away_c0 {
            let q = FacetQuery::new(cx, f as u32, &cons);
            for (i, &s) in sides.iter().enumerate() {
                if q.overlaps(i) {
                    toward_c0 |= s < 0;
                    away_c0 |= s > 0;
                }
            }
        }
        // c0 on the normal side: the constraint sees it as outside
        if toward_c0 {
            g.d_in[node(c0) as usize] += area;
            g.d_out[node(c1) as usize] += area;
        }
        if away_c0 {
            g.d_out[node(c0) as usize] += area;
            g.d_in[node(c1) as usize] += area;
        }
    }
    let total: f64 = g.d_in.iter().chain(&g.d_out).sum::<f64>() + g.arcs.iter().map(|a| a.2).sum::<f64>();
    g.d_in[outer as usize] = 1.0 + total;
    g
}

/// IN flag per cell for one origin filter.
pub fn classify_cells(cx: &BspComplex, filter: OriginFilter, approx: &[Point3]) -> Result<Vec<bool>> {
    let g = build_dual_graph(cx, filter, approx);
    let mut inside = min_cut_label(&g);
    debug_assert!(!inside[cx.cells.len()]);
    inside.truncate(cx.cells.len());
    Ok(inside)
}
