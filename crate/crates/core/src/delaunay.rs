//! Incremental Delaunay tetrahedrization (Bowyer-Watson) with materialized
//! ghost tets on the hull.
//!
//! Finite tets are stored with `orient3d > 0`. A ghost tet holds [`GHOST`]
//! in one slot; replacing it by a point outside the hull across the ghost's
//! finite face also gives `orient3d > 0`. Face `i` of a tet is the one
//! opposite slot `i` and `nbr[t][i]` is the tet across it.

use crate::error::{Error, Result};
use polycell_predicates::{insphere_perturbed, orient3d, Point3};
use std::collections::HashMap;

pub const GHOST: u32 = u32::MAX;
pub const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct TetMesh {
    pub points: Vec<Point3>,
    pub tets: Vec<[u32; 4]>,
    pub nbr: Vec<[u32; 4]>,
    /// One finite tet incident to each vertex.
    pub anchor: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimplexRef {
    Vertex(u32),
    Edge(u32, u32),
    Triangle(u32, u32, u32),
    Tet(u32),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DelaunayOptions {
    pub presort: bool,
}

fn orient_with(pts: &[Point3], t: &[u32; 4], slot: usize, p: &Point3) -> i8 {
    let q = |k: usize| if k == slot { p } else { &pts[t[k] as usize] };
    orient3d(q(0), q(1), q(2), q(3))
}

fn ghost_slot(t: &[u32; 4]) -> Option<usize> {
    t.iter().position(|&v| v == GHOST)
}

/// Interleaves 21-bit quantized coordinates into a Morton code.
fn morton_order(pts: &[Point3]) -> Vec<u32> {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in pts {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let spread = |mut x: u64| {
        x &= 0x1f_ffff;
        x = (x | x << 32) & 0x1f_0000_0000_ffff;
        x = (x | x << 16) & 0x1f_0000_ff00_00ff;
        x = (x | x << 8) & 0x100f_00f0_0f00_f00f;
        x = (x | x << 4) & 0x10c3_0c30_c30c_30c3;
        x = (x | x << 2) & 0x1249_2492_4924_9249;
        x
    };
    let code = |p: &Point3| {
        let mut c = 0u64;
        for k in 0..3 {
            let ext = hi[k] - lo[k];
            let u = if ext > 0.0 { (p[k] - lo[k]) / ext } else { 0.0 };
            let q = (u * 2_097_151.0).clamp(0.0, 2_097_151.0) as u64;
            c |= spread(q) << k;
        }
        c
    };
    let mut idx: Vec<(u64, u32)> = pts.iter().enumerate().map(|(i, p)| (code(p), i as u32)).collect();
    idx.sort_unstable();
    idx.into_iter().map(|(_, i)| i).collect()
}

struct Builder<'a> {
    pts: &'a [Point3],
    tets: Vec<[u32; 4]>,
    nbr: Vec<[u32; 4]>,
    alive: Vec<bool>,
    free: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
    last: u32,
    turn: usize,
}

impl<'a> Builder<'a> {
    fn alloc(&mut self, t: [u32; 4]) -> u32 {
        if let Some(id) = self.free.pop() {
            self.tets[id as usize] = t;
            self.nbr[id as usize] = [NONE; 4];
            self.alive[id as usize] = true;
            self.mark[id as usize] = 0;
            id
        } else {
            self.tets.push(t);
            self.nbr.push([NONE; 4]);
            self.alive.push(true);
            self.mark.push(0);
            (self.tets.len() - 1) as u32
        }
    }

    fn conflicts(&self, t: u32, pid: u32) -> bool {
        let v = self.tets[t as usize];
        let p = &self.pts[pid as usize];
        match ghost_slot(&v) {
            None => {
                let q = |k: usize| &self.pts[v[k] as usize];
                insphere_perturbed([q(0), q(1), q(2), q(3), p], [v[0], v[1], v[2], v[3], pid]) > 0
            }
            Some(g) => match orient_with(self.pts, &v, g, p) {
                1 => true,
                -1 => false,
                _ => {
                    // on the hull plane: conflict iff the finite neighbour conflicts
                    self.conflicts(self.nbr[t as usize][g], pid)
                }
            },
        }
    }

    fn locate(&mut self, pid: u32) -> Result<u32> {
        let p = &self.pts[pid as usize];
        let mut t = self.last;
        if !self.alive[t as usize] {
            t = self.alive.iter().position(|&a| a).unwrap() as u32;
        }
        let limit = 4 * self.tets.len() + 64;
        'walk: for _ in 0..limit {
            let v = self.tets[t as usize];
            if let Some(g) = ghost_slot(&v) {
                if orient_with(self.pts, &v, g, p) > 0 {
                    return Ok(t);
                }
                t = self.nbr[t as usize][g];
                continue;
            }
            self.turn = (self.turn + 1) & 3;
            for k in 0..4 {
                let i = (self.turn + k) & 3;
                if orient_with(self.pts, &v, i, p) < 0 {
                    t = self.nbr[t as usize][i];
                    continue 'walk;
                }
            }
            return self.check_duplicate(t, pid);
        }
        // the walk cycled; fall back to a scan
        for (i, v) in self.tets.iter().enumerate() {
            if !self.alive[i] {
                continue;
            }
            match ghost_slot(v) {
                Some(g) => {
                    if orient_with(self.pts, v, g, p) > 0 {
                        return Ok(i as u32);
                    }
                }
                None => {
                    if (0..4).all(|k| orient_with(self.pts, v, k, p) >= 0) {
                        return self.check_duplicate(i as u32, pid);
                    }
                }
            }
        }
        Err(Error::Invariant(format!("point {pid} could not be located")))
    }

    fn check_duplicate(&self, t: u32, pid: u32) -> Result<u32> {
        let p = &self.pts[pid as usize];
        for &v in &self.tets[t as usize] {
            if self.pts[v as usize] == *p {
                return Err(Error::DegenerateInput(format!("duplicate point {pid}")));
            }
        }
        Ok(t)
    }

    fn insert(&mut self, pid: u32) -> Result<()> {
        let start = self.locate(pid)?;
        self.stamp += 2;
        let (yes, no) = (self.stamp, self.stamp + 1);
        let mut cavity = vec![start];
        self.mark[start as usize] = yes;
        let mut boundary: Vec<(u32, usize, u32)> = Vec::new();
        let mut k = 0;
        while k < cavity.len() {
            let t = cavity[k];
            k += 1;
            for i in 0..4 {
                let n = self.nbr[t as usize][i];
                let m = self.mark[n as usize];
                if m == yes {
                    continue;
                }
                if m != no && self.conflicts(n, pid) {
                    self.mark[n as usize] = yes;
                    cavity.push(n);
                } else {
                    self.mark[n as usize] = no;
                    boundary.push((t, i, n));
                }
            }
        }
        let olds: Vec<[u32; 4]> = boundary.iter().map(|&(t, _, _)| self.tets[t as usize]).collect();
        for &t in &cavity {
            self.alive[t as usize] = false;
        }
        let mut pending: HashMap<(u32, u32), (u32, usize)> = HashMap::with_capacity(boundary.len() * 2);
        for (b, &(t, i, n)) in boundary.iter().enumerate() {
            let mut v = olds[b];
            v[i] = pid;
            let nt = self.alloc(v);
            self.nbr[nt as usize][i] = n;
            let back = self.nbr[n as usize].iter().position(|&x| x == t).unwrap();
            self.nbr[n as usize][back] = nt;
            for j in 0..4 {
                if j == i {
                    continue;
                }
                let mut e = [0u32; 2];
                let mut c = 0;
                for (s, &x) in v.iter().enumerate() {
                    if s != i && s != j {
                        e[c] = x;
                        c += 1;
                    }
                }
                let key = (e[0].min(e[1]), e[0].max(e[1]));
                if let Some((ot, oj)) = pending.remove(&key) {
                    self.nbr[nt as usize][j] = ot;
                    self.nbr[ot as usize][oj] = nt;
                } else {
                    pending.insert(key, (nt, j));
                }
            }
            if ghost_slot(&v).is_none() {
                self.last = nt;
            }
        }
        if !pending.is_empty() {
            return Err(Error::Invariant(format!("cavity of point {pid} is not a closed ball")));
        }
        // slots are recycled only after linking, so stale ids never alias new tets
        self.free.extend_from_slice(&cavity);
        Ok(())
    }
}

/// Builds the Delaunay tetrahedrization of `points`, which must be pairwise
/// distinct. Ties between cospherical points are broken by symbolic
/// perturbation ordered by vertex id, so the result does not depend on the
/// insertion order.
pub fn build_delaunay(points: &[Point3], opts: DelaunayOptions) -> Result<TetMesh> {
    if points.len() < 4 {
        return Err(Error::DegenerateInput("fewer than four points".into()));
    }
    let order: Vec<u32> = if opts.presort {
        morton_order(points)
    } else {
        (0..points.len() as u32).collect()
    };
    let p = |i: u32| &points[i as usize];
    let i0 = order[0];
    let i1 = *order.iter().find(|&&i| p(i) != p(i0)).ok_or_else(|| degenerate("coincident"))?;
    let i2 = *order
        .iter()
        .find(|&&i| !crate::soup::collinear(p(i0), p(i1), p(i)))
        .ok_or_else(|| degenerate("collinear"))?;
    let i3 = *order
        .iter()
        .find(|&&i| orient3d(p(i0), p(i1), p(i2), p(i)) != 0)
        .ok_or_else(|| degenerate("coplanar"))?;
    let first = if orient3d(p(i0), p(i1), p(i2), p(i3)) > 0 {
        [i0, i1, i2, i3]
    } else {
        [i0, i1, i3, i2]
    };
    let mut b = Builder {
        pts: points,
        tets: Vec::new(),
        nbr: Vec::new(),
        alive: Vec::new(),
        free: Vec::new(),
        mark: Vec::new(),
        stamp: 0,
        last: 0,
        turn: 0,
    };
    b.alloc(first);
    for i in 0..4 {
        let mut g = first;
        g[i] = GHOST;
        g.swap((i + 1) % 4, (i + 2) % 4);
        b.alloc(g);
    }
    link_by_faces(&b.tets, &mut b.nbr);
    for &i in &order {
        if first.contains(&i) {
            continue;
        }
        b.insert(i)?;
    }
    Ok(compact(points, b))
}

fn degenerate(what: &str) -> Error {
    Error::DegenerateInput(format!("all input points are {what}"))
}

fn face_key(t: &[u32; 4], i: usize) -> [u32; 3] {
    let mut f = [0u32; 3];
    let mut c = 0;
    for (k, &v) in t.iter().enumerate() {
        if k != i {
            f[c] = v;
            c += 1;
        }
    }
    f.sort_unstable();
    f
}

fn link_by_faces(tets: &[[u32; 4]], nbr: &mut [[u32; 4]]) {
    let mut map: HashMap<[u32; 3], (usize, usize)> = HashMap::new();
    for (t, v) in tets.iter().enumerate() {
        for i in 0..4 {
            let key = face_key(v, i);
            if let Some((ot, oi)) = map.remove(&key) {
                nbr[t][i] = ot as u32;
                nbr[ot][oi] = t as u32;
            } else {
                map.insert(key, (t, i));
            }
        }
    }
}

fn compact(points: &[Point3], b: Builder) -> TetMesh {
    let mut remap = vec![NONE; b.tets.len()];
    let mut tets = Vec::new();
    for (i, t) in b.tets.iter().enumerate() {
        if b.alive[i] {
            remap[i] = tets.len() as u32;
            tets.push(*t);
        }
    }
    let mut nbr = Vec::with_capacity(tets.len());
    for (i, n) in b.nbr.iter().enumerate() {
        if b.alive[i] {
            nbr.push(n.map(|x| remap[x as usize]));
        }
    }
    let mut anchor = vec![NONE; points.len()];
    for (i, t) in tets.iter().enumerate() {
        if ghost_slot(t).is_none() {
            for &v in t {
                if anchor[v as usize] == NONE {
                    anchor[v as usize] = i as u32;
                }
            }
        }
    }
    TetMesh {
        points: points.to_vec(),
        tets,
        nbr,
        anchor,
    }
}

impl TetMesh {
    #[inline]
    pub fn is_ghost(&self, t: u32) -> bool {
        ghost_slot(&self.tets[t as usize]).is_some()
    }

    pub fn finite_tets(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.tets.len() as u32).filter(|&t| !self.is_ghost(t))
    }

    pub fn num_finite(&self) -> usize {
        self.finite_tets().count()
    }

    pub fn point(&self, v: u32) -> &Point3 {
        &self.points[v as usize]
    }

    /// Vertices of face `i` of tet `t`, in increasing id order.
    pub fn face(&self, t: u32, i: usize) -> [u32; 3] {
        face_key(&self.tets[t as usize], i)
    }

    /// Finite tets incident to `v`, sorted, by a walk from its anchor.
    pub fn incident_tets(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let a = self.anchor[v as usize];
        if a == NONE {
            return out;
        }
        let mut stack = vec![a];
        let mut seen = std::collections::HashSet::new();
        seen.insert(a);
        while let Some(t) = stack.pop() {
            out.push(t);
            let tv = self.tets[t as usize];
            for i in 0..4 {
                if tv[i] == v {
                    continue;
                }
                let n = self.nbr[t as usize][i];
                if !self.is_ghost(n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Finite tets containing both `a` and `b`, sorted.
    pub fn tets_around_edge(&self, a: u32, b: u32) -> Vec<u32> {
        self.incident_tets(a)
            .into_iter()
            .filter(|&t| self.tets[t as usize].contains(&b))
            .collect()
    }

    /// Tet across face `i` of `t` (possibly a ghost).
    pub fn adjacent(&self, t: u32, i: usize) -> u32 {
        self.nbr[t as usize][i]
    }

    /// Structural check: neighbour symmetry, shared faces, orientation of
    /// finite and ghost tets.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        for (t, v) in self.tets.iter().enumerate() {
            for i in 0..4 {
                let n = self.nbr[t][i];
                if n == NONE || n as usize >= self.tets.len() {
                    return bad(format!("tet {t} face {i} has no neighbour"));
                }
                let Some(j) = self.nbr[n as usize].iter().position(|&x| x == t as u32) else {
                    return bad(format!("neighbour relation {t}-{n} not symmetric"));
                };
                if face_key(v, i) != face_key(&self.tets[n as usize], j) {
                    return bad(format!("tets {t} and {n} do not share a face"));
                }
            }
            match ghost_slot(v) {
                None => {
                    let q = |k: usize| &self.points[v[k] as usize];
                    if orient3d(q(0), q(1), q(2), q(3)) <= 0 {
                        return bad(format!("tet {t} is not positively oriented"));
                    }
                }
                Some(g) => {
                    let f = self.nbr[t][g];
                    if self.is_ghost(f) {
                        return bad(format!("ghost {t} is not on a finite tet"));
                    }
                    // the finite neighbour's apex must be on the inner side
                    let fv = self.tets[f as usize];
                    let apex = fv.iter().find(|x| !v.contains(x)).unwrap();
                    if orient_with(&self.points, v, g, &self.points[*apex as usize]) >= 0 {
                        return bad(format!("ghost {t} is inverted"));
                    }
                }
            }
        }
        for (v, &a) in self.anchor.iter().enumerate() {
            if a == NONE || !self.tets[a as usize].contains(&(v as u32)) {
                return bad(format!("vertex {v} has no valid anchor"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tet() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let m = build_delaunay(&pts, DelaunayOptions::default()).unwrap();
        m.validate().unwrap();
        assert_eq!(m.num_finite(), 1);
        assert_eq!(m.tets.len(), 5);
        for v in 0..4 {
            assert_eq!(m.incident_tets(v).len(), 1);
        }
    }

    #[test]
    fn centroid_star() {
        let pts = [
            [0.0, 0.0, 0.0],
            [4.0, 0.0, 0.0],
            [0.0, 4.0, 0.0],
            [0.0, 0.0, 4.0],
            [1.0, 1.0, 1.0],
        ];
        let m = build_delaunay(&pts, DelaunayOptions { presort: true }).unwrap();
        m.validate().unwrap();
        assert_eq!(m.num_finite(), 4);
        assert_eq!(m.incident_tets(4).len(), 4);
    }

    #[test]
    fn flat_input_is_rejected() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert!(matches!(
            build_delaunay(&pts, DelaunayOptions::default()),
            Err(Error::DegenerateInput(_))
        ));
    }
}
