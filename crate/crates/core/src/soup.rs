//! Triangle soups and input conditioning.

use crate::error::{Error, Result};
use polycell_predicates::{orient2d, Point3};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Soup {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[u32; 3]>,
}

/// Which input a constraint came from. Virtual constraints close boundary
/// edges and never color facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    A,
    B,
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub v: [u32; 3],
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionStats {
    pub input_vertices: usize,
    pub input_triangles: usize,
    pub merged_vertices: usize,
    pub degenerate_triangles: usize,
    pub duplicate_triangles: usize,
}

#[derive(Clone, Debug)]
pub struct Conditioned {
    pub points: Vec<Point3>,
    pub constraints: Vec<Constraint>,
    pub stats: ConditionStats,
}

fn key(p: &Point3) -> [u64; 3] {
    // adding 0.0 maps -0.0 to +0.0
    [(p[0] + 0.0).to_bits(), (p[1] + 0.0).to_bits(), (p[2] + 0.0).to_bits()]
}

pub fn collinear(a: &Point3, b: &Point3, c: &Point3) -> bool {
    (0..3).all(|k| {
        let (i, j) = (k, (k + 1) % 3);
        orient2d(&[a[i], a[j]], &[b[i], b[j]], &[c[i], c[j]]) == 0
    })
}

/// Welds exactly coincident vertices, drops collinear triangles and
/// same-orientation duplicates within one origin, and drops vertices no
/// surviving triangle references.
pub fn condition_input(parts: &[(&Soup, Origin)]) -> Result<Conditioned> {
    let mut stats = ConditionStats::default();
    let mut weld: HashMap<[u64; 3], u32> = HashMap::new();
    let mut welded_points: Vec<Point3> = Vec::new();
    let mut tris: Vec<([u32; 3], Origin)> = Vec::new();
    let mut seen: HashSet<([u32; 3], Origin)> = HashSet::new();
    for (soup, origin) in parts {
        stats.input_vertices += soup.vertices.len();
        stats.input_triangles += soup.triangles.len();
        let mut local = Vec::with_capacity(soup.vertices.len());
        for (i, p) in soup.vertices.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(Error::parse(format!("vertex {i}"), "non-finite coordinate"));
            }
            let next = welded_points.len() as u32;
            let id = *weld.entry(key(p)).or_insert(next);
            if id == next {
                welded_points.push(*p);
            }
            local.push(id);
        }
        for (ti, t) in soup.triangles.iter().enumerate() {
            let mut v = [0u32; 3];
            for k in 0..3 {
                let idx = t[k] as usize;
                if idx >= local.len() {
                    return Err(Error::parse(format!("triangle {ti}"), format!("vertex index {idx} out of range")));
                }
                v[k] = local[idx];
            }
            let [a, b, c] = v.map(|i| welded_points[i as usize]);
            if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] || collinear(&a, &b, &c) {
                stats.degenerate_triangles += 1;
                continue;
            }
            // rotation with the smallest id first identifies the oriented triangle
            let r = (0..3).min_by_key(|&k| v[k]).unwrap();
            let canon = [v[r], v[(r + 1) % 3], v[(r + 2) % 3]];
            if !seen.insert((canon, *origin)) {
                stats.duplicate_triangles += 1;
                continue;
            }
            tris.push((v, *origin));
        }
    }
    stats.merged_vertices = stats.input_vertices - welded_points.len();
    if tris.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut remap = vec![u32::MAX; welded_points.len()];
    let mut points = Vec::new();
    let mut constraints = Vec::with_capacity(tris.len());
    for (v, origin) in tris {
        let v = v.map(|i| {
            if remap[i as usize] == u32::MAX {
                remap[i as usize] = points.len() as u32;
                points.push(welded_points[i as usize]);
            }
            remap[i as usize]
        });
        constraints.push(Constraint { v, origin });
    }
    Ok(Conditioned {
        points,
        constraints,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welding_and_filtering() {
        let soup = Soup {
            vertices: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [-0.0, 0.0, 0.0],
                [2.0, 0.0, 0.0],
                [9.0, 9.0, 9.0],
            ],
            triangles: vec![[0, 1, 2], [3, 2, 1], [0, 1, 4], [3, 1, 2], [2, 1, 0]],
        };
        let c = condition_input(&[(&soup, Origin::A)]).unwrap();
        assert_eq!(c.points.len(), 3);
        assert_eq!(c.stats.merged_vertices, 1);
        assert_eq!(c.stats.degenerate_triangles, 1);
        // [3,1,2] repeats [0,1,2]; [3,2,1] and [2,1,0] are one opposite triangle
        assert_eq!(c.stats.duplicate_triangles, 2);
        assert_eq!(c.constraints.len(), 2);
    }

    #[test]
    fn empty_after_filtering() {
        let soup = Soup {
            vertices: vec![[0.0; 3], [1.0, 1.0, 1.0], [2.0, 2.0, 2.0]],
            triangles: vec![[0, 1, 2]],
        };
        assert!(matches!(condition_input(&[(&soup, Origin::A)]), Err(Error::EmptyInput)));
    }
}
