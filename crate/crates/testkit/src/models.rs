//! Small triangle-soup generators.

use rand::Rng;

#[derive(Clone, Debug, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
}

impl Mesh {
    pub fn append(&mut self, other: &Mesh) {
        let base = self.vertices.len() as u32;
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles
            .extend(other.triangles.iter().map(|t| [t[0] + base, t[1] + base, t[2] + base]));
    }

    pub fn merged(parts: &[Mesh]) -> Mesh {
        let mut m = Mesh::default();
        for p in parts {
            m.append(p);
        }
        m
    }

    pub fn translated(mut self, d: [f64; 3]) -> Mesh {
        for v in &mut self.vertices {
            for k in 0..3 {
                v[k] += d[k];
            }
        }
        self
    }

    pub fn flipped(mut self, tri: usize) -> Mesh {
        self.triangles[tri].swap(1, 2);
        self
    }

    /// Signed volume by the divergence theorem (f64).
    pub fn volume(&self) -> f64 {
        let mut v = 0.0;
        for t in &self.triangles {
            let a = self.vertices[t[0] as usize];
            let b = self.vertices[t[1] as usize];
            let c = self.vertices[t[2] as usize];
            v += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]);
        }
        v / 6.0
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Axis-aligned box with outward-oriented triangles.
pub fn cuboid(min: [f64; 3], max: [f64; 3]) -> Mesh {
    let mut vertices = Vec::new();
    for i in 0..8 {
        vertices.push([
            if i & 1 == 0 { min[0] } else { max[0] },
            if i & 2 == 0 { min[1] } else { max[1] },
            if i & 4 == 0 { min[2] } else { max[2] },
        ]);
    }
    // quads listed counterclockwise seen from outside
    let quads = [
        [0, 4, 6, 2], // -x
        [1, 3, 7, 5], // +x
        [0, 1, 5, 4], // -y
        [2, 6, 7, 3], // +y
        [0, 2, 3, 1], // -z
        [4, 5, 7, 6], // +z
    ];
    let mut triangles = Vec::new();
    for q in quads {
        triangles.push([q[0], q[1], q[2]]);
        triangles.push([q[0], q[2], q[3]]);
    }
    Mesh { vertices, triangles }
}

pub fn unit_cube() -> Mesh {
    cuboid([0.0; 3], [1.0; 3])
}

/// Square pyramid with base `[0,1]^2` at z = 0 and apex at height `h`.
pub fn pyramid(h: f64) -> Mesh {
    let vertices = vec![
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.5, 0.5, h],
    ];
    let triangles = vec![
        [0, 2, 1],
        [0, 3, 2],
        [0, 1, 4],
        [1, 2, 4],
        [2, 3, 4],
        [3, 0, 4],
    ];
    Mesh { vertices, triangles }
}

/// The pyramid with one base triangle removed.
pub fn open_pyramid(h: f64) -> Mesh {
    let mut m = pyramid(h);
    m.triangles.remove(0);
    m
}

pub fn tetrahedron(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> Mesh {
    let mut m = Mesh {
        vertices: vec![a, b, c, d],
        triangles: vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [2, 0, 3]],
    };
    // orient outward
    let n = cross(sub(b, a), sub(c, a));
    if dot(n, sub(d, a)) < 0.0 {
        for t in &mut m.triangles {
            t.swap(1, 2);
        }
    }
    m
}

/// Rotation of `m` about `center` by a unit quaternion `(w, x, y, z)`.
pub fn rotated(m: &Mesh, quat: [f64; 4], center: [f64; 3]) -> Mesh {
    let [w, x, y, z] = quat;
    let r = [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ];
    let vertices = m
        .vertices
        .iter()
        .map(|v| {
            let d = sub(*v, center);
            [
                center[0] + dot(r[0], d),
                center[1] + dot(r[1], d),
                center[2] + dot(r[2], d),
            ]
        })
        .collect();
    Mesh {
        vertices,
        triangles: m.triangles.clone(),
    }
}

pub fn random_quaternion<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let q: [f64; 4] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = (q.iter().map(|c| c * c).sum::<f64>()).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
        }
    }
}

/// Unit cube rotated randomly about its center and shifted by `offset`.
pub fn random_rotated_cube<R: Rng>(rng: &mut R, offset: [f64; 3]) -> Mesh {
    let q = random_quaternion(rng);
    rotated(&unit_cube(), q, [0.5, 0.5, 0.5]).translated(offset)
}

/// Subdivided icosahedron projected to the sphere of radius `r`.
pub fn icosphere(level: u32, r: f64) -> Mesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<[f64; 3]> = vec![
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ];
    let mut triangles: Vec<[u32; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let norm = |p: [f64; 3]| {
        let l = dot(p, p).sqrt();
        [p[0] / l, p[1] / l, p[2] / l]
    };
    for v in &mut vertices {
        *v = norm(*v);
    }
    for _ in 0..level {
        let mut mid = std::collections::HashMap::new();
        let mut next = Vec::new();
        let mut midpoint = |a: u32, b: u32, vertices: &mut Vec<[f64; 3]>| -> u32 {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let pa = vertices[a as usize];
                let pb = vertices[b as usize];
                vertices.push(norm([
                    (pa[0] + pb[0]) * 0.5,
                    (pa[1] + pb[1]) * 0.5,
                    (pa[2] + pb[2]) * 0.5,
                ]));
                (vertices.len() - 1) as u32
            })
        };
        for tri in &triangles {
            let a = midpoint(tri[0], tri[1], &mut vertices);
            let b = midpoint(tri[1], tri[2], &mut vertices);
            let c = midpoint(tri[2], tri[0], &mut vertices);
            next.push([tri[0], a, c]);
            next.push([tri[1], b, a]);
            next.push([tri[2], c, b]);
            next.push([a, b, c]);
        }
        triangles = next;
    }
    for v in &mut vertices {
        *v = [v[0] * r, v[1] * r, v[2] * r];
    }
    Mesh { vertices, triangles }
}

/// Torus around the z axis with `nu * nv * 2` triangles.
pub fn torus(nu: usize, nv: usize, big_r: f64, small_r: f64) -> Mesh {
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = 2.0 * std::f64::consts::PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * std::f64::consts::PI * j as f64 / nv as f64;
            let rr = big_r + small_r * v.cos();
            vertices.push([rr * u.cos(), rr * u.sin(), small_r * v.sin()]);
        }
    }
    let id = |i: usize, j: usize| ((i % nu) * nv + (j % nv)) as u32;
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Mesh { vertices, triangles }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_outward() {
        assert!((unit_cube().volume() - 1.0).abs() < 1e-15);
        assert!((pyramid(1.0).volume() - 1.0 / 3.0).abs() < 1e-15);
        let s = icosphere(2, 1.0);
        assert_eq!(s.triangles.len(), 320);
        assert!(s.volume() > 3.5);
        let t = torus(16, 8, 2.0, 0.5);
        let expect = 2.0 * std::f64::consts::PI * std::f64::consts::PI * 2.0 * 0.25;
        assert!(t.volume() > 0.8 * expect && t.volume() < expect);
        let tet = tetrahedron([0.0; 3], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
        assert!(tet.volume() > 0.0);
    }
}
