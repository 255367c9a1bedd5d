use polycell::classify::DualGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Square cells on a 4x4 grid plus the outer node; every edge has area 1.
struct Grid {
    g: DualGraph,
}

pub const N: usize = 4;
const OUTER: usize = N * N;

pub fn id(r: usize, c: usize) -> usize {
    r * N + c
}

impl Grid {
    /// `black(a, b)` gives, for a black edge between cells `a` and `b`,
    /// the cell its normal points into; `None` for white edges.
    fn new(black: impl Fn(usize, usize) -> Option<Option<usize>>) -> Grid {
        let mut g = DualGraph::with_nodes(N * N + 1);
        let mut edge = |a: usize, b: usize| match black(a, b).or_else(|| black(b, a)) {
            None => g.arcs.push((a as u32, b as u32, 1.0)),
            Some(into) => {
                // the cell the normal points into is outside for the constraint
                let (outside, inside) = if into == Some(a) { (a, b) } else { (b, a) };
                g.d_in[outside] += 1.0;
                g.d_out[inside] += 1.0;
            }
        };
        for r in 0..N {
            for c in 0..N {
                if c + 1 < N {
                    edge(id(r, c), id(r, c + 1));
                }
                if r + 1 < N {
                    edge(id(r, c), id(r + 1, c));
                }
                if r == 0 || r == N - 1 || c == 0 || c == N - 1 {
                    let border = (r == 0) as usize + (r == N - 1) as usize + (c == 0) as usize + (c == N - 1) as usize;
                    for _ in 0..border {
                        edge(id(r, c), OUTER);
                    }
                }
            }
        }
        let total: f64 = g.d_in.iter().chain(&g.d_out).sum::<f64>() + g.arcs.iter().map(|a| a.2).sum::<f64>();
        g.d_in[OUTER] = 1.0 + total;
        Grid { g }
    }
}

/// The 2x2 block of cells (1..=2, 1..=2) bounded by black edges with
/// outward normals, except for a white gap of two edges on top and one
/// normal flipped on the bottom.
pub fn two_d_example() -> DualGraph {
    let block = |x: usize| (1..=2).contains(&(x / N)) && (1..=2).contains(&(x % N));
    Grid::new(|a, b| {
        if !(block(a) && !block(b)) || b == OUTER {
            return None;
        }
        if a == id(1, 1) && b == id(0, 1) || a == id(1, 2) && b == id(0, 2) {
            return None;
        }
        if a == id(2, 1) && b == id(3, 1) {
            return Some(Some(a));
        }
        Some(Some(b))
    })
    .g
}

pub fn labeling(inside: &[usize]) -> Vec<bool> {
    (0..=N * N).map(|v| inside.contains(&v)).collect()
}

pub fn brute_force_min(g: &DualGraph) -> f64 {
    brute_force(g).0
}

/// Minimum energy and all minimizing labelings, as bit masks.
pub fn brute_force(g: &DualGraph) -> (f64, Vec<u32>) {
    let n = g.len();
    let mut best = f64::INFINITY;
    let mut arg = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut e = 0.0;
        for v in 0..n {
            e += if mask >> v & 1 == 1 { g.d_in[v] } else { g.d_out[v] };
        }
        for &(a, b, w) in &g.arcs {
            if (mask >> a ^ mask >> b) & 1 == 1 {
                e += w;
            }
        }
        if e < best {
            best = e;
            arg.clear();
        }
        if e == best {
            arg.push(mask);
        }
    }
    (best, arg)
}

pub fn mask_of(l: &[bool]) -> u32 {
    l.iter().enumerate().fold(0, |m, (i, &x)| m | (x as u32) << i)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, integral: bool) -> DualGraph {
    let w = |rng: &mut ChaCha8Rng| -> f64 {
        if rng.gen_bool(0.3) {
            0.0
        } else if integral {
            rng.gen_range(1..8) as f64
        } else {
            rng.gen_range(1..1 << 20) as f64 / (1 << 12) as f64
        }
    };
    let mut g = DualGraph::with_nodes(n);
    for v in 0..n {
        g.d_in[v] = w(rng);
        g.d_out[v] = w(rng);
    }
    let m = rng.gen_range(0..=2 * n);
    for _ in 0..m {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let x = w(rng);
            g.arcs.push((a as u32, b as u32, x));
        }
    }
    g
}
