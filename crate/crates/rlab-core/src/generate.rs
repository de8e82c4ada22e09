//! Deterministic complex generators: cycles, complete and multipartite graphs,
//! random regular graphs (permutation model), and regular tree balls.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

/// The cycle graph C_n (n >= 3).
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let edges: Vec<Vec<u32>> = (0..n)
        .map(|i| vec![i as u32, ((i + 1) % n) as u32])
        .collect();
    SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()).unwrap()
}

/// The path graph on n vertices.
pub fn path(n: usize) -> SimplicialComplex {
    assert!(n >= 2);
    let edges: Vec<Vec<u32>> = (0..n - 1).map(|i| vec![i as u32, i as u32 + 1]).collect();
    SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()).unwrap()
}

/// The complete graph K_n as a 1-dimensional complex.
pub fn complete_graph(n: usize) -> SimplicialComplex {
    assert!(n >= 2);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push(vec![u, v]);
        }
    }
    SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()).unwrap()
}

/// The full (n-1)-simplex on n vertices.
pub fn full_simplex(n: usize) -> SimplicialComplex {
    assert!(n >= 1);
    SimplicialComplex::from_maximal_cells(&[(0..n as u32).collect()], false, BTreeSet::new())
        .unwrap()
}

/// The Petersen graph (3-regular, 10 vertices).
pub fn petersen() -> SimplicialComplex {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push(vec![i, (i + 1) % 5]); // outer cycle
        edges.push(vec![i, i + 5]); // spokes
        edges.push(vec![i + 5, (i + 2) % 5 + 5]); // inner pentagram
    }
    SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()).unwrap()
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> SimplicialComplex {
    assert!(parts.len() >= 2 && parts.iter().all(|&p| p > 0));
    let offsets: Vec<u32> = parts
        .iter()
        .scan(0u32, |acc, &p| {
            let o = *acc;
            *acc += p as u32;
            Some(o)
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..parts.len() {
        for b in (a + 1)..parts.len() {
            for i in 0..parts[a] as u32 {
                for j in 0..parts[b] as u32 {
                    edges.push(vec![offsets[a] + i, offsets[b] + j]);
                }
            }
        }
    }
    SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()).unwrap()
}

/// Complete tripartite graph K_{m,m,m} with all transversal triangles filled.
pub fn tripartite_triangle_complex(m: usize) -> SimplicialComplex {
    assert!(m >= 1);
    let mut cells = Vec::new();
    let part = |p: u32, i: u32| p * m as u32 + i;
    for i in 0..m as u32 {
        for j in 0..m as u32 {
            for k in 0..m as u32 {
                cells.push(vec![part(0, i), part(1, j), part(2, k)]);
            }
        }
    }
    SimplicialComplex::from_maximal_cells(&cells, false, BTreeSet::new()).unwrap()
}

/// The 2-step circulant triangle complex: vertices Z/n, edges {i,i+1} and
/// {i,i+2}, triangles {i,i+1,i+2}. Carries a Z/3 colouring when 3 | n.
pub fn circulant_triangle_complex(n: usize) -> SimplicialComplex {
    assert!(n >= 7, "need n >= 7 so that the circulant is simple and simplicial");
    let tris: Vec<Vec<u32>> = (0..n)
        .map(|i| vec![i as u32, ((i + 1) % n) as u32, ((i + 2) % n) as u32])
        .collect();
    SimplicialComplex::from_maximal_cells(&tris, false, BTreeSet::new()).unwrap()
}

/// A ball of the k-regular tree together with BFS levels. Level-`radius`
/// vertices are marked as frontier on the complex.
pub struct TreeBall {
    pub complex: SimplicialComplex,
    pub levels: Vec<u32>,
}

pub fn tree_ball(k: usize, radius: usize) -> TreeBall {
    assert!(k >= 2);
    let mut levels = vec![0u32];
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut frontier = vec![0u32];
    let mut next_id = 1u32;
    for level in 1..=radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let children = if v == 0 { k } else { k - 1 };
            for _ in 0..children {
                edges.push(vec![v, next_id]);
                levels.push(level as u32);
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    let frontier_set: BTreeSet<u32> = frontier.into_iter().collect();
    let complex = if edges.is_empty() {
        SimplicialComplex::finish(vec![vec![crate::complex::Cell::vertex(0)]], 1, frontier_set)
    } else {
        SimplicialComplex::from_maximal_cells(&edges, false, frontier_set).unwrap()
    };
    TreeBall { complex, levels }
}

/// Random k-regular simple connected graph on n vertices via the permutation
/// model: k/2 random permutations (plus a perfect matching when k is odd),
/// resampled until the result is simple and connected.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<SimplicialComplex, GenerateError> {
    if n < k + 1 {
        return Err(GenerateError::InvalidParams(format!(
            "need n > k (got n={n}, k={k})"
        )));
    }
    if n * k % 2 != 0 {
        return Err(GenerateError::InvalidParams(format!(
            "n*k must be even (got n={n}, k={k})"
        )));
    }
    if k < 2 {
        return Err(GenerateError::InvalidParams("k must be >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const MAX_ATTEMPTS: usize = 10_000;
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut edge_set: BTreeSet<(u32, u32)> = BTreeSet::new();
        let add = |set: &mut BTreeSet<(u32, u32)>, u: u32, v: u32| -> bool {
            if u == v {
                return false;
            }
            set.insert((u.min(v), u.max(v)))
        };
        for _ in 0..k / 2 {
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            for v in 0..n as u32 {
                let w = perm[v as usize];
                if !add(&mut edge_set, v, w) {
                    continue 'attempt;
                }
            }
        }
        if k % 2 == 1 {
            let mut verts: Vec<u32> = (0..n as u32).collect();
            verts.shuffle(&mut rng);
            for pair in verts.chunks(2) {
                if !add(&mut edge_set, pair[0], pair[1]) {
                    continue 'attempt;
                }
            }
        }
        let degrees_ok = {
            let mut deg = vec![0usize; n];
            for &(u, v) in &edge_set {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
            deg.iter().all(|&d| d == k)
        };
        if !degrees_ok {
            continue 'attempt;
        }
        let edges: Vec<Vec<u32>> = edge_set.into_iter().map(|(u, v)| vec![u, v]).collect();
        match SimplicialComplex::from_maximal_cells(&edges, false, BTreeSet::new()) {
            Ok(x) => return Ok(x),
            Err(ComplexError::DisconnectedInput) => continue 'attempt,
            Err(e) => panic!("unexpected build failure: {e}"),
        }
    }
    Err(GenerateError::GenerationFailed(MAX_ATTEMPTS))
}

/// Random connected simplicial complex for property tests: random maximal
/// cells over a small vertex pool plus a spanning path to force connectivity.
pub fn random_small_complex(
    max_vertices: usize,
    max_dim: usize,
    seed: u64,
) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices);
    let mut cells: Vec<Vec<u32>> = (0..n - 1).map(|i| vec![i as u32, i as u32 + 1]).collect();
    let extra = rng.gen_range(1..=2 * n);
    for _ in 0..extra {
        let size = rng.gen_range(2..=(max_dim + 1).min(n));
        let mut pool: Vec<u32> = (0..n as u32).collect();
        pool.shuffle(&mut rng);
        cells.push(pool[..size].to_vec());
    }
    SimplicialComplex::from_maximal_cells(&cells, false, BTreeSet::new()).unwrap()
}
