//! Balls of the affine building of PGL_d over F_q((t)) via the lattice-class
//! model, with the Z/d vertex colouring. Neighbours of a class [L] are the
//! classes of preimages of proper nonzero subspaces of L/tL; iterating this
//! from the base class and canonicalizing grows the ball level by level.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::colored::{ColoredComplex, ColoredError};
use crate::complex::{Cell, SimplicialComplex};
use crate::gf::{Gf, GfError};
use crate::lattice::{canonicalize_generators, LatticeClass, LatticeError};
use crate::laurent::Laurent;

#[derive(Debug, Error)]
pub enum BuildingError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Colored(#[from] ColoredError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ball would exceed the budget of {budget} vertices")]
    BudgetExceeded { budget: usize },
    #[error("division-algebra buildings (r > 1) are only available as trees (d = 2)")]
    DivisionAlgebraUnsupported,
}

/// Parameters of the local field and the group: residue field size q, matrix
/// size d, and the degree r of the underlying division algebra (r = 1 means
/// the split case; r > 1 is supported only through the d = 2 tree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFieldParams {
    pub q: u32,
    pub d: u32,
    pub r: u32,
}

impl LocalFieldParams {
    pub fn new(q: u32, d: u32) -> Self {
        LocalFieldParams { q, d, r: 1 }
    }

    pub fn with_division_degree(q: u32, d: u32, r: u32) -> Self {
        LocalFieldParams { q, d, r }
    }
}

/// A generated ball of the building: the coloured complex (frontier marked),
/// BFS levels, and the canonical lattice class of every vertex.
#[derive(Debug, Clone)]
pub struct BuildingBall {
    pub colored: ColoredComplex,
    pub levels: Vec<u32>,
    /// Canonical class per vertex; empty for the tree model (r > 1).
    pub classes: Vec<LatticeClass>,
    pub params: LocalFieldParams,
    pub radius: usize,
}

impl BuildingBall {
    pub fn interior_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.colored.complex.interior_vertices()
    }
}

pub const DEFAULT_VERTEX_BUDGET: usize = 200_000;

/// Gaussian binomial (d choose k)_q: the number of k-dimensional subspaces
/// of F_q^d.
pub fn gaussian_binomial(d: u32, k: u32, q: u32) -> u64 {
    if k > d {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow(d - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Interior vertex degree of the building: sum of (d choose k)_q over
/// k = 1..d-1.
pub fn building_degree(d: u32, q: u32) -> u64 {
    (1..d).map(|k| gaussian_binomial(d, k, q)).sum()
}

/// Advances a strictly increasing combination in 0..d; false when exhausted.
fn next_combination(c: &mut [usize], d: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < d - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All proper nonzero subspaces of F_q^d, each as a reduced row-echelon
/// basis (rows are vectors of length d over GF(q)).
fn enumerate_proper_subspaces(gf: &Gf, d: usize) -> Vec<Vec<Vec<u32>>> {
    let q = gf.q as u64;
    let mut out = Vec::new();
    for k in 1..d {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free positions: (row i, col j) with j > pivots[i], j not a pivot
            let mut free_pos = Vec::new();
            for i in 0..k {
                for j in (pivots[i] + 1)..d {
                    if !pivots.contains(&j) {
                        free_pos.push((i, j));
                    }
                }
            }
            let total = q.pow(free_pos.len() as u32);
            for code in 0..total {
                let mut basis = vec![vec![0u32; d]; k];
                for (i, &p) in pivots.iter().enumerate() {
                    basis[i][p] = 1;
                }
                let mut v = code;
                for &(i, j) in &free_pos {
                    basis[i][j] = (v % q) as u32;
                    v /= q;
                }
                out.push(basis);
            }
            if !next_combination(&mut pivots, d) {
                break;
            }
        }
    }
    out
}

/// All lattice classes adjacent to [L]: canonical forms of t·L + W for every
/// proper nonzero subspace W of L/tL (coordinates in the basis of L).
fn neighbor_classes(
    class: &LatticeClass,
    subspaces: &[Vec<Vec<u32>>],
    gf: &Gf,
) -> Result<Vec<LatticeClass>, LatticeError> {
    let d = class.d;
    let cols = class.columns();
    subspaces
        .par_iter()
        .map(|basis| {
            // generating columns: t * (basis of L), then lifts of W's basis
            let mut gen_cols: Vec<Vec<Laurent>> = cols.iter().map(|col| {
                col.iter().map(|e| e.shift(1)).collect()
            }).collect();
            for w in basis {
                let mut v = vec![Laurent::zero(); d];
                for (j, &coef) in w.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    for r in 0..d {
                        let term = cols[j][r].scale(coef, gf);
                        v[r] = v[r].add(&term, gf);
                    }
                }
                gen_cols.push(v);
            }
            // row-major generating matrix d x (d + k)
            let m = gen_cols.len();
            let rows: Vec<Vec<Laurent>> = (0..d)
                .map(|r| (0..m).map(|c| gen_cols[c][r].clone()).collect())
                .collect();
            canonicalize_generators(&rows, gf)
        })
        .collect()
}

/// Generates the ball of the given radius around the base vertex of the
/// building of PGL_d(F_q((t))). For r > 1 the building is only realized for
/// d = 2, as the (q^r + 1)-regular tree.
pub fn building_ball(
    params: LocalFieldParams,
    radius: usize,
    budget: usize,
) -> Result<BuildingBall, BuildingError> {
    if params.d < 2 {
        return Err(BuildingError::InvalidParams(format!("d must be >= 2, got {}", params.d)));
    }
    if params.r < 1 {
        return Err(BuildingError::InvalidParams("division degree r must be >= 1".into()));
    }
    if params.r > 1 {
        if params.d != 2 {
            return Err(BuildingError::DivisionAlgebraUnsupported);
        }
        let q_eff = params
            .q
            .checked_pow(params.r)
            .ok_or_else(|| BuildingError::InvalidParams("q^r overflows".into()))?;
        return tree_model_ball(params, q_eff as usize + 1, radius, budget);
    }
    let gf = Gf::new(params.q)?;
    let d = params.d as usize;
    // rough growth guard before generating
    let deg = building_degree(params.d, params.q);
    let mut estimate: u64 = 1;
    let mut layer: u64 = 1;
    for _ in 0..radius {
        layer = layer.saturating_mul(deg);
        estimate = estimate.saturating_add(layer);
        if estimate > budget as u64 {
            return Err(BuildingError::BudgetExceeded { budget });
        }
    }

    let subspaces = enumerate_proper_subspaces(&gf, d);
    debug_assert_eq!(subspaces.len() as u64, building_degree(params.d, params.q));

    let base = LatticeClass::base(d);
    let mut classes: Vec<LatticeClass> = vec![base.clone()];
    let mut index: HashMap<LatticeClass, u32> = HashMap::from([(base, 0u32)]);
    let mut levels: Vec<u32> = vec![0];
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut frontier: Vec<u32> = vec![0];

    for level in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            let nbrs = neighbor_classes(&classes[u as usize], &subspaces, &gf)?;
            for nb in nbrs {
                let id = match index.get(&nb) {
                    Some(&id) => id,
                    None => {
                        if classes.len() >= budget {
                            return Err(BuildingError::BudgetExceeded { budget });
                        }
                        let id = classes.len() as u32;
                        index.insert(nb.clone(), id);
                        classes.push(nb);
                        levels.push(level as u32);
                        next.push(id);
                        id
                    }
                };
                if id != u {
                    edges.insert((u.min(id), u.max(id)));
                }
            }
        }
        frontier = next;
    }

    let frontier_set: BTreeSet<u32> = levels
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l as usize == radius)
        .map(|(v, _)| v as u32)
        .collect();
    let complex = complex_from_clique_edges(classes.len(), &edges, d - 1, frontier_set);
    let colors: Vec<u32> = classes.iter().map(|c| c.color).collect();
    let colored = ColoredComplex::new(complex, params.d, colors)?;
    Ok(BuildingBall { colored, levels, classes, params, radius })
}

/// Builds the simplicial complex whose i-cells are the (i+1)-cliques of the
/// given edge set, up to the stated top dimension.
fn complex_from_clique_edges(
    n: usize,
    edges: &BTreeSet<(u32, u32)>,
    max_dim: usize,
    frontier: BTreeSet<u32>,
) -> SimplicialComplex {
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    }
    let mut by_dim: Vec<Vec<Cell>> = Vec::new();
    by_dim.push((0..n as u32).map(Cell::vertex).collect());
    if max_dim >= 1 {
        let mut cliques: Vec<Vec<u32>> = edges.iter().map(|&(u, v)| vec![u, v]).collect();
        by_dim.push(
            cliques
                .iter()
                .map(|c| Cell::new(c.clone()).expect("edges are sorted pairs"))
                .collect(),
        );
        for _ in 2..=max_dim {
            let mut bigger = Vec::new();
            for c in &cliques {
                let last = *c.last().unwrap();
                // extend by a common neighbour greater than the last vertex
                let mut candidates: Vec<u32> =
                    adj[c[0] as usize].iter().copied().filter(|&w| w > last).collect();
                for &v in &c[1..] {
                    candidates.retain(|w| adj[v as usize].contains(w));
                }
                for w in candidates {
                    let mut ext = c.clone();
                    ext.push(w);
                    bigger.push(ext);
                }
            }
            if bigger.is_empty() {
                break;
            }
            by_dim.push(
                bigger
                    .iter()
                    .map(|c| Cell::new(c.clone()).expect("cliques are sorted"))
                    .collect(),
            );
            cliques = bigger;
        }
    }
    SimplicialComplex::finish(by_dim, n, frontier)
}

/// The (k-regular tree) model used for division algebras at d = 2; colours
/// alternate with the BFS level.
fn tree_model_ball(
    params: LocalFieldParams,
    k: usize,
    radius: usize,
    budget: usize,
) -> Result<BuildingBall, BuildingError> {
    // growth guard
    let mut estimate: u64 = 1;
    let mut layer: u64 = 1;
    for lvl in 0..radius {
        layer = layer.saturating_mul(if lvl == 0 { k as u64 } else { k as u64 - 1 });
        estimate = estimate.saturating_add(layer);
        if estimate > budget as u64 {
            return Err(BuildingError::BudgetExceeded { budget });
        }
    }
    let tb = crate::generate::tree_ball(k, radius);
    let colors: Vec<u32> = tb.levels.iter().map(|&l| l % 2).collect();
    let colored = ColoredComplex::new(tb.complex, 2, colors)?;
    Ok(BuildingBall { colored, levels: tb.levels, classes: Vec::new(), params, radius })
}
