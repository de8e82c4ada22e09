//! Group actions on complexes, admissibility, and quotient construction.
//!
//! A quotient is only formed when the projection is a cover map, which by the
//! displacement criterion means every nonidentity element moves every vertex
//! by combinatorial distance greater than 2.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{check_cover_map, Cell, CoverDefect, SimplicialComplex, VertexMap};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("generator {index} is not a permutation of the vertex set")]
    NotAPermutation { index: usize },
    #[error("generator {index} does not map cells to cells (fails on {cell})")]
    NotAnAutomorphism { index: usize, cell: Cell },
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("action is not admissible: element moves vertex {v} by distance {dist} <= 2")]
    NotAdmissible { v: u32, dist: usize },
    #[error("quotient projection failed the cover check: {0}")]
    QuotientNotCover(CoverDefect),
}

/// A finite list of vertex permutations, each a simplicial automorphism.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub generators: Vec<Vec<u32>>,
}

impl GroupAction {
    pub fn new(generators: Vec<Vec<u32>>) -> Self {
        GroupAction { generators }
    }

    /// Checks permutation and automorphism conditions against a complex.
    pub fn validate(&self, x: &SimplicialComplex) -> Result<(), ActionError> {
        let n = x.num_vertices();
        for (index, g) in self.generators.iter().enumerate() {
            if g.len() != n {
                return Err(ActionError::NotAPermutation { index });
            }
            let mut seen = vec![false; n];
            for &v in g {
                if v as usize >= n || seen[v as usize] {
                    return Err(ActionError::NotAPermutation { index });
                }
                seen[v as usize] = true;
            }
            for d in 0..=x.dim() {
                for c in x.cells(d) {
                    match c.map(g) {
                        Some(img) if x.contains_cell(&img) => {}
                        _ => {
                            return Err(ActionError::NotAnAutomorphism { index, cell: c.clone() })
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a ∘ b)(v) = a(b(v))
    b.iter().map(|&v| a[v as usize]).collect()
}

/// Breadth-first closure of the generated group, identity included.
pub fn enumerate_group(
    x: &SimplicialComplex,
    action: &GroupAction,
    cap: usize,
) -> Result<Vec<Vec<u32>>, ActionError> {
    action.validate(x)?;
    let n = x.num_vertices();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut elems: Vec<Vec<u32>> = vec![identity.clone()];
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in &action.generators {
                let h = compose(g, &elems[i]);
                if !seen.contains_key(&h) {
                    if elems.len() >= cap {
                        return Err(ActionError::GroupTooLarge { cap });
                    }
                    seen.insert(h.clone(), elems.len());
                    next.push(elems.len());
                    elems.push(h);
                }
            }
        }
        frontier = next;
    }
    Ok(elems)
}

/// Displacement criterion: dist(v, γv) > 2 for every nonidentity γ and every
/// vertex v, checked by full orbit-closure enumeration.
pub fn is_admissible_subgroup(
    x: &SimplicialComplex,
    action: &GroupAction,
    cap: usize,
) -> Result<bool, ActionError> {
    Ok(admissibility_defect(x, action, cap)?.is_none())
}

/// Returns the first admissibility violation (vertex and displacement), if any.
pub fn admissibility_defect(
    x: &SimplicialComplex,
    action: &GroupAction,
    cap: usize,
) -> Result<Option<(u32, usize)>, ActionError> {
    let elems = enumerate_group(x, action, cap)?;
    let n = x.num_vertices();
    // vertices within closed distance 2, precomputed once
    let near: Vec<BTreeSet<u32>> = (0..n as u32).map(|v| x.vertex_ball(v, 2)).collect();
    for g in elems.iter().skip(1) {
        for v in 0..n as u32 {
            let gv = g[v as usize];
            if near[v as usize].contains(&gv) {
                let d = x.vertex_distance(v, gv).unwrap_or(0);
                return Ok(Some((v, d)));
            }
        }
    }
    Ok(None)
}

/// Admissibility on a generated ball: the displacement condition is only
/// sound for vertices whose distance-2 neighbourhood avoids the frontier.
/// Returns (no violation seen, number of vertices actually checked).
pub fn is_admissible_on_ball(
    x: &SimplicialComplex,
    action: &GroupAction,
    cap: usize,
) -> Result<(bool, usize), ActionError> {
    let elems = enumerate_group(x, action, cap)?;
    let n = x.num_vertices();
    let mut checked = 0usize;
    for v in 0..n as u32 {
        let b2 = x.vertex_ball(v, 2);
        if b2.iter().any(|&w| !x.is_interior(w)) {
            continue;
        }
        checked += 1;
        for g in elems.iter().skip(1) {
            if b2.contains(&g[v as usize]) {
                return Ok((false, checked));
            }
        }
    }
    Ok((true, checked))
}

/// A quotient complex with its verified covering projection.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: SimplicialComplex,
    pub projection: VertexMap,
    /// Vertex orbits of the cover, one per quotient vertex, each sorted.
    pub vertex_orbits: Vec<Vec<u32>>,
    pub group_order: usize,
}

/// Quotient by an admissible action. Orbit representatives are
/// lexicographically least, so quotient labels are deterministic.
pub fn quotient_by_action(
    x: &SimplicialComplex,
    action: &GroupAction,
    cap: usize,
) -> Result<QuotientResult, ActionError> {
    if let Some((v, dist)) = admissibility_defect(x, action, cap)? {
        return Err(ActionError::NotAdmissible { v, dist });
    }
    let elems = enumerate_group(x, action, cap)?;
    let n = x.num_vertices();

    // vertex orbits, labelled in order of their least representative
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for v in 0..n as u32 {
        if orbit_of[v as usize] != u32::MAX {
            continue;
        }
        let label = orbits.len() as u32;
        let mut orbit: BTreeSet<u32> = elems.iter().map(|g| g[v as usize]).collect();
        for &w in &orbit {
            orbit_of[w as usize] = label;
        }
        orbits.push(std::mem::take(&mut orbit).into_iter().collect());
    }

    let projection = VertexMap::new(orbit_of.clone());
    let mut by_dim: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); x.dim() + 1];
    for d in 0..=x.dim() {
        for c in x.cells(d) {
            let img = c
                .map(&projection.map)
                .expect("admissible actions cannot merge vertices of a cell");
            by_dim[d].insert(img);
        }
    }
    let cells: Vec<Vec<Cell>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
    let quotient = SimplicialComplex::finish(cells, orbits.len(), BTreeSet::new());
    check_cover_map(&projection, x, &quotient).map_err(ActionError::QuotientNotCover)?;
    Ok(QuotientResult {
        quotient,
        projection,
        vertex_orbits: orbits,
        group_order: elems.len(),
    })
}

/// Rotation action v -> v + s (mod n) on a cycle's vertex set.
pub fn cycle_rotation(n: usize, s: usize) -> GroupAction {
    GroupAction::new(vec![(0..n as u32).map(|v| ((v as usize + s) % n) as u32).collect()])
}

/// Orbit count sanity data used by tests: orbit sizes grouped by size.
pub fn orbit_size_histogram(q: &QuotientResult) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for o in &q.vertex_orbits {
        *h.entry(o.len()).or_insert(0) += 1;
    }
    h
}
