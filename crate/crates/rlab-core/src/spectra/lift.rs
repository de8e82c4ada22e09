//! Random covers of graphs via permutation voltages.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{check_cover_map, SimplicialComplex, VertexMap};
use crate::spectra::SpectraError;

/// An r-fold cover of a graph: one independent uniform permutation per edge,
/// deterministic under the seed. The projection is verified to be a cover
/// map. The lift may be disconnected.
pub fn random_lift(
    x: &SimplicialComplex,
    r: usize,
    seed: u64,
) -> Result<(SimplicialComplex, VertexMap), SpectraError> {
    if x.dim() > 1 {
        return Err(SpectraError::DimensionUnsupported { got: x.dim(), max: 1 });
    }
    assert!(r >= 1, "lift degree must be at least 1");
    let n = x.num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<u32>> = Vec::new();
    // edges come out of the complex in canonical order, so the permutation
    // stream is reproducible
    for (u, v) in x.edges() {
        let mut sigma: Vec<u32> = (0..r as u32).collect();
        sigma.shuffle(&mut rng);
        for i in 0..r as u32 {
            let a = u * r as u32 + i;
            let b = v * r as u32 + sigma[i as usize];
            edges.push(vec![a, b]);
        }
    }
    let lifted = if edges.is_empty() {
        let cells = vec![(0..(n * r) as u32).map(crate::complex::Cell::vertex).collect()];
        SimplicialComplex::finish(cells, n * r, BTreeSet::new())
    } else {
        // vertices with no incident edge cannot occur on covers of connected graphs
        SimplicialComplex::from_maximal_cells(&edges, true, BTreeSet::new())
            .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?
    };
    let projection = VertexMap::new((0..(n * r) as u32).map(|id| id / r as u32).collect());
    check_cover_map(&projection, &lifted, x).map_err(SpectraError::NotACover)?;
    Ok((lifted, projection))
}
