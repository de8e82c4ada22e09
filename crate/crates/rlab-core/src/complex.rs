//! Finite simplicial complexes with combinatorial metric structure and cover maps.
//!
//! Cells are stored as strictly sorted vertex lists, grouped by dimension, with
//! coface indexes so operator assembly can iterate incidences without search.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("malformed cell {0:?}: repeated vertices")]
    MalformedCell(Vec<u32>),
    #[error("empty input: at least one maximal cell is required")]
    EmptyInput,
    #[error("disconnected input: the downward closure has more than one component")]
    DisconnectedInput,
    #[error("cell {0} not found in the complex")]
    CellNotFound(Cell),
}

/// A cell: a strictly sorted, nonempty set of vertex indices.
/// Dimension is `vertices.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(Vec<u32>);

impl Cell {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::MalformedCell(vertices));
        }
        let raw = vertices.clone();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedCell(raw));
        }
        Ok(Cell(vertices))
    }

    /// Single-vertex cell.
    pub fn vertex(v: u32) -> Self {
        Cell(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Cell) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// All facets (codimension-1 faces); empty for vertices.
    pub fn facets(&self) -> Vec<Cell> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|j| {
                let mut v = self.0.clone();
                v.remove(j);
                Cell(v)
            })
            .collect()
    }

    /// Image under a vertex map; fails (returns None) when vertices collide.
    pub fn map(&self, f: &[u32]) -> Option<Cell> {
        let mut img: Vec<u32> = self.0.iter().map(|&v| f[v as usize]).collect();
        img.sort_unstable();
        if img.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(Cell(img))
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A locally finite simplicial complex over dense vertex indices `0..n`.
///
/// Downward closed by construction. Complexes built through [`build_complex`]
/// are connected; disjoint unions and lifts may carry several components and
/// report it through [`SimplicialComplex::is_connected`].
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    /// `cells[i]` holds the i-cells in lexicographic order.
    cells: Vec<Vec<Cell>>,
    /// Per dimension, cell -> index into `cells[i]`.
    index: Vec<HashMap<Cell, usize>>,
    /// 1-skeleton adjacency.
    vertex_adj: Vec<Vec<u32>>,
    /// For each vertex, the (dim, idx) of every cell containing it.
    vertex_cofaces: Vec<Vec<(usize, usize)>>,
    connected: bool,
    /// Vertices whose incidences were cut off by a generation radius.
    frontier: BTreeSet<u32>,
}

/// Builds the downward closure of the given maximal cells and verifies
/// connectivity. Vertex ids may be sparse; they are relabelled to `0..n`
/// preserving order.
pub fn build_complex(maximal_cells: &[Vec<u32>]) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::from_maximal_cells(maximal_cells, false, BTreeSet::new())
}

impl SimplicialComplex {
    pub(crate) fn from_maximal_cells(
        maximal_cells: &[Vec<u32>],
        allow_disconnected: bool,
        frontier_labels: BTreeSet<u32>,
    ) -> Result<Self, ComplexError> {
        if maximal_cells.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let mut labels = BTreeSet::new();
        let mut sorted_inputs = Vec::with_capacity(maximal_cells.len());
        for raw in maximal_cells {
            let c = Cell::new(raw.clone())?;
            labels.extend(c.vertices().iter().copied());
            sorted_inputs.push(c);
        }
        let relabel: BTreeMap<u32, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let n = relabel.len();

        let mut by_dim: Vec<BTreeSet<Cell>> = Vec::new();
        for c in &sorted_inputs {
            let mapped: Vec<u32> = c.vertices().iter().map(|v| relabel[v]).collect();
            let k = mapped.len();
            // downward closure: all nonempty subsets
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<u32> = (0..k)
                    .filter(|&b| mask & (1 << b) != 0)
                    .map(|b| mapped[b])
                    .collect();
                let d = sub.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(Cell(sub));
            }
        }
        // every vertex is a 0-cell
        for v in 0..n as u32 {
            by_dim[0].insert(Cell::vertex(v));
        }

        let cells: Vec<Vec<Cell>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let frontier = frontier_labels
            .into_iter()
            .filter_map(|v| relabel.get(&v).copied())
            .collect();
        let complex = Self::finish(cells, n, frontier);
        if !allow_disconnected && !complex.connected {
            return Err(ComplexError::DisconnectedInput);
        }
        Ok(complex)
    }

    /// Assembles indexes; `cells` must already be downward closed, per-dim sorted.
    pub(crate) fn finish(mut cells: Vec<Vec<Cell>>, n: usize, frontier: BTreeSet<u32>) -> Self {
        while cells.len() > 1 && cells.last().map_or(false, |v| v.is_empty()) {
            cells.pop();
        }
        let mut index = Vec::with_capacity(cells.len());
        for dim_cells in &cells {
            let mut m = HashMap::with_capacity(dim_cells.len());
            for (i, c) in dim_cells.iter().enumerate() {
                m.insert(c.clone(), i);
            }
            index.push(m);
        }
        let mut vertex_adj = vec![Vec::new(); n];
        if cells.len() > 1 {
            for e in &cells[1] {
                let (u, v) = (e.vertices()[0], e.vertices()[1]);
                vertex_adj[u as usize].push(v);
                vertex_adj[v as usize].push(u);
            }
        }
        for a in &mut vertex_adj {
            a.sort_unstable();
        }
        let mut vertex_cofaces = vec![Vec::new(); n];
        for (d, dim_cells) in cells.iter().enumerate() {
            for (i, c) in dim_cells.iter().enumerate() {
                for &v in c.vertices() {
                    vertex_cofaces[v as usize].push((d, i));
                }
            }
        }
        let connected = Self::count_components(n, &vertex_adj) <= 1;
        SimplicialComplex {
            cells,
            index,
            vertex_adj,
            vertex_cofaces,
            connected,
            frontier,
        }
    }

    fn count_components(n: usize, adj: &[Vec<u32>]) -> usize {
        let mut seen = vec![false; n];
        let mut comps = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            comps += 1;
            let mut q = VecDeque::from([s as u32]);
            seen[s] = true;
            while let Some(u) = q.pop_front() {
                for &w in &adj[u as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        comps
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_adj.len()
    }

    /// Top dimension (max i with i-cells present).
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn cell_index(&self, c: &Cell) -> Option<usize> {
        self.index.get(c.dim())?.get(c).copied()
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.cell_index(c).is_some()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.vertex_adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.vertex_adj[v as usize].len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Frontier vertices of a generated ball; empty for fully built complexes.
    pub fn frontier(&self) -> &BTreeSet<u32> {
        &self.frontier
    }

    pub fn is_interior(&self, v: u32) -> bool {
        !self.frontier.contains(&v)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.num_vertices() as u32).filter(|v| self.is_interior(*v))
    }

    /// Edges as ordered pairs (u < v).
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.cells(1)
            .iter()
            .map(|e| (e.vertices()[0], e.vertices()[1]))
    }

    /// Combinatorial distance: the minimal length t of a chain of cells
    /// y_1, ..., y_t with x ⊆ y_1, x' ⊆ y_t and consecutive nonempty
    /// intersections; 0 when the cells coincide.
    pub fn dist(&self, x: &Cell, x2: &Cell) -> Result<usize, ComplexError> {
        if !self.contains_cell(x) {
            return Err(ComplexError::CellNotFound(x.clone()));
        }
        if !self.contains_cell(x2) {
            return Err(ComplexError::CellNotFound(x2.clone()));
        }
        if x == x2 {
            return Ok(0);
        }
        let mut seen: Vec<Vec<bool>> = self.cells.iter().map(|c| vec![false; c.len()]).collect();
        let mut q = VecDeque::new();
        for &(d, i) in self.cofaces_of(x) {
            if x.is_subset_of(&self.cells[d][i]) {
                seen[d][i] = true;
                q.push_back((d, i, 1usize));
            }
        }
        while let Some((d, i, t)) = q.pop_front() {
            let y = &self.cells[d][i];
            if x2.is_subset_of(y) {
                return Ok(t);
            }
            for &v in y.vertices() {
                for &(d2, i2) in &self.vertex_cofaces[v as usize] {
                    if !seen[d2][i2] {
                        seen[d2][i2] = true;
                        q.push_back((d2, i2, t + 1));
                    }
                }
            }
        }
        // connected complexes always terminate above; disconnected ones land here
        Err(ComplexError::CellNotFound(x2.clone()))
    }

    /// Cells of the form y ⊇ x (x's cofaces of every dimension, x included).
    fn cofaces_of(&self, x: &Cell) -> &[(usize, usize)] {
        // all cofaces of x contain its first vertex
        &self.vertex_cofaces[x.vertices()[0] as usize]
    }

    /// The ball of radius n around x: all cells at combinatorial distance <= n.
    pub fn ball(&self, x: &Cell, n: usize) -> Result<BTreeSet<Cell>, ComplexError> {
        if !self.contains_cell(x) {
            return Err(ComplexError::CellNotFound(x.clone()));
        }
        let mut out = BTreeSet::new();
        out.insert(x.clone());
        if n == 0 {
            return Ok(out);
        }
        let mut seen: Vec<Vec<bool>> = self.cells.iter().map(|c| vec![false; c.len()]).collect();
        let mut q = VecDeque::new();
        for &(d, i) in self.cofaces_of(x) {
            if x.is_subset_of(&self.cells[d][i]) && !seen[d][i] {
                seen[d][i] = true;
                q.push_back((d, i, 1usize));
            }
        }
        while let Some((d, i, t)) = q.pop_front() {
            let y = &self.cells[d][i];
            // every subcell of y is at distance <= t
            let vs = y.vertices();
            for mask in 1u64..(1u64 << vs.len()) {
                let sub: Vec<u32> = (0..vs.len())
                    .filter(|&b| mask & (1 << b) != 0)
                    .map(|b| vs[b])
                    .collect();
                out.insert(Cell(sub));
            }
            if t < n {
                for &v in vs {
                    for &(d2, i2) in &self.vertex_cofaces[v as usize] {
                        if !seen[d2][i2] {
                            seen[d2][i2] = true;
                            q.push_back((d2, i2, t + 1));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Graph distance on the 1-skeleton (equals `dist` on vertex cells).
    pub fn vertex_distance(&self, u: u32, v: u32) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut seen = vec![false; self.num_vertices()];
        seen[u as usize] = true;
        let mut q = VecDeque::from([(u, 0usize)]);
        while let Some((w, t)) = q.pop_front() {
            for &x in &self.vertex_adj[w as usize] {
                if x == v {
                    return Some(t + 1);
                }
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    q.push_back((x, t + 1));
                }
            }
        }
        None
    }

    /// Vertices within graph distance `r` of `v` (closed ball).
    pub fn vertex_ball(&self, v: u32, r: usize) -> BTreeSet<u32> {
        let mut seen = BTreeSet::from([v]);
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.vertex_adj[u as usize] {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Maximal cells (cells not properly contained in another cell).
    pub fn maximal_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (d, dim_cells) in self.cells.iter().enumerate() {
            for (i, c) in dim_cells.iter().enumerate() {
                let has_proper_coface = self.vertex_cofaces[c.vertices()[0] as usize]
                    .iter()
                    .any(|&(d2, i2)| d2 > d && c.is_subset_of(&self.cells[d2][i2]) && (d2, i2) != (d, i));
                if !has_proper_coface {
                    out.push(c.clone());
                }
            }
        }
        out
    }

    /// Relabels `other` by an offset and merges the cell sets. The result is
    /// disconnected by construction; it carries spectra of both summands.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let off = self.num_vertices() as u32;
        let dmax = self.dim().max(other.dim());
        let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            let mut v: Vec<Cell> = self.cells(d).to_vec();
            v.extend(
                other
                    .cells(d)
                    .iter()
                    .map(|c| Cell(c.vertices().iter().map(|&x| x + off).collect())),
            );
            v.sort();
            cells.push(v);
        }
        let n = self.num_vertices() + other.num_vertices();
        let frontier = self
            .frontier
            .iter()
            .copied()
            .chain(other.frontier.iter().map(|&v| v + off))
            .collect();
        Self::finish(cells, n, frontier)
    }
}

/// A map on vertices, the carrier of simplicial morphisms and covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub map: Vec<u32>,
}

impl VertexMap {
    pub fn new(map: Vec<u32>) -> Self {
        VertexMap { map }
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.map[v as usize]
    }
}

/// Why a vertex map fails to be a cover map.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverDefect {
    #[error("map is defined on {got} vertices, complex has {want}")]
    WrongDomain { got: usize, want: usize },
    #[error("vertex {v} maps outside the target complex")]
    OutOfRange { v: u32 },
    #[error("cell {cell} does not map to a cell of the target")]
    NotSimplicial { cell: Cell },
    #[error("vertex {v} of the target has no preimage")]
    NotSurjective { v: u32 },
    #[error("coface map at vertex {v} is not injective (cells {a} and {b} collide)")]
    NotLocallyInjective { v: u32, a: Cell, b: Cell },
    #[error("coface count mismatch at vertex {v} in dimension {dim}: {got} vs {want}")]
    CofaceCountMismatch { v: u32, dim: usize, got: usize, want: usize },
}

/// Checks that `f` is a cover map X -> Y: simplicial, vertex-surjective, and
/// bijective on cofaces at every vertex.
pub fn check_cover_map(
    f: &VertexMap,
    x: &SimplicialComplex,
    y: &SimplicialComplex,
) -> Result<(), CoverDefect> {
    let n = x.num_vertices();
    if f.map.len() != n {
        return Err(CoverDefect::WrongDomain { got: f.map.len(), want: n });
    }
    if let Some(&v) = f.map.iter().find(|&&w| w as usize >= y.num_vertices()) {
        return Err(CoverDefect::OutOfRange { v });
    }
    // simplicial with dimension preserved
    for d in 0..=x.dim() {
        for c in x.cells(d) {
            match c.map(&f.map) {
                Some(img) if y.contains_cell(&img) => {}
                _ => return Err(CoverDefect::NotSimplicial { cell: c.clone() }),
            }
        }
    }
    // vertex surjectivity
    let mut hit = vec![false; y.num_vertices()];
    for &w in &f.map {
        hit[w as usize] = true;
    }
    if let Some(v) = hit.iter().position(|h| !h) {
        return Err(CoverDefect::NotSurjective { v: v as u32 });
    }
    // local bijectivity on cofaces
    for v in 0..n as u32 {
        let fv = f.apply(v);
        let mut per_dim_images: BTreeMap<usize, BTreeSet<Cell>> = BTreeMap::new();
        for &(d, i) in &x.vertex_cofaces[v as usize] {
            let c = &x.cells[d][i];
            let img = c.map(&f.map).expect("checked simplicial above");
            if !per_dim_images.entry(d).or_default().insert(img.clone()) {
                // find the earlier colliding cell for the diagnostic
                let earlier = x.vertex_cofaces[v as usize]
                    .iter()
                    .take_while(|&&p| p != (d, i))
                    .map(|&(d2, i2)| &x.cells[d2][i2])
                    .find(|c2| c2.map(&f.map).as_ref() == Some(&img))
                    .cloned()
                    .unwrap_or_else(|| c.clone());
                return Err(CoverDefect::NotLocallyInjective { v, a: earlier, b: c.clone() });
            }
        }
        let mut want_per_dim: BTreeMap<usize, usize> = BTreeMap::new();
        for &(d, i) in &y.vertex_cofaces[fv as usize] {
            let _ = i;
            *want_per_dim.entry(d).or_insert(0) += 1;
        }
        for d in 0..=x.dim().max(y.dim()) {
            let got = per_dim_images.get(&d).map(|s| s.len()).unwrap_or(0);
            let want = want_per_dim.get(&d).copied().unwrap_or(0);
            if got != want {
                return Err(CoverDefect::CofaceCountMismatch { v, dim: d, got, want });
            }
        }
    }
    Ok(())
}

/// Boolean convenience over [`check_cover_map`].
pub fn is_cover_map(f: &VertexMap, x: &SimplicialComplex, y: &SimplicialComplex) -> bool {
    check_cover_map(f, x, y).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_graph, cycle};

    #[test]
    fn triangle_boundary_closure() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(x.num_cells(0), 3);
        assert_eq!(x.num_cells(1), 3);
        assert_eq!(x.dim(), 1);
    }

    #[test]
    fn full_simplex_closure() {
        let x = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(x.num_cells(0), 3);
        assert_eq!(x.num_cells(1), 3);
        assert_eq!(x.num_cells(2), 1);
    }

    #[test]
    fn disconnected_input_rejected() {
        let err = build_complex(&[vec![0, 1], vec![2, 3]]).unwrap_err();
        assert_eq!(err, ComplexError::DisconnectedInput);
    }

    #[test]
    fn repeated_vertices_rejected() {
        let err = build_complex(&[vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, ComplexError::MalformedCell(_)));
    }

    #[test]
    fn dist_on_path_matches_bfs_oracle() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(x.dist(&Cell::vertex(0), &Cell::vertex(3)).unwrap(), 3);
        assert_eq!(x.dist(&Cell::vertex(1), &Cell::vertex(1)).unwrap(), 0);
    }

    #[test]
    fn dist_vertex_to_edge_in_full_triangle() {
        let x = build_complex(&[vec![0, 1, 2]]).unwrap();
        let e = Cell::new(vec![1, 2]).unwrap();
        assert_eq!(x.dist(&Cell::vertex(0), &e).unwrap(), 1);
    }

    #[test]
    fn dist_missing_cell_errors() {
        let x = build_complex(&[vec![0, 1]]).unwrap();
        let c = Cell::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(x.dist(&Cell::vertex(0), &c), Err(ComplexError::CellNotFound(_))));
    }

    /// Independent oracle: all-pairs distance on the cell intersection graph
    /// by Floyd–Warshall over explicit chain steps.
    fn dist_oracle(x: &SimplicialComplex, a: &Cell, b: &Cell) -> usize {
        if a == b {
            return 0;
        }
        let mut all: Vec<Cell> = Vec::new();
        for d in 0..=x.dim() {
            all.extend(x.cells(d).iter().cloned());
        }
        let m = all.len();
        let inf = usize::MAX / 4;
        let mut dm = vec![vec![inf; m]; m];
        for i in 0..m {
            for j in 0..m {
                let share = all[i].vertices().iter().any(|v| all[j].contains(*v));
                if i == j || share {
                    dm[i][j] = if i == j { 0 } else { 1 };
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let via = dm[i][k].saturating_add(dm[k][j]);
                    if via < dm[i][j] {
                        dm[i][j] = via;
                    }
                }
            }
        }
        // chain length = 1 + (steps between a chain-start containing a and one containing b)
        let mut best = inf;
        for (i, ci) in all.iter().enumerate() {
            if !a.is_subset_of(ci) {
                continue;
            }
            for (j, cj) in all.iter().enumerate() {
                if !b.is_subset_of(cj) {
                    continue;
                }
                best = best.min(1 + dm[i][j]);
            }
        }
        best
    }

    #[test]
    fn dist_agrees_with_floyd_warshall_oracle() {
        let x = build_complex(&[vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![5, 6]]).unwrap();
        let mut cells: Vec<Cell> = Vec::new();
        for d in 0..=x.dim() {
            cells.extend(x.cells(d).iter().cloned());
        }
        for a in &cells {
            for b in &cells {
                assert_eq!(x.dist(a, b).unwrap(), dist_oracle(&x, a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn dist_is_a_metric_on_small_complexes() {
        let x = build_complex(&[vec![0, 1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let mut cells: Vec<Cell> = Vec::new();
        for d in 0..=x.dim() {
            cells.extend(x.cells(d).iter().cloned());
        }
        for a in &cells {
            for b in &cells {
                let dab = x.dist(a, b).unwrap();
                let dba = x.dist(b, a).unwrap();
                assert_eq!(dab, dba);
                assert_eq!(dab == 0, a == b);
                for c in &cells {
                    let dac = x.dist(a, c).unwrap();
                    let dcb = x.dist(c, b).unwrap();
                    assert!(dab <= dac + dcb);
                }
            }
        }
    }

    #[test]
    fn ball_radius_zero_is_singleton() {
        let x = cycle(6);
        let b = x.ball(&Cell::vertex(0), 0).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn ball_in_three_regular_tree() {
        let x = crate::generate::tree_ball(3, 3);
        let b = x.complex.ball(&Cell::vertex(0), 1).unwrap();
        let verts = b.iter().filter(|c| c.dim() == 0).count();
        let edges = b.iter().filter(|c| c.dim() == 1).count();
        assert_eq!(verts, 4); // center + 3 neighbours
        assert_eq!(edges, 3);
        assert_eq!(b.len(), 7);
    }

    #[test]
    fn ball_radius_two_in_c6() {
        let x = cycle(6);
        let b = x.ball(&Cell::vertex(0), 2).unwrap();
        let verts = b.iter().filter(|c| c.dim() == 0).count();
        let edges = b.iter().filter(|c| c.dim() == 1).count();
        assert_eq!(verts, 5);
        assert_eq!(edges, 4);
    }

    #[test]
    fn cycle_double_cover_is_cover_map() {
        let c6 = cycle(6);
        let c3 = cycle(3);
        let f = VertexMap::new((0..6).map(|v| v % 3).collect());
        assert!(is_cover_map(&f, &c6, &c3));
    }

    #[test]
    fn identity_is_cover_map() {
        let c6 = cycle(6);
        let f = VertexMap::new((0..6).collect());
        assert!(is_cover_map(&f, &c6, &c6));
    }

    #[test]
    fn collapsing_k4_to_k3_is_not_a_cover() {
        let k4 = complete_graph(4);
        let k3 = complete_graph(3);
        // collapsing vertices 2 and 3 degenerates the edge {2,3}
        let f = VertexMap::new(vec![0, 1, 2, 2]);
        assert!(!is_cover_map(&f, &k4, &k3));
        assert!(matches!(
            check_cover_map(&f, &k4, &k3).unwrap_err(),
            CoverDefect::NotSimplicial { .. }
        ));
    }

    #[test]
    fn folding_a_path_onto_an_edge_is_not_locally_injective() {
        let p3 = build_complex(&[vec![0, 1], vec![1, 2]]).unwrap();
        let e = build_complex(&[vec![0, 1]]).unwrap();
        let f = VertexMap::new(vec![0, 1, 0]);
        let err = check_cover_map(&f, &p3, &e).unwrap_err();
        assert!(matches!(err, CoverDefect::NotLocallyInjective { .. }), "got {err:?}");
    }

    #[test]
    fn disjoint_union_counts_cells() {
        let a = cycle(3);
        let b = cycle(4);
        let u = a.disjoint_union(&b);
        assert_eq!(u.num_vertices(), 7);
        assert_eq!(u.num_cells(1), 7);
        assert!(!u.is_connected());
    }

    #[test]
    fn maximal_cells_roundtrip() {
        let x = build_complex(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let mx = x.maximal_cells();
        let rebuilt =
            build_complex(&mx.iter().map(|c| c.vertices().to_vec()).collect::<Vec<_>>()).unwrap();
        for d in 0..=x.dim() {
            assert_eq!(x.cells(d), rebuilt.cells(d));
        }
    }
}
