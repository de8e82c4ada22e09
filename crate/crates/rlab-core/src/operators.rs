//! Chain spaces and their associated operators: boundary, coboundary,
//! Laplacians, cell-adjacency operators, and pushforwards along cover maps.
//!
//! Coordinates on forms and anti-forms use the sorted-order orientation of
//! each cell as the representative; in these coordinates the boundary matrix
//! is the classical signed incidence matrix and the coboundary its transpose.
//! Every basis carries the inner-product scale of its ambient oriented-cell
//! space: dimension 0 carries the factor 2 so that the coboundary's adjoint
//! is the boundary at every dimension.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::complex::{check_cover_map, Cell, CoverDefect, SimplicialComplex, VertexMap};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("dimension {dim} out of range for a complex of dimension {max}")]
    DimensionOutOfRange { dim: usize, max: usize },
    #[error("adjacency indices must satisfy 0 <= i < j <= 2i+1 (got i={i}, j={j})")]
    IndexConstraintViolated { i: usize, j: usize },
    #[error("the vertex map is not a cover map: {0}")]
    NotACover(CoverDefect),
    #[error("operators act on different bases ({0})")]
    BasisMismatch(String),
}

/// Which function space on oriented cells a basis spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BasisKind {
    /// Odd functions under orientation reversal (forms).
    Forms,
    /// Even functions under orientation reversal; canonically functions on cells.
    Antiforms,
    /// The full oriented space, one coordinate per orientation.
    OrientedFull,
}

/// Label of a single basis coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Cell(Cell),
    /// Cell with an explicit orientation sign relative to sorted order.
    Oriented(Cell, i8),
}

/// An ordered, reproducible basis of a chain space of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainBasis {
    pub kind: BasisKind,
    pub dim: usize,
    pub labels: Vec<BasisLabel>,
    /// Scale of the inner product relative to plain coordinates:
    /// `<u,v> = scale * sum_i u_i conj(v_i)`.
    pub inner_scale: f64,
}

impl ChainBasis {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn inner_product(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let s: Complex64 = u.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
        s * self.inner_scale
    }
}

/// Builds the basis of the requested kind for dimension `i`.
pub fn chain_basis(
    x: &SimplicialComplex,
    kind: BasisKind,
    i: usize,
) -> Result<Arc<ChainBasis>, OperatorError> {
    if i > x.dim() {
        return Err(OperatorError::DimensionOutOfRange { dim: i, max: x.dim() });
    }
    let labels = match kind {
        BasisKind::Forms | BasisKind::Antiforms => {
            x.cells(i).iter().cloned().map(BasisLabel::Cell).collect()
        }
        BasisKind::OrientedFull => {
            if i == 0 {
                x.cells(0).iter().cloned().map(BasisLabel::Cell).collect()
            } else {
                let mut v = Vec::with_capacity(2 * x.num_cells(i));
                for c in x.cells(i) {
                    v.push(BasisLabel::Oriented(c.clone(), 1));
                    v.push(BasisLabel::Oriented(c.clone(), -1));
                }
                v
            }
        }
    };
    let inner_scale = match kind {
        BasisKind::Forms | BasisKind::Antiforms => 2.0,
        BasisKind::OrientedFull => {
            if i == 0 {
                2.0
            } else {
                1.0
            }
        }
    };
    Ok(Arc::new(ChainBasis { kind, dim: i, labels, inner_scale }))
}

/// A sparse linear operator between chain bases, carrying exact integer
/// entries whenever the construction is integral.
#[derive(Debug, Clone)]
pub struct ChainOperator {
    pub source: Arc<ChainBasis>,
    pub target: Arc<ChainBasis>,
    /// Sorted by (row, col); rows index the target basis.
    entries: Vec<(u32, u32, Complex64)>,
    int_entries: Option<Vec<(u32, u32, i64)>>,
}

impl ChainOperator {
    pub fn from_int_entries(
        source: Arc<ChainBasis>,
        target: Arc<ChainBasis>,
        raw: Vec<(u32, u32, i64)>,
    ) -> Self {
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (r, c, v) in raw {
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let ints: Vec<(u32, u32, i64)> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        let entries = ints
            .iter()
            .map(|&(r, c, v)| (r, c, Complex64::new(v as f64, 0.0)))
            .collect();
        ChainOperator { source, target, entries, int_entries: Some(ints) }
    }

    pub fn from_complex_entries(
        source: Arc<ChainBasis>,
        target: Arc<ChainBasis>,
        raw: Vec<(u32, u32, Complex64)>,
    ) -> Self {
        let mut acc: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (r, c, v) in raw {
            *acc.entry((r, c)).or_insert(Complex64::ZERO) += v;
        }
        let entries: Vec<(u32, u32, Complex64)> = acc
            .into_iter()
            .filter(|&(_, v)| v.norm_sqr() != 0.0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        ChainOperator { source, target, entries, int_entries: None }
    }

    pub fn zero(source: Arc<ChainBasis>, target: Arc<ChainBasis>) -> Self {
        ChainOperator { source, target, entries: Vec::new(), int_entries: Some(Vec::new()) }
    }

    pub fn identity(basis: Arc<ChainBasis>) -> Self {
        let ints = (0..basis.size() as u32).map(|i| (i, i, 1i64)).collect();
        Self::from_int_entries(basis.clone(), basis, ints)
    }

    pub fn nrows(&self) -> usize {
        self.target.size()
    }

    pub fn ncols(&self) -> usize {
        self.source.size()
    }

    pub fn entries(&self) -> &[(u32, u32, Complex64)] {
        &self.entries
    }

    pub fn int_entries(&self) -> Option<&[(u32, u32, i64)]> {
        self.int_entries.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.int_entries.is_some()
    }

    pub fn dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.nrows(), self.ncols());
        for &(r, c, v) in &self.entries {
            m[(r as usize, c as usize)] += v;
        }
        m
    }

    /// Dense real part; only valid when all entries are real (integral ops).
    pub fn dense_real(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows(), self.ncols());
        for &(r, c, v) in &self.entries {
            m[(r as usize, c as usize)] += v.re;
        }
        m
    }

    pub fn same_bases(&self, other: &ChainOperator) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// The adjoint with respect to the declared inner products:
    /// `A* = (scale_target / scale_source) * conj(A)^T`.
    pub fn adjoint(&self) -> ChainOperator {
        let ratio = self.target.inner_scale / self.source.inner_scale;
        if ratio == 1.0 {
            if let Some(ints) = &self.int_entries {
                let flipped: Vec<(u32, u32, i64)> =
                    ints.iter().map(|&(r, c, v)| (c, r, v)).collect();
                return ChainOperator::from_int_entries(
                    self.target.clone(),
                    self.source.clone(),
                    flipped,
                );
            }
        }
        let flipped: Vec<(u32, u32, Complex64)> = self
            .entries
            .iter()
            .map(|&(r, c, v)| (c, r, v.conj() * ratio))
            .collect();
        ChainOperator::from_complex_entries(self.target.clone(), self.source.clone(), flipped)
    }

    /// Composition self ∘ rhs (rhs applied first).
    pub fn compose(&self, rhs: &ChainOperator) -> Result<ChainOperator, OperatorError> {
        if self.source != rhs.target {
            return Err(OperatorError::BasisMismatch(
                "compose: source of left operator differs from target of right".into(),
            ));
        }
        if let (Some(a), Some(b)) = (&self.int_entries, &rhs.int_entries) {
            let mut rows_of_b: BTreeMap<u32, Vec<(u32, i64)>> = BTreeMap::new();
            for &(r, c, v) in b {
                rows_of_b.entry(r).or_default().push((c, v));
            }
            let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
            for &(r, k, v) in a {
                if let Some(row) = rows_of_b.get(&k) {
                    for &(c, w) in row {
                        *acc.entry((r, c)).or_insert(0) += v * w;
                    }
                }
            }
            let ints: Vec<(u32, u32, i64)> =
                acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
            return Ok(ChainOperator::from_int_entries(
                rhs.source.clone(),
                self.target.clone(),
                ints,
            ));
        }
        let mut rows_of_b: BTreeMap<u32, Vec<(u32, Complex64)>> = BTreeMap::new();
        for &(r, c, v) in &rhs.entries {
            rows_of_b.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for &(r, k, v) in &self.entries {
            if let Some(row) = rows_of_b.get(&k) {
                for &(c, w) in row {
                    *acc.entry((r, c)).or_insert(Complex64::ZERO) += v * w;
                }
            }
        }
        let entries: Vec<(u32, u32, Complex64)> =
            acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
        Ok(ChainOperator::from_complex_entries(
            rhs.source.clone(),
            self.target.clone(),
            entries,
        ))
    }

    pub fn add(&self, other: &ChainOperator) -> Result<ChainOperator, OperatorError> {
        self.linear_combine(other, 1)
    }

    pub fn sub(&self, other: &ChainOperator) -> Result<ChainOperator, OperatorError> {
        self.linear_combine(other, -1)
    }

    fn linear_combine(&self, other: &ChainOperator, sign: i64) -> Result<ChainOperator, OperatorError> {
        if !self.same_bases(other) {
            return Err(OperatorError::BasisMismatch("add/sub on different bases".into()));
        }
        if let (Some(a), Some(b)) = (&self.int_entries, &other.int_entries) {
            let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
            for &(r, c, v) in a {
                *acc.entry((r, c)).or_insert(0) += v;
            }
            for &(r, c, v) in b {
                *acc.entry((r, c)).or_insert(0) += sign * v;
            }
            let ints = acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
            return Ok(ChainOperator::from_int_entries(
                self.source.clone(),
                self.target.clone(),
                ints,
            ));
        }
        let mut acc: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_insert(Complex64::ZERO) += v;
        }
        for &(r, c, v) in &other.entries {
            *acc.entry((r, c)).or_insert(Complex64::ZERO) += v * sign as f64;
        }
        let entries = acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
        Ok(ChainOperator::from_complex_entries(
            self.source.clone(),
            self.target.clone(),
            entries,
        ))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; self.nrows()];
        for &(r, c, a) in &self.entries {
            out[r as usize] += a * v[c as usize];
        }
        out
    }

    /// Exact zero test over the integer entries (None if not integral).
    pub fn is_exactly_zero(&self) -> Option<bool> {
        self.int_entries.as_ref().map(|e| e.is_empty())
    }

    /// Exact equality of integer entry lists.
    pub fn int_equal(&self, other: &ChainOperator) -> Option<bool> {
        match (&self.int_entries, &other.int_entries) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|&(_, _, v)| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of rows whose target index passes the filter.
    pub fn frobenius_norm_rows(&self, keep: impl Fn(u32) -> bool) -> f64 {
        self.entries
            .iter()
            .filter(|&&(r, _, _)| keep(r))
            .map(|&(_, _, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Constructors for the built-in operator families; a value of this enum can
/// be instantiated on any complex, which is how naturality is phrased.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Boundary out of dimension i (Forms_i -> Forms_{i-1}).
    Boundary(usize),
    /// Coboundary out of dimension i (Forms_i -> Forms_{i+1}).
    Coboundary(usize),
    Laplacian(usize, LaplacianVariant),
    /// a_{i;j} on Antiforms_i.
    Adjacency(usize, usize),
    /// Line-graph (edge) adjacency on Antiforms_1: edges sharing a vertex.
    EdgeAdjacency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianVariant {
    Up,
    Down,
    Total,
}

impl OperatorKind {
    pub fn build(&self, x: &SimplicialComplex) -> Result<ChainOperator, OperatorError> {
        match *self {
            OperatorKind::Boundary(i) => boundary(x, i),
            OperatorKind::Coboundary(i) => coboundary(x, i),
            OperatorKind::Laplacian(i, v) => laplacian(x, i, v),
            OperatorKind::Adjacency(i, j) => adjacency(x, i, j),
            OperatorKind::EdgeAdjacency => edge_adjacency(x),
        }
    }

    /// Basis the operator acts on (source side).
    pub fn source_info(&self) -> (BasisKind, usize) {
        match *self {
            OperatorKind::Boundary(i) => (BasisKind::Forms, i),
            OperatorKind::Coboundary(i) => (BasisKind::Forms, i),
            OperatorKind::Laplacian(i, _) => (BasisKind::Forms, i),
            OperatorKind::Adjacency(i, _) => (BasisKind::Antiforms, i),
            OperatorKind::EdgeAdjacency => (BasisKind::Antiforms, 1),
        }
    }
}

/// The boundary operator Forms_i -> Forms_{i-1} for 1 <= i <= dim X.
/// In sorted-representative coordinates this is the signed incidence matrix.
pub fn boundary(x: &SimplicialComplex, i: usize) -> Result<ChainOperator, OperatorError> {
    if i == 0 || i > x.dim() {
        return Err(OperatorError::DimensionOutOfRange { dim: i, max: x.dim() });
    }
    let source = chain_basis(x, BasisKind::Forms, i)?;
    let target = chain_basis(x, BasisKind::Forms, i - 1)?;
    let mut ints = Vec::new();
    for (col, y) in x.cells(i).iter().enumerate() {
        for (j, face) in y.facets().into_iter().enumerate() {
            let row = x.cell_index(&face).expect("closure guarantees faces exist");
            let sign = if j % 2 == 0 { 1 } else { -1 };
            ints.push((row as u32, col as u32, sign));
        }
    }
    Ok(ChainOperator::from_int_entries(source, target, ints))
}

/// The coboundary operator Forms_i -> Forms_{i+1}; the exact transpose of the
/// boundary out of dimension i+1, and its adjoint under the scaled products.
pub fn coboundary(x: &SimplicialComplex, i: usize) -> Result<ChainOperator, OperatorError> {
    if i >= x.dim() {
        return Err(OperatorError::DimensionOutOfRange { dim: i + 1, max: x.dim() });
    }
    Ok(boundary(x, i + 1)?.adjoint())
}

/// Laplacians on Forms_i. The down Laplacian is zero at i = 0 by convention;
/// the up Laplacian is zero at the top dimension.
pub fn laplacian(
    x: &SimplicialComplex,
    i: usize,
    variant: LaplacianVariant,
) -> Result<ChainOperator, OperatorError> {
    if i > x.dim() {
        return Err(OperatorError::DimensionOutOfRange { dim: i, max: x.dim() });
    }
    let basis = chain_basis(x, BasisKind::Forms, i)?;
    let up = || -> Result<ChainOperator, OperatorError> {
        if i == x.dim() {
            Ok(ChainOperator::zero(basis.clone(), basis.clone()))
        } else {
            let d = coboundary(x, i)?;
            boundary(x, i + 1)?.compose(&d)
        }
    };
    let down = || -> Result<ChainOperator, OperatorError> {
        if i == 0 {
            Ok(ChainOperator::zero(basis.clone(), basis.clone()))
        } else {
            let b = boundary(x, i)?;
            coboundary(x, i - 1)?.compose(&b)
        }
    };
    match variant {
        LaplacianVariant::Up => up(),
        LaplacianVariant::Down => down(),
        LaplacianVariant::Total => up()?.add(&down()?),
    }
}

/// The cell-adjacency operator a_{i;j} on Antiforms_i:
/// `(a φ)(x) = Σ φ(y)` over i-cells y with x ∪ y a j-cell.
pub fn adjacency(x: &SimplicialComplex, i: usize, j: usize) -> Result<ChainOperator, OperatorError> {
    if !(i < j && j <= 2 * i + 1) {
        return Err(OperatorError::IndexConstraintViolated { i, j });
    }
    if j > x.dim() {
        return Err(OperatorError::DimensionOutOfRange { dim: j, max: x.dim() });
    }
    let basis = chain_basis(x, BasisKind::Antiforms, i)?;
    let mut ints = Vec::new();
    let overlap = 2 * i + 1 - j; // |x ∩ y|
    for z in x.cells(j) {
        let verts = z.vertices();
        let m = verts.len();
        // all ordered pairs (x, y) of (i+1)-subsets with union z
        for mask_a in 1u64..(1u64 << m) {
            if (mask_a.count_ones() as usize) != i + 1 {
                continue;
            }
            for mask_b in 1u64..(1u64 << m) {
                if (mask_b.count_ones() as usize) != i + 1 {
                    continue;
                }
                if mask_a | mask_b != (1u64 << m) - 1 {
                    continue;
                }
                debug_assert_eq!((mask_a & mask_b).count_ones() as usize, overlap);
                let cell_from = |mask: u64| {
                    Cell::new(
                        (0..m).filter(|&b| mask & (1 << b) != 0).map(|b| verts[b]).collect(),
                    )
                    .expect("subsets of a cell are sorted and distinct")
                };
                let xa = cell_from(mask_a);
                let yb = cell_from(mask_b);
                let row = x.cell_index(&xa).unwrap() as u32;
                let col = x.cell_index(&yb).unwrap() as u32;
                ints.push((row, col, 1));
            }
        }
    }
    Ok(ChainOperator::from_int_entries(basis.clone(), basis, ints))
}

/// Edge adjacency on Antiforms_1: distinct edges sharing exactly one vertex.
/// On graphs this is the line-graph adjacency operator.
pub fn edge_adjacency(x: &SimplicialComplex) -> Result<ChainOperator, OperatorError> {
    if x.dim() < 1 {
        return Err(OperatorError::DimensionOutOfRange { dim: 1, max: x.dim() });
    }
    let basis = chain_basis(x, BasisKind::Antiforms, 1)?;
    let mut per_vertex: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (idx, e) in x.cells(1).iter().enumerate() {
        for &v in e.vertices() {
            per_vertex.entry(v).or_default().push(idx as u32);
        }
    }
    let mut ints = Vec::new();
    for (_, edges) in per_vertex {
        for (a, &ea) in edges.iter().enumerate() {
            for &eb in edges.iter().skip(a + 1) {
                ints.push((ea, eb, 1));
                ints.push((eb, ea, 1));
            }
        }
    }
    Ok(ChainOperator::from_int_entries(basis.clone(), basis, ints))
}

/// Orientation sign of a cell's image under an injective-on-cells vertex map:
/// the parity of the permutation sorting the mapped vertices.
fn image_sign(cell: &Cell, f: &[u32]) -> i64 {
    let img: Vec<u32> = cell.vertices().iter().map(|&v| f[v as usize]).collect();
    let mut inversions = 0usize;
    for a in 0..img.len() {
        for b in (a + 1)..img.len() {
            if img[a] > img[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pushforward f_* along a verified cover map, on the chosen basis kind:
/// basis vectors map to the basis vector of the image cell, with the
/// orientation sign on forms.
pub fn pushforward(
    f: &VertexMap,
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    i: usize,
    kind: BasisKind,
) -> Result<ChainOperator, OperatorError> {
    check_cover_map(f, x, y).map_err(OperatorError::NotACover)?;
    let source = chain_basis(x, kind, i)?;
    let target = chain_basis(y, kind, i)?;
    let mut ints = Vec::new();
    match kind {
        BasisKind::Antiforms => {
            for (col, c) in x.cells(i).iter().enumerate() {
                let img = c.map(&f.map).expect("cover maps are simplicial");
                let row = y.cell_index(&img).unwrap() as u32;
                ints.push((row, col as u32, 1));
            }
        }
        BasisKind::Forms => {
            for (col, c) in x.cells(i).iter().enumerate() {
                let img = c.map(&f.map).expect("cover maps are simplicial");
                let row = y.cell_index(&img).unwrap() as u32;
                ints.push((row, col as u32, image_sign(c, &f.map)));
            }
        }
        BasisKind::OrientedFull => {
            if i == 0 {
                for (col, c) in x.cells(0).iter().enumerate() {
                    let img = c.map(&f.map).unwrap();
                    let row = y.cell_index(&img).unwrap() as u32;
                    ints.push((row, col as u32, 1));
                }
            } else {
                for (col, c) in x.cells(i).iter().enumerate() {
                    let img = c.map(&f.map).unwrap();
                    let yidx = y.cell_index(&img).unwrap();
                    let s = image_sign(c, &f.map);
                    // source indices 2*col (plus) and 2*col+1 (minus)
                    let (rp, rm) = if s == 1 {
                        (2 * yidx, 2 * yidx + 1)
                    } else {
                        (2 * yidx + 1, 2 * yidx)
                    };
                    ints.push((rp as u32, 2 * col as u32, 1));
                    ints.push((rm as u32, 2 * col as u32 + 1, 1));
                }
            }
        }
    }
    Ok(ChainOperator::from_int_entries(source, target, ints))
}

/// Isometric inclusions Forms_i -> OrientedFull_i and Antiforms_i -> OrientedFull_i
/// realizing the orthogonal splitting of the full oriented space.
pub fn oriented_full_inclusions(
    x: &SimplicialComplex,
    i: usize,
) -> Result<(ChainOperator, ChainOperator), OperatorError> {
    let forms = chain_basis(x, BasisKind::Forms, i)?;
    let anti = chain_basis(x, BasisKind::Antiforms, i)?;
    let full = chain_basis(x, BasisKind::OrientedFull, i)?;
    if i == 0 {
        let id: Vec<(u32, u32, i64)> =
            (0..forms.size() as u32).map(|k| (k, k, 1)).collect();
        return Ok((
            ChainOperator::from_int_entries(forms, full.clone(), id.clone()),
            ChainOperator::from_int_entries(anti, full, id),
        ));
    }
    let mut finc = Vec::new();
    let mut ainc = Vec::new();
    for k in 0..forms.size() as u32 {
        finc.push((2 * k, k, 1));
        finc.push((2 * k + 1, k, -1));
        ainc.push((2 * k, k, 1));
        ainc.push((2 * k + 1, k, 1));
    }
    Ok((
        ChainOperator::from_int_entries(forms, full.clone(), finc),
        ChainOperator::from_int_entries(anti, full, ainc),
    ))
}

/// Checks naturality of an operator constructor across a cover map:
/// `f_* ∘ a_X = a_Y ∘ f_*` within the given tolerance.
pub fn verify_naturality(
    ctor: OperatorKind,
    f: &VertexMap,
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    tol: f64,
) -> Result<bool, OperatorError> {
    let ax = ctor.build(x)?;
    let ay = ctor.build(y)?;
    let (kind, i) = ctor.source_info();
    let push_src = pushforward(f, x, y, i, kind)?;
    // pushforward on the operator's target space (differs for boundary maps)
    let (tkind, ti) = match ctor {
        OperatorKind::Boundary(i) => (BasisKind::Forms, i - 1),
        OperatorKind::Coboundary(i) => (BasisKind::Forms, i + 1),
        _ => (kind, i),
    };
    let push_tgt = pushforward(f, x, y, ti, tkind)?;
    let lhs = push_tgt.compose(&ax)?;
    let rhs = ay.compose(&push_src)?;
    Ok(lhs.sub(&rhs)?.frobenius_norm() <= tol)
}

/// A family of operators on a shared basis with verified (not asserted)
/// commutation and normality flags.
#[derive(Debug, Clone)]
pub struct OperatorFamily {
    pub label: String,
    pub ops: Vec<ChainOperator>,
    pub commuting: Option<bool>,
    pub normal: Option<bool>,
    pub max_commutator: f64,
    pub max_normality_defect: f64,
}

impl OperatorFamily {
    pub fn new(label: impl Into<String>, ops: Vec<ChainOperator>) -> Self {
        OperatorFamily {
            label: label.into(),
            ops,
            commuting: None,
            normal: None,
            max_commutator: f64::NAN,
            max_normality_defect: f64::NAN,
        }
    }

    /// Measures all pairwise commutators (including against adjoints) and
    /// normality defects, recording the flags.
    pub fn verify(&mut self, tol: f64) -> Result<(), OperatorError> {
        let mut max_comm: f64 = 0.0;
        let mut max_norm: f64 = 0.0;
        let with_adjoints: Vec<ChainOperator> = self
            .ops
            .iter()
            .cloned()
            .chain(self.ops.iter().map(|o| o.adjoint()))
            .collect();
        for a in &self.ops {
            let ad = a.adjoint();
            let d = a.compose(&ad)?.sub(&ad.compose(a)?)?.frobenius_norm();
            max_norm = max_norm.max(d);
        }
        for (ia, a) in with_adjoints.iter().enumerate() {
            for b in with_adjoints.iter().skip(ia + 1) {
                let d = a.compose(b)?.sub(&b.compose(a)?)?.frobenius_norm();
                max_comm = max_comm.max(d);
            }
        }
        self.max_commutator = max_comm;
        self.max_normality_defect = max_norm;
        self.commuting = Some(max_comm <= tol);
        self.normal = Some(max_norm <= tol);
        Ok(())
    }
}
