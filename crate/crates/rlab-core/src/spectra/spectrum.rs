//! Joint spectra of commuting normal operator families as finite multisets
//! of eigenvalue tuples.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::operators::{ChainOperator, OperatorKind};
use crate::complex::SimplicialComplex;
use crate::spectra::eig::{joint_diagonalize, symmetric_eigenvalues};
use crate::spectra::SpectraError;

pub const COMMUTATION_TOL: f64 = 1e-8;
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
pub const MERGE_TOL: f64 = 1e-7;
const JOINT_SEED: u64 = 0x5eed_1ab5_0000_0001;

/// One joint eigenvalue with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    pub value: Vec<Complex64>,
    pub multiplicity: usize,
}

/// A finite multiset of points in C^arity, lexicographically ordered by
/// (re, im) coordinate-wise.
#[derive(Debug, Clone)]
pub struct SpectrumSet {
    pub arity: usize,
    /// Dimension of the ambient space; multiplicities sum to this.
    pub ambient_dim: usize,
    pub points: Vec<SpectrumPoint>,
}

pub(crate) fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
        match x.im.partial_cmp(&y.im).unwrap() {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

pub(crate) fn tuple_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

impl SpectrumSet {
    /// Groups raw tuples into points, merging within `merge_tol`.
    pub fn from_tuples(arity: usize, mut tuples: Vec<Vec<Complex64>>, merge_tol: f64) -> Self {
        let ambient_dim = tuples.len();
        tuples.sort_by(|a, b| lex_cmp(a, b));
        let mut points: Vec<SpectrumPoint> = Vec::new();
        for t in tuples {
            match points.last_mut() {
                Some(p) if tuple_dist(&p.value, &t) <= merge_tol => p.multiplicity += 1,
                _ => points.push(SpectrumPoint { value: t, multiplicity: 1 }),
            }
        }
        SpectrumSet { arity, ambient_dim, points }
    }

    /// Every tuple repeated with multiplicity, in lexicographic order.
    pub fn expanded(&self) -> Vec<Vec<Complex64>> {
        let mut out = Vec::with_capacity(self.ambient_dim);
        for p in &self.points {
            for _ in 0..p.multiplicity {
                out.push(p.value.clone());
            }
        }
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// Projection onto one coordinate, as a single-operator spectrum.
    pub fn project(&self, coord: usize) -> SpectrumSet {
        let tuples: Vec<Vec<Complex64>> =
            self.expanded().into_iter().map(|t| vec![t[coord]]).collect();
        SpectrumSet::from_tuples(1, tuples, MERGE_TOL)
    }

    /// Multiset equality within a per-coordinate tolerance.
    pub fn multiset_eq(&self, other: &SpectrumSet, tol: f64) -> bool {
        if self.arity != other.arity || self.ambient_dim != other.ambient_dim {
            return false;
        }
        let a = self.expanded();
        let b = other.expanded();
        if a.len() != b.len() {
            return false;
        }
        a.iter().zip(&b).all(|(x, y)| tuple_dist(x, y) <= tol)
    }

    /// Whether every point of `self` occurs in `other` within `tol`.
    pub fn subset_of(&self, other: &SpectrumSet, tol: f64) -> bool {
        self.points.iter().all(|p| {
            other
                .points
                .iter()
                .any(|q| tuple_dist(&p.value, &q.value) <= tol)
        })
    }

    /// Union as multisets (for direct-sum laws).
    pub fn multiset_union(&self, other: &SpectrumSet) -> SpectrumSet {
        let mut tuples = self.expanded();
        tuples.extend(other.expanded());
        SpectrumSet::from_tuples(self.arity, tuples, MERGE_TOL)
    }
}

fn ensure_endomorphisms_on_shared_basis(ops: &[&ChainOperator]) -> Result<(), SpectraError> {
    let first = ops.first().ok_or(SpectraError::EmptyFamily)?;
    for op in ops {
        if op.source != op.target {
            return Err(SpectraError::BasisMismatch(
                "joint spectra need endomorphisms".into(),
            ));
        }
        if op.source != first.source {
            return Err(SpectraError::BasisMismatch(
                "family members act on different bases".into(),
            ));
        }
    }
    Ok(())
}

fn is_real_symmetric(m: &DMatrix<Complex64>) -> bool {
    let n = m.nrows();
    for r in 0..n {
        for c in 0..n {
            if m[(r, c)].im != 0.0 || m[(r, c)].re != m[(c, r)].re {
                return false;
            }
        }
    }
    true
}

/// Joint spectrum of a family of commuting normal operators on a shared
/// basis: verifies commutation and normality (tolerance 1e-8), performs a
/// simultaneous unitary diagonalization, checks the reconstruction residual
/// per operator, and returns the eigenvalue tuples with multiplicity in
/// deterministic lexicographic order.
pub fn joint_spectrum(ops: &[&ChainOperator]) -> Result<SpectrumSet, SpectraError> {
    ensure_endomorphisms_on_shared_basis(ops)?;
    // commutation and normality defects, including against adjoints
    let adjoints: Vec<ChainOperator> = ops.iter().map(|o| o.adjoint()).collect();
    for (i, a) in ops.iter().enumerate() {
        let d = a
            .compose(&adjoints[i])
            .and_then(|x| x.sub(&adjoints[i].compose(a)?))
            .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?
            .frobenius_norm();
        if d > COMMUTATION_TOL {
            return Err(SpectraError::NotNormal { index: i, defect: d });
        }
    }
    let all: Vec<&ChainOperator> = ops.iter().copied().chain(adjoints.iter()).collect();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            let d = all[i]
                .compose(all[j])
                .and_then(|x| x.sub(&all[j].compose(all[i])?))
                .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?
                .frobenius_norm();
            if d > COMMUTATION_TOL {
                return Err(SpectraError::NotCommuting {
                    a: i % ops.len(),
                    b: j % ops.len(),
                    defect: d,
                });
            }
        }
    }

    let n = ops[0].nrows();
    // single real symmetric operator: use the real path
    if ops.len() == 1 {
        let md = ops[0].dense();
        if is_real_symmetric(&md) {
            let evs = symmetric_eigenvalues(&ops[0].dense_real());
            let tuples: Vec<Vec<Complex64>> =
                evs.into_iter().map(|l| vec![Complex64::new(l, 0.0)]).collect();
            return Ok(SpectrumSet::from_tuples(1, tuples, MERGE_TOL));
        }
    }

    let mats: Vec<DMatrix<Complex64>> = ops.iter().map(|o| o.dense()).collect();
    let (u, tuples) =
        joint_diagonalize(&mats, 1e-6, JOINT_SEED).map_err(SpectraError::NumericalFailure)?;
    // reconstruction residual per operator
    for (k, m) in mats.iter().enumerate() {
        let d = DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                tuples[r][k]
            } else {
                Complex64::ZERO
            }
        });
        let resid = (m - &u * d * u.adjoint()).norm();
        if resid > RECONSTRUCTION_TOL * (1.0 + m.norm()) {
            return Err(SpectraError::NumericalFailure(format!(
                "reconstruction residual {resid:.3e} for operator {k}"
            )));
        }
    }
    Ok(SpectrumSet::from_tuples(ops.len(), tuples, MERGE_TOL))
}

/// Finite direct-sum law: the spectrum over the disjoint union of two
/// complexes equals the multiset union of the two spectra.
pub fn direct_sum_spectrum_check(
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    ctors: &[OperatorKind],
    tol: f64,
) -> Result<bool, SpectraError> {
    let z = x.disjoint_union(y);
    let build = |w: &SimplicialComplex| -> Result<Vec<ChainOperator>, SpectraError> {
        ctors
            .iter()
            .map(|c| c.build(w).map_err(|e| SpectraError::NumericalFailure(e.to_string())))
            .collect()
    };
    let ox = build(x)?;
    let oy = build(y)?;
    let oz = build(&z)?;
    let sx = joint_spectrum(&ox.iter().collect::<Vec<_>>())?;
    let sy = joint_spectrum(&oy.iter().collect::<Vec<_>>())?;
    let sz = joint_spectrum(&oz.iter().collect::<Vec<_>>())?;
    Ok(sz.multiset_eq(&sx.multiset_union(&sy), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_graph, cycle};
    use crate::operators::adjacency;

    #[test]
    fn c6_adjacency_spectrum() {
        let x = cycle(6);
        let a = adjacency(&x, 0, 1).unwrap();
        let s = joint_spectrum(&[&a]).unwrap();
        let want = [-2.0, -1.0, -1.0, 1.0, 1.0, 2.0];
        let got = s.expanded();
        assert_eq!(got.len(), 6);
        for (g, w) in got.iter().zip(want) {
            assert!((g[0].re - w).abs() < 1e-9 && g[0].im.abs() < 1e-12);
        }
        assert_eq!(s.total_multiplicity(), 6);
    }

    #[test]
    fn normal_operator_with_adjoint_pairs_conjugates() {
        // shift on C5 viewed through complex combination: A = P (permutation), family {A, A*}
        let x = cycle(5);
        let a = adjacency(&x, 0, 1).unwrap();
        // A + iI is normal but not self-adjoint; its family pairs conjugates
        use num_complex::Complex64;
        let i_unit = Complex64::new(0.0, 1.0);
        let id = crate::operators::ChainOperator::identity(a.source.clone());
        let shifted = crate::operators::ChainOperator::from_complex_entries(
            a.source.clone(),
            a.target.clone(),
            a.entries()
                .iter()
                .copied()
                .chain(id.entries().iter().map(|&(r, c, v)| (r, c, v * i_unit)))
                .collect(),
        );
        let adj = shifted.adjoint();
        let s = joint_spectrum(&[&shifted, &adj]).unwrap();
        for p in &s.points {
            assert!((p.value[0].conj() - p.value[1]).norm() < 1e-9);
        }
    }

    #[test]
    fn non_commuting_family_rejected() {
        let x = complete_graph(4);
        let a = adjacency(&x, 0, 1).unwrap();
        // b = diag(1,0,0,0) does not commute with adjacency of K4
        let b = crate::operators::ChainOperator::from_int_entries(
            a.source.clone(),
            a.target.clone(),
            vec![(0, 0, 1)],
        );
        let err = joint_spectrum(&[&a, &b]).unwrap_err();
        assert!(matches!(err, SpectraError::NotCommuting { .. }));
    }

    #[test]
    fn projection_matches_single_operator_spectrum() {
        let x = cycle(8);
        let a = adjacency(&x, 0, 1).unwrap();
        let a2 = a.compose(&a).unwrap();
        let joint = joint_spectrum(&[&a, &a2]).unwrap();
        let single = joint_spectrum(&[&a]).unwrap();
        assert!(joint.project(0).multiset_eq(&single, 1e-8));
    }

    #[test]
    fn direct_sum_law_for_cycles() {
        let x = cycle(3);
        let y = cycle(4);
        assert!(direct_sum_spectrum_check(&x, &y, &[OperatorKind::Adjacency(0, 1)], 1e-8).unwrap());
    }

    #[test]
    fn direct_sum_with_itself_doubles_multiplicities() {
        let x = cycle(5);
        assert!(direct_sum_spectrum_check(&x, &x, &[OperatorKind::Adjacency(0, 1)], 1e-8).unwrap());
    }
}
