//! Trivial spectra via colour-class collapse: the joint eigenvalues of the
//! operator family restricted to functions constant on each colour class.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::operators::ChainOperator;
use crate::spectra::eig::joint_diagonalize;
use crate::spectra::spectrum::{lex_cmp, tuple_dist};
use crate::spectra::SpectraError;

/// The trivial points contributed by a colour quotient, as a finite set of
/// tuples. `scope` records which subgroup family was collapsed over.
#[derive(Debug, Clone)]
pub struct TrivialSpectrum {
    pub arity: usize,
    pub points: Vec<Vec<Complex64>>,
    pub scope: String,
}

impl TrivialSpectrum {
    pub fn min_distance(&self, pt: &[Complex64]) -> f64 {
        self.points
            .iter()
            .map(|p| tuple_dist(p, pt))
            .fold(f64::INFINITY, f64::min)
    }

    /// Union of two trivial sets of equal arity.
    pub fn union(&self, other: &TrivialSpectrum) -> TrivialSpectrum {
        let mut points = self.points.clone();
        for p in &other.points {
            if points.iter().all(|q| tuple_dist(q, p) > 1e-10) {
                points.push(p.clone());
            }
        }
        points.sort_by(|a, b| lex_cmp(a, b));
        TrivialSpectrum {
            arity: self.arity,
            points,
            scope: format!("{} ∪ {}", self.scope, other.scope),
        }
    }
}

const EQUITABLE_TOL: f64 = 1e-9;

/// Collapses each operator to the colour-class quotient matrix after checking
/// the partition is equitable (constant row sums between classes), and takes
/// the joint spectrum of the collapsed family. Points are deduplicated; they
/// are a set, not a multiset.
pub fn trivial_spectrum(
    ops: &[&ChainOperator],
    partition: &[u32],
    num_classes: usize,
    scope: &str,
) -> Result<TrivialSpectrum, SpectraError> {
    trivial_spectrum_filtered(ops, partition, num_classes, scope, |_| true)
}

/// Variant for ball-generated complexes: row sums are verified and collapsed
/// using interior rows only (frontier rows are boundary-contaminated).
pub fn trivial_spectrum_interior(
    ops: &[&ChainOperator],
    partition: &[u32],
    num_classes: usize,
    scope: &str,
    interior: impl Fn(u32) -> bool,
) -> Result<TrivialSpectrum, SpectraError> {
    trivial_spectrum_filtered(ops, partition, num_classes, scope, interior)
}

fn trivial_spectrum_filtered(
    ops: &[&ChainOperator],
    partition: &[u32],
    num_classes: usize,
    scope: &str,
    row_ok: impl Fn(u32) -> bool,
) -> Result<TrivialSpectrum, SpectraError> {
    let first = ops.first().ok_or(SpectraError::EmptyFamily)?;
    let n = first.nrows();
    if partition.len() != n {
        return Err(SpectraError::BasisMismatch(format!(
            "partition covers {} indices, basis has {n}",
            partition.len()
        )));
    }
    if partition.iter().any(|&c| c as usize >= num_classes) {
        return Err(SpectraError::BasisMismatch("partition class out of range".into()));
    }
    for op in ops {
        if op.nrows() != n || op.ncols() != n {
            return Err(SpectraError::BasisMismatch("family members differ in size".into()));
        }
    }

    let mut collapsed: Vec<DMatrix<Complex64>> = Vec::with_capacity(ops.len());
    for op in ops {
        // row sums into each class, per row
        let mut row_sums = vec![vec![Complex64::ZERO; num_classes]; n];
        for &(r, c, v) in op.entries() {
            row_sums[r as usize][partition[c as usize] as usize] += v;
        }
        let mut quo = DMatrix::<Complex64>::zeros(num_classes, num_classes);
        let mut seen = vec![vec![false; num_classes]; num_classes];
        for r in 0..n {
            if !row_ok(r as u32) {
                continue;
            }
            let from = partition[r] as usize;
            for to in 0..num_classes {
                let s = row_sums[r][to];
                if !seen[from][to] {
                    quo[(from, to)] = s;
                    seen[from][to] = true;
                } else if (quo[(from, to)] - s).norm() > EQUITABLE_TOL {
                    return Err(SpectraError::NotEquitable {
                        from_class: from as u32,
                        to_class: to as u32,
                    });
                }
            }
        }
        for from in 0..num_classes {
            for to in 0..num_classes {
                if !seen[from][to] {
                    return Err(SpectraError::NumericalFailure(format!(
                        "colour class {from} has no usable row for the collapse"
                    )));
                }
            }
        }
        collapsed.push(quo);
    }

    // collapsed families must still commute pairwise for a joint spectrum
    for i in 0..collapsed.len() {
        for j in (i + 1)..collapsed.len() {
            let d = (&collapsed[i] * &collapsed[j] - &collapsed[j] * &collapsed[i]).norm();
            if d > 1e-8 {
                return Err(SpectraError::NotCommuting { a: i, b: j, defect: d });
            }
        }
    }
    let (_, tuples) =
        joint_diagonalize(&collapsed, 1e-8, 0x7714_a11).map_err(SpectraError::NumericalFailure)?;
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    for t in tuples {
        if points.iter().all(|p| tuple_dist(p, &t) > 1e-10) {
            points.push(t);
        }
    }
    points.sort_by(|a, b| lex_cmp(a, b));
    Ok(TrivialSpectrum { arity: ops.len(), points, scope: scope.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_multipartite, petersen};
    use crate::operators::adjacency;

    #[test]
    fn bipartite_three_regular_gives_plus_minus_three() {
        let x = complete_multipartite(&[3, 3]);
        let a = adjacency(&x, 0, 1).unwrap();
        let part: Vec<u32> = (0..6).map(|v| if v < 3 { 0 } else { 1 }).collect();
        let t = trivial_spectrum(&[&a], &part, 2, "Z/2 colour classes").unwrap();
        assert_eq!(t.points.len(), 2);
        assert!((t.points[0][0] - Complex64::new(-3.0, 0.0)).norm() < 1e-10);
        assert!((t.points[1][0] - Complex64::new(3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn single_class_collapse_gives_degree() {
        let x = petersen();
        let a = adjacency(&x, 0, 1).unwrap();
        let part = vec![0u32; 10];
        let t = trivial_spectrum(&[&a], &part, 1, "trivial colouring").unwrap();
        assert_eq!(t.points.len(), 1);
        assert!((t.points[0][0] - Complex64::new(3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn inequitable_partition_rejected() {
        let x = petersen();
        let a = adjacency(&x, 0, 1).unwrap();
        // split 0..4 vs rest: outer cycle vertices have mixed neighbour counts
        let part: Vec<u32> = (0..10).map(|v| if v < 4 { 0 } else { 1 }).collect();
        let err = trivial_spectrum(&[&a], &part, 2, "bad").unwrap_err();
        assert!(matches!(err, SpectraError::NotEquitable { .. }));
    }
}
