//! Family scans: injectivity radii, covering radii against a reference
//! spectrum, and spectral monotonicity along covers.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::complex::{check_cover_map, SimplicialComplex, VertexMap};
use crate::operators::OperatorKind;
use crate::spectra::reference::ReferenceSpectrum;
use crate::spectra::spectrum::{joint_spectrum, tuple_dist, SpectrumSet};
use crate::spectra::SpectraError;

/// Largest radius r such that some vertex ball of radius r is acyclic, i.e.
/// the universal-cover projection is injective on that ball.
pub fn injectivity_radius(x: &SimplicialComplex) -> usize {
    let n = x.num_vertices();
    (0..n as u32)
        .into_par_iter()
        .map(|v| local_injectivity_radius(x, v))
        .max()
        .unwrap_or(0)
}

fn local_injectivity_radius(x: &SimplicialComplex, v: u32) -> usize {
    // BFS from v; the first time two distinct walks from v meet (a cross edge
    // inside a level or a revisit at the next level, scanning level l) the
    // tree-to-quotient map stops being injective at radius l + 1.
    let n = x.num_vertices();
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![u32::MAX; n];
    level[v as usize] = 0;
    let mut frontier = vec![v];
    let mut l = 0usize;
    let mut max_level = 0usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in x.neighbors(u) {
                if w == parent[u as usize] {
                    continue;
                }
                if level[w as usize] == usize::MAX {
                    level[w as usize] = l + 1;
                    parent[w as usize] = u;
                    next.push(w);
                } else {
                    // second walk reaching w: injectivity breaks at radius l+1
                    return l;
                }
            }
        }
        if !next.is_empty() {
            max_level = l + 1;
        }
        frontier = next;
        l += 1;
    }
    max_level
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanMemberReport {
    pub label: String,
    pub vertices: usize,
    pub injectivity_radius: usize,
    /// Covering radius: max over sampled reference points of the distance to
    /// this member's spectrum.
    pub epsilon: f64,
    pub spectrum_size: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanReport {
    pub members: Vec<ScanMemberReport>,
    /// Whether epsilon is non-increasing along the member order.
    pub epsilon_monotone: bool,
}

/// Covering radius of the sampled reference by one spectrum.
fn covering_radius(reference_samples: &[Vec<Complex64>], spectrum: &SpectrumSet) -> f64 {
    reference_samples
        .par_iter()
        .map(|s| {
            spectrum
                .points
                .iter()
                .map(|p| tuple_dist(&p.value, s))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Runs the operator constructor over an ordered family of complexes and
/// reports, per member, the injectivity radius and the covering radius of
/// the reference by the member's spectrum.
pub fn alon_boppana_scan(
    members: &[(String, &SimplicialComplex)],
    ctor: OperatorKind,
    reference: &ReferenceSpectrum,
    num_samples: usize,
) -> Result<ScanReport, SpectraError> {
    let samples = reference.sample_points(num_samples);
    let spectra: Vec<(usize, usize, SpectrumSet)> = members
        .par_iter()
        .map(|(_, x)| {
            let op = ctor
                .build(x)
                .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?;
            let s = joint_spectrum(&[&op])?;
            Ok((x.num_vertices(), injectivity_radius(x), s))
        })
        .collect::<Result<Vec<_>, SpectraError>>()?;
    let mut reports = Vec::with_capacity(members.len());
    for ((label, _), (nverts, inj, spec)) in members.iter().zip(spectra) {
        let epsilon = covering_radius(&samples, &spec);
        reports.push(ScanMemberReport {
            label: label.clone(),
            vertices: nverts,
            injectivity_radius: inj,
            epsilon,
            spectrum_size: spec.points.len(),
        });
    }
    let epsilon_monotone = reports.windows(2).all(|w| w[1].epsilon <= w[0].epsilon + 1e-12);
    Ok(ScanReport { members: reports, epsilon_monotone })
}

/// Spectral monotonicity along a cover: every spectral point of the base
/// complex occurs in the cover's spectrum. The covering projection is
/// verified first.
pub fn cover_monotonicity_check(
    cover: &SimplicialComplex,
    base: &SimplicialComplex,
    projection: &VertexMap,
    ctor: OperatorKind,
    tol: f64,
) -> Result<bool, SpectraError> {
    check_cover_map(projection, cover, base).map_err(SpectraError::NotACover)?;
    let oc = ctor
        .build(cover)
        .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?;
    let ob = ctor
        .build(base)
        .map_err(|e| SpectraError::NumericalFailure(e.to_string()))?;
    let sc = joint_spectrum(&[&oc])?;
    let sb = joint_spectrum(&[&ob])?;
    Ok(sb.subset_of(&sc, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, petersen, random_regular};

    #[test]
    fn injectivity_radius_of_cycles() {
        // C_n has girth n; balls of radius floor((n-1)/2) are acyclic
        assert_eq!(injectivity_radius(&cycle(8)), 3);
        assert_eq!(injectivity_radius(&cycle(9)), 4);
    }

    #[test]
    fn injectivity_radius_of_petersen() {
        // girth 5
        assert_eq!(injectivity_radius(&petersen()), 2);
    }

    #[test]
    fn cycle_quotient_monotonicity() {
        let c6 = cycle(6);
        let c3 = cycle(3);
        let f = VertexMap::new((0..6).map(|v| v % 3).collect());
        assert!(cover_monotonicity_check(&c6, &c3, &f, OperatorKind::Adjacency(0, 1), 1e-8).unwrap());
    }

    #[test]
    fn identity_cover_monotonicity() {
        let c5 = cycle(5);
        let f = VertexMap::new((0..5).collect());
        assert!(cover_monotonicity_check(&c5, &c5, &f, OperatorKind::Adjacency(0, 1), 1e-8).unwrap());
    }

    #[test]
    fn unrelated_complexes_are_not_covers() {
        let c6 = cycle(6);
        let p = petersen();
        let f = VertexMap::new(vec![0; 6]);
        let err =
            cover_monotonicity_check(&c6, &p, &f, OperatorKind::Adjacency(0, 1), 1e-8).unwrap_err();
        assert!(matches!(err, SpectraError::NotACover(_)));
    }

    #[test]
    fn scan_epsilon_shrinks_on_growing_cycles() {
        let members: Vec<(String, SimplicialComplex)> = [8usize, 32, 128]
            .iter()
            .map(|&n| (format!("C_{n}"), cycle(n)))
            .collect();
        let refs: Vec<(String, &SimplicialComplex)> =
            members.iter().map(|(l, x)| (l.clone(), x)).collect();
        let reference = ReferenceSpectrum::tree(2).unwrap();
        let report =
            alon_boppana_scan(&refs, OperatorKind::Adjacency(0, 1), &reference, 256).unwrap();
        assert!(report.epsilon_monotone);
        assert!(report.members[2].epsilon < report.members[0].epsilon);
        assert!(report.members[2].epsilon < 0.05);
    }

    #[test]
    fn scan_on_random_regular_graphs() {
        let members: Vec<(String, SimplicialComplex)> = [20usize, 60]
            .iter()
            .enumerate()
            .map(|(i, &n)| (format!("R_{n}"), random_regular(n, 4, 100 + i as u64).unwrap()))
            .collect();
        let refs: Vec<(String, &SimplicialComplex)> =
            members.iter().map(|(l, x)| (l.clone(), x)).collect();
        let reference = ReferenceSpectrum::tree(4).unwrap();
        let report =
            alon_boppana_scan(&refs, OperatorKind::Adjacency(0, 1), &reference, 128).unwrap();
        assert_eq!(report.members.len(), 2);
        assert!(report.members.iter().all(|m| m.epsilon.is_finite()));
    }
}
