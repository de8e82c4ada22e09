//! Point-by-point Ramanujan classification: a spectral point is trivial,
//! covered by the universal-cover reference, or violating.

use num_complex::Complex64;

use crate::spectra::reference::ReferenceSpectrum;
use crate::spectra::spectrum::SpectrumSet;
use crate::spectra::trivial::TrivialSpectrum;
use crate::spectra::SpectraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PointClass {
    Trivial,
    Covered,
    Violating,
}

#[derive(Debug, Clone)]
pub struct ClassifiedPoint {
    pub value: Vec<Complex64>,
    pub multiplicity: usize,
    pub class: PointClass,
    /// Distance to the nearest admissible set (trivial point or reference).
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct RamanujanVerdict {
    pub points: Vec<ClassifiedPoint>,
    pub is_ramanujan: bool,
    pub tol: f64,
    /// Set when the reference was an empirical point cloud.
    pub reference_empirical: bool,
}

impl RamanujanVerdict {
    pub fn count(&self, class: PointClass) -> usize {
        self.points.iter().filter(|p| p.class == class).count()
    }
}

/// Classifies every spectral point against the trivial set and the reference;
/// the summary flag is true exactly when no point is violating.
pub fn ramanujan_verdict(
    spectrum: &SpectrumSet,
    trivial: &TrivialSpectrum,
    reference: &ReferenceSpectrum,
    tol: f64,
) -> Result<RamanujanVerdict, SpectraError> {
    if trivial.arity != spectrum.arity {
        return Err(SpectraError::ArityMismatch { got: trivial.arity, want: spectrum.arity });
    }
    if reference.arity() != spectrum.arity {
        return Err(SpectraError::ArityMismatch { got: reference.arity(), want: spectrum.arity });
    }
    let mut points = Vec::with_capacity(spectrum.points.len());
    let mut is_ramanujan = true;
    for p in &spectrum.points {
        let d_triv = trivial.min_distance(&p.value);
        let (class, distance) = if d_triv <= tol {
            (PointClass::Trivial, d_triv)
        } else {
            let rep = reference.membership(&p.value, tol)?;
            if rep.member {
                (PointClass::Covered, rep.distance)
            } else {
                is_ramanujan = false;
                (PointClass::Violating, rep.distance.min(d_triv))
            }
        };
        points.push(ClassifiedPoint {
            value: p.value.clone(),
            multiplicity: p.multiplicity,
            class,
            distance,
        });
    }
    Ok(RamanujanVerdict {
        points,
        is_ramanujan,
        tol,
        reference_empirical: reference.is_empirical(),
    })
}

/// Verdict for a direct sum of operator families: each summand's points are
/// classified within that summand, so the result is Ramanujan exactly when
/// every factor is.
pub fn combined_verdict(parts: Vec<RamanujanVerdict>) -> RamanujanVerdict {
    let tol = parts.iter().map(|p| p.tol).fold(0.0f64, f64::max);
    let reference_empirical = parts.iter().any(|p| p.reference_empirical);
    let mut points = Vec::new();
    let mut is_ramanujan = true;
    for p in parts {
        is_ramanujan &= p.is_ramanujan;
        points.extend(p.points);
    }
    RamanujanVerdict { points, is_ramanujan, tol, reference_empirical }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_graph, cycle, petersen};
    use crate::operators::adjacency;
    use crate::spectra::spectrum::joint_spectrum;
    use crate::spectra::trivial::trivial_spectrum;

    fn dim0_verdict(x: &crate::complex::SimplicialComplex, k: u32, bipartite: bool) -> RamanujanVerdict {
        let a = adjacency(x, 0, 1).unwrap();
        let s = joint_spectrum(&[&a]).unwrap();
        let n = x.num_vertices();
        let (part, classes): (Vec<u32>, usize) = if bipartite {
            (two_colouring(x).unwrap(), 2)
        } else {
            (vec![0; n], 1)
        };
        let t = trivial_spectrum(&[&a], &part, classes, "colour classes").unwrap();
        let r = ReferenceSpectrum::tree(k).unwrap();
        ramanujan_verdict(&s, &t, &r, 1e-6).unwrap()
    }

    fn two_colouring(x: &crate::complex::SimplicialComplex) -> Option<Vec<u32>> {
        let n = x.num_vertices();
        let mut col = vec![u32::MAX; n];
        col[0] = 0;
        let mut stack = vec![0u32];
        while let Some(u) = stack.pop() {
            for &w in x.neighbors(u) {
                if col[w as usize] == u32::MAX {
                    col[w as usize] = 1 - col[u as usize];
                    stack.push(w);
                } else if col[w as usize] == col[u as usize] {
                    return None;
                }
            }
        }
        Some(col)
    }

    #[test]
    fn k4_is_ramanujan() {
        let v = dim0_verdict(&complete_graph(4), 3, false);
        assert!(v.is_ramanujan);
        assert_eq!(v.count(PointClass::Trivial), 1);
        assert_eq!(v.count(PointClass::Covered), 1); // the -1 eigenvalue, multiplicity 3
    }

    #[test]
    fn petersen_is_ramanujan() {
        let v = dim0_verdict(&petersen(), 3, false);
        assert!(v.is_ramanujan);
    }

    #[test]
    fn cycles_are_ramanujan() {
        for n in [3usize, 4, 5, 6, 9] {
            let bip = n % 2 == 0;
            let v = dim0_verdict(&cycle(n), 2, bip);
            assert!(v.is_ramanujan, "C_{n} must be Ramanujan");
        }
    }

    #[test]
    fn arity_mismatch_rejected() {
        let x = cycle(4);
        let a = adjacency(&x, 0, 1).unwrap();
        let s = joint_spectrum(&[&a]).unwrap();
        let t = TrivialSpectrum { arity: 2, points: vec![], scope: "test".into() };
        let r = ReferenceSpectrum::tree(2).unwrap();
        assert!(matches!(
            ramanujan_verdict(&s, &t, &r, 1e-6),
            Err(SpectraError::ArityMismatch { .. })
        ));
    }
}
