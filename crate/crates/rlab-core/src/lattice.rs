//! Canonical forms for homothety classes of lattices over F_q((t)): a
//! column Hermite normal form with unit-normalized pivots t^{a_r}, entries
//! above each pivot reduced modulo t^{a_r}, and the minimal pivot exponent
//! shifted to zero.
//!
//! Arithmetic runs modulo t^P. Truncation can only push apparent valuations
//! up, so the self-check P >= (d+1)·(sum of pivot exponents) + maxdeg + 2
//! after a pass certifies the pass; failing it retries with larger P.

use thiserror::Error;

use crate::gf::Gf;
use crate::laurent::Laurent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is singular over the Laurent field")]
    SingularMatrix,
    #[error("matrix must be square with at least one row")]
    NotSquare,
    #[error("generating set does not span a full-rank lattice")]
    RankDeficient,
}

/// Canonical representative of a homothety class of lattices. Identity (and
/// hashing) is carried by the normal form alone; the valuation offset is
/// provenance of one particular canonicalization run.
#[derive(Debug, Clone)]
pub struct LatticeClass {
    pub d: usize,
    /// Pivot exponents a_0..a_{d-1}; min is 0 after homothety normalization.
    pub diag: Vec<i32>,
    /// Upper triangular basis matrix, rows of length d; entry (r, r) is
    /// t^{a_r} and entries (r, c) for c > r are reduced mod t^{a_r}.
    pub matrix: Vec<Vec<Laurent>>,
    /// det valuation mod d; the vertex colour in the building.
    pub color: u32,
    /// Power of t applied to the input to reach the canonical representative.
    pub valuation_offset: i32,
}

impl PartialEq for LatticeClass {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.diag == other.diag && self.matrix == other.matrix
    }
}

impl Eq for LatticeClass {}

impl std::hash::Hash for LatticeClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.diag.hash(state);
        self.matrix.hash(state);
    }
}

impl LatticeClass {
    pub fn base(d: usize) -> Self {
        let matrix: Vec<Vec<Laurent>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| if r == c { Laurent::one() } else { Laurent::zero() })
                    .collect()
            })
            .collect();
        LatticeClass { d, diag: vec![0; d], matrix, color: 0, valuation_offset: 0 }
    }

    /// Columns of the basis matrix (the lattice generators).
    pub fn columns(&self) -> Vec<Vec<Laurent>> {
        (0..self.d)
            .map(|c| (0..self.d).map(|r| self.matrix[r][c].clone()).collect())
            .collect()
    }

    pub fn det_valuation(&self) -> i32 {
        self.diag.iter().sum()
    }
}

/// Exact determinant by cofactor expansion; fine for the small d used here.
pub fn determinant(m: &[Vec<Laurent>], gf: &Gf) -> Laurent {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Laurent::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Laurent>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&cc| cc != c)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].mul(&determinant(&minor, gf), gf);
        det = if c % 2 == 0 { det.add(&term, gf) } else { det.sub(&term, gf) };
    }
    det
}

/// Canonicalizes a square invertible matrix over the Laurent field into its
/// lattice homothety class.
pub fn canonicalize(matrix: &[Vec<Laurent>], gf: &Gf) -> Result<LatticeClass, LatticeError> {
    let d = matrix.len();
    if d == 0 || matrix.iter().any(|r| r.len() != d) {
        return Err(LatticeError::NotSquare);
    }
    if determinant(matrix, gf).is_zero() {
        return Err(LatticeError::SingularMatrix);
    }
    canonicalize_generators(matrix, gf)
}

/// Canonicalizes a d x m generating matrix (m >= d) of a full-rank lattice.
pub fn canonicalize_generators(
    matrix: &[Vec<Laurent>],
    gf: &Gf,
) -> Result<LatticeClass, LatticeError> {
    let d = matrix.len();
    if d == 0 {
        return Err(LatticeError::NotSquare);
    }
    let m = matrix[0].len();
    if m < d || matrix.iter().any(|r| r.len() != m) {
        return Err(LatticeError::RankDeficient);
    }
    // shift so that all entries are power series
    let v0 = matrix
        .iter()
        .flatten()
        .filter_map(|e| e.valuation())
        .min()
        .ok_or(LatticeError::RankDeficient)?;
    let shifted: Vec<Vec<Laurent>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.shift(-v0)).collect())
        .collect();
    let maxdeg = shifted
        .iter()
        .flatten()
        .filter_map(|e| e.degree())
        .max()
        .unwrap_or(0);

    let mut precision = (d as i32 + 1) * (maxdeg.max(1) * d as i32) + maxdeg + 2;
    for _ in 0..24 {
        match reduce_pass(&shifted, gf, precision) {
            Ok((diag, mat)) => {
                let vsum: i32 = diag.iter().sum();
                if precision >= (d as i32 + 1) * vsum + maxdeg + 2 {
                    return Ok(finalize(diag, mat, v0));
                }
                precision = ((d as i32 + 1) * vsum + maxdeg + 2).max(precision * 2);
            }
            Err(LatticeError::RankDeficient) => {
                // entries vanished mod t^P; either truly singular or precision-starved
                precision *= 2;
                if precision > 1 << 20 {
                    return Err(LatticeError::RankDeficient);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(LatticeError::RankDeficient)
}

fn finalize(mut diag: Vec<i32>, mut mat: Vec<Vec<Laurent>>, v0: i32) -> LatticeClass {
    let d = diag.len();
    let shift = -diag.iter().min().copied().unwrap_or(0);
    for a in &mut diag {
        *a += shift;
    }
    for row in &mut mat {
        for e in row.iter_mut() {
            *e = e.shift(shift);
        }
    }
    let vsum: i32 = diag.iter().sum();
    let color = vsum.rem_euclid(d as i32) as u32;
    LatticeClass { d, diag, matrix: mat, color, valuation_offset: shift - v0 }
}

/// One bottom-up column reduction pass modul200 t^precision.
fn reduce_pass(
    input: &[Vec<Laurent>],
    gf: &Gf,
    precision: i32,
) -> Result<(Vec<i32>, Vec<Vec<Laurent>>), LatticeError> {
    let d = input.len();
    let m = input[0].len();
    // column-major working copy, truncated
    let mut cols: Vec<Vec<Laurent>> = (0..m)
        .map(|c| (0..d).map(|r| input[r][c].truncate_above(precision)).collect())
        .collect();
    let mut diag = vec![0i32; d];
    let mut active = m; // columns 0..active are in play; pivots land at the end
    for r in (0..d).rev() {
        // pivot: minimal valuation in row r over active columns, ties to the left
        let mut best: Option<(i32, usize)> = None;
        for (ci, col) in cols.iter().enumerate().take(active) {
            if let Some(v) = col[r].valuation() {
                if best.map_or(true, |(bv, _)| v < bv) {
                    best = Some((v, ci));
                }
            }
        }
        let Some((a_r, pc)) = best else {
            return Err(LatticeError::RankDeficient);
        };
        cols.swap(pc, active - 1);
        // normalize the pivot column by the unit inverse of the pivot entry
        let unit_inv = cols[active - 1][r].series_inverse(precision, gf).shift(a_r);
        // unit_inv = t^{a_r} / pivot, valuation 0
        for e in cols[active - 1].iter_mut() {
            *e = e.mul(&unit_inv, gf).truncate_above(precision);
        }
        cols[active - 1][r] = Laurent::monomial(1, a_r);
        // clear row r in the remaining active columns
        for c in 0..active - 1 {
            if cols[c][r].is_zero() {
                continue;
            }
            let ratio = cols[c][r].shift(-a_r); // in O since a_r was minimal
            for rr in 0..d {
                let delta = cols[active - 1][rr].mul(&ratio, gf);
                cols[c][rr] = cols[c][rr].sub(&delta, gf).truncate_above(precision);
            }
        }
        diag[r] = a_r;
        active -= 1;
    }
    // leftover generating columns must be zero mod t^precision
    for col in cols.iter().take(active) {
        if col.iter().any(|e| !e.is_zero()) {
            return Err(LatticeError::RankDeficient);
        }
    }
    // reduce above-pivot entries modulo the pivot powers
    // square matrix T with T[r][c] = cols[active + c][r], upper triangular
    let mut t: Vec<Vec<Laurent>> = (0..d)
        .map(|r| (0..d).map(|c| cols[active + c][r].clone()).collect())
        .collect();
    for c in 0..d {
        for r in (0..c).rev() {
            let high = t[r][c].terms_from(diag[r]);
            if high.is_zero() {
                continue;
            }
            let lam = high.shift(-diag[r]);
            for rr in 0..=r {
                let delta = t[rr][r].mul(&lam, gf);
                t[rr][c] = t[rr][c].sub(&delta, gf).truncate_above(precision);
            }
        }
    }
    Ok((diag, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Gf {
        Gf::new(2).unwrap()
    }

    fn lmat(entries: &[&[Laurent]]) -> Vec<Vec<Laurent>> {
        entries.iter().map(|r| r.to_vec()).collect()
    }

    fn t_pow(e: i32) -> Laurent {
        Laurent::monomial(1, e)
    }

    #[test]
    fn identity_is_the_base_class() {
        let gf = gf2();
        let m = lmat(&[
            &[Laurent::one(), Laurent::zero()],
            &[Laurent::zero(), Laurent::one()],
        ]);
        let c = canonicalize(&m, &gf).unwrap();
        assert_eq!(c, LatticeClass::base(2));
        assert_eq!(c.color, 0);
    }

    #[test]
    fn homothety_normalizes_to_base() {
        let gf = gf2();
        // t * identity in d = 2 is the base class again
        let m = lmat(&[
            &[t_pow(1), Laurent::zero()],
            &[Laurent::zero(), t_pow(1)],
        ]);
        let c = canonicalize(&m, &gf).unwrap();
        assert_eq!(c.diag, vec![0, 0]);
        assert_eq!(c.color, 0);
        assert_eq!(c, LatticeClass::base(2));
    }

    #[test]
    fn diag_t_one_one_is_colour_one() {
        let gf = gf2();
        let m = lmat(&[
            &[t_pow(1), Laurent::zero(), Laurent::zero()],
            &[Laurent::zero(), Laurent::one(), Laurent::zero()],
            &[Laurent::zero(), Laurent::zero(), Laurent::one()],
        ]);
        let c = canonicalize(&m, &gf).unwrap();
        assert_eq!(c.diag, vec![1, 0, 0]);
        assert_eq!(c.color, 1);
    }

    #[test]
    fn singular_matrix_rejected() {
        let gf = gf2();
        let m = lmat(&[
            &[Laurent::one(), Laurent::one()],
            &[Laurent::one(), Laurent::one()],
        ]);
        assert_eq!(canonicalize(&m, &gf), Err(LatticeError::SingularMatrix));
    }

    #[test]
    fn unit_column_action_is_invisible() {
        let gf = Gf::new(3).unwrap();
        // M and M * U for a unimodular U over O canonicalize identically
        let m = lmat(&[
            &[t_pow(2), Laurent::from_coeffs(0, vec![1, 2])],
            &[Laurent::zero(), t_pow(1)],
        ]);
        // U = [[1, 1+t],[0, 2]] has unit determinant 2
        let u00 = Laurent::one();
        let u01 = Laurent::from_coeffs(0, vec![1, 1]);
        let u10 = Laurent::zero();
        let u11 = Laurent::monomial(2, 0);
        let mu = lmat(&[
            &[
                m[0][0].mul(&u00, &gf).add(&m[0][1].mul(&u10, &gf), &gf),
                m[0][0].mul(&u01, &gf).add(&m[0][1].mul(&u11, &gf), &gf),
            ],
            &[
                m[1][0].mul(&u00, &gf).add(&m[1][1].mul(&u10, &gf), &gf),
                m[1][0].mul(&u01, &gf).add(&m[1][1].mul(&u11, &gf), &gf),
            ],
        ]);
        let c1 = canonicalize(&m, &gf).unwrap();
        let c2 = canonicalize(&mu, &gf).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let gf = gf2();
        let m = lmat(&[
            &[t_pow(2), Laurent::from_coeffs(0, vec![1, 1]), Laurent::zero()],
            &[Laurent::zero(), t_pow(1), Laurent::one()],
            &[Laurent::zero(), Laurent::zero(), Laurent::one()],
        ]);
        let c1 = canonicalize(&m, &gf).unwrap();
        let c2 = canonicalize(&c1.matrix, &gf).unwrap();
        assert_eq!(c1.diag, c2.diag);
        assert_eq!(c1.matrix, c2.matrix);
    }

    #[test]
    fn reduced_entries_respect_pivot_bounds() {
        let gf = gf2();
        let m = lmat(&[
            &[t_pow(3), Laurent::from_coeffs(0, vec![1, 1, 1, 1, 1])],
            &[Laurent::zero(), Laurent::one()],
        ]);
        let c = canonicalize(&m, &gf).unwrap();
        for r in 0..c.d {
            for cc in (r + 1)..c.d {
                if let Some(deg) = c.matrix[r][cc].degree() {
                    assert!(deg < c.diag[r], "entry ({r},{cc}) not reduced");
                }
            }
        }
    }

    #[test]
    fn det_valuation_matches_diag_sum() {
        let gf = Gf::new(3).unwrap();
        let m = lmat(&[
            &[Laurent::from_coeffs(0, vec![1, 1]), Laurent::from_coeffs(-1, vec![2])],
            &[t_pow(2), Laurent::from_coeffs(1, vec![1, 0, 1])],
        ]);
        let det = determinant(&m, &gf);
        let c = canonicalize(&m, &gf).unwrap();
        // det valuation changes by d * offset under the homothety applied
        let want = det.valuation().unwrap() + 2 * c.valuation_offset;
        assert_eq!(c.det_valuation(), want);
    }
}
