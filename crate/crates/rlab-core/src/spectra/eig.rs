//! Dense eigensolvers and simultaneous diagonalization of commuting normal
//! families via recursively refined random self-adjoint combinations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut evs: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    evs
}

/// Full eigendecomposition of a real symmetric matrix, eigenvalues ascending.
pub fn symmetric_eigen_sorted(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let e = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &e.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Full eigendecomposition of a complex Hermitian matrix, ascending.
pub fn hermitian_eigen_sorted(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let e = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &e.eigenvectors.column(i));
    }
    (vals, vecs)
}

fn adjoint(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.adjoint()
}

/// Joint diagonalization of a commuting normal family. Returns the common
/// unitary basis and, per basis column, the tuple of Rayleigh quotients
/// against the original operators.
///
/// Strategy: split the space along eigenvalue clusters of a random real
/// combination of the family's self-adjoint parts, then refine each cluster
/// with fresh coefficients until every operator acts as a scalar.
pub fn joint_diagonalize(
    mats: &[DMatrix<Complex64>],
    gap: f64,
    seed: u64,
) -> Result<(DMatrix<Complex64>, Vec<Vec<Complex64>>), String> {
    let n = mats.first().ok_or("empty family")?.nrows();
    for m in mats {
        if m.nrows() != n || m.ncols() != n {
            return Err("family members must be square of equal size".into());
        }
    }
    if n == 0 {
        return Ok((DMatrix::zeros(0, 0), Vec::new()));
    }
    // self-adjoint generators: Re and Im parts of each operator
    let mut herm: Vec<DMatrix<Complex64>> = Vec::new();
    for m in mats {
        let mh = adjoint(m);
        herm.push((m + &mh).scale(0.5));
        herm.push((m - &mh) * Complex64::new(0.0, -0.5));
    }
    herm.retain(|h| h.norm() > 1e-14);
    if herm.is_empty() {
        // zero family: any orthonormal basis works
        let u = DMatrix::identity(n, n);
        let tuples = vec![vec![Complex64::ZERO; mats.len()]; n];
        return Ok((u, tuples));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: Vec<DVector<Complex64>> = Vec::with_capacity(n);
    let start = DMatrix::<Complex64>::identity(n, n);
    split_subspace(&herm, start, gap, &mut rng, 0, &mut columns)?;
    if columns.len() != n {
        return Err(format!("joint basis has {} columns, expected {n}", columns.len()));
    }

    let mut u = DMatrix::zeros(n, n);
    for (k, col) in columns.iter().enumerate() {
        u.set_column(k, col);
    }
    let mut tuples = Vec::with_capacity(n);
    for col in &columns {
        let mut t = Vec::with_capacity(mats.len());
        for m in mats {
            let mv = m * col;
            let lam: Complex64 = col.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum();
            t.push(lam);
        }
        tuples.push(t);
    }
    Ok((u, tuples))
}

const MAX_DEPTH: usize = 32;

fn split_subspace(
    herm: &[DMatrix<Complex64>],
    basis: DMatrix<Complex64>,
    gap: f64,
    rng: &mut ChaCha8Rng,
    depth: usize,
    out: &mut Vec<DVector<Complex64>>,
) -> Result<(), String> {
    let k = basis.ncols();
    if k == 1 {
        out.push(basis.column(0).into_owned());
        return Ok(());
    }
    // restrict generators to the subspace
    let restricted: Vec<DMatrix<Complex64>> =
        herm.iter().map(|h| adjoint(&basis) * h * &basis).collect();
    // terminal condition: every generator is scalar here
    let all_scalar = restricted.iter().all(|g| {
        let mean = g.trace() / Complex64::new(k as f64, 0.0);
        let dev = g - DMatrix::from_diagonal_element(k, k, mean);
        dev.norm() <= 1e-9 * (1.0 + g.norm())
    });
    if all_scalar || depth >= MAX_DEPTH {
        for c in 0..k {
            out.push(basis.column(c).into_owned());
        }
        return Ok(());
    }
    let mut combo = DMatrix::<Complex64>::zeros(k, k);
    for g in &restricted {
        let c: f64 = rng.gen_range(-1.0..1.0);
        combo += g * Complex64::new(c, 0.0);
    }
    // symmetrize against roundoff
    let combo = (combo.clone() + adjoint(&combo)).scale(0.5);
    let (vals, vecs) = hermitian_eigen_sorted(&combo);
    // group eigenvalues into clusters separated by more than `gap`
    let mut cluster_start = 0usize;
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    for i in 1..k {
        if vals[i] - vals[i - 1] > gap {
            clusters.push((cluster_start, i));
            cluster_start = i;
        }
    }
    clusters.push((cluster_start, k));
    if clusters.len() == 1 {
        // the random combination failed to separate anything; try fresh
        // coefficients a bounded number of times before giving up
        if depth < MAX_DEPTH {
            return split_subspace(herm, basis, gap, rng, depth + 1, out);
        }
    }
    for (a, b) in clusters {
        let sub = vecs.columns(a, b - a).into_owned();
        let next = &basis * sub;
        split_subspace(herm, next, gap, rng, depth + 1, out)?;
    }
    Ok(())
}
