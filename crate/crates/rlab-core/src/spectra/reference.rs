//! Reference spectra of universal covers: tree intervals, the line-graph
//! transform for edge operators, and the torus-image membership test for
//! higher-rank buildings.

use num_complex::Complex64;

use crate::spectra::SpectraError;

/// Options for the torus membership optimizer.
#[derive(Debug, Clone, Copy)]
pub struct TorusOpts {
    pub starts: usize,
    pub max_iters: usize,
    /// Accept membership when the achieved distance is at most this.
    pub accept: f64,
    /// Grid resolution per torus coordinate used to rank starting points.
    pub grid_per_axis: usize,
}

impl Default for TorusOpts {
    fn default() -> Self {
        TorusOpts { starts: 64, max_iters: 500, accept: 1e-6, grid_per_axis: 0 }
    }
}

/// Membership test outcome with the achieved distance.
#[derive(Debug, Clone, Copy)]
pub struct MembershipReport {
    pub member: bool,
    pub distance: f64,
}

/// Torus-image reference for the rank d-1 building over residue field size q:
/// the set of tuples (q^{k(d-k)/2} e_k(z))_{k=1..d-1} with |z_m| = 1 and
/// prod z_m = 1. Membership is decided by multi-start damped Gauss-Newton
/// minimization of the distance to the image, seeded from a precomputed grid.
#[derive(Debug, Clone)]
pub struct TorusReference {
    pub q: u32,
    pub d: u32,
    pub opts: TorusOpts,
    scale: Vec<f64>,
    grid_thetas: Vec<Vec<f64>>,
    grid_images: Vec<Vec<Complex64>>,
}

/// A reference spectrum with a deterministic membership test.
#[derive(Debug, Clone)]
pub enum ReferenceSpectrum {
    /// Spectrum of the k-regular tree on vertex functions.
    TreeInterval { k: u32 },
    /// Edge-operator reference on k-regular graphs: the tree interval shifted
    /// by k-2, together with the flat line-graph eigenvalue -2.
    TreeEdgeInterval { k: u32 },
    BuildingTorus(TorusReference),
    /// Finite point cloud; `empirical` marks references read off a generated
    /// ball rather than a closed form.
    ExplicitSet { points: Vec<Vec<Complex64>>, empirical: bool },
    /// Union of references of equal arity (for direct-sum families).
    Union(Vec<ReferenceSpectrum>),
}

fn interval_distance(pt: &[Complex64], lo: f64, hi: f64) -> f64 {
    let z = pt[0];
    let dx = if z.re < lo {
        lo - z.re
    } else if z.re > hi {
        z.re - hi
    } else {
        0.0
    };
    (dx * dx + z.im * z.im).sqrt()
}

impl ReferenceSpectrum {
    pub fn tree(k: u32) -> Result<Self, SpectraError> {
        if k < 2 {
            return Err(SpectraError::UnsupportedKind(format!("tree requires k >= 2, got {k}")));
        }
        Ok(ReferenceSpectrum::TreeInterval { k })
    }

    pub fn tree_edges(k: u32) -> Result<Self, SpectraError> {
        if k < 2 {
            return Err(SpectraError::UnsupportedKind(format!("tree requires k >= 2, got {k}")));
        }
        Ok(ReferenceSpectrum::TreeEdgeInterval { k })
    }

    pub fn building(q: u32, d: u32, opts: TorusOpts) -> Result<Self, SpectraError> {
        Ok(ReferenceSpectrum::BuildingTorus(TorusReference::new(q, d, opts)?))
    }

    pub fn arity(&self) -> usize {
        match self {
            ReferenceSpectrum::TreeInterval { .. } | ReferenceSpectrum::TreeEdgeInterval { .. } => 1,
            ReferenceSpectrum::BuildingTorus(t) => t.d as usize - 1,
            ReferenceSpectrum::ExplicitSet { points, .. } => {
                points.first().map(|p| p.len()).unwrap_or(1)
            }
            ReferenceSpectrum::Union(parts) => parts.first().map(|p| p.arity()).unwrap_or(1),
        }
    }

    pub fn is_empirical(&self) -> bool {
        match self {
            ReferenceSpectrum::ExplicitSet { empirical, .. } => *empirical,
            ReferenceSpectrum::Union(parts) => parts.iter().any(|p| p.is_empirical()),
            _ => false,
        }
    }

    /// Distance from the point to the reference set; membership when the
    /// distance is at most `tol` (interval boundaries therefore count in).
    pub fn membership(&self, pt: &[Complex64], tol: f64) -> Result<MembershipReport, SpectraError> {
        if pt.len() != self.arity() {
            return Err(SpectraError::ArityMismatch { got: pt.len(), want: self.arity() });
        }
        let distance = match self {
            ReferenceSpectrum::TreeInterval { k } => {
                let b = 2.0 * ((*k as f64) - 1.0).sqrt();
                interval_distance(pt, -b, b)
            }
            ReferenceSpectrum::TreeEdgeInterval { k } => {
                let b = 2.0 * ((*k as f64) - 1.0).sqrt();
                let shift = *k as f64 - 2.0;
                let d_int = interval_distance(pt, shift - b, shift + b);
                let d_flat = (pt[0] - Complex64::new(-2.0, 0.0)).norm();
                d_int.min(d_flat)
            }
            ReferenceSpectrum::BuildingTorus(t) => t.distance(pt),
            ReferenceSpectrum::ExplicitSet { points, .. } => points
                .iter()
                .map(|p| crate::spectra::spectrum::tuple_dist(p, pt))
                .fold(f64::INFINITY, f64::min),
            ReferenceSpectrum::Union(parts) => {
                let mut best = f64::INFINITY;
                for p in parts {
                    best = best.min(p.membership(pt, tol)?.distance);
                }
                best
            }
        };
        Ok(MembershipReport { member: distance <= tol, distance })
    }

    /// Deterministic samples of the reference set, used for covering-radius
    /// estimates in family scans.
    pub fn sample_points(&self, count: usize) -> Vec<Vec<Complex64>> {
        match self {
            ReferenceSpectrum::TreeInterval { k } => {
                let b = 2.0 * ((*k as f64) - 1.0).sqrt();
                sample_interval(-b, b, count)
            }
            ReferenceSpectrum::TreeEdgeInterval { k } => {
                let b = 2.0 * ((*k as f64) - 1.0).sqrt();
                let shift = *k as f64 - 2.0;
                let mut pts = sample_interval(shift - b, shift + b, count.saturating_sub(1).max(1));
                pts.push(vec![Complex64::new(-2.0, 0.0)]);
                pts
            }
            ReferenceSpectrum::BuildingTorus(t) => {
                let stride = (t.grid_images.len() / count.max(1)).max(1);
                t.grid_images.iter().step_by(stride).cloned().collect()
            }
            ReferenceSpectrum::ExplicitSet { points, .. } => points.clone(),
            ReferenceSpectrum::Union(parts) => {
                let per = (count / parts.len().max(1)).max(1);
                parts.iter().flat_map(|p| p.sample_points(per)).collect()
            }
        }
    }
}

fn sample_interval(lo: f64, hi: f64, count: usize) -> Vec<Vec<Complex64>> {
    let n = count.max(2);
    (0..n)
        .map(|i| vec![Complex64::new(lo + (hi - lo) * i as f64 / (n - 1) as f64, 0.0)])
        .collect()
}

/// Elementary symmetric polynomials e_0..e_n of the given values.
fn elementary_symmetric(z: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::ZERO; z.len() + 1];
    e[0] = Complex64::ONE;
    for (i, &zi) in z.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += zi * prev;
        }
    }
    e
}

impl TorusReference {
    pub fn new(q: u32, d: u32, mut opts: TorusOpts) -> Result<Self, SpectraError> {
        if q < 2 || d < 2 {
            return Err(SpectraError::UnsupportedKind(format!(
                "building reference requires q >= 2 and d >= 2 (got q={q}, d={d})"
            )));
        }
        if opts.grid_per_axis == 0 {
            opts.grid_per_axis = match d {
                2 => 1024,
                3 => 192,
                4 => 40,
                _ => 16,
            };
        }
        let scale: Vec<f64> = (1..d)
            .map(|k| (q as f64).powf((k * (d - k)) as f64 / 2.0))
            .collect();
        let mut t = TorusReference {
            q,
            d,
            opts,
            scale,
            grid_thetas: Vec::new(),
            grid_images: Vec::new(),
        };
        t.build_grid();
        Ok(t)
    }

    /// The image point Λ(θ).
    fn image(&self, theta: &[f64]) -> Vec<Complex64> {
        let d = self.d as usize;
        let mut z: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let prod: Complex64 = z.iter().product();
        z.push(prod.conj()); // |prod| = 1, so conj is the inverse
        let e = elementary_symmetric(&z);
        (1..d).map(|k| e[k] * self.scale[k - 1]).collect()
    }

    fn build_grid(&mut self) {
        let m = self.d as usize - 1;
        let g = self.opts.grid_per_axis;
        let total = g.pow(m as u32);
        self.grid_thetas.reserve(total);
        self.grid_images.reserve(total);
        let mut idx = vec![0usize; m];
        loop {
            let theta: Vec<f64> = idx
                .iter()
                .map(|&i| 2.0 * std::f64::consts::PI * i as f64 / g as f64)
                .collect();
            self.grid_images.push(self.image(&theta));
            self.grid_thetas.push(theta);
            // odometer increment
            let mut c = 0;
            loop {
                idx[c] += 1;
                if idx[c] < g {
                    break;
                }
                idx[c] = 0;
                c += 1;
                if c == m {
                    return;
                }
            }
        }
    }

    fn f_value(&self, theta: &[f64], target: &[Complex64]) -> f64 {
        let img = self.image(theta);
        img.iter().zip(target).map(|(a, b)| (a - b).norm_sqr()).sum()
    }

    /// Residual and Jacobian for Gauss-Newton: residual stacks re/im of
    /// Λ_k(θ) - λ_k; the Jacobian uses ∂e_k/∂z_m = e_{k-1}(z with z_m removed).
    fn residual_jacobian(&self, theta: &[f64], target: &[Complex64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let d = self.d as usize;
        let m = d - 1;
        let mut z: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let prod: Complex64 = z.iter().product();
        z.push(prod.conj());
        let e = elementary_symmetric(&z);
        // e_{k}(z without index m) for all m
        let mut e_without: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        for skip in 0..d {
            let rest: Vec<Complex64> = z
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            e_without.push(elementary_symmetric(&rest));
        }
        let i_unit = Complex64::new(0.0, 1.0);
        let mut residual = vec![0.0; 2 * m];
        let mut jac = vec![vec![0.0; m]; 2 * m];
        for k in 1..d {
            let lam = e[k] * self.scale[k - 1];
            let r = lam - target[k - 1];
            residual[2 * (k - 1)] = r.re;
            residual[2 * (k - 1) + 1] = r.im;
            for j in 0..m {
                // z_j moves with θ_j; z_{d-1} moves oppositely
                let dz = e_without[j][k - 1] * (i_unit * z[j])
                    + e_without[d - 1][k - 1] * (-i_unit * z[d - 1]);
                let dl = dz * self.scale[k - 1];
                jac[2 * (k - 1)][j] = dl.re;
                jac[2 * (k - 1) + 1][j] = dl.im;
            }
        }
        (residual, jac)
    }

    /// Distance from `target` to the torus image, by grid ranking plus
    /// damped Gauss-Newton refinement from the best starts.
    pub fn distance(&self, target: &[Complex64]) -> f64 {
        let m = self.d as usize - 1;
        // rank grid points by distance
        let mut best_grid: Vec<(f64, usize)> = Vec::with_capacity(self.grid_images.len());
        for (i, img) in self.grid_images.iter().enumerate() {
            let f: f64 = img.iter().zip(target).map(|(a, b)| (a - b).norm_sqr()).sum();
            best_grid.push((f, i));
        }
        best_grid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let from_grid = best_grid.len().min(self.opts.starts / 2 + 1);
        let mut starts: Vec<Vec<f64>> =
            best_grid[..from_grid].iter().map(|&(_, i)| self.grid_thetas[i].clone()).collect();
        // deterministic lattice of extra starts
        let extra = self.opts.starts.saturating_sub(starts.len());
        for s in 0..extra {
            let theta: Vec<f64> = (0..m)
                .map(|j| {
                    2.0 * std::f64::consts::PI
                        * (((s * 7919 + j * 104729 + 13) % 10007) as f64 / 10007.0)
                })
                .collect();
            starts.push(theta);
        }

        let mut best_f = best_grid.first().map(|&(f, _)| f).unwrap_or(f64::INFINITY);
        let accept_sq = (self.opts.accept * 0.5).powi(2);
        for start in starts {
            let f = self.refine(start, target);
            if f < best_f {
                best_f = f;
            }
            if best_f <= accept_sq {
                break;
            }
        }
        best_f.max(0.0).sqrt()
    }

    /// Levenberg-damped Gauss-Newton from one start; returns the best f found.
    fn refine(&self, mut theta: Vec<f64>, target: &[Complex64]) -> f64 {
        let m = theta.len();
        let mut f = self.f_value(&theta, target);
        let mut mu = 1e-3;
        let mut stall = 0usize;
        for _ in 0..self.opts.max_iters {
            let (r, jac) = self.residual_jacobian(&theta, target);
            // normal equations J^T J + mu I, J^T r
            let mut jtj = vec![vec![0.0; m]; m];
            let mut jtr = vec![0.0; m];
            for row in 0..r.len() {
                for a in 0..m {
                    jtr[a] += jac[row][a] * r[row];
                    for b in 0..m {
                        jtj[a][b] += jac[row][a] * jac[row][b];
                    }
                }
            }
            let mut improved = false;
            for _ in 0..8 {
                let mut lhs = jtj.clone();
                for a in 0..m {
                    lhs[a][a] += mu;
                }
                let Some(step) = solve_spd(&lhs, &jtr) else {
                    mu *= 4.0;
                    continue;
                };
                let cand: Vec<f64> = theta.iter().zip(&step).map(|(t, s)| t - s).collect();
                let fc = self.f_value(&cand, target);
                if fc < f {
                    let gain = f - fc;
                    theta = cand;
                    f = fc;
                    mu = (mu / 3.0).max(1e-12);
                    improved = true;
                    if gain < 1e-18 * (1.0 + f) {
                        stall += 1;
                    } else {
                        stall = 0;
                    }
                    break;
                }
                mu *= 4.0;
            }
            if !improved {
                stall += 1;
            }
            if f <= (self.opts.accept * 0.25).powi(2) || stall >= 6 || mu > 1e12 {
                break;
            }
        }
        f
    }
}

/// Direct Gaussian elimination for small symmetric positive definite systems.
fn solve_spd(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().map(|row| row.clone()).collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        let d = m[col][col];
        for r in (col + 1)..n {
            let fac = m[r][col] / d;
            for c in col..n {
                m[r][c] -= fac * m[col][c];
            }
            rhs[r] -= fac * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = rhs[r];
        for c in (r + 1)..n {
            s -= m[r][c] * x[c];
        }
        x[r] = s / m[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_interval_membership() {
        let r = ReferenceSpectrum::tree(3).unwrap();
        let b = 2.0 * 2.0_f64.sqrt();
        let inside = r.membership(&[Complex64::new(1.0, 0.0)], 1e-6).unwrap();
        assert!(inside.member);
        let boundary = r.membership(&[Complex64::new(b, 0.0)], 1e-6).unwrap();
        assert!(boundary.member);
        let outside = r.membership(&[Complex64::new(b + 0.1, 0.0)], 1e-6).unwrap();
        assert!(!outside.member);
        assert!((outside.distance - 0.1).abs() < 1e-12);
    }

    #[test]
    fn tree_edge_interval_includes_flat_eigenvalue() {
        let r = ReferenceSpectrum::tree_edges(3).unwrap();
        assert!(r.membership(&[Complex64::new(-2.0, 0.0)], 1e-6).unwrap().member);
        assert!(r.membership(&[Complex64::new(1.0, 0.0)], 1e-6).unwrap().member);
        // between the isolated point and the shifted interval
        let gap = r.membership(&[Complex64::new(-1.95, 0.0)], 1e-6).unwrap();
        assert!(!gap.member);
        assert!((gap.distance - 0.05).abs() < 1e-9);
    }

    #[test]
    fn torus_d2_matches_tree_interval() {
        // d = 2: the torus image is the interval [-2√q, 2√q]
        let t = TorusReference::new(2, 2, TorusOpts::default()).unwrap();
        let b = 2.0 * (2.0_f64).sqrt();
        assert!(t.distance(&[Complex64::new(b * 0.99, 0.0)]) < 1e-6);
        assert!(t.distance(&[Complex64::new(b + 0.2, 0.0)]) > 0.1);
    }

    #[test]
    fn torus_accepts_sampled_images_and_rejects_far_points() {
        let t = TorusReference::new(2, 3, TorusOpts::default()).unwrap();
        // forward exactness on a few sampled torus points
        for s in 0..25usize {
            let theta = [
                2.0 * std::f64::consts::PI * (s as f64 * 0.19).fract(),
                2.0 * std::f64::consts::PI * (s as f64 * 0.37 + 0.11).fract(),
            ];
            let img = t.image(&theta);
            assert!(t.distance(&img) <= 1e-6, "sampled point rejected at s={s}");
        }
        // a far point: q^{1/2}*... the image coordinates are bounded by
        // scale * C(3,1) = 3*sqrt(2) ≈ 4.24, so (10, 10i) is far outside
        let far = [Complex64::new(10.0, 0.0), Complex64::new(0.0, 10.0)];
        assert!(t.distance(&far) > 0.5);
    }
}
