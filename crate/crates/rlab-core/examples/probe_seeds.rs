use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlab_core::spectra::reference::{ReferenceSpectrum, TorusOpts};
use std::time::Instant;

fn main() {
    for (q, d) in [(2u32, 3u32), (3, 3)] {
        let t0 = Instant::now();
        let r = ReferenceSpectrum::building(q, d, TorusOpts::default()).unwrap();
        println!("build ({q},{d}) reference: {:?}", t0.elapsed());
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64 * 100 + d as u64);
        // forward: 1000 sampled torus points
        let t1 = Instant::now();
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let th: Vec<f64> = (0..(d - 1) as usize).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            let mut z: Vec<Complex64> = th.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
            let prod: Complex64 = z.iter().product();
            z.push(prod.conj());
            // e_k scaled
            let mut e = vec![Complex64::new(0.0,0.0); d as usize + 1];
            e[0] = Complex64::new(1.0, 0.0);
            for (i, &zi) in z.iter().enumerate() {
                for k in (1..=i + 1).rev() {
                    let prev = e[k - 1];
                    e[k] += zi * prev;
                }
            }
            let pt: Vec<Complex64> = (1..d).map(|k| e[k as usize] * (q as f64).powf((k * (d - k)) as f64 / 2.0)).collect();
            let rep = r.membership(&pt, 1e-6).unwrap();
            worst = worst.max(rep.distance);
            assert!(rep.member, "forward sample rejected with distance {}", rep.distance);
        }
        println!("  forward 1000 pts: {:?}, worst distance {:.3e}", t1.elapsed(), worst);
        // reject: 1000 random far points
        let t2 = Instant::now();
        let dense = r.sample_points(40000);
        let mut count = 0usize;
        let mut best_rej = f64::INFINITY;
        while count < 1000 {
            let pt: Vec<Complex64> = (1..d).map(|k| {
                let scale = (q as f64).powf((k * (d - k)) as f64 / 2.0) * 3.5;
                Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
            }).collect();
            let dmin = dense.iter().map(|s| {
                s.iter().zip(&pt).map(|(a, b)| (a - b).norm()).fold(0.0f64, f64::max)
            }).fold(f64::INFINITY, f64::min);
            if dmin < 0.5 { continue; }
            count += 1;
            let rep = r.membership(&pt, 1e-6).unwrap();
            best_rej = best_rej.min(rep.distance);
            assert!(!rep.member, "far point accepted");
        }
        println!("  reject 1000 pts: {:?}, closest reject distance {:.4}", t2.elapsed(), best_rej);
    }
}
