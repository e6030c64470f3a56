//! Distributional checks of the samplers against independent references.

use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};

use fracsmc::levy_walk::{greens_q, jump_from_uniform, sample_interior, BallGeometry, JumpLaw, RngStream};
use fracsmc::oracles::stable_variate;
use fracsmc::quad::tanh_sinh;

#[test]
fn interior_sampler_chi_square() {
    let samples = 200_000;
    let bins = 20;
    let geom = BallGeometry::new(0.0, 1.0).unwrap();
    for &alpha in &[0.5, 1.0, 1.5, 2.0] {
        // x sits on a bin edge so the kernel singularity is only at endpoints
        let x = 0.2;
        let mut edges: Vec<f64> = (0..=bins).map(|i| -1.0 + 2.0 * i as f64 / bins as f64).collect();
        edges[12] = x;
        let mass: Vec<f64> = edges
            .windows(2)
            .map(|w| tanh_sinh(|y| greens_q(x, y, 1.0, alpha).unwrap(), w[0], w[1], 1e-8).unwrap().value)
            .collect();
        let total: f64 = mass.iter().sum();

        let mut counts = vec![0usize; bins];
        for p in 0..samples {
            let mut rng = RngStream::new(5, 0, p as u64, 0);
            let y = sample_interior(x, geom, alpha, &mut rng).unwrap();
            assert!(y.abs() < 1.0);
            let b = (((y + 1.0) * bins as f64 / 2.0) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let chi2: f64 = counts
            .iter()
            .zip(&mass)
            .map(|(&c, &m)| {
                let e = samples as f64 * m / total;
                (c as f64 - e).powi(2) / e
            })
            .sum();
        let critical = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.999);
        assert!(chi2 < critical, "alpha={alpha}: chi2 {chi2:.1} >= {critical:.1}");
    }
}

#[test]
fn stable_characteristic_function() {
    let samples = 1_000_000;
    for &alpha in &[0.5, 1.0, 1.5, 2.0] {
        let mut rng = RngStream::new(9, 0, 0, 0);
        let draws: Vec<f64> = (0..samples).map(|_| stable_variate(alpha, &mut rng)).collect();
        for &t in &[0.3, 1.0, 2.0] {
            let cf = draws.iter().map(|s| (t * s).cos()).sum::<f64>() / samples as f64;
            let want = (-f64::powf(t, alpha)).exp();
            // standard error of a mean of cosines is at most 1/sqrt(2n) ≈ 7e-4
            assert!((cf - want).abs() < 4e-3, "alpha={alpha} t={t}: {cf} vs {want}");
        }
    }
}

#[test]
fn exit_law_jumps_follow_beta() {
    let samples = 100_000;
    for &alpha in &[0.4, 1.0, 1.6] {
        let law = Beta::new(alpha / 2.0, 1.0 - alpha / 2.0).unwrap();
        let mut z: Vec<f64> = (0..samples)
            .map(|p| {
                let u = RngStream::new(3, 0, p as u64, 0).uniform();
                let j = jump_from_uniform(JumpLaw::ExitLaw, 1.0, alpha, u).unwrap();
                assert!(j >= 1.0);
                1.0 / (j * j)
            })
            .collect();
        z.sort_by(f64::total_cmp);
        let n = samples as f64;
        let ks = z
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let f = law.cdf(v);
                (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 1.95 / n.sqrt(), "alpha={alpha}: KS {ks}");
    }
}

#[test]
fn printed_law_lands_inside_the_ball() {
    for &alpha in &[0.6, 1.4] {
        for i in 1..100 {
            let j = jump_from_uniform(JumpLaw::Printed, 1.0, alpha, i as f64 / 100.0).unwrap();
            assert!(j < 1.0, "alpha={alpha}: {j}");
        }
    }
}
