use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CheckConfig;
use crate::generators::Vector;

/// `n` points spaced evenly in log scale from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(
        lo > 0.0 && hi > lo && n >= 2,
        "log_spaced needs 0 < lo < hi and n ≥ 2"
    );
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64))
        .collect()
}

/// Independent substream for one check.
pub(crate) fn stream(cfg: &CheckConfig, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(id);
    rng
}

pub(crate) fn uniform_point(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect()
}

/// The origin, the coordinate unit vectors and their negatives, followed by
/// uniform draws from the box until `cfg.samples` points are produced.
pub(crate) fn raw_points(cfg: &CheckConfig, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut points = Vec::with_capacity(cfg.samples);
    points.push(vec![0.0; dim]);
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = sign;
            points.push(e);
        }
    }
    points.truncate(cfg.samples);
    while points.len() < cfg.samples {
        points.push(uniform_point(rng, dim, cfg.box_radius));
    }
    points
}

/// The sample set a check with substream `stream_id` would use.
pub fn sample_points(cfg: &CheckConfig, dim: usize, stream_id: u64) -> Vec<Vector> {
    let mut rng = stream(cfg, stream_id);
    raw_points(cfg, dim, &mut rng)
        .into_iter()
        .map(Vector::from_raw)
        .collect()
}
