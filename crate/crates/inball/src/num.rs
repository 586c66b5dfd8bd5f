//! Small numeric utilities: grid maximization, pattern search, quadrature.

use crate::patch::{ParamPoint, Rect};

/// Maximize `eval` over a uniform grid on `rect`, then refine around the
/// best cell: `levels` rounds, each shrinking to the best cell's 3x3
/// neighborhood re-gridded `factor` times finer. Points where `eval`
/// returns `None` are skipped.
pub fn refine_max(
    rect: &Rect,
    grid: u32,
    levels: u32,
    factor: u32,
    eval: impl Fn(ParamPoint) -> Option<f64>,
) -> Option<(f64, ParamPoint)> {
    let mut region = *rect;
    let mut n = grid as i64;
    let mut best: Option<(f64, ParamPoint)> = None;
    for level in 0..=levels {
        let mut best_idx = None;
        for i in 0..=n {
            for j in 0..=n {
                let p = ParamPoint::new(
                    region.u0 + region.u_extent() * i as f64 / n as f64,
                    region.v0 + region.v_extent() * j as f64 / n as f64,
                );
                if let Some(val) = eval(p) {
                    if best.map_or(true, |(b, _)| val > b) {
                        best = Some((val, p));
                        best_idx = Some((i, j));
                    }
                }
            }
        }
        if level == levels {
            break;
        }
        let (bi, bj) = match best_idx {
            Some(idx) => idx,
            // Best stayed in an earlier region; recenter on it.
            None => match best {
                Some((_, p)) => {
                    let i = ((p.u - region.u0) / region.u_extent() * n as f64).round() as i64;
                    let j = ((p.v - region.v0) / region.v_extent() * n as f64).round() as i64;
                    (i.clamp(0, n), j.clamp(0, n))
                }
                None => return None,
            },
        };
        let du = region.u_extent() / n as f64;
        let dv = region.v_extent() / n as f64;
        let u0 = (region.u0 + (bi - 1) as f64 * du).max(rect.u0);
        let u1 = (region.u0 + (bi + 1) as f64 * du).min(rect.u1);
        let v0 = (region.v0 + (bj - 1) as f64 * dv).max(rect.v0);
        let v1 = (region.v0 + (bj + 1) as f64 * dv).min(rect.v1);
        region = Rect::new(u0, u1, v0, v1);
        n = (2 * factor as i64).max(4);
    }
    best
}

/// Compass pattern search maximizing `eval`, shrinking the step until it
/// drops below `min_step`. The iterate stays clamped to `rect`.
pub fn pattern_search_max(
    rect: &Rect,
    start: ParamPoint,
    initial_step: f64,
    min_step: f64,
    eval: impl Fn(ParamPoint) -> Option<f64>,
) -> (f64, ParamPoint) {
    let mut p = rect.clamp(start);
    let mut best = eval(p).unwrap_or(f64::NEG_INFINITY);
    let mut step = initial_step;
    while step > min_step {
        let mut improved = false;
        for (du, dv) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let q = rect.clamp(ParamPoint::new(p.u + du, p.v + dv));
            if let Some(val) = eval(q) {
                if val > best {
                    best = val;
                    p = q;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, p)
}

/// Adaptive Simpson quadrature on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64 + Copy, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse(
        f: impl Fn(f64) -> f64 + Copy,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, left, tol / 2.0, depth - 1) + recurse(f, m, b, right, tol / 2.0, depth - 1)
    }
    recurse(f, a, b, simpson(f, a, b), tol, 60)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_handles_sqrt_singularity() {
        // Integral of sqrt(1-t^2) over [0,1] = pi/4.
        let v = adaptive_simpson(|t| (1.0 - t * t).max(0.0).sqrt(), 0.0, 1.0, 1e-12);
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-10, "v = {v}");
    }

    #[test]
    fn refine_max_finds_smooth_peak() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0);
        let f = |p: ParamPoint| {
            Some(-((p.u - 0.37).powi(2) + (p.v - 0.81).powi(2)))
        };
        let (val, p) = refine_max(&rect, 16, 3, 4, f).unwrap();
        assert!(val > -1e-5);
        assert!((p.u - 0.37).abs() < 1e-2 && (p.v - 0.81).abs() < 1e-2);
    }

    #[test]
    fn pattern_search_converges() {
        let rect = Rect::new(-2.0, 2.0, -2.0, 2.0);
        let f = |p: ParamPoint| Some(-(p.u - 0.5).powi(2) - (p.v + 0.25).powi(2));
        let (_, p) = pattern_search_max(&rect, ParamPoint::new(0.0, 0.0), 0.5, 1e-10, f);
        assert!((p.u - 0.5).abs() < 1e-8 && (p.v + 0.25).abs() < 1e-8);
    }
}
