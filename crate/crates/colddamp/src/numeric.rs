//! Small numerical helpers shared across modules: grids, bisection,
//! brute-force minimization, trapezoidal quadrature.

/// `n` log-spaced values from `a` to `b` inclusive (both positive).
pub fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && a > 0.0 && b > 0.0);
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                (la + step * i as f64).exp()
            }
        })
        .collect()
}

/// `n` linearly spaced values from `a` to `b` inclusive.
pub fn lin_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

/// Root of `f` on [a, b] by bisection; requires a sign change. Runs to
/// floating-point exhaustion (the interval no longer shrinks).
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let (mut fa, fb) = (f(a), f(b));
    assert!(
        fa == 0.0 || fb == 0.0 || (fa > 0.0) != (fb > 0.0),
        "bisect needs a sign change on [{a}, {b}]"
    );
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Brute-force scan of `f` over a log grid; returns (argmin, min).
pub fn scan_log_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, points: usize) -> (f64, f64) {
    let mut best = (a, f(a));
    for x in log_space(a, b, points) {
        let y = f(x);
        if y < best.1 {
            best = (x, y);
        }
    }
    best
}

/// Two-stage brute-force minimizer: coarse log scan, then a refined scan
/// around the coarse minimum. Total cost `points * 2` evaluations.
pub fn refine_log_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, points: usize) -> (f64, f64) {
    let (x0, _) = scan_log_min(f, a, b, points);
    let ratio = (b / a).powf(2.0 / (points - 1) as f64);
    let lo = (x0 / ratio).max(a);
    let hi = (x0 * ratio).min(b);
    scan_log_min(f, lo, hi, points)
}

/// Trapezoidal rule over tabulated (x, y) samples.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    }
    acc
}

/// Merge several ascending sample sets into one strictly increasing vector,
/// dropping near-duplicates (relative spacing below 1e-12).
pub fn merge_ascending(mut parts: Vec<Vec<f64>>) -> Vec<f64> {
    let mut all: Vec<f64> = parts.drain(..).flatten().collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match out.last() {
            Some(&last) if (x - last).abs() <= 1e-12 * x.abs().max(last.abs()) => {}
            _ => out.push(x),
        }
    }
    out
}
