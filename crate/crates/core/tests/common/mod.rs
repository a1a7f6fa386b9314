#![allow(dead_code)]

use diamond_gdof::{Exponents, NetworkParams};

pub fn params(t: u32, g: [f64; 4]) -> NetworkParams {
    NetworkParams::new(t, Exponents::from_array(g)).unwrap()
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    s * h / 3.0
}

/// `int_0^inf f(x) e^{-x} dx` through `x = -ln u`, with the integrand
/// sampled on a geometric grid near `u = 0`.
pub fn exp_weighted(f: impl Fn(f64) -> f64) -> f64 {
    // Split at u = 1e-12 .. 1; below that the contribution is negligible for
    // the logarithmic integrands used here.
    let g = |v: f64| {
        // u = e^{-v}, du = -u dv: int_0^inf f(v) e^{-v} dv directly in v.
        f(v) * (-v).exp()
    };
    simpson(g, 0.0, 1e-6, 2_000) + simpson(g, 1e-6, 1.0, 20_000) + simpson(g, 1.0, 60.0, 200_000)
}

/// Digamma at a positive integer.
pub fn digamma_int(k: u32) -> f64 {
    -diamond_gdof::special::EULER_GAMMA + (1..k).map(|j| 1.0 / j as f64).sum::<f64>()
}

/// Uniform random exponents in `[lo, hi]` in the both-relays regime.
pub fn nontrivial_gamma(raw: [f64; 4]) -> [f64; 4] {
    // Sort so that sr1 and rd2 are the two largest, matching the regime.
    let mut v = raw;
    v.sort_by(|a, b| b.total_cmp(a));
    // v[0] >= v[1] >= v[2] >= v[3]; assign sr1 = v[0], rd2 = v[1], then the
    // smaller pair in either order.
    [v[0], v[3], v[2], v[1]]
}
