//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_depth: 40,
        }
    }
}

struct State<'a, F> {
    f: &'a F,
    failed: bool,
    max_depth: u32,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    st: &mut State<'_, F>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = ((st.f)(lm), (st.f)(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    if depth >= st.max_depth {
        st.failed = true;
        return left + right + delta / 15.0;
    }
    refine(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + refine(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// `int_a^b f` to the requested tolerance; fails when the recursion cap
/// is hit anywhere.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    // seed with a few panels so narrow features are not skipped
    let panels = 8;
    let h = (b - a) / panels as f64;
    let mut coarse = 0.0;
    let mut pieces = Vec::with_capacity(panels);
    for i in 0..panels {
        let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
        let s = simpson(x0, x1, f0, fm, f1);
        coarse += s.abs();
        pieces.push((x0, x1, f0, fm, f1, s));
    }
    let tol = (opts.rel_tol * coarse).max(opts.abs_tol) / panels as f64;
    let mut st = State {
        f: &f,
        failed: false,
        max_depth: opts.max_depth,
    };
    let total: f64 = pieces
        .into_iter()
        .map(|(x0, x1, f0, fm, f1, s)| refine(&mut st, x0, x1, f0, fm, f1, s, tol, 0))
        .sum();
    if st.failed || !total.is_finite() {
        return Err(Error::Quadrature(format!(
            "adaptive Simpson on [{a}, {b}] hit depth {}",
            opts.max_depth
        )));
    }
    Ok(total)
}

/// Composite Simpson on `2 m` equal panels over `[a, b]`.
pub fn simpson_uniform<T>(f: impl Fn(f64) -> T, a: f64, b: f64, panels: usize) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + f(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_integrals() {
        let o = QuadOptions::default();
        let v = integrate(f64::sin, 0.0, std::f64::consts::PI, &o).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = integrate(|x| (-x * x).exp(), -6.0, 6.0, &o).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-9);
        assert_eq!(integrate(f64::sin, 1.0, 1.0, &o).unwrap(), 0.0);
    }

    #[test]
    fn uniform_rule_is_exact_on_cubics() {
        let v = simpson_uniform(|x| x * x * x - x, 0.0, 2.0, 4);
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn depth_cap_is_reported() {
        let o = QuadOptions {
            rel_tol: 1e-14,
            max_depth: 2,
            ..Default::default()
        };
        assert!(matches!(
            integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, &o),
            Err(Error::Quadrature(_))
        ));
    }
}
