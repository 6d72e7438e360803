//! Small derivative-free numerical routines shared by the analyses.

/// Golden-section minimization of `f` on `[a, b]`.
///
/// Derivative-free and robust on flat valleys; returns `(x_min, f(x_min))`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    if fc < fd && fc < fx {
        (c, fc)
    } else if fd <= fc && fd < fx {
        (d, fd)
    } else {
        (x, fx)
    }
}

/// Bisection root finding on `[a, b]` assuming `f(a)` and `f(b)` have
/// opposite signs. Returns the midpoint of the final bracket.
pub fn bisect_root<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    debug_assert!(
        fa * fb <= 0.0,
        "bisect_root requires a sign change, got f({a})={fa}, f({b})={fb}"
    );
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Solves the 2x2 linear system `m * x = rhs`. Returns `None` when the
/// determinant is below `1e-300` in magnitude.
pub fn solve2(m: [[f64; 2]; 2], rhs: [f64; 2]) -> Option<[f64; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() < 1e-300 {
        return None;
    }
    Some([
        (rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
        (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
    ])
}

/// Composite Simpson quadrature of `f` over `[a, b]` with `n` subintervals
/// (`n` is rounded up to the next even number).
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}
