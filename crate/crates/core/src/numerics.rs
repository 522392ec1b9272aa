//! Quadrature weights and finite-difference stencils shared by the modules.

use crate::hypercomplex::Scalar;

/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-4;

/// Composite Simpson weights (without the `h / 3` factor folded in) for `m`
/// equally spaced points; `m` must be odd and at least 3.
pub fn simpson_weights(m: usize) -> Vec<f64> {
    assert!(m >= 3 && m % 2 == 1, "Simpson needs an odd number of points, got {m}");
    (0..m)
        .map(|i| {
            let w = if i == 0 || i == m - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w / 3.0
        })
        .collect()
}

/// Trapezoid weights (without the step factor) for `m >= 2` points.
pub fn trapezoid_weights(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    (0..m)
        .map(|i| if i == 0 || i == m - 1 { 0.5 } else { 1.0 })
        .collect()
}

/// `\int_a^b f` by composite Simpson with `n` (even) intervals.
pub fn simpson<T: Scalar>(f: impl Fn(f64) -> T, a: f64, b: f64, n: usize) -> T {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let w = simpson_weights(n + 1);
    let mut acc = T::zero();
    for (i, wi) in w.iter().enumerate() {
        acc += f(a + i as f64 * h).scale(*wi);
    }
    acc.scale(h)
}

/// Uniform nodes `a, a + h, ..., b` (`m` points).
pub fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    let h = (b - a) / (m - 1) as f64;
    (0..m).map(|i| a + i as f64 * h).collect()
}

/// Fourth-order central first derivative.
pub fn d1<T: Scalar>(f: impl Fn(f64) -> T, x: f64, h: f64) -> T {
    (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)).scale(8.0)).scale(1.0 / (12.0 * h))
}

/// Fourth-order central second derivative (five-point stencil).
pub fn d2<T: Scalar>(f: impl Fn(f64) -> T, x: f64, h: f64) -> T {
    (-(f(x + 2.0 * h) + f(x - 2.0 * h)) + (f(x + h) + f(x - h)).scale(16.0) - f(x).scale(30.0))
        .scale(1.0 / (12.0 * h * h))
}

/// Fourth-order central third derivative (seven-point stencil).
pub fn d3<T: Scalar>(f: impl Fn(f64) -> T, x: f64, h: f64) -> T {
    let a = f(x + 3.0 * h) - f(x - 3.0 * h);
    let b = f(x + 2.0 * h) - f(x - 2.0 * h);
    let c = f(x + h) - f(x - h);
    (b.scale(8.0) - c.scale(13.0) - a).scale(1.0 / (8.0 * h * h * h))
}

/// Derivative of order 0, 1 or 2 of a scalar function.
pub fn derivative<T: Scalar>(f: &dyn Fn(f64) -> T, x: f64, order: usize, h: f64) -> T {
    match order {
        0 => f(x),
        1 => d1(f, x, h),
        2 => d2(f, x, h),
        3 => d3(f, x, h),
        _ => panic!("derivative order {order} not supported by the stencils"),
    }
}
