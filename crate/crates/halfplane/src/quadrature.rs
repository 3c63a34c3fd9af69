//! Gauss-Legendre panel machinery shared by the contour and data quadratures.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the orders used here (n <= 64).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' at x
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// A straight-line panel [a, b] on the real axis mapped through `f`;
/// appends (f(t_i), w_i * f'(t_i)-free weight) pairs, i.e. the caller's map
/// must be affine in t. For non-affine parametrizations use `push_mapped`.
pub fn push_panel(
    nodes: &mut Vec<f64>,
    weights: &mut Vec<f64>,
    a: f64,
    b: f64,
    order: usize,
) {
    let (xs, ws) = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    for (x, w) in xs.iter().zip(ws.iter()) {
        nodes.push(mid + half * x);
        weights.push(half * w);
    }
}

/// Integrate a complex function over real panels [edges[0], edges.last()].
pub fn integrate_panels<F: FnMut(f64) -> Complex64>(
    edges: &[f64],
    order: usize,
    mut f: F,
) -> Complex64 {
    let (xs, ws) = gauss_legendre(order);
    let mut sum = Complex64::new(0.0, 0.0);
    for pair in edges.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in xs.iter().zip(ws.iter()) {
            acc += f(mid + half * x) * *w;
        }
        sum += acc * half;
    }
    sum
}

/// Geometric subdivision of [a, b] refined toward `a`: first panel has
/// length `first`, each subsequent panel grows by `ratio`.
pub fn geometric_edges(a: f64, b: f64, first: f64, ratio: f64) -> Vec<f64> {
    assert!(b > a && first > 0.0 && ratio > 1.0);
    let mut edges = vec![a];
    let mut step = first;
    let mut x = a;
    while x + step < b {
        x += step;
        edges.push(x);
        step *= ratio;
    }
    edges.push(b);
    edges
}
