//! Quadrature infrastructure: Gauss-Legendre panels with adaptive bisection,
//! Gauss-Laguerre rules for the x^alpha e^{-x} weight, and compensated sums.

use crate::error::{Error, Result};
use crate::specfun::gamma;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
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
            if dx.abs() < 1e-15 {
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

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(16))
}

fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(32))
}

fn apply_rule(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = KahanSum::new();
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc.add(w * f(c + h * x));
    }
    acc.value() * h
}

/// One panel: GL16 against GL32; the difference is the error estimate.
pub fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let coarse = apply_rule(f, a, b, gl16());
    let fine = apply_rule(f, a, b, gl32());
    (fine, (fine - coarse).abs())
}

/// Adaptive integration of f on [a, b] to absolute tolerance `tol` by
/// recursive panel bisection. Returns (value, error estimate).
pub fn integrate_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
        out_err: &mut f64,
        acc: &mut KahanSum,
    ) {
        let (v, e) = panel(f, a, b);
        if e <= tol || depth >= 28 || (b - a) < 1e-14 * b.abs().max(1.0) {
            acc.add(v);
            *out_err += e;
            return;
        }
        let mid = 0.5 * (a + b);
        rec(f, a, mid, 0.5 * tol, depth + 1, out_err, acc);
        rec(f, mid, b, 0.5 * tol, depth + 1, out_err, acc);
    }
    let mut err = 0.0;
    let mut acc = KahanSum::new();
    rec(f, a, b, tol, 0, &mut err, &mut acc);
    (acc.value(), err)
}

/// Generalized Gauss-Laguerre rule for weight x^alpha e^{-x} on [0, inf),
/// by Golub-Welsch on the symmetric Jacobi matrix. Rules are cached per
/// (n, alpha) — the eigendecomposition dominates the cost otherwise.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Arc<(Vec<f64>, Vec<f64>)>> {
    if alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "gauss_laguerre requires alpha > -1, got {alpha}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<(Vec<f64>, Vec<f64>)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, alpha.to_bits());
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        jac[(k, k)] = 2.0 * kf + alpha + 1.0;
        if k + 1 < n {
            let b = ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
            jac[(k, k + 1)] = b;
            jac[(k + 1, k)] = b;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(jac);
    let mu0 = gamma(alpha + 1.0)?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let rule = Arc::new(pairs.into_iter().unzip());
    cache.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Integral of g against x^alpha e^{-x}, with the node count doubled until
/// two successive evaluations agree to `tol` (absolute). Returns the last
/// value with the achieved agreement as its error estimate; the caller
/// decides whether a larger estimate is acceptable.
pub fn laguerre_weighted_integral(
    g: &dyn Fn(f64) -> f64,
    alpha: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let mut n = 32;
    let rule = gauss_laguerre(n, alpha)?;
    let mut prev: f64 = rule.0.iter().zip(&rule.1).map(|(x, w)| w * g(*x)).sum();
    let mut diff = f64::INFINITY;
    while n < 1024 {
        n *= 2;
        let rule = gauss_laguerre(n, alpha)?;
        let mut acc = KahanSum::new();
        for (x, w) in rule.0.iter().zip(&rule.1) {
            acc.add(w * g(*x));
        }
        let cur = acc.value();
        diff = (cur - prev).abs();
        prev = cur;
        if diff <= tol {
            break;
        }
    }
    Ok((prev, diff))
}
