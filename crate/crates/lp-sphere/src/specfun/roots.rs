//! Positive roots of J_nu: McMahon/Olver initial guesses refined by
//! Newton iterations safeguarded by a verified bracket.

use super::bessel::j_raw;
use super::Order;
use crate::error::Result;
use std::f64::consts::PI;

/// Ordered table of positive roots of J_nu, extended on demand.
#[derive(Debug, Clone)]
pub struct RootTable {
    order: Order,
    roots: Vec<f64>,
}

impl RootTable {
    pub fn new(order: Order) -> Self {
        RootTable {
            order,
            roots: Vec::new(),
        }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// m-th positive root (1-based), computing and caching as needed.
    pub fn get(&mut self, m: usize) -> Result<f64> {
        assert!(m >= 1, "roots are 1-based");
        while self.roots.len() < m {
            let next = next_root(self.order, &self.roots)?;
            self.roots.push(next);
        }
        Ok(self.roots[m - 1])
    }
}

/// m-th positive root of J_nu (1-based), accuracy ~1e-12.
pub fn bessel_root(order: Order, m: usize) -> Result<f64> {
    let mut table = RootTable::new(order);
    table.get(m)
}

fn next_root(order: Order, found: &[f64]) -> Result<f64> {
    let m = found.len() + 1;
    let nu = order.value();
    // Exact for the sine case
    if order.twice_nu() == 1 {
        return Ok(m as f64 * PI);
    }
    let guess = if m == 1 {
        first_root_guess(nu)
    } else {
        mcmahon(nu, m)
    };
    // Bracket: previous root is a strict lower bound (interlacing of
    // consecutive roots); expand a window around the guess to a sign change.
    let floor = found.last().copied().map(|r| r + 1e-9).unwrap_or(1e-12);
    let mut lo = guess - 0.6 * PI;
    if lo < floor {
        lo = floor;
    }
    let mut hi = guess + 0.6 * PI;
    let f = |x: f64| j_raw(order.twice_nu(), x);
    let mut flo = f(lo);
    // For m = 1 make sure we start where J_nu is still positive.
    let mut guard = 0;
    while flo == 0.0 && lo > floor {
        lo = (lo - 0.5).max(floor);
        flo = f(lo);
        guard += 1;
        if guard > 100 {
            break;
        }
    }
    let mut fhi = f(hi);
    guard = 0;
    while flo * fhi > 0.0 {
        hi += 0.5 * PI;
        fhi = f(hi);
        guard += 1;
        assert!(guard < 200, "failed to bracket root {m} of J_{nu}");
    }
    Ok(refine(&f, lo, hi, flo))
}

/// McMahon's expansion for the m-th root, good for moderate and large m.
fn mcmahon(nu: f64, m: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let b = (m as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * b;
    b - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

/// First-root guess: Olver's expansion in nu^{1/3} for nu >= 1, McMahon below.
fn first_root_guess(nu: f64) -> f64 {
    if nu >= 1.0 {
        let c = nu.cbrt();
        nu + 1.855_757 * c + 1.033_150 / c
    } else {
        mcmahon(nu, 1).max(0.5)
    }
}

/// Bisection to a safe width, then Newton polished within the bracket.
fn refine(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if hi - lo < 1e-6 * hi.max(1.0) {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let fx = f(x);
        let h = 1e-7 * x.max(1.0);
        let dfx = (f(x + h) - f(x - h)) / (2.0 * h);
        if dfx == 0.0 {
            break;
        }
        let step = fx / dfx;
        let next = x - step;
        x = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if step.abs() < 1e-14 * x.max(1.0) {
            break;
        }
    }
    x
}
