//! Bessel functions of the first kind for half-integer and integer orders.
//!
//! Evaluation strategy:
//! - ascending power series for x <= 15 (any supported order),
//! - Hankel asymptotic expansion for x > 15 when the order is small enough
//!   for the expansion to reach ~1e-14,
//! - otherwise stable three-term recurrence seeded from base orders:
//!   upward when x >= nu, Miller's downward recurrence (with Neumann or
//!   trigonometric normalization) when x < nu.
//!
//! Orders nu = -1/2 and 1/2 always go through the trigonometric closed forms.

use super::gamma::gamma;
use super::Order;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const SERIES_DIRECT: f64 = 8.0;
const SERIES_CUTOFF: f64 = 15.0;

/// J_nu(x) for x >= 0 and nu >= -1/2 (half-integer grid).
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    if order.twice_nu() < -1 {
        return Err(Error::Domain(format!(
            "bessel_j supports nu >= -1/2, got 2nu = {}",
            order.twice_nu()
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    Ok(j_raw(order.twice_nu(), x))
}

/// J_nu'(x) via J_{nu-1} - (nu/x) J_nu; at x = 0 by the series derivative.
pub fn bessel_j_deriv(order: Order, x: f64) -> Result<f64> {
    let t = order.twice_nu();
    if x == 0.0 {
        // J_0' = -J_1; orders > 1 have vanishing derivative at 0
        return Ok(match t {
            0 => 0.0,
            2 => 0.5,
            _ => 0.0,
        });
    }
    let nu = t as f64 / 2.0;
    Ok(j_raw(t - 2, x) - nu / x * j_raw(t, x))
}

/// Internal dispatch on 2*nu (may be called with 2nu = -3 transiently by
/// derivative formulas; the analytic continuation through the recurrence is
/// fine for those).
pub(crate) fn j_raw(twice_nu: i32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    match twice_nu {
        -1 => return j_minus_half(x),
        1 => return j_half(x),
        -3 => {
            // J_{-3/2}(x) = -sqrt(2/(pi x)) (cos x / x + sin x)
            if x == 0.0 {
                return f64::NEG_INFINITY;
            }
            return -(2.0 / (PI * x)).sqrt() * (x.cos() / x + x.sin());
        }
        _ => {}
    }
    let nu = twice_nu as f64 / 2.0;
    if x == 0.0 {
        return if twice_nu == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_DIRECT {
        // no damaging cancellation this far in
        return j_series(nu, x);
    }
    if x <= SERIES_CUTOFF {
        // the alternating series loses ~3 digits by x = 15; Miller's
        // recurrence keeps absolute accuracy at machine level here
        return j_miller_down(twice_nu, x);
    }
    // x > 15: the Hankel expansion reaches ~1e-14 once x is comfortably
    // beyond nu^2/2; below that, fall back to recurrences.
    if nu <= 5.0 || x >= nu * nu {
        if let Some(v) = j_hankel(nu, x) {
            return v;
        }
    }
    if x >= nu {
        j_recur_up(twice_nu, x)
    } else {
        j_miller_down(twice_nu, x)
    }
}

fn j_half(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (2.0 / (PI * x)).sqrt() * x.sin()
}

fn j_minus_half(x: f64) -> f64 {
    if x == 0.0 {
        return f64::INFINITY;
    }
    (2.0 / (PI * x)).sqrt() * x.cos()
}

/// Ascending series with compensated summation.
fn j_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    // leading term (x/2)^nu / Gamma(nu+1)
    let mut term = (0.5 * x).powf(nu) / gamma(nu + 1.0).expect("nu > -1");
    if term == 0.0 || !term.is_finite() {
        return term;
    }
    let mut sum = term;
    let mut comp = 0.0f64;
    let mut k = 0.0f64;
    loop {
        term *= -q / ((k + 1.0) * (nu + k + 1.0));
        // Kahan step
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1.0;
        if term.abs() < 1e-18 * sum.abs() + 1e-300 && k > 0.5 * x {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Hankel asymptotic expansion, truncated at the smallest term; returns None
/// when that leaves a truncation error above ~1e-12 absolute.
fn j_hankel(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let z8 = 8.0 * x;
    // P-sum: even terms, Q-sum: odd terms of a_k = prod (mu - (2i-1)^2) / (k! 8^k x^k)
    let mut a = 1.0f64; // a_0
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut trunc = 1.0f64;
    for k in 1..=60u32 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = a * (mu - odd * odd) / (kf * z8);
        if next.abs() >= a.abs() && k > 1 {
            // divergent tail: stop at the minimum term
            trunc = a.abs();
            break;
        }
        if k % 2 == 1 {
            // contributes to Q with sign (-1)^{(k-1)/2}
            let s = if (k - 1) % 4 == 0 { 1.0 } else { -1.0 };
            q += s * next;
        } else {
            let s = if k % 4 == 0 { 1.0 } else { -1.0 };
            p += s * next;
        }
        a = next;
        trunc = a.abs();
        if trunc < 1e-17 {
            break;
        }
    }
    if trunc > 2e-12 {
        return None;
    }
    let omega = x - nu * FRAC_PI_2 - FRAC_PI_4;
    Some((2.0 / (PI * x)).sqrt() * (omega.cos() * p - omega.sin() * q))
}

/// Base values at orders (s, s+1) with s in {0, 1/2} for x > 15.
fn base_pair(half: bool, x: f64) -> (f64, f64) {
    if half {
        (j_half(x), j_hankel(1.5, x).expect("x > 15"))
    } else {
        (
            j_hankel(0.0, x).expect("x > 15"),
            j_hankel(1.0, x).expect("x > 15"),
        )
    }
}

fn j_recur_up(twice_nu: i32, x: f64) -> f64 {
    let half = twice_nu % 2 != 0;
    let (mut jm, mut j) = base_pair(half, x);
    let mut t = if half { 1 } else { 0 }; // 2*current order of `jm`
    let target = twice_nu;
    if t == target {
        return jm;
    }
    t += 2;
    while t < target {
        let nu_cur = t as f64 / 2.0;
        let next = 2.0 * nu_cur / x * j - jm;
        jm = j;
        j = next;
        t += 2;
    }
    j
}

/// Miller's downward recurrence for x < nu (x > 15 in practice).
///
/// J_{nu-1} = (2 nu / x) J_nu - J_{nu+1}, run from well above nu down to the
/// base order, then normalized by the Neumann sum 1 = J_0 + 2 sum J_{2k}
/// (integer orders) or the trigonometric closed forms at +-1/2.
fn j_miller_down(twice_nu: i32, x: f64) -> f64 {
    let half = twice_nu % 2 != 0;
    let bottom = if half { 1 } else { 0 };
    // start well above both nu and x so the minimal solution dominates
    let start2 = twice_nu + 2 * (40 + (x as i32) / 8);
    let mut jp = 0.0f64; // J at order t2/2 + 1
    let mut j = 1e-30f64; // J at order t2/2
    let mut target_val = 0.0f64;
    let mut neumann = 0.0f64; // J_0 + 2 sum J_{2k} for integer normalization
    let mut t2 = start2;
    if t2 == twice_nu {
        target_val = j;
    }
    while t2 > bottom {
        // step j from order t2/2 to t2/2 - 1
        let jm = t2 as f64 / x * j - jp;
        jp = j;
        j = jm;
        t2 -= 2;
        if t2 == twice_nu {
            target_val = j;
        }
        if !half && t2 % 4 == 0 && t2 != start2 {
            neumann += if t2 == 0 { j } else { 2.0 * j };
        }
        if j.abs() > 1e250 {
            jp /= 1e250;
            j /= 1e250;
            target_val /= 1e250;
            neumann /= 1e250;
        }
    }
    if half {
        // j at order 1/2, jp at order 3/2; one more step down to -1/2
        let jmh = 1.0 / x * j - jp;
        let (s, c) = (j_half(x), j_minus_half(x));
        // normalize against the better-conditioned of sin/cos forms
        if c.abs() > s.abs() {
            target_val * c / jmh
        } else {
            target_val * s / j
        }
    } else {
        target_val / neumann
    }
}
