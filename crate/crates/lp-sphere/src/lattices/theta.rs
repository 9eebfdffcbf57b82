//! Theta-series machinery over exact shells: T(y) = sum over lattice
//! vectors of e^{-|v|^2 y}, the theta transformation residual, Poisson
//! summation checks with Gaussian test functions, Laguerre-coefficient
//! positivity (the computational content of the dual-theta positivity
//! lemma), center density extraction, and the dual-program feasibility
//! report.

use super::ratmat::{rat, rat_to_f64, Rat};
use super::{Lattice, ShellMap};
use crate::error::{Error, Result};
use crate::quad::KahanSum;
use crate::radial::RadialFunction;
use crate::specfun::{gamma, laguerre, Order};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// A theta-series value with its certified truncation tail bound.
#[derive(Debug, Clone, Copy)]
pub struct ThetaValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Counting bound: lattice points are sqrt(min_norm)/2-separated, so
/// #\{|v|^2 <= x\} <= ((sqrt(x) + rho)/rho)^n <= 2^{n-1}(x^{n/2} + rho^n)/rho^n.
/// Tail of sum e^{-norm y} over norms > big_n, by partial summation and the
/// incomplete-gamma bound Gamma(a, z) <= z^{a-1} e^{-z} / (1 - (a-1)/z).
fn theta_tail_bound(n: usize, rho: f64, big_n: f64, y: f64) -> f64 {
    let a = n as f64 / 2.0 + 1.0;
    let z = big_n * y;
    if z <= a {
        return f64::INFINITY;
    }
    let poly_part = {
        // y * int_N^inf t^{n/2} e^{-ty} dt = y^{-n/2} Gamma(n/2+1, Ny)
        let g = z.powf(a - 1.0) * (-z).exp() / (1.0 - (a - 1.0) / z);
        y.powf(-(n as f64) / 2.0) * g
    };
    let flat_part = rho.powi(n as i32) * (-z).exp();
    2f64.powi(n as i32 - 1) / rho.powi(n as i32) * (poly_part + flat_part)
}

/// Smallest shell bound big_n with theta_tail_bound <= tol.
fn norm_bound_for(n: usize, rho: f64, y: f64, tol: f64) -> f64 {
    let mut big_n = (n as f64 / 2.0 + 2.0) / y;
    for _ in 0..200 {
        if theta_tail_bound(n, rho, big_n, y) <= tol {
            return big_n;
        }
        big_n *= 1.25;
    }
    big_n
}

/// T(y) = sum over shells of count * e^{-norm y}, with certified tail.
/// Errors when the tail bound exceeds `tol`.
pub fn theta_t_tol(l: &Lattice, y: f64, shells: &ShellMap, tol: f64) -> Result<ThetaValue> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("theta requires y > 0, got {y}")));
    }
    let mut acc = KahanSum::new();
    for (norm, count) in &shells.entries {
        acc.add(count_to_f64(count) * (-rat_to_f64(norm) * y).exp());
    }
    let value = acc.value();
    let rho = match shells.min_norm() {
        Some(m) => rat_to_f64(m).sqrt() / 2.0,
        None => rat_to_f64(&l.min_norm()?).sqrt() / 2.0,
    };
    let tail_bound = theta_tail_bound(
        l.dimension(),
        rho,
        rat_to_f64(&shells.complete_up_to),
        y,
    );
    if !(tail_bound <= tol) {
        return Err(Error::Accuracy {
            what: format!("theta_T({}, y={y})", l.name()),
            partial: value,
            est_error: tail_bound,
        });
    }
    Ok(ThetaValue { value, tail_bound })
}

/// T(y) with the default tolerance 1e-12 * (1 + value-scale).
pub fn theta_t(l: &Lattice, y: f64, shells: &ShellMap) -> Result<ThetaValue> {
    let mut scale = 1.0f64;
    for (norm, count) in &shells.entries {
        scale += count_to_f64(count) * (-rat_to_f64(norm) * y).exp();
    }
    theta_t_tol(l, y, shells, 1e-12 * scale)
}

fn count_to_f64(c: &u64) -> f64 {
    *c as f64
}

/// Shells adequate for tail tolerance `tol` at exponent rate `y`.
///
/// E8 and Leech route through their exact q-expansions once the needed norm
/// exceeds what desk-scale enumeration reaches; the first shells of both are
/// cross-checked against enumeration elsewhere in the test suite.
pub fn shells_for(l: &Lattice, y: f64, tol: f64) -> Result<ShellMap> {
    let min_norm = l.min_norm()?;
    let rho = rat_to_f64(&min_norm).sqrt() / 2.0;
    let needed = norm_bound_for(l.dimension(), rho, y, tol);
    shells_up_to(l, needed)
}

/// Shells up to a possibly fractional norm bound, with the q-expansion fast
/// path for the deep even unimodular cases.
pub fn shells_up_to(l: &Lattice, needed: f64) -> Result<ShellMap> {
    let qseries_route = match l.name() {
        "E8" => needed > 40.0,
        "Leech" => needed > 4.0,
        _ => false,
    };
    if qseries_route {
        let k_max = (needed / 2.0).ceil() as usize;
        let series = match l.name() {
            "E8" => crate::qseries::eisenstein_e4(k_max),
            _ => crate::qseries::theta_leech(k_max),
        };
        let counts = crate::qseries::checked_nonnegative_integer_counts(&series)?;
        return Ok(shell_map_from_even_counts(&counts, needed));
    }
    let bound_rat = Rat::from_float(needed)
        .ok_or_else(|| Error::Domain(format!("bad shell bound {needed}")))?;
    l.shells(&bound_rat)
}

/// ShellMap from even-lattice q-expansion counts (coefficient k counts
/// vectors of norm 2k).
pub fn shell_map_from_even_counts(counts: &[BigInt], complete_up_to: f64) -> ShellMap {
    let mut entries = BTreeMap::new();
    for (k, c) in counts.iter().enumerate() {
        if !c.is_zero() {
            entries.insert(
                rat(2 * k as i64),
                c.to_u64().expect("shell count fits u64"),
            );
        }
    }
    ShellMap {
        entries,
        complete_up_to: Rat::from_float(complete_up_to.max(2.0 * (counts.len() - 1) as f64))
            .unwrap_or_else(|| rat(2 * (counts.len() as i64 - 1))),
    }
}

use num_traits::Zero;

/// |T_{L*}(y) / (2^n vol(R^n/L)) - (4 pi)^{-n/2} (pi^2/y)^{n/2} T_L(pi^2/y)|.
pub fn theta_transform_check(l: &Lattice, y: f64) -> Result<f64> {
    let n = l.dimension();
    let dual = l.dual();
    let covol = l.covolume();
    let y_dual = PI * PI / y;

    let tol = 2.5e-13;
    let shells_dual = shells_for(&dual, y, tol)?;
    let lhs = theta_t_tol(&dual, y, &shells_dual, tol)?.value / (2f64.powi(n as i32) * covol);

    let shells_l = shells_for(l, y_dual, tol)?;
    let rhs = (4.0 * PI).powf(-(n as f64) / 2.0)
        * y_dual.powf(n as f64 / 2.0)
        * theta_t_tol(l, y_dual, &shells_l, tol)?.value;
    Ok((lhs - rhs).abs())
}

/// Poisson summation residual for the Gaussian e^{-pi s r^2}:
/// |sum_{x in L} f(x+v) - (1/covol) sum_{t in L*} cos(2 pi <v,t>) fhat(t)|.
///
/// `v` is a coefficient vector in the lattice basis; the dual pairing of
/// coefficient vectors is then the plain integer dot product.
#[derive(Debug, Clone, Copy)]
pub struct PoissonReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tail_bound: f64,
}

pub fn poisson_check(l: &Lattice, gaussian_width: f64, v: &[Rat]) -> Result<PoissonReport> {
    let s = gaussian_width;
    if !(s > 0.0) {
        return Err(Error::Domain("Gaussian width must be positive".into()));
    }
    let n = l.dimension();
    if v.len() != n {
        return Err(Error::InvalidInput(format!(
            "shift vector has length {}, lattice dimension is {n}",
            v.len()
        )));
    }
    let tol = 1e-13;
    let min_norm = l.min_norm()?;
    let rho = rat_to_f64(&min_norm).sqrt() / 2.0;

    // LHS: sum e^{-pi s |x+v|^2}; shifted points keep the same separation
    let y_lhs = PI * s;
    let n_lhs = norm_bound_for(n, rho, y_lhs, tol);
    let bound = Rat::from_float(n_lhs).expect("finite bound");
    let shift = v.iter().all(|x| x.is_zero()).then_some(());
    let mut lhs_acc = KahanSum::new();
    l.enumerate_shifted(
        &bound,
        if shift.is_some() { None } else { Some(v) },
        60_000_000,
        |_, norm| {
            lhs_acc.add((-y_lhs * rat_to_f64(norm)).exp());
        },
    )?;
    let lhs = lhs_acc.value();
    let lhs_tail = theta_tail_bound(n, rho, n_lhs, y_lhs);

    // RHS: (1/covol) sum cos(2 pi v.t) s^{-n/2} e^{-pi |t|^2 / s}
    let dual = l.dual();
    let covol = l.covolume();
    let rho_dual = rat_to_f64(&dual.min_norm()?).sqrt() / 2.0;
    let y_rhs = PI / s;
    let n_rhs = norm_bound_for(n, rho_dual, y_rhs, tol);
    let bound_dual = Rat::from_float(n_rhs).expect("finite bound");
    let vf: Vec<f64> = v.iter().map(rat_to_f64).collect();
    let mut rhs_acc = KahanSum::new();
    dual.enumerate_shifted(&bound_dual, None, 60_000_000, |coords, norm| {
        let dot: f64 = coords
            .iter()
            .zip(&vf)
            .map(|(&c, &w)| c as f64 * w)
            .sum();
        rhs_acc.add((2.0 * PI * dot).cos() * (-y_rhs * rat_to_f64(norm)).exp());
    })?;
    let rhs = rhs_acc.value() * s.powf(-(n as f64) / 2.0) / covol;
    let rhs_tail = theta_tail_bound(n, rho_dual, n_rhs, y_rhs) * s.powf(-(n as f64) / 2.0) / covol;

    Ok(PoissonReport {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        tail_bound: lhs_tail + rhs_tail,
    })
}

/// k-th entries of sum over shells of count * L_k^{n/2-1}(norm y) e^{-norm y}
/// for k = 0..=k_max, each with a certified tail added to `tail_bound`.
/// The dual-positivity lemma asserts every entry is >= 0.
pub fn laguerre_positivity_check(
    l: &Lattice,
    k_max: usize,
    y: f64,
    tol: f64,
) -> Result<(Vec<f64>, f64)> {
    let n = l.dimension();
    let alpha = Order::from_dimension(n as u32);
    let a = alpha.value();
    // |L_k^a(x) e^{-x/2}| <= C(k+a, k) for a >= 0, twice that for a < 0
    let mut worst_sup = 0.0f64;
    for k in 0..=k_max {
        let binom = gamma(k as f64 + a + 1.0)? / (gamma(k as f64 + 1.0)? * gamma(a + 1.0)?);
        let b = if a >= 0.0 { binom } else { 2.0 * binom };
        worst_sup = worst_sup.max(b);
    }
    let min_norm = l.min_norm()?;
    let rho = rat_to_f64(&min_norm).sqrt() / 2.0;
    // tail of each entry <= sup * sum_{norm>N} e^{-norm y/2}
    let half_y = y / 2.0;
    let mut big_n = norm_bound_for(n, rho, half_y, tol / worst_sup);
    let mut tail = worst_sup * theta_tail_bound(n, rho, big_n, half_y);
    // cap enumeration size for the non-qseries route
    if l.name() != "E8" && l.name() != "Leech" {
        big_n = big_n.min(4000.0);
        tail = worst_sup * theta_tail_bound(n, rho, big_n, half_y);
    }
    let shells = shells_up_to(l, big_n)?;
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc = KahanSum::new();
        for (norm, count) in &shells.entries {
            let x = rat_to_f64(norm) * y;
            acc.add(count_to_f64(count) * laguerre(k, alpha, x) * (-x).exp());
        }
        out.push(acc.value());
    }
    Ok((out, tail))
}

/// Center density both ways: the algebraic value (min/4)^{n/2}/sqrt(det) and
/// the theta-limit value lim_{y->0+} (4 pi)^{-n/2} y^{n/2} T(y) of the
/// min-norm-1 rescaling, extrapolated by iterated Aitken steps along a
/// geometric error sequence (1/y in arithmetic progression).
#[derive(Debug, Clone, Copy)]
pub struct CenterDensityResult {
    pub algebraic: f64,
    pub limit_based: f64,
    pub extrapolation_est: f64,
}

pub fn center_density(l: &Lattice) -> Result<CenterDensityResult> {
    let n = l.dimension();
    let min_norm = l.min_norm()?;
    let det = rat_to_f64(&l.determinant());
    let algebraic = (rat_to_f64(&min_norm) / 4.0).powf(n as f64 / 2.0) / det.sqrt();

    // rescale to min norm 1: gram' = gram / min_norm
    let scale = rat(1) / min_norm.clone();
    let rescaled = l.scaled(&scale)?;

    // 1/y arithmetic progression; larger 1/y = closer to the limit but
    // exponentially more shells
    let delta = 0.12;
    let qseries_backed = l.name() == "E8" || l.name() == "Leech";
    let mut inv_y_max: f64 = 1.0;
    let rho = 0.5; // min norm 1 after rescale
    while !qseries_backed {
        let y_min = 1.0 / inv_y_max;
        let needed = norm_bound_for(n, rho, y_min, 1e-13);
        let count_est = est_ball_count(n, needed, rescaled.covolume());
        if count_est < 3.0e6 || inv_y_max <= 0.3 {
            break;
        }
        inv_y_max -= 0.06;
    }
    let points = 6;
    let inv_y0 = (inv_y_max - delta * (points as f64 - 1.0)).max(0.05);
    let y_min = 1.0 / (inv_y0 + delta * (points as f64 - 1.0));
    let needed = norm_bound_for(n, rho, y_min, 1e-13);
    // one enumeration (or q-expansion) on the original lattice covers all
    // y values; its shells rescale exactly
    let shells = shells_up_to(l, needed * rat_to_f64(&min_norm))?.scaled(&scale);

    let mut vals = Vec::with_capacity(points);
    for j in 0..points {
        let y = 1.0 / (inv_y0 + delta * j as f64);
        let t = theta_t_tol(&rescaled, y, &shells, 1e-11 * algebraic.max(1e-3))?;
        vals.push((4.0 * PI).powf(-(n as f64) / 2.0) * y.powf(n as f64 / 2.0) * t.value);
    }

    // iterated Aitken
    let mut seq = vals.clone();
    let mut prev_last = *seq.last().unwrap();
    for _ in 0..2 {
        if seq.len() < 3 {
            break;
        }
        let mut next = Vec::with_capacity(seq.len() - 2);
        for w in seq.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let den = (c - b) - (b - a);
            next.push(if den.abs() > 1e-300 {
                c - (c - b) * (c - b) / den
            } else {
                c
            });
        }
        prev_last = *seq.last().unwrap();
        seq = next;
    }
    let limit_based = *seq.last().unwrap();
    let est = (limit_based - prev_last).abs();
    if !(est <= 1e-4 * algebraic.max(1e-12)) {
        return Err(Error::Accuracy {
            what: format!("center_density limit extrapolation for {}", l.name()),
            partial: limit_based,
            est_error: est,
        });
    }
    Ok(CenterDensityResult {
        algebraic,
        limit_based,
        extrapolation_est: est,
    })
}

fn est_ball_count(n: usize, norm_bound: f64, covol: f64) -> f64 {
    let vn = PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0).expect("n >= 1");
    vn * norm_bound.powf(n as f64 / 2.0) / covol
}

/// Dual-program feasibility for the Poisson distribution of a lattice with
/// min norm >= 1: c = 1/covol, condition (2) from the minimum, and the
/// margin = min over tests of the truncated sum over non-zero dual vectors
/// of phi(|t|)/covol. For non-negative tests every omitted term is >= 0, so
/// the margin is a certified lower bound for the true slack.
#[derive(Debug, Clone)]
pub struct DualFeasibilityReport {
    pub c: f64,
    pub min_norm: Rat,
    pub margin: f64,
    pub test_set: String,
    pub truncated_at: f64,
}

pub fn dual_feasibility(
    l: &Lattice,
    tests: &[(String, RadialFunction)],
    up_to: f64,
) -> Result<DualFeasibilityReport> {
    let min_norm = l.min_norm()?;
    if min_norm < rat(1) {
        return Err(Error::Precondition {
            name: "min-norm >= 1".into(),
            detail: format!("lattice {} has min norm {min_norm} < 1", l.name()),
        });
    }
    let covol = l.covolume();
    let dual = l.dual();
    let bound = Rat::from_float(up_to).ok_or_else(|| Error::Domain("bad bound".into()))?;
    let dual_shells = dual.shells(&bound)?;
    let mut margin = f64::INFINITY;
    for (_, phi) in tests {
        let mut acc = KahanSum::new();
        for (norm, count) in &dual_shells.entries {
            if norm.is_zero() {
                continue;
            }
            acc.add(count_to_f64(count) * phi.eval(rat_to_f64(norm).sqrt()));
        }
        margin = margin.min(acc.value() / covol);
    }
    let names: Vec<&str> = tests.iter().map(|(n, _)| n.as_str()).collect();
    Ok(DualFeasibilityReport {
        c: 1.0 / covol,
        min_norm,
        margin,
        test_set: names.join(","),
        truncated_at: up_to,
    })
}
