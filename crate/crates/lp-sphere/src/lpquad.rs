//! The LP bound evaluators and the band-limited quadrature identity
//!
//!   fhat(0) = (n/2)! 2^n / (pi^{n/2} r^n) f(0)
//!           + sum_m 4 lambda_m^{n-2} / ((n/2-1)! pi^{n/2} r^n J_{n/2-1}(lambda_m)^2)
//!                   f(lambda_m / (pi r)),
//!
//! valid for radial f with supp(fhat) in B_r(0); lambda_m are the positive
//! roots of J_{n/2}. Also: Dini-series interpolation recovering fhat inside
//! the support ball from the same kind of samples, the center-density bound
//! f(0)/(2^n fhat(0)), and its closed Bessel form j_{n/2}^n/((n/2)!^2 4^n).

use crate::error::{Error, Result};
use crate::quad::KahanSum;
use crate::radial::{radial_ft_tol, RadialFunction};
use crate::specfun::{ball_volume, bessel_j, gamma, omega_kernel, Order, RootTable};
use std::f64::consts::PI;

/// Nodes lambda_m/(pi r) and weights of the quadrature identity.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub n: u32,
    pub r: f64,
    pub w0: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// the roots lambda_m themselves (kept for the Dini series)
    pub lambdas: Vec<f64>,
}

/// Quadrature value together with the decay-envelope truncation estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub tail_est: f64,
}

/// Construct the rule with M nodes.
pub fn bgf_rule(n: u32, r: f64, m: usize) -> Result<QuadratureRule> {
    if n < 1 || !(r > 0.0) || m < 1 {
        return Err(Error::Domain(format!(
            "bgf_rule requires n >= 1, r > 0, M >= 1 (got n={n}, r={r}, M={m})"
        )));
    }
    let nf = n as f64;
    let nu = Order::from_dimension(n); // n/2 - 1
    let mut lam_table = RootTable::new(Order::half_dimension(n));
    let w0 = gamma(nf / 2.0 + 1.0)? * 2f64.powi(n as i32) / (PI.powf(nf / 2.0) * r.powi(n as i32));
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut lambdas = Vec::with_capacity(m);
    let gamma_half = gamma(nf / 2.0)?;
    for i in 1..=m {
        let lam = lam_table.get(i)?;
        let jv = bessel_j(nu, lam)?;
        let w = 4.0 * lam.powi(n as i32 - 2)
            / (gamma_half * PI.powf(nf / 2.0) * r.powi(n as i32) * jv * jv);
        lambdas.push(lam);
        nodes.push(lam / (PI * r));
        weights.push(w);
    }
    Ok(QuadratureRule {
        n,
        r,
        w0,
        nodes,
        weights,
        lambdas,
    })
}

/// Truncation estimate sum_{m > M} w_m C (1 + node_m)^{-n-eps}, using
/// w_m <= 1.05 * 2 pi lambda^{n-1} / (Gamma(n/2) pi^{n/2} r^n) (from
/// J_nu(lambda_m)^2 >= 0.97 * 2/(pi lambda)) and root spacing >= pi.
fn bgf_tail_estimate(n: u32, r: f64, c: f64, eps: f64, lambda_last: f64) -> f64 {
    let nf = n as f64;
    let k = 1.05 * 2.0 * PI / (gamma(nf / 2.0).expect("n >= 1") * PI.powf(nf / 2.0) * r.powi(n as i32))
        * c
        * (PI * r).powf(nf + eps);
    k * lambda_last.powf(-eps) / (PI * eps)
}

/// Node count for which the decay-envelope tail bound drops below `tol`.
pub fn bgf_auto_node_count(n: u32, r: f64, c: f64, eps: f64, tol: f64) -> Result<usize> {
    let nf = n as f64;
    let k = 1.05 * 2.0 * PI / (gamma(nf / 2.0)? * PI.powf(nf / 2.0) * r.powi(n as i32))
        * c
        * (PI * r).powf(nf + eps);
    let lam_needed = (k / (PI * eps * tol)).powf(1.0 / eps);
    let m = (lam_needed / PI).ceil().max(8.0) as usize;
    if m > 200_000 {
        return Err(Error::Resource {
            what: "bgf node count".into(),
            completed: format!("would need ~{m} nodes for tail {tol:e}"),
        });
    }
    Ok(m)
}

/// w0 f(0) + sum_m w_m f(node_m), plus the decay-envelope tail estimate.
/// Requires the band limit (if the contract `= fhat(0)` is wanted) to lie
/// within the rule radius.
pub fn bgf_apply(rule: &QuadratureRule, f: &RadialFunction) -> Result<QuadratureResult> {
    if f.dimension() != rule.n {
        return Err(Error::InvalidInput(format!(
            "function dimension {} vs rule dimension {}",
            f.dimension(),
            rule.n
        )));
    }
    match f.band_limit() {
        Some(b) if b <= rule.r * (1.0 + 1e-12) => {}
        Some(b) => {
            return Err(Error::Precondition {
                name: "band-limit".into(),
                detail: format!("supp(fhat) radius {b} exceeds rule radius {}", rule.r),
            })
        }
        None => {
            return Err(Error::Precondition {
                name: "band-limit".into(),
                detail: "the quadrature identity needs supp(fhat) in B_r".into(),
            })
        }
    }
    let mut acc = KahanSum::new();
    acc.add(rule.w0 * f.eval(0.0));
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc.add(w * f.eval(*x));
    }
    let d = f.decay();
    let tail_est = bgf_tail_estimate(rule.n, rule.r, d.c, d.eps, *rule.lambdas.last().unwrap());
    Ok(QuadratureResult {
        value: acc.value(),
        tail_est,
    })
}

/// Samples for the Dini interpolation: f(0) and f(lambda_m/(2 pi r)).
#[derive(Debug, Clone)]
pub struct DiniSamples {
    pub n: u32,
    pub r: f64,
    pub f0: f64,
    pub values: Vec<f64>,
    lambdas: Vec<f64>,
}

impl DiniSamples {
    pub fn from_function(n: u32, r: f64, m: usize, f: &RadialFunction) -> Result<Self> {
        let mut table = RootTable::new(Order::half_dimension(n));
        let mut values = Vec::with_capacity(m);
        let mut lambdas = Vec::with_capacity(m);
        for i in 1..=m {
            let lam = table.get(i)?;
            lambdas.push(lam);
            values.push(f.eval(lam / (2.0 * PI * r)));
        }
        Ok(DiniSamples {
            n,
            r,
            f0: f.eval(0.0),
            values,
            lambdas,
        })
    }
}

/// Recover fhat(r u), u in [0, 1), from the truncated Dini series
///
///   2 pi fhat(ru) r^{nu+2} = 2 Gamma(nu+2)/(pi r)^nu f(0)
///     + sum_m 2 (lambda_m/(2 pi r))^nu f(lambda_m/(2 pi r)) / J_nu(lambda_m)^2
///            * J_nu(lambda_m u)/u^nu,
///
/// with J_nu(lambda u)/u^nu continued through u = 0 by its limit.
pub fn dini_interpolate(samples: &DiniSamples, u: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!("u must lie in [0, 1), got {u}")));
    }
    let n = samples.n;
    let r = samples.r;
    let nu = Order::from_dimension(n);
    let nuf = nu.value();
    let mut acc = KahanSum::new();
    acc.add(2.0 * gamma(nuf + 2.0)? / (PI * r).powf(nuf) * samples.f0);
    for (lam, fv) in samples.lambdas.iter().zip(&samples.values) {
        let jnu = bessel_j(nu, *lam)?;
        // J_nu(lam u)/u^nu = lam^nu * Omega_nu((lam u / 2)^2)
        let arg = lam * u / 2.0;
        let kernel = lam.powf(nuf) * omega_kernel(nu, arg * arg)?;
        acc.add(2.0 * (lam / (2.0 * PI * r)).powf(nuf) * fv / (jnu * jnu) * kernel);
    }
    Ok(acc.value() / (2.0 * PI * r.powf(nuf + 2.0)))
}

/// Which closed form or pipeline produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    BesselClosedForm,
    GenericF,
}

impl BoundSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundSource::BesselClosedForm => "bessel-closed-form",
            BoundSource::GenericF => "generic-f",
        }
    }
}

/// A density bound with its center-density form; density = center density
/// times vol(B_1) (the stored conversion factor).
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub n: u32,
    pub density_bound: f64,
    pub center_density_bound: f64,
    pub conversion_factor: f64,
    pub source: BoundSource,
    /// where fhat(0) came from and its error estimate (generic-f only)
    pub fhat0_provenance: Option<String>,
    pub fhat0_est_error: f64,
    /// caller-supplied certificate tag for the fhat >= 0 hypothesis, which
    /// sampling cannot verify globally
    pub positivity_certificate: Option<String>,
}

/// fhat(0) with provenance: closed form or the numeric transform.
#[derive(Debug, Clone)]
pub struct Fhat0 {
    pub value: f64,
    pub est_error: f64,
    pub provenance: String,
}

impl Fhat0 {
    pub fn closed_form(value: f64, provenance: impl Into<String>) -> Self {
        Fhat0 {
            value,
            est_error: 0.0,
            provenance: provenance.into(),
        }
    }

    /// From the numeric radial transform at t = 0.
    pub fn from_transform(f: &RadialFunction, tol: f64) -> Result<Self> {
        let t = radial_ft_tol(f, 0.0, tol)?;
        Ok(Fhat0 {
            value: t.value,
            est_error: t.est_error,
            provenance: "radial_ft".into(),
        })
    }
}

/// Center-density bound f(0)/(2^n fhat(0)) for admissible f with
/// f <= 0 outside the unit ball (sampled + decay envelope) and fhat >= 0
/// (recorded via the caller's certificate, not verified globally).
pub fn lp_bound(
    f: &RadialFunction,
    fhat0: &Fhat0,
    positivity_certificate: impl Into<String>,
) -> Result<BoundResult> {
    let n = f.dimension();
    // hypothesis (1): f(x) <= 0 for |x| >= 1, sampled out to where the decay
    // envelope takes over
    let d = f.decay();
    let cutoff = 10.0f64.max((d.c / 1e-12).powf(1.0 / (n as f64 + d.eps))).min(1e4);
    for i in 0..1000 {
        let x = 1.0 + (cutoff - 1.0) * i as f64 / 999.0;
        let v = f.eval(x);
        if v > 1e-9 {
            return Err(Error::Precondition {
                name: "sign-condition".into(),
                detail: format!("f({x}) = {v:e} > 0; the bound needs f <= 0 for |x| >= 1"),
            });
        }
    }
    if !(fhat0.value > 0.0) {
        return Err(Error::Precondition {
            name: "fhat0-positive".into(),
            detail: format!("fhat(0) = {} must be positive", fhat0.value),
        });
    }
    let center = f.eval(0.0) / (2f64.powi(n as i32) * fhat0.value);
    let vn = ball_volume(n, 1.0);
    Ok(BoundResult {
        n,
        density_bound: center * vn,
        center_density_bound: center,
        conversion_factor: vn,
        source: BoundSource::GenericF,
        fhat0_provenance: Some(fhat0.provenance.clone()),
        fhat0_est_error: fhat0.est_error,
        positivity_certificate: Some(positivity_certificate.into()),
    })
}

/// The closed-form bound j_{n/2}^n / ((n/2)!^2 4^n) on packing density,
/// with its center-density counterpart.
pub fn bessel_bound(n: u32) -> Result<BoundResult> {
    if n < 1 {
        return Err(Error::Domain("bessel_bound requires n >= 1".into()));
    }
    let j = crate::specfun::bessel_root(Order::half_dimension(n), 1)?;
    let g = gamma(n as f64 / 2.0 + 1.0)?;
    let density = j.powi(n as i32) / (g * g * 4f64.powi(n as i32));
    let vn = ball_volume(n, 1.0);
    Ok(BoundResult {
        n,
        density_bound: density,
        center_density_bound: density / vn,
        conversion_factor: vn,
        source: BoundSource::BesselClosedForm,
        fhat0_provenance: None,
        fhat0_est_error: 0.0,
        positivity_certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{autocorr_fn, levensh_fn, Decay};
    use crate::specfun::bessel_root;

    #[test]
    fn weights_positive_and_scaling() {
        for n in 2..=8u32 {
            let rule = bgf_rule(n, 1.0, 200).unwrap();
            assert!(rule.w0 > 0.0);
            assert!(rule.weights.iter().all(|w| *w > 0.0), "n={n}");
            // nodes strictly increasing
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
            // r -> 2r scales w0 by 2^-n
            let rule2 = bgf_rule(n, 2.0, 8).unwrap();
            assert!((rule2.w0 - rule.w0 / 2f64.powi(n as i32)).abs() < 1e-12 * rule.w0);
        }
    }

    #[test]
    fn weight_asymptotics_stabilize() {
        // w_m * J_nu(lambda)^2 * Gamma(n/2) pi^{n/2} r^n / (4 lambda^{n-2}) = 1
        // exactly, and J^2 ~ 2/(pi lambda): w_m vs its asymptotic form
        let n = 4u32;
        let rule = bgf_rule(n, 1.5, 400).unwrap();
        let nf = n as f64;
        let asym = |lam: f64| {
            2.0 * PI * lam.powf(nf - 1.0)
                / (gamma(nf / 2.0).unwrap() * PI.powf(nf / 2.0) * 1.5f64.powi(4))
        };
        let r350 = rule.weights[349] / asym(rule.lambdas[349]);
        let r399 = rule.weights[399] / asym(rule.lambdas[399]);
        assert!((r350 - 1.0).abs() < 2e-3, "{r350}");
        assert!((r399 - 1.0).abs() < 2e-3);
        assert!((r399 - 1.0).abs() <= (r350 - 1.0).abs() + 1e-6);
    }

    #[test]
    fn n1_rule_is_exact_arithmetic() {
        // radius 3: w0 = 1/3, w_m = 2/3, nodes m/3
        let rule = bgf_rule(1, 3.0, 50).unwrap();
        assert!((rule.w0 - 1.0 / 3.0).abs() < 1e-14);
        for (i, (w, x)) in rule.weights.iter().zip(&rule.nodes).enumerate() {
            assert!((w - 2.0 / 3.0).abs() < 1e-12, "m={}", i + 1);
            assert!((x - (i as f64 + 1.0) / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_identity_autocorr_matched() {
        // band = rule radius: nodes are zeros of f, identity is exact
        for n in [2u32, 3, 5, 8] {
            let r = 2.0;
            let f = autocorr_fn(n, r);
            let rule = bgf_rule(n, r, 400).unwrap();
            let got = bgf_apply(&rule, &f).unwrap();
            let want = ball_volume(n, r / 2.0);
            assert!(
                (got.value - want).abs() < 1e-8 * want,
                "n={n}: {} vs {want}",
                got.value
            );
        }
    }

    #[test]
    fn quadrature_identity_interior_band() {
        // autocorr band r/2 applied to a radius-r rule: genuine infinite
        // sum, converging like 1/M
        let n = 3u32;
        let r = 2.0;
        let f = autocorr_fn(n, r / 2.0);
        let want = ball_volume(n, r / 4.0);
        let rule = bgf_rule(n, r, 30_000).unwrap();
        let got = bgf_apply(&rule, &f).unwrap();
        assert!(
            (got.value - want).abs() < 2e-4 * want,
            "{} vs {want} (tail est {:e})",
            got.value,
            got.tail_est
        );
        assert!(got.tail_est > (got.value - want).abs());
    }

    #[test]
    fn monotone_truncation() {
        let n = 3u32;
        let r = 2.0;
        let f = autocorr_fn(n, r / 2.0);
        let want = ball_volume(n, r / 4.0);
        let r100 = (bgf_apply(&bgf_rule(n, r, 100).unwrap(), &f).unwrap().value - want).abs();
        let r400 = (bgf_apply(&bgf_rule(n, r, 400).unwrap(), &f).unwrap().value - want).abs();
        assert!(r400 <= r100, "residual grew: {r100:e} -> {r400:e}");
    }

    #[test]
    fn band_limit_precondition() {
        let f = autocorr_fn(3, 2.0);
        let rule = bgf_rule(3, 1.0, 16).unwrap();
        assert!(matches!(
            bgf_apply(&rule, &f),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn levensh_equality_case() {
        // all nodes are zeros of the optimal function: fhat(0) = w0 f(0),
        // and that equals pi^{n/2}/Gamma(n/2+1) analytically
        for n in [1u32, 2, 4, 8] {
            let f = levensh_fn(n).unwrap();
            let rule = bgf_rule(n, f.band_limit().unwrap(), 300).unwrap();
            let got = bgf_apply(&rule, &f).unwrap();
            let w0f0 = rule.w0 * f.eval(0.0);
            assert!(
                (got.value - w0f0).abs() < 1e-12 * w0f0.abs(),
                "n={n}: node contributions should vanish"
            );
            let analytic = PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0).unwrap();
            assert!((w0f0 - analytic).abs() < 1e-10 * analytic, "n={n}");
        }
    }

    #[test]
    fn dini_recovers_autocorr_transform() {
        let n = 3u32;
        let r = 2.0;
        let f = autocorr_fn(n, r);
        let samples = DiniSamples::from_function(n, r, 400, &f).unwrap();
        // u = 0: fhat(0) = vol(B_{r/2})
        let got = dini_interpolate(&samples, 0.0).unwrap();
        let want = ball_volume(n, 1.0);
        assert!((got - want).abs() < 1e-6 * want, "{got} vs {want}");
        // fhat(r u) = chi * chi at radius ru: closed-form 3d overlap volume
        let overlap = |d: f64| {
            let rr = r / 2.0;
            if d >= 2.0 * rr {
                0.0
            } else {
                PI * (2.0 * rr - d).powi(2) * (d + 4.0 * rr) / 12.0
            }
        };
        for &u in &[0.2, 0.5, 0.8] {
            let got = dini_interpolate(&samples, u).unwrap();
            let want = overlap(r * u);
            assert!(
                (got - want).abs() < 1e-5 * ball_volume(n, 1.0),
                "u={u}: {got} vs {want}"
            );
        }
        // u -> 1^-: transform vanishes at the support edge
        let got = dini_interpolate(&samples, 0.999).unwrap();
        assert!(got.abs() < 1e-3);
    }

    #[test]
    fn dini_consistent_with_bgf() {
        let n = 2u32;
        let r = 1.5;
        let f = autocorr_fn(n, r);
        let samples = DiniSamples::from_function(n, r, 400, &f).unwrap();
        let dini0 = dini_interpolate(&samples, 0.0).unwrap();
        let rule = bgf_rule(n, r, 400).unwrap();
        let bgf = bgf_apply(&rule, &f).unwrap();
        assert!(
            (dini0 - bgf.value).abs() < 1e-6 * bgf.value,
            "{dini0} vs {}",
            bgf.value
        );
    }

    #[test]
    fn lp_bound_levensh_matches_bessel_closed_form() {
        for n in [1u32, 2, 3, 8] {
            let f = levensh_fn(n).unwrap();
            let fhat0 = Fhat0::from_transform(&f, 1e-9).unwrap();
            let b = lp_bound(&f, &fhat0, "levensh: fhat >= 0 by construction").unwrap();
            let closed = bessel_bound(n).unwrap();
            let rel = (b.center_density_bound - closed.center_density_bound).abs()
                / closed.center_density_bound;
            assert!(rel < 1e-7, "n={n}: rel diff {rel:e}");
        }
    }

    #[test]
    fn lp_bound_scaling_invariance() {
        let f = levensh_fn(3).unwrap();
        let fhat0 = Fhat0::from_transform(&f, 1e-9).unwrap();
        let b1 = lp_bound(&f, &fhat0, "cert").unwrap();
        let c = 2.5;
        let scaled = f.scaled(c);
        let fhat0s = Fhat0::closed_form(c * fhat0.value, "scaled transform");
        let b2 = lp_bound(&scaled, &fhat0s, "cert").unwrap();
        assert!((b1.density_bound - b2.density_bound).abs() < 1e-12 * b1.density_bound);
    }

    #[test]
    fn lp_bound_one_dimensional_triangle() {
        // f = max(0, 1-|x|): f <= 0 for |x| >= 1 (vanishes), fhat = sinc^2 >= 0,
        // f(0) = 1, fhat(0) = 1: center bound 1/2, sharp in dimension 1
        let tri = RadialFunction::new(
            1,
            |r| (1.0 - r).max(0.0),
            Decay { c: 4.0, eps: 9.0 },
            None,
        );
        let b = lp_bound(&tri, &Fhat0::closed_form(1.0, "integral of triangle"), "sinc^2 >= 0")
            .unwrap();
        assert!((b.center_density_bound - 0.5).abs() < 1e-14);
        assert!(b.center_density_bound >= 0.5 - 1e-15, "1-d sanity floor");
        assert!((b.density_bound - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lp_bound_rejects_sign_violation() {
        let f = autocorr_fn(3, 2.0); // f >= 0 everywhere, violates (1)
        let res = lp_bound(&f, &Fhat0::closed_form(1.0, "x"), "cert");
        assert!(matches!(res, Err(Error::Precondition { .. })));
    }

    #[test]
    fn optcor_inequality_strict_family() {
        // f_t = levensh - t * autocorr(band <= j/pi): still satisfies (1),
        // has positive node mass, so the bound strictly exceeds the closed
        // form; and never dips below it
        let n = 3u32;
        let lev = levensh_fn(n).unwrap();
        let band = lev.band_limit().unwrap();
        let closed = bessel_bound(n).unwrap();
        for &t in &[0.05, 0.2] {
            let ac = autocorr_fn(n, band).scaled(-t);
            let f = lev.add(&ac);
            let fhat0 = Fhat0::closed_form(
                PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0).unwrap()
                    - t * ball_volume(n, band / 2.0),
                "levensh closed form minus autocorr closed form",
            );
            let b = lp_bound(&f, &fhat0, "difference of certified transforms").unwrap();
            assert!(
                b.center_density_bound >= closed.center_density_bound - 1e-9,
                "t={t}"
            );
            assert!(
                b.center_density_bound > closed.center_density_bound + 1e-6,
                "t={t}: expected strict slack"
            );
        }
    }

    #[test]
    fn bessel_bound_values() {
        let b1 = bessel_bound(1).unwrap();
        assert!((b1.density_bound - 1.0).abs() < 1e-12, "{}", b1.density_bound);
        let b2 = bessel_bound(2).unwrap();
        assert!((b2.density_bound - 0.917_623_165_132_743).abs() < 1e-10);
        let b8 = bessel_bound(8).unwrap();
        assert!((b8.density_bound - 0.291_254_706_725_118).abs() < 1e-10);
        // soundness: strictly above the attained densities
        assert!(b1.density_bound >= 1.0 - 1e-12);
        assert!(b2.density_bound > PI / 12f64.sqrt());
        assert!(b8.density_bound > PI.powi(4) / 384.0);
    }

    #[test]
    fn bessel_bound_center_density_consistency() {
        for n in 1..=8u32 {
            let b = bessel_bound(n).unwrap();
            let j = bessel_root(Order::half_dimension(n), 1).unwrap();
            let g = gamma(n as f64 / 2.0 + 1.0).unwrap();
            let center = j.powi(n as i32)
                / (4f64.powi(n as i32) * g * PI.powf(n as f64 / 2.0));
            assert!((b.center_density_bound - center).abs() < 1e-12 * center);
            assert!(
                (b.density_bound - b.center_density_bound * b.conversion_factor).abs()
                    < 1e-12 * b.density_bound
            );
        }
    }

    #[test]
    fn auto_node_count_reasonable() {
        let f = levensh_fn(3).unwrap();
        let d = f.decay();
        let m = bgf_auto_node_count(3, f.band_limit().unwrap(), d.c, d.eps, 1e-10).unwrap();
        assert!(m >= 8 && m < 100_000, "M = {m}");
    }
}
