//! Special-function kernel: Gamma, Bessel J on the half-integer order grid,
//! Bessel roots, Laguerre polynomials, and the two radial kernels
//! omega_kernel and ball_ft used throughout the library.

mod bessel;
mod gamma;
mod laguerre;
mod roots;

pub use bessel::{bessel_j, bessel_j_deriv};
pub use gamma::{gamma, ln_gamma};
pub use laguerre::laguerre;
pub use roots::{bessel_root, RootTable};

use crate::error::{Error, Result};

/// Half-integer order nu, stored exactly as 2*nu.
///
/// Everything in this library uses nu = n/2 - 1 for integer dimension n, so
/// the half-integer grid is exact and closed forms/recurrences stay stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order {
    twice_nu: i32,
}

impl Order {
    /// nu = t/2; requires t >= -1 (nu > -1 for the Laguerre weight,
    /// nu >= -1/2 for the Bessel uniform-limit results).
    pub fn from_twice_nu(t: i32) -> Result<Self> {
        if t < -1 {
            return Err(Error::Domain(format!("order 2nu = {t} below -1")));
        }
        Ok(Order { twice_nu: t })
    }

    /// nu = n/2 - 1 for dimension n >= 1.
    pub fn from_dimension(n: u32) -> Self {
        Order {
            twice_nu: n as i32 - 2,
        }
    }

    /// The order n/2 itself (used for lambda_m = roots of J_{n/2}).
    pub fn half_dimension(n: u32) -> Self {
        Order { twice_nu: n as i32 }
    }

    pub fn integer(k: i32) -> Self {
        Order { twice_nu: 2 * k }
    }

    pub fn twice_nu(self) -> i32 {
        self.twice_nu
    }

    pub fn value(self) -> f64 {
        self.twice_nu as f64 / 2.0
    }

    pub fn plus_one(self) -> Self {
        Order {
            twice_nu: self.twice_nu + 2,
        }
    }

    pub fn minus_one(self) -> Result<Self> {
        Order::from_twice_nu(self.twice_nu - 2)
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice_nu % 2 == 0 {
            write!(f, "{}", self.twice_nu / 2)
        } else {
            write!(f, "{}/2", self.twice_nu)
        }
    }
}

/// omega_kernel(alpha, x) = x^{-alpha/2} J_alpha(2 sqrt(x)), the scale family
/// kernel (xy)^{-alpha/2} J_alpha(2 sqrt(xy)) at y = 1, with the removable
/// singularity at x = 0 filled in by the series value 1/Gamma(alpha+1).
///
/// Equivalently Sum_j (-x)^j / (j! Gamma(alpha+j+1)).
pub fn omega_kernel(alpha: Order, x: f64) -> Result<f64> {
    if alpha.value() <= -1.0 {
        return Err(Error::Domain("omega_kernel requires alpha > -1".into()));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "omega_kernel requires x >= 0, got {x}"
        )));
    }
    let a = alpha.value();
    if x < 1e-4 {
        // short series; avoids the 0/0 in the closed form
        let mut term = 1.0 / gamma(a + 1.0)?;
        let mut sum = term;
        for j in 1..=8 {
            let jf = j as f64;
            term *= -x / (jf * (a + jf));
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    let z = 2.0 * x.sqrt();
    Ok(bessel_j(alpha, z)? / x.powf(a / 2.0))
}

/// Radial Fourier transform of the indicator of a ball of radius R in R^n:
/// ball_ft(n, R, x) = J_{n/2}(2 pi R x) (R/x)^{n/2}, continued through x = 0
/// by vol(B_R) = pi^{n/2} R^n / Gamma(n/2+1).
///
/// Computed as (pi R^2)^{n/2} * omega_kernel(n/2, (pi R x)^2), which is the
/// same function with the 0/0 at small x already cancelled.
pub fn ball_ft(n: u32, radius: f64, x: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("ball radius must be > 0: {radius}")));
    }
    let alpha = Order::half_dimension(n);
    let u = std::f64::consts::PI * radius * x;
    let scale = (std::f64::consts::PI * radius * radius).powf(n as f64 / 2.0);
    Ok(scale * omega_kernel(alpha, u * u)?)
}

/// vol(B_R) in R^n.
pub fn ball_volume(n: u32, radius: f64) -> f64 {
    std::f64::consts::PI.powf(n as f64 / 2.0) * radius.powi(n as i32)
        / gamma(n as f64 / 2.0 + 1.0).expect("positive argument")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn omega_at_zero() {
        // 1/Gamma(alpha+1)
        let a = Order::from_twice_nu(3).unwrap();
        let got = omega_kernel(a, 0.0).unwrap();
        assert!((got - 1.0 / gamma(2.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn omega_half_integer_closed_form() {
        // alpha = 1/2, x = pi^2/4: J_{1/2}(pi) = sqrt(2/(pi*pi)) sin(pi) = 0
        let a = Order::from_twice_nu(1).unwrap();
        let got = omega_kernel(a, PI * PI / 4.0).unwrap();
        assert!(got.abs() < 1e-15);
        // alpha = 1/2, general point: (x)^{-1/4} J_{1/2}(2 sqrt x)
        let x = 0.7f64;
        let want = x.powf(-0.25) * (2.0 / (PI * 2.0 * x.sqrt())).sqrt() * (2.0 * x.sqrt()).sin();
        assert!((omega_kernel(a, x).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn omega_vanishes_at_bessel_root() {
        // alpha = 0, x = (j_{0,1}/2)^2
        let a = Order::integer(0);
        let j01 = bessel_root(a, 1).unwrap();
        let got = omega_kernel(a, j01 * j01 / 4.0).unwrap();
        assert!(got.abs() < 1e-10);
    }

    #[test]
    fn omega_series_matches_closed_form_at_seam() {
        for t in [0i32, 1, 2, 6] {
            let a = Order::from_twice_nu(t).unwrap();
            let below = omega_kernel(a, 1e-4 - 1e-14).unwrap();
            let above = omega_kernel(a, 1e-4 + 1e-14).unwrap();
            // genuine slope over the 2e-14 gap is below 1e-13
            assert!((below - above).abs() < 1e-13, "2alpha={t}");
        }
    }

    #[test]
    fn ball_ft_volume_limit() {
        for n in 1..=8u32 {
            let r = 0.75;
            let got = ball_ft(n, r, 0.0).unwrap();
            assert!((got - ball_volume(n, r)).abs() < 1e-13 * got.abs().max(1.0));
        }
    }

    #[test]
    fn ball_ft_dimension_one_is_sinc() {
        // n=1, R=1/2: sin(pi x)/(pi x)
        for &x in &[0.1, 0.5, 1.3, 4.75] {
            let got = ball_ft(1, 0.5, x).unwrap();
            let want = (PI * x).sin() / (PI * x);
            assert!((got - want).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn ball_ft_three_dim_closed_form() {
        // n=3, R=1, x=1: J_{3/2}(2 pi) * 1
        let want = bessel_j(Order::from_twice_nu(3).unwrap(), 2.0 * PI).unwrap();
        let got = ball_ft(3, 1.0, 1.0).unwrap();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn laguerre_orthogonality_small_degrees() {
        // <L_j, L_k> with weight x^alpha e^{-x} = delta_jk Gamma(j+alpha+1)/j!
        // via 200-point composite Gauss-Legendre on [0, 60] mapped panels
        let alpha = Order::integer(1);
        let a = alpha.value();
        let inner = |j: usize, k: usize| -> f64 {
            // composite Simpson out to x = 160, where x^17 e^{-x} is ~1e-30
            let mut s = 0.0;
            let nstep = 320_000;
            let h = 160.0 / nstep as f64;
            for i in 0..=nstep {
                let x = i as f64 * h;
                let w = if i == 0 || i == nstep {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                s += w * laguerre(j, alpha, x) * laguerre(k, alpha, x) * x.powf(a) * (-x).exp();
            }
            s * h / 3.0
        };
        for j in 0..=8usize {
            for k in j..=8usize {
                let got = inner(j, k);
                let want = if j == k {
                    gamma(j as f64 + a + 1.0).unwrap() / gamma(j as f64 + 1.0).unwrap()
                } else {
                    0.0
                };
                assert!((got - want).abs() < 1e-8, "j={j} k={k}: got {got}, want {want}");
            }
        }
    }

    #[test]
    fn laguerre_derivative_identity() {
        // (-1)^k/k! d^k/du^k (u^{-a-1} e^{-y/u})
        //   = u^{-a-1-k} e^{-y/u} L_k^a(y/u), checked by central differences
        let alpha = Order::integer(1);
        let a = alpha.value();
        let g = |u: f64, y: f64| u.powf(-a - 1.0) * (-y / u).exp();
        for &(u, y) in &[(1.0, 0.8), (1.5, 2.0), (2.0, 0.5), (0.8, 1.2)] {
            for k in 1..=3usize {
                // step balances truncation (h^2) against rounding (eps/h^k)
                let h = [1e-5, 1e-4, 4e-4][k - 1] * f64::max(u, 1.0);
                // central difference of order k
                let mut dk = 0.0;
                for i in 0..=k {
                    let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
                    let binom = match (k, i) {
                        (1, _) => [1.0, 1.0][i],
                        (2, _) => [1.0, 2.0, 1.0][i],
                        (3, _) => [1.0, 3.0, 3.0, 1.0][i],
                        _ => unreachable!(),
                    };
                    dk += sign * binom * g(u + (i as f64 - k as f64 / 2.0) * h, y);
                }
                dk /= h.powi(k as i32);
                let kfact = (1..=k).product::<usize>() as f64;
                let lhs = if k % 2 == 0 { dk } else { -dk } / kfact;
                let rhs = u.powf(-a - 1.0 - k as f64) * (-y / u).exp()
                    * laguerre(k, alpha, y / u);
                assert!(
                    (lhs - rhs).abs() < 1e-5 * rhs.abs().max(1.0),
                    "k={k} u={u} y={y}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn laguerre_to_bessel_limit_improves() {
        // sup_x |k^{-a} L_k^a(x/k) e^{-x/k} - omega(a, x)| shrinks from
        // k=100 to k=1000
        for t in [0i32, 1, 2, 6] {
            let alpha = Order::from_twice_nu(t).unwrap();
            let a = alpha.value();
            let sup = |k: usize| -> f64 {
                let kf = k as f64;
                let mut worst = 0.0f64;
                let mut x = 0.0;
                while x <= 50.0 {
                    let lhs = kf.powf(-a) * laguerre(k, alpha, x / kf) * (-x / kf).exp();
                    let rhs = omega_kernel(alpha, x).unwrap();
                    worst = worst.max((lhs - rhs).abs());
                    x += 0.5;
                }
                worst
            };
            let coarse = sup(100);
            let fine = sup(1000);
            assert!(
                fine < coarse,
                "2alpha={t}: sup at k=1000 ({fine:e}) not below k=100 ({coarse:e})"
            );
        }
    }
}
