//! Exact rational q-expansions for theta series of even unimodular lattices.
//!
//! Convention: coefficient k counts vectors of norm 2k (all series here are
//! modular forms for even lattices). Theta_8 is the Eisenstein series E4,
//! Theta_24 = E4^3 - 720 Delta, and Theta_72 is the rational combination
//!
//!   (79/1080) T24^3 + (1183/720) T24^2 T8^3
//!     - (91/180) T24 T8^6 - (91/432) T8^9,
//!
//! whose coefficients stay non-negative integers despite the minus signs.

use crate::error::{Error, Result};
use crate::lattices::ratmat::{format_rat, rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact power series in q, truncated inclusively at order `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
    trunc: usize,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let trunc = coeffs.len().saturating_sub(1);
        QSeries { coeffs, trunc }
    }

    pub fn zero(trunc: usize) -> Self {
        QSeries {
            coeffs: vec![Rat::zero(); trunc + 1],
            trunc,
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = QSeries::zero(trunc);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (0..=trunc)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        QSeries { coeffs, trunc }
    }

    /// Coefficient strings ("p" or "p/q") for machine-readable output.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }
}

/// Cauchy product truncated at min(a.trunc, b.trunc).
pub fn series_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let trunc = a.trunc.min(b.trunc);
    let mut coeffs = vec![Rat::zero(); trunc + 1];
    for i in 0..=trunc {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=trunc - i {
            if !b.coeffs[j].is_zero() {
                coeffs[i + j] += a.coeffs[i].clone() * b.coeffs[j].clone();
            }
        }
    }
    QSeries { coeffs, trunc }
}

fn series_pow(base: &QSeries, mut e: u32) -> QSeries {
    let mut acc = QSeries::one(base.trunc);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = series_mul(&b, &b);
        }
    }
    acc
}

/// E4 = 1 + 240 sum sigma_3(k) q^k; equals the theta series of E8.
pub fn eisenstein_e4(trunc: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); trunc + 1];
    coeffs[0] = Rat::one();
    for k in 1..=trunc {
        let mut s3 = BigInt::zero();
        for d in 1..=k {
            if k % d == 0 {
                let d = BigInt::from(d);
                s3 += &d * &d * &d;
            }
        }
        coeffs[k] = Rat::from_integer(s3 * BigInt::from(240));
    }
    QSeries {
        coeffs,
        trunc,
    }
}

/// Delta = q prod (1 - q^m)^24, by the pentagonal-number expansion of the
/// Euler product raised to the 24th power.
pub fn delta_cusp(trunc: usize) -> QSeries {
    let mut euler = QSeries::zero(trunc);
    let mut j: i64 = 0;
    loop {
        // generalized pentagonal numbers j(3j-1)/2 for j = 0, 1, -1, 2, -2, ...
        let exps = [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2];
        let mut any = false;
        for &e in &exps {
            if e >= 0 && (e as usize) <= trunc {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                euler.coeffs[e as usize] += rat(sign);
                any = true;
            }
        }
        if j > 0 && !any {
            break;
        }
        j += 1;
    }
    // dedupe the double-counted j = 0 term
    euler.coeffs[0] -= Rat::one();
    let p24 = series_pow(&euler, 24);
    // multiply by q: shift up one
    let mut coeffs = vec![Rat::zero(); trunc + 1];
    for k in 1..=trunc {
        coeffs[k] = p24.coeffs[k - 1].clone();
    }
    QSeries { coeffs, trunc }
}

/// Theta series of the Leech lattice: E4^3 - 720 Delta.
pub fn theta_leech(trunc: usize) -> QSeries {
    let e4 = eisenstein_e4(trunc);
    let e4_3 = series_pow(&e4, 3);
    let d = delta_cusp(trunc).scale(&rat(-720));
    e4_3.add(&d)
}

/// The extremal 72-dimensional q-expansion: (79/1080) T24^3
/// + (1183/720) T24^2 T8^3 - (91/180) T24 T8^6 - (91/432) T8^9.
pub fn theta72(trunc: usize) -> QSeries {
    let t8 = eisenstein_e4(trunc);
    let t24 = theta_leech(trunc);
    let t8_3 = series_pow(&t8, 3);
    let t8_6 = series_mul(&t8_3, &t8_3);
    let t8_9 = series_mul(&t8_6, &t8_3);
    let t24_2 = series_mul(&t24, &t24);
    let t24_3 = series_mul(&t24_2, &t24);

    let a = t24_3.scale(&Rat::new(79.into(), 1080.into()));
    let b = series_mul(&t24_2, &t8_3).scale(&Rat::new(1183.into(), 720.into()));
    let c = series_mul(&t24, &t8_6).scale(&Rat::new((-91).into(), 180.into()));
    let d = t8_9.scale(&Rat::new((-91).into(), 432.into()));
    a.add(&b).add(&c).add(&d)
}

/// Extremality summary of an even-lattice theta expansion.
#[derive(Debug, Clone)]
pub struct ExtremalityReport {
    /// 2 * (first non-zero index k > 0), i.e. the minimal non-zero norm.
    pub min_norm: Option<u64>,
    pub negative_coeffs: Vec<(usize, Rat)>,
    pub checked_up_to: usize,
}

pub fn extremality(s: &QSeries) -> ExtremalityReport {
    let min_norm = (1..=s.trunc)
        .find(|&k| !s.coeffs[k].is_zero())
        .map(|k| 2 * k as u64);
    let negative_coeffs = s
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_negative())
        .map(|(k, c)| (k, c.clone()))
        .collect();
    ExtremalityReport {
        min_norm,
        negative_coeffs,
        checked_up_to: s.trunc,
    }
}

/// The constant-term identity 79/1080 + 1183/720 - 91/180 - 91/432 = 1,
/// exactly (the unimodular constant term of theta72).
pub fn theta72_weight_sum() -> Rat {
    Rat::new(79.into(), 1080.into()) + Rat::new(1183.into(), 720.into())
        - Rat::new(91.into(), 180.into())
        - Rat::new(91.into(), 432.into())
}

/// Guard for using a q-expansion in place of enumerated shells.
pub fn checked_nonnegative_integer_counts(s: &QSeries) -> Result<Vec<BigInt>> {
    if !s.is_integral() {
        return Err(Error::InvalidInput(
            "q-expansion has non-integer coefficients".into(),
        ));
    }
    let mut out = Vec::with_capacity(s.trunc + 1);
    for c in &s.coeffs {
        if c.is_negative() {
            return Err(Error::InvalidInput(
                "q-expansion has negative coefficients".into(),
            ));
        }
        out.push(c.numer().clone());
    }
    Ok(out)
}
