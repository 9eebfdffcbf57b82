//! Exact rational linear algebra for Gram matrices.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational within f64 range")
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

/// "p/q" (or "p" when integral).
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_symmetric(g: &[Vec<Rat>]) -> bool {
    let n = g.len();
    g.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| g[i][j] == g[j][i]))
}

/// Unit lower-triangular L and positive diagonal d with G = L D L^T.
/// Fails (returns Err) unless G is symmetric positive definite.
pub fn ldl(g: &[Vec<Rat>]) -> Result<(Vec<Vec<Rat>>, Vec<Rat>)> {
    let n = g.len();
    if !is_symmetric(g) {
        return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
    }
    let mut l = vec![vec![Rat::zero(); n]; n];
    let mut d = vec![Rat::zero(); n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= l[i][k].clone() * l[i][k].clone() * d[k].clone();
        }
        if !di.is_positive() {
            return Err(Error::InvalidInput(format!(
                "Gram matrix is not positive definite (pivot {i})"
            )));
        }
        d[i] = di;
        l[i][i] = Rat::one();
        for j in i + 1..n {
            let mut v = g[j][i].clone();
            for k in 0..i {
                v -= l[j][k].clone() * l[i][k].clone() * d[k].clone();
            }
            l[j][i] = v / d[i].clone();
        }
    }
    Ok((l, d))
}

/// det(G) as the product of LDL pivots.
pub fn det(g: &[Vec<Rat>]) -> Result<Rat> {
    let (_, d) = ldl(g)?;
    Ok(d.into_iter().product())
}

/// Exact inverse by Gauss-Jordan (positive definite input).
pub fn inverse(g: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = g.len();
    let mut a: Vec<Vec<Rat>> = g.to_vec();
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidInput("singular matrix".into()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= p.clone();
        }
        for x in inv[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = a[col][c].clone() * f.clone();
                    a[r][c] -= t;
                    let t = inv[col][c].clone() * f.clone();
                    inv[r][c] -= t;
                }
            }
        }
    }
    Ok(inv)
}

/// Gram matrix B B^T of a rational basis given by rows.
pub fn gram_from_basis(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = rows.len();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = Rat::zero();
            for k in 0..rows[i].len() {
                s += rows[i][k].clone() * rows[j][k].clone();
            }
            g[i][j] = s.clone();
            g[j][i] = s;
        }
    }
    g
}

/// x^T G y for integer coefficient vectors.
pub fn quadratic_form(g: &[Vec<Rat>], x: &[i64], y: &[i64]) -> Rat {
    let n = g.len();
    let mut s = Rat::zero();
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            if y[j] != 0 {
                s += g[i][j].clone() * rat(x[i] * y[j]);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_i64(m: &[&[i64]]) -> Vec<Vec<Rat>> {
        m.iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn ldl_and_det() {
        let g = from_i64(&[&[2, -1], &[-1, 2]]);
        let (l, d) = ldl(&g).unwrap();
        assert_eq!(l[1][0], BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(d[0], rat(2));
        assert_eq!(d[1], BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(det(&g).unwrap(), rat(3));
    }

    #[test]
    fn inverse_roundtrip() {
        let g = from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&g).unwrap();
        // G * G^{-1} = I
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Rat::zero();
                for k in 0..3 {
                    s += g[i][k].clone() * inv[k][j].clone();
                }
                assert_eq!(s, if i == j { Rat::one() } else { Rat::zero() });
            }
        }
    }

    #[test]
    fn rejects_indefinite() {
        let g = from_i64(&[&[1, 3], &[3, 1]]);
        assert!(ldl(&g).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rat("-2").unwrap(), rat(-2));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
    }
}
