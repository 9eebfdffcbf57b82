//! Lattice vector enumeration below a norm bound (Fincke-Pohst with the
//! Schnorr-Euchner interval walk).
//!
//! The search tree is pruned with f64 arithmetic on safety-inflated bounds
//! (no vector below the bound can be missed); every accepted vector's norm
//! is recomputed exactly — in integer arithmetic when the Gram matrix is
//! integral, in rational arithmetic otherwise — so counts and shell norms
//! are exact.

use super::ratmat::{ldl, quadratic_form, rat_to_f64, Rat};
use crate::error::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) struct Enumerator<'a> {
    gram: &'a [Vec<Rat>],
    gram_i64: Option<Vec<Vec<i64>>>,
    lt: Vec<Vec<f64>>, // lt[i][j] = L[j][i] for j > i
    d: Vec<f64>,
    n: usize,
}

/// A vector visited by the enumeration: integer coefficients and the exact
/// norm of x + shift.
pub(crate) struct Visit<'v> {
    pub coords: &'v [i64],
    pub norm: Rat,
}

impl<'a> Enumerator<'a> {
    pub fn new(gram: &'a [Vec<Rat>]) -> Result<Self> {
        let n = gram.len();
        let (l, d) = ldl(gram)?;
        let mut lt = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                lt[i][j] = rat_to_f64(&l[j][i]);
            }
        }
        let d: Vec<f64> = d.iter().map(rat_to_f64).collect();
        let gram_i64 = if gram
            .iter()
            .all(|row| row.iter().all(|x| x.denom().to_i64() == Some(1)))
        {
            Some(
                gram.iter()
                    .map(|row| row.iter().map(|x| x.numer().to_i64().unwrap()).collect())
                    .collect(),
            )
        } else {
            None
        };
        Ok(Enumerator {
            gram,
            gram_i64,
            lt,
            d,
            n,
        })
    }

    /// Visit every x in Z^n with (x + shift)^T G (x + shift) <= bound.
    /// `budget` caps the number of accepted vectors.
    pub fn run(
        &self,
        bound: &Rat,
        shift: Option<&[Rat]>,
        budget: u64,
        mut visit: impl FnMut(Visit<'_>),
    ) -> Result<u64> {
        let n = self.n;
        let bound_f = rat_to_f64(bound);
        let slack = 1e-6 + 1e-9 * bound_f.abs();
        let shift_f: Vec<f64> = match shift {
            Some(v) => v.iter().map(rat_to_f64).collect(),
            None => vec![0.0; n],
        };
        // exact pieces for the shifted norm: (x+v)^T G (x+v) =
        // x^T G x + 2 x . (G v) + v^T G v
        let exact_shift = shift.map(|v| {
            let gv: Vec<Rat> = (0..n)
                .map(|i| {
                    let mut s = Rat::zero();
                    for j in 0..n {
                        s += self.gram[i][j].clone() * v[j].clone();
                    }
                    s
                })
                .collect();
            let mut vgv = Rat::zero();
            for i in 0..n {
                vgv += v[i].clone() * gv[i].clone();
            }
            (gv, vgv)
        });

        let mut coords = vec![0i64; n];
        let mut centers = vec![0.0f64; n]; // c_i = sum_{j>i} lt[i][j] z_j
        let mut partial = vec![0.0f64; n + 1]; // partial[i] = sum_{k >= i} term_k
        let mut accepted = 0u64;

        // iterative depth-first walk
        let mut stack: Vec<Frame> = Vec::with_capacity(n);
        let top = n - 1;
        partial[top + 1] = 0.0;
        let frame = self.make_frame(top, 0.0, bound_f + slack, &shift_f);
        stack.push(frame);
        'outer: while !stack.is_empty() {
            let depth = stack.len();
            let i = top + 1 - depth; // level of this frame
            let f = stack.last_mut().expect("non-empty");
            if f.cur > f.hi {
                stack.pop();
                continue;
            }
            let xi = f.cur;
            f.cur += 1;
            coords[i] = xi;
            let zi = xi as f64 + shift_f[i] + centers[i];
            let term = self.d[i] * zi * zi;
            let rem = bound_f + slack - partial[i + 1];
            if term > rem {
                continue;
            }
            partial[i] = partial[i + 1] + term;
            if i == 0 {
                // exact acceptance
                let norm = match (&self.gram_i64, &exact_shift) {
                    (Some(gi), None) => {
                        let mut s: i128 = 0;
                        for a in 0..n {
                            if coords[a] == 0 {
                                continue;
                            }
                            for b in 0..n {
                                if coords[b] != 0 {
                                    s += gi[a][b] as i128 * coords[a] as i128 * coords[b] as i128;
                                }
                            }
                        }
                        Rat::from_integer(s.into())
                    }
                    _ => {
                        let mut s = quadratic_form(self.gram, &coords, &coords);
                        if let Some((gv, vgv)) = &exact_shift {
                            let mut cross = Rat::zero();
                            for (a, &c) in coords.iter().enumerate() {
                                if c != 0 {
                                    cross += gv[a].clone() * Rat::from_integer(c.into());
                                }
                            }
                            s += cross.clone() + cross + vgv.clone();
                        }
                        s
                    }
                };
                if norm <= *bound {
                    accepted += 1;
                    if accepted > budget {
                        return Err(Error::Resource {
                            what: "lattice enumeration".into(),
                            completed: format!("budget of {budget} vectors exhausted"),
                        });
                    }
                    visit(Visit {
                        coords: &coords,
                        norm,
                    });
                }
                continue;
            }
            // descend: compute center for level i-1
            let lower = i - 1;
            let mut c = 0.0;
            for j in lower + 1..n {
                c += self.lt[lower][j] * (coords[j] as f64 + shift_f[j]);
            }
            centers[lower] = c;
            let frame = self.make_frame(lower, c, rem - term, &shift_f);
            stack.push(frame);
            if stack.len() > n {
                // cannot happen; defensive
                break 'outer;
            }
        }
        Ok(accepted)
    }

    fn make_frame(&self, level: usize, center: f64, rem: f64, shift_f: &[f64]) -> Frame {
        let s = (rem.max(0.0) / self.d[level]).sqrt() + 1e-7;
        let mid = -shift_f[level] - center;
        Frame {
            hi: (mid + s).floor() as i64,
            cur: (mid - s).ceil() as i64,
        }
    }
}

/// Candidate range at one level of the walk.
struct Frame {
    hi: i64,
    cur: i64,
}

#[cfg(test)]
mod tests {
    use super::super::ratmat::rat;
    use super::*;

    fn ident(n: usize) -> Vec<Vec<Rat>> {
        (0..n)
            .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
            .collect()
    }

    #[test]
    fn z1_shells() {
        let g = ident(1);
        let e = Enumerator::new(&g).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        e.run(&rat(4), None, 1_000, |v| {
            *counts.entry(v.norm.clone()).or_insert(0u64) += 1;
        })
        .unwrap();
        assert_eq!(counts.get(&rat(0)), Some(&1));
        assert_eq!(counts.get(&rat(1)), Some(&2));
        assert_eq!(counts.get(&rat(4)), Some(&2));
        assert_eq!(counts.get(&rat(2)), None);
    }

    #[test]
    fn z2_ball_count() {
        // r2(k) sums: points of Z^2 with norm <= 25
        let g = ident(2);
        let e = Enumerator::new(&g).unwrap();
        let mut total = 0u64;
        e.run(&rat(25), None, 10_000, |_| total += 1).unwrap();
        // Gauss circle: sum_{k<=25} r2(k) = 81
        assert_eq!(total, 81);
    }

    #[test]
    fn shifted_enumeration() {
        // Z^1 shifted by 1/2: norms (k+1/2)^2, nearest are 1/4, 1/4...
        let g = ident(1);
        let e = Enumerator::new(&g).unwrap();
        let half = Rat::new(1.into(), 2.into());
        let mut norms = vec![];
        e.run(&rat(3), Some(&[half]), 100, |v| norms.push(v.norm.clone()))
            .unwrap();
        norms.sort();
        assert_eq!(norms[0], Rat::new(1.into(), 4.into()));
        assert_eq!(norms[1], Rat::new(1.into(), 4.into()));
        assert_eq!(norms[2], Rat::new(9.into(), 4.into()));
        assert_eq!(norms.len(), 4); // +-1/2, +-3/2
    }

    #[test]
    fn budget_exceeded() {
        let g = ident(2);
        let e = Enumerator::new(&g).unwrap();
        let r = e.run(&rat(25), None, 10, |_| {});
        assert!(matches!(r, Err(Error::Resource { .. })));
    }
}
