//! Generalized Laguerre polynomials L_k^alpha by the three-term recurrence.

use super::Order;

/// L_k^alpha(x); exact (up to rounding) for all k via
/// (k+1) L_{k+1} = (2k + alpha + 1 - x) L_k - (k + alpha) L_{k-1}.
pub fn laguerre(k: usize, alpha: Order, x: f64) -> f64 {
    let a = alpha.value();
    if k == 0 {
        return 1.0;
    }
    let mut lm = 1.0f64;
    let mut l = 1.0 + a - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + a + 1.0 - x) * l - (jf + a) * lm) / (jf + 1.0);
        lm = l;
        l = next;
    }
    l
}
