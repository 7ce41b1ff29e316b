//! Balanced q-integers, q-factorials and Gaussian binomials.

use super::poly::LaurentPoly;
use super::unit::Unit;
use crate::error::{Error, Result};

/// `[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn qint(n: i64, q: &Unit) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::QRange(format!("qint needs n >= 0, got {n}")));
    }
    Ok((0..n)
        .map(|k| LaurentPoly::from_unit(&q.pow(n - 1 - 2 * k)))
        .sum())
}

/// `[n]_q` for any integer `n`, using `[-n] = -[n]`. Needed for `[lambda_i]`.
pub fn qint_signed(n: i64, q: &Unit) -> LaurentPoly {
    let p = qint(n.abs(), q).expect("non-negative argument");
    if n < 0 {
        -p
    } else {
        p
    }
}

pub fn qfact(n: i64, q: &Unit) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::QRange(format!("qfact needs n >= 0, got {n}")));
    }
    let mut acc = LaurentPoly::one();
    for p in 1..=n {
        acc = &acc * &qint(p, q)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n]! / ([p]! [n-p]!)`, built row by row from
/// `[m, k] = q^k [m-1, k] + q^(k-m) [m-1, k-1]`.
pub fn qbinom(n: i64, p: i64, q: &Unit) -> Result<LaurentPoly> {
    if n < 0 || p < 0 || p > n {
        return Err(Error::QRange(format!("qbinom needs 0 <= p <= n, got n={n}, p={p}")));
    }
    let p = p.min(n - p);
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let width = (m.min(p) + 1) as usize;
        let mut next = Vec::with_capacity(width);
        for k in 0..width as i64 {
            let mut x = LaurentPoly::zero();
            if let Some(a) = row.get(k as usize) {
                x = x + a.mul_unit(&q.pow(k));
            }
            if k > 0 {
                x = x + row[k as usize - 1].mul_unit(&q.pow(k - m));
            }
            next.push(x);
        }
        row = next;
    }
    Ok(row.swap_remove(p as usize))
}

/// `sum_{l=0}^{n} (-1)^l q^{l(1-n)} [n choose l]_q`, which vanishes for `n >= 1`.
pub fn gauss_vanish(n: i64, q: &Unit) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::QRange(format!("gauss_vanish needs n >= 1, got {n}")));
    }
    let mut acc = LaurentPoly::zero();
    for l in 0..=n {
        let mut u = q.pow(l * (1 - n));
        if l % 2 == 1 {
            u = u.neg();
        }
        acc = acc + qbinom(n, l, q)?.mul_unit(&u);
    }
    Ok(acc)
}
