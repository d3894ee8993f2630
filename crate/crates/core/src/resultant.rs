//! Resultants of integer polynomials.
//!
//! The baseline is the determinant of the Sylvester matrix by fraction-free
//! (Bareiss) elimination. [`resultant`] first reduces the larger operand
//! modulo the smaller one when the latter has a unit leading coefficient,
//! which keeps `Res(t^m - 1, Δ)` cheap for large `m`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Ring;

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size (m+n)².
/// Rows 0..n hold shifted copies of `f`, rows n..n+m those of `g`,
/// coefficients leading-first.
pub fn sylvester_matrix<C: Ring>(f: &Poly<C>, g: &Poly<C>) -> Vec<Vec<C>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, deg, copies) in [(f, m, n), (g, n, m)] {
        for shift in 0..copies {
            let mut row = vec![C::zero(); size];
            for (k, c) in src.coeffs().iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            debug_assert_eq!(src.coeffs().len(), deg + 1);
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
/// Every intermediate division is exact.
pub fn bareiss_determinant<C: Ring + Integer>(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    if n == 0 {
        return C::one();
    }
    let mut sign_flip = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return C::zero(),
            }
        }
        let pivot = a[k][k].clone();
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for (x, y) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                let num = pivot.clone() * x.clone() - lead.clone() * y.clone();
                *x = num / prev.clone();
            }
            row[k] = C::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        C::zero() - det
    } else {
        det
    }
}

/// `Res(f, g)` straight from the Sylvester determinant.
pub fn sylvester_resultant<C: Ring + Integer>(f: &Poly<C>, g: &Poly<C>) -> Result<C> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(bareiss_determinant(sylvester_matrix(f, g)))
}

fn is_unit<C: Ring + Integer>(c: &C) -> bool {
    c.is_one() || (C::zero() - c.clone()).is_one()
}

fn sign_pow<C: Ring>(base: &C, exp: usize) -> C {
    (0..exp).fold(C::one(), |acc, _| acc * base.clone())
}

/// Exact resultant `Res(f, g) = a_m^n b_n^m ∏ (α_i - β_j)`.
pub fn resultant<C: Ring + Integer>(f: &Poly<C>, g: &Poly<C>) -> Result<C> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    if n > m {
        // Res(f, g) = (-1)^{mn} Res(g, f)
        let r = resultant(g, f)?;
        return Ok(if (m * n) % 2 == 1 { C::zero() - r } else { r });
    }
    // now deg g <= deg f
    if n > 0 && is_unit(g.leading().unwrap()) && m >= n {
        // Res(g, f) = lc(g)^{m - deg r} Res(g, r) with r = f mod g
        let r = f.rem_monic(g)?;
        let flip = if (m * n) % 2 == 1 {
            C::zero() - C::one()
        } else {
            C::one()
        };
        if r.is_zero() {
            return Ok(C::zero());
        }
        let dr = r.degree().unwrap();
        let lc_factor = sign_pow(g.leading().unwrap(), m - dr);
        let reduced = if dr == 0 {
            // Res(g, c) = c^n
            sign_pow(&r.coeffs()[0], n)
        } else {
            sylvester_resultant(g, &r)?
        };
        return Ok(flip * lc_factor * reduced);
    }
    sylvester_resultant(f, g)
}
