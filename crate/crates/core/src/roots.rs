//! Simultaneous root finding for squarefree polynomials (Aberth–Ehrlich).

use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::scalar::{RealScalar, Ring};

const MAX_ITER: usize = 500;

fn horner_with_derivative<F: RealScalar>(
    coeffs: &[Complex<F>],
    z: Complex<F>,
) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `f`, assuming distinct roots. Repeated roots still
/// converge but only to about the square root of machine precision, so
/// callers wanting accuracy should split off multiplicities first.
pub fn complex_roots<C, F>(f: &Poly<C>) -> Vec<Complex<F>>
where
    C: Ring + ToPrimitive,
    F: RealScalar,
{
    let coeffs: Vec<Complex<F>> = f
        .coeffs()
        .iter()
        .map(|c| Complex::new(F::cast(c), F::zero()))
        .collect();
    let n = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    let lead = coeffs[n];
    // Fujiwara-style radius for the initial circle
    let radius = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(k, c)| (c / lead).norm().powf(F::one() / F::cast(&(n - k))))
        .fold(F::zero(), F::max)
        * F::cast(&2);
    let radius = if radius > F::zero() { radius } else { F::one() };
    let two_pi = F::TAU();
    let offset = F::cast(&0.4f64);
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let angle = two_pi * F::cast(&k) / F::cast(&n) + offset;
            Complex::from_polar(radius, angle)
        })
        .collect();

    let tol = F::epsilon() * F::cast(&4);
    for _ in 0..MAX_ITER {
        let mut max_step = F::zero();
        for i in 0..n {
            let (p, dp) = horner_with_derivative(&coeffs, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<F> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex::<F>::one() / (z[i] - z[j]))
                .fold(Complex::zero(), |a, b| a + b);
            let step = ratio / (Complex::<F>::one() - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] = z[i] - step;
                let rel = step.norm() / z[i].norm().max(F::one());
                max_step = max_step.max(rel);
            }
        }
        if max_step <= tol {
            break;
        }
    }
    z
}
