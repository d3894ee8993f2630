//! Dense univariate polynomials over a generic coefficient ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial is the empty vector and structural equality is
//! polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t^k - 1`
    pub fn binomial(k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = C::one();
        coeffs[0] = coeffs[0].clone() - C::one();
        Self::new(coeffs)
    }

    /// `1 + t + ... + t^(k-1)`, i.e. `(t^k - 1)/(t - 1)`.
    pub fn geometric(k: usize) -> Self {
        Self::new(vec![C::one(); k])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation in any ring the coefficients map into.
    pub fn eval_with<R, F>(&self, x: &R, lift: F) -> R
    where
        R: Ring,
        F: Fn(&C) -> R,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    /// Exact Horner evaluation at a ring element.
    pub fn eval(&self, x: &C) -> C {
        self.eval_with(x, C::clone)
    }

    /// Substitutes `t -> t + shift` (a Taylor shift), exactly.
    pub fn shift(&self, shift: &C) -> Self {
        // Horner with polynomial accumulator: acc = acc * (t + shift) + c
        let linear = Self::new(vec![shift.clone(), C::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.mul(&linear) + &Self::constant(c.clone());
        }
        acc
    }

    /// `t^deg * f(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Multiplicity of `t` as a factor, and the cofactor.
    pub fn split_t_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            k,
            Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()),
        )
    }
}

impl<C: Ring + ToPrimitive> Poly<C> {
    /// Floating-point Horner evaluation at a complex point.
    pub fn eval_complex<F: RealScalar>(&self, z: Complex<F>) -> Complex<F> {
        self.eval_with(&z, |c| Complex::new(F::cast(c), F::zero()))
    }
}

impl<C: Ring + FromPrimitive> Poly<C> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| C::from_usize(i).expect("degree fits coefficient type") * c.clone())
                .collect(),
        )
    }
}

impl<C: Ring + Integer> Poly<C> {
    /// Quotient and remainder when the leading coefficient of `divisor`
    /// divides every leading term met along the way; `NotDivisible` otherwise.
    fn long_div(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlen = divisor.coeffs.len();
        let lead = divisor.leading().ok_or(Error::DivByZero)?;
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![C::zero(); rem.len() - dlen + 1];
        for i in (0..quo.len()).rev() {
            let top = rem[i + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] = rem[i + j].clone() - q.clone() * d.clone();
                }
            }
            quo[i] = q;
        }
        rem.truncate(dlen - 1);
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Returns `h` with `self = divisor * h`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.long_div(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Remainder modulo a divisor with unit leading coefficient.
    pub fn rem_monic(&self, divisor: &Self) -> Result<Self> {
        match divisor.leading() {
            None => Err(Error::DivByZero),
            Some(l) if !(l.is_one() || (C::zero() - l.clone()).is_one()) => {
                Err(Error::InvalidArgument(
                    "rem_monic needs a divisor with leading coefficient +-1".into(),
                ))
            }
            Some(_) => Ok(self.long_div(divisor)?.1),
        }
    }

    /// gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| *l < C::zero()) {
            c = C::zero() - c;
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    /// Remainder of `self * lc(divisor)^k` for the smallest `k` making the
    /// division exact.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let dlen = divisor.coeffs.len();
        let mut rem = self.clone();
        while rem.coeffs.len() >= dlen {
            let shift = rem.coeffs.len() - dlen;
            let top = rem.leading().unwrap().clone();
            let mut next: Vec<C> = rem
                .coeffs
                .iter()
                .map(|c| c.clone() * lead.clone())
                .collect();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                next[shift + j] = next[shift + j].clone() - top.clone() * d.clone();
            }
            rem = Self::new(next);
        }
        rem
    }

    /// Primitive gcd over the integers, normalized with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }
}

impl<C: Ring + Integer + Signed> Poly<C> {
    /// Canonical representative modulo units `+-t^a`: strips powers of `t`
    /// and makes the leading coefficient positive.
    pub fn laurent_normalize(&self) -> Self {
        let (_, rest) = self.split_t_power();
        match rest.leading() {
            Some(l) if l.is_negative() => -rest,
            _ => rest,
        }
    }
}

impl<C: Ring + FromPrimitive + Integer> Poly<C> {
    /// Squarefree decomposition (Yun): returns `(g_1, g_2, ...)` with
    /// `f = c * prod g_i^i`, each `g_i` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        // Gauss's lemma keeps every quotient below integral: each divisor is
        // a primitive gcd that divides over Q.
        let mut out = Vec::new();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).expect("gcd divides f");
        let c = fp.exact_div(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            b = b.exact_div(&a).expect("gcd divides b");
            let c = d.exact_div(&a).expect("gcd divides d");
            out.push(a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|g| g.degree() == Some(0)) {
            out.pop();
        }
        out
    }
}

impl<C: Ring> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        Poly::mul(self, rhs)
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}*t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `r`-th cyclotomic polynomial, by dividing `t^r - 1` by `Φ_d` for
/// every proper divisor `d`.
pub fn cyclotomic<C>(r: u64) -> Result<Poly<C>>
where
    C: Ring + Integer,
{
    Ok(cyclotomic_table(r)?
        .pop()
        .expect("divisor list ends with r")
        .1)
}

/// `(d, Φ_d)` for every divisor `d` of `r`, ascending.
pub fn cyclotomic_table<C>(r: u64) -> Result<Vec<(u64, Poly<C>)>>
where
    C: Ring + Integer,
{
    let divs = arith::divisors(&r)?;
    let mut table: Vec<(u64, Poly<C>)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut phi = Poly::binomial(d as usize);
        for (e, phi_e) in &table {
            if d % e == 0 {
                phi = phi.exact_div(phi_e)?;
            }
        }
        table.push((d, phi));
    }
    Ok(table)
}
