//! Elementary arithmetic functions, generic over the integer type.
//!
//! Everything here uses trial division. Inputs in this crate stay well below
//! the point where that matters.

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<T> {
    entries: Vec<(T, u32)>,
}

impl<T: IntScalar> Factorization<T> {
    pub fn entries(&self) -> &[(T, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.entries.len()
    }

    pub fn num_divisors(&self) -> T {
        self.entries
            .iter()
            .fold(T::one(), |acc, (_, e)| acc * from_u32::<T>(e + 1))
    }

    /// Reconstructs the factored integer.
    pub fn product(&self) -> T {
        self.entries
            .iter()
            .fold(T::one(), |acc, (p, e)| acc * pow(p, *e))
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<T> {
        let mut divs = vec![T::one()];
        for (p, e) in &self.entries {
            let current = divs.clone();
            let mut pk = T::one();
            for _ in 0..*e {
                pk = pk * p.clone();
                divs.extend(current.iter().map(|d| d.clone() * pk.clone()));
            }
        }
        divs.sort();
        divs
    }
}

fn from_u32<T: IntScalar>(n: u32) -> T {
    T::from_u32(n).expect("small constant fits every integer type")
}

pub(crate) fn pow<T: IntScalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

fn require_positive<T: IntScalar>(n: &T, what: &str) -> Result<()> {
    if *n <= T::zero() {
        return Err(Error::InvalidArgument(format!(
            "{what} requires n >= 1, got {n:?}"
        )));
    }
    Ok(())
}

pub fn factorize<T: IntScalar>(n: &T) -> Result<Factorization<T>> {
    require_positive(n, "factorize")?;
    let mut rest = n.clone();
    let mut entries = Vec::new();
    let two = from_u32::<T>(2);
    let mut p = two.clone();
    while p.clone() * p.clone() <= rest {
        let mut e = 0u32;
        loop {
            let (quo, rem) = rest.div_rem(&p);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            e += 1;
        }
        if e > 0 {
            entries.push((p.clone(), e));
        }
        p = if p == two {
            from_u32(3)
        } else {
            p + two.clone()
        };
    }
    if !rest.is_one() {
        entries.push((rest, 1));
    }
    Ok(Factorization { entries })
}

pub fn is_prime<T: IntScalar>(n: &T) -> bool {
    if *n <= T::one() {
        return false;
    }
    match factorize(n) {
        Ok(f) => f.entries.len() == 1 && f.entries[0].1 == 1,
        Err(_) => false,
    }
}

pub(crate) fn require_prime<T: IntScalar>(ell: &T) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{ell:?} is not prime")))
    }
}

/// Möbius function.
pub fn mobius<T: IntScalar>(n: &T) -> Result<i8> {
    let f = factorize(n)?;
    if f.entries.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.omega() % 2 == 0 { 1 } else { -1 })
}

/// Euler's totient.
pub fn totient<T: IntScalar>(n: &T) -> Result<T> {
    let f = factorize(n)?;
    let mut phi = n.clone();
    for (p, _) in &f.entries {
        phi = phi / p.clone() * (p.clone() - T::one());
    }
    Ok(phi)
}

/// Number of distinct primes dividing `n`.
pub fn omega<T: IntScalar>(n: &T) -> Result<usize> {
    Ok(factorize(n)?.omega())
}

pub fn num_divisors<T: IntScalar>(n: &T) -> Result<T> {
    Ok(factorize(n)?.num_divisors())
}

/// Positive divisors of `n`, ascending.
pub fn divisors<T: IntScalar>(n: &T) -> Result<Vec<T>> {
    Ok(factorize(n)?.divisors())
}

/// `ell`-adic valuation of a nonzero integer, normalized so `v(ell) = 1`.
pub fn padic_valuation<T: IntScalar>(ell: &T, n: &T) -> Result<u32> {
    require_prime(ell)?;
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "valuation of 0 is infinite".to_string(),
        ));
    }
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (quo, rem) = rest.div_rem(ell);
        if !rem.is_zero() {
            return Ok(k);
        }
        rest = quo;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&1u64).unwrap(), 1);
        assert_eq!(mobius(&6u64).unwrap(), 1);
        assert_eq!(mobius(&12u64).unwrap(), 0);
        assert_eq!(mobius(&30u64).unwrap(), -1);
        assert!(mobius(&0u64).is_err());
        assert!(mobius(&-5i64).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(&1u64).unwrap(), 1);
        assert_eq!(totient(&6u64).unwrap(), 2);
        let by_count = (1..=15u64).filter(|k| k.gcd(&15) == 1).count() as u64;
        assert_eq!(by_count, 8);
        assert_eq!(totient(&15u64).unwrap(), by_count);
        assert!(totient(&0i32).is_err());
    }

    #[test]
    fn omega_and_divisor_count() {
        assert_eq!(omega(&1u64).unwrap(), 0);
        assert_eq!(omega(&6u64).unwrap(), 2);
        assert_eq!(omega(&8u64).unwrap(), 1);
        assert_eq!(num_divisors(&1u64).unwrap(), 1);
        let enumerated = (1..=12u64).filter(|d| 12 % d == 0).count() as u64;
        assert_eq!(num_divisors(&12u64).unwrap(), enumerated);
        assert_eq!(num_divisors(&7u64).unwrap(), 2);
        assert_eq!(divisors(&12u64).unwrap(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&2u64, &12).unwrap(), 2);
        assert_eq!(padic_valuation(&3u64, &7).unwrap(), 0);
        assert_eq!(padic_valuation(&5u64, &250).unwrap(), 3);
        assert_eq!(padic_valuation(&3i64, &-18).unwrap(), 2);
        assert!(padic_valuation(&2u64, &0).is_err());
        assert!(padic_valuation(&4u64, &8).is_err());
        let big = BigInt::from(3).pow(40u32) * BigInt::from(7);
        assert_eq!(padic_valuation(&BigInt::from(3), &big).unwrap(), 40);
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&1u64).unwrap().is_empty());
        assert_eq!(factorize(&12u64).unwrap().entries(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(&97u64).unwrap().entries(), &[(97, 1)]);
        assert!(factorize(&0u64).is_err());
    }

    #[test]
    fn divisor_sums_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            let divs = divisors(&n).unwrap();
            let mu_sum: i64 = divs.iter().map(|d| mobius(d).unwrap() as i64).sum();
            assert_eq!(mu_sum, i64::from(n == 1), "mobius sum at {n}");
            let phi_sum: u64 = divs.iter().map(|d| totient(d).unwrap()).sum();
            assert_eq!(phi_sum, n, "totient sum at {n}");
        }
    }

    proptest! {
        #[test]
        fn factorization_round_trips(n in 1u64..5_000_000) {
            let f = factorize(&n).unwrap();
            prop_assert_eq!(f.product(), n);
            let primes: Vec<u64> = f.entries().iter().map(|e| e.0).collect();
            prop_assert!(primes.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(primes.iter().all(is_prime));
        }

        #[test]
        fn valuation_is_additive(a in 1i64..1_000_000, b in 1i64..1_000_000, sa: bool, ell_idx in 0usize..4) {
            let ell = [2i64, 3, 5, 7][ell_idx];
            let a = if sa { -a } else { a };
            let lhs = padic_valuation(&ell, &(a * b)).unwrap();
            prop_assert_eq!(lhs, padic_valuation(&ell, &a).unwrap() + padic_valuation(&ell, &b).unwrap());
        }
    }
}
