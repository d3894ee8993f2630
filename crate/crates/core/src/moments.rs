//! Power sums of the roots of a torus knot polynomial, their generating
//! function and its residues.
//!
//! The roots of Δ_{p,q} are the pq-th roots of unity that are neither p-th
//! nor q-th roots of unity, so
//! `S_m = pq·1[pq|m] - p·1[p|m] - q·1[q|m] + 1`, periodic with period pq.
//! Roots of unity are carried as exact `(k, n)` pairs and only turned into
//! floats at evaluation time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;

use crate::alexander::TorusParams;
use crate::error::{Error, Result};
use crate::scalar::RealScalar;

/// `e^{2πik/n}`, stored reduced: `0 <= k < n`, `gcd(k, n) = 1` unless `k = 0`
/// (in which case `n = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("root of unity needs n >= 1".into()));
        }
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        Ok(RootOfUnity { k: k / g, n: n / g })
    }

    pub fn numerator(&self) -> u64 {
        self.k
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// `ξ^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Self {
        let n = self.n as i128;
        let k = (self.k as i128 * e as i128).rem_euclid(n);
        Self::new(k as i64, self.n).expect("n >= 1")
    }

    pub fn is_root_of(&self, m: u64) -> bool {
        m.is_multiple_of(self.n)
    }

    pub fn to_complex<F: RealScalar>(&self) -> Complex<F> {
        unit_circle(self.k, self.n)
    }
}

fn unit_circle<F: RealScalar>(k: u64, n: u64) -> Complex<F> {
    let angle = F::TAU() * F::cast(&k) / F::cast(&n);
    Complex::from_polar(F::one(), angle)
}

/// `S_m(p, q)` in closed form.
pub fn moment(params: &TorusParams, m: u64) -> Result<BigInt> {
    params.require_knot()?;
    Ok(BigInt::from(moment_kernel(params.p(), params.q(), m)))
}

pub(crate) fn moment_kernel(p: u64, q: u64, m: u64) -> i128 {
    let ind = |n: u64| i128::from(m.is_multiple_of(n));
    let pq = i128::from(p) * i128::from(q);
    let pq_divides = i128::from(u128::from(m) % (pq as u128) == 0);
    pq * pq_divides - i128::from(p) * ind(p) - i128::from(q) * ind(q) + 1
}

/// `Σ ζ^m` over the roots `ζ` directly, in floating point.
pub fn moment_bruteforce<F: RealScalar>(params: &TorusParams, m: u64) -> Result<Complex<F>> {
    params.require_knot()?;
    let (p, q) = (params.p(), params.q());
    let pq = p * q;
    let reduced = m % pq;
    Ok((0..pq)
        .filter(|k| k % p != 0 && k % q != 0)
        .map(|k| {
            unit_circle::<F>(
                (u128::from(k) * u128::from(reduced) % u128::from(pq)) as u64,
                pq,
            )
        })
        .fold(Complex::zero(), |acc, z| acc + z))
}

/// One full period of moments `S_0 .. S_{pq-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentRecord {
    params: TorusParams,
    values: Vec<BigInt>,
}

impl MomentRecord {
    pub fn new(params: &TorusParams) -> Result<Self> {
        params.require_knot()?;
        let period = params.p() * params.q();
        let values = (0..period)
            .map(|m| moment(params, m))
            .collect::<Result<_>>()?;
        Ok(MomentRecord {
            params: *params,
            values,
        })
    }

    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn period(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `Σ_m S_m ω^m` over one period.
    pub fn fourier<F: RealScalar>(&self, omega: RootOfUnity) -> Complex<F> {
        self.values
            .iter()
            .enumerate()
            .map(|(m, s)| omega.pow(m as i64).to_complex::<F>() * F::cast(s))
            .fold(Complex::zero(), |acc, z| acc + z)
    }
}

/// Mean and mean square of the moments over one period, as exact integers.
/// Both are theorems (0 and (p-1)(q-1)); a mismatch is reported as `Internal`.
pub fn mean_variance(record: &MomentRecord) -> Result<(BigInt, BigInt)> {
    let period = BigInt::from(record.period());
    let sum: BigInt = record.values.iter().sum();
    let squares: BigInt = record.values.iter().map(|s| s * s).sum();
    let (mean, mean_rem) = sum.div_rem(&period);
    let (variance, var_rem) = squares.div_rem(&period);
    if !mean_rem.is_zero() || !mean.is_zero() {
        return Err(Error::Internal(format!(
            "moment mean is {sum}/{period}, expected 0"
        )));
    }
    let expected = BigInt::from(record.params.root_count());
    if !var_rem.is_zero() || variance != expected {
        return Err(Error::Internal(format!(
            "moment variance is {squares}/{period}, expected {expected}"
        )));
    }
    Ok((mean, variance))
}

/// Poles closer than this (in `|1 - z^n|`) are refused.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// `G(z) = Σ S_m z^m = pq/(1-z^{pq}) - p/(1-z^p) - q/(1-z^q) + 1/(1-z)`.
pub fn generating_fn<F: RealScalar>(params: &TorusParams, z: Complex<F>) -> Result<Complex<F>> {
    params.require_knot()?;
    let (p, q) = (params.p(), params.q());
    let tol = F::cast(&POLE_TOLERANCE);
    let mut total = Complex::zero();
    for (n, c) in [
        (p * q, (p * q) as i64),
        (p, -(p as i64)),
        (q, -(q as i64)),
        (1, 1),
    ] {
        let denom = Complex::<F>::new(F::one(), F::zero()) - z.powu(n as u32);
        if denom.norm() < tol {
            return Err(Error::NearPole {
                tol: POLE_TOLERANCE,
            });
        }
        total = total + Complex::new(F::cast(&c), F::zero()) / denom;
    }
    Ok(total)
}

/// Residue of `G` at `ξ`: the sum of `-ξ^{-(pq-1)}`, `ξ^{-(p-1)}`,
/// `ξ^{-(q-1)}` and `-1`, each kept only when `ξ^{pq}`, `ξ^p`, `ξ^q`,
/// `ξ` respectively equals 1.
pub fn residue_at<F: RealScalar>(params: &TorusParams, xi: RootOfUnity) -> Result<Complex<F>> {
    params.require_knot()?;
    let (p, q) = (params.p(), params.q());
    if !xi.is_root_of(p * q) {
        return Err(Error::NotAPole {
            order: xi.order(),
            period: p * q,
        });
    }
    let mut total = Complex::zero();
    for (n, sign) in [(p * q, -1i64), (p, 1), (q, 1), (1, -1)] {
        if xi.is_root_of(n) {
            let term = xi.pow(-(n as i64 - 1)).to_complex::<F>();
            total = total + term * F::cast(&sign);
        }
    }
    Ok(total)
}

/// Residues of `G` at every pq-th root of unity. Entries with zero residue
/// are removable singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueTable<F> {
    params: TorusParams,
    entries: BTreeMap<RootOfUnity, Complex<F>>,
}

impl<F: RealScalar> ResidueTable<F> {
    pub fn new(params: &TorusParams) -> Result<Self> {
        params.require_knot()?;
        let pq = params.p() * params.q();
        let entries = (0..pq)
            .map(|k| {
                let xi = RootOfUnity::new(k as i64, pq)?;
                Ok((xi, residue_at(params, xi)?))
            })
            .collect::<Result<_>>()?;
        Ok(ResidueTable {
            params: *params,
            entries,
        })
    }

    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn entries(&self) -> &BTreeMap<RootOfUnity, Complex<F>> {
        &self.entries
    }

    /// Entries whose residue magnitude exceeds `tol`.
    pub fn poles(&self, tol: F) -> impl Iterator<Item = (&RootOfUnity, &Complex<F>)> {
        self.entries.iter().filter(move |(_, r)| r.norm() > tol)
    }

    /// `Σ |R(ω)|²`.
    pub fn energy(&self) -> F {
        self.entries
            .values()
            .fold(F::zero(), |acc, r| acc + r.norm_sqr())
    }
}

/// `|(p-1)(q-1) - Σ_{ω^{pq}=1} |R(ω)|²|`.
pub fn parseval_check<F: RealScalar>(params: &TorusParams) -> Result<F> {
    let table = ResidueTable::<F>::new(params)?;
    let variance = F::cast(&params.root_count());
    Ok((variance - table.energy()).abs())
}

/// Default tolerance for float comparisons at this `pq`: `1e-9` up to
/// `pq = 100`, then `1e-12·pq²`.
pub fn default_tolerance(params: &TorusParams) -> f64 {
    let pq = (params.p() * params.q()) as f64;
    if pq <= 100.0 {
        1e-9
    } else {
        (1e-12 * pq * pq).max(1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn params(p: u64, q: u64) -> TorusParams {
        TorusParams::new(p, q).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn closed_form_examples() {
        let t = params(2, 3);
        assert_eq!(moment(&t, 0).unwrap(), BigInt::from(2));
        assert_eq!(moment(&t, 2).unwrap(), BigInt::from(-1));
        assert_eq!(moment(&t, 1).unwrap(), BigInt::from(1));
        assert_eq!(moment(&params(2, 4), 1), Err(Error::LinkCase { d: 2 }));
    }

    #[test]
    fn brute_force_examples() {
        let t = params(2, 3);
        assert!((moment_bruteforce::<f64>(&t, 0).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert!((moment_bruteforce::<f64>(&t, 6).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert!(
            (moment_bruteforce::<f64>(&params(3, 5), 3).unwrap() - c(-2.0, 0.0)).norm() < 1e-12
        );
        assert_eq!(moment(&params(3, 5), 3).unwrap(), BigInt::from(-2));
        let single: Complex<f32> = moment_bruteforce(&t, 2).unwrap();
        assert!((single.re + 1.0).abs() < 1e-5);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for p in 1..=20u64 {
            for q in 1..=20u64 {
                let t = params(p, q);
                if !t.is_knot() {
                    continue;
                }
                for m in 0..=2 * p * q {
                    let exact = moment(&t, m).unwrap().to_f64().unwrap();
                    let brute: Complex<f64> = moment_bruteforce(&t, m).unwrap();
                    assert!((brute - c(exact, 0.0)).norm() < 1e-9, "({p},{q}) m={m}");
                }
            }
        }
    }

    #[test]
    fn periodicity() {
        let t = params(7, 9);
        for m in [0u64, 1, 7, 9, 63, 999_937, 1_000_000] {
            assert_eq!(moment(&t, m).unwrap(), moment(&t, m + 63).unwrap());
        }
    }

    #[test]
    fn mean_and_variance() {
        for (p, q, var) in [(2, 3, 2), (3, 5, 8), (2, 5, 4)] {
            let record = MomentRecord::new(&params(p, q)).unwrap();
            assert_eq!(
                mean_variance(&record).unwrap(),
                (BigInt::from(0), BigInt::from(var))
            );
        }
        let record = MomentRecord::new(&params(2, 3)).unwrap();
        let expect: Vec<BigInt> = [2, 1, -1, -2, -1, 1]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(record.values(), expect.as_slice());
    }

    #[test]
    fn generating_function_against_partial_sums() {
        for (t, z) in [(params(2, 3), c(0.5, 0.0)), (params(3, 5), c(0.0, 0.5))] {
            let mut partial = Complex::zero();
            let mut power = c(1.0, 0.0);
            for m in 0..=200u64 {
                partial += power * moment(&t, m).unwrap().to_f64().unwrap();
                power *= z;
            }
            assert!((generating_fn(&t, z).unwrap() - partial).norm() < 1e-9);
        }
        assert!((generating_fn(&params(2, 3), c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            generating_fn(&params(2, 3), c(-1.0, 0.0)),
            Err(Error::NearPole { .. })
        ));
    }

    /// `(z - ξ) G(z)` at `z = ξ(1 - h)`, approaching from inside the disc.
    fn numeric_residue(t: &TorusParams, xi: RootOfUnity) -> Complex<f64> {
        let x = xi.to_complex::<f64>();
        let h = 1e-6;
        let z = x * (1.0 - h);
        (z - x) * generating_fn(t, z).unwrap()
    }

    #[test]
    fn residues_against_limits() {
        let t = params(2, 3);
        let one = RootOfUnity::new(0, 1).unwrap();
        let sixth = RootOfUnity::new(1, 6).unwrap();
        let minus_one = RootOfUnity::new(1, 2).unwrap();
        assert!(residue_at::<f64>(&t, one).unwrap().norm() < 1e-15);
        let r6: Complex<f64> = residue_at(&t, sixth).unwrap();
        assert!((r6 + sixth.to_complex::<f64>()).norm() < 1e-12);
        assert!(residue_at::<f64>(&t, minus_one).unwrap().norm() < 1e-15);
        for k in 0..6 {
            let xi = RootOfUnity::new(k, 6).unwrap();
            let exact: Complex<f64> = residue_at(&t, xi).unwrap();
            assert!((numeric_residue(&t, xi) - exact).norm() < 1e-4, "k={k}");
        }
        let seventh = RootOfUnity::new(1, 7).unwrap();
        assert_eq!(
            residue_at::<f64>(&t, seventh),
            Err(Error::NotAPole {
                order: 7,
                period: 6
            })
        );
    }

    #[test]
    fn parseval_gap() {
        for p in 1..=100u64 {
            for q in 1..=100 / p {
                let t = params(p, q);
                if t.is_knot() {
                    let gap: f64 = parseval_check(&t).unwrap();
                    assert!(gap < 1e-9, "({p},{q}) gap {gap}");
                }
            }
        }
    }

    #[test]
    fn fourier_residue_link() {
        for (p, q) in [(2, 3), (3, 5), (4, 7), (2, 9)] {
            let t = params(p, q);
            let record = MomentRecord::new(&t).unwrap();
            let pq = p * q;
            for k in 0..pq {
                let omega = RootOfUnity::new(k as i64, pq).unwrap();
                let lhs: Complex<f64> = record.fourier(omega);
                let rhs = omega.pow(pq as i64 - 1).to_complex::<f64>()
                    * residue_at::<f64>(&t, omega).unwrap()
                    * -(pq as f64);
                assert!((lhs - rhs).norm() < 1e-8, "({p},{q}) k={k}");
            }
        }
    }

    #[test]
    fn roots_of_unity_reduce() {
        let xi = RootOfUnity::new(-3, 12).unwrap();
        assert_eq!((xi.numerator(), xi.order()), (3, 4));
        assert_eq!(
            RootOfUnity::new(12, 12).unwrap(),
            RootOfUnity::new(0, 1).unwrap()
        );
        assert_eq!(xi.pow(4), RootOfUnity::new(0, 1).unwrap());
    }
}
