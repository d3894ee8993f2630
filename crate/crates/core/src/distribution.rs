//! Family scans over torus knots and links of bounded height.
//!
//! A scan enumerates pairs `1 <= p, q <= X` (row-major, `p` outer) and
//! aggregates exact root counts. No polynomial is ever materialized: the
//! multiset of roots of Δ_{p,q} is `d` copies of the L-th roots of unity,
//! minus the p-th and q-th roots, plus the root 1, so the number of roots in
//! an arc is `d·C_L - C_p - C_q + C_1` with `C_n` the number of n-th roots
//! of unity in the arc.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::alexander::{cyclotomic_multiplicities, TorusParams};
use crate::arith;
use crate::error::{Error, Result};
use crate::moments::moment_kernel;
use crate::scalar::RealScalar;

/// Which pairs a scan enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Coprime pairs only (torus knots, including the trivial `p = 1` or `q = 1`).
    KnotsCoprime,
    /// Every pair.
    AllLinks,
}

impl Family {
    pub fn contains(&self, p: u64, q: u64) -> bool {
        match self {
            Family::KnotsCoprime => p.gcd(&q) == 1,
            Family::AllLinks => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::KnotsCoprime => "knots_coprime",
            Family::AllLinks => "all_links",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coprime" | "knots" | "knots_coprime" => Ok(Family::KnotsCoprime),
            "all" | "links" | "all_links" => Ok(Family::AllLinks),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

/// Closed arc `[a, b]` of angles, `0 <= a <= b <= 1`, angle θ meaning
/// `e^{2πiθ}`. The angles 0 and 1 both name the root 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    a: BigRational,
    b: BigRational,
}

impl Arc {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        if a.is_negative() || b > BigRational::one() || a > b {
            return Err(Error::InvalidArgument(format!(
                "arc [{a}, {b}] must satisfy 0 <= a <= b <= 1"
            )));
        }
        Ok(Arc { a, b })
    }

    pub fn full() -> Self {
        Arc {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        if a.1 == 0 || b.1 == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    pub fn start(&self) -> &BigRational {
        &self.a
    }

    pub fn end(&self) -> &BigRational {
        &self.b
    }

    pub fn length(&self) -> BigRational {
        &self.b - &self.a
    }

    /// Whether the angle `k/n` (taken modulo 1) lies in the arc.
    pub fn contains(&self, k: u64, n: u64) -> bool {
        let theta = BigRational::new(BigInt::from(k % n), BigInt::from(n));
        (self.a <= theta && theta <= self.b) || (theta.is_zero() && self.b.is_one())
    }

    /// Number of n-th roots of unity in the arc.
    pub fn count_nth_roots(&self, n: u64) -> u64 {
        let nn = BigInt::from(n);
        let lo = (&self.a * &nn).ceil().to_integer();
        let hi = (&self.b * &nn).floor().to_integer();
        // j ranges over [lo, hi] ∩ [0, n-1]
        let hi_clamped: BigInt = hi.min(&nn - 1u32);
        let mut count = if hi_clamped >= lo {
            (hi_clamped - &lo + 1u32).to_u64().expect("count fits")
        } else {
            0
        };
        if self.b.is_one() && lo > BigInt::zero() {
            count += 1;
        }
        count
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Pairs `1 <= p, q <= X` with `gcd(p, q) = 1`, by enumeration.
pub fn count_coprime_pairs(x: u64) -> u64 {
    (1..=x)
        .into_par_iter()
        .map(|p| (1..=x).filter(|q| p.gcd(q) == 1).count() as u64)
        .sum()
}

/// The same count as `Σ_{d <= X} μ(d) ⌊X/d⌋²`.
pub fn count_coprime_pairs_mobius(x: u64) -> u64 {
    let total: i128 = (1..=x)
        .map(|d| {
            let mu = arith::mobius(&d).expect("d >= 1") as i128;
            let k = (x / d) as i128;
            mu * k * k
        })
        .sum();
    total as u64
}

/// `Σ (p-1)(q-1)` over the family.
pub fn count_roots_total(x: u64, family: Family) -> u64 {
    (1..=x)
        .into_par_iter()
        .map(|p| {
            (1..=x)
                .filter(|&q| family.contains(p, q))
                .map(|q| (p - 1) * (q - 1))
                .sum::<u64>()
        })
        .sum()
}

/// `(X(X-1))² / 4`, the all-pairs root total in closed form.
pub fn all_links_root_total_closed_form(x: u64) -> u64 {
    let s = x * x.saturating_sub(1);
    s * s / 4
}

/// Roots of Δ_{p,q} (with multiplicity) whose angle lies in `arc`.
pub fn arc_count_single(params: &TorusParams, arc: &Arc) -> u64 {
    let c = |n: u64| arc.count_nth_roots(n);
    let positive = params.d() * c(params.lcm()) + c(1);
    positive - c(params.p()) - c(params.q())
}

/// Same count by walking every L-th root of unity and looking up the
/// multiplicity of its order. `O(L)`; used to cross-check.
pub fn arc_count_enumerated(params: &TorusParams, arc: &Arc) -> u64 {
    let l = params.lcm();
    let mult = cyclotomic_multiplicities(params);
    (0..l)
        .filter(|&k| arc.contains(k, l))
        .map(|k| u64::from(mult.multiplicity(l / k.gcd(&l))))
        .sum()
}

/// Result of a family scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub x: u64,
    pub family: Family,
    /// Number of pairs enumerated.
    pub t_count: u64,
    /// Total number of roots with multiplicity.
    pub omega_count: u64,
    pub arc: Arc,
    pub arc_count: u64,
    pub predicted_ratio: BigRational,
    /// `arc_count / omega_count`; `None` when the family has no roots.
    pub observed_ratio: Option<BigRational>,
}

impl ScanReport {
    /// `|observed - predicted|` as a float, when defined.
    pub fn deviation(&self) -> Option<f64> {
        self.observed_ratio.as_ref().map(|obs| {
            (obs - &self.predicted_ratio)
                .abs()
                .to_f64()
                .unwrap_or(f64::INFINITY)
        })
    }
}

/// Per-pair row of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRow {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub roots_total: u64,
    pub roots_in_arc: u64,
}

fn row(p: u64, q: u64, arc: &Arc) -> PairRow {
    let params = TorusParams::new(p, q).expect("p, q >= 1");
    PairRow {
        p,
        q,
        d: params.d(),
        roots_total: params.root_count(),
        roots_in_arc: arc_count_single(&params, arc),
    }
}

/// Every row of the scan, row-major.
pub fn scan_rows(x: u64, family: Family, arc: &Arc) -> Vec<PairRow> {
    (1..=x)
        .into_par_iter()
        .flat_map_iter(|p| {
            (1..=x)
                .filter(move |&q| family.contains(p, q))
                .map(move |q| row(p, q, arc))
        })
        .collect()
}

pub fn scan(x: u64, family: Family, arc: &Arc) -> Result<ScanReport> {
    if x == 0 {
        return Err(Error::InvalidArgument("scan height must be >= 1".into()));
    }
    let (t_count, omega_count, arc_count) = (1..=x)
        .into_par_iter()
        .map(|p| {
            (1..=x)
                .filter(|&q| family.contains(p, q))
                .map(|q| row(p, q, arc))
                .fold((0u64, 0u64, 0u64), |(t, o, a), r| {
                    (t + 1, o + r.roots_total, a + r.roots_in_arc)
                })
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));
    let observed_ratio = (omega_count > 0)
        .then(|| BigRational::new(BigInt::from(arc_count), BigInt::from(omega_count)));
    Ok(ScanReport {
        x,
        family,
        t_count,
        omega_count,
        arc: arc.clone(),
        arc_count,
        predicted_ratio: arc.length(),
        observed_ratio,
    })
}

/// Fraction of coprime pairs up to `X` for which `Φ_r` divides Δ_{p,q}
/// (equivalently `r | pq`, `r ∤ p`, `r ∤ q`).
pub fn frequency_fr(x: u64, r: u64) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "frequency needs r >= 2, got {r}"
        )));
    }
    if x == 0 {
        return Err(Error::InvalidArgument("scan height must be >= 1".into()));
    }
    let (hits, pairs) = (1..=x)
        .into_par_iter()
        .map(|p| {
            let mut hits = 0u64;
            let mut pairs = 0u64;
            for q in 1..=x {
                if p.gcd(&q) != 1 {
                    continue;
                }
                pairs += 1;
                if (p * q) % r == 0 && p % r != 0 && q % r != 0 {
                    hits += 1;
                }
            }
            (hits, pairs)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(pairs)))
}

/// Limit of [`frequency_fr`]: `(2^{ω(r)} - 2) / r`.
pub fn frequency_limit(r: u64) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "frequency needs r >= 2, got {r}"
        )));
    }
    let w = arith::omega(&r)? as u32;
    Ok(BigRational::new(
        BigInt::from(2u64.pow(w) - 2),
        BigInt::from(r),
    ))
}

/// Limit of [`frequency_fr`] when the coprimality of `(p, q)` is taken into
/// account: among coprime pairs, `ℓ^e | p` has density `ℓ^{1-e}/(ℓ + 1)`
/// rather than `ℓ^{-e}`. This is `frequency_limit(r) · ∏_{ℓ | r} ℓ/(ℓ + 1)`.
pub fn frequency_limit_coprime(r: u64) -> Result<BigRational> {
    let base = frequency_limit(r)?;
    let factor = arith::factorize(&r)?
        .entries()
        .iter()
        .fold(BigRational::one(), |acc, &(ell, _)| {
            acc * BigRational::new(BigInt::from(ell), BigInt::from(ell + 1))
        });
    Ok(base * factor)
}

/// Averaged k-th moment over all roots in the coprime family up to `X`:
/// `Σ_{(p,q)} S_k(p,q) / Σ_{(p,q)} (p-1)(q-1)`. Equidistribution forces this
/// to 0 for `k != 0`; at `k = 0` it is 1 by construction.
pub fn weyl_sum<F: RealScalar>(x: u64, k: i64) -> Result<Complex<F>> {
    if x == 0 {
        return Err(Error::InvalidArgument("scan height must be >= 1".into()));
    }
    // S_{-k} is the conjugate of S_k, and S_k is real
    let m = k.unsigned_abs();
    let (sum, total) = (1..=x)
        .into_par_iter()
        .map(|p| {
            (1..=x)
                .filter(|q| p.gcd(q) == 1)
                .map(|q| (moment_kernel(p, q, m), i128::from((p - 1) * (q - 1))))
                .fold((0i128, 0i128), |a, b| (a.0 + b.0, a.1 + b.1))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if total == 0 {
        return Err(Error::InvalidArgument(format!(
            "no roots in the family up to X = {x}"
        )));
    }
    let ratio = BigRational::new(BigInt::from(sum), BigInt::from(total));
    Ok(Complex::new(F::cast(&ratio), F::zero()))
}
