//! Cyclic branched covers: homology orders via resultants, ℓ-power towers,
//! and Mahler measures.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::alexander::{alexander_poly, specialize_z, AdmissibleVector, TorusParams};
use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::resultant::resultant;
use crate::roots::complex_roots;
use crate::scalar::{RealScalar, Ring};

/// Largest cover degree materialized as a dense polynomial.
pub const MAX_COVER_DEGREE: u64 = 1 << 16;

fn cover_degree(ell: u64, n: u32) -> Result<u64> {
    ell.checked_pow(n)
        .filter(|&m| m <= MAX_COVER_DEGREE)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{ell}^{n} exceeds the supported cover degree"))
        })
}

/// `|H_1|` of the m-fold cyclic branched cover of a torus knot, as
/// `|Res(t^m - 1, Δ)|`; 0 encodes an infinite group.
pub fn homology_order_cyclic(params: &TorusParams, m: u64) -> Result<BigInt> {
    params.require_knot()?;
    if m == 0 || m > MAX_COVER_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "cover degree {m} out of range"
        )));
    }
    let delta = alexander_poly(params);
    Ok(resultant(&Poly::binomial(m as usize), &delta)?.abs())
}

/// One level `n` of an ℓ-power tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: u32,
    /// Homology order (absolute for knots, relative to level `v` for links);
    /// 0 when the group is infinite.
    pub order: BigInt,
    /// `v_ℓ(order)`, absent when the order is 0.
    pub valuation: Option<u32>,
    /// Closed-form prediction, knots only.
    pub closed_form: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub params: TorusParams,
    pub z: AdmissibleVector,
    pub ell: u64,
    /// `max_i v_ℓ(z_i)`; the tower starts at this level.
    pub v: u32,
    /// Whether orders are relative to the base level `v` (links).
    pub relative: bool,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    /// First level whose homology is infinite, if any.
    pub fn infinite_at(&self) -> Option<u32> {
        self.levels.iter().find(|l| l.order.is_zero()).map(|l| l.n)
    }

    pub fn orders(&self) -> Vec<BigInt> {
        self.levels.iter().map(|l| l.order.clone()).collect()
    }

    /// Valuations of every level, or `NotApplicable` at the first infinite one.
    pub fn valuations(&self) -> Result<Vec<u32>> {
        self.levels
            .iter()
            .map(|l| l.valuation.ok_or(Error::NotApplicable { level: l.n }))
            .collect()
    }
}

fn valuation(ell: u64, order: &BigInt) -> Option<u32> {
    if order.is_zero() {
        None
    } else {
        Some(arith::padic_valuation(&BigInt::from(ell), order).expect("ell checked prime"))
    }
}

/// Predicted `|H_1|` of the ℓ^n-fold cover of a torus knot:
/// `b^{ℓ^{min(n, r)} - 1}` with `r = v_ℓ(pq)`, `b = q` if `ℓ | p`,
/// `b = p` if `ℓ | q`, and 1 when `ℓ ∤ pq`.
pub fn knot_tower_closed_form(params: &TorusParams, ell: u64, n: u32) -> Result<BigInt> {
    params.require_knot()?;
    arith::require_prime(&ell)?;
    let (p, q) = (params.p(), params.q());
    let base = if p % ell == 0 {
        q
    } else if q % ell == 0 {
        p
    } else {
        return Ok(BigInt::one());
    };
    let r = arith::padic_valuation(&BigInt::from(ell), &(BigInt::from(p) * q))?;
    let exp = cover_degree(ell, n.min(r))? - 1;
    Ok(arith::pow(&BigInt::from(base), exp as u32))
}

/// Orders of `H_1` along the ℓ^n-fold covers of a torus knot, `n = 0..=n_max`,
/// each checked against [`knot_tower_closed_form`].
pub fn tower_orders_knot(params: &TorusParams, ell: u64, n_max: u32) -> Result<TowerReport> {
    params.require_knot()?;
    arith::require_prime(&ell)?;
    let levels = (0..=n_max)
        .map(|n| {
            let order = homology_order_cyclic(params, cover_degree(ell, n)?)?;
            let predicted = knot_tower_closed_form(params, ell, n)?;
            if order != predicted {
                return Err(Error::FormulaMismatch(format!(
                    "T({},{}) at {ell}^{n}: resultant gives {order}, closed form {predicted}",
                    params.p(),
                    params.q()
                )));
            }
            Ok(TowerLevel {
                n,
                valuation: valuation(ell, &order),
                order,
                closed_form: Some(predicted),
            })
        })
        .collect::<Result<_>>()?;
    Ok(TowerReport {
        params: *params,
        z: AdmissibleVector::ones(1),
        ell,
        v: 0,
        relative: false,
        levels,
    })
}

/// Relative orders `|Res((t^{ℓ^n} - 1)/(t^{ℓ^v} - 1), Δ_z)|` for `n = v..=n_max`:
/// the product of `|Δ_z(ζ)|` over ℓ^n-th roots of unity that are not ℓ^v-th
/// roots. The base term `|H_1(M_{z,ℓ^v})|` is not included.
pub fn tower_orders_link(
    params: &TorusParams,
    z: &AdmissibleVector,
    ell: u64,
    n_max: u32,
) -> Result<TowerReport> {
    params.require_link()?;
    arith::require_prime(&ell)?;
    let delta = specialize_z(params, z)?;
    let v = z.max_valuation(ell)?;
    let base = Poly::<BigInt>::binomial(cover_degree(ell, v)? as usize);
    let levels = (v..=n_max.max(v))
        .map(|n| {
            let f = Poly::<BigInt>::binomial(cover_degree(ell, n)? as usize).exact_div(&base)?;
            let order = resultant(&f, &delta)?.abs();
            Ok(TowerLevel {
                n,
                valuation: valuation(ell, &order),
                order,
                closed_form: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TowerReport {
        params: *params,
        z: z.clone(),
        ell,
        v,
        relative: true,
        levels,
    })
}

/// Mahler measure `|lead| ∏ max(1, |β|)` from numerically computed roots.
/// Repeated factors are split off exactly first, so every root solve is on
/// a squarefree polynomial.
pub fn mahler_measure_roots<C, F>(f: &Poly<C>) -> Result<F>
where
    C: Ring + Integer + Signed + FromPrimitive + ToPrimitive,
    F: RealScalar,
{
    let lead = f.leading().ok_or(Error::ZeroInput)?;
    let mut measure = F::cast(&lead.abs());
    for (i, part) in f.squarefree_decomposition().iter().enumerate() {
        let outside: F = complex_roots::<C, F>(part)
            .iter()
            .map(|z| z.norm().max(F::one()))
            .fold(F::one(), |a, b| a * b);
        measure = measure * outside.powi(i as i32 + 1);
    }
    Ok(measure)
}

/// Zeros closer than this make a quadrature sample non-finite.
pub const ZERO_TOLERANCE: f64 = 1e-14;

const QUADRATURE_CHUNK: usize = 4096;

/// Midpoint rule for `∫_0^1 log|f(e^{2πiθ})| dθ` with nodes
/// `θ_j = (j + 1/2)/grid`. Summation order is fixed, so results are
/// reproducible regardless of thread count.
pub fn mahler_measure_quadrature<C, F>(f: &Poly<C>, grid: usize) -> Result<F>
where
    C: Ring + ToPrimitive + Sync,
    F: RealScalar,
{
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if grid < 16 {
        return Err(Error::InvalidArgument(format!(
            "quadrature grid must be >= 16, got {grid}"
        )));
    }
    let coeffs: Vec<F> = f.coeffs().iter().map(F::cast).collect();
    let tol = F::cast(&ZERO_TOLERANCE);
    let n = F::cast(&grid);
    let half = F::cast(&0.5);
    let partials: Vec<Option<F>> = (0..grid)
        .collect::<Vec<_>>()
        .par_chunks(QUADRATURE_CHUNK)
        .map(|chunk| {
            let mut acc = F::zero();
            for &j in chunk {
                let theta = (F::cast(&j) + half) / n;
                let z = Complex::from_polar(F::one(), F::TAU() * theta);
                let value = coeffs
                    .iter()
                    .rev()
                    .fold(Complex::<F>::zero(), |acc, &c| acc * z + c)
                    .norm();
                if value < tol {
                    return None;
                }
                acc = acc + value.ln();
            }
            Some(acc)
        })
        .collect();
    let mut total = F::zero();
    for part in partials {
        total = total
            + part.ok_or(Error::NonFinite {
                tol: ZERO_TOLERANCE,
            })?;
    }
    Ok(total / n)
}

/// Quadrature of `log|t^k - 1|` for each exponent in the multivariable
/// closed form (`p'q'`, `p'`, `q'` and the `t - 1` factor). Each is 0
/// exactly, which is why the torus-link measure vanishes.
pub fn binomial_factor_measures<F: RealScalar>(
    params: &TorusParams,
    grid: usize,
) -> Result<Vec<(u64, F)>> {
    let (pp, qq) = (params.p_prime(), params.q_prime());
    let mut exponents = vec![pp * qq, pp, qq, 1];
    exponents.dedup();
    exponents
        .into_iter()
        .map(|k| {
            let f = Poly::<BigInt>::binomial(k as usize);
            Ok((k, mahler_measure_quadrature::<BigInt, F>(&f, grid)?))
        })
        .collect()
}

fn ln_big<F: RealScalar>(h: &BigInt) -> F {
    match h.to_f64() {
        Some(x) if x.is_finite() => F::cast(&x.ln()),
        _ => {
            // shift down to float range
            let bits = h.bits().saturating_sub(64);
            let top: BigInt = h >> bits;
            F::cast(&(top.to_f64().unwrap().ln() + bits as f64 * std::f64::consts::LN_2))
        }
    }
}

/// `sup |h_n^{1/n} - 1|` over the tail `n_max/2 <= n <= n_max` with
/// `h_n != 0`. Tends to 0 because torus knots have Mahler measure 1.
pub fn acuna_short_check<F: RealScalar>(params: &TorusParams, n_max: u64) -> Result<F> {
    params.require_knot()?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    let start = (n_max / 2).max(1);
    let mut sup = F::zero();
    for n in start..=n_max {
        let h = homology_order_cyclic(params, n)?;
        if h.is_zero() {
            continue;
        }
        let root = (ln_big::<F>(&h) / F::cast(&n)).exp();
        sup = sup.max((root - F::one()).abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;
    use crate::IntPolynomial;
    use proptest::prelude::*;

    fn params(p: u64, q: u64) -> TorusParams {
        TorusParams::new(p, q).unwrap()
    }

    fn p(c: &[i64]) -> IntPolynomial {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn fox_weber_examples() {
        let trefoil = params(2, 3);
        assert_eq!(homology_order_cyclic(&trefoil, 2).unwrap(), BigInt::from(3));
        assert_eq!(homology_order_cyclic(&trefoil, 1).unwrap(), BigInt::from(1));
        assert_eq!(homology_order_cyclic(&trefoil, 6).unwrap(), BigInt::from(0));
        assert_eq!(
            homology_order_cyclic(&params(2, 4), 2),
            Err(Error::LinkCase { d: 2 })
        );
    }

    #[test]
    fn multiplicativity_over_divisors() {
        for pp in 1..=5u64 {
            for qq in 1..=6u64 {
                let t = params(pp, qq);
                if !t.is_knot() {
                    continue;
                }
                let delta = alexander_poly(&t);
                for m in 1..=30u64 {
                    let product = arith::divisors(&m)
                        .unwrap()
                        .iter()
                        .map(|&r| {
                            resultant(&cyclotomic::<BigInt>(r).unwrap(), &delta)
                                .unwrap()
                                .abs()
                        })
                        .fold(BigInt::one(), |a, b| a * b);
                    assert_eq!(
                        homology_order_cyclic(&t, m).unwrap(),
                        product,
                        "({pp},{qq}) m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn knot_tower_examples() {
        let orders =
            |p_: u64, q_: u64, ell, n| tower_orders_knot(&params(p_, q_), ell, n).unwrap().orders();
        let ints = |v: &[u64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(orders(2, 3, 2, 3), ints(&[1, 3, 3, 3]));
        assert_eq!(orders(2, 3, 5, 2), ints(&[1, 1, 1]));
        assert_eq!(orders(3, 5, 3, 2), ints(&[1, 25, 25]));
        assert!(tower_orders_knot(&params(2, 4), 2, 2).is_err());
        assert!(tower_orders_knot(&params(2, 3), 4, 2).is_err());
    }

    #[test]
    fn link_tower_examples() {
        // relative order at n = 1 equals the Sylvester determinant directly
        let t = params(2, 4);
        let z = AdmissibleVector::ones(2);
        let report = tower_orders_link(&t, &z, 3, 1).unwrap();
        assert_eq!(report.v, 0);
        assert!(report.relative);
        assert_eq!(report.levels[0].order, BigInt::one());
        let delta = specialize_z(&t, &z).unwrap();
        let direct = crate::resultant::sylvester_resultant(&p(&[1, 1, 1]), &delta)
            .unwrap()
            .abs();
        assert_eq!(report.levels[1].order, direct);

        let t = params(3, 3);
        let report = tower_orders_link(&t, &AdmissibleVector::ones(3), 2, 1).unwrap();
        let delta = specialize_z(&t, &AdmissibleVector::ones(3)).unwrap();
        assert_eq!(report.levels[1].order, delta.eval(&BigInt::from(-1)).abs());

        let z = AdmissibleVector::new(vec![2, 1]).unwrap();
        let report = tower_orders_link(&params(2, 4), &z, 2, 3).unwrap();
        assert_eq!(report.v, 1);
        assert_eq!(report.levels[0].n, 1);
        assert_eq!(report.levels[0].order, BigInt::one());

        assert_eq!(
            tower_orders_link(&params(2, 3), &AdmissibleVector::ones(1), 2, 2),
            Err(Error::KnotCase)
        );
    }

    #[test]
    fn infinite_levels_are_flagged() {
        // Δ_z for (3,3) with z = 1 contains Φ_3, so the 3-fold cover is infinite
        let report = tower_orders_link(&params(3, 3), &AdmissibleVector::ones(3), 3, 2).unwrap();
        assert_eq!(report.infinite_at(), Some(1));
        assert_eq!(report.valuations(), Err(Error::NotApplicable { level: 1 }));
    }

    #[test]
    fn mahler_roots() {
        let m: f64 = mahler_measure_roots(&p(&[-1, 1])).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        let m: f64 = mahler_measure_roots(&p(&[1, -1, 1])).unwrap();
        assert!((m - 1.0).abs() < 1e-9);
        let m: f64 = mahler_measure_roots(&p(&[-1, 2])).unwrap();
        assert!((m - 2.0).abs() < 1e-9);
        let m: f64 = mahler_measure_roots(&p(&[-7])).unwrap();
        assert!((m - 7.0).abs() < 1e-12);
        assert_eq!(
            mahler_measure_roots::<BigInt, f64>(&Poly::zero()),
            Err(Error::ZeroInput)
        );
        // repeated cyclotomic factors stay at 1
        let f = cyclotomic::<BigInt>(12)
            .unwrap()
            .pow(3)
            .mul(&cyclotomic(1).unwrap().pow(2));
        let m: f64 = mahler_measure_roots(&f).unwrap();
        assert!((m - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mahler_quadrature() {
        let m: f64 = mahler_measure_quadrature(&p(&[0, 1]), 64).unwrap();
        assert_eq!(m, 0.0);
        let m: f64 = mahler_measure_quadrature(&p(&[-1, 2]), 1 << 12).unwrap();
        assert!((m - 2f64.ln()).abs() < 1e-2);
        assert_eq!(
            mahler_measure_quadrature::<BigInt, f64>(&Poly::zero(), 64),
            Err(Error::ZeroInput)
        );
        assert!(mahler_measure_quadrature::<BigInt, f64>(&p(&[1, 1]), 8).is_err());
        // t^16 + 1 vanishes at θ = 1/32, the first node of a 16-point grid
        let mut c = vec![0i64; 17];
        c[0] = 1;
        c[16] = 1;
        assert_eq!(
            mahler_measure_quadrature::<BigInt, f64>(&p(&c), 16),
            Err(Error::NonFinite {
                tol: ZERO_TOLERANCE
            })
        );
        for k in [1u64, 2, 5, 12] {
            for (_, value) in
                binomial_factor_measures::<f64>(&params(2 * k, 3 * k), 1 << 14).unwrap()
            {
                assert!(value.abs() < 1e-2);
            }
        }
    }

    #[test]
    fn acuna_short_tail() {
        // h_n for the trefoil cycles through 1, 3, 4, 3, 1, 0 (n mod 6 = 1..=0)
        let cycle = [0u64, 1, 3, 4, 3, 1];
        for n in 1..=60u64 {
            let expect = BigInt::from(cycle[(n % 6) as usize]);
            assert_eq!(homology_order_cyclic(&params(2, 3), n).unwrap(), expect);
        }
        let sup: f64 = acuna_short_check(&params(2, 3), 60).unwrap();
        let bound = (4f64.ln() / 30.0).exp() - 1.0;
        assert!(sup > 0.0 && sup <= bound + 1e-15, "{sup} vs {bound}");
        let sup: f64 = acuna_short_check(&params(2, 5), 60).unwrap();
        assert!(sup <= (16f64.ln() / 30.0).exp() - 1.0 + 1e-15);
        let sup_short: f64 = acuna_short_check(&params(3, 5), 20).unwrap();
        let sup_long: f64 = acuna_short_check(&params(3, 5), 120).unwrap();
        assert!(sup_long < sup_short);
    }

    proptest! {
        #[test]
        fn quadrature_matches_roots(c in prop::collection::vec(-4i64..=4, 2..=9)) {
            let f = p(&c);
            prop_assume!(f.degree().unwrap_or(0) >= 1 && !f.coeffs()[0].is_zero());
            let roots = complex_roots::<BigInt, f64>(&f.squarefree_decomposition().iter().fold(Poly::one(), |a, g| a.mul(g)));
            prop_assume!(roots.iter().all(|z| (z.norm() - 1.0).abs() > 0.05));
            let by_roots: f64 = mahler_measure_roots(&f).unwrap();
            let by_quadrature: f64 = mahler_measure_quadrature(&f, 1 << 12).unwrap();
            prop_assert!((by_roots.ln() - by_quadrature).abs() < 1e-6, "{} vs {}", by_roots.ln(), by_quadrature);
        }
    }
}
