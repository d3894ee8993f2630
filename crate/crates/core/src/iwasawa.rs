//! ℓ-adic invariants μ, λ, ν of torus knots and links.
//!
//! Δ_z is a polynomial, so its completion `Δ_z(1 + T)` is one as well and
//! μ, λ are read off exact integer coefficients; no power-series precision
//! is involved.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::alexander::{alexander_poly, specialize_z, AdmissibleVector, TorusParams};
use crate::arith;
use crate::covers::{tower_orders_knot, tower_orders_link, TowerReport};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::IntPolynomial;

/// Tower depth used when none is given.
pub const DEFAULT_TOWER_DEPTH: u32 = 5;

/// `f(1 + T)` together with the prime it is viewed at. Coefficients are
/// exact integers, index i holding the coefficient of `T^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicPolynomial {
    ell: u64,
    coeffs: Vec<BigInt>,
}

impl PadicPolynomial {
    pub fn new(ell: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        arith::require_prime(&ell)?;
        let f = Poly::new(coeffs);
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(PadicPolynomial {
            ell,
            coeffs: f.into_coeffs(),
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Substitutes `X = 1 + T`.
pub fn complete_at_ell(f: &IntPolynomial, ell: u64) -> Result<PadicPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    PadicPolynomial::new(ell, f.shift(&BigInt::from(1)).into_coeffs())
}

/// `(μ, λ)`: the least ℓ-adic valuation among the coefficients, and the
/// least index attaining it.
pub fn weierstrass_mu_lambda(g: &PadicPolynomial) -> Result<(u32, u64)> {
    let ell = BigInt::from(g.ell);
    let mut best: Option<(u32, u64)> = None;
    for (i, c) in g.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = arith::padic_valuation(&ell, c)?;
        if best.is_none_or(|(mu, _)| v < mu) {
            best = Some((v, i as u64));
        }
    }
    best.ok_or(Error::ZeroInput)
}

/// The ν invariant. For links only a value relative to the unknown base
/// term of the tower is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nu {
    Absolute(i64),
    Relative(i64),
    /// Relative ν could not be fitted: the tower hits infinite homology at
    /// `infinite_at`, or has not stabilized by its last level.
    Unresolved {
        infinite_at: Option<u32>,
    },
}

impl Nu {
    pub fn kind(&self) -> &'static str {
        match self {
            Nu::Absolute(_) => "absolute",
            _ => "relative",
        }
    }

    pub fn value(&self) -> Option<i64> {
        match *self {
            Nu::Absolute(v) | Nu::Relative(v) => Some(v),
            Nu::Unresolved { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub mu: u32,
    pub lambda: u64,
    pub nu: Nu,
}

/// Invariants of a torus knot, always `(0, 0, 0)`. Both the completed
/// polynomial and the tower valuations up to `DEFAULT_TOWER_DEPTH` are
/// checked; a failure is an internal error.
pub fn knot_invariants(params: &TorusParams, ell: u64) -> Result<IwasawaInvariants> {
    knot_invariants_with_depth(params, ell, DEFAULT_TOWER_DEPTH)
}

pub fn knot_invariants_with_depth(
    params: &TorusParams,
    ell: u64,
    n_max: u32,
) -> Result<IwasawaInvariants> {
    params.require_knot()?;
    let completed = complete_at_ell(&alexander_poly(params), ell)?;
    let (mu, lambda) = weierstrass_mu_lambda(&completed)?;
    if (mu, lambda) != (0, 0) {
        return Err(Error::Internal(format!(
            "knot completion gave mu={mu}, lambda={lambda}"
        )));
    }
    let tower = tower_orders_knot(params, ell, n_max)?;
    if let Some(level) = tower.levels.iter().find(|l| l.valuation != Some(0)) {
        return Err(Error::Internal(format!(
            "knot tower has order {} at level {}",
            level.order, level.n
        )));
    }
    Ok(IwasawaInvariants {
        mu: 0,
        lambda: 0,
        nu: Nu::Absolute(0),
    })
}

/// λ of `g_k(1 + T)` with `g_k = (X^k - 1)/(X - 1)`.
pub fn geometric_lambda(k: u64, ell: u64) -> Result<u64> {
    let g = complete_at_ell(&Poly::geometric(k as usize), ell)?;
    Ok(weierstrass_mu_lambda(&g)?.1)
}

/// λ assembled factor by factor from
/// `Δ_z = (X - 1)^{d-1} g_{αp'q'}^d / (g_{αp'} g_{αq'})`.
pub fn ledger_lambda(params: &TorusParams, z: &AdmissibleVector, ell: u64) -> Result<u64> {
    params.require_link()?;
    arith::require_prime(&ell)?;
    let a = alpha_abs(z)?;
    let (pp, qq, d) = (params.p_prime(), params.q_prime(), params.d());
    let total = (d - 1) + d * geometric_lambda(a * pp * qq, ell)?
        - geometric_lambda(a * pp, ell)?
        - geometric_lambda(a * qq, ell)?;
    Ok(total)
}

/// The stated closed form `(d - 2) ℓ^{v_ℓ(α)}`.
pub fn closed_form_lambda(params: &TorusParams, z: &AdmissibleVector, ell: u64) -> Result<u64> {
    params.require_link()?;
    arith::require_prime(&ell)?;
    let v = arith::padic_valuation(&ell, &alpha_abs(z)?)?;
    Ok((params.d() - 2) * ell.pow(v))
}

fn alpha_abs(z: &AdmissibleVector) -> Result<u64> {
    match z.alpha() {
        0 => Err(Error::ZeroAlpha),
        a => Ok(a.unsigned_abs()),
    }
}

/// Link invariants with the quantities they are compared against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkInvariants {
    pub invariants: IwasawaInvariants,
    /// `(d - 2) ℓ^{v_ℓ(α)}`.
    pub closed_form_lambda: u64,
    /// Sum of the per-factor λ values.
    pub ledger_lambda: u64,
    pub tower: TowerReport,
}

impl LinkInvariants {
    pub fn matches_closed_form(&self) -> bool {
        self.invariants.mu == 0 && self.invariants.lambda == self.closed_form_lambda
    }
}

/// μ and λ of `Δ_z(1 + T)`, plus relative ν fitted on a tower of depth
/// `DEFAULT_TOWER_DEPTH`. Errors with `FormulaMismatch` when the extracted
/// values disagree with the factor-by-factor ledger.
pub fn link_invariants(
    params: &TorusParams,
    z: &AdmissibleVector,
    ell: u64,
) -> Result<LinkInvariants> {
    link_invariants_with_depth(params, z, ell, DEFAULT_TOWER_DEPTH)
}

pub fn link_invariants_with_depth(
    params: &TorusParams,
    z: &AdmissibleVector,
    ell: u64,
    n_max: u32,
) -> Result<LinkInvariants> {
    params.require_link()?;
    let (mu, lambda) = extract_mu_lambda(params, z, ell)?;
    let ledger = ledger_lambda(params, z, ell)?;
    if mu != 0 || lambda != ledger {
        return Err(Error::FormulaMismatch(format!(
            "extracted (mu, lambda) = ({mu}, {lambda}), factor ledger gives (0, {ledger})"
        )));
    }
    let tower = tower_orders_link(params, z, ell, n_max)?;
    let nu = fit_relative_nu(&tower, lambda)?;
    Ok(LinkInvariants {
        invariants: IwasawaInvariants { mu, lambda, nu },
        closed_form_lambda: closed_form_lambda(params, z, ell)?,
        ledger_lambda: ledger,
        tower,
    })
}

fn extract_mu_lambda(params: &TorusParams, z: &AdmissibleVector, ell: u64) -> Result<(u32, u64)> {
    weierstrass_mu_lambda(&complete_at_ell(&specialize_z(params, z)?, ell)?)
}

/// Whether the factor ledger and direct extraction give the same λ.
pub fn lambda_decomposition_check(
    params: &TorusParams,
    z: &AdmissibleVector,
    ell: u64,
) -> Result<bool> {
    params.require_link()?;
    let (_, lambda) = extract_mu_lambda(params, z, ell)?;
    Ok(lambda == ledger_lambda(params, z, ell)?)
}

/// Fits `v_ℓ(order_n) = nλ + ν` (μ = 0) on the levels after the base. The
/// stabilized range is the longest run of final levels whose increments
/// equal λ; it must hold at least three levels.
fn fit_relative_nu(tower: &TowerReport, lambda: u64) -> Result<Nu> {
    let window: Vec<_> = tower.levels.iter().filter(|l| l.n > tower.v).collect();
    if let Some(level) = window.iter().find(|l| l.order.is_zero()) {
        return Ok(Nu::Unresolved {
            infinite_at: Some(level.n),
        });
    }
    let points: Vec<(i64, i64)> = window
        .iter()
        .map(|l| (l.n as i64, l.valuation.expect("finite order") as i64))
        .collect();
    let lambda = lambda as i64;
    let mut start = points.len();
    while start > 0 && (start == points.len() || points[start].1 - points[start - 1].1 == lambda) {
        start -= 1;
    }
    let stable = &points[start..];
    if stable.len() < 3 {
        return Ok(Nu::Unresolved { infinite_at: None });
    }
    let (n, val) = stable[stable.len() - 1];
    let nu = val - n * lambda;
    if stable.iter().any(|&(n, val)| val - n * lambda != nu) {
        return Err(Error::Internal(
            "affine fit of tower valuations has a residual".into(),
        ));
    }
    Ok(Nu::Relative(nu))
}
