//! Torus links T(p, q): parameters, Alexander polynomials and the
//! invariants read off them (cyclotomic multiplicities, determinant,
//! colorability, Hosokawa polynomial).
//!
//! Polynomials are returned as canonical representatives modulo the units
//! `±t^a`: nonzero constant term, positive leading coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_table, Poly};
use crate::IntPolynomial;

/// Validated pair `(p, q)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusParams {
    p: u64,
    q: u64,
    d: u64,
    p_prime: u64,
    q_prime: u64,
    lcm: u64,
}

impl TorusParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidArgument(format!(
                "torus parameters must be positive, got ({p}, {q})"
            )));
        }
        let d = p.gcd(&q);
        Ok(TorusParams {
            p,
            q,
            d,
            p_prime: p / d,
            q_prime: q / d,
            lcm: d * (p / d) * (q / d),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Number of components, `gcd(p, q)`.
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn p_prime(&self) -> u64 {
        self.p_prime
    }
    pub fn q_prime(&self) -> u64 {
        self.q_prime
    }
    /// `lcm(p, q)`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn is_knot(&self) -> bool {
        self.d == 1
    }

    /// Number of roots of Δ counted with multiplicity, `(p-1)(q-1)`.
    pub fn root_count(&self) -> u64 {
        (self.p - 1) * (self.q - 1)
    }

    pub(crate) fn require_knot(&self) -> Result<()> {
        if self.is_knot() {
            Ok(())
        } else {
            Err(Error::LinkCase { d: self.d })
        }
    }

    pub(crate) fn require_link(&self) -> Result<()> {
        if self.is_knot() {
            Err(Error::KnotCase)
        } else {
            Ok(())
        }
    }
}

pub fn torus_params(p: u64, q: u64) -> Result<TorusParams> {
    TorusParams::new(p, q)
}

/// Integer vector selecting a one-variable specialization of the
/// multivariable polynomial: entries nonzero, gcd of entries 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleVector {
    z: Vec<i64>,
    alpha: i64,
}

impl AdmissibleVector {
    pub fn new(z: Vec<i64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::NonAdmissible("empty vector".into()));
        }
        if z.contains(&0) {
            return Err(Error::NonAdmissible(format!("{z:?} has a zero entry")));
        }
        let g = z.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 1 {
            return Err(Error::NonAdmissible(format!("gcd of {z:?} is {g}")));
        }
        let alpha = z.iter().sum();
        Ok(AdmissibleVector { z, alpha })
    }

    /// The all-ones vector of length `d`.
    pub fn ones(d: usize) -> Self {
        Self::new(vec![1; d.max(1)]).expect("all-ones vector is admissible")
    }

    pub fn entries(&self) -> &[i64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `α = Σ z_i`.
    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    /// `max_i v_ℓ(z_i)`.
    pub fn max_valuation(&self, ell: u64) -> Result<u32> {
        let ell = ell as i64;
        self.z
            .iter()
            .map(|z| arith::padic_valuation(&ell, z))
            .try_fold(0, |acc, v| v.map(|v| acc.max(v)))
    }
}

/// Multiplicities `M_r` of the cyclotomic factors `Φ_r` of `Δ_{p,q}`;
/// zero multiplicities are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycFactorization {
    params: TorusParams,
    entries: BTreeMap<u64, u32>,
}

impl CycFactorization {
    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.entries
    }

    pub fn multiplicity(&self, r: u64) -> u32 {
        self.entries.get(&r).copied().unwrap_or(0)
    }

    /// `Σ M_r φ(r)`.
    pub fn root_count(&self) -> u64 {
        self.entries
            .iter()
            .map(|(r, m)| u64::from(*m) * arith::totient(r).expect("r >= 1"))
            .sum()
    }

    /// `∏ Φ_r^{M_r}` expanded.
    pub fn expand(&self) -> Result<IntPolynomial> {
        let table = cyclotomic_table::<BigInt>(self.params.lcm)?;
        Ok(table
            .iter()
            .fold(Poly::one(), |acc, (r, phi)| match self.entries.get(r) {
                Some(&m) => acc.mul(&phi.pow(m)),
                None => acc,
            }))
    }
}

fn binomial(k: u64) -> IntPolynomial {
    Poly::binomial(k as usize)
}

/// Δ_{p,q}(t) = (t^L - 1)^d (t - 1) / ((t^p - 1)(t^q - 1)), by exact division.
/// Equals 1 when p = 1 or q = 1.
pub fn alexander_poly(params: &TorusParams) -> IntPolynomial {
    if params.p == 1 || params.q == 1 {
        return Poly::one();
    }
    let numerator = binomial(params.lcm).pow(params.d as u32).mul(&binomial(1));
    let delta = numerator
        .exact_div(&binomial(params.p))
        .and_then(|f| f.exact_div(&binomial(params.q)))
        .expect("(t^p-1)(t^q-1) always divides the numerator");
    delta.laurent_normalize()
}

/// `M_r = d·1[r|L] - 1[r|p] - 1[r|q] + 1[r=1]` for every `r | L`.
pub fn cyclotomic_multiplicities(params: &TorusParams) -> CycFactorization {
    let ind = |b: bool| i64::from(b);
    let d = params.d as i64;
    let entries = arith::divisors(&params.lcm)
        .expect("lcm >= 1")
        .into_iter()
        .filter_map(|r| {
            let m =
                d - ind(params.p.is_multiple_of(r)) - ind(params.q.is_multiple_of(r)) + ind(r == 1);
            debug_assert!(m >= 0);
            (m > 0).then_some((r, m as u32))
        })
        .collect();
    CycFactorization {
        params: *params,
        entries,
    }
}

fn check_specialization(params: &TorusParams, z: &AdmissibleVector) -> Result<u64> {
    if z.len() as u64 != params.d {
        return Err(Error::NonAdmissible(format!(
            "vector has length {} but the link has {} components",
            z.len(),
            params.d
        )));
    }
    if z.alpha() == 0 {
        return Err(Error::ZeroAlpha);
    }
    Ok(z.alpha().unsigned_abs())
}

/// One-variable specialization Δ^z(X). For knots this is Δ itself;
/// for links the closed form in `X^{αp'q'}`, `X^{αp'}`, `X^{αq'}`.
/// Negative α is handled through |α|, which changes Δ^z only by a unit.
pub fn specialize_z(params: &TorusParams, z: &AdmissibleVector) -> Result<IntPolynomial> {
    let a = check_specialization(params, z)?;
    if params.is_knot() {
        return Ok(alexander_poly(params));
    }
    let (pp, qq) = (params.p_prime, params.q_prime);
    let numerator = binomial(a * pp * qq).pow(params.d as u32).mul(&binomial(1));
    let f = numerator
        .exact_div(&binomial(a * pp))?
        .exact_div(&binomial(a * qq))?;
    Ok(f.laurent_normalize())
}

/// Hosokawa polynomial `g_{αp'q'}^d / (g_{αp'} g_{αq'})` with
/// `g_k = (X^k - 1)/(X - 1)`.
pub fn hosokawa(params: &TorusParams, z: &AdmissibleVector) -> Result<IntPolynomial> {
    params.require_link()?;
    let a = check_specialization(params, z)?;
    let g = |k: u64| Poly::<BigInt>::geometric(k as usize);
    let (pp, qq) = (params.p_prime, params.q_prime);
    g(a * pp * qq)
        .pow(params.d as u32)
        .exact_div(&g(a * pp))?
        .exact_div(&g(a * qq))
}

/// `|Δ(-1)|`.
pub fn determinant(params: &TorusParams) -> BigInt {
    alexander_poly(params).eval(&BigInt::from(-1)).abs()
}

/// Knot determinant by parity: the even parameter contributes nothing,
/// the odd one is the determinant; 1 when both are odd.
pub fn knot_determinant_by_parity(params: &TorusParams) -> Result<u64> {
    params.require_knot()?;
    Ok(
        match (params.p.is_multiple_of(2), params.q.is_multiple_of(2)) {
            (true, false) => params.q,
            (false, true) => params.p,
            _ => 1,
        },
    )
}

/// Nontrivial ℓ-colorings exist iff ℓ divides Δ(-1).
pub fn ell_colorable(params: &TorusParams, ell: u64) -> Result<bool> {
    arith::require_prime(&ell)?;
    Ok(determinant(params).is_multiple_of(&BigInt::from(ell)))
}

/// Multiplicity of `(t + 1)` in Δ reduced modulo ℓ.
pub fn coloring_zero_order(params: &TorusParams, ell: u64) -> Result<u32> {
    arith::require_prime(&ell)?;
    let modulus = BigInt::from(ell);
    let mut coeffs: Vec<u64> = alexander_poly(params)
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&modulus).to_u64().expect("reduced below ell"))
        .collect();
    let mut order = 0;
    loop {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Ok(order);
        }
        // synthetic division by (t + 1) over F_ℓ
        let n = coeffs.len() - 1;
        let mut quotient = vec![0u64; n];
        let mut carry = 0u64;
        for i in (0..n).rev() {
            carry = (coeffs[i + 1] + ell - carry) % ell;
            quotient[i] = carry;
        }
        let remainder = (coeffs[0] + ell - carry) % ell;
        if remainder != 0 {
            return Ok(order);
        }
        coeffs = quotient;
        order += 1;
    }
}
