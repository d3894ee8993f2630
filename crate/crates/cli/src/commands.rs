//! One function per subcommand, each returning the text to print.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use torus_core::alexander::{
    alexander_poly, coloring_zero_order, cyclotomic_multiplicities, determinant, ell_colorable,
    knot_determinant_by_parity,
};
use torus_core::arith;
use torus_core::covers::{
    mahler_measure_quadrature, mahler_measure_roots, tower_orders_knot, TowerLevel,
};
use torus_core::distribution::{
    frequency_fr, frequency_limit, frequency_limit_coprime, scan as scan_family, scan_rows, Arc,
    Family, PairRow,
};
use torus_core::iwasawa::{
    knot_invariants_with_depth, link_invariants_with_depth, IwasawaInvariants,
};
use torus_core::moments::{mean_variance, parseval_check, MomentRecord, ResidueTable};
use torus_core::poly::Poly;
use torus_core::{AdmissibleVector, IntPolynomial, TorusParams};

use crate::output::{big, big_opt, big_vec, render, Failure};

#[derive(Serialize)]
struct PairInputs {
    p: u64,
    q: u64,
}

#[derive(Serialize)]
struct ParamsOut {
    p: u64,
    q: u64,
    d: u64,
    p_prime: u64,
    q_prime: u64,
    knot: bool,
}

impl From<&TorusParams> for ParamsOut {
    fn from(t: &TorusParams) -> Self {
        ParamsOut {
            p: t.p(),
            q: t.q(),
            d: t.d(),
            p_prime: t.p_prime(),
            q_prime: t.q_prime(),
            knot: t.is_knot(),
        }
    }
}

#[derive(Serialize)]
struct Coloring {
    ell: u64,
    colorable: bool,
    zero_order: u32,
}

#[derive(Serialize)]
struct InvariantOut {
    params: ParamsOut,
    #[serde(serialize_with = "big_vec")]
    coeffs: Vec<BigInt>,
    degree: usize,
    multiplicities: BTreeMap<u64, u32>,
    #[serde(serialize_with = "big")]
    determinant: BigInt,
    determinant_by_parity: Option<u64>,
    colorings: Vec<Coloring>,
}

pub fn invariant(p: u64, q: u64, max_ell: u64) -> Result<String, Failure> {
    let params = TorusParams::new(p, q)?;
    let delta = alexander_poly(&params);
    let colorings = (2..=max_ell)
        .filter(arith::is_prime)
        .map(|ell| {
            Ok(Coloring {
                ell,
                colorable: ell_colorable(&params, ell)?,
                zero_order: coloring_zero_order(&params, ell)?,
            })
        })
        .collect::<Result<_, Failure>>()?;
    let results = InvariantOut {
        params: (&params).into(),
        degree: delta.degree().unwrap_or(0),
        coeffs: delta.into_coeffs(),
        multiplicities: cyclotomic_multiplicities(&params).entries().clone(),
        determinant: determinant(&params),
        determinant_by_parity: knot_determinant_by_parity(&params).ok(),
        colorings,
    };
    #[derive(Serialize)]
    struct Inputs {
        p: u64,
        q: u64,
        max_ell: u64,
    }
    render("invariant", Inputs { p, q, max_ell }, results)
}

#[derive(Serialize)]
struct Residue {
    k: u64,
    n: u64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct MomentsOut {
    period: u64,
    #[serde(serialize_with = "big_vec")]
    values: Vec<BigInt>,
    #[serde(serialize_with = "big")]
    mean: BigInt,
    #[serde(serialize_with = "big")]
    variance: BigInt,
    residues: Vec<Residue>,
    parseval_gap: f64,
}

pub fn moments(p: u64, q: u64) -> Result<String, Failure> {
    let params = TorusParams::new(p, q)?;
    let record = MomentRecord::new(&params)?;
    let (mean, variance) = mean_variance(&record)?;
    let residues = ResidueTable::<f64>::new(&params)?
        .entries()
        .iter()
        .map(|(xi, r)| Residue {
            k: xi.numerator(),
            n: xi.order(),
            re: r.re,
            im: r.im,
        })
        .collect();
    let results = MomentsOut {
        period: record.period(),
        values: record.values().to_vec(),
        mean,
        variance,
        residues,
        parseval_gap: parseval_check::<f64>(&params)?,
    };
    render("moments", PairInputs { p, q }, results)
}

pub struct ScanArgs {
    pub x: u64,
    pub family: String,
    pub arc: Vec<String>,
    pub freq: Option<u64>,
    pub per_pair: Option<PathBuf>,
    pub csv: bool,
}

fn parse_endpoint(s: &str) -> Result<BigRational, Failure> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(Failure::usage(format!(
            "arc endpoint {s:?} must be a rational a/b, not a float"
        )));
    }
    BigRational::from_str(s).map_err(|_| Failure::usage(format!("cannot parse arc endpoint {s:?}")))
}

fn parse_arc(parts: &[String]) -> Result<Arc, Failure> {
    let (a, b) = match parts {
        [] => return Ok(Arc::full()),
        [single] => {
            let inner = single.trim().trim_start_matches('[').trim_end_matches(']');
            match inner.split_once(',') {
                Some((a, b)) => (parse_endpoint(a)?, parse_endpoint(b)?),
                None => {
                    return Err(Failure::usage(format!(
                        "arc {single:?} should look like [a/b,c/d]"
                    )))
                }
            }
        }
        [a, b] => (parse_endpoint(a)?, parse_endpoint(b)?),
        _ => return Err(Failure::usage("an arc has two endpoints")),
    };
    Arc::new(a, b).map_err(|e| Failure::usage(e.to_string()))
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
struct Frequency {
    r: u64,
    value: String,
    value_f64: f64,
    limit: String,
    limit_coprime: String,
}

#[derive(Serialize)]
struct ScanOut {
    t_count: u64,
    omega_count: u64,
    arc_count: u64,
    predicted_ratio: String,
    observed_ratio: Option<String>,
    observed_f64: Option<f64>,
    deviation: Option<f64>,
    frequency: Option<Frequency>,
}

#[derive(Serialize)]
struct CsvRow {
    p: u64,
    q: u64,
    d: u64,
    roots_total: u64,
    roots_in_arc: u64,
}

impl From<&PairRow> for CsvRow {
    fn from(r: &PairRow) -> Self {
        CsvRow {
            p: r.p,
            q: r.q,
            d: r.d,
            roots_total: r.roots_total,
            roots_in_arc: r.roots_in_arc,
        }
    }
}

fn write_rows<W: std::io::Write>(rows: &[PairRow], out: W) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(CsvRow::from(row))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn scan(args: ScanArgs) -> Result<String, Failure> {
    let family = Family::from_str(&args.family).map_err(|e| Failure::usage(e.to_string()))?;
    let arc = parse_arc(&args.arc)?;
    if args.per_pair.is_some() || args.csv {
        let rows = scan_rows(args.x, family, &arc);
        if let Some(path) = &args.per_pair {
            write_rows(&rows, std::fs::File::create(path)?)?;
        }
        if args.csv {
            let mut buf = Vec::new();
            write_rows(&rows, &mut buf)?;
            return String::from_utf8(buf).map_err(|e| Failure::internal(e.to_string()));
        }
    }
    let report = scan_family(args.x, family, &arc)?;
    let frequency = args
        .freq
        .map(|r| {
            let value = frequency_fr(args.x, r)?;
            Ok::<_, Failure>(Frequency {
                r,
                value_f64: value.to_f64().unwrap_or(f64::NAN),
                value: ratio_string(&value),
                limit: ratio_string(&frequency_limit(r)?),
                limit_coprime: ratio_string(&frequency_limit_coprime(r)?),
            })
        })
        .transpose()?;
    let results = ScanOut {
        t_count: report.t_count,
        omega_count: report.omega_count,
        arc_count: report.arc_count,
        predicted_ratio: ratio_string(&report.predicted_ratio),
        observed_f64: report.observed_ratio.as_ref().and_then(|r| r.to_f64()),
        observed_ratio: report.observed_ratio.as_ref().map(ratio_string),
        deviation: report.deviation(),
        frequency,
    };
    #[derive(Serialize)]
    struct Inputs {
        x: u64,
        family: &'static str,
        arc: [String; 2],
        freq: Option<u64>,
    }
    let inputs = Inputs {
        x: args.x,
        family: family.name(),
        arc: [ratio_string(arc.start()), ratio_string(arc.end())],
        freq: args.freq,
    };
    render("scan", inputs, results)
}

#[derive(Serialize)]
struct LevelOut {
    n: u32,
    #[serde(serialize_with = "big")]
    order: BigInt,
    valuation: Option<u32>,
    #[serde(serialize_with = "big_opt")]
    closed_form: Option<BigInt>,
}

impl From<&TowerLevel> for LevelOut {
    fn from(l: &TowerLevel) -> Self {
        LevelOut {
            n: l.n,
            order: l.order.clone(),
            valuation: l.valuation,
            closed_form: l.closed_form.clone(),
        }
    }
}

#[derive(Serialize)]
struct InvariantsOut {
    mu: u32,
    lambda: u64,
    nu: Option<i64>,
    nu_kind: &'static str,
}

impl From<&IwasawaInvariants> for InvariantsOut {
    fn from(inv: &IwasawaInvariants) -> Self {
        InvariantsOut {
            mu: inv.mu,
            lambda: inv.lambda,
            nu: inv.nu.value(),
            nu_kind: inv.nu.kind(),
        }
    }
}

#[derive(Serialize)]
struct TowerOut {
    params: ParamsOut,
    alpha: i64,
    v: u32,
    relative: bool,
    levels: Vec<LevelOut>,
    infinite_at: Option<u32>,
    invariants: InvariantsOut,
    /// Knots: every level matched `b^{ℓ^{min(n,r)}-1}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_agrees: Option<bool>,
    /// Links: `(d - 2) ℓ^{v_ℓ(α)}` and the factor-by-factor λ.
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger_lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_closed_form: Option<bool>,
}

fn tower_csv(levels: &[LevelOut]) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["n", "order", "valuation", "closed_form"])?;
    for l in levels {
        writer.write_record([
            l.n.to_string(),
            l.order.to_string(),
            l.valuation.map(|v| v.to_string()).unwrap_or_default(),
            l.closed_form
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_default(),
        ])?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))
}

pub fn tower(
    p: u64,
    q: u64,
    z: Option<Vec<i64>>,
    ell: u64,
    n: u32,
    csv: bool,
) -> Result<String, Failure> {
    let params = TorusParams::new(p, q)?;
    let z = match z {
        Some(entries) => AdmissibleVector::new(entries)?,
        None => AdmissibleVector::ones(params.d() as usize),
    };
    let results = if params.is_knot() {
        let report = tower_orders_knot(&params, ell, n)?;
        let invariants = knot_invariants_with_depth(&params, ell, n)?;
        TowerOut {
            params: (&params).into(),
            alpha: z.alpha(),
            v: report.v,
            relative: report.relative,
            levels: report.levels.iter().map(LevelOut::from).collect(),
            infinite_at: report.infinite_at(),
            invariants: (&invariants).into(),
            closed_form_agrees: Some(
                report
                    .levels
                    .iter()
                    .all(|l| l.closed_form.as_ref() == Some(&l.order)),
            ),
            closed_form_lambda: None,
            ledger_lambda: None,
            matches_closed_form: None,
        }
    } else {
        let inv = link_invariants_with_depth(&params, &z, ell, n)?;
        TowerOut {
            params: (&params).into(),
            alpha: z.alpha(),
            v: inv.tower.v,
            relative: inv.tower.relative,
            levels: inv.tower.levels.iter().map(LevelOut::from).collect(),
            infinite_at: inv.tower.infinite_at(),
            invariants: (&inv.invariants).into(),
            closed_form_agrees: None,
            closed_form_lambda: Some(inv.closed_form_lambda),
            ledger_lambda: Some(inv.ledger_lambda),
            matches_closed_form: Some(inv.matches_closed_form()),
        }
    };
    if csv {
        return tower_csv(&results.levels);
    }
    #[derive(Serialize)]
    struct Inputs {
        p: u64,
        q: u64,
        z: Vec<i64>,
        ell: u64,
        n: u32,
    }
    let inputs = Inputs {
        p,
        q,
        z: z.entries().to_vec(),
        ell,
        n,
    };
    render("tower", inputs, results)
}

#[derive(Serialize)]
struct MahlerOut {
    #[serde(serialize_with = "big_vec")]
    coeffs: Vec<BigInt>,
    measure_roots: f64,
    log_measure_roots: f64,
    log_measure_quadrature: f64,
    gap: f64,
}

pub fn mahler(
    p: Option<u64>,
    q: Option<u64>,
    poly: Option<Vec<i64>>,
    grid: usize,
) -> Result<String, Failure> {
    let f: IntPolynomial = match (p, q, &poly) {
        (Some(p), Some(q), None) => alexander_poly(&TorusParams::new(p, q)?),
        (None, None, Some(c)) => Poly::new(c.iter().map(|&x| BigInt::from(x)).collect()),
        _ => return Err(Failure::usage("give either p and q, or --poly")),
    };
    let measure: f64 = mahler_measure_roots(&f)?;
    let quadrature: f64 = mahler_measure_quadrature(&f, grid)?;
    let results = MahlerOut {
        coeffs: f.coeffs().to_vec(),
        measure_roots: measure,
        log_measure_roots: measure.ln(),
        log_measure_quadrature: quadrature,
        gap: (measure.ln() - quadrature).abs(),
    };
    #[derive(Serialize)]
    struct Inputs {
        p: Option<u64>,
        q: Option<u64>,
        poly: Option<Vec<i64>>,
        grid: usize,
    }
    render("mahler", Inputs { p, q, poly, grid }, results)
}
