//! Divisibility checks on point counts and on zeta factors.
//!
//! Every check on a zeta function is stated for the reciprocal roots that survive
//! in the reduced fraction. Cancellation between cohomological degrees can only
//! remove eigenvalues, so a bound verified on the survivors is never overstated.

mod report;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use report::{
    AxKatzReport, CountRow, DimSource, DivisibilityReport, DivisibilityRow, ExcisionReport,
    ExcisionRow, PolarReport, ProbeReport, ProbeStatus, ProjectiveReport, SpecSummary, Verdict,
};

use crate::algebra::{Ambient, FieldMultiPoly, VarietySpec};
use crate::counting::{ambient_count, count, extension_order, CountOptions};
use crate::error::{Error, Result};
use crate::mu::{compute_mu, MuParams};
use crate::padic::{
    analyze_factor, check_divisibility, weight_of_factor, Side, WeightOptions, WeightedFactor,
};
use crate::zeta::{factor_integer_poly, zeta_from_counter, ZetaFunction, ZetaOptions};

/// Label carried by every probe report.
pub const PROBE_LABEL: &str = "open-question probe";

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct VerifyOptions {
    pub zeta: ZetaOptions,
    pub weight: WeightOptions,
    /// Dimension supplied by the user instead of the estimate.
    pub dim_override: Option<i64>,
}

impl VerifyOptions {
    pub fn with_budget(budget: u64) -> Self {
        let mut o = VerifyOptions::default();
        o.zeta.count.budget = budget;
        o
    }
}

/// Half the largest pole weight of a reduced zeta function, `-1` for `Z = 1`.
pub fn estimate_dimension(z: &ZetaFunction, opts: &WeightOptions) -> Result<i64> {
    if z.is_one() {
        return Ok(-1);
    }
    if z.denominator().is_one() {
        return Err(Error::NoTopPole);
    }
    let mut top = 0u32;
    for (f, _) in factor_integer_poly(z.denominator())? {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        top = top.max(weight_of_factor(&f, z.q(), opts)?);
    }
    if top % 2 == 1 {
        return Err(Error::OddTopWeight(top));
    }
    Ok(top as i64 / 2)
}

/// Irreducible factors of both sides with weights and valuations.
pub fn weighted_factors(
    z: &ZetaFunction,
    p: u64,
    e: u32,
    opts: &WeightOptions,
) -> Result<Vec<WeightedFactor>> {
    let mut out = Vec::new();
    for (side, poly) in [(Side::Zero, z.numerator()), (Side::Pole, z.denominator())] {
        if poly.is_one() {
            continue;
        }
        for (f, m) in factor_integer_poly(poly)? {
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            out.push(analyze_factor(&f, m, side, p, e, opts)?);
        }
    }
    Ok(out)
}

fn row(
    wf: &WeightedFactor,
    p: u64,
    e: u32,
    required: u32,
    mu_args: Option<MuParams>,
    justification: String,
) -> Result<DivisibilityRow> {
    Ok(DivisibilityRow {
        factor: wf.poly.clone(),
        multiplicity: wf.multiplicity,
        side: wf.side,
        weight: wf.weight,
        min_vq: wf.min_vq,
        required,
        mu_args,
        pass: check_divisibility(&wf.poly, p, e, required)?,
        justification,
    })
}

fn mu_row(
    wf: &WeightedFactor,
    p: u64,
    e: u32,
    params: MuParams,
    justification: String,
) -> Result<DivisibilityRow> {
    let required = compute_mu(&params)?;
    row(wf, p, e, required, Some(params), justification)
}

fn as_u32(x: i64) -> u32 {
    x.max(0) as u32
}

/// Counts of one variety, computed once per `k` and shared between fits.
struct CountCache<'a> {
    spec: &'a VarietySpec,
    opts: CountOptions,
    counts: Vec<u128>,
}

impl<'a> CountCache<'a> {
    fn new(spec: &'a VarietySpec, opts: CountOptions) -> Self {
        CountCache {
            spec,
            opts,
            counts: Vec::new(),
        }
    }

    fn get(&mut self, k: u32) -> Result<u128> {
        while self.counts.len() < k as usize {
            let next = self.counts.len() as u32 + 1;
            let n = count(self.spec, next, &self.opts)?;
            self.counts.push(n);
        }
        Ok(self.counts[k as usize - 1])
    }

    fn complement(&mut self, k: u32) -> Result<u128> {
        let n = self.get(k)?;
        Ok(ambient_count(
            self.spec.ambient(),
            self.spec.n(),
            extension_order(self.spec, k)?,
        ) - n)
    }
}

/// Zeta functions of the variety and of its complement from one set of counts,
/// cross-checked against the ambient zeta function.
fn zeta_pair(spec: &VarietySpec, opts: &ZetaOptions) -> Result<(ZetaFunction, ZetaFunction)> {
    let mut cache = CountCache::new(spec, opts.count);
    let (zx, _) = zeta_from_counter(spec.q(), opts, |k| cache.get(k))?;
    let (zc, _) = zeta_from_counter(spec.q(), opts, |k| cache.complement(k))?;
    let ambient = match spec.ambient() {
        Ambient::Affine => ZetaFunction::tate(spec.q(), &[spec.n() as u32]),
        Ambient::Projective => {
            ZetaFunction::tate(spec.q(), &(0..=spec.n() as u32).collect::<Vec<_>>())
        }
    };
    if zx.mul(&zc)? != ambient {
        return Err(Error::InternalInconsistency(format!(
            "Z(X) * Z(complement) = {} differs from the ambient zeta function",
            zx.mul(&zc)?
        )));
    }
    Ok((zx, zc))
}

fn resolve_dim(z: &ZetaFunction, opts: &VerifyOptions) -> Result<(i64, DimSource)> {
    match opts.dim_override {
        Some(d) => Ok((d, DimSource::User)),
        None => Ok((estimate_dimension(z, &opts.weight)?, DimSource::Estimated)),
    }
}

/// `q^(k mu_0)` divides the point counts (and the complement or cone counts).
pub fn verify_ax_katz(spec: &VarietySpec, kmax: u32, opts: &CountOptions) -> Result<AxKatzReport> {
    let n = spec.n() as u32;
    let e = spec.field().e();
    let p = spec.field().p();
    let mu_args = match spec.ambient() {
        Ambient::Affine => MuParams::new(0, n, spec.degrees())?,
        Ambient::Projective => MuParams::new(0, n + 1, spec.degrees())?,
    };
    let mu = compute_mu(&mu_args)?;
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let n_k = count(spec, k, opts)?;
        let big_q = extension_order(spec, k)?;
        let exponent = e * k * mu;
        let modulus = BigInt::from(p).pow(exponent);
        let mut push = |form: &str, c: u128| {
            rows.push(CountRow {
                k,
                form: form.into(),
                count: c,
                exponent,
                pass: BigInt::from(c).mod_floor(&modulus).is_zero(),
            })
        };
        match spec.ambient() {
            Ambient::Affine => {
                push("variety", n_k);
                push(
                    "complement",
                    ambient_count(Ambient::Affine, spec.n(), big_q) - n_k,
                );
            }
            Ambient::Projective => {
                push(
                    "complement",
                    ambient_count(Ambient::Projective, spec.n(), big_q) - n_k,
                );
                push("cone", 1 + (big_q - 1) * n_k);
            }
        }
    }
    Ok(AxKatzReport {
        spec: spec.into(),
        mu,
        mu_args,
        overall: Verdict::from_flags(rows.iter().map(|r| r.pass)),
        rows,
    })
}

/// Bounds on the reciprocal roots of `Z(P^n \ Y)` and `Z(Y)` for projective `Y`.
pub fn verify_projective_bounds(
    spec: &VarietySpec,
    opts: &VerifyOptions,
) -> Result<ProjectiveReport> {
    if spec.ambient() != Ambient::Projective {
        return Err(Error::InvalidVariety(
            "projective bounds need a projective variety".into(),
        ));
    }
    let summary = SpecSummary::from(spec);
    let source = if opts.dim_override.is_some() {
        DimSource::User
    } else {
        DimSource::Estimated
    };
    let errored =
        |err: &Error, zy: Option<ZetaFunction>, zc: Option<ZetaFunction>, dim| ProjectiveReport {
            spec: summary.clone(),
            dim_used: dim,
            dim_source: source,
            complement: DivisibilityReport::failed("complement", zc, err),
            variety: DivisibilityReport::failed("variety", zy, err),
            overall: Verdict::Error,
        };
    let (zy, zc) = match zeta_pair(spec, &opts.zeta) {
        Ok(pair) => pair,
        Err(e) if e.kind() == crate::ErrorKind::Computation => {
            return Ok(errored(&e, None, None, None))
        }
        Err(e) => return Err(e),
    };
    let (dim, source) = match resolve_dim(&zy, opts) {
        Ok(d) => d,
        Err(e) => return Ok(errored(&e, Some(zy), Some(zc), None)),
    };
    let (p, e) = (spec.field().p(), spec.field().e());
    let n1 = spec.n() as u32 + 1;
    let degrees = spec.degrees();
    let max_d = *degrees.iter().max().expect("r >= 1");

    let complement = (|| -> Result<DivisibilityReport> {
        let mut rows = Vec::new();
        for wf in weighted_factors(&zc, p, e, &opts.weight)? {
            let w = wf.weight as i64;
            let j = (w - dim - 1).clamp(0, dim + 1);
            let why = format!(
                "weight {w} sits in H_c^i with i >= {w}; degrees i >= dim + 1 = {} carry the complement bound mu_(i - dim - 1)(n + 1; d), degrees below use the Ax-Katz-type bound mu_0(n + 1; d), and mu is increasing in j, so J = clamp({w} - {dim} - 1, 0, {}) = {j}",
                dim + 1,
                dim + 1
            );
            rows.push(mu_row(&wf, p, e, MuParams::new(as_u32(j), n1, degrees)?, why)?);
        }
        Ok(DivisibilityReport::from_rows("complement", zc.clone(), rows))
    })()
    .unwrap_or_else(|err| DivisibilityReport::failed("complement", Some(zc.clone()), &err));

    let variety = (|| -> Result<DivisibilityReport> {
        let mut rows = Vec::new();
        for wf in weighted_factors(&zy, p, e, &opts.weight)? {
            let w = wf.weight as i64;
            let r = if w < dim {
                let why = format!(
                    "weight {w} < dim {dim}: the class sits below the middle degree, where cohomology is spanned by ambient Tate classes; only algebraic integrality is claimed"
                );
                row(&wf, p, e, 0, None, why)?
            } else if max_d > 1 {
                let j = as_u32(w - dim);
                let why = format!(
                    "max degree {max_d} > 1: eigenvalues on H^(dim + j) are divisible by q^mu_j(n + 1; d); weight {w} forces j >= {j}"
                );
                mu_row(&wf, p, e, MuParams::new(j, n1, degrees)?, why)?
            } else {
                let why = format!(
                    "linear equations: Deligne integrality baseline, exponent w - dim = {}",
                    w - dim
                );
                row(&wf, p, e, as_u32(w - dim), None, why)?
            };
            rows.push(r);
        }
        Ok(DivisibilityReport::from_rows("variety", zy.clone(), rows))
    })()
    .unwrap_or_else(|err| DivisibilityReport::failed("variety", Some(zy.clone()), &err));

    Ok(ProjectiveReport {
        spec: summary,
        dim_used: Some(dim),
        dim_source: source,
        overall: complement.overall.combine(variety.overall),
        complement,
        variety,
    })
}

/// Reciprocal poles of `Z(X, T)^{(-1)^(dim X - 1)}` are divisible by `q^mu_1(n; d)`.
pub fn verify_polar(
    spec: &VarietySpec,
    assert_ci: bool,
    opts: &VerifyOptions,
) -> Result<PolarReport> {
    if spec.ambient() != Ambient::Affine {
        return Err(Error::InvalidVariety(
            "the polar bound needs an affine variety".into(),
        ));
    }
    let summary = SpecSummary::from(spec);
    let source = if opts.dim_override.is_some() {
        DimSource::User
    } else {
        DimSource::Estimated
    };
    let errored = |err: &Error, z: Option<ZetaFunction>, dim| PolarReport {
        spec: summary.clone(),
        dim_used: dim,
        dim_source: source,
        asserted_ci: assert_ci,
        orientation: 0,
        poles: DivisibilityReport::failed("polar", z, err),
        overall: Verdict::Error,
    };
    let mut cache = CountCache::new(spec, opts.zeta.count);
    let z = match zeta_from_counter(spec.q(), &opts.zeta, |k| cache.get(k)) {
        Ok((z, _)) => z,
        Err(e) if e.kind() == crate::ErrorKind::Computation => return Ok(errored(&e, None, None)),
        Err(e) => return Err(e),
    };
    let (dim, source) = match resolve_dim(&z, opts) {
        Ok(d) => d,
        Err(e) => return Ok(errored(&e, Some(z), None)),
    };
    let expected = spec.n() as i64 - spec.r() as i64;
    if !assert_ci && dim != expected {
        return Err(Error::NotCompleteIntersection { dim, expected });
    }
    let orientation = if (dim - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let (p, e) = (spec.field().p(), spec.field().e());
    let pole_side = if orientation == 1 {
        Side::Pole
    } else {
        Side::Zero
    };
    let params = MuParams::new(1, spec.n() as u32, spec.degrees())?;
    let poles = (|| -> Result<DivisibilityReport> {
        let mut rows = Vec::new();
        for wf in weighted_factors(&z, p, e, &opts.weight)? {
            if wf.side != pole_side {
                continue;
            }
            let why = format!(
                "complete intersection of dimension {dim}: Z^({orientation}) has its poles on the {pole_side} side; each is divisible by q^mu_1(n; d)"
            );
            rows.push(mu_row(&wf, p, e, params.clone(), why)?);
        }
        Ok(DivisibilityReport::from_rows("polar", z.clone(), rows))
    })()
    .unwrap_or_else(|err| DivisibilityReport::failed("polar", Some(z.clone()), &err));
    Ok(PolarReport {
        spec: summary,
        dim_used: Some(dim),
        dim_source: source,
        asserted_ci: assert_ci,
        orientation,
        overall: poles.overall,
        poles,
    })
}

/// The homogenized closure `Y` of an affine variety and its part at infinity `Y_inf`.
pub fn closure_and_infinity(spec: &VarietySpec) -> Result<(VarietySpec, VarietySpec)> {
    let y = spec.projective_closure()?;
    let at_inf: Vec<FieldMultiPoly> = y.polys().iter().map(|g| g.restrict_to_infinity()).collect();
    let y_inf = VarietySpec::from_field_polys_allow_point(
        spec.field().clone(),
        Ambient::Projective,
        spec.n() - 1,
        at_inf,
    )?;
    Ok((y, y_inf))
}

/// `#(P^n \ Y) = #(A^n \ X) + #(P^(n-1) \ Y_inf)` over `F_{q^k}`, `k <= kmax`.
pub fn verify_excision(
    spec: &VarietySpec,
    kmax: u32,
    opts: &CountOptions,
) -> Result<ExcisionReport> {
    if spec.ambient() != Ambient::Affine {
        return Err(Error::InvalidVariety(
            "excision needs an affine variety".into(),
        ));
    }
    let (y, y_inf) = closure_and_infinity(spec)?;
    let n = spec.n();
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let big_q = extension_order(spec, k)?;
        let proj = ambient_count(Ambient::Projective, n, big_q) - count(&y, k, opts)?;
        let aff = ambient_count(Ambient::Affine, n, big_q) - count(spec, k, opts)?;
        let inf = ambient_count(Ambient::Projective, n - 1, big_q) - count(&y_inf, k, opts)?;
        rows.push(ExcisionRow {
            k,
            projective_complement: proj,
            affine_complement: aff,
            infinity_complement: inf,
            pass: proj == aff + inf,
        });
    }
    Ok(ExcisionReport {
        spec: spec.into(),
        closure: y.polys().iter().map(|f| f.to_string()).collect(),
        infinity: y_inf.polys().iter().map(|f| f.to_string()).collect(),
        overall: Verdict::from_flags(rows.iter().map(|r| r.pass)),
        rows,
    })
}

/// Tests the affine analogue of the complement bounds on `X` and `A^n \ X`
/// without asserting it.
pub fn probe_affine(spec: &VarietySpec, opts: &VerifyOptions) -> Result<ProbeReport> {
    if spec.ambient() != Ambient::Affine {
        return Err(Error::InvalidVariety(
            "the probe needs an affine variety".into(),
        ));
    }
    let (zx, zc) = zeta_pair(spec, &opts.zeta)?;
    let (dim, _) = resolve_dim(&zx, opts)?;
    let (p, e) = (spec.field().p(), spec.field().e());
    let n = spec.n() as u32;
    let degrees = spec.degrees();
    let mut variety = Vec::new();
    for wf in weighted_factors(&zx, p, e, &opts.weight)? {
        let j = as_u32(wf.weight as i64 - dim);
        let why = format!(
            "probe: weight {} on H_c^(dim + j) of X with j >= {j}",
            wf.weight
        );
        variety.push(mu_row(&wf, p, e, MuParams::new(j, n, degrees)?, why)?);
    }
    let mut complement = Vec::new();
    for wf in weighted_factors(&zc, p, e, &opts.weight)? {
        let j = (wf.weight as i64 - dim - 1).clamp(0, dim.max(-1) + 1);
        let why = format!(
            "probe: weight {} on the complement, shifted index J = {j}",
            wf.weight
        );
        complement.push(mu_row(
            &wf,
            p,
            e,
            MuParams::new(as_u32(j), n, degrees)?,
            why,
        )?);
    }
    let violations = variety
        .iter()
        .chain(&complement)
        .filter(|r| !r.pass)
        .count();
    Ok(ProbeReport {
        label: PROBE_LABEL.into(),
        spec: spec.into(),
        dim_used: Some(dim),
        variety,
        complement,
        status: if violations == 0 {
            ProbeStatus::Satisfied
        } else {
            ProbeStatus::Violated
        },
        violations,
        note: "Only reciprocal roots surviving in the reduced zeta function are visible. \
               A violation here cannot tell a genuine counterexample apart from \
               cancellation between cohomological degrees; this tool cannot decide which."
            .into(),
    })
}
