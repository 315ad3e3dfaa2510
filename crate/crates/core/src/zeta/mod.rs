//! Zeta functions from point counts.
//!
//! [`zeta_of`] counts points over `F_{q^k}` for growing `k` and after each new count
//! tries every rational function whose total degree leaves `holdout` counts
//! unused by the fit. A candidate is accepted only if it reproduces every count
//! computed so far.

mod factor;
mod function;
mod pade;
mod series;

use num_bigint::BigInt;

pub use factor::{factor_integer_poly, MAX_FACTOR_DEGREE};
pub use function::ZetaFunction;
pub use pade::{pade_candidates, pade_reconstruct, reduce_int_fraction};
pub use series::{power_sums, series_from_counts, series_from_sequence, SeriesPrefix};

use crate::algebra::VarietySpec;
use crate::counting::{ambient_count, count, extension_order, CountOptions};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaOptions {
    /// Counts beyond those used by the fit that a candidate must reproduce.
    pub holdout: usize,
    /// Largest degree allowed for the numerator and for the denominator.
    pub max_bound: usize,
    pub count: CountOptions,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions {
            holdout: 2,
            max_bound: 32,
            count: CountOptions::default(),
        }
    }
}

/// Zeta function of `spec`, or of its complement in the ambient space.
pub fn zeta_of(spec: &VarietySpec, complement: bool, opts: &ZetaOptions) -> Result<ZetaFunction> {
    zeta_with_counts(spec, complement, opts).map(|(z, _)| z)
}

/// Like [`zeta_of`], also returning the counts `N_1..N_m` that certified the result.
pub fn zeta_with_counts(
    spec: &VarietySpec,
    complement: bool,
    opts: &ZetaOptions,
) -> Result<(ZetaFunction, Vec<BigInt>)> {
    zeta_from_counter(spec.q(), opts, |k| {
        let n_k = count(spec, k, &opts.count)?;
        Ok(if complement {
            ambient_count(spec.ambient(), spec.n(), extension_order(spec, k)?) - n_k
        } else {
            n_k
        })
    })
}

/// Runs the degree search on counts supplied one `k` at a time by `next(k)`.
pub fn zeta_from_counter(
    q: u64,
    opts: &ZetaOptions,
    mut next: impl FnMut(u32) -> Result<u128>,
) -> Result<(ZetaFunction, Vec<BigInt>)> {
    let mut counts: Vec<BigInt> = Vec::new();
    let max_len = 2 * opts.max_bound + opts.holdout;
    for k in 1..=max_len as u32 {
        let n_k = next(k).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded {
                k,
                completed: k - 1,
            },
            other => other,
        })?;
        counts.push(BigInt::from(n_k));
        if let Some(z) = fit_counts(q, &counts, opts.holdout, opts.max_bound)? {
            return Ok((z, counts));
        }
    }
    Err(Error::NotStabilized(opts.max_bound))
}

/// Tries the fits that become available with the last entry of `counts`: total
/// degree `counts.len() - holdout`, every numerator/denominator split.
pub fn fit_counts(
    q: u64,
    counts: &[BigInt],
    holdout: usize,
    max_bound: usize,
) -> Result<Option<ZetaFunction>> {
    let m = counts.len();
    // integrality of the whole prefix is a consistency check on the counts
    series_from_sequence(counts, m)?;
    if m < holdout {
        return Ok(None);
    }
    let total = m - holdout;
    if total == 0 {
        let one = ZetaFunction::one(q);
        return Ok(counts.iter().all(|c| c == &BigInt::from(0)).then_some(one));
    }
    let series = series_from_sequence(counts, total)?;
    let mut cands: Vec<ZetaFunction> = pade_candidates(&series, total + 1)
        .into_iter()
        .filter(|(p, d)| {
            p.degree().unwrap_or(0) <= max_bound && d.degree().unwrap_or(0) <= max_bound
        })
        .filter_map(|(p, d)| ZetaFunction::new(q, p, d).ok())
        .filter(|z| z.counts(m) == counts)
        .collect();
    cands.sort_by_key(|z| z.total_degree());
    Ok(cands.into_iter().next())
}
