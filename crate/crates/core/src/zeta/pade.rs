use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::SeriesPrefix;
use crate::error::{Error, Result};
use crate::{IntPoly, Poly, RatPoly};

fn to_rat(f: &IntPoly) -> RatPoly {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// Clears denominators of a polynomial with constant term 1; fails unless the
/// result is already integral.
fn to_int(f: &RatPoly) -> Result<IntPoly> {
    let mut out = Vec::with_capacity(f.len());
    for c in f.coeffs() {
        if !c.is_integer() {
            return Err(Error::NonIntegerOutput);
        }
        out.push(c.to_integer());
    }
    Ok(IntPoly::new(out))
}

/// Approximants from the Euclidean remainder sequence of `(T^len, S mod T^len)`.
///
/// Each step yields `(r_j, t_j)` with `r_j = t_j S mod T^len`. Steps where
/// `t_j(0) = 0` are skipped.
fn remainder_sequence(
    series: &[BigInt],
    len: usize,
    stop_at: Option<usize>,
) -> Vec<(RatPoly, RatPoly)> {
    let s = Poly::new(
        series[..len]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    let mut r0 = RatPoly::monomial(BigRational::one(), len);
    let mut r1 = s;
    let mut t0 = RatPoly::zero();
    let mut t1 = RatPoly::one();
    let mut out = Vec::new();
    loop {
        if !t1.constant_term().is_zero() {
            out.push((r1.clone(), t1.clone()));
        }
        let d = match r1.degree() {
            Some(d) => d,
            None => break,
        };
        if stop_at.is_some_and(|b| d <= b) {
            break;
        }
        let (q, r) = r0.div_rem(&r1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    out
}

/// Normalizes `p/q` to lowest terms with both constant terms 1 and integral coefficients.
pub fn reduce_fraction(p: &RatPoly, q: &RatPoly) -> Result<(IntPoly, IntPoly)> {
    let g = p.gcd(q);
    let (p, _) = p.div_rem(&g);
    let (q, _) = q.div_rem(&g);
    let q0 = q.constant_term();
    if q0.is_zero() {
        return Err(Error::NoApproximant);
    }
    let p = p.scale(&(BigRational::one() / q0.clone()));
    let q = q.scale(&(BigRational::one() / q0));
    if p.constant_term() != BigRational::one() {
        return Err(Error::NonIntegerOutput);
    }
    Ok((to_int(&p)?, to_int(&q)?))
}

/// Padé approximant of type `(bound, bound)` from `2 bound + 1` coefficients,
/// reduced to lowest terms.
pub fn pade_reconstruct(series: &SeriesPrefix, bound: usize) -> Result<(IntPoly, IntPoly)> {
    let len = 2 * bound + 1;
    if series.coeffs().len() < len {
        return Err(Error::InvalidParams(format!(
            "bound {bound} needs {len} series coefficients, got {}",
            series.coeffs().len()
        )));
    }
    let (p, q) = remainder_sequence(series.coeffs(), len, Some(bound))
        .pop()
        .filter(|(p, q)| {
            p.degree().is_none_or(|d| d <= bound) && q.degree().is_some_and(|d| d <= bound)
        })
        .ok_or(Error::NoApproximant)?;
    check_congruence(series.coeffs(), len, &p, &q)?;
    reduce_fraction(&p, &q)
}

/// Every reduced approximant `P/Q` with `deg P + deg Q < len` agreeing with the
/// series modulo `T^len`, one per step of the remainder sequence.
pub fn pade_candidates(series: &SeriesPrefix, len: usize) -> Vec<(IntPoly, IntPoly)> {
    if series.coeffs().len() < len {
        return Vec::new();
    }
    remainder_sequence(series.coeffs(), len, None)
        .into_iter()
        .filter(|(p, q)| {
            let dp = p.degree().unwrap_or(0);
            let dq = q.degree().unwrap_or(0);
            dp + dq < len && check_congruence(series.coeffs(), len, p, q).is_ok()
        })
        .filter_map(|(p, q)| reduce_fraction(&p, &q).ok())
        .collect()
}

fn check_congruence(series: &[BigInt], len: usize, p: &RatPoly, q: &RatPoly) -> Result<()> {
    let s = Poly::new(
        series[..len]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    if q.mul_trunc(&s, len) == p.truncate(len) {
        Ok(())
    } else {
        Err(Error::NoApproximant)
    }
}

/// Lowest-terms integer form of a rational function given by integer polynomials.
pub fn reduce_int_fraction(p: &IntPoly, q: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    reduce_fraction(&to_rat(p), &to_rat(q))
}
