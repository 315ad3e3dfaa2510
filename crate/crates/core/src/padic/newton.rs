use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::IntPoly;

/// Lower convex hull of `(i, v_p(a_i))` over the nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub p: u64,
    pub points: Vec<(usize, u32)>,
    pub vertices: Vec<(usize, u32)>,
    /// `(slope, multiplicity)`, slopes strictly increasing.
    pub slopes: Vec<(Ratio<i64>, usize)>,
}

impl NewtonPolygon {
    /// Slopes repeated by multiplicity (the valuations of the reciprocal roots).
    pub fn slope_multiset(&self) -> Vec<Ratio<i64>> {
        self.slopes
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m))
            .collect()
    }

    pub fn min_slope(&self) -> Option<Ratio<i64>> {
        self.slopes.first().map(|&(s, _)| s)
    }

    /// Length of the polygon (the degree of the polynomial).
    pub fn width(&self) -> usize {
        self.slopes.iter().map(|&(_, m)| m).sum()
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(a: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut a = a.clone();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let points: Vec<(usize, u32)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, valuation(c, p)))
        .collect();
    // monotone chain, lower part only
    let mut hull: Vec<(usize, u32)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as i64 - x1 as i64) * (pt.1 as i64 - y1 as i64)
                - (y2 as i64 - y1 as i64) * (pt.0 as i64 - x1 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let slopes = hull
        .windows(2)
        .map(|w| {
            let dx = (w[1].0 - w[0].0) as i64;
            let dy = w[1].1 as i64 - w[0].1 as i64;
            (Ratio::new(dy, dx), dx as usize)
        })
        .collect();
    Ok(NewtonPolygon {
        p,
        points,
        vertices: hull,
        slopes,
    })
}

/// True iff every reciprocal root of `f` is divisible by `q^mu`, `q = p^e`,
/// i.e. every slope is at least `mu * e`.
pub fn check_divisibility(f: &IntPoly, p: u64, e: u32, mu: u32) -> Result<bool> {
    let poly = newton_polygon(f, p)?;
    let bound = Ratio::from_integer(mu as i64 * e as i64);
    Ok(poly.min_slope().is_none_or(|s| s >= bound))
}
