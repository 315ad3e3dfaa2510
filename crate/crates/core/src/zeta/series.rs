use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::PointCounts;
use crate::error::{Error, Result};
use crate::IntPoly;

/// Truncation `z_0 + z_1 T + ... + z_m T^m` of a zeta function, `z_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrefix {
    #[serde(with = "crate::json::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl SeriesPrefix {
    /// Wraps raw coefficients; the constant term must be 1.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.first().is_none_or(|c| *c != BigInt::from(1)) {
            return Err(Error::InvalidParams("series must start with 1".into()));
        }
        Ok(SeriesPrefix { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Index of the last stored coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

/// `exp(sum N_k T^k / k)` up to `T^m`, via `m z_m = sum_{k=1..m} N_k z_{m-k}`.
pub fn series_from_counts(counts: &PointCounts, m: usize) -> Result<SeriesPrefix> {
    let n: Vec<BigInt> = counts.counts.iter().map(|&c| BigInt::from(c)).collect();
    series_from_sequence(&n, m)
}

/// Same as [`series_from_counts`] on a bare count sequence `N_1, N_2, ...`.
pub fn series_from_sequence(counts: &[BigInt], m: usize) -> Result<SeriesPrefix> {
    if counts.len() < m {
        return Err(Error::InvalidParams(format!(
            "{} counts given, {m} needed",
            counts.len()
        )));
    }
    let mut z: Vec<BigInt> = Vec::with_capacity(m + 1);
    z.push(BigInt::from(1));
    for i in 1..=m {
        let mut acc = BigInt::zero();
        for k in 1..=i {
            acc += &counts[k - 1] * &z[i - k];
        }
        let (q, r) = acc.div_rem(&BigInt::from(i));
        if !r.is_zero() {
            return Err(Error::NonIntegralCoefficient { index: i });
        }
        if q.is_negative() {
            return Err(Error::NegativeCoefficient { index: i });
        }
        z.push(q);
    }
    Ok(SeriesPrefix { coeffs: z })
}

/// Power sums `s_1..s_m` of the reciprocal roots of `f` (with `f(0) = 1`):
/// `s_k = -k a_k - sum_{i=1}^{k-1} a_i s_{k-i}`.
pub fn power_sums(f: &IntPoly, m: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut v = -(f.coeff(k) * BigInt::from(k));
        for i in 1..k {
            v -= f.coeff(i) * &s[k - i - 1];
        }
        s.push(v);
    }
    s
}
