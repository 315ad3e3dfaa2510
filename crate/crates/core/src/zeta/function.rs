use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::pade::reduce_int_fraction;
use super::series::power_sums;
use crate::error::{Error, Result};
use crate::IntPoly;

/// A zeta function `num(T) / den(T)` in lowest terms, both with constant term 1.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawZeta", into = "RawZeta")]
pub struct ZetaFunction {
    q: u64,
    num: IntPoly,
    den: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct RawZeta {
    q: u64,
    #[serde(with = "crate::json::int_poly")]
    num: IntPoly,
    #[serde(with = "crate::json::int_poly")]
    den: IntPoly,
}

impl TryFrom<RawZeta> for ZetaFunction {
    type Error = Error;

    fn try_from(raw: RawZeta) -> Result<Self> {
        ZetaFunction::new(raw.q, raw.num, raw.den)
    }
}

impl From<ZetaFunction> for RawZeta {
    fn from(z: ZetaFunction) -> Self {
        RawZeta {
            q: z.q,
            num: z.num,
            den: z.den,
        }
    }
}

impl ZetaFunction {
    /// Reduces `num / den` to lowest terms. Both must have constant term 1.
    pub fn new(q: u64, num: IntPoly, den: IntPoly) -> Result<Self> {
        if num.constant_term() != BigInt::one() || den.constant_term() != BigInt::one() {
            return Err(Error::InvalidParams(
                "zeta numerator and denominator need constant term 1".into(),
            ));
        }
        let (num, den) = reduce_int_fraction(&num, &den)?;
        Ok(ZetaFunction { q, num, den })
    }

    /// The constant function 1 (zeta of the empty variety).
    pub fn one(q: u64) -> Self {
        ZetaFunction {
            q,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// `prod_{i in exps} 1 / (1 - q^i T)`.
    pub fn tate(q: u64, exps: &[u32]) -> Self {
        let den = exps.iter().fold(IntPoly::one(), |acc, &i| {
            &acc * &IntPoly::one_minus(BigInt::from(q).pow(i))
        });
        ZetaFunction {
            q,
            num: IntPoly::one(),
            den,
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Total degree `deg num + deg den`.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// `N_1..N_m` recovered from the reciprocal roots: `N_k = s_k(den) - s_k(num)`.
    pub fn counts(&self, m: usize) -> Vec<BigInt> {
        let a = power_sums(&self.den, m);
        let b = power_sums(&self.num, m);
        a.into_iter().zip(b).map(|(x, y)| x - y).collect()
    }

    /// Power-series coefficients `z_0..z_m`.
    pub fn series(&self, m: usize) -> Vec<BigInt> {
        // z * den = num, den(0) = 1
        let mut z: Vec<BigInt> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut v = self.num.coeff(i);
            for j in 1..=i.min(self.den.len().saturating_sub(1)) {
                v -= self.den.coeff(j) * &z[i - j];
            }
            z.push(v);
        }
        z
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        ZetaFunction::new(self.q, &self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        ZetaFunction::new(self.q, &self.num * &other.den, &self.den * &other.num)
    }

    /// `1 / Z`.
    pub fn inverse(&self) -> Self {
        ZetaFunction {
            q: self.q,
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    fn same_q(&self, other: &Self) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.is_one() {
            write!(f, "1/({})", self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[q={}] = {self}", self.q)
    }
}
