//! Exact `p`-adic slopes of zeta factors and their Weil weights.

mod newton;
mod roots;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use newton::{check_divisibility, newton_polygon, valuation, NewtonPolygon};
pub use roots::polynomial_roots;

use crate::error::{Error, Result};
use crate::zeta::MAX_FACTOR_DEGREE;
use crate::IntPoly;

/// Numerator (reciprocal zeros) or denominator (reciprocal poles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Zero,
    Pole,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Zero => write!(f, "zero"),
            Side::Pole => write!(f, "pole"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightOptions {
    /// Relative accuracy of the computed roots.
    pub root_tol: f64,
    /// Largest allowed distance of a weight estimate from the common integer.
    pub snap: f64,
}

impl Default for WeightOptions {
    fn default() -> Self {
        WeightOptions {
            root_tol: 1e-9,
            snap: 0.01,
        }
    }
}

/// An irreducible zeta factor with its weight and smallest `q`-adic valuation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedFactor {
    #[serde(with = "crate::json::int_poly")]
    pub poly: IntPoly,
    pub multiplicity: u32,
    pub side: Side,
    pub weight: u32,
    /// Minimum Newton slope divided by `e`.
    pub min_vq: Ratio<i64>,
    /// Moduli of the reciprocal roots.
    pub root_moduli: Vec<f64>,
}

/// Moduli `|alpha|` of the reciprocal roots of `f` (roots of `T^d f(1/T)`).
pub fn reciprocal_root_moduli(f: &IntPoly, opts: &WeightOptions) -> Result<Vec<f64>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::InvalidParams(
            "constant polynomial has no roots".into(),
        ));
    }
    if d > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: d,
            max: MAX_FACTOR_DEGREE,
        });
    }
    if f.constant_term() == BigInt::from(0) {
        return Err(Error::ZeroConstantTerm);
    }
    let rev: Vec<f64> = f
        .coeffs()
        .iter()
        .rev()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if rev.iter().any(|c| !c.is_finite()) {
        return Err(Error::RootFindingFailed("coefficient overflows f64".into()));
    }
    let roots = polynomial_roots(&rev, opts.root_tol, opts.root_tol * 10.0, 5000)?;
    Ok(roots.iter().map(|z| z.norm()).collect())
}

/// Raw estimates `2 ln|alpha| / ln q`, one per reciprocal root.
pub fn weight_estimates(f: &IntPoly, q: u64, opts: &WeightOptions) -> Result<Vec<f64>> {
    let lq = (q as f64).ln();
    Ok(reciprocal_root_moduli(f, opts)?
        .into_iter()
        .map(|m| 2.0 * m.ln() / lq)
        .collect())
}

/// Common integer weight `w` of all reciprocal roots of an irreducible factor.
///
/// Besides the numeric snap this requires `lc(f)^2 = q^(d w)`, which holds exactly
/// for every pure factor with constant term `+-1`.
pub fn weight_of_factor(f: &IntPoly, q: u64, opts: &WeightOptions) -> Result<u32> {
    let est = weight_estimates(f, q, opts)?;
    let mean = est.iter().sum::<f64>() / est.len() as f64;
    let w = mean.round();
    if w < 0.0 || est.iter().any(|x| (x - w).abs() > opts.snap) {
        return Err(Error::ImpureFactor(format!(
            "{f}: weight estimates {}",
            est.iter()
                .map(|x| format!("{x:.4}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let w = w as u32;
    let d = f.degree().expect("nonzero") as u32;
    let lead = f.leading().expect("nonzero").abs();
    if f.constant_term().abs() != BigInt::from(1) || &lead * &lead != BigInt::from(q).pow(d * w) {
        return Err(Error::ImpureFactor(format!(
            "{f}: leading coefficient {lead} is not q^(d w / 2) for w = {w}"
        )));
    }
    Ok(w)
}

/// Weight, valuation and root diagnostics of one irreducible factor.
pub fn analyze_factor(
    poly: &IntPoly,
    multiplicity: u32,
    side: Side,
    p: u64,
    e: u32,
    opts: &WeightOptions,
) -> Result<WeightedFactor> {
    let q = p.pow(e);
    let weight = weight_of_factor(poly, q, opts)?;
    let np = newton_polygon(poly, p)?;
    let min_slope = np
        .min_slope()
        .ok_or(Error::InvalidParams("constant factor".into()))?;
    Ok(WeightedFactor {
        poly: poly.clone(),
        multiplicity,
        side,
        weight,
        min_vq: min_slope / Ratio::from_integer(e as i64),
        root_moduli: reciprocal_root_moduli(poly, opts)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn examples() {
        let o = WeightOptions::default();
        assert_eq!(weight_of_factor(&ip(&[1, -3]), 3, &o).unwrap(), 2);
        assert_eq!(weight_of_factor(&ip(&[1, 2, 2]), 2, &o).unwrap(), 1);
        assert_eq!(weight_of_factor(&ip(&[1, -1]), 5, &o).unwrap(), 0);
    }

    #[test]
    fn impure_factors_are_rejected() {
        let o = WeightOptions::default();
        // 1 - 6T over q = 3: |alpha| = 6 is not a power of sqrt 3
        assert!(matches!(
            weight_of_factor(&ip(&[1, -6]), 3, &o),
            Err(Error::ImpureFactor(_))
        ));
        // (1 - T)(1 - 9T): roots of different weight
        assert!(matches!(
            weight_of_factor(&ip(&[1, -10, 9]), 3, &o),
            Err(Error::ImpureFactor(_))
        ));
    }

    #[test]
    fn tolerance_does_not_change_weight() {
        let loose = WeightOptions {
            root_tol: 1e-7,
            ..WeightOptions::default()
        };
        // L-polynomial of an elliptic curve over F_5 with a_5 = -2
        let f = ip(&[1, 2, 5]);
        assert_eq!(
            weight_of_factor(&f, 5, &loose).unwrap(),
            weight_of_factor(&f, 5, &WeightOptions::default()).unwrap()
        );
    }

    #[test]
    fn analyze_quadratic_over_f9() {
        // 1 - 9T with q = 9: weight 2, v_q = 1
        let wf = analyze_factor(
            &ip(&[1, -9]),
            1,
            Side::Pole,
            3,
            2,
            &WeightOptions::default(),
        )
        .unwrap();
        assert_eq!(wf.weight, 2);
        assert_eq!(wf.min_vq, Ratio::from_integer(1));
        let text = serde_json::to_string(&wf).unwrap();
        let back: WeightedFactor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, wf);
    }
}
