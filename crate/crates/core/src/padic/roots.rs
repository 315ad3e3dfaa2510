//! Simultaneous root finding (Aberth–Ehrlich) over any `num_traits::Float`.

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

/// All complex roots of `sum a_i z^i` (constant first, nonzero leading term).
///
/// Iterates until every correction is below `tol` relative to its root, then
/// checks the normwise backward error of each root against `residual_tol`.
pub fn polynomial_roots<F: Float + FromPrimitive>(
    coeffs: &[F],
    tol: F,
    residual_tol: F,
    max_iter: usize,
) -> Result<Vec<Complex<F>>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if lead.is_zero() {
        return Err(Error::RootFindingFailed(
            "leading coefficient is zero".into(),
        ));
    }
    let a: Vec<Complex<F>> = coeffs
        .iter()
        .map(|&c| Complex::new(c / lead, F::zero()))
        .collect();
    // starting circle from the Cauchy-type bound max |a_i|^(1/(n-i))
    let radius = (0..n)
        .map(|i| {
            a[i].norm()
                .powf(F::one() / F::from_usize(n - i).expect("small"))
        })
        .fold(F::zero(), F::max)
        .max(F::from_f64(1e-3).expect("const"));
    let two_pi = F::from_f64(std::f64::consts::TAU).expect("const");
    let offset = F::from_f64(0.4).expect("const");
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let theta = two_pi * F::from_usize(k).expect("small")
                / F::from_usize(n).expect("small")
                + offset;
            Complex::from_polar(radius, theta)
        })
        .collect();
    // backward error at which a root is as good as the arithmetic allows
    let noise = F::epsilon() * F::from_usize(8 * (n + 1)).expect("small");
    let mut converged = false;
    for _ in 0..max_iter {
        let mut worst = F::zero();
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&a, z[i]);
            if p.norm() <= noise * abs_scale(&a, z[i]) {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(F::zero(), F::zero());
            for j in 0..n {
                if j != i {
                    sum = sum + Complex::new(F::one(), F::zero()) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex::new(F::one(), F::zero()) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] = z[i] - w;
            let rel = w.norm() / z[i].norm().max(F::min_positive_value());
            worst = worst.max(rel);
        }
        if worst <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootFindingFailed(format!(
            "no convergence in {max_iter} iterations"
        )));
    }
    for r in &z {
        let (p, _) = eval_with_derivative(&a, *r);
        let scale = abs_scale(&a, *r);
        if p.norm() > residual_tol * scale {
            return Err(Error::RootFindingFailed(format!(
                "backward error {:?} too large",
                (p.norm() / scale).to_f64()
            )));
        }
    }
    Ok(z)
}

/// `sum |a_i| |x|^i`, the scale of rounding errors in evaluating at `x`.
fn abs_scale<F: Float>(a: &[Complex<F>], x: Complex<F>) -> F {
    let r = x.norm();
    a.iter().rev().fold(F::zero(), |acc, c| acc * r + c.norm())
}

fn eval_with_derivative<F: Float>(a: &[Complex<F>], x: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::new(F::zero(), F::zero());
    let mut dp = Complex::new(F::zero(), F::zero());
    for c in a.iter().rev() {
        dp = dp * x + p;
        p = p * x + *c;
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_moduli(v: &[Complex<f64>]) -> Vec<f64> {
        let mut m: Vec<f64> = v.iter().map(|c| c.norm()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        m
    }

    #[test]
    fn quadratic() {
        // 2z^2 + 2z + 1: roots (-1 +- i)/2
        let r = polynomial_roots(&[1.0, 2.0, 2.0], 1e-12, 1e-10, 500).unwrap();
        for x in &r {
            assert!((x.re + 0.5).abs() < 1e-10);
            assert!((x.im.abs() - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn roots_of_unity_and_scaled() {
        // z^8 - 3^8
        let mut c = vec![0.0; 9];
        c[0] = -6561.0;
        c[8] = 1.0;
        let r = polynomial_roots(&c, 1e-12, 1e-10, 500).unwrap();
        for m in sorted_moduli(&r) {
            assert!((m - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn works_in_f32() {
        let r = polynomial_roots(&[-2.0f32, 0.0, 1.0], 1e-6, 1e-4, 500).unwrap();
        let m: Vec<f32> = r.iter().map(|c| c.norm()).collect();
        assert!(m.iter().all(|x| (x - 2f32.sqrt()).abs() < 1e-4));
    }

    #[test]
    fn well_separated_degree_twenty() {
        // prod_{k=1}^{20} (z - 2^{k/4})
        let roots: Vec<f64> = (1..=20).map(|k| 2f64.powf(k as f64 / 4.0)).collect();
        let mut c = vec![1.0];
        for &r in &roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        let found = polynomial_roots(&c, 1e-13, 1e-9, 2000).unwrap();
        let got = sorted_moduli(&found);
        for (g, r) in got.iter().zip(&roots) {
            assert!((g / r - 1.0).abs() < 1e-6, "{g} vs {r}");
        }
    }
}
