//! The divisibility exponent `mu_j(n; d_1, ..., d_r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuParams {
    pub j: u32,
    pub n: u32,
    pub degrees: Vec<u32>,
}

impl MuParams {
    pub fn new(j: u32, n: u32, degrees: &[u32]) -> Result<Self> {
        let p = MuParams {
            j,
            n,
            degrees: degrees.to_vec(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if self.degrees.is_empty() {
            return Err(Error::InvalidParams(
                "at least one degree is required".into(),
            ));
        }
        if self.degrees.contains(&0) {
            return Err(Error::InvalidParams("degrees must be positive".into()));
        }
        Ok(())
    }
}

/// `j + max(0, ceil((n - j - sum d) / max d))`.
pub fn compute_mu(params: &MuParams) -> Result<u32> {
    params.validate()?;
    let sum: i64 = params.degrees.iter().map(|&d| d as i64).sum();
    let max = *params.degrees.iter().max().expect("nonempty") as i64;
    let num = params.n as i64 - params.j as i64 - sum;
    // only positive numerators survive the clamp
    let extra = if num > 0 { (num + max - 1) / max } else { 0 };
    Ok(params.j + extra as u32)
}

/// Shorthand for [`compute_mu`] on borrowed arguments.
pub fn mu(j: u32, n: u32, degrees: &[u32]) -> Result<u32> {
    compute_mu(&MuParams::new(j, n, degrees)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: smallest integer m >= 0 with m * max d >= n - j - sum d.
    fn oracle(j: u32, n: u32, d: &[u32]) -> u32 {
        let target = n as i64 - j as i64 - d.iter().map(|&x| x as i64).sum::<i64>();
        let max = *d.iter().max().unwrap() as i64;
        let mut m = 0i64;
        while m * max < target {
            m += 1;
        }
        j + m as u32
    }

    #[test]
    fn examples() {
        assert_eq!(mu(0, 5, &[1, 1]).unwrap(), 3);
        assert_eq!(mu(2, 3, &[2, 2]).unwrap(), 2);
        assert_eq!(mu(1, 7, &[3]).unwrap(), 2);
        assert_eq!(1 + mu(0, 6, &[3]).unwrap(), 2);
        assert_eq!(mu(1, 5, &[1, 1]).unwrap(), 3);
        assert_eq!(mu(2, 5, &[1, 1]).unwrap(), 3);
    }

    #[test]
    fn matches_oracle() {
        for j in 0..8 {
            for n in 1..10 {
                for a in 1..5 {
                    for b in 1..5 {
                        assert_eq!(mu(j, n, &[a, b]).unwrap(), oracle(j, n, &[a, b]));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid() {
        assert!(mu(0, 0, &[1]).is_err());
        assert!(mu(0, 3, &[]).is_err());
        assert!(mu(0, 3, &[2, 0]).is_err());
    }
}
