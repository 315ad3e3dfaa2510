//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// How variable slots map to printed names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarStyle {
    /// Slot `i` is `x{i+1}`.
    Affine,
    /// Slot `i` is `x{i}`.
    Projective,
}

impl VarStyle {
    pub fn first_index(self) -> usize {
        match self {
            VarStyle::Affine => 1,
            VarStyle::Projective => 0,
        }
    }
}

/// Coefficient types a [`MultiPoly`] can carry.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
}

impl Coeff for BigInt {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
}

impl Coeff for FieldElement {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self.add(other).expect("coefficients share a field")
    }
}

pub type Monomial = Vec<u32>;

/// Polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    style: VarStyle,
    terms: BTreeMap<Monomial, C>,
}

/// Integer-coefficient polynomials straight out of the parser.
pub type IntMultiPoly = MultiPoly<BigInt>;
/// Polynomials over a finite field.
pub type FieldMultiPoly = MultiPoly<FieldElement>;

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize, style: VarStyle) -> Self {
        MultiPoly {
            nvars,
            style,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from `(exponents, coefficient)` pairs, combining like terms.
    pub fn from_terms(
        nvars: usize,
        style: VarStyle,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(nvars, style);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old.add_coeff(&c);
                if !s.is_zero_coeff() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn style(&self) -> VarStyle {
        self.style
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Option<&C> {
        self.terms.get(m)
    }

    /// Maximum total degree over all terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    /// Slots that occur with a positive exponent.
    pub fn used_variables(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(
            self.nvars,
            self.style,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Multiply each degree-`m` term by `x0^{d-m}`; the result lives in projective
    /// slots `x0..xn` with the old `x_i` in slot `i`.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        let top = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        if d < top {
            return Err(Error::InvalidParams(format!(
                "homogenizing degree {d} below total degree {top}"
            )));
        }
        Ok(MultiPoly::from_terms(
            self.nvars + 1,
            VarStyle::Projective,
            self.terms.iter().map(|(m, c)| {
                let deg: u32 = m.iter().sum();
                let mut nm = Vec::with_capacity(m.len() + 1);
                nm.push(d - deg);
                nm.extend_from_slice(m);
                (nm, c.clone())
            }),
        ))
    }

    /// Set `x0 := 1`, returning an affine polynomial in `x1..xn`.
    pub fn dehomogenize(&self) -> Self {
        assert!(self.nvars >= 1);
        MultiPoly::from_terms(
            self.nvars - 1,
            VarStyle::Affine,
            self.terms.iter().map(|(m, c)| (m[1..].to_vec(), c.clone())),
        )
    }

    /// Set `x0 := 0`, returning a projective polynomial in the remaining
    /// slots renamed `x0..x{n-1}`.
    pub fn restrict_to_infinity(&self) -> Self {
        assert!(self.nvars >= 1);
        MultiPoly::from_terms(
            self.nvars - 1,
            VarStyle::Projective,
            self.terms
                .iter()
                .filter(|(m, _)| m[0] == 0)
                .map(|(m, c)| (m[1..].to_vec(), c.clone())),
        )
    }

    /// Apply a slot permutation: old slot `i` moves to `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        MultiPoly::from_terms(
            self.nvars,
            self.style,
            self.terms.iter().map(|(m, c)| {
                let mut nm = vec![0; m.len()];
                for (i, &e) in m.iter().enumerate() {
                    nm[perm[i]] = e;
                }
                (nm, c.clone())
            }),
        )
    }

    /// Terms in printing order: descending total degree, then descending exponents.
    fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        coeff_str: impl Fn(&C) -> (bool, String),
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let base = self.style.first_index();
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, mag) = coeff_str(c);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + base)
                    } else {
                        format!("x{}^{}", i + base, e)
                    }
                })
                .collect();
            match (vars.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", mag, vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl MultiPoly<BigInt> {
    pub fn constant(nvars: usize, style: VarStyle, c: BigInt) -> Self {
        Self::from_terms(nvars, style, [(vec![0; nvars], c)])
    }

    pub fn variable(nvars: usize, style: VarStyle, slot: usize) -> Self {
        let mut m = vec![0; nvars];
        m[slot] = 1;
        Self::from_terms(nvars, style, [(m, BigInt::one())])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.style);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.style, BigInt::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduce coefficients into a finite field, dropping those that vanish.
    pub fn reduce(&self, field: &Arc<FieldSpec>) -> FieldMultiPoly {
        self.map_coeffs(|c| FieldElement::from_bigint(field, c))
    }
}

impl MultiPoly<FieldElement> {
    /// Exact evaluation at a point of the coefficient field.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let field = match (self.terms.values().next(), point.first()) {
            (Some(c), _) => c.field().clone(),
            (None, Some(x)) => return Ok(FieldElement::zero(x.field())),
            (None, None) => {
                return Err(Error::InvalidParams(
                    "cannot evaluate a zero polynomial in no variables".into(),
                ))
            }
        };
        let mut acc = FieldElement::zero(&field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u64))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Scale every coefficient by a field element.
    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let terms: Result<Vec<_>> = self
            .terms
            .iter()
            .map(|(m, a)| Ok((m.clone(), a.mul(c)?)))
            .collect();
        Ok(Self::from_terms(self.nvars, self.style, terms?))
    }
}

impl fmt::Display for MultiPoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, |c| (c.is_negative(), c.abs().to_string()))
    }
}

impl fmt::Display for MultiPoly<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, |c| (false, c.to_string()))
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C>
where
    MultiPoly<C>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
