//! Finite fields F_{p^e} presented as F_p[t]/(m(t)).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::fp_poly::{is_prime, PrimeField};
use super::gf::Gf;
use crate::error::{Error, Result};

/// Largest supported prime.
pub const MAX_PRIME: u64 = 1 << 20;
/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: u32 = 16;
/// Largest field that may be enumerated element by element.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// A finite field of order `p^e`, presented by a monic irreducible modulus.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    /// Low coefficients `c_0..c_{e-1}` of the modulus; the leading 1 is implicit.
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Modulus with its leading coefficient, constant term first.
    pub fn full_modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    /// Field order `p^e`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.e)
    }

    pub(crate) fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.e, self.full_modulus())
    }
}

/// Builds `F_{p^e}` with the lexicographically smallest monic irreducible modulus,
/// ordering candidate moduli by `(c_0, c_1, ..., c_{e-1})` with `c_0` most significant.
pub fn build_field(p: u64, e: u32) -> Result<Arc<FieldSpec>> {
    if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || e > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: e as usize,
            max: MAX_DEGREE as usize,
        });
    }
    if e == 1 {
        return Ok(Arc::new(FieldSpec {
            p,
            e,
            modulus: vec![0],
        }));
    }
    let fp = PrimeField::new(p);
    // c_0 = 0 is divisible by t; start from (1, 0, ..., 0).
    let mut tuple = vec![0u64; e as usize];
    tuple[0] = 1;
    loop {
        let mut full = tuple.clone();
        full.push(1);
        if fp.is_irreducible(&full) {
            return Ok(Arc::new(FieldSpec {
                p,
                e,
                modulus: tuple,
            }));
        }
        // increment with the last entry least significant
        let mut i = e as usize;
        loop {
            if i == 0 {
                return Err(Error::NoModulusFound { p, e });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Element of `F_{p^e}`: coefficients of a polynomial in `t` of degree `< e`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

/// Binary operations accepted by [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
}

pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Pow(k) => Ok(a.pow(k)),
    }
}

impl FieldElement {
    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![0; field.e as usize],
        }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = 1;
        z
    }

    /// The class of `t` (the generator of the presentation).
    pub fn generator(field: &Arc<FieldSpec>) -> Self {
        let mut coeffs = vec![0u64; field.e as usize + 1];
        coeffs[1] = 1;
        Self::from_poly(field, coeffs)
    }

    pub fn from_int(field: &Arc<FieldSpec>, n: i64) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = field.prime_field().reduce_i64(n);
        z
    }

    pub fn from_bigint(field: &Arc<FieldSpec>, n: &BigInt) -> Self {
        let p = BigInt::from(field.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        let mut z = Self::zero(field);
        z.coeffs[0] = r.to_u64().expect("reduced residue fits");
        z
    }

    /// Element with the given coefficient vector (exactly `e` residues in `[0, p)`).
    pub fn from_coeffs(field: &Arc<FieldSpec>, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != field.e as usize || coeffs.iter().any(|&c| c >= field.p) {
            return Err(Error::InvalidParams(format!(
                "expected {} residues below {}",
                field.e, field.p
            )));
        }
        Ok(FieldElement {
            field: field.clone(),
            coeffs,
        })
    }

    /// Element whose code in enumeration order is `code`.
    pub fn from_code(field: &Arc<FieldSpec>, mut code: u64) -> Self {
        let mut z = Self::zero(field);
        for c in z.coeffs.iter_mut() {
            *c = code % field.p;
            code /= field.p;
        }
        z
    }

    /// Reduce an arbitrary polynomial in `t` modulo the field modulus.
    fn from_poly(field: &Arc<FieldSpec>, poly: Vec<u64>) -> Self {
        let fp = field.prime_field();
        let mut r = fp.poly_rem(&poly, &field.full_modulus());
        r.resize(field.e as usize, 0);
        FieldElement {
            field: field.clone(),
            coeffs: r,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Index in enumeration order: `sum c_i p^i`.
    pub fn code(&self) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| {
            acc.wrapping_mul(self.field.p).wrapping_add(c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Whether the element lies in the prime field.
    pub fn prime_part(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn trimmed(&self) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        PrimeField::trim(&mut v);
        v
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let fp = self.field.prime_field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp.add(a, b))
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let fp = self.field.prime_field();
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| fp.neg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let fp = self.field.prime_field();
        let prod = fp.poly_mul(&self.trimmed(), &other.trimmed());
        Ok(Self::from_poly(&self.field, prod))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, k: u64) -> Self {
        self.pow_u128(k as u128)
    }

    pub fn pow_u128(&self, mut k: u128) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fp = self.field.prime_field();
        let (g, s, _) = fp.poly_xgcd(&self.trimmed(), &self.field.full_modulus());
        debug_assert_eq!(g, vec![1]);
        Ok(Self::from_poly(&self.field, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.prime_part() {
            return write!(f, "{c}");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "({})", parts.join(" + "))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All `p^e` elements, `c_0` varying fastest.
pub fn enumerate_elements(
    field: &Arc<FieldSpec>,
) -> Result<impl Iterator<Item = FieldElement> + '_> {
    let q = field
        .order()
        .filter(|&q| q <= MAX_ENUMERATION)
        .ok_or(Error::FieldTooLarge {
            p: field.p,
            e: field.e,
        })?;
    Ok((0..q).map(move |c| FieldElement::from_code(field, c)))
}

/// Ring embedding `F_{p^e} -> F_{p^{e k}}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    /// Image of the generator `t` of the base field.
    generator_image: FieldElement,
}

impl Embedding {
    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    pub fn generator_image(&self) -> &FieldElement {
        &self.generator_image
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field != self.base {
            return Err(Error::FieldMismatch);
        }
        // Horner in the image of t
        let mut acc = FieldElement::zero(&self.ext);
        for &c in a.coeffs.iter().rev() {
            acc = acc
                .mul(&self.generator_image)?
                .add(&FieldElement::from_int(&self.ext, c as i64))?;
        }
        Ok(acc)
    }
}

/// Builds `F_{q^k}` for `q = p^e` together with an embedding of `F_q`. The base
/// generator maps to the smallest root (in enumeration order) of the base modulus.
pub fn extend_and_embed(base: &Arc<FieldSpec>, k: u32) -> Result<(Arc<FieldSpec>, Embedding)> {
    let degree = base
        .e
        .checked_mul(k)
        .filter(|&d| k >= 1 && d <= MAX_DEGREE)
        .ok_or(Error::DegreeTooLarge {
            degree: (base.e as usize) * (k as usize),
            max: MAX_DEGREE as usize,
        })?;
    let ext = build_field(base.p, degree)?;
    let generator_image = if base.e == 1 {
        FieldElement::zero(&ext)
    } else {
        smallest_root(&base.full_modulus(), &ext)?
    };
    Ok((
        ext.clone(),
        Embedding {
            base: base.clone(),
            ext,
            generator_image,
        },
    ))
}

/// Smallest element (by code) of `ext` annihilated by a polynomial over F_p.
fn smallest_root(poly: &[u64], ext: &Arc<FieldSpec>) -> Result<FieldElement> {
    let q = ext
        .order()
        .filter(|&q| q <= MAX_ENUMERATION)
        .ok_or(Error::FieldTooLarge { p: ext.p, e: ext.e })?;
    if q <= super::gf::TABLE_LIMIT {
        let gf = Gf::cached(ext)?;
        let coeffs: Vec<u32> = poly.iter().map(|&c| c as u32).collect();
        for code in 0..q as u32 {
            if gf.eval_univariate(&coeffs, code) == 0 {
                return Ok(FieldElement::from_code(ext, code as u64));
            }
        }
    } else {
        for x in enumerate_elements(ext)? {
            let mut acc = FieldElement::zero(ext);
            for &c in poly.iter().rev() {
                acc = acc.mul(&x)?.add(&FieldElement::from_int(ext, c as i64))?;
            }
            if acc.is_zero() {
                return Ok(x);
            }
        }
    }
    Err(Error::InternalInconsistency(
        "base modulus has no root in the extension".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: exhaustive scan of monic polynomials in the modulus order,
    /// irreducibility by searching for a nontrivial monic factor.
    fn smallest_irreducible_by_scan(p: u64, e: u32) -> Vec<u64> {
        let fp = PrimeField::new(p);
        let total = p.pow(e);
        for rank in 0..total {
            // rank -> tuple with c_0 most significant
            let tuple: Vec<u64> = (0..e).map(|i| rank / p.pow(e - 1 - i) % p).collect();
            let mut f = tuple.clone();
            f.push(1);
            let mut reducible = false;
            'outer: for d in 1..=e / 2 {
                for code in 0..p.pow(d) {
                    let mut g: Vec<u64> = (0..d).map(|i| code / p.pow(i) % p).collect();
                    g.push(1);
                    if fp.poly_rem(&f, &g).is_empty() {
                        reducible = true;
                        break 'outer;
                    }
                }
            }
            if !reducible {
                return tuple;
            }
        }
        unreachable!()
    }

    #[test]
    fn prime_field_modulus_is_t() {
        assert_eq!(build_field(3, 1).unwrap().full_modulus(), vec![0, 1]);
    }

    #[test]
    fn f4_modulus() {
        assert_eq!(build_field(2, 2).unwrap().full_modulus(), vec![1, 1, 1]);
    }

    #[test]
    fn modulus_matches_exhaustive_scan() {
        for (p, e) in [
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (7, 2),
            (5, 3),
        ] {
            let f = build_field(p, e).unwrap();
            assert_eq!(
                f.modulus(),
                smallest_irreducible_by_scan(p, e),
                "p={p} e={e}"
            );
        }
        assert_eq!(build_field(5, 2).unwrap().full_modulus(), vec![1, 1, 1]);
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(build_field(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(build_field(1, 1).unwrap_err(), Error::NotPrime(1));
        assert!(build_field(2, 17).is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = build_field(2, 2).unwrap();
        let t = FieldElement::generator(&f4);
        let tt = t.mul(&t).unwrap();
        assert_eq!(tt.coeffs(), &[1, 1]);
        let f3 = build_field(3, 1).unwrap();
        let two = FieldElement::from_int(&f3, 2);
        assert_eq!(two.add(&two).unwrap(), FieldElement::one(&f3));
    }

    #[test]
    fn inverse_and_errors() {
        let f9 = build_field(3, 2).unwrap();
        for a in enumerate_elements(&f9).unwrap().skip(1) {
            assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
        let z = FieldElement::zero(&f9);
        assert_eq!(
            FieldElement::one(&f9).div(&z).unwrap_err(),
            Error::DivisionByZero
        );
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(
            FieldElement::one(&f9)
                .add(&FieldElement::one(&f3))
                .unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn enumeration_order() {
        let f3 = build_field(3, 1).unwrap();
        let codes: Vec<u64> = enumerate_elements(&f3)
            .unwrap()
            .map(|x| x.coeffs()[0])
            .collect();
        assert_eq!(codes, vec![0, 1, 2]);
        let f4 = build_field(2, 2).unwrap();
        let els: Vec<Vec<u64>> = enumerate_elements(&f4)
            .unwrap()
            .map(|x| x.coeffs().to_vec())
            .collect();
        assert_eq!(els, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let f27 = build_field(3, 3).unwrap();
        assert_eq!(enumerate_elements(&f27).unwrap().count(), 27);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (2, 3),
            (3, 2),
            (2, 4),
            (3, 4),
        ] {
            let f = build_field(p, e).unwrap();
            let els: Vec<FieldElement> = enumerate_elements(&f).unwrap().collect();
            // sampled triples keep 81^3 in check
            let step = (els.len() / 9).max(1);
            for a in &els {
                for b in &els {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in els.iter().step_by(step) {
                        let ab_c = a.mul(b).unwrap().mul(c).unwrap();
                        let a_bc = a.mul(&b.mul(c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let dist = a.mul(&b.add(c).unwrap()).unwrap();
                        assert_eq!(dist, a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap());
                        assert_eq!(
                            a.add(b).unwrap().add(c).unwrap(),
                            a.add(&b.add(c).unwrap()).unwrap()
                        );
                    }
                }
                assert!(a.add(&a.neg()).unwrap().is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn embedding_f2_to_f4_fixes_prime_field() {
        let f2 = build_field(2, 1).unwrap();
        let (_, emb) = extend_and_embed(&f2, 2).unwrap();
        assert!(emb.apply(&FieldElement::one(&f2)).unwrap().is_one());
        assert!(emb.apply(&FieldElement::zero(&f2)).unwrap().is_zero());
    }

    #[test]
    fn embedding_image_is_a_root() {
        let f4 = build_field(2, 2).unwrap();
        let (f16, emb) = extend_and_embed(&f4, 2).unwrap();
        let g = emb.generator_image();
        let mut acc = FieldElement::zero(&f16);
        for &c in f4.full_modulus().iter().rev() {
            acc = acc
                .mul(g)
                .unwrap()
                .add(&FieldElement::from_int(&f16, c as i64))
                .unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f9 = build_field(3, 2).unwrap();
        let (_, emb) = extend_and_embed(&f9, 2).unwrap();
        let els: Vec<FieldElement> = enumerate_elements(&f9).unwrap().collect();
        for a in &els {
            for b in &els {
                let lhs = emb.apply(&a.add(b).unwrap()).unwrap();
                let rhs = emb.apply(a).unwrap().add(&emb.apply(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = emb.apply(&a.mul(b).unwrap()).unwrap();
                let rhs = emb.apply(a).unwrap().mul(&emb.apply(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_embedded_subfield() {
        for (p, e, k) in [(2u64, 2u32, 2u32), (3, 1, 2), (2, 1, 3), (3, 2, 2)] {
            let base = build_field(p, e).unwrap();
            let (ext, emb) = extend_and_embed(&base, k).unwrap();
            let q = base.order().unwrap();
            let image: std::collections::HashSet<FieldElement> = enumerate_elements(&base)
                .unwrap()
                .map(|a| emb.apply(&a).unwrap())
                .collect();
            assert_eq!(image.len() as u64, q);
            let fixed: std::collections::HashSet<FieldElement> = enumerate_elements(&ext)
                .unwrap()
                .filter(|x| x.pow(q) == *x)
                .collect();
            assert_eq!(fixed, image);
        }
    }

    #[test]
    fn too_large_extension() {
        let f4 = build_field(2, 2).unwrap();
        assert!(matches!(
            extend_and_embed(&f4, 9),
            Err(Error::DegreeTooLarge { .. })
        ));
    }
}
