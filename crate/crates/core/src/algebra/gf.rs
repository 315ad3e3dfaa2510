//! Fast arithmetic on field elements encoded as their enumeration index.
//!
//! An element `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` is the `u32` code
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Small fields use discrete-log and
//! Zech-log tables; larger ones fall back to digit-wise polynomial arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::{FieldElement, FieldSpec, MAX_ENUMERATION};
use super::fp_poly::{prime_divisors, PrimeField};
use crate::error::{Error, Result};

/// Fields up to this order get log/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
enum Backend {
    Tables {
        /// `exp[i] = g^i`, doubled so that sums of two logs need no reduction.
        exp: Vec<u32>,
        /// `log[a]` for `a != 0`.
        log: Vec<u32>,
        /// `zech[i] = log(1 + g^i)`, or `NONE` when `1 + g^i = 0`.
        zech: Vec<u32>,
    },
    Digits,
}

#[derive(Debug)]
pub struct Gf {
    spec: Arc<FieldSpec>,
    fp: PrimeField,
    p: u32,
    e: u32,
    q: u32,
    backend: Backend,
}

impl Gf {
    /// Table-backed when the field is small enough.
    pub fn new(spec: &Arc<FieldSpec>) -> Result<Self> {
        let q = spec
            .order()
            .filter(|&q| q <= MAX_ENUMERATION)
            .ok_or(Error::FieldTooLarge {
                p: spec.p(),
                e: spec.e(),
            })?;
        let mut gf = Gf {
            spec: spec.clone(),
            fp: spec.prime_field(),
            p: spec.p() as u32,
            e: spec.e(),
            q: q as u32,
            backend: Backend::Digits,
        };
        if q <= TABLE_LIMIT {
            gf.backend = gf.build_tables();
        }
        Ok(gf)
    }

    /// Digit-arithmetic backend regardless of size.
    pub fn new_untabled(spec: &Arc<FieldSpec>) -> Result<Self> {
        let q = spec
            .order()
            .filter(|&q| q <= MAX_ENUMERATION)
            .ok_or(Error::FieldTooLarge {
                p: spec.p(),
                e: spec.e(),
            })?;
        Ok(Gf {
            spec: spec.clone(),
            fp: spec.prime_field(),
            p: spec.p() as u32,
            e: spec.e(),
            q: q as u32,
            backend: Backend::Digits,
        })
    }

    /// Shared instance per field.
    pub fn cached(spec: &Arc<FieldSpec>) -> Result<Arc<Gf>> {
        static CACHE: OnceLock<Mutex<HashMap<FieldSpec, Arc<Gf>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(gf) = cache.lock().expect("cache poisoned").get(spec.as_ref()) {
            return Ok(gf.clone());
        }
        let gf = Arc::new(Gf::new(spec)?);
        cache
            .lock()
            .expect("cache poisoned")
            .entry(spec.as_ref().clone())
            .or_insert_with(|| gf.clone());
        Ok(gf)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_tabled(&self) -> bool {
        matches!(self.backend, Backend::Tables { .. })
    }

    pub fn encode(&self, a: &FieldElement) -> u32 {
        a.code() as u32
    }

    pub fn decode(&self, code: u32) -> FieldElement {
        FieldElement::from_code(&self.spec, code as u64)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, n: i64) -> u32 {
        self.fp.reduce_i64(n) as u32
    }

    fn digits(&self, mut code: u32) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            v.push((code % self.p) as u64);
            code /= self.p;
        }
        v
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter()
            .take(self.e as usize)
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn digit_mul(&self, a: u32, b: u32) -> u32 {
        let mut x = self.digits(a);
        let mut y = self.digits(b);
        PrimeField::trim(&mut x);
        PrimeField::trim(&mut y);
        let prod = self.fp.poly_mul(&x, &y);
        let r = self.fp.poly_rem(&prod, &self.spec.full_modulus());
        self.undigits(&r)
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn digit_neg(&self, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    fn digit_pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.digit_mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.digit_mul(base, base);
            }
        }
        acc
    }

    fn build_tables(&self) -> Backend {
        let order = (self.q - 1) as u64;
        let primes = prime_divisors(order);
        let generator = (2..self.q)
            .chain(std::iter::once(1))
            .find(|&g| g != 0 && primes.iter().all(|&l| self.digit_pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let n = order as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NONE; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.digit_mul(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let mut zech = vec![NONE; n.max(1)];
        for i in 0..n {
            let a = exp[i];
            // 1 + a only touches the constant digit
            let c0 = a % self.p;
            let one_plus = a - c0 + (c0 + 1) % self.p;
            if one_plus != 0 {
                zech[i] = log[one_plus as usize];
            }
        }
        Backend::Tables { exp, log, zech }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        match &self.backend {
            Backend::Tables { exp, log, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = self.q - 1;
                let la = log[a as usize];
                let lb = log[b as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NONE {
                    0
                } else {
                    exp[(la + z) as usize]
                }
            }
            Backend::Digits => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => {
                let half = (self.q - 1) / 2;
                exp[(log[a as usize] + half) as usize]
            }
            Backend::Digits => self.digit_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => exp[(log[a as usize] + log[b as usize]) as usize],
            Backend::Digits => self.digit_mul(a, b),
        }
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => {
                let n = (self.q - 1) as u64;
                exp[((log[a as usize] as u64 * (k % n)) % n) as usize]
            }
            Backend::Digits => self.digit_pow(a, k),
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.backend {
            Backend::Tables { exp, log, .. } => {
                let n = self.q - 1;
                Some(exp[((n - log[a as usize]) % n) as usize])
            }
            Backend::Digits => Some(self.digit_pow(a, (self.q - 2) as u64)),
        }
    }

    /// Horner evaluation of a polynomial with coefficients given as codes.
    pub fn eval_univariate(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    // ---- univariate polynomials over this field (codes, constant term first) ----

    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn poly_rem(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let db = b.len() - 1;
        let inv = self.inv(b[db]).expect("nonzero leading coefficient");
        let mut rem = a.to_vec();
        Self::trim(&mut rem);
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = self.mul(rem[top], inv);
            let shift = top - db;
            for (j, &d) in b.iter().enumerate() {
                rem[shift + j] = self.sub(rem[shift + j], self.mul(c, d));
            }
            Self::trim(&mut rem);
        }
        rem
    }

    pub fn poly_mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.poly_rem(&out, m)
    }

    pub fn poly_gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        x
    }

    /// Number of distinct roots in this field of a nonzero polynomial:
    /// the degree of `gcd(f, x^q - x)`.
    pub fn count_roots(&self, f: &[u32]) -> u64 {
        let mut f = f.to_vec();
        Self::trim(&mut f);
        let deg = f.len().saturating_sub(1);
        match deg {
            0 => return 0,
            1 => return 1,
            _ => {}
        }
        // x^q mod f by repeated squaring
        let x = vec![0u32, 1];
        let mut acc = vec![1u32];
        let mut base = self.poly_rem(&x, &f);
        let mut k = self.q;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, &f);
            }
            k >>= 1;
            if k > 0 {
                base = self.poly_mulmod(&base, &base, &f);
            }
        }
        // acc - x
        if acc.len() < 2 {
            acc.resize(2, 0);
        }
        acc[1] = self.sub(acc[1], 1);
        Self::trim(&mut acc);
        if acc.is_empty() {
            return deg as u64;
        }
        (self.poly_gcd(&f, &acc).len() - 1) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{build_field, enumerate_elements};

    #[test]
    fn tables_agree_with_reference_arithmetic() {
        for (p, e) in [
            (2, 1),
            (3, 1),
            (2, 3),
            (3, 2),
            (5, 2),
            (7, 1),
            (2, 5),
            (3, 3),
        ] {
            let spec = build_field(p, e).unwrap();
            let gf = Gf::new(&spec).unwrap();
            assert!(gf.is_tabled());
            let els: Vec<FieldElement> = enumerate_elements(&spec).unwrap().collect();
            for a in &els {
                for b in &els {
                    let (ca, cb) = (gf.encode(a), gf.encode(b));
                    assert_eq!(gf.decode(gf.add(ca, cb)), a.add(b).unwrap());
                    assert_eq!(gf.decode(gf.sub(ca, cb)), a.sub(b).unwrap());
                    assert_eq!(gf.decode(gf.mul(ca, cb)), a.mul(b).unwrap());
                }
                assert_eq!(gf.decode(gf.pow(gf.encode(a), 5)), a.pow(5));
            }
        }
    }

    #[test]
    fn digit_backend_agrees_with_tables() {
        let spec = build_field(3, 4).unwrap();
        let fast = Gf::new(&spec).unwrap();
        let slow = Gf::new_untabled(&spec).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(fast.add(a, b), slow.add(a, b));
                assert_eq!(fast.mul(a, b), slow.mul(a, b));
                assert_eq!(fast.neg(b), slow.neg(b));
            }
            assert_eq!(fast.inv(a), slow.inv(a));
        }
    }

    #[test]
    fn root_counting_matches_enumeration() {
        for (p, e) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
            let spec = build_field(p, e).unwrap();
            let gf = Gf::new(&spec).unwrap();
            let q = gf.order();
            for seed in 0..60u32 {
                let deg = 1 + seed % 4;
                let mut f: Vec<u32> = (0..=deg).map(|i| (seed * 7 + i * 13 + i * i) % q).collect();
                if *f.last().unwrap() == 0 {
                    *f.last_mut().unwrap() = 1;
                }
                let brute = (0..q).filter(|&x| gf.eval_univariate(&f, x) == 0).count() as u64;
                assert_eq!(gf.count_roots(&f), brute, "{f:?} over {p}^{e}");
            }
        }
    }
}
