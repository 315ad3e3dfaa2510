//! Polynomials over a prime field F_p with word-sized residues.

use rand::Rng;

/// Arithmetic context for F_p, `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!((2..(1 << 32)).contains(&p));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    // ---- dense polynomial helpers; vectors are constant-term first and trimmed ----

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|&x| self.mul(x, c)).collect();
        Self::trim(&mut out);
        out
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        let inv = self.inv(b[db]).expect("nonzero leading coefficient");
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.mul(rem[i + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &d) in b.iter().enumerate() {
                rem[i + j] = self.sub(rem[i + j], self.mul(c, d));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Self::trim(&mut rem);
        Self::trim(&mut quot);
        (quot, rem)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, b).1
    }

    pub fn poly_monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l).expect("nonzero")),
        }
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn poly_xgcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = *r0.last().expect("inputs not both zero");
        let inv = self.inv(l).expect("nonzero");
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn poly_mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// `base^k mod m` for an arbitrary-size exponent given as a `u128`.
    pub fn poly_powmod(&self, base: &[u64], mut k: u128, m: &[u64]) -> Vec<u64> {
        let mut acc = self.poly_rem(&[1], m);
        let mut b = self.poly_rem(base, m);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_mulmod(&acc, &b, m);
            }
            k >>= 1;
            if k > 0 {
                b = self.poly_mulmod(&b, &b, m);
            }
        }
        acc
    }

    pub fn poly_derivative(&self, a: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_eval(&self, a: &[u64], x: u64) -> u64 {
        a.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Rabin's test: monic `f` of degree `d` is irreducible iff `f | x^{p^d} - x`
    /// and `gcd(x^{p^{d/l}} - x, f) = 1` for every prime `l | d`.
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let d = match f.len().checked_sub(1) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let frob_iter = |times: usize| -> Vec<u64> {
            let mut h = x.clone();
            for _ in 0..times {
                h = self.poly_powmod(&h, self.p as u128, f);
            }
            h
        };
        let full = frob_iter(d);
        if !self.poly_sub(&full, &self.poly_rem(&x, f)).is_empty() {
            return false;
        }
        for l in prime_divisors(d as u64) {
            let h = frob_iter(d / l as usize);
            let g = self.poly_gcd(&self.poly_sub(&h, &x), f);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, i)` where `g` is the product of all irreducible factors of degree `i`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut rest = self.poly_monic(f);
        let x = vec![0u64, 1];
        let mut h = self.poly_rem(&x, &rest);
        let mut i = 0;
        while rest.len() > 1 && 2 * (i + 1) < rest.len() {
            i += 1;
            h = self.poly_powmod(&h, self.p as u128, &rest);
            let g = self.poly_gcd(&self.poly_sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, i));
            }
        }
        if rest.len() > 1 {
            let d = rest.len() - 1;
            out.push((rest, d));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus; trace map in characteristic 2)
    /// of a monic squarefree `f` whose irreducible factors all have degree `d`.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<Vec<u64>> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            Self::trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = if self.p == 2 {
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = self.poly_mulmod(&t, &t, f);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
                let mut t = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    t = self.poly_powmod(&t, self.p as u128, f);
                    norm = self.poly_mulmod(&norm, &t, f);
                }
                let t = self.poly_powmod(&norm, ((self.p - 1) / 2) as u128, f);
                self.poly_sub(&t, &[1])
            };
            let g = self.poly_gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles,
    /// sorted by (degree, coefficients).
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Distinct prime divisors by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Irreducibility by trial division against every monic polynomial of degree <= d/2.
    fn irreducible_by_trial(fp: &PrimeField, f: &[u64]) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let total = fp.p.pow(k as u32);
            for code in 0..total {
                let mut g: Vec<u64> = (0..k).map(|i| code / fp.p.pow(i as u32) % fp.p).collect();
                g.push(1);
                if fp.poly_rem(f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for p in [2u64, 3, 5] {
            let fp = PrimeField::new(p);
            for d in 1..=4u32 {
                for code in 0..p.pow(d) {
                    let mut f: Vec<u64> = (0..d).map(|i| code / p.pow(i) % p).collect();
                    f.push(1);
                    assert_eq!(
                        fp.is_irreducible(&f),
                        irreducible_by_trial(&fp, &f),
                        "{f:?} mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorization_recovers_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 7, 11] {
            let fp = PrimeField::new(p);
            // (x+1)(x^2+x+1 or irreducible quadratic)(x+2) over F_p, squarefree when distinct
            let f = fp.poly_mul(&[1, 1], &fp.poly_mul(&[0, 1], &[1, 0, 1]));
            let g = fp.poly_gcd(&f, &fp.poly_derivative(&f));
            if g.len() != 1 {
                continue;
            }
            let parts = fp.factor_squarefree(&f, &mut rng);
            let prod = parts.iter().fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
            assert_eq!(prod, fp.poly_monic(&f));
            assert!(parts.iter().all(|g| fp.is_irreducible(g)));
        }
    }

    #[test]
    fn xgcd_bezout() {
        let fp = PrimeField::new(7);
        let a = vec![1, 2, 3];
        let b = vec![5, 1];
        let (g, s, t) = fp.poly_xgcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &a), &fp.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
