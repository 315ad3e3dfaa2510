//! Factorization in `Z[T]`: squarefree split, factoring modulo a small prime,
//! quadratic Hensel lifting along a factor tree, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::fp_poly::{is_prime, PrimeField};
use crate::error::{Error, Result};
use crate::{IntPoly, RatPoly};

/// Largest degree accepted by [`factor_integer_poly`].
pub const MAX_FACTOR_DEGREE: usize = 64;

const SEED: u64 = 0x5eed_f00d;

/// Irreducible factors with multiplicities; the product reproduces `f` exactly.
///
/// Factors with constant term `+-1` are normalized to constant term `+1`, others to
/// primitive with positive leading coefficient. A leftover integer constant (content
/// and sign) is reported as a degree-0 factor with multiplicity 1.
pub fn factor_integer_poly(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: d,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    let prim = f.primitive_part();
    for (part, mult) in squarefree_decomposition(&prim) {
        for g in factor_squarefree_primitive(&part)? {
            out.push((normalize_factor(&g), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    let product = out
        .iter()
        .fold(IntPoly::one(), |acc, (g, m)| &acc * &g.pow(*m));
    let quotient = f.div_exact(&product).ok_or_else(|| {
        Error::InternalInconsistency("factor product does not divide the input".into())
    })?;
    match quotient.degree() {
        Some(0) if quotient.is_one() => {}
        Some(0) => out.insert(0, (quotient, 1)),
        _ => {
            return Err(Error::InternalInconsistency(
                "factor product differs from the input".into(),
            ))
        }
    }
    Ok(out)
}

fn normalize_factor(g: &IntPoly) -> IntPoly {
    let c = g.constant_term();
    if c.abs().is_one() {
        g.scale(&c)
    } else {
        g.primitive_part()
    }
}

fn to_rat(f: &IntPoly) -> RatPoly {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// Primitive integer polynomial proportional to a rational one.
fn rat_to_primitive(f: &RatPoly) -> IntPoly {
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = f.scale(&BigRational::from_integer(l));
    IntPoly::new(scaled.coeffs().iter().map(|c| c.to_integer()).collect()).primitive_part()
}

/// Yun's algorithm over `Q`; returns primitive squarefree parts `(a_i, i)` with
/// `f = +- prod a_i^i`, skipping constant parts.
fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let fr = to_rat(f);
    let df = fr.derivative();
    let a0 = fr.gcd(&df);
    let mut b = fr.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c_next = d.div_rem(&a).0;
        d = &c_next - &b_next.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((rat_to_primitive(&a), i));
        }
        b = b_next;
        i += 1;
    }
    out
}

/// Polynomials modulo `m` with coefficients in `[0, m)`, constant term first.
struct ZMod {
    m: BigInt,
}

impl ZMod {
    fn red(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.m)
    }

    fn norm(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = v.iter().map(|c| self.red(c)).collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        self.norm(
            (0..n)
                .map(|i| {
                    a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        self.norm(
            (0..n)
                .map(|i| {
                    a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.norm(out)
    }

    /// Division by a monic polynomial.
    fn divrem_monic(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let db = b.len() - 1;
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), self.norm(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.red(&rem[i + db]);
            if c.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (self.norm(quot), self.norm(rem))
    }

    /// Symmetric representative in `(-m/2, m/2]`.
    fn symmetric(&self, a: &[BigInt]) -> IntPoly {
        let half = &self.m / 2;
        IntPoly::new(
            a.iter()
                .map(|c| {
                    let c = self.red(c);
                    if c > half {
                        c - &self.m
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }
}

fn lift_vec(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_mod_prime(f: &IntPoly, l: u64) -> Vec<u64> {
    let lb = BigInt::from(l);
    let mut v: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&lb).to_u64().expect("residue fits"))
        .collect();
    PrimeField::trim(&mut v);
    v
}

/// One quadratic Hensel step: from `f = g h mod m` and `s g + t h = 1 mod m`
/// (h monic) to the same relations modulo `m^2`.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &ZMod,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = m2.sub(f, &m2.mul(g, h));
    let (q, r) = m2.divrem_monic(&m2.mul(s, &e), h);
    let g1 = m2.add(&m2.add(g, &m2.mul(t, &e)), &m2.mul(&q, g));
    let h1 = m2.add(h, &r);
    let b = m2.sub(&m2.add(&m2.mul(s, &g1), &m2.mul(t, &h1)), &[BigInt::one()]);
    let (c, d) = m2.divrem_monic(&m2.mul(s, &b), &h1);
    let s1 = m2.sub(s, &d);
    let t1 = m2.sub(&m2.sub(t, &m2.mul(t, &b)), &m2.mul(&c, &g1));
    (g1, h1, s1, t1)
}

/// Lifts `f = lc * prod(factors) mod l` to monic factors modulo `l^(2^steps)`.
fn multifactor_lift(
    f: &[BigInt],
    factors: &[Vec<u64>],
    fp: &PrimeField,
    l: u64,
    steps: u32,
) -> Vec<Vec<BigInt>> {
    let top = ZMod {
        m: BigInt::from(l).pow(1u32 << steps),
    };
    if factors.len() == 1 {
        // f itself, made monic
        let lc = f.last().expect("nonzero").clone();
        let inv = lc.modinv(&top.m).expect("leading coefficient is a unit");
        return vec![top.norm(f.iter().map(|c| c * &inv).collect())];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let lb = BigInt::from(l);
    let lc_mod = f
        .last()
        .expect("nonzero")
        .mod_floor(&lb)
        .to_u64()
        .expect("fits");
    let g0 = left
        .iter()
        .fold(vec![lc_mod], |acc, u| fp.poly_mul(&acc, u));
    let h0 = right.iter().fold(vec![1u64], |acc, u| fp.poly_mul(&acc, u));
    let (one, s0, t0) = fp.poly_xgcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_vec(&g0), lift_vec(&h0), lift_vec(&s0), lift_vec(&t0));
    let mut m = lb;
    for _ in 0..steps {
        m = &m * &m;
        let zm = ZMod { m: m.clone() };
        let fm = zm.norm(f.to_vec());
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &zm);
    }
    let mut out = multifactor_lift(&g, left, fp, l, steps);
    out.extend(multifactor_lift(&h, right, fp, l, steps));
    out
}

/// Smallest prime not dividing `lc(f)` with `f mod l` squarefree.
fn choose_prime(f: &IntPoly) -> (u64, PrimeField, Vec<u64>) {
    let lc = f.leading().expect("nonzero").clone();
    let mut l = 2u64;
    loop {
        if is_prime(l) && !(&lc % BigInt::from(l)).is_zero() {
            let fp = PrimeField::new(l);
            let fl = reduce_mod_prime(f, l);
            let d = fp.poly_derivative(&fl);
            if !d.is_empty() && fp.poly_gcd(&fl, &d).len() == 1 {
                return (l, fp, fl);
            }
        }
        l += 1;
    }
}

/// Irreducible factors of a primitive squarefree polynomial of positive degree.
fn factor_squarefree_primitive(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let deg = f.degree().expect("nonzero");
    if deg <= 1 {
        return Ok(vec![f.clone()]);
    }
    let (l, fp, fl) = choose_prime(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let monic = fp.poly_monic(&fl);
    let modular = fp.factor_squarefree(&monic, &mut rng);
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // coefficient bound for factors of lc(f) * f
    let lc = f.leading().expect("nonzero").abs();
    let norm2 = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * &lc * (BigInt::one() << deg) * norm2;
    let lb = BigInt::from(l);
    let mut steps = 0u32;
    while lb.pow(1u32 << steps) <= bound {
        steps += 1;
    }
    let lifted = multifactor_lift(f.coeffs(), &modular, &fp, l, steps);
    let zm = ZMod {
        m: lb.pow(1u32 << steps),
    };
    recombine(f, lifted, &zm)
}

/// Zassenhaus recombination by trial division, smallest subsets first.
fn recombine(f: &IntPoly, mut lifted: Vec<Vec<BigInt>>, zm: &ZMod) -> Result<Vec<IntPoly>> {
    let mut g = f.clone();
    let mut found = Vec::new();
    let mut size = 1usize;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = g.leading().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![zm.red(&lc)], |acc, &i| zm.mul(&acc, &lifted[i]));
            let cand = zm.symmetric(&prod).primitive_part();
            if let Some(quot) = g.div_exact(&cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                g = quot;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if g.degree().unwrap_or(0) > 0 {
        found.push(g.primitive_part());
    } else if !lifted.is_empty() {
        return Err(Error::InternalInconsistency(
            "modular factors left over after recombination".into(),
        ));
    }
    Ok(found)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn examples() {
        assert_eq!(
            factor_integer_poly(&ip(&[1, -4, 3])).unwrap(),
            vec![(ip(&[1, -3]), 1), (ip(&[1, -1]), 1)]
        );
        assert_eq!(
            factor_integer_poly(&ip(&[1, -2, 1])).unwrap(),
            vec![(ip(&[1, -1]), 2)]
        );
        let f = &ip(&[1, -1]) * &ip(&[1, 2, 2]);
        assert_eq!(f, ip(&[1, 1, 0, -2]));
        let fs = factor_integer_poly(&f).unwrap();
        assert_eq!(fs, vec![(ip(&[1, -1]), 1), (ip(&[1, 2, 2]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Z
        let f = ip(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_integer_poly(&f).unwrap(), vec![(f, 1)]);
    }

    #[test]
    fn content_is_reported() {
        let f = ip(&[2, -2]);
        let fs = factor_integer_poly(&f).unwrap();
        assert_eq!(fs, vec![(ip(&[2]), 1), (ip(&[1, -1]), 1)]);
        let g = ip(&[-3, 6]);
        let fs = factor_integer_poly(&g).unwrap();
        let prod = fs.iter().fold(IntPoly::one(), |a, (h, m)| &a * &h.pow(*m));
        assert_eq!(prod, g);
    }

    #[test]
    fn non_monic_factors() {
        // (2 - 3T)(5 + T^2)(1 - 7T)^2
        let f = &(&ip(&[2, -3]) * &ip(&[5, 0, 1])) * &ip(&[1, -7]).pow(2);
        let fs = factor_integer_poly(&f).unwrap();
        // 2 - 3T is stored as 3T - 2, leaving a unit -1
        assert_eq!(fs.len(), 4);
        assert_eq!(fs[0], (ip(&[-1]), 1));
        let prod = fs.iter().fold(IntPoly::one(), |a, (h, m)| &a * &h.pow(*m));
        assert_eq!(prod, f);
    }

    #[test]
    fn cyclotomic_products() {
        // T^12 - 1 = product of cyclotomic polynomials for d | 12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fs = factor_integer_poly(&ip(&c)).unwrap();
        let degrees: Vec<usize> = fs
            .iter()
            .filter(|(g, _)| g.len() > 1)
            .map(|(g, _)| g.degree().unwrap())
            .collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn degree_limit() {
        let mut c = vec![0i64; 66];
        c[0] = 1;
        c[65] = 1;
        assert!(matches!(
            factor_integer_poly(&ip(&c)),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn product_of_linear_factors(cs in prop::collection::vec(-30i64..30, 1..8)) {
            let f = cs.iter().fold(IntPoly::one(), |acc, &c| &acc * &ip(&[1, -c]));
            let fs = factor_integer_poly(&f).unwrap();
            let prod = fs.iter().fold(IntPoly::one(), |a, (h, m)| &a * &h.pow(*m));
            prop_assert_eq!(prod, f);
            for (g, _) in &fs {
                prop_assert!(g.degree().unwrap() <= 1);
            }
        }
    }
}
