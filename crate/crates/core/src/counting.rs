//! Exact point counts of affine and projective varieties over `F_{q^k}`.
//!
//! The production counter enumerates every coordinate except the last one and
//! counts the admissible values of the last coordinate as the number of distinct
//! roots of a univariate gcd, `deg gcd(g, x^Q - x)`. Coordinates absent from every
//! equation contribute a factor `Q` each. [`count_exhaustive`] is the plain
//! tuple-by-tuple reference used to cross-check it.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{
    extend_and_embed, Ambient, Embedding, FieldElement, FieldMultiPoly, FieldSpec, Gf, VarietySpec,
};
use crate::error::{Error, Result};

/// Default cap on enumerated prefixes per count.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Maximum number of enumerated coordinate prefixes for one count.
    pub budget: u64,
    /// Fan out over the first enumerated coordinate.
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

/// `N_1, ..., N_kmax` for a variety (or its complement in the ambient space).
#[derive(Clone, Debug, PartialEq)]
pub struct PointCounts {
    pub spec: VarietySpec,
    pub complement: bool,
    /// Entry `k - 1` holds the count over `F_{q^k}`.
    pub counts: Vec<u128>,
}

/// `#A^n(F_Q)` or `#P^n(F_Q)`.
pub fn ambient_count(ambient: Ambient, n: usize, big_q: u128) -> u128 {
    match ambient {
        Ambient::Affine => big_q.pow(n as u32),
        Ambient::Projective => (0..=n as u32).map(|i| big_q.pow(i)).sum(),
    }
}

/// Number of common zeros in `F_{q^k}^n` of an affine system.
pub fn count_affine(spec: &VarietySpec, k: u32, opts: &CountOptions) -> Result<u128> {
    if spec.ambient() != Ambient::Affine {
        return Err(Error::InvalidVariety(
            "count_affine needs an affine variety".into(),
        ));
    }
    let (gf, system) = compile(spec, k)?;
    count_system(&gf, system, spec.n(), opts).map_err(|e| tag_budget(e, k))
}

fn tag_budget(e: Error, k: u32) -> Error {
    match e {
        Error::BudgetExceeded { .. } => Error::BudgetExceeded { k, completed: 0 },
        other => other,
    }
}

/// Number of `F_{q^k}`-points of a projective variety, counted over the standard
/// charts: first nonzero coordinate `x_i = 1`, earlier coordinates zero.
pub fn count_projective(spec: &VarietySpec, k: u32, opts: &CountOptions) -> Result<u128> {
    if spec.ambient() != Ambient::Projective {
        return Err(Error::InvalidVariety(
            "count_projective needs a projective variety".into(),
        ));
    }
    let (gf, system) = compile(spec, k)?;
    let n = spec.n();
    let mut total = 0u128;
    for chart in 0..=n {
        let specialized: Vec<SparsePoly> =
            system.iter().map(|f| specialize_chart(f, chart)).collect();
        total += count_system(&gf, specialized, n - chart, opts).map_err(|e| tag_budget(e, k))?;
    }
    Ok(total)
}

/// Count of the affine cone in `A^{n+1}` of a projective variety.
pub fn count_affine_cone(spec: &VarietySpec, k: u32, opts: &CountOptions) -> Result<u128> {
    let (gf, system) = compile(spec, k)?;
    count_system(&gf, system, spec.n() + 1, opts).map_err(|e| tag_budget(e, k))
}

pub fn count(spec: &VarietySpec, k: u32, opts: &CountOptions) -> Result<u128> {
    match spec.ambient() {
        Ambient::Affine => count_affine(spec, k, opts),
        Ambient::Projective => count_projective(spec, k, opts),
    }
}

/// `N_1..N_kmax`, or the ambient-minus-variety counts when `complement` is set.
pub fn count_sequence(
    spec: &VarietySpec,
    kmax: u32,
    complement: bool,
    opts: &CountOptions,
) -> Result<PointCounts> {
    let mut counts = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let n_k = count(spec, k, opts).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded {
                k,
                completed: k - 1,
            },
            other => other,
        })?;
        counts.push(if complement {
            ambient_count(spec.ambient(), spec.n(), extension_order(spec, k)?) - n_k
        } else {
            n_k
        });
    }
    Ok(PointCounts {
        spec: spec.clone(),
        complement,
        counts,
    })
}

/// `q^k` as a `u128`.
pub fn extension_order(spec: &VarietySpec, k: u32) -> Result<u128> {
    (spec.q() as u128)
        .checked_pow(k)
        .ok_or(Error::FieldTooLarge {
            p: spec.field().p(),
            e: spec.field().e() * k,
        })
}

/// Reference counter: enumerate every tuple (normalized representatives in the
/// projective case) and evaluate each polynomial with [`FieldMultiPoly::eval`].
pub fn count_exhaustive(spec: &VarietySpec, k: u32) -> Result<u128> {
    let (ext, emb) = extend_and_embed(spec.field(), k)?;
    let polys = embed_polys(spec.polys(), &emb)?;
    let q = ext.order().ok_or(Error::FieldTooLarge {
        p: ext.p(),
        e: ext.e(),
    })?;
    let elements: Vec<FieldElement> = crate::algebra::enumerate_elements(&ext)?.collect();
    let slots = spec.slots();
    let total = (q as u128).pow(slots as u32);
    if total > 50_000_000 {
        return Err(Error::BudgetExceeded { k, completed: 0 });
    }
    let zero = FieldElement::zero(&ext);
    let mut count = 0u128;
    let mut point = vec![zero.clone(); slots];
    for idx in 0..total {
        let mut rest = idx;
        for x in point.iter_mut() {
            *x = elements[(rest % q as u128) as usize].clone();
            rest /= q as u128;
        }
        if spec.ambient() == Ambient::Projective {
            match point.iter().position(|x| !x.is_zero()) {
                Some(i) if point[i].is_one() => {}
                _ => continue,
            }
        }
        let mut all = true;
        for f in &polys {
            if !f.eval(&point)?.is_zero() {
                all = false;
                break;
            }
        }
        if all {
            count += 1;
        }
    }
    Ok(count)
}

fn embed_polys(polys: &[FieldMultiPoly], emb: &Embedding) -> Result<Vec<FieldMultiPoly>> {
    polys
        .iter()
        .map(|f| {
            let terms: Result<Vec<_>> = f
                .terms()
                .map(|(m, c)| Ok((m.clone(), emb.apply(c)?)))
                .collect();
            Ok(FieldMultiPoly::from_terms(f.nvars(), f.style(), terms?))
        })
        .collect()
}

/// Sparse polynomial with coefficients encoded in a [`Gf`].
#[derive(Clone, Debug)]
struct SparsePoly {
    terms: Vec<(Vec<u32>, u32)>,
}

impl SparsePoly {
    fn constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.iter().all(|&e| e == 0) => Some(*c),
            _ => None,
        }
    }
}

fn compile(spec: &VarietySpec, k: u32) -> Result<(Arc<Gf>, Vec<SparsePoly>)> {
    let (ext, emb) = extend_and_embed(spec.field(), k)?;
    let gf = Gf::cached(&ext)?;
    let polys = embed_polys(spec.polys(), &emb)?;
    let system = polys
        .iter()
        .map(|f| SparsePoly {
            terms: f.terms().map(|(m, c)| (m.clone(), gf.encode(c))).collect(),
        })
        .collect();
    Ok((gf, system))
}

/// Substitute chart `i`: `x_j = 0` for `j < i`, `x_i = 1`; keep `x_{i+1}..x_n`.
fn specialize_chart(f: &SparsePoly, chart: usize) -> SparsePoly {
    SparsePoly {
        terms: f
            .terms
            .iter()
            .filter(|(m, _)| m[..chart].iter().all(|&e| e == 0))
            .map(|(m, c)| (m[chart + 1..].to_vec(), *c))
            .collect(),
    }
}

/// Combine like terms after specialization (coefficients are field codes).
fn normalize(gf: &Gf, f: SparsePoly) -> SparsePoly {
    let mut map: std::collections::BTreeMap<Vec<u32>, u32> = Default::default();
    for (m, c) in f.terms {
        let e = map.entry(m).or_insert(0);
        *e = gf.add(*e, c);
    }
    SparsePoly {
        terms: map.into_iter().filter(|(_, c)| *c != 0).collect(),
    }
}

/// Common zeros in `F_Q^nvars` of a system of sparse polynomials.
fn count_system(
    gf: &Gf,
    system: Vec<SparsePoly>,
    nvars: usize,
    opts: &CountOptions,
) -> Result<u128> {
    let q = gf.order() as u128;
    let mut polys = Vec::new();
    for f in system {
        let f = normalize(gf, f);
        match f.constant() {
            Some(0) => continue,
            Some(_) => return Ok(0),
            None => polys.push(f),
        }
    }
    if polys.is_empty() {
        return Ok(q.pow(nvars as u32));
    }
    // drop variables that occur nowhere
    let used: Vec<usize> = (0..nvars)
        .filter(|&v| polys.iter().any(|f| f.terms.iter().any(|(m, _)| m[v] > 0)))
        .collect();
    let free = nvars - used.len();
    let polys: Vec<SparsePoly> = polys
        .into_iter()
        .map(|f| SparsePoly {
            terms: f
                .terms
                .into_iter()
                .map(|(m, c)| (used.iter().map(|&v| m[v]).collect(), c))
                .collect(),
        })
        .collect();
    let m = used.len();
    let leaves = (q as u64).checked_pow((m - 1) as u32).unwrap_or(u64::MAX);
    if leaves > opts.budget {
        return Err(Error::BudgetExceeded { k: 0, completed: 0 });
    }
    let plan = Plan::new(gf, &polys, m);
    let bound = if m == 1 {
        plan.leaf_count(&Scratch::new(&plan))
    } else if opts.parallel && q > 2 {
        (0..gf.order())
            .into_par_iter()
            .map(|a| {
                let mut s = Scratch::new(&plan);
                plan.assign(&mut s, 0, a);
                if plan.check(&s, 0) {
                    plan.descend(&mut s, 1)
                } else {
                    0
                }
            })
            .sum()
    } else {
        let mut s = Scratch::new(&plan);
        plan.descend(&mut s, 0)
    };
    Ok(bound * q.pow(free as u32))
}

/// Precomputed enumeration layout for one system.
struct Plan<'a> {
    gf: &'a Gf,
    nvars: usize,
    /// Per variable, the largest exponent used (size of its power table).
    max_exp: Vec<u32>,
    /// Polynomials not involving the last variable, grouped by their largest variable.
    checks: Vec<Vec<SparsePoly>>,
    /// Polynomials involving the last variable, as `(coefficient-of-x_last^j)` lists.
    leaves: Vec<Vec<(usize, Vec<u32>, u32)>>,
}

struct Scratch {
    /// `powers[v][e] = x_v^e`.
    powers: Vec<Vec<u32>>,
}

impl Scratch {
    fn new(plan: &Plan<'_>) -> Self {
        Scratch {
            powers: plan
                .max_exp
                .iter()
                .map(|&e| {
                    let mut v = vec![0u32; e as usize + 1];
                    v[0] = 1;
                    v
                })
                .collect(),
        }
    }
}

impl<'a> Plan<'a> {
    fn new(gf: &'a Gf, polys: &[SparsePoly], nvars: usize) -> Self {
        let last = nvars - 1;
        let mut max_exp = vec![0u32; nvars];
        let mut checks = vec![Vec::new(); nvars];
        let mut leaves = Vec::new();
        for f in polys {
            for (m, _) in &f.terms {
                for (v, &e) in m.iter().enumerate() {
                    max_exp[v] = max_exp[v].max(e);
                }
            }
            let top = f
                .terms
                .iter()
                .flat_map(|(m, _)| m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, _)| v))
                .max()
                .expect("nonconstant");
            if top == last {
                leaves.push(
                    f.terms
                        .iter()
                        .map(|(m, c)| (m[last] as usize, m[..last].to_vec(), *c))
                        .collect(),
                );
            } else {
                checks[top].push(f.clone());
            }
        }
        Plan {
            gf,
            nvars,
            max_exp,
            checks,
            leaves,
        }
    }

    fn assign(&self, s: &mut Scratch, v: usize, a: u32) {
        let pw = &mut s.powers[v];
        for e in 1..pw.len() {
            pw[e] = self.gf.mul(pw[e - 1], a);
        }
    }

    fn monomial(&self, s: &Scratch, m: &[u32]) -> u32 {
        let mut t = 1u32;
        for (v, &e) in m.iter().enumerate() {
            if e > 0 {
                t = self.gf.mul(t, s.powers[v][e as usize]);
                if t == 0 {
                    return 0;
                }
            }
        }
        t
    }

    /// Polynomials completed by assigning variable `v` all vanish.
    fn check(&self, s: &Scratch, v: usize) -> bool {
        self.checks[v].iter().all(|f| {
            let mut acc = 0u32;
            for (m, c) in &f.terms {
                let t = self.monomial(s, &m[..m.len() - 1]);
                if t != 0 {
                    acc = self.gf.add(acc, self.gf.mul(*c, t));
                }
            }
            acc == 0
        })
    }

    fn descend(&self, s: &mut Scratch, v: usize) -> u128 {
        if v == self.nvars - 1 {
            return self.leaf_count(s);
        }
        let mut total = 0u128;
        for a in 0..self.gf.order() {
            self.assign(s, v, a);
            if self.check(s, v) {
                total += self.descend(s, v + 1);
            }
        }
        total
    }

    /// Number of values of the last variable satisfying every remaining equation.
    fn leaf_count(&self, s: &Scratch) -> u128 {
        let gf = self.gf;
        let mut g: Option<Vec<u32>> = None;
        for f in &self.leaves {
            let mut uni: Vec<u32> = Vec::new();
            for (j, m, c) in f {
                let t = self.monomial(s, m);
                if t == 0 {
                    continue;
                }
                if uni.len() <= *j {
                    uni.resize(j + 1, 0);
                }
                uni[*j] = gf.add(uni[*j], gf.mul(*c, t));
            }
            while uni.last() == Some(&0) {
                uni.pop();
            }
            if uni.is_empty() {
                continue;
            }
            if uni.len() == 1 {
                return 0;
            }
            g = Some(match g {
                None => uni,
                Some(prev) => {
                    let h = gf.poly_gcd(&prev, &uni);
                    if h.len() == 1 {
                        return 0;
                    }
                    h
                }
            });
        }
        match g {
            None => gf.order() as u128,
            Some(g) => gf.count_roots(&g) as u128,
        }
    }
}

/// Field presentation used for counts over `F_{q^k}`.
pub fn counting_field(spec: &VarietySpec, k: u32) -> Result<Arc<FieldSpec>> {
    Ok(extend_and_embed(spec.field(), k)?.0)
}
