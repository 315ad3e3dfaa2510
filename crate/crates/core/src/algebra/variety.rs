use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{build_field, FieldSpec};
use super::multipoly::{FieldMultiPoly, IntMultiPoly, VarStyle};
use super::parse::parse_poly;
use crate::error::{Error, Result};

/// Ambient space of a variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// Affine space `A^n` with coordinates `x1..xn`.
    Affine,
    /// Projective space `P^n` with coordinates `x0..xn`.
    Projective,
}

impl Ambient {
    pub fn style(self) -> VarStyle {
        match self {
            Ambient::Affine => VarStyle::Affine,
            Ambient::Projective => VarStyle::Projective,
        }
    }

    /// Number of coordinate slots for dimension `n`.
    pub fn slots(self, n: usize) -> usize {
        match self {
            Ambient::Affine => n,
            Ambient::Projective => n + 1,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Affine => write!(f, "affine"),
            Ambient::Projective => write!(f, "projective"),
        }
    }
}

/// The zero locus of `f_1, ..., f_r` in `A^n` or `P^n` over `F_q`.
#[derive(Clone, PartialEq)]
pub struct VarietySpec {
    field: Arc<FieldSpec>,
    ambient: Ambient,
    n: usize,
    polys: Vec<FieldMultiPoly>,
    degrees: Vec<u32>,
}

impl VarietySpec {
    /// Reduces integer polynomials into the field and validates the system.
    pub fn new(
        field: Arc<FieldSpec>,
        ambient: Ambient,
        n: usize,
        polys: &[IntMultiPoly],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidVariety(
                "ambient dimension must be at least 1".into(),
            ));
        }
        let reduced: Vec<FieldMultiPoly> = polys.iter().map(|f| f.reduce(&field)).collect();
        Self::from_field_polys(field, ambient, n, reduced)
    }

    /// Parses polynomial strings and validates.
    pub fn parse(p: u64, e: u32, ambient: Ambient, n: usize, polys: &[&str]) -> Result<Self> {
        let field = build_field(p, e)?;
        let slots = ambient.slots(n);
        let parsed: Result<Vec<IntMultiPoly>> = polys
            .iter()
            .map(|s| parse_poly(s, slots, ambient.style()))
            .collect();
        Self::new(field, ambient, n, &parsed?)
    }

    pub fn from_field_polys(
        field: Arc<FieldSpec>,
        ambient: Ambient,
        n: usize,
        polys: Vec<FieldMultiPoly>,
    ) -> Result<Self> {
        Self::build(field, ambient, n, polys, 1)
    }

    /// Like [`VarietySpec::from_field_polys`] but also admits `n = 0` (a point),
    /// used for hyperplane sections at infinity of affine curves in `A^1`.
    pub(crate) fn from_field_polys_allow_point(
        field: Arc<FieldSpec>,
        ambient: Ambient,
        n: usize,
        polys: Vec<FieldMultiPoly>,
    ) -> Result<Self> {
        Self::build(field, ambient, n, polys, 0)
    }

    fn build(
        field: Arc<FieldSpec>,
        ambient: Ambient,
        n: usize,
        polys: Vec<FieldMultiPoly>,
        min_n: usize,
    ) -> Result<Self> {
        if n < min_n {
            return Err(Error::InvalidVariety(
                "ambient dimension must be at least 1".into(),
            ));
        }
        if polys.is_empty() {
            return Err(Error::InvalidVariety(
                "at least one polynomial is required".into(),
            ));
        }
        let slots = ambient.slots(n);
        let mut degrees = Vec::with_capacity(polys.len());
        for (i, f) in polys.iter().enumerate() {
            if f.nvars() != slots {
                return Err(Error::InvalidVariety(format!(
                    "polynomial {i} has {} variables, expected {slots}",
                    f.nvars()
                )));
            }
            match f.total_degree() {
                None => return Err(Error::ZeroPolynomial),
                Some(0) => {
                    return Err(Error::InvalidVariety(format!(
                        "polynomial {i} is a nonzero constant; defining polynomials need positive degree"
                    )))
                }
                Some(d) => degrees.push(d),
            }
            if ambient == Ambient::Projective && !f.is_homogeneous() {
                return Err(Error::NonHomogeneous { index: i });
            }
        }
        Ok(VarietySpec {
            field,
            ambient,
            n,
            polys,
            degrees,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[FieldMultiPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `q = p^e`.
    pub fn q(&self) -> u64 {
        self.field.order().expect("field order fits u64")
    }

    pub fn slots(&self) -> usize {
        self.ambient.slots(self.n)
    }

    /// Same variety with the slots permuted.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Self> {
        Self::build(
            self.field.clone(),
            self.ambient,
            self.n,
            self.polys
                .iter()
                .map(|f| f.permute_variables(perm))
                .collect(),
            0,
        )
    }

    /// Projective closure: each `f_i` homogenized with `x0`.
    pub fn projective_closure(&self) -> Result<Self> {
        if self.ambient != Ambient::Affine {
            return Err(Error::InvalidVariety(
                "projective closure needs an affine variety".into(),
            ));
        }
        let polys: Result<Vec<FieldMultiPoly>> = self
            .polys
            .iter()
            .zip(&self.degrees)
            .map(|(f, &d)| f.homogenize(d))
            .collect();
        Self::from_field_polys(self.field.clone(), Ambient::Projective, self.n, polys?)
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let polys: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        let sym = match self.ambient {
            Ambient::Affine => "A",
            Ambient::Projective => "P",
        };
        write!(
            f,
            "V({}) in {}^{} over F_{}",
            polys.join(", "),
            sym,
            self.n,
            self.q()
        )
    }
}

impl fmt::Debug for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
