//! Sparse bivariate polynomials over GF(q).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Exponent pair `(a, b)` of the monomial `x^a y^b`.
pub type Monomial = (u32, u32);

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldSpec,
    terms: BTreeMap<Monomial, u32>,
}

impl BiPoly {
    pub fn zero(field: &FieldSpec) -> Self {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::monomial(field, (0, 0), c)
    }

    pub fn monomial(field: &FieldSpec, m: Monomial, c: u32) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, (1, 0), 1)
    }

    pub fn y(field: &FieldSpec) -> Self {
        Self::monomial(field, (0, 1), 1)
    }

    /// Builds a polynomial from `(x_exp, y_exp, coeff)` triples; repeated
    /// monomials are summed.
    pub fn from_terms(field: &FieldSpec, terms: &[(u32, u32, u32)]) -> Result<Self> {
        let mut p = Self::zero(field);
        for &(a, b, c) in terms {
            field.check(c as u64)?;
            p.add_term((a, b), c);
        }
        Ok(p)
    }

    /// Univariate polynomial in x from little-endian coefficients.
    pub fn from_x_coeffs(field: &FieldSpec, coeffs: &[u32]) -> Result<Self> {
        let mut p = Self::zero(field);
        for (i, &c) in coeffs.iter().enumerate() {
            field.check(c as u64)?;
            p.add_term((i as u32, 0), c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> u32 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let v = self.field.add(self.coeff(m), c);
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub(crate) fn remove_term(&mut self, m: Monomial) -> u32 {
        self.terms.remove(&m).unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    fn same_field(&self, other: &BiPoly) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.same_field(other)?;
        let f = &self.field;
        let mut out = BiPoly::zero(f);
        for (&(a, b), &c) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                out.add_term((a + a2, b + b2), f.mul(c, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> BiPoly {
        let mut out = BiPoly::zero(&self.field);
        for (&m, &v) in &self.terms {
            out.add_term(m, self.field.mul(v, c));
        }
        out
    }

    /// Multiplies by the monomial `x^a y^b` with coefficient `c`.
    pub fn shift(&self, (a, b): Monomial, c: u32) -> BiPoly {
        let mut out = BiPoly::zero(&self.field);
        for (&(a2, b2), &v) in &self.terms {
            out.add_term((a + a2, b + b2), self.field.mul(v, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::constant(&self.field, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn eval(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (&(a, b), &c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, a as u64), f.pow(y, b as u64))))
        })
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let xs = match a {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{a}"),
                    };
                    let ys = match b {
                        0 => String::new(),
                        1 => "y".into(),
                        _ => format!("y^{b}"),
                    };
                    format!("{xs}{ys}")
                }
            };
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{c}{mono}")?,
            }
        }
        Ok(())
    }
}
