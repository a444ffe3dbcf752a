//! Quotient algebras `R = F_q[x,y]/<f>` of two plane-curve families, kept in
//! normal form on a monomial basis, with their weight functions.
//!
//! * Family A: `f = x^m + y^(m-1) + G(x,y)` with `deg G < m-1`. Basis
//!   monomials `x^a y^b` with `a < m`; weights `ρ(x) = m-1`, `ρ(y) = m`.
//! * Family B: `f = y^2 - g(x)` with `deg g = m` odd, odd characteristic.
//!   Basis monomials `x^a y^b` with `b < 2`; weights `ρ(x) = 2`, `ρ(y) = m`.
//!
//! In both cases the weights of basis monomials are pairwise distinct and
//! form the numerical semigroup generated by the two variable weights, so the
//! weight of an element is the weight of its heaviest monomial.

use std::sync::Arc;

use rand::Rng;

use crate::bipoly::{BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linear::Matrix;
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `x^m + y^(m-1) + tail`.
    A { m: u32, tail: BiPoly },
    /// `y^2 - g(x)`, `m = deg g`.
    B { m: u32, g: BiPoly },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    field: FieldSpec,
    family: Family,
    weights: (u64, u64),
    semigroup: NumericalSemigroup,
    defining: BiPoly,
    /// `x^m` (family A) or `y^2` (family B) is replaced by this polynomial.
    rewrite: BiPoly,
}

pub type Curve = Arc<PlaneCurve>;

pub fn curve_family_a(field: &FieldSpec, m: u32, tail: BiPoly) -> Result<Curve> {
    if m < 2 {
        return Err(Error::InvalidCurve(format!(
            "family A needs m >= 2, got {m}"
        )));
    }
    if !tail.field().same_field(field) {
        return Err(Error::SpecMismatch);
    }
    if let Some(degree) = tail.total_degree() {
        if degree >= m - 1 {
            return Err(Error::TailTooBig {
                degree,
                bound: m - 1,
            });
        }
    }
    let lead = BiPoly::monomial(field, (m, 0), 1).add(&BiPoly::monomial(field, (0, m - 1), 1))?;
    let defining = lead.add(&tail)?;
    let rewrite = BiPoly::monomial(field, (0, m - 1), 1)
        .add(&tail)?
        .scale(field.neg(1));
    PlaneCurve::build(
        field,
        Family::A { m, tail },
        (m as u64 - 1, m as u64),
        defining,
        rewrite,
    )
}

/// `g` is given by its little-endian coefficients in x.
pub fn curve_family_b(field: &FieldSpec, g_coeffs: &[u32]) -> Result<Curve> {
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let g = BiPoly::from_x_coeffs(field, g_coeffs)?;
    let m = g
        .degree_x()
        .ok_or_else(|| Error::InvalidCurve("g(x) is zero".into()))?;
    if m % 2 == 0 {
        return Err(Error::EvenDegree(m));
    }
    let defining = BiPoly::monomial(field, (0, 2), 1).sub(&g)?;
    PlaneCurve::build(
        field,
        Family::B { m, g: g.clone() },
        (2, m as u64),
        defining,
        g,
    )
}

impl PlaneCurve {
    fn build(
        field: &FieldSpec,
        family: Family,
        weights: (u64, u64),
        defining: BiPoly,
        rewrite: BiPoly,
    ) -> Result<Curve> {
        let semigroup = NumericalSemigroup::new(&[weights.0, weights.1])?;
        Ok(Arc::new(PlaneCurve {
            field: field.clone(),
            family,
            weights,
            semigroup,
            defining,
            rewrite,
        }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::A { .. } => "A",
            Family::B { .. } => "B",
        }
    }

    pub fn m(&self) -> u32 {
        match self.family {
            Family::A { m, .. } | Family::B { m, .. } => m,
        }
    }

    /// `(ρ(x), ρ(y))`.
    pub fn weights(&self) -> (u64, u64) {
        self.weights
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// The polynomial `f` whose zero set is the curve.
    pub fn defining_polynomial(&self) -> &BiPoly {
        &self.defining
    }

    pub fn contains_point(&self, x: u32, y: u32) -> bool {
        self.defining.eval(x, y) == 0
    }

    pub fn monomial_weight(&self, (a, b): Monomial) -> u64 {
        a as u64 * self.weights.0 + b as u64 * self.weights.1
    }

    pub fn is_basis_monomial(&self, (a, b): Monomial) -> bool {
        match self.family {
            Family::A { m, .. } => a < m,
            Family::B { .. } => b < 2,
        }
    }

    /// The basis monomial of weight `w`, if `w` lies in the semigroup.
    pub fn basis_monomial(&self, w: u64) -> Option<Monomial> {
        let (wx, wy) = self.weights;
        match self.family {
            Family::A { m, .. } => (0..m as u64)
                .find(|&a| a * wx <= w && (w - a * wx).is_multiple_of(wy))
                .map(|a| (a as u32, ((w - a * wx) / wy) as u32)),
            Family::B { .. } => (0..2u64)
                .find(|&b| b * wy <= w && (w - b * wy).is_multiple_of(wx))
                .map(|b| (((w - b * wy) / wx) as u32, b as u32)),
        }
    }

    /// Normal form of a polynomial on the monomial basis.
    pub fn reduce(self: &Curve, poly: &BiPoly) -> Result<AlgebraElement> {
        if !poly.field().same_field(&self.field) {
            return Err(Error::SpecMismatch);
        }
        let mut p = poly.clone();
        match self.family {
            Family::A { m, .. } => {
                while let Some(&(a, b)) = p.terms().keys().rev().find(|&&(a, _)| a >= m) {
                    let c = p.remove_term((a, b));
                    p = p.add(&self.rewrite.shift((a - m, b), c))?;
                }
            }
            Family::B { .. } => {
                while let Some(&(a, b)) = p.terms().keys().find(|&&(_, b)| b >= 2) {
                    let c = p.remove_term((a, b));
                    p = p.add(&self.rewrite.shift((a, b - 2), c))?;
                }
            }
        }
        Ok(AlgebraElement {
            curve: self.clone(),
            poly: p,
        })
    }

    pub fn constant(self: &Curve, c: u32) -> AlgebraElement {
        AlgebraElement {
            curve: self.clone(),
            poly: BiPoly::constant(&self.field, c),
        }
    }

    pub fn monomial(self: &Curve, m: Monomial) -> AlgebraElement {
        self.reduce(&BiPoly::monomial(&self.field, m, 1))
            .expect("same field")
    }

    /// `f_1, ..., f_l` ordered by strictly increasing weight.
    pub fn basis_prefix(&self, l: usize) -> OrderedBasis {
        let weights: Vec<u64> = (1..=l).map(|i| self.semigroup.nth(i)).collect();
        let monomials = weights
            .iter()
            .map(|&w| {
                self.basis_monomial(w)
                    .expect("every semigroup element is a monomial weight")
            })
            .collect();
        OrderedBasis { monomials, weights }
    }

    /// The index `l` with `ρ_l = ρ_i + ρ_j` (indices from 1).
    pub fn l_index(&self, i: usize, j: usize) -> usize {
        let sg = &self.semigroup;
        sg.index_of(sg.nth(i) + sg.nth(j))
            .expect("semigroup is closed under addition")
    }

    /// `dim R/<f>` by linear algebra: the ideal's elements of weight at most
    /// `W = ρ(f) + c` are spanned by the products `f·f_i`, so the quotient
    /// dimension is the number of basis monomials of weight `<= W` minus the
    /// rank of those products. Fails with `DivisionByZero` for `f = 0`.
    pub fn quotient_dimension(self: &Curve, f: &AlgebraElement) -> Result<usize> {
        self.check(f)?;
        let s = f.weight().ok_or(Error::DivisionByZero)?;
        let bound = s + self.semigroup.conductor();
        let columns: Vec<u64> = self.semigroup.elements_up_to(bound);
        let col_of = |w: u64| columns.binary_search(&w).ok();
        let multipliers: Vec<u64> = self.semigroup.elements_up_to(bound - s);
        let mut rows = Vec::with_capacity(multipliers.len());
        for &w in &multipliers {
            let fi = self.monomial(self.basis_monomial(w).expect("element"));
            let prod = f.mul(&fi)?;
            let mut row = vec![0u32; columns.len()];
            for (&mono, &c) in prod.poly.terms() {
                let col = col_of(self.monomial_weight(mono)).ok_or_else(|| {
                    Error::ParameterMismatch(format!("product f*f_i exceeds weight {bound}"))
                })?;
                row[col] = c;
            }
            rows.push(row);
        }
        let rank = Matrix::from_rows(&self.field, columns.len(), &rows)?.rank();
        Ok(columns.len() - rank)
    }

    /// Random element with every basis monomial of weight `<= max_weight`
    /// given a uniform coefficient.
    pub fn random_element<R: Rng + ?Sized>(
        self: &Curve,
        rng: &mut R,
        max_weight: u64,
    ) -> AlgebraElement {
        let mut poly = BiPoly::zero(&self.field);
        for w in self.semigroup.elements_up_to(max_weight) {
            let c = rng.random_range(0..self.field.q());
            poly.add_term(self.basis_monomial(w).expect("element"), c);
        }
        AlgebraElement {
            curve: self.clone(),
            poly,
        }
    }

    pub(crate) fn check(self: &Curve, e: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(self, &e.curve) || **self == *e.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis {
    pub monomials: Vec<Monomial>,
    pub weights: Vec<u64>,
}

/// An element of `R` in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    curve: Curve,
    poly: BiPoly,
}

impl AlgebraElement {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Normal-form representative.
    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `ρ(self)`; `None` stands for `-∞`, the weight of zero.
    pub fn weight(&self) -> Option<u64> {
        self.poly
            .terms()
            .keys()
            .map(|&m| self.curve.monomial_weight(m))
            .max()
    }

    /// Coefficient of the heaviest monomial (0 for the zero element).
    pub fn leading_coeff(&self) -> u32 {
        self.weight()
            .map(|w| {
                self.poly
                    .coeff(self.curve.basis_monomial(w).expect("element"))
            })
            .unwrap_or(0)
    }

    fn same_curve(&self, other: &AlgebraElement) -> Result<()> {
        self.curve.check(other)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_curve(other)?;
        Ok(AlgebraElement {
            curve: self.curve.clone(),
            poly: self.poly.add(&other.poly)?,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_curve(other)?;
        Ok(AlgebraElement {
            curve: self.curve.clone(),
            poly: self.poly.sub(&other.poly)?,
        })
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_curve(other)?;
        self.curve.reduce(&self.poly.mul(&other.poly)?)
    }

    pub fn scale(&self, c: u32) -> AlgebraElement {
        AlgebraElement {
            curve: self.curve.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn eval(&self, x: u32, y: u32) -> u32 {
        self.poly.eval(x, y)
    }
}
