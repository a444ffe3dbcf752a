//! Evaluation codes `E_l = ev_P(L_l)` on affine rational points of a plane
//! curve, and their duals `C_l`.

use std::sync::Arc;

use crate::bipoly::BiPoly;
use crate::curve_algebra::{AlgebraElement, Curve, Family, OrderedBasis};
use crate::error::{Error, Result};
use crate::linear::{min_weight_of_span, EchelonBasis, LinearCode, Matrix};

/// Affine zeros of `poly` over its field, scanning all `q^2` pairs in
/// lexicographic order of their encodings.
pub fn affine_points(poly: &BiPoly) -> Vec<(u32, u32)> {
    let q = poly.field().q();
    (0..q)
        .flat_map(|x| (0..q).map(move |y| (x, y)))
        .filter(|&(x, y)| poly.eval(x, y) == 0)
        .collect()
}

/// Distinct affine points on a curve, in a fixed order.
#[derive(Debug, Clone)]
pub struct PointSet {
    curve: Curve,
    points: Vec<(u32, u32)>,
}

/// All affine rational points of the curve.
pub fn rational_points(curve: &Curve) -> Result<PointSet> {
    let points = affine_points(curve.defining_polynomial());
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    Ok(PointSet {
        curve: curve.clone(),
        points,
    })
}

impl PointSet {
    /// Checks that every point lies on the curve and that no point repeats.
    pub fn new(curve: &Curve, points: Vec<(u32, u32)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPoints);
        }
        let q = curve.field().q();
        for (i, &(x, y)) in points.iter().enumerate() {
            if x >= q || y >= q || !curve.contains_point(x, y) {
                return Err(Error::PointOffCurve(x, y));
            }
            if points[..i].contains(&(x, y)) {
                return Err(Error::DuplicatePoint(x, y));
            }
        }
        Ok(PointSet {
            curve: curve.clone(),
            points,
        })
    }

    /// The first `n` points.
    pub fn first(&self, n: usize) -> Result<PointSet> {
        if n == 0 {
            return Err(Error::EmptyPoints);
        }
        if n > self.points.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.points.len() + 1,
            });
        }
        Ok(PointSet {
            curve: self.curve.clone(),
            points: self.points[..n].to_vec(),
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn check(&self, curve: &Curve) -> Result<()> {
        if Arc::ptr_eq(curve, &self.curve) || **curve == *self.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }
}

/// `(elem(P_1), ..., elem(P_n))`.
pub fn evaluate(elem: &AlgebraElement, pts: &PointSet) -> Result<Vec<u32>> {
    pts.check(elem.curve())?;
    Ok(pts.points.iter().map(|&(x, y)| elem.eval(x, y)).collect())
}

/// An element evaluating to the `i`-th unit vector (0-based point index):
/// the product of `(x - a)` over the x-coordinates `a` of the other points
/// that differ from `P_i`'s, times the same in y, scaled to 1 at `P_i`.
pub fn interpolation_unit(pts: &PointSet, i: usize) -> Result<AlgebraElement> {
    let n = pts.len();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let curve = pts.curve();
    let f = curve.field();
    let (xi, yi) = pts.points[i];
    let mut xs: Vec<u32> = pts
        .points
        .iter()
        .map(|p| p.0)
        .filter(|&a| a != xi)
        .collect();
    let mut ys: Vec<u32> = pts
        .points
        .iter()
        .map(|p| p.1)
        .filter(|&b| b != yi)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let mut g = curve.constant(1);
    for a in xs {
        let factor = BiPoly::x(f).sub(&BiPoly::constant(f, a))?;
        g = g.mul(&curve.reduce(&factor)?)?;
    }
    for b in ys {
        let factor = BiPoly::y(f).sub(&BiPoly::constant(f, b))?;
        g = g.mul(&curve.reduce(&factor)?)?;
    }
    let at_pi = g.eval(xi, yi);
    Ok(g.scale(f.inv(at_pi)?))
}

/// Parameters guaranteed by the weight-function distance theorem when
/// `ρ_l < n`; all `None` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignedParams {
    pub k: Option<usize>,
    /// `n - ρ_l`.
    pub d: Option<usize>,
    /// `n + 1 - k - g`.
    pub genus_bound: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct EvalCode {
    points: PointSet,
    l: usize,
    basis: OrderedBasis,
    generator: Matrix,
    rank: usize,
    designed: DesignedParams,
}

/// `E_l` spanned by the evaluations of `f_1, ..., f_l`.
pub fn eval_code(curve: &Curve, pts: &PointSet, l: usize) -> Result<EvalCode> {
    pts.check(curve)?;
    if pts.is_empty() {
        return Err(Error::EmptyPoints);
    }
    if l == 0 {
        return Err(Error::IndexOutOfRange { index: 0, len: 0 });
    }
    let basis = curve.basis_prefix(l);
    let rows = basis
        .monomials
        .iter()
        .map(|&m| evaluate(&curve.monomial(m), pts))
        .collect::<Result<Vec<_>>>()?;
    let generator = Matrix::from_rows(curve.field(), pts.len(), &rows)?;
    let rank = generator.rank();
    let n = pts.len();
    let rho_l = basis.weights[l - 1];
    let designed = if (rho_l as usize) < n {
        let g = curve.semigroup().genus() as i64;
        DesignedParams {
            k: Some(l),
            d: Some(n - rho_l as usize),
            genus_bound: Some(n as i64 + 1 - l as i64 - g),
        }
    } else {
        DesignedParams {
            k: None,
            d: None,
            genus_bound: None,
        }
    };
    Ok(EvalCode {
        points: pts.clone(),
        l,
        basis,
        generator,
        rank,
        designed,
    })
}

impl EvalCode {
    pub fn curve(&self) -> &Curve {
        self.points.curve()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rho_l(&self) -> u64 {
        self.basis.weights[self.l - 1]
    }

    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    /// `l × n`, row `i` the evaluation of `f_(i+1)`.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Actual dimension of `E_l`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn designed(&self) -> DesignedParams {
        self.designed
    }

    /// `E_l` as a linear code; `TrivialCode` when it is all of `F_q^n`.
    pub fn linear_code(&self) -> Result<LinearCode> {
        LinearCode::from_spanning_rows(&self.generator)
    }

    /// Brute-forced minimum distance of `E_l`, over a basis of the code.
    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize> {
        let basis = self.generator.row_space_basis();
        Ok(min_weight_of_span(&basis, budget)?.expect("E_l contains the all-ones word"))
    }

    /// Basis of `C_l = E_l^⊥` as rows (possibly zero rows when `E_l` is full).
    pub fn dual_basis(&self) -> Matrix {
        self.generator.null_space()
    }
}

/// `C_l`; `TrivialCode` when `E_l` is the whole space.
pub fn dual_eval_code(ec: &EvalCode) -> Result<LinearCode> {
    LinearCode::from_generator(ec.dual_basis())
}

/// `dim E_1, ..., dim E_upto`, built incrementally.
pub fn eval_dimensions(pts: &PointSet, upto: usize) -> Vec<usize> {
    let curve = pts.curve();
    let basis = curve.basis_prefix(upto);
    let mut echelon = EchelonBasis::new(curve.field());
    basis
        .monomials
        .iter()
        .map(|&m| {
            let row = evaluate(&curve.monomial(m), pts).expect("same curve");
            echelon.insert(&row);
            echelon.dim()
        })
        .collect()
}

/// Designed parameters of the one-point code `C(D, lm·P)` on a family-B
/// curve and the matching evaluation code `E_k` with `ρ_k = lm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoppaParams {
    pub n: usize,
    /// `lm + 1 - (m-1)/2`.
    pub k: usize,
    /// `n - lm`.
    pub d_star: usize,
    /// Index `k` of the evaluation code with `ρ_k = lm`.
    pub eval_index: usize,
}

pub fn one_point_goppa_params(curve: &Curve, pts: &PointSet, lm: u64) -> Result<GoppaParams> {
    pts.check(curve)?;
    let Family::B { m, .. } = curve.family() else {
        return Err(Error::UnsupportedFamily("B"));
    };
    let m = *m as u64;
    let n = pts.len();
    if !(m < lm && lm < n as u64) {
        return Err(Error::DegreeOutOfRange {
            degree: lm,
            lower: m,
            upper: n as u64,
        });
    }
    let eval_index = curve
        .semigroup()
        .index_of(lm)
        .ok_or(Error::NotInSemigroup(lm))?;
    let k = (lm + 1 - (m - 1) / 2) as usize;
    let d_star = n - lm as usize;
    let ec = eval_code(curve, pts, eval_index)?;
    let designed = ec.designed();
    if designed.k != Some(k) || designed.d != Some(d_star) {
        return Err(Error::ParameterMismatch(format!(
            "C(D, {lm}P) has k = {k}, d* = {d_star}; E_{eval_index} has {:?}",
            designed
        )));
    }
    Ok(GoppaParams {
        n,
        k,
        d_star,
        eval_index,
    })
}
