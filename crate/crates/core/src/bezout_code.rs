//! Codes from bivariate polynomials of total degree at most `l`, evaluated at
//! points of a plane curve `G = 0` of degree `m`.

use crate::bipoly::{BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::linear::{min_weight_of_span, LinearCode, Matrix};

fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Monomials `x^a y^b` with `a + b <= l`, by total degree and then by
/// decreasing power of x: `1, x, y, x^2, xy, y^2, ...`.
pub fn vl_basis(l: u32) -> Vec<Monomial> {
    (0..=l)
        .flat_map(|d| (0..=d).rev().map(move |a| (a, d - a)))
        .collect()
}

/// `dim V_l = (l+1)(l+2)/2`.
pub fn vl_dim(l: u32) -> usize {
    binomial2(l as usize + 2)
}

#[derive(Debug, Clone)]
pub struct BezoutCode {
    curve: BiPoly,
    points: Vec<(u32, u32)>,
    l: u32,
    m: u32,
    generator: Matrix,
    rank: usize,
}

/// Evaluations of `V_l` at `points`, all of which must lie on `curve = 0`.
/// Needs `n > l·m` where `m` is the total degree of `curve`.
pub fn bezout_code(curve: &BiPoly, points: &[(u32, u32)], l: u32) -> Result<BezoutCode> {
    let f = curve.field();
    let m = curve
        .total_degree()
        .ok_or_else(|| Error::InvalidCurve("zero polynomial".into()))?;
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    for &(x, y) in points {
        if x >= f.q() || y >= f.q() || curve.eval(x, y) != 0 {
            return Err(Error::PointOffCurve(x, y));
        }
    }
    let n = points.len();
    let lm = (l * m) as usize;
    if n <= lm {
        return Err(Error::BezoutHypothesisViolated { n, lm });
    }
    let rows: Vec<Vec<u32>> = vl_basis(l)
        .into_iter()
        .map(|mono| {
            let p = BiPoly::monomial(f, mono, 1);
            points.iter().map(|&(x, y)| p.eval(x, y)).collect()
        })
        .collect();
    let generator = Matrix::from_rows(f, n, &rows)?;
    let rank = generator.rank();
    Ok(BezoutCode {
        curve: curve.clone(),
        points: points.to_vec(),
        l,
        m,
        generator,
        rank,
    })
}

impl BezoutCode {
    pub fn curve(&self) -> &BiPoly {
        &self.curve
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `dim V_l × n`, rows in the order of [`vl_basis`].
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `C(l+2, 2)` for `l < m`, else `lm + 1 - C(m-1, 2)`.
    pub fn designed_k(&self) -> usize {
        let (l, m) = (self.l as usize, self.m as usize);
        if l < m {
            vl_dim(self.l)
        } else {
            l * m + 1 - binomial2(m - 1)
        }
    }

    /// `n - lm`.
    pub fn designed_d(&self) -> usize {
        self.n() - (self.l * self.m) as usize
    }

    /// Whether the evaluation rank attains the designed dimension. A mismatch
    /// means the curve is not absolutely irreducible (or the points are too few).
    pub fn k_matches(&self) -> bool {
        self.rank == self.designed_k()
    }

    pub fn linear_code(&self) -> Result<LinearCode> {
        LinearCode::from_spanning_rows(&self.generator)
    }

    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize> {
        let basis = self.generator.row_space_basis();
        Ok(min_weight_of_span(&basis, budget)?.expect("V_l contains the constants"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation_code::affine_points;
    use crate::gf::FieldSpec;
    use crate::linear::DEFAULT_BUDGET;

    fn hermitian(r: u32, m: u32) -> BiPoly {
        let f = FieldSpec::new(2, r, None).unwrap();
        BiPoly::from_terms(&f, &[(m, 0, 1), (0, m - 1, 1), (0, 1, 1)]).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(vl_basis(0), vec![(0, 0)]);
        assert_eq!(
            vl_basis(2),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        for l in 0..8 {
            assert_eq!(vl_basis(l).len(), vl_dim(l));
        }
        assert_eq!(vl_dim(3), 10);
    }

    #[test]
    fn cubic_over_gf4() {
        let g = hermitian(2, 3);
        let pts = affine_points(&g);
        assert_eq!(pts.len(), 8);
        let c0 = bezout_code(&g, &pts, 0).unwrap();
        assert_eq!((c0.rank(), c0.designed_k(), c0.designed_d()), (1, 1, 8));
        assert_eq!(c0.min_distance_bruteforce(DEFAULT_BUDGET).unwrap(), 8);
        for l in 1..=2 {
            let c = bezout_code(&g, &pts, l).unwrap();
            assert!(
                c.k_matches(),
                "l = {l}: rank {} vs {}",
                c.rank(),
                c.designed_k()
            );
            assert!(c.min_distance_bruteforce(DEFAULT_BUDGET).unwrap() >= c.designed_d());
        }
        assert_eq!(
            bezout_code(&g, &pts, 3).unwrap_err(),
            Error::BezoutHypothesisViolated { n: 8, lm: 9 }
        );
    }

    #[test]
    fn rejects_points_off_the_curve() {
        let g = hermitian(2, 3);
        assert_eq!(
            bezout_code(&g, &[(1, 0)], 0).unwrap_err(),
            Error::PointOffCurve(1, 0)
        );
    }

    #[test]
    fn kernel_is_multiples_of_the_curve() {
        // x^5 + y^4 + y over GF(16): 64 points
        let g = hermitian(4, 5);
        let pts = affine_points(&g);
        assert_eq!(pts.len(), 64);
        for l in 4..=7 {
            let c = bezout_code(&g, &pts, l).unwrap();
            let expected = vl_dim(l) - if l >= 5 { vl_dim(l - 5) } else { 0 };
            assert_eq!(c.rank(), expected);
            assert!(c.k_matches());
        }
    }
}
