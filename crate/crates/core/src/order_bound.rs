//! The order bound: pair counts `ν_l` from the weight semigroup, `d(l)` and
//! `d_φ(l)`, and the syndrome matrix `S(y)` whose rank is the weight of `y`.

use rand::Rng;

use crate::curve_algebra::Curve;
use crate::error::{Error, Result};
use crate::evaluation_code::{eval_dimensions, evaluate, PointSet};
use crate::linear::{EchelonBasis, Matrix};
use crate::semigroup::NumericalSemigroup;

/// `ν_l = #{(i, j) : ρ_i + ρ_j = ρ_(l+1)}`. `ν_0 = 1`.
pub fn nu(sg: &NumericalSemigroup, l: usize) -> u64 {
    let t = sg.nth(l + 1);
    (0..=t)
        .filter(|&a| sg.contains(a) && sg.contains(t - a))
        .count() as u64
}

/// `ν_1, ..., ν_upto`.
pub fn nu_sequence(sg: &NumericalSemigroup, upto: usize) -> Vec<u64> {
    (1..=upto).map(|l| nu(sg, l)).collect()
}

/// The pairs counted by `ν_l`, 1-based, in lexicographic order.
pub fn nu_pairs(sg: &NumericalSemigroup, l: usize) -> Vec<(usize, usize)> {
    let t = sg.nth(l + 1);
    (0..=t)
        .filter(|&a| sg.contains(a) && sg.contains(t - a))
        .map(|a| (sg.index_of(a).unwrap(), sg.index_of(t - a).unwrap()))
        .collect()
}

/// First index `m` with `ρ_m >= 2c`; from there on `ν` is checked to be
/// nondecreasing up to the horizon.
fn tail_start(sg: &NumericalSemigroup) -> usize {
    sg.index_of(2 * sg.conductor())
        .expect("2c is past the conductor")
}

/// `d(l) = min { ν_m : m >= l }`.
///
/// The minimum over the infinite tail is taken over `l..=max(l, m0)` where
/// `m0` is the first index with `ρ_m >= 2c`, after checking that `ν` does not
/// decrease on `m0..=horizon`. Fails with `HorizonTooSmall` if the horizon
/// leaves nothing to check or the check fails.
pub fn order_bound_d(sg: &NumericalSemigroup, l: usize, horizon: usize) -> Result<u64> {
    assert!(l >= 1, "order bound is indexed from 1");
    let start = tail_start(sg).max(l);
    let needed = start + 1;
    if horizon < needed {
        return Err(Error::HorizonTooSmall { horizon, needed });
    }
    let nus: Vec<u64> = (l..=horizon).map(|m| nu(sg, m)).collect();
    let tail = &nus[start - l..];
    if tail.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::HorizonTooSmall {
            horizon,
            needed: horizon + 1,
        });
    }
    Ok(*nus[..=start - l].iter().min().unwrap())
}

/// `d_φ(l) = min { ν_m : m >= l, C_m != C_(m+1) }`.
///
/// `e_dims[i]` is `dim E_(i+1)`; it must reach `n` by index `horizon + 1`,
/// after which no `C_m` changes. `None` when no such `m` exists, i.e. when
/// `C_l = 0`.
pub fn order_bound_dphi(
    sg: &NumericalSemigroup,
    e_dims: &[usize],
    n: usize,
    l: usize,
    horizon: usize,
) -> Result<Option<u64>> {
    assert!(l >= 1, "order bound is indexed from 1");
    if horizon < l || e_dims.len() < horizon + 1 || e_dims[horizon] != n {
        return Err(Error::HorizonTooSmall {
            horizon,
            needed: e_dims
                .iter()
                .position(|&d| d == n)
                .unwrap_or(e_dims.len())
                .max(l),
        });
    }
    Ok((l..=horizon)
        .filter(|&m| e_dims[m - 1] != e_dims[m])
        .map(|m| nu(sg, m))
        .min())
}

/// `d_φ(l)` for the evaluation codes on `pts`, computing `dim E_1..E_(horizon+1)`.
pub fn order_bound_dphi_for_points(
    pts: &PointSet,
    l: usize,
    horizon: usize,
) -> Result<Option<u64>> {
    let dims = eval_dimensions(pts, horizon + 1);
    order_bound_dphi(pts.curve().semigroup(), &dims, pts.len(), l, horizon)
}

/// `d(l)` and `d_φ(l)` side by side for `l = 1..=upto`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub l: usize,
    pub nu: u64,
    pub d: u64,
    pub d_phi: Option<u64>,
}

pub fn bound_table(pts: &PointSet, upto: usize, horizon: usize) -> Result<Vec<BoundRow>> {
    let sg = pts.curve().semigroup();
    let dims = eval_dimensions(pts, horizon + 1);
    (1..=upto)
        .map(|l| {
            Ok(BoundRow {
                l,
                nu: nu(sg, l),
                d: order_bound_d(sg, l, horizon)?,
                d_phi: order_bound_dphi(sg, &dims, pts.len(), l, horizon)?,
            })
        })
        .collect()
}

/// Rows `h_i = φ(f_i)` for `i = 1..=height`.
pub fn evaluation_rows(pts: &PointSet, height: usize) -> Matrix {
    let curve: &Curve = pts.curve();
    let rows: Vec<Vec<u32>> = curve
        .basis_prefix(height)
        .monomials
        .iter()
        .map(|&m| evaluate(&curve.monomial(m), pts).expect("same curve"))
        .collect();
    Matrix::from_rows(curve.field(), pts.len(), &rows).expect("rows have length n")
}

/// `S(y)` with `s_ij = Σ_t y_t h_i(t) h_j(t)`, `height × height`.
pub fn syndrome_matrix(y: &[u32], pts: &PointSet, height: usize) -> Result<Matrix> {
    let n = pts.len();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: y.len(),
        });
    }
    let f = pts.curve().field();
    let h = evaluation_rows(pts, height);
    let mut s = Matrix::zeros(f, height, height);
    for i in 0..height {
        for j in 0..height {
            let v = (0..n).fold(0, |acc, t| {
                f.add(acc, f.mul(y[t], f.mul(h.get(i, t), h.get(j, t))))
            });
            s.set(i, j, v);
        }
    }
    Ok(s)
}

/// `H · diag(y) · Hᵗ`, the factored form of `S(y)`.
pub fn syndrome_matrix_factored(y: &[u32], pts: &PointSet, height: usize) -> Result<Matrix> {
    let n = pts.len();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: y.len(),
        });
    }
    let f = pts.curve().field();
    let h = evaluation_rows(pts, height);
    let mut d = Matrix::zeros(f, n, n);
    for (t, &v) in y.iter().enumerate() {
        d.set(t, t, v);
    }
    h.mul(&d)?.mul(&h.transpose())
}

/// For the lexicographically ordered pairs `(i_u, j_u)` of `N_l`: whether
/// `s_(i_u j_v) = 0` for `u < v` and `s_(i_u j_u) != 0`.
pub fn staircase_holds(s: &Matrix, pairs: &[(usize, usize)]) -> bool {
    pairs.iter().enumerate().all(|(u, &(iu, ju))| {
        s.get(iu - 1, ju - 1) != 0
            && pairs[u + 1..]
                .iter()
                .all(|&(_, jv)| s.get(iu - 1, jv - 1) == 0)
    })
}

/// A random `y` in `C_l \ C_(l+1)`, or `None` when `E_l = E_(l+1)`.
pub fn random_layer_vector<R: Rng + ?Sized>(
    pts: &PointSet,
    l: usize,
    rng: &mut R,
) -> Option<Vec<u32>> {
    let f = pts.curve().field();
    let h = evaluation_rows(pts, l + 1);
    let mut e_l = EchelonBasis::new(f);
    for i in 0..l {
        e_l.insert(h.row(i));
    }
    if e_l.residual(h.row(l)).iter().all(|&c| c == 0) {
        return None;
    }
    let top = Matrix::from_rows(f, pts.len(), &h.row_vecs()[..l]).unwrap();
    let c_l = top.null_space();
    let inner = |v: &[u32]| {
        v.iter()
            .zip(h.row(l))
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    };
    // some basis vector of C_l is not orthogonal to h_(l+1), otherwise C_l = C_(l+1)
    let anchor = (0..c_l.rows()).find(|&r| inner(c_l.row(r)) != 0)?;
    loop {
        let mut y = vec![0u32; pts.len()];
        for r in 0..c_l.rows() {
            let c = rng.random_range(0..f.q());
            for (yt, &b) in y.iter_mut().zip(c_l.row(r)) {
                *yt = f.add(*yt, f.mul(c, b));
            }
        }
        if inner(&y) != 0 {
            return Some(y);
        }
        for (yt, &b) in y.iter_mut().zip(c_l.row(anchor)) {
            *yt = f.add(*yt, b);
        }
        if inner(&y) != 0 {
            return Some(y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::BiPoly;
    use crate::curve_algebra::curve_family_a;
    use crate::evaluation_code::rational_points;
    use crate::gf::FieldSpec;
    use crate::linear::weight;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hermitian_points() -> PointSet {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let c = curve_family_a(&f, 3, BiPoly::y(&f)).unwrap();
        rational_points(&c).unwrap()
    }

    /// Pair count straight from the list of elements.
    fn nu_oracle(gens: &[u64], l: usize) -> u64 {
        let mut elems = vec![];
        let mut x = 0;
        let mut reach = vec![true];
        while elems.len() < l + 1 {
            if x > 0 {
                reach.push(gens.iter().any(|&a| a <= x && reach[(x - a) as usize]));
            }
            if reach[x as usize] {
                elems.push(x);
            }
            x += 1;
        }
        let t = elems[l];
        let mut count = 0;
        for &a in &elems {
            for &b in &elems {
                if a + b == t {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn nu_values() {
        let sg = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!(nu(&sg, 0), 1);
        assert_eq!(nu(&sg, 1), 2);
        for l in 1..30 {
            assert_eq!(nu(&sg, l), nu_oracle(&[2, 3], l));
        }
        let sg = NumericalSemigroup::new(&[3, 5]).unwrap();
        for l in 1..30 {
            assert_eq!(nu(&sg, l), nu_oracle(&[3, 5], l));
            assert_eq!(nu_pairs(&sg, l).len() as u64, nu(&sg, l));
        }
    }

    #[test]
    fn nu_matches_l_index() {
        let pts = hermitian_points();
        let c = pts.curve();
        let sg = c.semigroup();
        for l in 1..10 {
            let mut pairs = vec![];
            for i in 1..=l + 1 {
                for j in 1..=l + 1 {
                    if c.l_index(i, j) == l + 1 {
                        pairs.push((i, j));
                    }
                }
            }
            assert_eq!(pairs, nu_pairs(sg, l));
        }
    }

    #[test]
    fn order_bound_hermitian() {
        let sg = NumericalSemigroup::new(&[2, 3]).unwrap();
        let nus = nu_sequence(&sg, 8);
        assert_eq!(nus, vec![2, 2, 3, 4, 5, 6, 7, 8]);
        for l in 1..=6 {
            let d = order_bound_d(&sg, l, 30).unwrap();
            assert_eq!(d, *nus[l - 1..].iter().min().unwrap());
            assert!(d <= nu(&sg, l));
        }
        assert!(matches!(
            order_bound_d(&sg, 1, 2),
            Err(Error::HorizonTooSmall { .. })
        ));
    }

    #[test]
    fn dphi_hermitian() {
        let pts = hermitian_points();
        let sg = pts.curve().semigroup();
        for l in 1..=8 {
            let d = order_bound_d(sg, l, 20).unwrap();
            let dphi = order_bound_dphi_for_points(&pts, l, 20).unwrap().unwrap();
            assert!(dphi >= d);
        }
        assert_eq!(order_bound_dphi_for_points(&pts, 9, 20).unwrap(), None);
        assert!(matches!(
            order_bound_dphi_for_points(&pts, 1, 5),
            Err(Error::HorizonTooSmall { .. })
        ));
        let dims: Vec<usize> = (1..=12).map(|i| i.min(8)).collect();
        // strictly growing dimensions: same index set as d(l) up to the stabilization
        assert_eq!(
            order_bound_dphi(sg, &dims, 8, 3, 11).unwrap(),
            nu_sequence(sg, 7)[2..].iter().min().copied()
        );
    }

    #[test]
    fn syndrome_rank_is_weight() {
        let pts = hermitian_points();
        let f = pts.curve().field().clone();
        assert!(syndrome_matrix(&[0; 8], &pts, 8).unwrap().is_zero());
        let y = vec![1, 0, 2, 0, 0, 3, 0, 0];
        let s = syndrome_matrix(&y, &pts, 9).unwrap();
        assert_eq!(s, syndrome_matrix_factored(&y, &pts, 9).unwrap());
        assert_eq!(s, s.transpose());
        assert_eq!(s.rank(), 3);
        assert!(syndrome_matrix(&[1; 7], &pts, 8).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let y: Vec<u32> = (0..8).map(|_| rng.random_range(0..f.q())).collect();
            assert_eq!(syndrome_matrix(&y, &pts, 9).unwrap().rank(), weight(&y));
        }
    }

    #[test]
    fn staircase() {
        let pts = hermitian_points();
        let sg = pts.curve().semigroup();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for l in 1..8 {
            let Some(y) = random_layer_vector(&pts, l, &mut rng) else {
                continue;
            };
            let pairs = nu_pairs(sg, l);
            let s = syndrome_matrix(&y, &pts, l + 1).unwrap();
            assert!(staircase_holds(&s, &pairs), "l = {l}");
            assert!(s.rank() as u64 >= nu(sg, l));
        }
        // E_7 = E_8 on the Hermitian points
        assert_eq!(random_layer_vector(&pts, 7, &mut rng), None);
    }
}
