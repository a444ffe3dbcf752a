//! Linear [n, k, d] codes over GF(q).
//!
//! Vectors and matrix entries are integer encodings of field elements (see
//! [`crate::gf`]); every matrix carries the field its entries live in.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Default cap on brute-force enumerations (messages or cosets).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of encoded entries. All rows must have
    /// `cols` entries, each below q.
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for &v in row {
                field.check(v as u64)?;
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !self.field.same_field(&other.field) {
            return Err(Error::SpecMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `M · xᵗ`.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// `x · M`, i.e. the combination of rows with coefficients `x`.
    pub fn vec_mul(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: x.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                axpy(f, &mut out, c, self.row(i));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    let start = i * m.cols;
                    axpy(
                        f,
                        &mut m.data[start..start + m.cols],
                        f.neg(factor),
                        &pivot_row,
                    );
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let (m, pivots) = self.rref();
        m.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
    }

    /// Basis (as rows) of `{x : M xᵗ = 0}`.
    pub fn null_space(&self) -> Matrix {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(m.get(pr, fc)));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(i, j, self.get(i, c));
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Plain-text form: one row per line, space-separated integer encodings.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let _ = writeln!(s, "{}", self.row(i).iter().join(" "));
        }
        s
    }

    /// Inverse of [`Matrix::to_text`]. Blank lines and `#` comments are skipped.
    pub fn from_text(field: &FieldSpec, text: &str) -> Result<Matrix> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| Error::MatrixFormat(format!("line {}: {t:?}: {e}", no + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(field, cols, &rows)
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} {}x{}\n{}",
            self.field,
            self.rows,
            self.cols,
            self.to_text()
        )
    }
}

/// `y += c·x`.
#[inline]
pub(crate) fn axpy(f: &FieldSpec, y: &mut [u32], c: u32, x: &[u32]) {
    for (a, &b) in y.iter_mut().zip(x) {
        *a = f.add(*a, f.mul(c, b));
    }
}

pub fn weight(x: &[u32]) -> usize {
    x.iter().filter(|&&v| v != 0).count()
}

/// Number of coordinates in which `x` and `y` differ.
pub fn hamming<T: PartialEq>(x: &[T], y: &[T]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

fn check_budget(q: u32, exp: usize, budget: u64) -> Result<u128> {
    let needed = (q as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Minimum weight of a nonzero vector in the row span of `gen`, by
/// enumerating all `q^rows` coefficient vectors. `None` when the span is zero.
pub fn min_weight_of_span(gen: &Matrix, budget: u64) -> Result<Option<usize>> {
    let f = gen.field();
    let q = f.q() as usize;
    let k = gen.rows();
    let n = gen.cols();
    check_budget(f.q(), k, budget)?;
    if k == 0 {
        return Ok(None);
    }
    // multiples[i][e] = e · row_i
    let multiples: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|i| {
            (0..q as u32)
                .map(|e| gen.row(i).iter().map(|&g| f.mul(e, g)).collect())
                .collect()
        })
        .collect();
    // The leading `split` digits are fixed per parallel chunk; the rest run
    // through an odometer that updates the codeword one digit at a time.
    let mut split = 0;
    while split < k && q.pow(split as u32) < 256 {
        split += 1;
    }
    let inner = k - split;
    let chunks = q.pow(split as u32);
    let best = (0..chunks)
        .into_par_iter()
        .map(|mut prefix| {
            let mut cw = vec![0u32; n];
            for i in 0..split {
                let d = prefix % q;
                prefix /= q;
                for (a, &b) in cw.iter_mut().zip(&multiples[inner + i][d]) {
                    *a = f.add(*a, b);
                }
            }
            let mut best = usize::MAX;
            let mut digits = vec![0usize; inner];
            loop {
                let w = weight(&cw);
                if w > 0 && w < best {
                    best = w;
                }
                let mut i = 0;
                loop {
                    if i == inner {
                        return best;
                    }
                    let old = digits[i];
                    let new = (old + 1) % q;
                    digits[i] = new;
                    for ((a, &o), &nw) in cw
                        .iter_mut()
                        .zip(&multiples[i][old])
                        .zip(&multiples[i][new])
                    {
                        *a = f.add(f.sub(*a, o), nw);
                    }
                    if new != 0 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .min()
        .unwrap_or(usize::MAX);
    Ok((best != usize::MAX).then_some(best))
}

/// Row-echelon basis that grows one vector at a time.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FieldSpec,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBasis {
    pub fn new(field: &FieldSpec) -> Self {
        EchelonBasis {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection on the current span (zero iff `v` is in it).
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                axpy(f, &mut v, f.neg(c), row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field.clone();
        let mut v = self.residual(v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero");
        v.iter_mut().for_each(|c| *c = f.mul(*c, inv));
        self.rows.push((pivot, v));
        true
    }
}

/// A linear code given by a full-rank generator matrix, `1 <= k < n`.
pub struct LinearCode {
    generator: Matrix,
    standard: Matrix,
    permutation: Vec<usize>,
    parity: Matrix,
    distance: OnceLock<usize>,
    cosets: OnceLock<CosetTable>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            generator: self.generator.clone(),
            standard: self.standard.clone(),
            permutation: self.permutation.clone(),
            parity: self.parity.clone(),
            distance: self.distance.clone(),
            cosets: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] code over {:?}",
            self.n(),
            self.k(),
            self.field()
        )
    }
}

struct CosetTable {
    leaders: HashMap<u64, Vec<u32>>,
}

impl LinearCode {
    /// Code spanned by the rows of `generator`, which must be linearly independent.
    pub fn from_generator(generator: Matrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || k >= n {
            return Err(Error::TrivialCode { k, n });
        }
        let (reduced, pivots) = generator.rref();
        if pivots.len() < k {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                rows: k,
            });
        }
        let f = generator.field().clone();
        let mut permutation = pivots.clone();
        permutation.extend((0..n).filter(|c| !pivots.contains(c)));
        let standard = reduced.select_columns(&permutation);
        // H' = [-Pᵗ | I] in permuted coordinates, then columns moved back.
        let r = n - k;
        let mut parity = Matrix::zeros(&f, r, n);
        for i in 0..r {
            for (j, &col) in permutation[..k].iter().enumerate() {
                parity.set(i, col, f.neg(standard.get(j, k + i)));
            }
            parity.set(i, permutation[k + i], 1);
        }
        Ok(LinearCode {
            generator,
            standard,
            permutation,
            parity,
            distance: OnceLock::new(),
            cosets: OnceLock::new(),
        })
    }

    /// Code spanned by the rows of `rows`, which may be dependent.
    pub fn from_spanning_rows(rows: &Matrix) -> Result<Self> {
        Self::from_generator(rows.row_space_basis())
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Standard form `[I_k | P]` and the column permutation producing it:
    /// column `j` of the standard form is column `perm[j]` of the row-reduced generator.
    pub fn standard_form(&self) -> (&Matrix, &[usize]) {
        (&self.standard, &self.permutation)
    }

    /// Parity-check matrix in the original coordinate order, so `H·Gᵗ = 0`.
    pub fn parity_check(&self) -> &Matrix {
        &self.parity
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(self.parity.clone())
            .expect("parity-check rows are independent and 0 < n-k < n")
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.generator.vec_mul(message)
    }

    pub fn syndrome(&self, x: &[u32]) -> Result<Vec<u32>> {
        self.parity.mul_vec(x)
    }

    pub fn contains(&self, x: &[u32]) -> Result<bool> {
        Ok(self.syndrome(x)?.iter().all(|&s| s == 0))
    }

    /// Same row space as `other` (and same field and length).
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field().same_field(other.field())
            && self.n() == other.n()
            && self.k() == other.k()
            && (0..other.k()).all(|i| self.contains(other.generator.row(i)).unwrap_or(false))
    }

    /// Exact minimum distance by enumerating all `q^k` messages.
    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let d = min_weight_of_span(&self.generator, budget)?.expect("generator has full rank");
        Ok(*self.distance.get_or_init(|| d))
    }

    fn coset_table(&self, budget: u64) -> Result<&CosetTable> {
        let total = check_budget(self.field().q(), self.n() - self.k(), budget)? as usize;
        if let Some(t) = self.cosets.get() {
            return Ok(t);
        }
        Ok(self.cosets.get_or_init(|| self.build_cosets(total)))
    }

    fn syndrome_key(&self, s: &[u32]) -> u64 {
        let q = self.field().q() as u64;
        s.iter().rev().fold(0u64, |acc, &v| acc * q + v as u64)
    }

    /// Leaders by increasing weight; among equal weights the lexicographically
    /// smallest coordinate vector wins.
    fn build_cosets(&self, total: usize) -> CosetTable {
        let f = self.field().clone();
        let n = self.n();
        let q = f.q();
        let columns: Vec<Vec<u32>> = (0..n).map(|j| self.parity.column(j)).collect();
        let mut leaders: HashMap<u64, Vec<u32>> = HashMap::new();
        leaders.insert(0, vec![0; n]);
        for w in 1..=n {
            if leaders.len() >= total {
                break;
            }
            let mut level: HashMap<u64, Vec<u32>> = HashMap::new();
            for support in (0..n).combinations(w) {
                let mut values = vec![1u32; w];
                loop {
                    let mut e = vec![0u32; n];
                    let mut s = vec![0u32; self.parity.rows()];
                    for (&pos, &v) in support.iter().zip(&values) {
                        e[pos] = v;
                        axpy(&f, &mut s, v, &columns[pos]);
                    }
                    let key = self.syndrome_key(&s);
                    if !leaders.contains_key(&key) {
                        match level.get(&key) {
                            Some(cur) if *cur <= e => {}
                            _ => {
                                level.insert(key, e);
                            }
                        }
                    }
                    // odometer over nonzero values 1..q
                    let mut i = 0;
                    while i < w {
                        values[i] += 1;
                        if values[i] < q {
                            break;
                        }
                        values[i] = 1;
                        i += 1;
                    }
                    if i == w {
                        break;
                    }
                }
            }
            leaders.extend(level);
        }
        CosetTable { leaders }
    }

    /// Coset leader of the syndrome of `x`.
    pub fn coset_leader(&self, x: &[u32], budget: u64) -> Result<Vec<u32>> {
        let s = self.syndrome(x)?;
        let table = self.coset_table(budget)?;
        Ok(table.leaders[&self.syndrome_key(&s)].clone())
    }

    /// `x` minus the leader of its coset.
    pub fn syndrome_decode(&self, x: &[u32], budget: u64) -> Result<Vec<u32>> {
        let leader = self.coset_leader(x, budget)?;
        let f = self.field();
        Ok(x.iter().zip(&leader).map(|(&a, &b)| f.sub(a, b)).collect())
    }

    /// Sphere-packing equality `Σ_{i<=e} C(n,i)(q-1)^i · q^k = q^n` for `d = 2e+1`.
    pub fn is_perfect(&self, d: usize) -> Result<bool> {
        is_perfect(self.n(), self.k(), self.field().q(), d)
    }
}

pub fn is_perfect(n: usize, k: usize, q: u32, d: usize) -> Result<bool> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDistance(d));
    }
    let e = (d - 1) / 2;
    let q = BigUint::from(q);
    let mut ball = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    for i in 0..=e.min(n) {
        if i > 0 {
            binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        }
        ball += &binom * (&q - 1u32).pow(i as u32);
    }
    Ok(ball * q.pow(k as u32) == q.pow(n as u32))
}
