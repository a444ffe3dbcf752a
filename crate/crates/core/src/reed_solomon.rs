//! Full-length Reed-Solomon codes: polynomials of degree < k evaluated at
//! every element of GF(q), in the field's enumeration order.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linear::{min_weight_of_span, LinearCode, Matrix};

#[derive(Debug, Clone)]
pub struct RsCode {
    field: FieldSpec,
    k: usize,
    points: Vec<u32>,
    generator: Matrix,
}

impl RsCode {
    /// `[q, k]` code with generator row `i` the evaluations of `x^i`.
    pub fn new(field: &FieldSpec, k: usize) -> Result<Self> {
        let q = field.q();
        if k == 0 || k > q as usize {
            return Err(Error::DimensionOutOfRange { k, q });
        }
        let points: Vec<u32> = (0..q).collect();
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|i| points.iter().map(|&a| field.pow(a, i as u64)).collect())
            .collect();
        let generator = Matrix::from_rows(field, q as usize, &rows)?;
        Ok(RsCode {
            field: field.clone(),
            k,
            points,
            generator,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Singleton bound `n - k + 1`, attained by these codes.
    pub fn designed_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// The code as a [`LinearCode`]; fails with `TrivialCode` when `k = q`.
    pub fn linear_code(&self) -> Result<LinearCode> {
        LinearCode::from_generator(self.generator.clone())
    }

    /// Coordinate `i` is `Σ_j m_j α_i^j` (Horner).
    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .points
            .iter()
            .map(|&a| {
                message
                    .iter()
                    .rev()
                    .fold(0, |acc, &m| f.add(f.mul(acc, a), m))
            })
            .collect())
    }

    /// Brute-forced minimum distance; valid for every `1 <= k <= q`.
    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize> {
        Ok(min_weight_of_span(&self.generator, budget)?
            .expect("constants evaluate to nonzero words"))
    }
}
