//! Finite fields GF(p^r) in polynomial representation.
//!
//! An element is a residue class of polynomials over GF(p) modulo a monic
//! irreducible `modulus` of degree `r`. Elements are addressed by their
//! integer encoding `c0 + c1 p + ... + c_{r-1} p^(r-1)` of the little-endian
//! coefficient vector; this is also the encoding used in every text format
//! of the crate. Arithmetic is exact polynomial arithmetic, cached in
//! addition and multiplication tables at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// A finite field GF(p^r). Cheap to clone; clones share their tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p), little-endian coefficient vectors, no trailing zeros.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap() as u64;
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c as u64 % p as u64;
            a[shift + i] = ((a[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        a = trim(a);
    }
    a
}

/// Monic polynomials of exact degree `d` over GF(p), in increasing encoding
/// of their lower coefficients.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut v| {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            c.push((v % p as u64) as u32);
            v /= p as u64;
        }
        c.push(1);
        c
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() as u32 - 1;
    for d in 1..=deg / 2 {
        if monic_polys(p, d).any(|f| poly_rem_monic(&poly, &f, p).is_empty()) {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `r` over GF(p) whose lower coefficients
/// have the smallest integer encoding (x for r = 1, x^2+x+1 over GF(2), ...).
pub fn canonical_modulus(p: u32, r: u32) -> Vec<u32> {
    monic_polys(p, r)
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^r). Without `modulus` the canonical irreducible is chosen.
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: modulus.map(<[u32]>::to_vec).unwrap_or_default(),
            });
        }
        let q = (p as u64).checked_pow(r).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge((p as u64).saturating_pow(r))),
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::DegreeMismatch {
                        expected: r,
                        got: m.to_vec(),
                    });
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => canonical_modulus(p, r),
        };
        Ok(FieldSpec(Arc::new(Tables::build(p, r, q, modulus))))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, little-endian, ending in the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Coefficient vector (length r) of an encoded element.
    pub fn coeffs(&self, mut a: u32) -> Vec<u32> {
        (0..self.0.r)
            .map(|_| {
                let c = a % self.0.p;
                a /= self.0.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.r as usize {
            return Err(Error::LengthMismatch {
                expected: self.0.r as usize,
                got: coeffs.len(),
            });
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::NotAnElementOfField {
                    value: c as u64,
                    q: self.0.p,
                });
            }
            v = v * self.0.p as u64 + c as u64;
        }
        Ok(v as u32)
    }

    pub fn check(&self, value: u64) -> Result<u32> {
        if value < self.0.q as u64 {
            Ok(value as u32)
        } else {
            Err(Error::NotAnElementOfField { value, q: self.0.q })
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        Ok(FieldElement {
            spec: self.clone(),
            value: self.check(value)?,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            value: 1,
        }
    }

    /// All q elements, in increasing encoding (zero first).
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.0.q)
            .map(|value| FieldElement {
                spec: self.clone(),
                value,
            })
            .collect()
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }
}

impl Tables {
    fn build(p: u32, r: u32, q: u32, modulus: Vec<u32>) -> Self {
        let polys: Vec<Vec<u32>> = (0..q)
            .map(|mut v| {
                let c: Vec<u32> = (0..r)
                    .map(|_| {
                        let c = v % p;
                        v /= p;
                        c
                    })
                    .collect();
                trim(c)
            })
            .collect();
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let ca = &polys[a];
                let cb = &polys[b];
                let sum: Vec<u32> = (0..ca.len().max(cb.len()))
                    .map(|i| {
                        (ca.get(i).copied().unwrap_or(0) + cb.get(i).copied().unwrap_or(0)) % p
                    })
                    .collect();
                add[a * qs + b] = encode(&trim(sum));
                let prod = poly_rem_monic(&poly_mul(ca, cb, p), &modulus, p);
                mul[a * qs + b] = encode(&prod);
            }
        }
        let neg = (0..qs)
            .map(|a| (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap())
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * qs + b as usize] == 1).unwrap()
                }
            })
            .collect();
        Tables {
            p,
            r,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.r, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

/// Binary field operations for [`ff_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An element of a specific field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Integer encoding of the coefficient vector.
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn binary(
        &self,
        other: &FieldElement,
        f: impl Fn(&FieldSpec, u32, u32) -> u32,
    ) -> Result<FieldElement> {
        if !self.spec.same_field(&other.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(FieldElement {
            value: f(&self.spec, self.value, other.value),
            spec: self.spec.clone(),
        })
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, FieldSpec::add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, FieldSpec::sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, FieldSpec::mul)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            value: self.spec.neg(self.value),
            spec: self.spec.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            value: self.spec.inv(self.value)?,
            spec: self.spec.clone(),
        })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            value: self.spec.pow(self.value, e),
            spec: self.spec.clone(),
        }
    }
}

pub fn ff_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

pub fn ff_inv(a: &FieldElement) -> Result<FieldElement> {
    a.inv()
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.value, self.coeffs())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, r: u32) -> FieldSpec {
        FieldSpec::new(p, r, None).unwrap()
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = gf(2, 1);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn gf4_with_explicit_modulus() {
        // x^2+x+1 has no root in GF(2): 0 -> 1, 1 -> 1.
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f, gf(2, 2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        // x^2+1 = (x+1)^2 over GF(2)
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(vec![1, 0, 1])
        );
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 1, 2])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            FieldSpec::new(2, 11, None),
            Err(Error::FieldTooLarge(2048))
        ));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(canonical_modulus(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn small_arithmetic() {
        let f2 = gf(2, 1);
        assert_eq!(f2.add(1, 1), 0);
        let f5 = gf(5, 1);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.inv(2).unwrap(), 3);
        // alpha = x is encoded as 2, alpha + 1 as 3
        let f4 = gf(2, 2);
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.inv(2).unwrap(), 3);
        assert_eq!(f2.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn element_api_rejects_cross_field() {
        let a = gf(5, 1).element(2).unwrap();
        let b = gf(7, 1).element(2).unwrap();
        assert_eq!(
            ff_arith(&a, &b, ArithOp::Add).unwrap_err(),
            Error::SpecMismatch
        );
        let c = gf(5, 1).element(4).unwrap();
        assert_eq!(ff_arith(&a, &c, ArithOp::Mul).unwrap().value(), 3);
        assert_eq!(ff_arith(&a, &c, ArithOp::Sub).unwrap().value(), 3);
        assert_eq!(ff_inv(&gf(2, 1).zero()).unwrap_err(), Error::DivisionByZero);
        assert!(gf(5, 1).element(5).is_err());
    }

    #[test]
    fn enumerate_gf9_frobenius() {
        let f = gf(3, 2);
        let elems = f.enumerate();
        assert_eq!(elems.len(), 9);
        for e in &elems {
            // x^9 by repeated multiplication, not through pow
            let mut acc = f.one();
            for _ in 0..9 {
                acc = acc.mul(e).unwrap();
            }
            assert_eq!(&acc, e);
        }
        assert_eq!(
            gf(2, 1)
                .enumerate()
                .iter()
                .map(|e| e.value())
                .collect::<Vec<_>>(),
            vec![0, 1]
        );
    }

    #[test]
    fn coefficient_round_trip() {
        let f = gf(3, 3);
        for v in 0..f.q() {
            assert_eq!(f.from_coeffs(&f.coeffs(v)).unwrap(), v);
        }
    }
}
