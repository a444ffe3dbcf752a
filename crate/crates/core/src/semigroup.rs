//! Numerical semigroups with finitely many gaps.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finitely generated submonoid of the nonnegative integers with finite
/// complement. Elements are enumerated `ρ_1 = 0 < ρ_2 < ...` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// Membership for `0..conductor`; everything from the conductor on is in.
    below_conductor: Vec<bool>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    /// Reachability by dynamic programming, extended until a run of
    /// `min(generators)` consecutive elements proves every later integer is
    /// an element too.
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if generators.contains(&0) {
            return Err(Error::NonPositiveGenerator);
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::InfiniteGaps(g));
        }
        let smallest = gens[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut x = 1usize;
        while run < smallest {
            let is_member = gens
                .iter()
                .any(|&a| a as usize <= x && member[x - a as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
            x += 1;
        }
        let conductor = member
            .iter()
            .rposition(|&m| !m)
            .map_or(0, |last_gap| last_gap + 1);
        member.truncate(conductor);
        let gaps = (0..conductor as u64)
            .filter(|&v| !member[v as usize])
            .collect();
        Ok(NumericalSemigroup {
            generators: gens,
            below_conductor: member,
            gaps,
            conductor: conductor as u64,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.conductor || self.below_conductor[x as usize]
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Largest gap, `None` when the semigroup is all of ℕ₀.
    pub fn frobenius(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn is_symmetric(&self) -> bool {
        self.conductor == 2 * self.genus()
    }

    /// The `l`-th smallest element, `nth(1) = 0`.
    ///
    /// Panics if `l == 0`.
    pub fn nth(&self, l: usize) -> u64 {
        assert!(l >= 1, "semigroup elements are indexed from 1");
        let l = l as u64;
        let g = self.genus();
        if l + g > self.conductor {
            return l + g - 1;
        }
        (0..self.conductor)
            .filter(|&x| self.contains(x))
            .nth(l as usize - 1)
            .expect("index below c - g + 1")
    }

    /// The index `l` with `nth(l) = value`, if `value` is an element.
    pub fn index_of(&self, value: u64) -> Option<usize> {
        if !self.contains(value) {
            return None;
        }
        Some((value + 1 - self.gaps_below(value)) as usize)
    }

    /// Gaps strictly below `x`, by direct count.
    pub fn gaps_below(&self, x: u64) -> u64 {
        self.gaps.partition_point(|&g| g < x) as u64
    }

    /// Number of gaps below `ρ_l`, via `ρ_l - l + 1`.
    pub fn gap_count_below(&self, l: usize) -> u64 {
        self.nth(l) + 1 - l as u64
    }

    /// Elements `<= bound`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    /// `#(Λ \ (s + Λ))`, counted element by element.
    pub fn shifted_diff_count(&self, s: u64) -> Result<u64> {
        if !self.contains(s) {
            return Err(Error::NotAnElement(s));
        }
        // Beyond s + c both sets contain every integer.
        Ok((0..s + self.conductor)
            .filter(|&x| self.contains(x) && !(x >= s && self.contains(x - s)))
            .count() as u64)
    }
}

/// `(frobenius, conductor, genus) = (ab - a - b, (a-1)(b-1), (a-1)(b-1)/2)`.
pub fn frobenius_two_gen(a: u64, b: u64) -> Result<(u64, u64, u64)> {
    if a < 2 || b < 2 {
        return Err(Error::NonPositiveGenerator);
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    let c = (a - 1) * (b - 1);
    Ok((a * b - a - b, c, c / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Membership by checking every combination of generator multiples.
    fn reachable(gens: &[u64], bound: u64) -> Vec<bool> {
        let mut r = vec![false; bound as usize + 1];
        r[0] = true;
        for x in 1..=bound {
            r[x as usize] = gens.iter().any(|&a| a <= x && r[(x - a) as usize]);
        }
        r
    }

    #[test]
    fn naturals() {
        let s = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!((s.genus(), s.conductor(), s.frobenius()), (0, 0, None));
        assert_eq!(s.nth(1), 0);
        assert_eq!(s.nth(7), 6);
        assert!(s.is_symmetric());
    }

    #[test]
    fn two_three() {
        let s = NumericalSemigroup::new(&[2, 3]).unwrap();
        let r = reachable(&[2, 3], 10);
        assert_eq!(
            r.iter()
                .enumerate()
                .filter(|(_, &m)| !m)
                .map(|(x, _)| x as u64)
                .collect::<Vec<_>>(),
            vec![1]
        );
        assert_eq!(s.gaps(), &[1]);
        assert_eq!((s.conductor(), s.genus()), (2, 1));
        assert_eq!(s.nth(1), 0);
        assert_eq!(s.nth(2), 2);
        assert_eq!(s.nth(4), 4);
        assert_eq!(s.gap_count_below(1), 0);
        assert_eq!(s.gap_count_below(2), 1);
        assert!(s.is_symmetric());
        assert_eq!(s.shifted_diff_count(0).unwrap(), 0);
        assert_eq!(s.shifted_diff_count(2).unwrap(), 2);
        assert_eq!(s.shifted_diff_count(1).unwrap_err(), Error::NotAnElement(1));
        assert_eq!(s.index_of(4), Some(4));
        assert_eq!(s.index_of(1), None);
    }

    #[test]
    fn three_four_five() {
        let s = NumericalSemigroup::new(&[3, 4, 5]).unwrap();
        let r = reachable(&[3, 4, 5], 20);
        let gaps: Vec<u64> = (0..=20).filter(|&x| !r[x as usize]).collect();
        assert_eq!(gaps, vec![1, 2]);
        assert_eq!(s.gaps(), gaps.as_slice());
        assert_eq!((s.conductor(), s.genus()), (3, 2));
        // c = 3 != 2g = 4
        assert!(!s.is_symmetric());
    }

    #[test]
    fn errors() {
        assert_eq!(
            NumericalSemigroup::new(&[]).unwrap_err(),
            Error::EmptyGenerators
        );
        assert_eq!(
            NumericalSemigroup::new(&[2, 4]).unwrap_err(),
            Error::InfiniteGaps(2)
        );
        assert_eq!(
            NumericalSemigroup::new(&[0, 1]).unwrap_err(),
            Error::NonPositiveGenerator
        );
        assert_eq!(
            frobenius_two_gen(2, 4).unwrap_err(),
            Error::NotCoprime(2, 4)
        );
        assert!(frobenius_two_gen(1, 4).is_err());
    }

    #[test]
    fn two_generator_formulas() {
        assert_eq!(frobenius_two_gen(2, 3).unwrap(), (1, 2, 1));
        assert_eq!(frobenius_two_gen(3, 5).unwrap(), (7, 8, 4));
        let r = reachable(&[3, 5], 40);
        let gaps: Vec<u64> = (0..=40).filter(|&x| !r[x as usize]).collect();
        assert_eq!(gaps, vec![1, 2, 4, 7]);
    }

    #[test]
    fn coprime_pair_not_among_smallest() {
        // 6, 10, 15: pairwise non-coprime, gcd 1 overall
        let s = NumericalSemigroup::new(&[6, 10, 15]).unwrap();
        let r = reachable(&[6, 10, 15], 200);
        let gaps: Vec<u64> = (0..=200).filter(|&x| !r[x as usize]).collect();
        assert_eq!(s.gaps(), gaps.as_slice());
        assert_eq!(s.frobenius(), Some(29));
    }
}
