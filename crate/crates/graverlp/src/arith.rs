//! Exact integer and rational scalar/vector helpers shared across the crate.
//!
//! Everything is arbitrary precision; no floating point exists anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn int_to_rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn int_vec(values: &[i64]) -> Vec<Int> {
    values.iter().map(|&v| Int::from(v)).collect()
}

pub fn rat_vec(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| rat(v)).collect()
}

pub fn ints_to_rats(values: &[Int]) -> Vec<Rat> {
    values.iter().map(int_to_rat).collect()
}

/// Exact rational vector to integers; `None` if any entry has denominator > 1.
pub fn rats_to_ints(values: &[Rat]) -> Option<Vec<Int>> {
    values
        .iter()
        .map(|v| v.is_integer().then(|| v.to_integer()))
        .collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], x: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), x.len());
    a.iter().zip(x).map(|(c, v)| int_to_rat(c) * v).sum()
}

pub fn one_norm(v: &[Int]) -> Int {
    v.iter().map(|x| x.abs()).sum()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_zero_rat_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn negate(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// Nonnegative gcd of all entries; 0 for the zero vector.
pub fn gcd_vec(v: &[Int]) -> Int {
    use num_integer::Integer;
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Sign-normalize so the first nonzero entry is positive; zero vector unchanged.
pub fn canonical_sign(v: &[Int]) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => negate(v),
        _ => v.to_vec(),
    }
}

/// Smallest integer k with 2^k >= x; `None` for x <= 0.
pub fn ceil_log2(x: &Rat) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let one = Rat::one();
    let two = rat(2);
    let mut k: i64 = 0;
    let mut pow = Rat::one();
    if *x <= one {
        // walk down until 2^(k-1) < x
        loop {
            let lower = &pow / &two;
            if lower < *x {
                return Some(k);
            }
            pow = lower;
            k -= 1;
        }
    }
    loop {
        if pow >= *x {
            return Some(k);
        }
        pow *= &two;
        k += 1;
    }
}

pub fn lex_cmp_int(a: &[Int], b: &[Int]) -> Ordering {
    a.cmp(b)
}

/// Lexicographic iterator over the k-subsets of 0..n.
pub struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    let state = if k <= n { Some((0..k).collect()) } else { None };
    Combinations { n, k, state }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.state.clone()?;
        // advance
        let mut idx = self.k;
        loop {
            if idx == 0 {
                self.state = None;
                break;
            }
            idx -= 1;
            let limit = self.n - (self.k - idx);
            if current[idx] < limit {
                let mut next = current.clone();
                next[idx] += 1;
                for j in idx + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(current)
    }
}
