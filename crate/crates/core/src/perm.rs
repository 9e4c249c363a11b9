//! Permutations of `{0, .., m-1}` under the right action.
//!
//! `i * p` is written `p.apply(i)`, and products are read left to right:
//! `p.compose(q)` applies `p` first and then `q`. Conjugation follows the
//! exponent convention `p^a = a⁻¹ p a`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Result<Perm> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        Ok(Perm {
            images: (0..degree).collect(),
        })
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        if images.is_empty() {
            return Err(Error::InvalidDegree(0));
        }
        let mut seen = vec![false; images.len()];
        for (i, &x) in images.iter().enumerate() {
            if x >= images.len() {
                return Err(Error::NotAPermutation(format!(
                    "image {x} of point {i} is out of range"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("point {x} is hit twice")));
            }
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = Perm::identity(degree)?.images;
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (j, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} outside degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                images[x] = cycle[(j + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation against an explicit degree.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycle_list(text)?;
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    fn check_degree(&self, other: &Perm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    /// Unchecked composition for internal hot paths where degrees are known to agree.
    #[inline]
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    #[inline]
    pub(crate) fn then_in_place(&mut self, other: &Perm) {
        debug_assert_eq!(self.degree(), other.degree());
        for x in &mut self.images {
            *x = other.images[*x];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// `a⁻¹ · self · a`.
    pub fn conjugate(&self, a: &Perm) -> Result<Perm> {
        self.check_degree(a)?;
        Ok(self.conjugate_unchecked(a))
    }

    /// The conjugate sends `i·a` to `(i·self)·a`, so no inverse is materialised.
    #[inline]
    pub(crate) fn conjugate_unchecked(&self, a: &Perm) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[a.images[i]] = a.images[x];
        }
        Perm { images }
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.inverse().then(&other.inverse()).then(self).then(other))
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.degree() == other.degree()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(&a, &b)| other.images[a] == self.images[b])
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of all cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let fixed = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .count();
        lengths.extend(std::iter::repeat_n(1, fixed));
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> BigUint {
        self.cycles().iter().fold(BigUint::from(1u32), |acc, c| {
            acc.lcm(&BigUint::from(c.len()))
        })
    }

    /// Power by repeated squaring; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Perm {
        let mut base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm {
            images: (0..self.degree()).collect(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` at `{rest}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse("unterminated cycle".into()))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::Parse("nested `(`".into()));
        }
        let cycle = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (j, x) in cycle.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation; the degree is the largest mentioned point plus one,
/// so `"()"` is the identity on one point. Use [`Perm::parse_cycles`] when the
/// degree is known.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let cycles = parse_cycle_list(s)?;
        let degree = cycles.iter().flatten().max().map_or(1, |&m| m + 1);
        Perm::from_cycles(degree, &cycles)
    }
}
