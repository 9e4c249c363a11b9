//! Exhaustive checks over `S_m` for `m ≤ 9`, independent of the normalizer construction.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::bsgs::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::{named_group, next_permutation};
use crate::perm::Perm;
use crate::wreath::{
    block_image, fiber_embed, iterated_wreath, BlockImage, BlockPartition, WreathTower,
};

pub const MAX_ORACLE_DEGREE: usize = 9;

/// All permutations of `0..m` in lexicographic order of their image arrays.
pub struct SymIter {
    current: Option<Vec<usize>>,
    /// When set, stop once the first image changes.
    pinned_first: Option<usize>,
}

impl Iterator for SymIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.current.as_mut()?;
        let out = Perm::from_images(cur.clone()).expect("lexicographic successor is a permutation");
        let more = next_permutation(cur);
        if !more || self.pinned_first.is_some_and(|f| cur[0] != f) {
            self.current = None;
        }
        Some(out)
    }
}

fn check_oracle_degree(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ORACLE_DEGREE {
        return Err(Error::OracleDegree(m));
    }
    Ok(())
}

pub fn enumerate_sym(m: usize) -> Result<SymIter> {
    check_oracle_degree(m)?;
    Ok(SymIter {
        current: Some((0..m).collect()),
        pinned_first: None,
    })
}

/// The lexicographic range of permutations with `0 ↦ first`.
pub fn enumerate_sym_with_first(m: usize, first: usize) -> Result<SymIter> {
    check_oracle_degree(m)?;
    if first >= m {
        return Err(Error::ElementOutOfRange {
            index: first,
            order: m,
        });
    }
    let mut start = vec![first];
    start.extend((0..m).filter(|&x| x != first));
    Ok(SymIter {
        current: Some(start),
        pinned_first: Some(first),
    })
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub degree: usize,
    /// The normaliser, sorted lexicographically.
    pub elements: Vec<Perm>,
    pub chain: StabilizerChain,
    pub elapsed: Duration,
}

impl OracleResult {
    pub fn normalizer_order(&self) -> BigUint {
        BigUint::from(self.elements.len())
    }

    /// A small generating set: every element not already generated by its predecessors.
    pub fn generators(&self) -> Vec<Perm> {
        greedy_generators(&self.elements, self.degree)
    }

    /// `⟨M ∪ W⟩` (given as `chain`) and the oracle set coincide.
    pub fn matches_chain(&self, chain: &StabilizerChain) -> bool {
        chain.degree() == self.degree
            && chain.order() == self.normalizer_order()
            && self.elements.iter().all(|p| chain.contains_unchecked(p))
    }
}

fn greedy_generators(elements: &[Perm], degree: usize) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut chain = StabilizerChain::trivial(degree).expect("positive degree");
    for p in elements {
        if !chain.contains_unchecked(p) {
            gens.push(p.clone());
            chain = StabilizerChain::new(&gens).expect("same degree");
        }
    }
    gens
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn brute_force_normalizer(w_gens: &[Perm], m: usize) -> Result<OracleResult> {
    brute_force_normalizer_with_workers(w_gens, m, default_workers())
}

/// Every `a ∈ S_m` with `g^a ∈ W` and `g^(a⁻¹) ∈ W` for each generator `g`.
///
/// The search is split by the image of point 0; ranges go to `workers`
/// threads round-robin and are concatenated in order, so the output does not
/// depend on the worker count.
pub fn brute_force_normalizer_with_workers(
    w_gens: &[Perm],
    m: usize,
    workers: usize,
) -> Result<OracleResult> {
    check_oracle_degree(m)?;
    if let Some(bad) = w_gens.iter().find(|g| g.degree() != m) {
        return Err(Error::DegreeMismatch {
            left: m,
            right: bad.degree(),
        });
    }
    let start = Instant::now();
    let w_chain = if w_gens.is_empty() {
        StabilizerChain::trivial(m)?
    } else {
        StabilizerChain::new(w_gens)?
    };
    let normalizes = |a: &Perm| {
        let a_inv = a.inverse();
        w_gens.iter().all(|g| {
            w_chain.contains_unchecked(&g.conjugate_unchecked(a))
                && w_chain.contains_unchecked(&g.conjugate_unchecked(&a_inv))
        })
    };
    let scan = |first: usize| -> Vec<Perm> {
        enumerate_sym_with_first(m, first)
            .expect("checked degree")
            .filter(|a| normalizes(a))
            .collect()
    };

    let workers = workers.clamp(1, m);
    let mut ranges: Vec<(usize, Vec<Perm>)> = if workers == 1 {
        (0..m).map(|f| (f, scan(f))).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let scan = &scan;
                    s.spawn(move || {
                        (w..m)
                            .step_by(workers)
                            .map(|f| (f, scan(f)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("oracle worker panicked"))
                .collect()
        })
    };
    ranges.sort_by_key(|(f, _)| *f);
    let elements: Vec<Perm> = ranges.into_iter().flat_map(|(_, v)| v).collect();
    let gens = greedy_generators(&elements, m);
    let chain = if gens.is_empty() {
        StabilizerChain::trivial(m)?
    } else {
        StabilizerChain::new(&gens)?
    };
    Ok(OracleResult {
        degree: m,
        elements,
        chain,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    Holds,
    Fails { element: Perm, detail: String },
}

impl LemmaOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LemmaOutcome::Holds)
    }
}

pub fn verify_lemma_b(result: &OracleResult, tower: &WreathTower) -> Result<LemmaOutcome> {
    if result.degree != tower.degree() {
        return Err(Error::DegreeMismatch {
            left: result.degree,
            right: tower.degree(),
        });
    }
    verify_lemma_b_for(&result.elements, tower)
}

/// Conjugating any fiber generator `h_y` by any of `elements` must land in the
/// base group: every top-level fiber is fixed setwise and each restriction
/// lies in `W(G, n-1)`.
pub fn verify_lemma_b_for(elements: &[Perm], tower: &WreathTower) -> Result<LemmaOutcome> {
    let n = tower.levels();
    let part = tower.top_partition()?;
    let k_order = tower.group().order();
    let inner = tower.chain(n - 1);
    let fibers: Vec<(usize, Perm)> = tower
        .generators(n - 1)
        .iter()
        .flat_map(|h| (0..k_order).map(move |y| (y, fiber_embed(h, y, k_order).expect("y in K"))))
        .collect();
    for alpha in elements {
        if alpha.degree() != tower.degree() {
            return Err(Error::DegreeMismatch {
                left: alpha.degree(),
                right: tower.degree(),
            });
        }
        for (y, h_y) in &fibers {
            let conj = h_y.conjugate_unchecked(alpha);
            let in_base = match block_image(&conj, &part)? {
                BlockImage::Stable(p) if p.is_identity() => (0..part.num_blocks()).all(|j| {
                    part.restrict(&conj, j)
                        .is_some_and(|r| inner.contains_unchecked(&r))
                }),
                _ => false,
            };
            if !in_base {
                return Ok(LemmaOutcome::Fails {
                    element: alpha.clone(),
                    detail: format!("y={y} conjugate={conj}"),
                });
            }
        }
    }
    Ok(LemmaOutcome::Holds)
}

/// Every normaliser element permutes the blocks of `part`.
pub fn verify_lemma_c(result: &OracleResult, part: &BlockPartition) -> Result<LemmaOutcome> {
    for alpha in &result.elements {
        if let BlockImage::Broken { point } = block_image(alpha, part)? {
            return Ok(LemmaOutcome::Fails {
                element: alpha.clone(),
                detail: format!("point={point}"),
            });
        }
    }
    Ok(LemmaOutcome::Holds)
}

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `p`-part of `m!`: `p^v` with `v = Σ_{i≥1} ⌊m / p^i⌋`.
pub fn p_part_of_factorial(p: usize, m: usize) -> BigUint {
    let mut v = 0u32;
    let mut q = p;
    while q <= m {
        v += (m / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    num_traits::Pow::pow(BigUint::from(p), v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowReport {
    pub tower_order: BigUint,
    pub p_part: BigUint,
}

impl SylowReport {
    pub fn holds(&self) -> bool {
        self.tower_order == self.p_part
    }
}

pub fn sylow_report(p: usize, levels: usize) -> Result<SylowReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = named_group("cyclic", Some(p))?;
    let tower = iterated_wreath(&group, levels)?;
    Ok(SylowReport {
        tower_order: tower.top_chain().order(),
        p_part: p_part_of_factorial(p, tower.degree()),
    })
}

/// `|W(C_p, n)|` equals the `p`-part of `(p^n)!`.
pub fn sylow_check(p: usize, levels: usize) -> Result<bool> {
    Ok(sylow_report(p, levels)?.holds())
}
