//! Brute-force references for small instances.
//!
//! Nothing here is clever: candidates are enumerated exhaustively and tested
//! against the prefix-table definition. When an instance is too large for the
//! configured [`EnumerationBudget`] the oracle returns
//! [`Error::BudgetExceeded`] instead of guessing.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::par;
use crate::prefix_table::FeasibleArray;
use crate::string::{compare_letters, IndeterminateString, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_n: usize,
    pub max_sigma: usize,
    /// Cap on the total number of candidate strings examined.
    pub max_candidates: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_n: 5,
            max_sigma: 5,
            max_candidates: 50_000_000,
        }
    }
}

/// All feasible arrays of length `n`, in lexicographic order.
pub struct FeasibleArrays {
    n: usize,
    next: Option<Vec<usize>>,
}

/// Every feasible array of length `n` exactly once; `n!` of them for `n >= 1`.
pub fn enumerate_feasible(n: usize) -> FeasibleArrays {
    let first = if n == 0 {
        Vec::new()
    } else {
        let mut v = vec![0; n];
        v[0] = n;
        v
    };
    FeasibleArrays {
        n,
        next: Some(first),
    }
}

impl Iterator for FeasibleArrays {
    type Item = FeasibleArray;

    fn next(&mut self) -> Option<FeasibleArray> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer over positions 2..n, last position fastest.
        let mut i = self.n;
        while i >= 2 {
            if succ[i - 1] < self.n - i + 1 {
                succ[i - 1] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i - 1] = 0;
            i -= 1;
        }
        Some(FeasibleArray::from_vec_unchecked(current))
    }
}

/// All feasible arrays with `1 <= n <= max_n`.
pub fn all_feasible_up_to(max_n: usize) -> Vec<FeasibleArray> {
    (1..=max_n).flat_map(enumerate_feasible).collect()
}

/// Prefix table check on bitmask letters, stopping at the first mismatch.
fn has_table(masks: &[u32], y: &[usize]) -> bool {
    let n = masks.len();
    (1..n).all(|i| {
        let mut j = 0;
        while i + j < n && masks[j] & masks[i + j] != 0 {
            j += 1;
        }
        j == y[i]
    })
}

fn mask_letter(mask: u32) -> Letter {
    let ranks: Vec<u32> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect();
    Letter::from_ranks(&ranks).expect("nonempty mask")
}

/// Mixed-radix counter over `n` digits in `0..base`.
fn decode(mut index: u64, base: u64, digits: &mut [u64]) {
    for d in digits.iter_mut().rev() {
        *d = index % base;
        index /= base;
    }
}

fn increment(base: u64, digits: &mut [u64]) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}

const CHUNK: u64 = 1 << 14;

/// Result of an exhaustive search: the least matching string and the
/// smallest alphabet any matching string can use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer {
    pub string: IndeterminateString,
    pub alphabet_size: usize,
}

/// Smallest alphabet size `σ` for which some string with letters drawn from
/// the nonempty subsets of `{1..σ}` has prefix table `y`, together with the
/// least such string in letter/string order.
///
/// Every string on `σ` symbols is a relabeling of one over `{1..σ}`, and all
/// relabelings are enumerated, so the first `σ` with a match is minimum.
pub fn brute_force_lex_least(
    y: &FeasibleArray,
    budget: &EnumerationBudget,
) -> Result<OracleAnswer> {
    let n = y.len();
    if n == 0 {
        return Ok(OracleAnswer {
            string: IndeterminateString::empty(),
            alphabet_size: 0,
        });
    }
    if n > budget.max_n {
        return Err(Error::BudgetExceeded(format!(
            "n = {n} > max_n = {}",
            budget.max_n
        )));
    }
    let table = y.as_slice();
    let mut spent: u64 = 0;
    for sigma in 1..=budget.max_sigma.min(31) {
        let base = (1u64 << sigma) - 1;
        let total = base
            .checked_pow(n as u32)
            .filter(|t| spent + t <= budget.max_candidates)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "{}^{n} candidates at sigma = {sigma} exceed max_candidates = {}",
                    base, budget.max_candidates
                ))
            })?;
        spent += total;

        // Position of each mask in letter order, so keys compare like strings.
        let mut masks: Vec<u32> = (1..=base as u32).collect();
        masks.sort_by(|&a, &b| compare_letters(&mask_letter(a), &mask_letter(b)));
        let mut order = vec![0u32; base as usize + 1];
        for (pos, &m) in masks.iter().enumerate() {
            order[m as usize] = pos as u32;
        }

        let best_per_chunk = par::map(&par::chunks(total, CHUNK), |range| {
            let mut digits = vec![0u64; n];
            decode(range.start, base, &mut digits);
            let mut cand = vec![0u32; n];
            let mut best: Option<Vec<u32>> = None;
            for _ in range.clone() {
                for (c, &d) in cand.iter_mut().zip(&digits) {
                    *c = d as u32 + 1;
                }
                if has_table(&cand, table) {
                    let key: Vec<u32> = cand.iter().map(|&m| order[m as usize]).collect();
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
                increment(base, &mut digits);
            }
            best
        });
        let best = best_per_chunk.into_iter().flatten().min();
        if let Some(key) = best {
            let string: IndeterminateString = key
                .iter()
                .map(|&k| mask_letter(masks[k as usize]))
                .collect();
            return Ok(OracleAnswer {
                string,
                alphabet_size: sigma,
            });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no string found with at most {} symbols",
        budget.max_sigma
    )))
}

/// Whether some regular string over `{1..n}` has prefix table `y`. A regular
/// witness never needs more than `n` distinct symbols.
pub fn brute_force_is_regular(y: &FeasibleArray, budget: &EnumerationBudget) -> Result<bool> {
    let n = y.len();
    if n == 0 {
        return Ok(true);
    }
    if n > budget.max_n {
        return Err(Error::BudgetExceeded(format!(
            "n = {n} > max_n = {}",
            budget.max_n
        )));
    }
    let base = n as u64;
    let total = base
        .checked_pow(n as u32)
        .filter(|&t| t <= budget.max_candidates)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!("{n}^{n} candidates exceed max_candidates"))
        })?;
    let table = y.as_slice();
    let found = par::map(&par::chunks(total, CHUNK), |range| {
        let mut digits = vec![0u64; n];
        decode(range.start, base, &mut digits);
        let mut cand = vec![0u32; n];
        for _ in range.clone() {
            for (c, &d) in cand.iter_mut().zip(&digits) {
                *c = 1 << d;
            }
            if has_table(&cand, table) {
                return true;
            }
            increment(base, &mut digits);
        }
        false
    });
    Ok(found.into_iter().any(|b| b))
}

/// Compares an inferred string against the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCheck {
    pub oracle: OracleAnswer,
    pub same_string: bool,
    pub same_alphabet: bool,
    /// Order of the checked string relative to the oracle's.
    pub order: Ordering,
}

impl MinimalityCheck {
    pub fn agrees(&self) -> bool {
        self.same_string && self.same_alphabet
    }
}

pub fn check_minimality(
    x: &IndeterminateString,
    y: &FeasibleArray,
    budget: &EnumerationBudget,
) -> Result<MinimalityCheck> {
    let oracle = brute_force_lex_least(y, budget)?;
    Ok(MinimalityCheck {
        same_string: *x == oracle.string,
        same_alphabet: x.alphabet_size() == oracle.alphabet_size,
        order: x.cmp(&oracle.string),
        oracle,
    })
}
