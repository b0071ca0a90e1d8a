//! Feasible arrays and prefix tables of indeterminate strings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, FeasibleViolation, Result};
use crate::string::{letters_match, IndeterminateString};

/// Integer array `y[1..n]` with `y[1] = n` and `0 <= y[i] <= n-i+1`.
///
/// Every prefix table is a feasible array and every feasible array is the
/// prefix table of some indeterminate string.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FeasibleArray {
    values: Vec<usize>,
}

impl FeasibleArray {
    /// Wraps values already known to be feasible.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(check(&values.iter().map(|&v| v as i64).collect::<Vec<_>>()).is_ok());
        FeasibleArray { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `y[i]` for 1-based `i`.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.values
    }
}

impl TryFrom<Vec<usize>> for FeasibleArray {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        let raw: Vec<i64> = values.iter().map(|&v| v as i64).collect();
        check(&raw)?;
        Ok(FeasibleArray { values })
    }
}

impl fmt::Display for FeasibleArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses space-separated integers without checking feasibility.
pub fn parse_integers(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (k, token) in text.split_whitespace().enumerate() {
        offset += text[offset..].find(token).unwrap_or(0);
        let v = token.parse::<i64>().map_err(|_| Error::Parse {
            token: k + 1,
            offset,
            reason: format!("`{token}` is not an integer"),
        })?;
        out.push(v);
        offset += token.len();
    }
    Ok(out)
}

impl FromStr for FeasibleArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        validate_feasible(&parse_integers(s)?)
    }
}

fn check(raw: &[i64]) -> Result<()> {
    let n = raw.len();
    let err = |index: usize, violation| Error::Infeasible {
        index,
        value: raw[index - 1],
        len: n,
        violation,
    };
    if n == 0 {
        return Ok(());
    }
    if raw[0] != n as i64 {
        return Err(err(1, FeasibleViolation::FirstNotLength));
    }
    for i in 2..=n {
        let v = raw[i - 1];
        if v < 0 {
            return Err(err(i, FeasibleViolation::Negative));
        }
        if v > (n - i + 1) as i64 {
            return Err(err(i, FeasibleViolation::TooLarge));
        }
    }
    Ok(())
}

/// Validates a raw integer sequence, reporting the first violating index.
/// The empty sequence is feasible (the table of the empty string).
pub fn validate_feasible(raw: &[i64]) -> Result<FeasibleArray> {
    check(raw)?;
    Ok(FeasibleArray {
        values: raw.iter().map(|&v| v as usize).collect(),
    })
}

/// Naive prefix table: for every `i >= 2`, extend the match of `x[i..]`
/// against `x[1..]` until it fails or the string ends.
pub fn compute_prefix_table(x: &IndeterminateString) -> FeasibleArray {
    let n = x.len();
    let letters = x.letters();
    let mut values = Vec::with_capacity(n);
    if n > 0 {
        values.push(n);
    }
    for i in 1..n {
        let mut j = 0;
        while i + j < n && letters_match(&letters[j], &letters[i + j]) {
            j += 1;
        }
        values.push(j);
    }
    FeasibleArray { values }
}

/// Which of the two characterizing conditions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `x[1..y[i]]` does not match `x[i..i+y[i]-1]`.
    PrefixMatch,
    /// `i + y[i] <= n` but `x[y[i]+1]` matches `x[i+y[i]]`.
    Mismatch,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::PrefixMatch => f.write_str("(a)"),
            Condition::Mismatch => f.write_str("(b)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Pass,
    Fail {
        position: usize,
        condition: Condition,
    },
}

impl Verification {
    pub fn passed(self) -> bool {
        self == Verification::Pass
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::Pass => f.write_str("pass"),
            Verification::Fail {
                position,
                condition,
            } => write!(f, "fail at i={position} condition {condition}"),
        }
    }
}

/// Checks whether `y` is the prefix table of `x` position by position:
/// (a) the first `y[i]` letters match those at `i`, and (b) the next pair
/// does not match whenever it exists.
pub fn verify_prefix_table(x: &IndeterminateString, y: &FeasibleArray) -> Result<Verification> {
    let n = x.len();
    if n != y.len() {
        return Err(Error::LengthMismatch {
            string: n,
            array: y.len(),
        });
    }
    let letters = x.letters();
    for i in 1..=n {
        let len = y.get(i);
        let prefix_ok = (0..len).all(|h| letters_match(&letters[h], &letters[i - 1 + h]));
        if !prefix_ok {
            return Ok(Verification::Fail {
                position: i,
                condition: Condition::PrefixMatch,
            });
        }
        if i + len <= n && letters_match(&letters[len], &letters[i + len - 1]) {
            return Ok(Verification::Fail {
                position: i,
                condition: Condition::Mismatch,
            });
        }
    }
    Ok(Verification::Pass)
}
