//! Indeterminate strings: symbols, letters, matching and ordering.
//!
//! A [`Letter`] is a nonempty set of [`Symbol`]s kept in ascending order. Two
//! letters *match* when they share a symbol. Letters are ordered by comparing
//! their ascending symbol sequences element by element, with a strict prefix
//! ordered first; strings lift that order position by position.
//!
//! Text form: positions are separated by single spaces, singleton letters are
//! printed bare (`a`) and larger letters braced (`{a,b}`). Symbol ranks 1..=26
//! render as `a`..`z`, higher ranks as decimal integers.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An alphabet symbol, identified by its 1-based rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroSymbol);
        }
        Ok(Symbol(rank))
    }

    pub fn rank(self) -> u32 {
        self.0
    }

    pub(crate) fn from_rank_unchecked(rank: u32) -> Self {
        debug_assert!(rank >= 1);
        Symbol(rank)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (1..=26).contains(&self.0) {
            write!(f, "{}", (b'a' + (self.0 - 1) as u8) as char)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A nonempty set of symbols, stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    symbols: Vec<Symbol>,
}

impl Letter {
    /// Builds a letter from arbitrary symbols; duplicates collapse.
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptyLetter);
        }
        symbols.sort_unstable();
        symbols.dedup();
        Ok(Letter { symbols })
    }

    pub fn from_ranks(ranks: &[u32]) -> Result<Self> {
        let symbols = ranks
            .iter()
            .map(|&r| Symbol::new(r))
            .collect::<Result<Vec<_>>>()?;
        Letter::new(symbols)
    }

    pub fn singleton(symbol: Symbol) -> Self {
        Letter {
            symbols: vec![symbol],
        }
    }

    /// `ranks` must be nonempty, strictly increasing and free of zeros.
    pub(crate) fn from_sorted_ranks_unchecked(ranks: &[u32]) -> Self {
        debug_assert!(!ranks.is_empty());
        debug_assert!(ranks.windows(2).all(|w| w[0] < w[1]));
        Letter {
            symbols: ranks
                .iter()
                .map(|&r| Symbol::from_rank_unchecked(r))
                .collect(),
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; letters are nonempty. Present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.symbols.len() == 1
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.symbols.binary_search(&s).is_ok()
    }
}

/// True iff the two letters share at least one symbol. Merge scan over the
/// sorted symbol lists.
pub fn letters_match(a: &Letter, b: &Letter) -> bool {
    sorted_intersect(&a.symbols, &b.symbols)
}

pub(crate) fn sorted_intersect<T: Ord>(a: &[T], b: &[T]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return true,
        }
    }
    false
}

/// Letter order: first differing symbol decides; a strict prefix comes first.
pub fn compare_letters(a: &Letter, b: &Letter) -> Ordering {
    for (x, y) in a.symbols.iter().zip(&b.symbols) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.symbols.len().cmp(&b.symbols.len())
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_letters(self, other)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [only] = self.symbols.as_slice() {
            return write!(f, "{only}");
        }
        f.write_str("{")?;
        for (k, s) in self.symbols.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// A sequence of letters. Positions are 1-based in the public API.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndeterminateString {
    letters: Vec<Letter>,
}

impl IndeterminateString {
    pub fn new(letters: Vec<Letter>) -> Self {
        IndeterminateString { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Regular string from one rank per position.
    pub fn from_ranks(ranks: &[u32]) -> Result<Self> {
        ranks
            .iter()
            .map(|&r| Symbol::new(r).map(Letter::singleton))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> &Letter {
        &self.letters[i - 1]
    }

    /// True iff every position holds a single symbol.
    pub fn is_regular(&self) -> bool {
        self.letters.iter().all(Letter::is_singleton)
    }

    /// Number of distinct symbols used.
    pub fn alphabet_size(&self) -> usize {
        self.letters
            .iter()
            .flat_map(|l| l.symbols.iter().copied())
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// String order induced positionwise by [`compare_letters`]; a strict prefix
/// comes first.
pub fn compare_strings(x1: &IndeterminateString, x2: &IndeterminateString) -> Ordering {
    for (a, b) in x1.letters.iter().zip(&x2.letters) {
        match compare_letters(a, b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    x1.len().cmp(&x2.len())
}

impl Ord for IndeterminateString {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_strings(self, other)
    }
}

impl PartialOrd for IndeterminateString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndeterminateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for IndeterminateString {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

fn parse_symbol(text: &str) -> std::result::Result<Symbol, String> {
    let bytes = text.as_bytes();
    if bytes.len() == 1 && bytes[0].is_ascii_lowercase() {
        return Ok(Symbol((bytes[0] - b'a') as u32 + 1));
    }
    if !text.is_empty() && bytes.iter().all(u8::is_ascii_digit) {
        return match text.parse::<u32>() {
            Ok(0) => Err("symbol rank must be at least 1".into()),
            Ok(r) => Ok(Symbol(r)),
            Err(_) => Err(format!("symbol `{text}` out of range")),
        };
    }
    Err(format!("bad symbol `{text}`"))
}

fn parse_position(token: &str) -> std::result::Result<Letter, String> {
    if let Some(rest) = token.strip_prefix('{') {
        let inner = rest
            .strip_suffix('}')
            .ok_or_else(|| format!("unterminated letter `{token}`"))?;
        let symbols = inner
            .split(',')
            .map(parse_symbol)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Letter::new(symbols).map_err(|e| e.to_string())
    } else {
        parse_symbol(token).map(Letter::singleton)
    }
}

impl FromStr for IndeterminateString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for (k, token) in s.split_whitespace().enumerate() {
            offset += s[offset..].find(token).unwrap_or(0);
            let letter = parse_position(token).map_err(|reason| Error::Parse {
                token: k + 1,
                offset,
                reason,
            })?;
            letters.push(letter);
            offset += token.len();
        }
        Ok(IndeterminateString::new(letters))
    }
}
