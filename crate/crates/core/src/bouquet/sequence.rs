use std::fmt;
use std::str::FromStr;

use super::BouquetError;

/// Interlace number of one loop together with its twist.
///
/// Stored as `(alpha, twisted)` rather than a signed integer so a twisted
/// trivial loop (`-0`) stays distinct from an untwisted one (`0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedEntry {
    pub alpha: usize,
    pub twisted: bool,
}

impl SignedEntry {
    pub fn beta(&self) -> i64 {
        if self.twisted {
            -(self.alpha as i64)
        } else {
            self.alpha as i64
        }
    }

    fn sort_key(&self) -> (i64, bool) {
        (self.beta(), !self.twisted)
    }
}

impl PartialOrd for SignedEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedEntry {
    /// Ascending by signed interlace number, `-0` before `0`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for SignedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twisted {
            write!(f, "-{}", self.alpha)
        } else {
            write!(f, "{}", self.alpha)
        }
    }
}

/// Sorted signed interlace numbers of a bouquet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedSequence {
    entries: Vec<SignedEntry>,
}

impl SignedSequence {
    pub fn new(mut entries: Vec<SignedEntry>) -> Self {
        entries.sort();
        Self { entries }
    }

    pub fn entries(&self) -> &[SignedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn beta_sum(&self) -> i64 {
        self.entries.iter().map(SignedEntry::beta).sum()
    }

    /// Number of `-0` and `0` entries respectively.
    pub fn trivial_counts(&self) -> (usize, usize) {
        let twisted = self
            .entries
            .iter()
            .filter(|e| e.alpha == 0 && e.twisted)
            .count();
        let untwisted = self
            .entries
            .iter()
            .filter(|e| e.alpha == 0 && !e.twisted)
            .count();
        (twisted, untwisted)
    }
}

impl fmt::Display for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SignedSequence {
    type Err = BouquetError;

    /// Accepts `(-2, -1, 1, 2)` or `-0, 0`; order in the input does not matter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = strip_parens(s.trim());
        if inner.trim().is_empty() {
            return Ok(Self::default());
        }
        let entries = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (digits, twisted) = match tok.strip_prefix('-') {
                    Some(rest) => (rest, true),
                    None => (tok, false),
                };
                digits
                    .parse::<usize>()
                    .map(|alpha| SignedEntry { alpha, twisted })
                    .map_err(|_| BouquetError::BadToken {
                        token: tok.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(entries))
    }
}

pub(crate) fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
}
