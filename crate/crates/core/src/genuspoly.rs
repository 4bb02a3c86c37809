//! Exact sparse polynomials in one indeterminate `z`.
//!
//! Degrees are genus values, coefficients count edge subsets. Coefficients are
//! arbitrary precision so that sums of `2^e` never overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("odd exponent z^{degree} cannot be halved")]
    OddExponent { degree: u32 },
    #[error("malformed polynomial {text:?}: {reason}")]
    MalformedPolynomial { text: String, reason: String },
}

/// A polynomial with nonnegative integer degrees and positive coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their coefficient maps are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusPolynomial {
    coeffs: BTreeMap<u32, BigUint>,
}

impl GenusPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1u32, 0)
    }

    pub fn monomial(coeff: impl Into<BigUint>, degree: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff.into());
        p
    }

    /// Builds `Σ c·z^d` from `(degree, coefficient)` pairs; repeated degrees add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigUint>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c.into());
        }
        p
    }

    /// Builds a polynomial from a degree histogram: `hist[d]` is the coefficient of `z^d`.
    pub fn from_histogram(hist: &[u64]) -> Self {
        Self::from_terms(
            hist.iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, BigUint::from(c))),
        )
    }

    fn add_term(&mut self, degree: u32, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.coeffs.entry(degree).or_default() += coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, degree: u32) -> BigUint {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Stored terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigUint)> + '_ {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .map(|(&d, c)| BigInt::from(c.clone()) * num_traits::pow(x.clone(), d as usize))
            .sum()
    }

    /// Substitutes `z ↦ z^{1/2}`. Every stored degree must be even.
    pub fn halve_exponents(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (&d, c) in &self.coeffs {
            if d % 2 != 0 {
                return Err(PolyError::OddExponent { degree: d });
            }
            out.coeffs.insert(d / 2, c.clone());
        }
        Ok(out)
    }

    /// True when the support is a run of consecutive degrees (or empty).
    pub fn is_interpolating(&self) -> bool {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize == self.coeffs.len(),
            _ => true,
        }
    }

    /// Exactly one nonzero coefficient, sitting at a positive degree.
    pub fn is_singleton_nonconstant(&self) -> bool {
        self.coeffs.len() == 1 && self.min_degree().is_some_and(|d| d >= 1)
    }

    pub fn all_coefficients_even(&self) -> bool {
        self.coeffs.values().all(|c| !c.bit(0))
    }
}

impl Add for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn add(self, rhs: &GenusPolynomial) -> GenusPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Add for GenusPolynomial {
    type Output = GenusPolynomial;

    fn add(self, rhs: GenusPolynomial) -> GenusPolynomial {
        &self + &rhs
    }
}

impl Mul for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn mul(self, rhs: &GenusPolynomial) -> GenusPolynomial {
        let mut out = GenusPolynomial::zero();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Mul for GenusPolynomial {
    type Output = GenusPolynomial;

    fn mul(self, rhs: GenusPolynomial) -> GenusPolynomial {
        &self * &rhs
    }
}

impl std::iter::Product for GenusPolynomial {
    fn product<I: Iterator<Item = GenusPolynomial>>(iter: I) -> Self {
        iter.fold(GenusPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for GenusPolynomial {
    /// Ascending degree, e.g. `2 + 10z + 4z^2`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match d {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}")?;
                    }
                    f.write_str("z")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for GenusPolynomial {
    type Err = PolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = |reason: &str| PolyError::MalformedPolynomial {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(malformed("empty input"));
        }
        let mut p = GenusPolynomial::zero();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(malformed("empty term"));
            }
            let digits_end = term
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(term.len());
            let (coeff_text, rest) = term.split_at(digits_end);
            let rest = rest.strip_prefix('*').unwrap_or(rest);
            let coeff = if coeff_text.is_empty() {
                BigUint::one()
            } else {
                coeff_text
                    .parse::<BigUint>()
                    .map_err(|_| malformed("bad coefficient"))?
            };
            let degree = if rest.is_empty() {
                if coeff_text.is_empty() {
                    return Err(malformed("empty term"));
                }
                0
            } else if let Some(after_z) = rest.strip_prefix('z') {
                if after_z.is_empty() {
                    1
                } else if let Some(exp) = after_z.strip_prefix('^') {
                    if exp.is_empty() || !exp.chars().all(|c| c.is_ascii_digit()) {
                        return Err(malformed("exponent must be a nonnegative integer"));
                    }
                    exp.parse::<u32>()
                        .map_err(|_| malformed("exponent out of range"))?
                } else {
                    return Err(malformed("unexpected text after z"));
                }
            } else {
                return Err(malformed("unexpected character"));
            };
            p.add_term(degree, coeff);
        }
        Ok(p)
    }
}
