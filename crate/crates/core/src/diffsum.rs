//! Differential monomials and canonical differential sums.

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficient::{Coefficient, GaussianRational};

/// Exponents of `z^r w^s (w')^a (w'')^b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Powers {
    pub r: i64,
    pub s: i64,
    pub a: u32,
    pub b: u32,
}

impl Powers {
    pub fn new(r: i64, s: i64, a: u32, b: u32) -> Self {
        Self { r, s, a, b }
    }
}

impl std::ops::Mul for Powers {
    type Output = Powers;
    fn mul(self, other: Self) -> Self {
        Self { r: self.r + other.r, s: self.s + other.s, a: self.a + other.a, b: self.b + other.b }
    }
}

/// `coeff * z^r * w^s * (w')^a * (w'')^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    pub coeff: Coefficient,
    pub powers: Powers,
}

impl DiffMonomial {
    pub fn new(coeff: Coefficient, r: i64, s: i64, a: u32, b: u32) -> Self {
        Self { coeff, powers: Powers::new(r, s, a, b) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { coeff: &self.coeff * &other.coeff, powers: self.powers * other.powers }
    }

    /// Body and sign as they appear inside a sum; the sign is pulled out so
    /// the sum can print `a - b` instead of `a + -b`.
    fn signed_text(&self) -> (bool, String) {
        let (neg, coeff_text) = self.coeff.factor_parts();
        let Powers { r, s, a, b } = self.powers;
        let mut numer: Vec<String> = Vec::new();
        let mut denom: Vec<String> = Vec::new();
        if !coeff_text.is_empty() {
            numer.push(coeff_text);
        }
        let mut push = |base: &str, e: i64, wrap: bool| {
            let target = if e > 0 { &mut numer } else { &mut denom };
            let e = e.abs();
            match (e, wrap) {
                (0, _) => {}
                (1, _) => target.push(base.to_string()),
                (_, false) => target.push(format!("{base}^{e}")),
                (_, true) => target.push(format!("({base})^{e}")),
            }
        };
        push("z", r, false);
        push("w", s, false);
        push("w'", a as i64, true);
        push("w''", b as i64, true);
        let mut text = if numer.is_empty() { "1".to_string() } else { numer.join("*") };
        for d in denom {
            text.push('/');
            text.push_str(&d);
        }
        (neg, text)
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, text) = self.signed_text();
        if neg {
            f.write_str("-")?;
        }
        f.write_str(&text)
    }
}

/// A polynomial in `z, w, w', w''`. Canonical values have at most one term
/// per exponent tuple, no zero coefficients and terms sorted by
/// `(r, s, a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DifferentialSum {
    terms: Vec<DiffMonomial>,
}

impl DifferentialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Canonicalizes an arbitrary list of monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = DiffMonomial>) -> Self {
        expand_and_collect(Self { terms: terms.into_iter().collect() })
    }

    /// Wraps a list without canonicalizing it.
    pub fn from_raw(terms: Vec<DiffMonomial>) -> Self {
        Self { terms }
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::from_terms([DiffMonomial::new(c, 0, 0, 0, 0)])
    }

    pub fn monomial(r: i64, s: i64, a: u32, b: u32) -> Self {
        Self::from_terms([DiffMonomial::new(Coefficient::one(), r, s, a, b)])
    }

    pub fn terms(&self) -> &[DiffMonomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].powers < w[1].powers) && self.terms.iter().all(|t| !t.coeff.is_zero())
    }

    /// Coefficient of the given monomial, zero when absent.
    pub fn coefficient(&self, powers: Powers) -> Coefficient {
        self.terms.iter().find(|t| t.powers == powers).map(|t| t.coeff.clone()).unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|t| DiffMonomial { coeff: -t.coeff.clone(), powers: t.powers }).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|x| other.terms.iter().map(move |y| x.mul(y))))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Coefficient::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| DiffMonomial { coeff: t.coeff.scale(c), powers: t.powers }))
    }

    /// Substitutes a scalar for a parameter in every coefficient.
    pub fn substitute(&self, name: &str, value: &GaussianRational) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| DiffMonomial { coeff: t.coeff.substitute(name, value), powers: t.powers }),
        )
    }

    /// Parameter names occurring anywhere in the sum.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = self.terms.iter().flat_map(|t| t.coeff.parameters()).collect();
        names.sort();
        names.dedup();
        names
    }

    /// Total number of parameter-monomial terms across all coefficients.
    pub fn scalar_term_count(&self) -> usize {
        self.terms.iter().map(|t| t.coeff.len()).sum()
    }
}

/// Collects like monomials, drops zero coefficients and sorts by exponent
/// tuple.
pub fn expand_and_collect(sum: DifferentialSum) -> DifferentialSum {
    let mut acc: BTreeMap<Powers, Coefficient> = BTreeMap::new();
    for t in sum.terms {
        let slot = acc.entry(t.powers).or_default();
        *slot = std::mem::take(slot) + t.coeff;
    }
    DifferentialSum {
        terms: acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(powers, coeff)| DiffMonomial { coeff, powers })
            .collect(),
    }
}

/// Deterministic text in the parser grammar. The empty sum prints as `0`.
pub fn format(sum: &DifferentialSum) -> String {
    sum.to_string()
}

impl fmt::Display for DifferentialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, text) = t.signed_text();
            match (k, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: Coefficient, r: i64, s: i64, a: u32, b: u32) -> DiffMonomial {
        DiffMonomial::new(c, r, s, a, b)
    }

    #[test]
    fn collects_like_terms() {
        let raw = DifferentialSum::from_raw(vec![
            mono(Coefficient::integer(2), 0, 1, 0, 0),
            mono(Coefficient::integer(3), 0, 1, 0, 0),
        ]);
        let c = expand_and_collect(raw);
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(Powers::new(0, 1, 0, 0)), Coefficient::integer(5));
    }

    #[test]
    fn symbolic_cancellation_empties_sum() {
        let raw = DifferentialSum::from_raw(vec![
            mono(Coefficient::param("alpha"), 0, 2, 0, 0),
            mono(-Coefficient::param("alpha"), 0, 2, 0, 0),
        ]);
        assert!(expand_and_collect(raw).is_empty());
    }

    #[test]
    fn sorts_terms() {
        let raw = DifferentialSum::from_raw(vec![
            mono(Coefficient::one(), 1, 0, 0, 0),
            mono(Coefficient::one(), 0, 3, 0, 0),
            mono(Coefficient::one(), 0, 1, 1, 0),
        ]);
        let c = expand_and_collect(raw);
        assert!(c.is_canonical());
        assert_eq!(c.terms()[0].powers, Powers::new(0, 1, 1, 0));
    }

    #[test]
    fn formats_signs_and_units() {
        let s = DifferentialSum::from_terms([mono(Coefficient::integer(-1), 1, 1, 0, 1)]);
        assert_eq!(format(&s), "-z*w*w''");
        assert_eq!(format(&DifferentialSum::zero()), "0");
        let s = DifferentialSum::from_terms([
            mono(Coefficient::param("delta"), 0, -1, 0, 0),
            mono(Coefficient::integer(1), 1, 0, 2, 0),
        ]);
        assert_eq!(format(&s), "delta/w + z*(w')^2");
        let s = DifferentialSum::from_terms([mono(Coefficient::integer(1), -2, 0, 0, 0)]);
        assert_eq!(format(&s), "1/z^2");
    }

    #[test]
    fn multi_term_coefficient_is_parenthesized() {
        let c = Coefficient::param("alpha") + Coefficient::param("beta");
        let s = DifferentialSum::from_terms([mono(c, 0, 3, 0, 0)]);
        assert_eq!(format(&s), "(alpha + beta)*w^3");
    }
}
