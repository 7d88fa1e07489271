//! Exact coefficients: polynomials in named parameters with Gaussian-rational
//! scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A complex number whose real and imaginary parts are arbitrary-precision
/// rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn imaginary_unit() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// True when the value prints with a leading minus sign, so that a sum
    /// can render it as `- |x|`.
    fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::real(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Renders in the parser's grammar: `3/2`, `-i`, `2*i`, `(1/2 - 3*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", imag(&-self.im.clone()))
                } else {
                    write!(f, "{}", imag(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {})", fmt_rational(&self.re), sign, imag(&self.im.abs()))
            }
        }
    }
}

/// A product of parameters, e.g. `alpha^2*beta`. Factors are sorted by name
/// and exponents are positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMonomial(Vec<(String, u32)>);

impl ParamMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn param(name: &str) -> Self {
        Self(vec![(name.to_string(), 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (name, e) in &other.0 {
            *acc.entry(name.clone()).or_insert(0) += e;
        }
        Self(acc.into_iter().collect())
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in parameters with Gaussian-rational scalars, kept canonical:
/// no zero scalars, monomials ordered lexicographically. The zero
/// coefficient is the empty polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    terms: BTreeMap<ParamMonomial, GaussianRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::term(ParamMonomial::unit(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::scalar(GaussianRational::from_integer(n))
    }

    pub fn param(name: &str) -> Self {
        Self::term(ParamMonomial::param(name), GaussianRational::one())
    }

    pub fn term(m: ParamMonomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// Number of parameter monomials with a nonzero scalar.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// The scalar value when the coefficient does not involve any parameter.
    pub fn as_scalar(&self) -> Option<&GaussianRational> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&ParamMonomial::unit()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_scalar().is_some()
    }

    /// Parameter names that occur in this coefficient, sorted.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = self.terms.keys().flat_map(|m| m.0.iter().map(|(n, _)| n.clone())).collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.clone() * c.clone());
        }
        out
    }

    fn add_term(&mut self, m: ParamMonomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(GaussianRational::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Replaces every occurrence of `name` by the scalar `value`.
    pub fn substitute(&self, name: &str, value: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut scalar = c.clone();
            let mut kept = Vec::with_capacity(m.0.len());
            for (n, e) in &m.0 {
                if n == name {
                    for _ in 0..*e {
                        scalar = scalar * value.clone();
                    }
                } else {
                    kept.push((n.clone(), *e));
                }
            }
            out.add_term(ParamMonomial(kept), scalar);
        }
        out
    }

    /// True when the polynomial can be displayed without wrapping it in
    /// parentheses as a factor.
    fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Formats as a multiplicative prefix for a monomial body, returning the
    /// sign separately: `(neg, text)` where `text` is empty for a unit
    /// coefficient.
    pub(crate) fn factor_parts(&self) -> (bool, String) {
        if self.is_single_term() {
            let (m, c) = self.terms.iter().next().expect("single term");
            let neg = c.is_negative_real();
            let mag = if neg { -c.clone() } else { c.clone() };
            let text = match (mag.is_one(), m.is_unit()) {
                (true, true) => String::new(),
                (true, false) => m.to_string(),
                (false, true) => mag.to_string(),
                (false, false) => format!("{mag}*{m}"),
            };
            (neg, text)
        } else {
            (false, format!("({self})"))
        }
    }
}

impl Add for Coefficient {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Coefficient {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for Coefficient {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl fmt::Display for Coefficient {
    /// `3*alpha + beta`, `-1/2`, `0`; re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_real();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = match (mag.is_one(), m.is_unit()) {
                (true, true) => "1".to_string(),
                (true, false) => m.to_string(),
                (false, true) => mag.to_string(),
                (false, false) => format!("{mag}*{m}"),
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
