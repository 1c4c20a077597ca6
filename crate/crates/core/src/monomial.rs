//! Laurent monomials in named symbols with rational exponents.
//!
//! Frobenius eigenvalues (`p^{-i}`, `alpha^{2i} p^{i(k-1)}`, `r^i`) and Hecke
//! eigenvalues (`p^c sigma^{-2} chi_1^{-1}`) are all of this shape, so one
//! multiplicative type covers both.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Scalar;

/// `prod_s s^{e_s}` with only nonzero exponents stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenMonomial {
    exponents: BTreeMap<String, Scalar>,
}

/// Declared `p`-adic valuations of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuations(BTreeMap<String, Scalar>);

impl Valuations {
    /// `v_p(p) = 1`, nothing else declared.
    pub fn new() -> Self {
        Valuations(BTreeMap::from([("p".to_string(), Scalar::one())]))
    }

    pub fn with(mut self, symbol: &str, v: Scalar) -> Self {
        self.0.insert(symbol.to_string(), v);
        self
    }

    pub fn get(&self, symbol: &str) -> Option<&Scalar> {
        self.0.get(symbol)
    }
}

impl EigenMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(name: &str) -> Self {
        Self::power(name, Scalar::one())
    }

    /// `name^e`.
    pub fn power(name: &str, e: Scalar) -> Self {
        let mut m = Self::default();
        if !e.is_zero() {
            m.exponents.insert(name.to_string(), e);
        }
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (String, Scalar)>) -> Self {
        exps.into_iter()
            .fold(Self::one(), |acc, (s, e)| acc.mul(&Self::power(&s, e)))
    }

    pub fn exponent(&self, name: &str) -> Scalar {
        self.exponents
            .get(name)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn exponents(&self) -> &BTreeMap<String, Scalar> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.exponents.clone();
        for (s, e) in &other.exponents {
            let entry = out.entry(s.clone()).or_insert_with(Scalar::zero);
            *entry += e;
            if entry.is_zero() {
                out.remove(s);
            }
        }
        EigenMonomial { exponents: out }
    }

    pub fn pow(&self, e: &Scalar) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        EigenMonomial {
            exponents: self
                .exponents
                .iter()
                .map(|(s, x)| (s.clone(), x * e))
                .collect(),
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(&-Scalar::one())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// The monomial with the given symbol removed.
    pub fn without(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.exponents.remove(name);
        out
    }

    /// Additive valuation from per-symbol valuations.
    pub fn valuation(&self, vals: &Valuations) -> Result<Scalar> {
        self.exponents
            .iter()
            .try_fold(Scalar::zero(), |acc, (s, e)| {
                let v = vals.get(s).ok_or_else(|| {
                    Error::Precondition(format!("no valuation declared for symbol {s}"))
                })?;
                Ok(acc + e * v)
            })
    }
}

impl fmt::Display for EigenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(s, e)| {
                if e.is_one() {
                    s.clone()
                } else if e.is_integer() {
                    format!("{s}^{e}")
                } else {
                    format!("{s}^({e})")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
