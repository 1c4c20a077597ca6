use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::family::{family_data, hecke_symbol, Family, TriangulationData};
use super::formula::{check_shapes, Direction, LogDerivAssignment};
use crate::error::{Error, Result};
use crate::exactlin::{binomial, from_bigint, int, proportionality, sign_pow, Scalar};
use crate::plethysm::b_row;

/// `sum_s c_s s + constant` over named symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub terms: BTreeMap<String, Scalar>,
    pub constant: Scalar,
}

impl LinearForm {
    pub fn constant(c: Scalar) -> Self {
        LinearForm {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn term(symbol: &str, c: Scalar) -> Self {
        let mut f = LinearForm::default();
        f.add_term(symbol, c);
        f
    }

    pub fn add_term(&mut self, symbol: &str, c: Scalar) {
        let e = self.terms.entry(symbol.to_string()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(symbol);
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s, c.clone());
        }
        out.constant += &other.constant;
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinearForm {
        if c.is_zero() {
            return LinearForm::default();
        }
        LinearForm {
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// Replaces the symbols present in `values`; the others stay.
    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> LinearForm {
        let mut out = LinearForm::constant(self.constant.clone());
        for (s, c) in &self.terms {
            match values.get(s) {
                Some(x) => out.constant += c * x,
                None => out.add_term(s, c.clone()),
            }
        }
        out
    }

    pub fn evaluate(&self, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let f = self.substitute(values);
        match f.terms.keys().next() {
            Some(s) => Err(Error::Precondition(format!("no value for {s}"))),
            None => Ok(f.constant),
        }
    }

    /// `r` with `self = r * other`, if there is one.
    pub fn ratio_to(&self, other: &LinearForm) -> Option<Scalar> {
        let keys: BTreeSet<&String> = self.terms.keys().chain(other.terms.keys()).collect();
        let zero = Scalar::zero();
        let pick = |f: &LinearForm| -> Vec<Scalar> {
            keys.iter()
                .map(|k| f.terms.get(*k).unwrap_or(&zero).clone())
                .chain(std::iter::once(f.constant.clone()))
                .collect()
        };
        proportionality(&pick(self), &pick(other))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let body = if c.abs().is_one() {
                    s.clone()
                } else {
                    format!("{}*{s}", c.abs())
                };
                (c.is_negative(), body)
            })
            .collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), self.constant.abs().to_string()));
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / denominator` with both sides linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicRatio {
    pub numerator: LinearForm,
    pub denominator: LinearForm,
}

impl SymbolicRatio {
    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> SymbolicRatio {
        SymbolicRatio {
            numerator: self.numerator.substitute(values),
            denominator: self.denominator.substitute(values),
        }
    }
}

impl fmt::Display for SymbolicRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Weight coordinate `u_j` (or `u_0`) of one place.
pub fn direction_symbol(j: usize) -> String {
    format!("u_{j}")
}

/// One place of the generic formula with `a_j` and `u_j` left free:
/// `-(sum_i B_{i-1} grad F_i) / (sum_i B_{i-1} grad_u kappa_i)`.
pub fn symbolic_specialize(data: &TriangulationData) -> Result<SymbolicRatio> {
    let row = b_row(data.row.0, data.row.1)?;
    let mut numerator = LinearForm::default();
    let mut denominator = LinearForm::default();
    for (b, piece) in row.iter().zip(&data.pieces) {
        for (j, &c) in piece.log_form.coeffs.iter().enumerate() {
            numerator.add_term(&hecke_symbol(j + 1), -(b * int(c)));
        }
        for (j, c) in piece.kappa.coeffs.iter().enumerate() {
            denominator.add_term(&direction_symbol(j + 1), b * c);
        }
        denominator.add_term(&direction_symbol(0), b * &piece.kappa.c0);
    }
    Ok(SymbolicRatio {
        numerator,
        denominator,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// Hilbert modular forms, derivative along `(1, ..., 1; -1)`.
    A,
    /// Spin GSp(4).
    B,
    /// Standard GSp(2n), `n >= 2`.
    C { n: usize },
    /// Unitary, `V_{8n-2}`.
    D1 { n: usize },
    /// Unitary, `V_{8n-6}`.
    D2 { n: usize },
}

impl Theorem {
    pub fn family(&self) -> Family {
        match *self {
            Theorem::A => Family::Hilbert,
            Theorem::B => Family::Gsp4Spin,
            Theorem::C { n } => Family::GspStd { n },
            Theorem::D1 { n } => Family::Unitary { n, k: 4 * n - 1 },
            Theorem::D2 { n } => Family::Unitary { n, k: 4 * n - 3 },
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Theorem::C { n } if n < 2 => Err(Error::Precondition(format!(
                "theorem C needs n >= 2, got {n}"
            ))),
            Theorem::D1 { n } | Theorem::D2 { n } if n == 0 => {
                Err(Error::Precondition("theorem D needs n >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::A => write!(f, "A"),
            Theorem::B => write!(f, "B"),
            Theorem::C { n } => write!(f, "C(n={n})"),
            Theorem::D1 { n } => write!(f, "D1(n={n})"),
            Theorem::D2 { n } => write!(f, "D2(n={n})"),
        }
    }
}

/// `(-1)^i binom(2n, n+i) i`.
pub fn theorem_c_coefficient(n: usize, i: usize) -> Scalar {
    sign_pow(i as i64) * from_bigint(binomial(2 * n as i64, (n + i) as i64)) * int(i as i64)
}

/// `(-1)^i binom(N, i) (N^3 - (4i+1) N^2 + (4i^2+2i) N - 2i^2)` with `N = 4n - 1`.
pub fn theorem_d2_coefficient(n: usize, i: usize) -> Scalar {
    let big_n = 4 * n as i64 - 1;
    let i = i as i64;
    let cubic = big_n.pow(3) - (4 * i + 1) * big_n.pow(2) + (4 * i * i + 2 * i) * big_n - 2 * i * i;
    sign_pow(i) * from_bigint(binomial(big_n, i)) * int(cubic)
}

fn a(j: usize) -> String {
    hecke_symbol(j)
}

fn u(j: usize) -> String {
    direction_symbol(j)
}

/// The closed form of one theorem for a single place, as written.
pub fn theorem_symbolic(which: Theorem) -> Result<SymbolicRatio> {
    which.validate()?;
    let (numerator, denominator) = match which {
        Theorem::A => (
            LinearForm::term(&a(1), int(-2)),
            LinearForm::constant(int(1)),
        ),
        Theorem::B => {
            let mut num = LinearForm::term(&a(2), int(-4));
            num.add_term(&a(1), int(3));
            let mut den = LinearForm::term(&u(1), int(1));
            den.add_term(&u(2), int(-2));
            (num, den)
        }
        Theorem::C { n } => {
            let b = |i| theorem_c_coefficient(n, i);
            let mut inner = LinearForm::term(&a(1), b(n));
            inner.add_term(&a(n - 1), b(1));
            inner.add_term(&a(n), int(-2) * b(1));
            for i in 2..n {
                inner.add_term(&a(i - 1), b(i));
                inner.add_term(&a(i), -b(i));
            }
            let mut den = LinearForm::default();
            for i in 1..=n {
                den.add_term(&u(i), b(n + 1 - i));
            }
            (inner.scale(&int(-1)), den)
        }
        Theorem::D1 { n } | Theorem::D2 { n } => {
            let big_n = 4 * n as i64 - 1;
            let coeff = |i: usize| match which {
                Theorem::D1 { .. } => {
                    sign_pow(i as i64 - 1) * from_bigint(binomial(big_n, i as i64 - 1))
                }
                _ => theorem_d2_coefficient(n, i - 1),
            };
            let mut num = LinearForm::default();
            let mut den = LinearForm::default();
            for i in 1..=4 * n {
                num.add_term(&a(i), -coeff(i));
                den.add_term(&u(i), coeff(i));
            }
            (num, den)
        }
    };
    Ok(SymbolicRatio {
        numerator,
        denominator,
    })
}

fn theorem_a_direction() -> BTreeMap<String, Scalar> {
    BTreeMap::from([(u(1), int(1)), (u(0), int(-1))])
}

/// Evaluates the theorem's closed form, multiplied over places.
pub fn theorem_evaluator(
    which: Theorem,
    dir: &Direction,
    vals: &LogDerivAssignment,
) -> Result<Scalar> {
    let form = theorem_symbolic(which)?;
    let data = family_data(which.family())?;
    check_shapes(&data, dir, vals)?;
    if which == Theorem::A && (dir.u.iter().any(|x| !x.is_one()) || dir.u0 != int(-1)) {
        return Err(Error::Precondition(
            "theorem A is stated for the direction (1, ..., 1; -1)".into(),
        ));
    }
    let dim = data.weight_dim;
    let mut acc = Scalar::one();
    for (v, grads) in vals.places.iter().enumerate() {
        let mut values: BTreeMap<String, Scalar> = grads
            .iter()
            .enumerate()
            .map(|(j, x)| (a(j + 1), x.clone()))
            .collect();
        for (j, x) in dir.u[v * dim..(v + 1) * dim].iter().enumerate() {
            values.insert(u(j + 1), x.clone());
        }
        values.insert(u(0), dir.u0.clone());
        let den = form.denominator.evaluate(&values)?;
        if den.is_zero() {
            return Err(Error::SingularDirection { place: v });
        }
        acc *= form.numerator.evaluate(&values)? / den;
    }
    Ok(acc)
}

/// How the generic formula relates to a theorem's closed form, one place at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Exact,
    SignFlip,
    /// generic = c * theorem for this `c`, not `+-1`.
    Proportional(Scalar),
    Mismatch,
}

impl Classification {
    /// Per-place factor `c` with generic = c * theorem.
    pub fn factor(&self) -> Option<Scalar> {
        match self {
            Classification::Exact => Some(int(1)),
            Classification::SignFlip => Some(int(-1)),
            Classification::Proportional(c) => Some(c.clone()),
            Classification::Mismatch => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::Exact => "exact",
            Classification::SignFlip => "sign_flip",
            Classification::Proportional(_) => "proportional",
            Classification::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub theorem: Theorem,
    pub generic: SymbolicRatio,
    pub closed_form: SymbolicRatio,
    pub classification: Classification,
}

/// Expands the generic formula for the theorem's family and matches it
/// against the closed form: numerators and denominators must each be
/// proportional.
pub fn compare_to_theorem(which: Theorem) -> Result<Comparison> {
    let closed_form = theorem_symbolic(which)?;
    let mut generic = symbolic_specialize(&family_data(which.family())?)?;
    if which == Theorem::A {
        generic = generic.substitute(&theorem_a_direction());
    }
    let r_num = generic.numerator.ratio_to(&closed_form.numerator);
    let r_den = generic.denominator.ratio_to(&closed_form.denominator);
    let classification = match (r_num, r_den) {
        (Some(rn), Some(rd)) => {
            let c = rn / rd;
            if c.is_one() {
                Classification::Exact
            } else if (-&c).is_one() {
                Classification::SignFlip
            } else {
                Classification::Proportional(c)
            }
        }
        _ => Classification::Mismatch,
    };
    Ok(Comparison {
        theorem: which,
        generic,
        closed_form,
        classification,
    })
}
