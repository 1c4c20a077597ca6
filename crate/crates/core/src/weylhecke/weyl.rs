use std::fmt;

use itertools::Itertools;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;

/// Element `(nu, eps)` of `W = S_g x| (Z/2)^g`, the Weyl group of GSp(2g).
///
/// Indices are 0-based: `nu[j]` is the image of `j`. It acts on torus
/// exponents by putting at position `j` either `a_{nu(j)}` (when
/// `eps[j] = 1`) or `a_0 - a_{nu(j)}` (when `eps[j] = -1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    nu: Vec<usize>,
    eps: Vec<i8>,
}

/// Exponents of `t = diag(p^{a_1}, ..., p^{a_g}, p^{a_0 - a_g}, ..., p^{a_0 - a_1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusExponent {
    pub a: Vec<Scalar>,
    pub a0: Scalar,
}

impl TorusExponent {
    pub fn new(a: Vec<Scalar>, a0: Scalar) -> Self {
        TorusExponent { a, a0 }
    }

    pub fn identity(g: usize) -> Self {
        TorusExponent {
            a: vec![Scalar::default(); g],
            a0: Scalar::default(),
        }
    }

    pub fn g(&self) -> usize {
        self.a.len()
    }

    /// Exponents of the product `t t'`.
    pub fn mul(&self, other: &TorusExponent) -> Result<TorusExponent> {
        if self.g() != other.g() {
            return Err(Error::DimensionMismatch(format!(
                "torus elements of genus {} and {}",
                self.g(),
                other.g()
            )));
        }
        Ok(TorusExponent {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            a0: &self.a0 + &other.a0,
        })
    }
}

impl fmt::Display for TorusExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.a.iter().join(","), self.a0)
    }
}

impl WeylElement {
    pub fn new(nu: Vec<usize>, eps: Vec<i8>) -> Result<Self> {
        let g = nu.len();
        if eps.len() != g {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {g} letters with {} signs",
                eps.len()
            )));
        }
        if !nu.iter().all(|&x| x < g) || !nu.iter().all_unique() {
            return Err(Error::Precondition(format!("{nu:?} is not a permutation")));
        }
        if !eps.iter().all(|&e| e == 1 || e == -1) {
            return Err(Error::Precondition(format!(
                "signs {eps:?} must be +1 or -1"
            )));
        }
        Ok(WeylElement { nu, eps })
    }

    /// From the 1-based one-line notation used in serialized form.
    pub fn from_one_based(nu: &[usize], eps: Vec<i8>) -> Result<Self> {
        if nu.contains(&0) {
            return Err(Error::Precondition(
                "one-based permutation contains 0".into(),
            ));
        }
        Self::new(nu.iter().map(|x| x - 1).collect(), eps)
    }

    pub fn identity(g: usize) -> Self {
        WeylElement {
            nu: (0..g).collect(),
            eps: vec![1; g],
        }
    }

    pub fn g(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn nu_one_based(&self) -> Vec<usize> {
        self.nu.iter().map(|x| x + 1).collect()
    }

    /// `nu^{-1}(i)`, 0-based.
    pub fn nu_inverse(&self, i: usize) -> usize {
        self.nu
            .iter()
            .position(|&x| x == i)
            .expect("nu is a permutation")
    }

    /// Product with `(self * other) . t = self . (other . t)`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.g() != other.g() {
            return Err(Error::DimensionMismatch(
                "Weyl elements of different genus".into(),
            ));
        }
        let nu = self.nu.iter().map(|&j| other.nu[j]).collect();
        let eps = (0..self.g())
            .map(|j| self.eps[j] * other.eps[self.nu[j]])
            .collect();
        Ok(WeylElement { nu, eps })
    }

    pub fn inverse(&self) -> WeylElement {
        let g = self.g();
        let mut nu = vec![0; g];
        for (j, &x) in self.nu.iter().enumerate() {
            nu[x] = j;
        }
        let eps = (0..g).map(|j| self.eps[nu[j]]).collect();
        WeylElement { nu, eps }
    }

    /// Multiplicative order, by repeated composition.
    pub fn order(&self) -> usize {
        let id = WeylElement::identity(self.g());
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.compose(self).expect("same genus");
            k += 1;
        }
        k
    }

    /// Order read off the cycle type of the signed permutation: a cycle of
    /// length `l` contributes `l`, or `2l` if its signs multiply to `-1`.
    pub fn order_from_cycles(&self) -> usize {
        let g = self.g();
        let mut seen = vec![false; g];
        let mut order = 1usize;
        for start in 0..g {
            if seen[start] {
                continue;
            }
            let (mut j, mut len, mut sign) = (start, 0usize, 1i8);
            while !seen[j] {
                seen[j] = true;
                sign *= self.eps[j];
                j = self.nu[j];
                len += 1;
            }
            order = order.lcm(&if sign == 1 { len } else { 2 * len });
        }
        order
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(nu=[{}], eps=[{}])",
            self.nu_one_based().iter().join(","),
            self.eps
                .iter()
                .map(|e| if *e == 1 { "+" } else { "-" })
                .join(",")
        )
    }
}

/// All `2^g g!` elements, ordered by permutation then signs.
pub fn enumerate_weyl(g: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for nu in (0..g).permutations(g) {
        for mask in 0u32..(1 << g) {
            let eps = (0..g)
                .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(WeylElement {
                nu: nu.clone(),
                eps,
            });
        }
    }
    out
}

/// `w^{-1} t w`: position `j` receives `a_{nu(j)}` or `a_0 - a_{nu(j)}`.
pub fn weyl_conjugate(w: &WeylElement, t: &TorusExponent) -> Result<TorusExponent> {
    if w.g() != t.g() {
        return Err(Error::DimensionMismatch(format!(
            "Weyl element of genus {} on torus of genus {}",
            w.g(),
            t.g()
        )));
    }
    let a = (0..w.g())
        .map(|j| {
            let x = &t.a[w.nu[j]];
            if w.eps[j] == 1 {
                x.clone()
            } else {
                &t.a0 - x
            }
        })
        .collect();
    Ok(TorusExponent {
        a,
        a0: t.a0.clone(),
    })
}
