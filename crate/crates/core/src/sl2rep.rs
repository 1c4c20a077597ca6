//! The sl(2) action on `V_m = Sym^m V`, on its dual, and on `End(V_n)`.
//!
//! `V_m` has basis `g_{m,0}, ..., g_{m,m}` with
//!
//! ```text
//! L g_{m,i} = (m-i) g_{m,i+1}    R g_{m,i} = i g_{m,i-1}    H g_{m,i} = (m-2i) g_{m,i}
//! ```
//!
//! and the dual basis `g_{m,i}^v` carries the contragredient action
//! `L g_i^v = -(m+1-i) g_{i-1}^v`, `R g_i^v = -(i+1) g_{i+1}^v`.
//! An endomorphism is a grid of coefficients on `g_{n,i} (x) g_{n,j}^v`, which
//! acts as the matrix unit sending `g_j` to `g_i`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{binomial, from_bigint, int, sign_pow, Matrix, Scalar};

/// Element of `V_m` in the basis `g_{m,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVector {
    pub m: usize,
    pub coeffs: Vec<Scalar>,
}

/// Element of the dual `V_m^v` in the basis `g_{m,i}^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRepVector {
    pub m: usize,
    pub coeffs: Vec<Scalar>,
}

/// Element of `End(V_n) = V_n (x) V_n^v`; entry `(i, j)` multiplies
/// `g_{n,i} (x) g_{n,j}^v`, which has weight `2(j - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoElement {
    pub n: usize,
    pub coeffs: Matrix,
}

/// The two nilpotent generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2 {
    L,
    R,
}

fn check_len(m: usize, len: usize) -> Result<()> {
    if len != m + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{len} coefficients for a weight-{m} vector"
        )));
    }
    Ok(())
}

impl RepVector {
    pub fn new(m: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        check_len(m, coeffs.len())?;
        Ok(RepVector { m, coeffs })
    }

    pub fn basis(m: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); m + 1];
        coeffs[i] = int(1);
        RepVector { m, coeffs }
    }

    pub fn lower(&self) -> Self {
        let mut out = vec![Scalar::zero(); self.m + 1];
        for i in 0..self.m {
            out[i + 1] = &self.coeffs[i] * int((self.m - i) as i64);
        }
        RepVector {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn raise(&self) -> Self {
        let mut out = vec![Scalar::zero(); self.m + 1];
        for i in 1..=self.m {
            out[i - 1] = &self.coeffs[i] * int(i as i64);
        }
        RepVector {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn act(&self, x: Sl2) -> Self {
        match x {
            Sl2::L => self.lower(),
            Sl2::R => self.raise(),
        }
    }

    /// `H g_{m,i} = (m - 2i) g_{m,i}`.
    pub fn weight_action(&self) -> Self {
        let coeffs = (0..=self.m)
            .map(|i| &self.coeffs[i] * int(self.m as i64 - 2 * i as i64))
            .collect();
        RepVector { m: self.m, coeffs }
    }

    /// `g_{n,i} -> (-1)^{n-i} binom(n,i)^{-1} g_{n,n-i}^v`, the sl(2)-equivariant
    /// isomorphism `V_n -> V_n^v`.
    pub fn duality_iso(&self) -> DualRepVector {
        let n = self.m;
        let mut out = vec![Scalar::zero(); n + 1];
        for i in 0..=n {
            let c = sign_pow((n - i) as i64) / from_bigint(binomial(n as i64, i as i64));
            out[n - i] = &self.coeffs[i] * c;
        }
        DualRepVector { m: n, coeffs: out }
    }
}

impl DualRepVector {
    pub fn new(m: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        check_len(m, coeffs.len())?;
        Ok(DualRepVector { m, coeffs })
    }

    pub fn basis(m: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); m + 1];
        coeffs[i] = int(1);
        DualRepVector { m, coeffs }
    }

    pub fn lower(&self) -> Self {
        let mut out = vec![Scalar::zero(); self.m + 1];
        for i in 1..=self.m {
            out[i - 1] = &self.coeffs[i] * int(-((self.m + 1 - i) as i64));
        }
        DualRepVector {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn raise(&self) -> Self {
        let mut out = vec![Scalar::zero(); self.m + 1];
        for i in 0..self.m {
            out[i + 1] = &self.coeffs[i] * int(-((i + 1) as i64));
        }
        DualRepVector {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn act(&self, x: Sl2) -> Self {
        match x {
            Sl2::L => self.lower(),
            Sl2::R => self.raise(),
        }
    }

    pub fn weight_action(&self) -> Self {
        let coeffs = (0..=self.m)
            .map(|i| &self.coeffs[i] * int(2 * i as i64 - self.m as i64))
            .collect();
        DualRepVector { m: self.m, coeffs }
    }
}

impl EndoElement {
    pub fn new(n: usize, coeffs: Matrix) -> Result<Self> {
        if coeffs.rows() != n + 1 || coeffs.cols() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} grid for End(V_{n})",
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        Ok(EndoElement { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        EndoElement {
            n,
            coeffs: Matrix::zeros(n + 1, n + 1),
        }
    }

    pub fn identity(n: usize) -> Self {
        EndoElement {
            n,
            coeffs: Matrix::identity(n + 1),
        }
    }

    pub fn diagonal(diag: &[Scalar]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        Ok(EndoElement {
            n: diag.len() - 1,
            coeffs: Matrix::diagonal(diag),
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..=self.n).all(|i| (0..i).all(|j| self.coeffs[(i, j)].is_zero()))
    }

    /// `X(u (x) w^v) = Xu (x) w^v + u (x) Xw^v`.
    pub fn act(&self, x: Sl2) -> Self {
        let n = self.n;
        let mut out = Matrix::zeros(n + 1, n + 1);
        for i in 0..=n {
            for j in 0..=n {
                let c = &self.coeffs[(i, j)];
                if c.is_zero() {
                    continue;
                }
                let xu = RepVector::basis(n, i).act(x);
                for (a, ca) in xu.coeffs.iter().enumerate() {
                    if !ca.is_zero() {
                        out[(a, j)] += c * ca;
                    }
                }
                let xw = DualRepVector::basis(n, j).act(x);
                for (b, cb) in xw.coeffs.iter().enumerate() {
                    if !cb.is_zero() {
                        out[(i, b)] += c * cb;
                    }
                }
            }
        }
        EndoElement { n, coeffs: out }
    }

    /// `H (g_i (x) g_j^v) = 2(j - i) g_i (x) g_j^v`.
    pub fn weight_action(&self) -> Self {
        let n = self.n;
        let mut out = self.coeffs.clone();
        for i in 0..=n {
            for j in 0..=n {
                out[(i, j)] *= int(2 * (j as i64 - i as i64));
            }
        }
        EndoElement { n, coeffs: out }
    }

    /// Flattened coefficients, index `i * (n+1) + j`.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.coeffs.to_rows().concat()
    }

    pub fn from_vec(n: usize, v: Vec<Scalar>) -> Result<Self> {
        Self::new(n, Matrix::new(n + 1, n + 1, v)?)
    }
}

/// `X . T` for `T` in `End(V_n)`.
pub fn act_on_end(x: Sl2, t: &EndoElement) -> EndoElement {
    t.act(x)
}

/// Matrix of `X` on `V_n` in the basis `g_{n,0..n}`, columns are images.
pub fn rho(x: Sl2, n: usize) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..=n)
        .map(|i| RepVector::basis(n, i).act(x).coeffs)
        .collect();
    Matrix::from_columns(n + 1, &cols).expect("columns have length n+1")
}

/// Highest-weight vector of the `V_{2k}` constituent of `End(V_n)`:
/// `v_{2k} = sum_{i=0}^{n-k} binom(k+i, i) g_{n,i} (x) g_{n,k+i}^v`.
pub fn highest_weight_vector(n: usize, k: usize) -> Result<EndoElement> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let mut t = EndoElement::zero(n);
    for i in 0..=n - k {
        t.coeffs[(i, k + i)] = from_bigint(binomial((k + i) as i64, i as i64));
    }
    Ok(t)
}

/// The basis `{L^i v_{2j} : 0 <= j <= n, 0 <= i <= 2j}` of `End(V_n)` and its
/// inverse, for repeated projections at one `n`.
///
/// Block `j` occupies coordinates `j^2 .. (j+1)^2`, with `L^i v_{2j}` at `j^2 + i`.
#[derive(Clone, Debug)]
pub struct EndBasis {
    n: usize,
    vectors: Vec<EndoElement>,
    inverse: Matrix,
}

impl EndBasis {
    pub fn new(n: usize) -> Result<Self> {
        let mut vectors = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            let mut v = highest_weight_vector(n, j)?;
            for _ in 0..=2 * j {
                let next = v.act(Sl2::L);
                vectors.push(v);
                v = next;
            }
        }
        let cols: Vec<Vec<Scalar>> = vectors.iter().map(EndoElement::to_vec).collect();
        let m = Matrix::from_columns((n + 1) * (n + 1), &cols)?;
        let inverse = m
            .inverse()?
            .ok_or_else(|| Error::Internal(format!("basis of End(V_{n}) is singular")))?;
        Ok(EndBasis {
            n,
            vectors,
            inverse,
        })
    }

    pub fn vectors(&self) -> &[EndoElement] {
        &self.vectors
    }

    /// All `(n+1)^2` coordinates of `t` in this basis.
    pub fn coordinates(&self, t: &EndoElement) -> Result<Vec<Scalar>> {
        if t.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "End(V_{}) element against basis of End(V_{})",
                t.n, self.n
            )));
        }
        self.inverse.mul_vec(&t.to_vec())
    }

    /// Coordinates of the `V_{2k}` component on `L^0 v_{2k}, ..., L^{2k} v_{2k}`.
    pub fn project(&self, t: &EndoElement, k: usize) -> Result<Vec<Scalar>> {
        if k > self.n {
            return Err(Error::OutOfRange(format!("k = {k} exceeds n = {}", self.n)));
        }
        let c = self.coordinates(t)?;
        Ok(c[k * k..(k + 1) * (k + 1)].to_vec())
    }
}

/// `V_{2k}` block of the coordinates of `t` in the basis `{L^i v_{2j}}`.
pub fn brute_force_project(t: &EndoElement, k: usize) -> Result<Vec<Scalar>> {
    if k > t.n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {}", t.n)));
    }
    EndBasis::new(t.n)?.project(t, k)
}
