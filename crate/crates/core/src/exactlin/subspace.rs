use std::fmt;

use num_traits::{One, Zero};

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Subspace of `Q^ambient`, stored as the nonzero rows of its reduced
/// row-echelon basis. Equal subspaces are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<Vec<Scalar>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Self::span(ambient, &vs).expect("coordinate vectors have the ambient length")
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (r, _) = Matrix::from_rows(ambient, vectors)?.rref();
        Ok(Subspace {
            ambient,
            basis: r.to_rows(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Indices `i` such that the subspace is spanned by standard vectors `e_i`,
    /// or `None` if it is not a coordinate subspace.
    pub fn coordinate_support(&self) -> Option<Vec<usize>> {
        self.basis
            .iter()
            .map(|v| {
                let mut nz = v.iter().enumerate().filter(|(_, x)| !x.is_zero());
                match (nz.next(), nz.next()) {
                    (Some((i, _)), None) => Some(i),
                    _ => None,
                }
            })
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in Q^{}",
                v.len(),
                self.ambient
            )));
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(Matrix::from_rows(self.ambient, &rows)?.rank() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &rows)
    }

    /// Linear functionals vanishing on the subspace, as row vectors.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient).basis;
        }
        Matrix::from_rows(self.ambient, &self.basis)
            .expect("basis rows have the ambient length")
            .kernel()
    }

    /// Intersection, computed as the kernel of the other subspace's
    /// annihilator restricted to this one.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let ann = other.annihilator();
        if ann.is_empty() || self.basis.is_empty() {
            return Ok(self.clone());
        }
        let c = Matrix::from_rows(self.ambient, &ann)?;
        let u = Matrix::from_rows(self.ambient, &self.basis)?;
        let coeffs = c.mul(&u.transpose())?.kernel();
        let vs: Vec<Vec<Scalar>> = coeffs
            .iter()
            .map(|lam| u.transpose().mul_vec(lam))
            .collect::<Result<_>>()?;
        Self::span(self.ambient, &vs)
    }

    /// `{v : T v in W}` for `T: Q^cols -> Q^rows` and `W` inside `Q^rows`.
    pub fn preimage(t: &Matrix, w: &Subspace) -> Result<Subspace> {
        if t.rows() != w.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map into Q^{} against subspace of Q^{}",
                t.rows(),
                w.ambient
            )));
        }
        let ann = w.annihilator();
        if ann.is_empty() {
            return Ok(Subspace::full(t.cols()));
        }
        let c = Matrix::from_rows(w.ambient, &ann)?.mul(t)?;
        Self::span(t.cols(), &c.kernel())
    }

    /// `T(V)` for `T: Q^cols -> Q^rows` and `V` inside `Q^cols`.
    pub fn image(t: &Matrix, v: &Subspace) -> Result<Subspace> {
        if t.cols() != v.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map from Q^{} applied to subspace of Q^{}",
                t.cols(),
                v.ambient
            )));
        }
        let imgs: Vec<Vec<Scalar>> = v
            .basis
            .iter()
            .map(|b| t.mul_vec(b))
            .collect::<Result<_>>()?;
        Self::span(t.rows(), &imgs)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "span{{{}}} in Q^{}", rows.join(", "), self.ambient)
    }
}
