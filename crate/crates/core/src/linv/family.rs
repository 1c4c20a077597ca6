use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{frac, int, Scalar};
use crate::monomial::EigenMonomial;
use crate::weylhecke::{c_constant, WeylElement};

/// Affine form `sum_j c_j mu_j + c_0 mu_0 + constant` in the weight
/// coordinates of one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLinearForm {
    pub coeffs: Vec<Scalar>,
    pub c0: Scalar,
    pub constant: Scalar,
}

impl WeightLinearForm {
    pub fn new(coeffs: Vec<Scalar>, c0: Scalar, constant: Scalar) -> Self {
        WeightLinearForm {
            coeffs,
            c0,
            constant,
        }
    }

    /// Directional derivative along `(u_1, ..., u_g; u_0)`; the constant drops.
    pub fn derivative(&self, u: &[Scalar], u0: &Scalar) -> Result<Scalar> {
        if u.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "form in {} coordinates along a direction with {}",
                self.coeffs.len(),
                u.len()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(u)
            .fold(&self.c0 * u0, |acc, (c, x)| acc + c * x))
    }

    pub fn evaluate(&self, mu: &[Scalar], mu0: &Scalar) -> Result<Scalar> {
        Ok(self.derivative(mu, mu0)? + &self.constant)
    }
}

/// Integer coefficients of `grad a_1, ..., grad a_g` in the logarithmic
/// derivative of one `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeLogForm {
    pub coeffs: Vec<i64>,
}

impl HeckeLogForm {
    /// Reads the exponents of `a_1, ..., a_g` off `F`. The power of `p` is a
    /// constant and contributes nothing.
    pub fn from_monomial(f: &EigenMonomial, g: usize) -> Result<Self> {
        let known: Vec<String> = (1..=g).map(hecke_symbol).collect();
        if let Some(s) = f
            .exponents()
            .keys()
            .find(|s| *s != "p" && !known.contains(s))
        {
            return Err(Error::Internal(format!("unexpected symbol {s} in F")));
        }
        let coeffs = known
            .iter()
            .map(|s| {
                let e = f.exponent(s);
                if !e.is_integer() {
                    return Err(Error::Internal(format!("non-integral exponent {e} of {s}")));
                }
                e.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Internal(format!("exponent {e} of {s} overflows")))
            })
            .collect::<Result<_>>()?;
        Ok(HeckeLogForm { coeffs })
    }

    pub fn evaluate(&self, grads: &[Scalar]) -> Result<Scalar> {
        if grads.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "log form in {} eigenvalues given {} derivatives",
                self.coeffs.len(),
                grads.len()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(grads)
            .fold(Scalar::zero(), |acc, (&c, x)| acc + int(c) * x))
    }
}

/// Name of the analytic eigenvalue `a_j`.
pub fn hecke_symbol(j: usize) -> String {
    format!("a_{j}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Sym^2` of a Hilbert modular form; one weight coordinate `k_v` per place plus `w`.
    Hilbert,
    /// Spin representation of GSp(4).
    Gsp4Spin,
    /// Standard representation of GSp(2n), `n >= 2`.
    GspStd { n: usize },
    /// Rank `4n` unitary family, paired with the row `B_{4n-1,k,*}`.
    Unitary { n: usize, k: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hilbert => write!(f, "hilbert"),
            Family::Gsp4Spin => write!(f, "gsp4_spin"),
            Family::GspStd { n } => write!(f, "gsp_std(n={n})"),
            Family::Unitary { n, k } => write!(f, "unitary(n={n},k={k})"),
        }
    }
}

/// One graded piece: Hodge-Tate weight form and Frobenius factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub kappa: WeightLinearForm,
    /// `F_i` including its power of `p`.
    pub f: EigenMonomial,
    pub log_form: HeckeLogForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationData {
    pub family: Family,
    /// Weight coordinates per place, excluding `u_0`.
    pub weight_dim: usize,
    /// Hecke eigenvalues `a_1, ..., a_h` per place.
    pub hecke_dim: usize,
    pub pieces: Vec<GradedPiece>,
    /// `(n, k)` selecting the coefficients `B_{n,k,i}`.
    pub row: (usize, usize),
}

impl TriangulationData {
    fn build(
        family: Family,
        weight_dim: usize,
        hecke_dim: usize,
        raw: Vec<(WeightLinearForm, EigenMonomial)>,
        row: (usize, usize),
    ) -> Result<Self> {
        let pieces = raw
            .into_iter()
            .map(|(kappa, f)| {
                let log_form = HeckeLogForm::from_monomial(&f, hecke_dim)?;
                Ok(GradedPiece { kappa, f, log_form })
            })
            .collect::<Result<Vec<_>>>()?;
        if pieces.len() != row.0 + 1 {
            return Err(Error::Internal(format!(
                "{} graded pieces against B-row of length {}",
                pieces.len(),
                row.0 + 1
            )));
        }
        Ok(TriangulationData {
            family,
            weight_dim,
            hecke_dim,
            pieces,
            row,
        })
    }
}

fn a(j: usize) -> EigenMonomial {
    EigenMonomial::symbol(&hecke_symbol(j))
}

fn p_pow(e: Scalar) -> EigenMonomial {
    EigenMonomial::power("p", e)
}

fn unit(dim: usize, j: usize, c: Scalar) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[j] = c;
    v
}

pub fn family_data(family: Family) -> Result<TriangulationData> {
    match family {
        Family::Hilbert => {
            // Coordinates: u_1 <-> k_v, u_0 <-> w.
            let raw = vec![
                (
                    WeightLinearForm::new(vec![frac(-1, 2)], frac(1, 2), int(0)),
                    a(1).inv().mul(&p_pow(frac(3, 2))),
                ),
                (
                    WeightLinearForm::new(vec![frac(1, 2)], frac(1, 2), int(-1)),
                    a(1).mul(&p_pow(frac(-1, 2))),
                ),
            ];
            TriangulationData::build(family, 1, 1, raw, (1, 1))
        }
        Family::Gsp4Spin => {
            let id = WeylElement::identity(2);
            let c1 = c_constant(2, 1, &id)?;
            let c2 = c_constant(2, 2, &id)?;
            let h = frac(1, 2);
            let kappa = |s1: i64, s2: i64, k: i64| {
                WeightLinearForm::new(vec![int(s1) * &h, int(s2) * &h], h.clone(), int(k))
            };
            let raw = vec![
                (kappa(-1, -1, 0), p_pow(&c2 - frac(3, 2)).mul(&a(2).inv())),
                (
                    kappa(-1, 1, 1),
                    p_pow(&c1 - &c2 - frac(5, 2)).mul(&a(2).div(&a(1))),
                ),
                (
                    kappa(1, -1, 2),
                    p_pow(&c2 - &c1 - frac(7, 2)).mul(&a(1).div(&a(2))),
                ),
                (kappa(1, 1, 3), p_pow(-&c2 - frac(9, 2)).mul(&a(2))),
            ];
            TriangulationData::build(family, 2, 2, raw, (3, 3))
        }
        Family::GspStd { n } => {
            if n < 2 {
                return Err(Error::Precondition(format!(
                    "standard GSp(2n) family needs n >= 2, got {n}"
                )));
            }
            let id = WeylElement::identity(n);
            let c = (1..=n)
                .map(|i| c_constant(n, i, &id))
                .collect::<Result<Vec<_>>>()?;
            // F_{n+1+j} for j = 1..n, before the +-1 power.
            let mut upper = vec![EigenMonomial::one(); n + 1];
            upper[n] = p_pow(-&c[0] - int(1)).mul(&a(1));
            upper[1] = p_pow(int(2) * &c[n - 1] - &c[n - 2] - int(n as i64))
                .mul(&a(n - 1).div(&a(n).pow(&int(2))));
            for i in 2..n {
                upper[n + 1 - i] =
                    p_pow(&c[i - 1] - &c[i - 2] - int(i as i64)).mul(&a(i - 1).div(&a(i)));
            }
            let mut raw = Vec::with_capacity(2 * n + 1);
            for j in (1..=n).rev() {
                // kappa_{n+1-j} = -(mu_{n+1-j} + j)
                let kappa =
                    WeightLinearForm::new(unit(n, n - j, int(-1)), int(0), int(-(j as i64)));
                raw.push((kappa, upper[j].inv()));
            }
            raw.push((
                WeightLinearForm::new(vec![Scalar::zero(); n], int(0), int(0)),
                EigenMonomial::one(),
            ));
            for (j, f) in upper.iter().enumerate().skip(1) {
                let kappa = WeightLinearForm::new(unit(n, n - j, int(1)), int(0), int(j as i64));
                raw.push((kappa, f.clone()));
            }
            TriangulationData::build(family, n, n, raw, (2 * n, 2 * n - 1))
        }
        Family::Unitary { n, k } => {
            let rank = 4 * n;
            if n == 0 || k > rank - 1 {
                return Err(Error::Precondition(format!(
                    "unitary family needs n >= 1 and k <= 4n - 1, got n = {n}, k = {k}"
                )));
            }
            let raw = (1..=rank)
                .map(|i| {
                    let kappa =
                        WeightLinearForm::new(unit(rank, i - 1, int(-1)), int(0), int(i as i64));
                    let f = p_pow(frac(rank as i64 - 1, 2) - int(i as i64)).mul(&a(i));
                    (kappa, f)
                })
                .collect();
            TriangulationData::build(family, rank, rank, raw, (rank - 1, k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logs(d: &TriangulationData) -> Vec<Vec<i64>> {
        d.pieces.iter().map(|p| p.log_form.coeffs.clone()).collect()
    }

    #[test]
    fn hilbert_data() {
        let d = family_data(Family::Hilbert).unwrap();
        assert_eq!(logs(&d), vec![vec![-1], vec![1]]);
        assert_eq!(d.pieces[0].f.exponent("p"), frac(3, 2));
    }

    #[test]
    fn gsp4_data() {
        let d = family_data(Family::Gsp4Spin).unwrap();
        assert_eq!(
            logs(&d),
            vec![vec![0, -1], vec![-1, 1], vec![1, -1], vec![0, 1]]
        );
        let u = [int(1), int(0)];
        let derivs: Vec<Scalar> = d
            .pieces
            .iter()
            .map(|p| p.kappa.derivative(&u, &int(0)).unwrap())
            .collect();
        assert_eq!(
            derivs,
            vec![frac(-1, 2), frac(-1, 2), frac(1, 2), frac(1, 2)]
        );
    }

    #[test]
    fn gsp_std_data() {
        let d = family_data(Family::GspStd { n: 3 }).unwrap();
        assert_eq!(d.pieces.len(), 7);
        assert_eq!(
            logs(&d),
            vec![
                vec![-1, 0, 0],
                vec![-1, 1, 0],
                vec![0, -1, 2],
                vec![0, 0, 0],
                vec![0, 1, -2],
                vec![1, -1, 0],
                vec![1, 0, 0],
            ]
        );
        // kappa_{n+1+i} = mu_{n+1-i} + i
        let top = &d.pieces[6].kappa;
        assert_eq!(
            top.evaluate(&[int(5), int(3), int(1)], &int(0)).unwrap(),
            int(8)
        );
        assert!(family_data(Family::GspStd { n: 1 }).is_err());
    }

    #[test]
    fn unitary_data() {
        let d = family_data(Family::Unitary { n: 1, k: 3 }).unwrap();
        assert_eq!(d.pieces.len(), 4);
        for (i, p) in d.pieces.iter().enumerate() {
            let mut expected = vec![0; 4];
            expected[i] = 1;
            assert_eq!(p.log_form.coeffs, expected);
            assert_eq!(p.f.exponent("p"), frac(3, 2) - int(i as i64 + 1));
        }
        assert!(family_data(Family::Unitary { n: 1, k: 4 }).is_err());
    }
}
