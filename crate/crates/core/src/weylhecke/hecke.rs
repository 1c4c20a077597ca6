use num_traits::Zero;

use super::weyl::{weyl_conjugate, TorusExponent, WeylElement};
use crate::error::{Error, Result};
use crate::exactlin::{frac, int, Scalar};
use crate::monomial::EigenMonomial;

/// Values at `p` of the unramified characters `chi_1, ..., chi_g, sigma` of
/// the principal series `chi_1 x ... x chi_g x| sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub chi: Vec<EigenMonomial>,
    pub sigma: EigenMonomial,
}

impl CharacterData {
    /// Free symbols `chi_1, ..., chi_g, sigma`.
    pub fn symbolic(g: usize) -> Self {
        CharacterData {
            chi: (1..=g)
                .map(|j| EigenMonomial::symbol(&format!("chi_{j}")))
                .collect(),
            sigma: EigenMonomial::symbol("sigma"),
        }
    }

    pub fn trivial(g: usize) -> Self {
        CharacterData {
            chi: vec![EigenMonomial::one(); g],
            sigma: EigenMonomial::one(),
        }
    }

    pub fn g(&self) -> usize {
        self.chi.len()
    }

    /// `chi_1 ... chi_g sigma^2`, the central character at `p`.
    pub fn determinant(&self) -> EigenMonomial {
        self.chi
            .iter()
            .fold(self.sigma.pow(&int(2)), |acc, c| acc.mul(c))
    }

    /// `chi(t) = sigma^{a_0} prod_j chi_j^{a_j}`.
    pub fn evaluate(&self, t: &TorusExponent) -> EigenMonomial {
        self.chi
            .iter()
            .zip(&t.a)
            .fold(self.sigma.pow(&t.a0), |acc, (c, a)| acc.mul(&c.pow(a)))
    }
}

/// Weight `(mu_1, ..., mu_g; mu_0)` of one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GspWeight {
    pub mu: Vec<Scalar>,
    pub mu0: Scalar,
}

/// `v_p(delta^{1/2}(t)) = g(g+1)/4 a_0 - sum_j (g+1-j) a_j`.
pub fn half_modulus_exponent(t: &TorusExponent) -> Scalar {
    let g = t.g() as i64;
    t.a.iter()
        .enumerate()
        .fold(frac(g * (g + 1), 4) * &t.a0, |acc, (j, a)| {
            acc - int(g - j as i64) * a
        })
}

/// Eigenvalue of `[Iw t Iw]` on the Iwahori vector attached to `w`:
/// `delta^{1/2}(s) chi(s)` with `s = w^{-1} t w`.
pub fn hecke_diagonal(
    chi: &CharacterData,
    t: &TorusExponent,
    w: &WeylElement,
) -> Result<EigenMonomial> {
    if chi.g() != t.g() {
        return Err(Error::DimensionMismatch(format!(
            "{} characters for a torus of genus {}",
            chi.g(),
            t.g()
        )));
    }
    let s = weyl_conjugate(w, t)?;
    Ok(EigenMonomial::power("p", half_modulus_exponent(&s)).mul(&chi.evaluate(&s)))
}

/// `beta_0 = (0, ..., 0; -1)` and for `j >= 1`, `beta_j` has `-1` in the
/// last `j` positions and `a_0 = -2`.
pub fn beta(g: usize, j: usize) -> Result<TorusExponent> {
    if j >= g.max(1) {
        return Err(Error::OutOfRange(format!("beta_{j} needs j < g = {g}")));
    }
    if j == 0 {
        return Ok(TorusExponent::new(vec![Scalar::zero(); g], int(-1)));
    }
    let a = (0..g)
        .map(|l| if l >= g - j { int(-1) } else { int(0) })
        .collect();
    Ok(TorusExponent::new(a, int(-2)))
}

/// Torus element of `U_{p,i} = [Iw beta_{g-i} Iw]`, `1 <= i <= g`.
pub fn u_p_torus(g: usize, i: usize) -> Result<TorusExponent> {
    if i == 0 || i > g {
        return Err(Error::OutOfRange(format!(
            "U_(p,{i}) needs 1 <= i <= g = {g}"
        )));
    }
    beta(g, g - i)
}

/// `c_{i,nu,eps}`, the power of `p` in the `U_{p,i}` eigenvalue family:
///
/// ```text
/// i < g:  sum_{nu(j)>i} (g+1-j) + 2 sum_{nu(j)<=i, eps(j)=-1} (g+1-j) - g(g+1)/2
/// i = g:  sum_{eps(j)=-1} (g+1-j) - g(g+1)/4
/// ```
pub fn c_constant(g: usize, i: usize, w: &WeylElement) -> Result<Scalar> {
    if w.g() != g {
        return Err(Error::DimensionMismatch(format!(
            "Weyl element of genus {} for g = {g}",
            w.g()
        )));
    }
    if i == 0 || i > g {
        return Err(Error::OutOfRange(format!("c_(i) needs 1 <= i <= g = {g}")));
    }
    let gg = g as i64;
    let mut acc = Scalar::zero();
    for j in 0..g {
        let weight = gg - j as i64; // g + 1 - (j+1)
        let nu_j = w.nu()[j] + 1;
        let flipped = w.eps()[j] == -1;
        if i == g {
            if flipped {
                acc += int(weight);
            }
        } else if nu_j > i {
            acc += int(weight);
        } else if flipped {
            acc += int(2 * weight);
        }
    }
    Ok(if i == g {
        acc - frac(gg * (gg + 1), 4)
    } else {
        acc - frac(gg * (gg + 1), 2)
    })
}

/// The `U_{p,i}` eigenvalue written as a closed family:
///
/// ```text
/// i < g:  p^{c_i} sigma^{-2} prod_{nu(j)>i} chi_j^{-1} prod_{nu(j)<=i, eps(j)=-1} chi_j^{-2}
/// i = g:  p^{c_g} sigma^{-1} prod_{eps(j)=-1} chi_j^{-1}
/// ```
pub fn u_p_eigenvalue(chi: &CharacterData, i: usize, w: &WeylElement) -> Result<EigenMonomial> {
    let g = chi.g();
    let c = c_constant(g, i, w)?;
    let mut out = EigenMonomial::power("p", c);
    if i == g {
        out = out.mul(&chi.sigma.inv());
        for j in 0..g {
            if w.eps()[j] == -1 {
                out = out.mul(&chi.chi[j].inv());
            }
        }
    } else {
        out = out.mul(&chi.sigma.pow(&int(-2)));
        for j in 0..g {
            if w.nu()[j] + 1 > i {
                out = out.mul(&chi.chi[j].inv());
            } else if w.eps()[j] == -1 {
                out = out.mul(&chi.chi[j].pow(&int(-2)));
            }
        }
    }
    Ok(out)
}

/// `v_p(lambda(t))` for `lambda = (mu_1, ..., mu_g; mu_0)`, using
/// `lambda(t) = prod_l (x_l z^{-1/2})^{mu_l} z^{mu_0/2}`.
pub fn lambda_valuation(weight: &GspWeight, t: &TorusExponent) -> Result<Scalar> {
    if weight.mu.len() != t.g() {
        return Err(Error::DimensionMismatch(format!(
            "weight of genus {} on torus of genus {}",
            weight.mu.len(),
            t.g()
        )));
    }
    let half = frac(1, 2) * &t.a0;
    Ok(weight
        .mu
        .iter()
        .zip(&t.a)
        .fold(&weight.mu0 * &half, |acc, (m, a)| acc + m * (a - &half)))
}

/// Normalized eigenvalues `theta(U_{p,i}) = alpha_i / |lambda(beta_{g-i})|_p`,
/// with `|p^x|_p = p^{-x}`.
pub fn normalized_eigenvalues(
    chi: &CharacterData,
    weight: &GspWeight,
    w: &WeylElement,
) -> Result<Vec<EigenMonomial>> {
    let g = chi.g();
    (1..=g)
        .map(|i| {
            let t = u_p_torus(g, i)?;
            let alpha = hecke_diagonal(chi, &t, w)?;
            Ok(alpha.mul(&EigenMonomial::power("p", lambda_valuation(weight, &t)?)))
        })
        .collect()
}

/// Solves the `U_{p,i}` eigenvalues for the characters, using
/// `chi_1 ... chi_g sigma^2 (p) = p^{mu_0}`. With `j_i = nu^{-1}(i)`:
///
/// ```text
/// chi_{j_1}^{eps(j_1)}  = p^{mu_0 - c_1} alpha_1
/// chi_{j_i}^{-eps(j_i)} = p^{c_i - c_{i-1}} alpha_{i-1} / alpha_i       (1 < i < g)
/// chi_{j_g}^{-eps(j_g)} = p^{2 c_g - c_{g-1}} alpha_{g-1} / alpha_g^2
/// ```
///
/// and then `sigma` from `alpha_g`. The answer is checked by recomputing
/// every eigenvalue.
pub fn recover_characters(
    normalized: &[EigenMonomial],
    weight: &GspWeight,
    w: &WeylElement,
) -> Result<CharacterData> {
    let g = normalized.len();
    if g < 2 {
        return Err(Error::Precondition(
            "character recovery needs g >= 2".into(),
        ));
    }
    if weight.mu.len() != g || w.g() != g {
        return Err(Error::DimensionMismatch(format!(
            "{g} eigenvalues against weight of genus {} and Weyl element of genus {}",
            weight.mu.len(),
            w.g()
        )));
    }
    // alpha[i-1] is the U_{p,i} eigenvalue.
    let alpha: Vec<EigenMonomial> = (1..=g)
        .map(|i| {
            let v = lambda_valuation(weight, &u_p_torus(g, i)?)?;
            Ok(normalized[i - 1].mul(&EigenMonomial::power("p", -v)))
        })
        .collect::<Result<_>>()?;
    let c: Vec<Scalar> = (1..=g)
        .map(|i| c_constant(g, i, w))
        .collect::<Result<_>>()?;
    let p = |e: Scalar| EigenMonomial::power("p", e);
    let mut chi = vec![EigenMonomial::one(); g];
    let j1 = w.nu_inverse(0);
    chi[j1] = p(&weight.mu0 - &c[0])
        .mul(&alpha[0])
        .pow(&int(w.eps()[j1].into()));
    for i in 2..g {
        let j = w.nu_inverse(i - 1);
        chi[j] = p(&c[i - 1] - &c[i - 2])
            .mul(&alpha[i - 2].div(&alpha[i - 1]))
            .pow(&int(-i64::from(w.eps()[j])));
    }
    let jg = w.nu_inverse(g - 1);
    chi[jg] = p(int(2) * &c[g - 1] - &c[g - 2])
        .mul(&alpha[g - 2].div(&alpha[g - 1].pow(&int(2))))
        .pow(&int(-i64::from(w.eps()[jg])));
    let mut sigma = p(c[g - 1].clone()).div(&alpha[g - 1]);
    for (c, &e) in chi.iter().zip(w.eps()) {
        if e == -1 {
            sigma = sigma.div(c);
        }
    }
    let data = CharacterData { chi, sigma };
    if normalized_eigenvalues(&data, weight, w)? != normalized {
        return Err(Error::Inversion(
            "eigenvalues are inconsistent with the central character p^mu_0".into(),
        ));
    }
    Ok(data)
}

/// Unitary normalization: `U_{p,i}` acts on the Iwahori vector by
/// `chi_i(p) p^{-(n-1)/2}`.
pub fn unitary_u_eigenvalues(chi: &[EigenMonomial]) -> Vec<EigenMonomial> {
    let n = chi.len() as i64;
    chi.iter()
        .map(|c| c.mul(&EigenMonomial::power("p", frac(-(n - 1), 2))))
        .collect()
}
