//! Filtered (phi, N)-modules of `Sym^{2n}` of a two-dimensional module.
//!
//! The basis is `f_i = e_1^{n+i} e_2^{n-i}` ordered `f_n, f_{n-1}, ..., f_{-n}`,
//! so coordinate `c` holds `f_{n-c}` and equals the exponent of `e_2`.
//! Frobenius is diagonal with symbolic eigenvalues. Monodromy is the
//! derivation extending `N e_2 = e_1`, i.e. `N f_i = (n-i) f_{i+1}`.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{binomial, from_bigint, int, Matrix, Scalar, Subspace};
use crate::monomial::{EigenMonomial, Valuations};

/// Which local representation the module comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiNCase {
    /// Semistable non-crystalline, with nonzero L-invariant parameter.
    Steinberg { l_invariant: Scalar },
    /// Crystalline, split reduction, weight `k >= 2`.
    CrystallineSplit { k: i64 },
    /// Crystalline, non-split reduction.
    CrystallineNonsplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiNModule {
    pub n: usize,
    pub case: PhiNCase,
    /// Eigenvalue of `phi` on each basis vector, in basis order.
    pub phi: Vec<EigenMonomial>,
    pub monodromy: Matrix,
    pub fil0: Subspace,
    pub valuations: Valuations,
}

/// `(D_{-1}, D_0, D_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenoisFiltration {
    pub d_minus1: Subspace,
    pub d0: Subspace,
    pub d1: Subspace,
}

/// Rank of `D_1 / D_0` and the Frobenius eigenvalues on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gr1Data {
    pub rank: usize,
    pub eigenvalues: Vec<EigenMonomial>,
}

/// Label `f_i` of coordinate `c`.
pub fn basis_label(n: usize, c: usize) -> String {
    format!("f_{}", n as i64 - c as i64)
}

/// Coordinate of `f_i`.
pub fn coordinate_of(n: usize, i: i64) -> Result<usize> {
    if i.unsigned_abs() as usize > n {
        return Err(Error::OutOfRange(format!("f_{i} with n = {n}")));
    }
    Ok((n as i64 - i) as usize)
}

/// `<f_hi, ..., f_lo>`.
pub fn span_f(n: usize, hi: i64, lo: i64) -> Result<Subspace> {
    let idx: Vec<usize> = (lo..=hi)
        .map(|i| coordinate_of(n, i))
        .collect::<Result<_>>()?;
    Ok(Subspace::coordinate(2 * n + 1, idx))
}

/// Coefficients of `(x e_1 + y e_2)^a e_1^b e_2^c` by `e_2`-exponent.
fn linear_power_times_monomial(
    deg: usize,
    x: &Scalar,
    y: &Scalar,
    a: usize,
    c: usize,
) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); deg + 1];
    for j in 0..=a {
        let coeff = from_bigint(binomial(a as i64, j as i64)) * pow(x, a - j) * pow(y, j);
        out[j + c] += coeff;
    }
    out
}

fn pow(x: &Scalar, e: usize) -> Scalar {
    (0..e).fold(Scalar::one(), |acc, _| acc * x)
}

/// Span of `(x e_1 + y e_2)^a` times every monomial of degree `2n - a`, for
/// `a = n, ..., 2n`. This is the space of multiples of `(x e_1 + y e_2)^n`.
fn linear_power_filtration(n: usize, x: &Scalar, y: &Scalar) -> Result<Subspace> {
    let deg = 2 * n;
    let mut gens = Vec::new();
    for a in n..=deg {
        for c in 0..=deg - a {
            gens.push(linear_power_times_monomial(deg, x, y, a, c));
        }
    }
    Subspace::span(deg + 1, &gens)
}

/// Monodromy matrix `N f_i = (n-i) f_{i+1}`.
fn derivation_monodromy(n: usize) -> Matrix {
    let d = 2 * n + 1;
    let mut m = Matrix::zeros(d, d);
    // Column c is f_{n-c}; its image (n - (n-c)) f_{n-c+1} sits at row c-1.
    for c in 1..d {
        m[(c - 1, c)] = int(c as i64);
    }
    m
}

/// Constructs the module for the given case.
pub fn build_case(n: usize, case: PhiNCase) -> Result<PhiNModule> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let d = 2 * n + 1;
    let f_index = |c: usize| n as i64 - c as i64;
    let (phi, monodromy, fil0, valuations) = match &case {
        PhiNCase::Steinberg { l_invariant } => {
            if l_invariant.is_zero() {
                return Err(Error::Precondition(
                    "the L-invariant parameter must be nonzero".into(),
                ));
            }
            let phi = (0..d)
                .map(|c| EigenMonomial::power("p", int(-f_index(c))))
                .collect();
            // Multiples of (e_2 - L e_1)^n.
            let fil = linear_power_filtration(n, &-l_invariant.clone(), &Scalar::one())?;
            (phi, derivation_monodromy(n), fil, Valuations::new())
        }
        PhiNCase::CrystallineSplit { k } => {
            if *k < 2 {
                return Err(Error::Precondition(format!(
                    "weight k = {k} must be at least 2"
                )));
            }
            let phi = (0..d)
                .map(|c| {
                    let i = f_index(c);
                    EigenMonomial::power("alpha", int(2 * i))
                        .mul(&EigenMonomial::power("p", int(i * (k - 1))))
                })
                .collect();
            // The filtration is split: its tangent space is <f_1, ..., f_n>.
            let fil = span_f(n, 0, -(n as i64))?;
            (
                phi,
                Matrix::zeros(d, d),
                fil,
                Valuations::new().with("alpha", int(0)),
            )
        }
        PhiNCase::CrystallineNonsplit => {
            let phi = (0..d)
                .map(|c| EigenMonomial::power("r", int(f_index(c))))
                .collect();
            let fil = linear_power_filtration(n, &Scalar::one(), &Scalar::one())?;
            (
                phi,
                Matrix::zeros(d, d),
                fil,
                Valuations::new().with("r", int(0)),
            )
        }
    };
    let m = PhiNModule {
        n,
        case,
        phi,
        monodromy,
        fil0,
        valuations,
    };
    m.check()?;
    Ok(m)
}

impl PhiNModule {
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    fn check(&self) -> Result<()> {
        if !self.phi.iter().all_unique() {
            return Err(Error::Unsupported("repeated Frobenius eigenvalues".into()));
        }
        // N phi = p phi N on the eigenbasis: N maps the lambda-eigenline into
        // the (lambda/p)-eigenline.
        let p = EigenMonomial::symbol("p");
        for c in 0..self.dim() {
            for r in 0..self.dim() {
                if !self.monodromy[(r, c)].is_zero() && self.phi[r] != self.phi[c].div(&p) {
                    return Err(Error::Internal(format!(
                        "monodromy does not satisfy N phi = p phi N at ({r}, {c})"
                    )));
                }
            }
        }
        if self.fil0.dim() != self.n + 1 {
            return Err(Error::Internal(format!(
                "Fil^0 has dimension {}, expected {}",
                self.fil0.dim(),
                self.n + 1
            )));
        }
        Ok(())
    }

    /// `D^{phi = lambda}` inside `D`, for `D` spanned by eigenvectors.
    fn eigen_part(&self, d: &Subspace, pred: impl Fn(&EigenMonomial) -> bool) -> Result<Subspace> {
        let support = self.eigen_support(d)?;
        Ok(Subspace::coordinate(
            self.dim(),
            support.into_iter().filter(|&c| pred(&self.phi[c])),
        ))
    }

    /// Basis vectors lying in `D`; errors unless they span it.
    fn eigen_support(&self, d: &Subspace) -> Result<Vec<usize>> {
        if d.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of Q^{} in a module of dimension {}",
                d.ambient_dim(),
                self.dim()
            )));
        }
        let support: Vec<usize> = (0..self.dim())
            .filter(|&c| {
                d.contains(&Subspace::coordinate(self.dim(), [c]).basis()[0])
                    .unwrap_or(false)
            })
            .collect();
        if support.len() != d.dim() {
            return Err(Error::Precondition(
                "subspace is not stable under phi".into(),
            ));
        }
        Ok(support)
    }

    fn is_n_stable(&self, d: &Subspace) -> Result<bool> {
        Subspace::image(&self.monodromy, d)?.is_subspace_of(d)
    }

    /// All `(phi, N)`-stable subspaces, by dimension and then coordinates.
    ///
    /// `phi` has distinct eigenvalues, so these are the coordinate subspaces
    /// closed under `N`.
    pub fn stable_submodules(&self) -> Vec<Subspace> {
        let d = self.dim();
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for mask in 0u64..(1u64 << d) {
            let set: Vec<usize> = (0..d).filter(|&c| mask >> c & 1 == 1).collect();
            let closed = set
                .iter()
                .all(|&c| (0..d).all(|r| self.monodromy[(r, c)].is_zero() || mask >> r & 1 == 1));
            if closed {
                out.push((set.len(), set));
            }
        }
        out.sort();
        out.into_iter()
            .map(|(_, s)| Subspace::coordinate(d, s))
            .collect()
    }

    /// Stable subspaces complementary to `Fil^0`.
    pub fn regular_submodules(&self) -> Result<Vec<Subspace>> {
        let want = self.dim() - self.fil0.dim();
        let mut out = Vec::new();
        for s in self.stable_submodules() {
            if s.dim() == want && s.intersect(&self.fil0)?.dim() == 0 {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// `<f_n, ..., f_1>`, the regular submodule used for the filtration.
    pub fn chosen_submodule(&self) -> Subspace {
        span_f(self.n, self.n as i64, 1).expect("indices in range")
    }

    /// Benois' filtration of `D_st` attached to a regular submodule `D`:
    /// `D_{-1} = (1 - p^{-1} phi^{-1}) D + N(D^{phi=1})` and
    /// `D_1 = D + D_st^{phi=1} cap N^{-1}(D^{phi=p^{-1}})`.
    pub fn benois_filtration(&self, d: &Subspace) -> Result<BenoisFiltration> {
        let support = self.eigen_support(d)?;
        if !self.is_n_stable(d)? {
            return Err(Error::Precondition("subspace is not stable under N".into()));
        }
        let one = EigenMonomial::one();
        let p_inv = EigenMonomial::power("p", int(-1));
        // 1 - p^{-1} phi^{-1} is invertible on every eigenline but p^{-1}.
        let moved = Subspace::coordinate(
            self.dim(),
            support.iter().copied().filter(|&c| self.phi[c] != p_inv),
        );
        let fixed = self.eigen_part(d, |l| *l == one)?;
        let d_minus1 = moved.sum(&Subspace::image(&self.monodromy, &fixed)?)?;
        let full_fixed = self.eigen_part(&Subspace::full(self.dim()), |l| *l == one)?;
        let d_p_inv = self.eigen_part(d, |l| *l == p_inv)?;
        let pulled = Subspace::preimage(&self.monodromy, &d_p_inv)?;
        let d1 = d.sum(&full_fixed.intersect(&pulled)?)?;
        Ok(BenoisFiltration {
            d_minus1,
            d0: d.clone(),
            d1,
        })
    }

    pub fn gr1_data(&self, d: &Subspace) -> Result<Gr1Data> {
        let f = self.benois_filtration(d)?;
        let support = self.eigen_support(&f.d1)?;
        let eigenvalues = support
            .into_iter()
            .filter(|&c| {
                !f.d0
                    .contains(&Subspace::coordinate(self.dim(), [c]).basis()[0])
                    .unwrap_or(true)
            })
            .map(|c| self.phi[c].clone())
            .collect::<Vec<_>>();
        Ok(Gr1Data {
            rank: f.d1.dim() - f.d0.dim(),
            eigenvalues,
        })
    }
}

/// `Fil^0` cut out by vanishing conditions instead of generators.
///
/// A form `Q` of degree `2n` is a multiple of `(x e_1 + y e_2)^n` iff
/// `q(t) = Q(1, t)` vanishes to order `n` at `t = -x/y` (for `y != 0`).
pub fn fil0_by_divisibility(n: usize, x: &Scalar, y: &Scalar) -> Result<Subspace> {
    let deg = 2 * n;
    let mut conds = Vec::new();
    if !y.is_zero() {
        // Dehomogenise at e_1 = 1: q(t) = sum_c Q_c t^c, root t0 = -x/y.
        let t0 = -(x / y);
        for j in 0..n {
            let row: Vec<Scalar> = (0..=deg)
                .map(|c| {
                    if c < j {
                        Scalar::zero()
                    } else {
                        from_bigint(falling(c, j)) * pow(&t0, c - j)
                    }
                })
                .collect();
            conds.push(row);
        }
    } else {
        // (x e_1)^n divides Q iff the top n powers of e_2 vanish.
        for c in deg + 1 - n..=deg {
            let mut row = vec![Scalar::zero(); deg + 1];
            row[c] = Scalar::one();
            conds.push(row);
        }
    }
    Subspace::span(deg + 1, &Matrix::from_rows(deg + 1, &conds)?.kernel())
}

fn falling(c: usize, j: usize) -> num_bigint::BigInt {
    (0..j).fold(num_bigint::BigInt::one(), |acc, t| acc * (c - t))
}

/// Whether the generator description of `Fil^0` agrees with the divisibility
/// description for the given case.
pub fn fil0_descriptions_agree(m: &PhiNModule) -> Result<bool> {
    let alt = match &m.case {
        PhiNCase::Steinberg { l_invariant } => {
            fil0_by_divisibility(m.n, &-l_invariant.clone(), &Scalar::one())?
        }
        PhiNCase::CrystallineNonsplit => fil0_by_divisibility(m.n, &Scalar::one(), &Scalar::one())?,
        PhiNCase::CrystallineSplit { .. } => return Ok(true),
    };
    Ok(alt == m.fil0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;

    fn steinberg(n: usize) -> PhiNModule {
        build_case(
            n,
            PhiNCase::Steinberg {
                l_invariant: frac(3, 2),
            },
        )
        .unwrap()
    }

    #[test]
    fn steinberg_monodromy_n1() {
        let m = steinberg(1);
        // Reading down the superdiagonal on (f_1, f_0, f_-1): N f_0 = f_1, N f_-1 = 2 f_0.
        assert_eq!(m.monodromy[(0, 1)], int(1));
        assert_eq!(m.monodromy[(1, 2)], int(2));
        assert_eq!(m.phi[0], EigenMonomial::power("p", int(-1)));
        assert_eq!(m.phi[2], EigenMonomial::symbol("p"));
    }

    #[test]
    fn steinberg_needs_nonzero_parameter() {
        assert!(build_case(
            2,
            PhiNCase::Steinberg {
                l_invariant: int(0)
            }
        )
        .is_err());
        assert!(build_case(2, PhiNCase::CrystallineSplit { k: 1 }).is_err());
        assert!(build_case(0, PhiNCase::CrystallineNonsplit).is_err());
    }

    #[test]
    fn steinberg_n1_regular_and_filtration() {
        let m = steinberg(1);
        let regs = m.regular_submodules().unwrap();
        assert_eq!(regs, vec![span_f(1, 1, 1).unwrap()]);
        let f = m.benois_filtration(&regs[0]).unwrap();
        assert_eq!(f.d_minus1, Subspace::zero(3));
        assert_eq!(f.d1, span_f(1, 1, 0).unwrap());
        let g = m.gr1_data(&regs[0]).unwrap();
        assert_eq!(g.rank, 1);
        assert_eq!(g.eigenvalues, vec![EigenMonomial::one()]);
    }

    #[test]
    fn split_case_has_one_regular_submodule() {
        let m = build_case(2, PhiNCase::CrystallineSplit { k: 4 }).unwrap();
        assert_eq!(
            m.regular_submodules().unwrap(),
            vec![span_f(2, 2, 1).unwrap()]
        );
        assert_eq!(m.phi[0].valuation(&m.valuations).unwrap(), int(6));
    }

    #[test]
    fn nonsplit_every_coordinate_choice_is_regular() {
        let m = build_case(2, PhiNCase::CrystallineNonsplit).unwrap();
        assert_eq!(m.regular_submodules().unwrap().len(), 10);
    }

    #[test]
    fn stable_submodules_of_steinberg_form_a_chain() {
        let m = steinberg(2);
        let s = m.stable_submodules();
        assert_eq!(s.len(), 6);
        for (j, sub) in s.iter().enumerate() {
            assert_eq!(sub.dim(), j);
            if j > 0 {
                assert_eq!(*sub, span_f(2, 2, 3 - j as i64).unwrap());
            }
        }
    }

    #[test]
    fn filtration_rejects_unstable_input() {
        let m = steinberg(1);
        // <f_0> is phi-stable but N f_0 = f_1 leaves it.
        assert!(m.benois_filtration(&span_f(1, 0, 0).unwrap()).is_err());
        let v = vec![int(1), int(1), int(0)];
        assert!(m
            .benois_filtration(&Subspace::span(3, &[v]).unwrap())
            .is_err());
    }

    #[test]
    fn fil0_descriptions_agree_small() {
        for n in 1..=6 {
            assert!(fil0_descriptions_agree(&steinberg(n)).unwrap());
            assert!(fil0_descriptions_agree(
                &build_case(n, PhiNCase::CrystallineNonsplit).unwrap()
            )
            .unwrap());
        }
    }
}
