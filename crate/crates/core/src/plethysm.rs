//! Inverse Clebsch-Gordan coefficients and the `B_{n,k,i}` coefficients of
//! the projection `End(V_n) -> V_{2k}`.
//!
//! `C_{m,n,p}^{u,v,w}` is the coefficient of `g_{p,w}` in the image of
//! `g_{m,u} (x) g_{n,v}` under the equivariant projection `V_m (x) V_n -> V_p`.
//! It vanishes unless `u + v - w = (m + n - p)/2`, starts from
//! `C^{u,v,0} = (-1)^u (m-u)! (n-v)!` and ascends in `w` by
//!
//! ```text
//! w C^{u,v,w} = u C^{u-1,v,w-1} + v C^{u,v-1,w-1}.
//! ```

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{binomial, factorial, from_bigint, int, sign_pow, Matrix, Scalar};
use crate::sl2rep::{EndoElement, RepVector};

/// All `C_{m,n,p}^{u,v,w}` for `u <= m`, `v <= n`, `w <= p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgTable {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    values: Vec<Scalar>,
}

fn check_triple(m: usize, n: usize, p: usize) -> Result<()> {
    if p > m + n || p + m < n || p + n < m || (m + n + p) % 2 == 1 {
        return Err(Error::Precondition(format!(
            "V_{p} is not a constituent of V_{m} (x) V_{n}"
        )));
    }
    Ok(())
}

impl CgTable {
    pub fn new(m: usize, n: usize, p: usize) -> Result<Self> {
        check_triple(m, n, p)?;
        let s = (m + n - p) / 2;
        let mut t = CgTable {
            m,
            n,
            p,
            values: vec![Scalar::zero(); (m + 1) * (n + 1) * (p + 1)],
        };
        for u in 0..=s.min(m) {
            let v = s - u;
            if v <= n {
                let c = sign_pow(u as i64)
                    * from_bigint(factorial((m - u) as u64) * factorial((n - v) as u64));
                *t.slot(u, v, 0) = c;
            }
        }
        for w in 1..=p {
            for u in 0..=m {
                let Some(v) = (s + w).checked_sub(u) else {
                    continue;
                };
                if v > n {
                    continue;
                }
                let mut acc = Scalar::zero();
                if u > 0 {
                    acc += int(u as i64) * t.get(u - 1, v, w - 1);
                }
                if v > 0 {
                    acc += int(v as i64) * t.get(u, v - 1, w - 1);
                }
                *t.slot(u, v, w) = acc / int(w as i64);
            }
        }
        Ok(t)
    }

    fn index(&self, u: usize, v: usize, w: usize) -> usize {
        (u * (self.n + 1) + v) * (self.p + 1) + w
    }

    fn slot(&mut self, u: usize, v: usize, w: usize) -> &mut Scalar {
        let i = self.index(u, v, w);
        &mut self.values[i]
    }

    /// Coefficient with out-of-range indices read as zero.
    pub fn get(&self, u: usize, v: usize, w: usize) -> Scalar {
        if u > self.m || v > self.n || w > self.p {
            return Scalar::zero();
        }
        self.values[self.index(u, v, w)].clone()
    }

    /// `(m + n - p)/2`, the value of `u + v - w` on the support.
    pub fn stratum(&self) -> usize {
        (self.m + self.n - self.p) / 2
    }

    /// Entries on the support stratum, lexicographic in `(u, v, w)`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let s = self.stratum();
        let mut out = Vec::new();
        for u in 0..=self.m {
            for v in 0..=self.n {
                if u + v >= s && u + v - s <= self.p {
                    let w = u + v - s;
                    out.push((u, v, w, self.get(u, v, w)));
                }
            }
        }
        out
    }

    /// First index where either recurrence fails, if any.
    ///
    /// The descending recurrence
    /// `(p-w) C^{u,v,w} = (m-u) C^{u+1,v,w+1} + (n-v) C^{u,v+1,w+1}`
    /// is not used to build the table, so it is an independent check.
    pub fn recurrence_violation(&self) -> Option<(usize, usize, usize)> {
        let (m, n, p) = (self.m, self.n, self.p);
        for u in 0..=m {
            for v in 0..=n {
                for w in 0..=p {
                    let lhs = int((p - w) as i64) * self.get(u, v, w);
                    let rhs = int((m - u) as i64) * self.get(u + 1, v, w + 1)
                        + int((n - v) as i64) * self.get(u, v + 1, w + 1);
                    if lhs != rhs {
                        return Some((u, v, w));
                    }
                    if w > 0 {
                        let mut acc = Scalar::zero();
                        if u > 0 {
                            acc += int(u as i64) * self.get(u - 1, v, w - 1);
                        }
                        if v > 0 {
                            acc += int(v as i64) * self.get(u, v - 1, w - 1);
                        }
                        if int(w as i64) * self.get(u, v, w) != acc {
                            return Some((u, v, w));
                        }
                    }
                }
            }
        }
        None
    }

    /// Image in `V_p` of a tensor whose entry `(u, v)` multiplies
    /// `g_{m,u} (x) g_{n,v}`.
    pub fn apply(&self, tensor: &Matrix) -> Result<RepVector> {
        if tensor.rows() != self.m + 1 || tensor.cols() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} tensor for V_{} (x) V_{}",
                tensor.rows(),
                tensor.cols(),
                self.m,
                self.n
            )));
        }
        let mut out = vec![Scalar::zero(); self.p + 1];
        for (u, v, w, c) in self.entries() {
            let x = &tensor[(u, v)];
            if !x.is_zero() && !c.is_zero() {
                out[w] += x * c;
            }
        }
        RepVector::new(self.p, out)
    }
}

/// `C_{m,n,p}^{u,v,w}`; zero off the support stratum.
pub fn cg_coefficient(
    m: usize,
    n: usize,
    p: usize,
    u: usize,
    v: usize,
    w: usize,
) -> Result<Scalar> {
    check_triple(m, n, p)?;
    if u > m || v > n || w > p {
        return Err(Error::OutOfRange(format!(
            "(u,v,w) = ({u},{v},{w}) outside 0..={m} x 0..={n} x 0..={p}"
        )));
    }
    Ok(CgTable::new(m, n, p)?.get(u, v, w))
}

/// `B_{n,k,i} = sum_{a+b=k} (-1)^a binom(n,i) binom(i,a) binom(n-i,b) (n-i+a)! (i+b)!`.
pub fn b_coefficient(n: usize, k: usize, i: usize) -> Result<Scalar> {
    if k > n || i > n {
        return Err(Error::OutOfRange(format!(
            "B_({n},{k},{i}) needs k, i <= n"
        )));
    }
    let (n, k, i) = (n as i64, k as i64, i as i64);
    let mut acc = num_bigint::BigInt::zero();
    for a in 0..=k.min(i) {
        let b = k - a;
        if b > n - i {
            continue;
        }
        let term = binomial(i, a)
            * binomial(n - i, b)
            * factorial((n - i + a) as u64)
            * factorial((i + b) as u64);
        if a % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(from_bigint(acc * binomial(n, i)))
}

/// `(B_{n,k,0}, ..., B_{n,k,n})`.
pub fn b_row(n: usize, k: usize) -> Result<Vec<Scalar>> {
    (0..=n).map(|i| b_coefficient(n, k, i)).collect()
}

/// Closed forms of `B_{n,k,i}` for `k` in `{n, n-1, n-2}`.
///
/// The `n-2` case carries `(n-2)!(n-1)!/2`; the often-quoted prefactor
/// without the `1/2` is twice the true coefficient.
pub fn b_special(n: usize, k: usize, i: usize) -> Result<Scalar> {
    if i > n {
        return Err(Error::OutOfRange(format!("i = {i} exceeds n = {n}")));
    }
    let (nn, ii) = (n as i64, i as i64);
    let base = sign_pow(ii) * from_bigint(binomial(nn, ii));
    let f = |x: i64| from_bigint(factorial(x as u64));
    if k == n {
        Ok(base * f(nn) * f(nn))
    } else if k + 1 == n {
        Ok(base * f(nn) * f(nn - 1) * int(nn - 2 * ii))
    } else if k + 2 == n {
        let poly = nn.pow(3) - (4 * ii + 1) * nn * nn + (4 * ii * ii + 2 * ii) * nn - 2 * ii * ii;
        Ok(base * f(nn - 2) * f(nn - 1) * int(poly) / int(2))
    } else {
        Err(Error::Unsupported(format!(
            "no closed form for k = {k} with n = {n}"
        )))
    }
}

/// Result of projecting a diagonal endomorphism to `V_{2k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalProjection {
    /// Coefficient of `g_{2k,k}`, equal to `sum_i B_{n,k,i} diag_i`.
    pub middle: Scalar,
    /// Whether the coefficients of `g_{2k,u}` for `u > k` vanish.
    pub tail_zero: bool,
}

/// Projection `End(V_n) -> V_{2k}`: identify `g_j^v` with
/// `(-1)^j binom(n,j) g_{n-j}` and apply `C_{n,n,2k}`.
pub fn project_endomorphism(t: &EndoElement, k: usize) -> Result<RepVector> {
    let n = t.n;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let mut tensor = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            let c = &t.coeffs[(i, j)];
            if !c.is_zero() {
                tensor[(i, n - j)] =
                    c * sign_pow(j as i64) * from_bigint(binomial(n as i64, j as i64));
            }
        }
    }
    CgTable::new(n, n, 2 * k)?.apply(&tensor)
}

/// Middle coefficient of the `V_{2k}` component of `diag(a_0, ..., a_n)`,
/// from the closed form, plus the vanishing of the tail beyond it.
pub fn project_endomorphism_diagonal(
    n: usize,
    k: usize,
    diag: &[Scalar],
) -> Result<DiagonalProjection> {
    if diag.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} diagonal entries for End(V_{n})",
            diag.len()
        )));
    }
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let row = b_row(n, k)?;
    let middle = row
        .iter()
        .zip(diag)
        .fold(Scalar::zero(), |acc, (b, a)| acc + b * a);
    let full = project_endomorphism(&EndoElement::diagonal(diag)?, k)?;
    let tail_zero = full.coeffs[k + 1..].iter().all(Zero::is_zero);
    Ok(DiagonalProjection { middle, tail_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, proportionality};
    use crate::sl2rep::{brute_force_project, Sl2};
    use proptest::prelude::*;

    #[test]
    fn cg_examples() {
        assert_eq!(cg_coefficient(2, 2, 2, 1, 0, 0).unwrap(), int(-2));
        assert_eq!(cg_coefficient(2, 2, 2, 1, 1, 1).unwrap(), int(0));
        assert_eq!(cg_coefficient(2, 2, 2, 0, 0, 0).unwrap(), int(0));
        assert!(cg_coefficient(2, 2, 3, 0, 0, 0).is_err());
        assert!(cg_coefficient(2, 2, 2, 3, 0, 0).is_err());
    }

    #[test]
    fn printed_b_values() {
        assert_eq!(b_row(1, 1).unwrap(), vec![int(1), int(-1)]);
        assert_eq!(
            b_row(3, 3).unwrap(),
            vec![int(36), int(-108), int(108), int(-36)]
        );
        assert_eq!(b_special(4, 3, 1).unwrap(), int(-1152));
        assert_eq!(b_special(4, 3, 1).unwrap(), b_coefficient(4, 3, 1).unwrap());
        assert!(b_special(5, 1, 0).is_err());
        assert_eq!(b_special(3, 1, 1).unwrap(), int(6));
        for n in 2..=8 {
            for i in 0..=n {
                assert_eq!(
                    b_special(n, n - 2, i).unwrap(),
                    b_coefficient(n, n - 2, i).unwrap()
                );
            }
        }
        for n in 0..=6 {
            assert!(b_row(n, 0)
                .unwrap()
                .iter()
                .all(|b| *b == from_bigint(factorial(n as u64))));
        }
    }

    #[test]
    fn diagonal_projection_examples() {
        let ones = vec![int(1); 2];
        let p = project_endomorphism_diagonal(1, 1, &ones).unwrap();
        assert_eq!(p.middle, int(0));
        assert!(p.tail_zero);
        let p = project_endomorphism_diagonal(1, 1, &[int(7), int(3)]).unwrap();
        assert_eq!(p.middle, int(4));
        assert!(project_endomorphism_diagonal(2, 1, &ones).is_err());
    }

    #[test]
    fn closed_form_matches_recurrence_small() {
        for n in 0..=7 {
            for k in 0..=n {
                let t = CgTable::new(n, n, 2 * k).unwrap();
                for i in 0..=n {
                    let via_cg = sign_pow(i as i64)
                        * from_bigint(binomial(n as i64, i as i64))
                        * t.get(i, n - i, k);
                    assert_eq!(b_coefficient(n, k, i).unwrap(), via_cg, "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn tables_satisfy_both_recurrences() {
        for m in 0usize..=6 {
            for n in 0..=6 {
                for p in (m.abs_diff(n)..=m + n).step_by(2) {
                    let t = CgTable::new(m, n, p).unwrap();
                    assert_eq!(t.recurrence_violation(), None, "C_({m},{n},{p})");
                }
            }
        }
    }

    #[test]
    fn middle_coefficient_tracks_brute_force() {
        let n = 4;
        let k = 2;
        let diag: Vec<Scalar> = [3, -1, 4, 1, -5].iter().map(|&x| int(x)).collect();
        let closed = project_endomorphism_diagonal(n, k, &diag).unwrap().middle;
        let brute =
            brute_force_project(&EndoElement::diagonal(&diag).unwrap(), k).unwrap()[k].clone();
        let unit_closed: Vec<Scalar> = b_row(n, k).unwrap();
        let unit_brute: Vec<Scalar> = (0..=n)
            .map(|i| {
                let mut d = vec![Scalar::zero(); n + 1];
                d[i] = int(1);
                brute_force_project(&EndoElement::diagonal(&d).unwrap(), k).unwrap()[k].clone()
            })
            .collect();
        let scalar = proportionality(&unit_closed, &unit_brute).expect("proportional rows");
        assert_eq!(closed, scalar * brute);
    }

    fn tensor_strategy() -> impl Strategy<Value = (usize, usize, Matrix)> {
        (1usize..=6).prop_flat_map(|n| {
            (
                0..=n,
                prop::collection::vec((-6i64..=6, 1i64..=3), (n + 1) * (n + 1)),
            )
                .prop_map(move |(k, v)| {
                    let data = v.into_iter().map(|(a, b)| frac(a, b)).collect();
                    (n, k, Matrix::new(n + 1, n + 1, data).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn projection_is_equivariant((n, k, x) in tensor_strategy()) {
            let t = CgTable::new(n, n, 2 * k).unwrap();
            let image = t.apply(&x).unwrap();
            for op in [Sl2::L, Sl2::R] {
                // X acts on V_n (x) V_n by X (x) 1 + 1 (x) X.
                let r = crate::sl2rep::rho(op, n);
                let moved = r.mul(&x).unwrap().add(&x.mul(&r.transpose()).unwrap()).unwrap();
                prop_assert_eq!(t.apply(&moved).unwrap(), image.act(op));
            }
        }
    }
}
