use num_traits::{Signed, Zero};

use super::hecke::{lambda_valuation, GspWeight};
use super::weyl::TorusExponent;
use crate::error::{Error, Result};
use crate::exactlin::{frac, int, Scalar};

/// Noncritical slope for a Hilbert form of weight `(k_1, ..., k_d; w)`:
/// `sum_i ((w + k_i - 2)/2 + v_p(alpha_i)) < min k_i - 1`.
pub fn slope_check_hilbert(k: &[i64], w: i64, slopes: &[Scalar]) -> Result<bool> {
    if k.is_empty() || k.len() != slopes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights and {} slopes",
            k.len(),
            slopes.len()
        )));
    }
    if let Some(bad) = k.iter().find(|&&ki| ki < 2 || (ki - w).rem_euclid(2) != 0) {
        return Err(Error::Precondition(format!(
            "weight k = {bad} must be at least 2 and congruent to w = {w} mod 2"
        )));
    }
    let lhs = k.iter().zip(slopes).fold(Scalar::zero(), |acc, (&ki, s)| {
        acc + frac(w + ki - 2, 2) + s
    });
    let rhs = int(k.iter().min().expect("nonempty") - 1);
    Ok(lhs < rhs)
}

/// One place of GSp(2g) data for the slope bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GspPlace {
    pub weight: GspWeight,
    /// `v_p(alpha_{v,t})`.
    pub slope: Scalar,
}

fn check_dominant(t: &TorusExponent) -> Result<()> {
    let g = t.g();
    if g == 0 {
        return Err(Error::Precondition("empty torus element".into()));
    }
    let ok = t.a.windows(2).all(|p| p[0] >= p[1]) && t.a[g - 1].clone() * int(2) >= t.a0;
    if !ok {
        return Err(Error::Precondition(format!(
            "t = {t} is not dominant (need a_1 >= ... >= a_g >= a_0/2)"
        )));
    }
    Ok(())
}

/// `(LHS, RHS)` of the slope bound
/// `sum_v (v_p(lambda_v(t)) + v_p(alpha_{v,t})) < min((mu_i - mu_{i+1} + 1)(a_i - a_{i+1}), 2(2 mu_g + 1) a_g)`,
/// the minimum running over places and `i`.
pub fn gsp_slope_sides(places: &[GspPlace], t: &TorusExponent) -> Result<(Scalar, Scalar)> {
    check_dominant(t)?;
    if places.is_empty() {
        return Err(Error::Precondition("no places".into()));
    }
    let g = t.g();
    let mut lhs = Scalar::zero();
    let mut rhs: Option<Scalar> = None;
    for pl in places {
        lhs += lambda_valuation(&pl.weight, t)? + &pl.slope;
        let mu = &pl.weight.mu;
        let mut bounds: Vec<Scalar> = (0..g - 1)
            .map(|i| (&mu[i] - &mu[i + 1] + int(1)) * (&t.a[i] - &t.a[i + 1]))
            .collect();
        bounds.push(int(2) * (int(2) * &mu[g - 1] + int(1)) * &t.a[g - 1]);
        for b in bounds {
            rhs = Some(match rhs {
                Some(r) if r <= b => r,
                _ => b,
            });
        }
    }
    Ok((lhs, rhs.expect("at least one bound")))
}

pub fn slope_check_gsp(places: &[GspPlace], t: &TorusExponent) -> Result<bool> {
    let (lhs, rhs) = gsp_slope_sides(places, t)?;
    Ok(lhs < rhs)
}

/// Change of the left-hand side under the twist by `|.|^m`: at each place
/// `v_p(lambda(t))` gains `m a_0/2` and `v_p(alpha_t)` loses `m a_0`.
pub fn twist_shift(places: usize, t: &TorusExponent, m: i64) -> Scalar {
    int(places as i64) * (frac(m, 2) * &t.a0 - int(m) * &t.a0)
}

/// Smallest `|m|` (trying `0, 1, -1, 2, -2, ...`) such that the twisted data
/// has noncritical slope.
pub fn twist_search(places: &[GspPlace], t: &TorusExponent) -> Result<i64> {
    let (lhs, rhs) = gsp_slope_sides(places, t)?;
    if lhs < rhs {
        return Ok(0);
    }
    if t.a0.is_zero() {
        return Err(Error::NoTwist(
            "a_0 = 0, so twisting does not move the slope".into(),
        ));
    }
    // Each unit of m moves the left side by places * a_0 / 2 in absolute value.
    let step = (int(places.len() as i64) * &t.a0 * frac(1, 2)).abs();
    let bound = ((&lhs - &rhs) / step).floor().to_integer() + num_bigint::BigInt::from(1);
    let bound: i64 = bound
        .try_into()
        .map_err(|_| Error::NoTwist("required twist does not fit in 64 bits".into()))?;
    for k in 1..=bound {
        for m in [k, -k] {
            if lhs.clone() + twist_shift(places.len(), t, m) < rhs {
                return Ok(m);
            }
        }
    }
    Err(Error::Internal("twist search exceeded its bound".into()))
}
