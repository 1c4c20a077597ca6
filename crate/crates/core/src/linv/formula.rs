use num_traits::{One, Zero};

use super::family::TriangulationData;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::plethysm::b_row;

/// Direction in weight space: `u` lists the weight coordinates of every
/// place in turn (`weight_dim` per place), `u0` is the shared similitude
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub u: Vec<Scalar>,
    pub u0: Scalar,
}

impl Direction {
    pub fn new(u: Vec<Scalar>, u0: Scalar) -> Self {
        Direction { u, u0 }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Direction {
            u: self.u.iter().map(|x| x * c).collect(),
            u0: &self.u0 * c,
        }
    }

    fn place(&self, v: usize, dim: usize) -> &[Scalar] {
        &self.u[v * dim..(v + 1) * dim]
    }
}

/// Values of the logarithmic derivatives `grad a_{v,1}, ..., grad a_{v,h}`,
/// one row per place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivAssignment {
    pub places: Vec<Vec<Scalar>>,
}

impl LogDerivAssignment {
    pub fn new(places: Vec<Vec<Scalar>>) -> Self {
        LogDerivAssignment { places }
    }
}

/// Numerator and denominator of one place's factor `a_v / b_v`.
pub type PlacePair = (Scalar, Scalar);

pub(crate) fn check_shapes(
    data: &TriangulationData,
    u: &Direction,
    vals: &LogDerivAssignment,
) -> Result<()> {
    let places = vals.places.len();
    if places == 0 {
        return Err(Error::Precondition("no places".into()));
    }
    if u.u.len() != places * data.weight_dim {
        return Err(Error::DimensionMismatch(format!(
            "{places} places of {} weight coordinates need a direction of length {}, got {}",
            data.weight_dim,
            places * data.weight_dim,
            u.u.len()
        )));
    }
    if let Some(row) = vals.places.iter().find(|r| r.len() != data.hecke_dim) {
        return Err(Error::DimensionMismatch(format!(
            "expected {} derivatives per place, got {}",
            data.hecke_dim,
            row.len()
        )));
    }
    Ok(())
}

/// Per-place pairs `(-sum_i B_{i-1} grad F_i, sum_i B_{i-1} grad_u kappa_i)`
/// with caller-supplied coefficients.
pub fn place_pairs_with_coefficients(
    data: &TriangulationData,
    coeffs: &[Scalar],
    u: &Direction,
    vals: &LogDerivAssignment,
) -> Result<Vec<PlacePair>> {
    check_shapes(data, u, vals)?;
    if coeffs.len() != data.pieces.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} graded pieces",
            coeffs.len(),
            data.pieces.len()
        )));
    }
    vals.places
        .iter()
        .enumerate()
        .map(|(v, grads)| {
            let uv = u.place(v, data.weight_dim);
            let mut num = Scalar::zero();
            let mut den = Scalar::zero();
            for (b, piece) in coeffs.iter().zip(&data.pieces) {
                num -= b * piece.log_form.evaluate(grads)?;
                den += b * piece.kappa.derivative(uv, &u.u0)?;
            }
            Ok((num, den))
        })
        .collect()
}

pub fn place_pairs(
    data: &TriangulationData,
    u: &Direction,
    vals: &LogDerivAssignment,
) -> Result<Vec<PlacePair>> {
    let (n, k) = data.row;
    place_pairs_with_coefficients(data, &b_row(n, k)?, u, vals)
}

/// `prod_v a_v / b_v`.
pub fn rank1_combine(pairs: &[PlacePair]) -> Result<Scalar> {
    pairs
        .iter()
        .enumerate()
        .try_fold(Scalar::one(), |acc, (v, (a, b))| {
            if b.is_zero() {
                Err(Error::SingularDirection { place: v })
            } else {
                Ok(acc * a / b)
            }
        })
}

pub fn l_invariant_with_coefficients(
    data: &TriangulationData,
    coeffs: &[Scalar],
    u: &Direction,
    vals: &LogDerivAssignment,
) -> Result<Scalar> {
    rank1_combine(&place_pairs_with_coefficients(data, coeffs, u, vals)?)
}

/// `prod_v -(sum_i B_{i-1} grad F_i) / (sum_i B_{i-1} grad_u kappa_i)` with
/// `B` the row `data.row` of the plethysm coefficients.
pub fn generic_l_invariant(
    data: &TriangulationData,
    u: &Direction,
    vals: &LogDerivAssignment,
) -> Result<Scalar> {
    rank1_combine(&place_pairs(data, u, vals)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int};
    use crate::linv::{family_data, Family};
    use proptest::prelude::*;

    fn hilbert_at(q: Scalar) -> Scalar {
        let d = family_data(Family::Hilbert).unwrap();
        generic_l_invariant(
            &d,
            &Direction::new(vec![int(1)], int(-1)),
            &LogDerivAssignment::new(vec![vec![q]]),
        )
        .unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_at(int(1)), int(-2));
        assert_eq!(hilbert_at(frac(3, 5)), frac(-6, 5));
        assert_eq!(hilbert_at(int(0)), int(0));
    }

    #[test]
    fn gsp4_example() {
        let d = family_data(Family::Gsp4Spin).unwrap();
        let (s, t) = (int(5), int(2));
        let u = Direction::new(vec![int(3), int(1)], int(0));
        let got = generic_l_invariant(
            &d,
            &u,
            &LogDerivAssignment::new(vec![vec![s.clone(), t.clone()]]),
        )
        .unwrap();
        // The opposite sign of (-4t + 3s)/(u_1 - 2u_2).
        assert_eq!(got, -(int(-4) * t + int(3) * s) / int(1));
    }

    #[test]
    fn rank1_examples() {
        assert_eq!(rank1_combine(&[(int(1), int(1))]).unwrap(), int(1));
        assert_eq!(
            rank1_combine(&[(int(2), int(1)), (int(3), int(1))]).unwrap(),
            int(6)
        );
        assert_eq!(
            rank1_combine(&[(int(2), int(1)), (int(3), int(0))]),
            Err(Error::SingularDirection { place: 1 })
        );
    }

    #[test]
    fn singular_direction_names_the_place() {
        let d = family_data(Family::Gsp4Spin).unwrap();
        // u_1 = 2 u_2 at the second place.
        let u = Direction::new(vec![int(1), int(0), int(2), int(1)], int(0));
        let vals = LogDerivAssignment::new(vec![vec![int(1), int(1)]; 2]);
        assert_eq!(
            generic_l_invariant(&d, &u, &vals),
            Err(Error::SingularDirection { place: 1 })
        );
    }

    #[test]
    fn shape_errors() {
        let d = family_data(Family::Gsp4Spin).unwrap();
        let vals = LogDerivAssignment::new(vec![vec![int(1), int(1)]]);
        assert!(matches!(
            generic_l_invariant(&d, &Direction::new(vec![int(1)], int(0)), &vals),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(generic_l_invariant(
            &d,
            &Direction::new(vec![], int(0)),
            &LogDerivAssignment::new(vec![])
        )
        .is_err());
    }

    fn families() -> Vec<Family> {
        vec![
            Family::Hilbert,
            Family::Gsp4Spin,
            Family::GspStd { n: 2 },
            Family::GspStd { n: 3 },
            Family::Unitary { n: 1, k: 3 },
            Family::Unitary { n: 1, k: 1 },
        ]
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-30i64..=30, 1i64..=7).prop_map(|(a, b)| frac(a, b))
    }

    fn inputs(
        fam: usize,
        places: usize,
    ) -> impl Strategy<Value = (TriangulationData, Direction, LogDerivAssignment)> {
        let d = family_data(families()[fam]).unwrap();
        let (w, h) = (d.weight_dim, d.hecke_dim);
        (
            prop::collection::vec(rational(), w * places),
            rational(),
            prop::collection::vec(prop::collection::vec(rational(), h), places),
        )
            .prop_map(move |(u, u0, vals)| {
                (
                    d.clone(),
                    Direction::new(u, u0),
                    LogDerivAssignment::new(vals),
                )
            })
    }

    fn any_case(
        max_places: usize,
    ) -> impl Strategy<Value = (TriangulationData, Direction, LogDerivAssignment)> {
        (0usize..6, 1usize..=max_places).prop_flat_map(|(fam, places)| inputs(fam, places))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn common_scale_of_coefficients_cancels((d, u, vals) in any_case(2), num in 1i64..=9, den in 1i64..=9, neg: bool) {
            let c = if neg { -frac(num, den) } else { frac(num, den) };
            let row = b_row(d.row.0, d.row.1).unwrap();
            let scaled: Vec<Scalar> = row.iter().map(|b| b * &c).collect();
            prop_assert_eq!(
                l_invariant_with_coefficients(&d, &row, &u, &vals),
                l_invariant_with_coefficients(&d, &scaled, &u, &vals)
            );
        }

        #[test]
        fn homogeneous_in_direction((d, u, vals) in any_case(3), num in 1i64..=9, den in 1i64..=9) {
            let c = frac(num, den);
            if let Ok(base) = generic_l_invariant(&d, &u, &vals) {
                let scaled = generic_l_invariant(&d, &u.scale(&c), &vals).unwrap();
                let factor = vals.places.iter().fold(Scalar::one(), |acc, _| acc / &c);
                prop_assert_eq!(scaled, base * factor);
            }
        }

        #[test]
        fn multiplicative_over_places((d, u, vals) in any_case(3)) {
            let whole = generic_l_invariant(&d, &u, &vals);
            let mut product = Ok(Scalar::one());
            for (v, grads) in vals.places.iter().enumerate() {
                let uv = Direction::new(u.place(v, d.weight_dim).to_vec(), u.u0.clone());
                let single = generic_l_invariant(&d, &uv, &LogDerivAssignment::new(vec![grads.clone()]));
                product = match (product, single) {
                    (Err(e), _) => Err(e),
                    (Ok(_), Err(Error::SingularDirection { .. })) => Err(Error::SingularDirection { place: v }),
                    (Ok(_), Err(e)) => Err(e),
                    (Ok(p), Ok(s)) => Ok(p * s),
                };
            }
            prop_assert_eq!(whole, product);
        }

        #[test]
        fn pairs_agree_with_value((d, u, vals) in any_case(3)) {
            let pairs = place_pairs(&d, &u, &vals).unwrap();
            match generic_l_invariant(&d, &u, &vals) {
                Ok(value) => {
                    let direct = pairs.iter().fold(Scalar::one(), |acc, (a, b)| acc * a / b);
                    prop_assert_eq!(value, direct);
                }
                Err(Error::SingularDirection { place }) => prop_assert!(pairs[place].1.is_zero()),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn zero_derivatives_give_zero((d, u, vals) in any_case(1)) {
            let zeros = LogDerivAssignment::new(vec![vec![Scalar::zero(); vals.places[0].len()]]);
            if let Ok(x) = generic_l_invariant(&d, &u, &zeros) {
                prop_assert!(x.is_zero());
            }
        }
    }
}
