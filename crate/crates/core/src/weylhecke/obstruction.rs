use std::collections::BTreeSet;

use itertools::Itertools;

/// Orders `d` of `r = alpha/beta` that would break regularity of a
/// refinement whose Frobenius eigenvalues are `r^{e_1}, r^{e_2}, ...` (in
/// refinement order, up to a common factor).
///
/// Regularity asks that for every `i` the product of the first `i`
/// eigenvalues differ from every other product of `i` of them. If `r` is a
/// primitive `d`-th root of unity that fails exactly when `d` divides the
/// difference of the two exponent sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionOrders {
    pub orders: BTreeSet<u64>,
    /// Some other subset has the same exponent sum as the leading one, so
    /// regularity fails for every `r`.
    pub unconditional: bool,
}

impl ObstructionOrders {
    /// Whether excluding `r` in `mu_N` rules out every obstruction.
    pub fn sufficient(&self, n: u64) -> bool {
        !self.unconditional && self.orders.iter().all(|d| n.is_multiple_of(*d))
    }
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

pub fn refinement_obstruction_orders(exponents: &[i64]) -> ObstructionOrders {
    let mut diffs = BTreeSet::new();
    let mut unconditional = false;
    for i in 1..exponents.len() {
        let top: i64 = exponents[..i].iter().sum();
        for subset in (0..exponents.len()).combinations(i) {
            if subset.iter().copied().eq(0..i) {
                continue;
            }
            let s: i64 = subset.iter().map(|&j| exponents[j]).sum();
            match (top - s).unsigned_abs() {
                0 => unconditional = true,
                d => {
                    diffs.insert(d);
                }
            }
        }
    }
    let orders = diffs.into_iter().flat_map(divisors).collect();
    ObstructionOrders {
        orders,
        unconditional,
    }
}
