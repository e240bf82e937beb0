//! Finite-depth check that adding a sparse dyadic series costs few zeros.

use serde::Serialize;

use super::digits::binary_digit;
use crate::numerics::rational::{floor_int, pow_int, serde_rational};
use crate::numerics::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftDepth {
    pub depth: u32,
    pub zeros_original: u32,
    pub zeros_shifted: u32,
    /// Positions `j ∈ S`, `j ≤ depth`, where the original digit is 0.
    pub s_on_zero_digits: u32,
    /// 1 if the tail beyond `depth` carries into the prefix.
    pub carry_in: u32,
}

impl ShiftDepth {
    /// `zeros_shifted ≥ zeros_original − s_on_zero_digits − carry_in`.
    pub fn holds(&self) -> bool {
        self.zeros_shifted + self.s_on_zero_digits + self.carry_in >= self.zeros_original
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub shifted: Rational,
    pub set: Vec<u32>,
    pub depths: Vec<ShiftDepth>,
    pub failing_depths: Vec<u32>,
}

/// Compares zero counts of `x` and `x + Σ_{j∈S} 2^{-j}` at every prefix
/// depth up to `depth`.
///
/// Adding one power of two at a position holding a 1 starts a carry chain
/// that never lowers the zero count, so only positions of `S` over a 0 and
/// a carry out of the unseen tail can cost a zero each.
pub fn density_zero_shift_check(x: &Rational, set: &[u32], depth: u32) -> ShiftReport {
    let mut set: Vec<u32> = set.to_vec();
    set.sort_unstable();
    set.dedup();
    assert!(
        set.iter().all(|j| (1..=depth).contains(j)),
        "S must lie in 1..=depth"
    );
    let shifted = set
        .iter()
        .fold(x.clone(), |acc, j| acc + pow_int(2, -(*j as i64)));
    let mut depths = Vec::new();
    let (mut zx, mut zy, mut s2) = (0, 0, 0);
    for d in 1..=depth {
        let (dx, dy) = (binary_digit(x, d), binary_digit(&shifted, d));
        zx += u32::from(dx == 0);
        zy += u32::from(dy == 0);
        if dx == 0 && set.binary_search(&d).is_ok() {
            s2 += 1;
        }
        let scale = pow_int(2, d as i64);
        let head: Rational = set
            .iter()
            .filter(|j| **j <= d)
            .map(|j| pow_int(2, -(*j as i64)))
            .sum();
        let expected = floor_int(&(x * &scale)) + floor_int(&(head * &scale));
        let carry = floor_int(&(&shifted * &scale)) - expected;
        let carry_in = u32::try_from(carry).expect("carry is 0 or 1");
        depths.push(ShiftDepth {
            depth: d,
            zeros_original: zx,
            zeros_shifted: zy,
            s_on_zero_digits: s2,
            carry_in,
        });
    }
    let failing_depths = depths
        .iter()
        .filter(|d| !d.holds())
        .map(|d| d.depth)
        .collect();
    ShiftReport {
        x: x.clone(),
        shifted,
        set,
        depths,
        failing_depths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use proptest::prelude::*;

    #[test]
    fn one_third_with_sparse_shift() {
        let r = density_zero_shift_check(&rat(1, 3), &[2, 4, 8, 16], 32);
        assert!(r.failing_depths.is_empty());
        let last = r.depths.last().unwrap();
        // 1/3 = 0.0101…: positions 2, 4, 8, 16 all hold a 1, so every
        // addition carries and the shifted value gains zeros.
        assert_eq!(last.s_on_zero_digits, 0);
        assert_eq!(last.zeros_original, 16);
        assert!(last.zeros_shifted >= last.zeros_original);
    }

    #[test]
    fn empty_set_is_identity() {
        let r = density_zero_shift_check(&rat(5, 7), &[], 24);
        assert!(r
            .depths
            .iter()
            .all(|d| d.zeros_original == d.zeros_shifted && d.carry_in == 0));
    }

    #[test]
    fn dyadic_base_point() {
        // 5/8 = 0.101000…; the shifted digits beyond position 3 are those
        // of the sparse series itself.
        let r = density_zero_shift_check(&rat(5, 8), &[5, 9, 17], 24);
        assert!(r.failing_depths.is_empty());
        let last = r.depths.last().unwrap();
        assert_eq!(last.zeros_original, 22);
        assert_eq!(last.zeros_shifted, 19);
    }

    proptest! {
        #[test]
        fn inequality_always_holds(p in 0i64..10_000, q in 1i64..10_000, bits in proptest::collection::vec(1u32..=40, 0..8)) {
            let r = density_zero_shift_check(&rat(p, q), &bits, 40);
            prop_assert!(r.failing_depths.is_empty());
        }
    }
}
