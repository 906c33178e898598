//! Closed-form polychromatic numbers for 2- and 3-element subsets of `Z_n`,
//! the mod-3 tiling criterion, and the prime-power tiling condition for sets
//! of integers.
//!
//! For `S = {0, a, b}` in `Z_n` the number is 3 exactly when `n ≡ 0 mod
//! 3^{j+1}` with `a = 3^j m_a`, `b = 3^j m_b`, `m_a, m_b ≢ 0` and
//! `m_a + m_b ≡ 0 (mod 3)`; it is 1 exactly when `7 | n`, one of the nonzero
//! elements generates an order-7 subgroup, and the other is 3 or 5 times it;
//! and it is 2 otherwise. For `S = {0, b}` it is 2 exactly when the order of
//! `b` is even.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::zn::{gcd, mul_mod, subgroup_order, ResidueSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("expected a set of {expected} distinct residues, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("gcd(a, b, n) must be 1, got {0}")]
    CommonFactor(u64),
    #[error("elements must be distinct")]
    RepeatedElements,
    #[error("|S| = {len} is not {p}^{alpha}")]
    NotAPrimePower { len: usize, p: u64, alpha: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("alpha must be positive")]
    ZeroAlpha,
}

/// Which clause of the classification produced the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag {
    /// `n ≡ 0 mod 3^{j+1}`, `a = 3^j m_a`, `b = 3^j m_b` with `m_a + m_b ≡ 0`
    /// and neither `≡ 0 (mod 3)`; the set tiles and p = 3.
    Mod3Tiling { j: u32, m_a: u64, m_b: u64 },
    /// `7 | n` and the set is equivalent to `{0, 1, 3}` inside the order-7
    /// subgroup generated by `generator`; p = 1.
    FanoCase { generator: u64 },
    /// Every other 3-element set; p = 2.
    GenericTwo,
    /// `{0, b}` with `|<b>|` even; p = 2.
    Size2Even,
    /// `{0, b}` with `|<b>|` odd; p = 1.
    Size2Odd,
}

impl CaseTag {
    /// The polychromatic number forced by this case.
    pub fn p(&self) -> u8 {
        match self {
            CaseTag::Mod3Tiling { .. } => 3,
            CaseTag::FanoCase { .. } => 1,
            CaseTag::GenericTwo | CaseTag::Size2Even => 2,
            CaseTag::Size2Odd => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Mod3Tiling { .. } => "Mod3Tiling",
            CaseTag::FanoCase { .. } => "FanoCase",
            CaseTag::GenericTwo => "GenericTwo",
            CaseTag::Size2Even => "Size2Even",
            CaseTag::Size2Odd => "Size2Odd",
        }
    }
}

/// A computed polychromatic number together with the case that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    p: u8,
    case: CaseTag,
}

impl Classification {
    fn from_case(case: CaseTag) -> Self {
        Self { p: case.p(), case }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn case(&self) -> &CaseTag {
        &self.case
    }
}

/// The polychromatic number of a 2-element set.
///
/// The set is translated so it contains 0; the answer depends only on the
/// parity of the order of the remaining element. (No coprimality is required:
/// dividing out `gcd(b, n)` leaves the subgroup order unchanged, after which
/// the coprime statement applies verbatim.)
pub fn poly_number_size2(set: &ResidueSet) -> Result<Classification, ClassifyError> {
    let [x, y] = set.elements() else {
        return Err(ClassifyError::WrongSize {
            expected: 2,
            got: set.len(),
        });
    };
    let b = y - x;
    let case = if subgroup_order(set.modulus(), b).is_multiple_of(2) {
        CaseTag::Size2Even
    } else {
        CaseTag::Size2Odd
    };
    Ok(Classification::from_case(case))
}

/// The polychromatic number of a 3-element set.
pub fn poly_number_size3(set: &ResidueSet) -> Result<Classification, ClassifyError> {
    let [x, y, z] = set.elements() else {
        return Err(ClassifyError::WrongSize {
            expected: 3,
            got: set.len(),
        });
    };
    let n = set.modulus();
    let (a, b) = (y - x, z - x); // the set translated to {0, a, b}
    if let Some(case) = mod3_tiling_case(n, a, b) {
        return Ok(Classification::from_case(case));
    }
    if let Some(case) = fano_case(n, a, b) {
        return Ok(Classification::from_case(case));
    }
    Ok(Classification::from_case(CaseTag::GenericTwo))
}

fn valuation_3(mut x: u64) -> u32 {
    debug_assert!(x > 0);
    let mut v = 0;
    while x.is_multiple_of(3) {
        x /= 3;
        v += 1;
    }
    v
}

fn mod3_tiling_case(n: u64, a: u64, b: u64) -> Option<CaseTag> {
    // j is the shared 3-adic valuation; differing valuations would force one
    // of m_a, m_b to be divisible by 3
    let j = valuation_3(a);
    if valuation_3(b) != j {
        return None;
    }
    let pow = 3u128.pow(j);
    let (m_a, m_b) = ((a as u128 / pow) as u64, (b as u128 / pow) as u64);
    if (m_a + m_b) % 3 != 0 {
        return None;
    }
    if !(n as u128).is_multiple_of(pow * 3) {
        return None;
    }
    Some(CaseTag::Mod3Tiling { j, m_a, m_b })
}

fn fano_case(n: u64, a: u64, b: u64) -> Option<CaseTag> {
    if !n.is_multiple_of(7) {
        return None;
    }
    // the statement names b in terms of a; the input carries no such
    // orientation, so test both
    for (g, other) in [(a, b), (b, a)] {
        if subgroup_order(n, g) == 7 && (other == mul_mod(3, g, n) || other == mul_mod(5, g, n)) {
            return Some(CaseTag::FanoCase { generator: g });
        }
    }
    None
}

/// Whether `{0, a, b}` with `gcd(a, b, n) = 1` tiles `Z_n` (equivalently has
/// polychromatic number 3): true iff `3 | n` and `a`, `b` lie in different
/// nonzero congruence classes mod 3.
pub fn mod3_condition(n: u64, a: u64, b: u64) -> Result<bool, ClassifyError> {
    let g = gcd(gcd(a, b), n);
    if g != 1 {
        return Err(ClassifyError::CommonFactor(g));
    }
    Ok(n.is_multiple_of(3) && (a % 3) + (b % 3) == 3)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= p as u128 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether a set of `p^alpha` distinct integers tiles the integers by
/// translation: the pairwise differences must realize at most `alpha`
/// distinct `p`-adic valuations.
pub fn newman_tiles_z(elements: &[i64], p: u64, alpha: u32) -> Result<bool, ClassifyError> {
    if !is_prime(p) {
        return Err(ClassifyError::NotPrime(p));
    }
    if alpha == 0 {
        return Err(ClassifyError::ZeroAlpha);
    }
    let expected = (p as u128).checked_pow(alpha);
    if expected != Some(elements.len() as u128) {
        return Err(ClassifyError::NotAPrimePower {
            len: elements.len(),
            p,
            alpha,
        });
    }
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ClassifyError::RepeatedElements);
    }
    let mut valuations = BTreeSet::new();
    for (i, &si) in sorted.iter().enumerate() {
        for &sj in &sorted[i + 1..] {
            let mut d = si.abs_diff(sj);
            let mut e = 0u32;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            valuations.insert(e);
        }
    }
    Ok(valuations.len() <= alpha as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: u64, elems: &[u64]) -> ResidueSet {
        ResidueSet::new(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn size2_examples() {
        let c = poly_number_size2(&set(8, &[0, 3])).unwrap();
        assert_eq!((c.p(), c.case()), (2, &CaseTag::Size2Even));
        let c = poly_number_size2(&set(6, &[0, 2])).unwrap();
        assert_eq!((c.p(), c.case()), (1, &CaseTag::Size2Odd));
        let c = poly_number_size2(&set(5, &[0, 1])).unwrap();
        assert_eq!(c.p(), 1);
        // {0, b} need not literally contain 0
        let c = poly_number_size2(&set(8, &[2, 5])).unwrap();
        assert_eq!(c.p(), 2);
    }

    #[test]
    fn size2_rejects_wrong_size() {
        assert_eq!(
            poly_number_size2(&set(6, &[0, 2, 4])),
            Err(ClassifyError::WrongSize { expected: 2, got: 3 })
        );
        // {0, 3} mod 3 collapses to a singleton
        assert_eq!(
            poly_number_size2(&set(3, &[0, 3])),
            Err(ClassifyError::WrongSize { expected: 2, got: 1 })
        );
    }

    #[test]
    fn size3_examples() {
        let c = poly_number_size3(&set(9, &[0, 1, 2])).unwrap();
        assert_eq!(c.p(), 3);
        assert_eq!(c.case(), &CaseTag::Mod3Tiling { j: 0, m_a: 1, m_b: 2 });

        let c = poly_number_size3(&set(7, &[0, 1, 3])).unwrap();
        assert_eq!(c.p(), 1);
        assert_eq!(c.case(), &CaseTag::FanoCase { generator: 1 });

        let c = poly_number_size3(&set(105, &[0, 18, 25])).unwrap();
        assert_eq!((c.p(), c.case()), (2, &CaseTag::GenericTwo));

        // 7 | 21, |<3>| = 7 and 9 = 3*3
        let c = poly_number_size3(&set(21, &[0, 3, 9])).unwrap();
        assert_eq!(c.p(), 1);
        assert_eq!(c.case(), &CaseTag::FanoCase { generator: 3 });
    }

    #[test]
    fn size3_shared_power_of_three() {
        // a = 3*1, b = 3*5, n = 18 ≡ 0 mod 9
        let c = poly_number_size3(&set(18, &[0, 3, 15])).unwrap();
        assert_eq!(c.case(), &CaseTag::Mod3Tiling { j: 1, m_a: 1, m_b: 5 });
        // right valuations and classes, but n = 12 is not divisible by 9
        let c = poly_number_size3(&set(12, &[0, 3, 6])).unwrap();
        assert_eq!(c.p(), 2);
        // differing valuations: 3 = 3^1, 9 = 3^2
        let c = poly_number_size3(&set(27, &[0, 3, 9])).unwrap();
        assert_eq!(c.p(), 2);
    }

    #[test]
    fn size3_fano_orientation_is_symmetric() {
        // {0, 1, 5}: 5 = 5*1, and with the roles swapped 1 = 3*5 mod 7
        let c = poly_number_size3(&set(7, &[0, 1, 5])).unwrap();
        assert_eq!(c.p(), 1);
        let c = poly_number_size3(&set(7, &[0, 2, 6])).unwrap();
        assert_eq!(c.p(), 1);
        // n = 14: no element has order 7
        let c = poly_number_size3(&set(14, &[0, 1, 3])).unwrap();
        assert_eq!(c.p(), 2);
    }

    #[test]
    fn size3_rejects_degenerate_sets() {
        assert_eq!(
            poly_number_size3(&set(9, &[0, 4, 13])),
            Err(ClassifyError::WrongSize { expected: 3, got: 2 })
        );
    }

    #[test]
    fn mod3_condition_examples() {
        assert_eq!(mod3_condition(9, 1, 2), Ok(true));
        assert_eq!(mod3_condition(9, 1, 4), Ok(false)); // both ≡ 1 mod 3
        assert_eq!(mod3_condition(10, 1, 2), Ok(false)); // 3 does not divide 10
        assert_eq!(mod3_condition(9, 3, 6), Err(ClassifyError::CommonFactor(3)));
    }

    #[test]
    fn newman_examples() {
        assert_eq!(newman_tiles_z(&[0, 1, 2], 3, 1), Ok(true));
        assert_eq!(newman_tiles_z(&[0, 1, 3], 3, 1), Ok(false));
        assert_eq!(newman_tiles_z(&[0, 1, 2, 3], 2, 2), Ok(true));
    }

    #[test]
    fn newman_rejects_bad_input() {
        assert_eq!(
            newman_tiles_z(&[0, 1], 3, 1),
            Err(ClassifyError::NotAPrimePower { len: 2, p: 3, alpha: 1 })
        );
        assert_eq!(
            newman_tiles_z(&[0, 1, 1], 3, 1),
            Err(ClassifyError::RepeatedElements)
        );
        assert_eq!(newman_tiles_z(&[0, 1, 2, 3], 4, 1), Err(ClassifyError::NotPrime(4)));
        assert_eq!(newman_tiles_z(&[0], 3, 0), Err(ClassifyError::ZeroAlpha));
    }

    #[test]
    fn newman_handles_negative_integers() {
        assert_eq!(newman_tiles_z(&[-1, 0, 1], 3, 1), Ok(true));
        assert_eq!(newman_tiles_z(&[-3, 0, 3], 3, 1), Ok(true)); // all e = 1
    }

    proptest! {
        #[test]
        fn size3_is_symmetric_and_negation_invariant(
            n in 3u64..300, a in 1u64..300, b in 1u64..300,
        ) {
            let s = ResidueSet::new(n, [0, a, b]).unwrap();
            prop_assume!(s.len() == 3);
            let (a, b) = (s.elements()[1], s.elements()[2]);
            let direct = poly_number_size3(&s).unwrap();
            let swapped = ResidueSet::new(n, [0, b, a]).unwrap();
            prop_assert_eq!(direct.p(), poly_number_size3(&swapped).unwrap().p());
            let negated = ResidueSet::new(n, [0, n - a, n - b]).unwrap();
            prop_assert_eq!(direct.p(), poly_number_size3(&negated).unwrap().p());
        }

        #[test]
        fn size3_translation_invariant(
            n in 3u64..300, a in 1u64..300, b in 1u64..300, c in 0u64..300,
        ) {
            let s = ResidueSet::new(n, [0, a, b]).unwrap();
            prop_assume!(s.len() == 3);
            let shifted = s.translate(c);
            prop_assert_eq!(
                poly_number_size3(&s).unwrap().p(),
                poly_number_size3(&shifted).unwrap().p()
            );
        }
    }
}
