//! Cross-module invariants: the equivalence machinery, the constructors, and
//! the closed forms are all played against the exhaustive oracle.

use polychrome::classify;
use polychrome::construct;
use polychrome::oracle;
use polychrome::zn::{self, gcd, ResidueSet};
use rayon::prelude::*;

fn set(n: u64, elems: &[u64]) -> ResidueSet {
    ResidueSet::new(n, elems.iter().copied()).unwrap()
}

/// All 3-subsets of Z_n (not only those containing 0).
fn three_subsets(n: u64) -> Vec<ResidueSet> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                out.push(set(n, &[x, y, z]));
            }
        }
    }
    out
}

/// Plain enumeration of all k^n colorings, with the translate check written
/// out directly; no shared code with the pruned search.
fn naive_poly(s: &ResidueSet) -> u8 {
    let n = s.modulus();
    for k in (2..=s.len() as u8).rev() {
        let total = (k as u64).pow(n as u32);
        'coloring: for code in 0..total {
            let mut digits = vec![0u8; n as usize];
            let mut rest = code;
            for d in digits.iter_mut() {
                *d = (rest % k as u64) as u8;
                rest /= k as u64;
            }
            for a in 0..n {
                let mut seen = vec![false; k as usize];
                for &e in s.elements() {
                    seen[digits[((a + e) % n) as usize] as usize] = true;
                }
                if seen.contains(&false) {
                    continue 'coloring;
                }
            }
            return k;
        }
    }
    1
}

/// The pruned backtracking search returns the same number as unpruned
/// enumeration on every small 2- and 3-element instance.
#[test]
fn brute_force_matches_naive_enumeration() {
    (2..=9u64).into_par_iter().for_each(|n| {
        let mut instances = three_subsets(n);
        for x in 0..n {
            for y in x + 1..n {
                instances.push(set(n, &[x, y]));
            }
        }
        for s in instances {
            let (p, witness) = oracle::brute_force_poly(&s, 40).unwrap();
            assert_eq!(p, naive_poly(&s), "search/enumeration split on {s} mod {n}");
            assert!(oracle::verifies(&s, &witness));
        }
    });
}

/// Normalization preserves the oracle's polychromatic number, and the
/// brute-force witness of the reduced instance pulls back to a verified
/// witness of the original instance.
#[test]
fn normalize_agrees_with_oracle_and_pull_back_preserves_witnesses() {
    (3..=20u64).into_par_iter().for_each(|n| {
        for s in three_subsets(n) {
            let (p, _) = oracle::brute_force_poly(&s, 40).unwrap();
            let form = zn::normalize(&s).unwrap();
            let (p_reduced, reduced_witness) =
                oracle::brute_force_poly(form.reduced_set(), 40).unwrap();
            assert_eq!(p, p_reduced, "p mismatch for {s} mod {n}");

            let lifted = zn::pull_back_coloring(&form, &reduced_witness).unwrap();
            assert_eq!(lifted.num_colors(), reduced_witness.num_colors());
            assert!(
                oracle::verifies(&s, &lifted),
                "pulled-back witness fails for {s} mod {n}"
            );
        }
    });
}

/// Complements turn into blocking sets after negation; this is the one
/// implemented direction of the complement/blocking correspondence.
#[test]
fn complement_negated_is_blocking() {
    (3..=18u64).into_par_iter().for_each(|n| {
        for s in three_subsets(n) {
            if let Some(t) = oracle::find_complement(&s).complement {
                let neg = ResidueSet::new(n, t.elements().iter().map(|&x| (n - x) % n)).unwrap();
                assert!(
                    oracle::is_blocking(&s, &neg),
                    "-T not blocking for {s} mod {n}"
                );
            }
        }
    });
}

/// Every color class of a verified polychromatic coloring is a blocking set,
/// and the minimum blocking size is at most the smallest class.
#[test]
fn color_classes_are_blocking_sets() {
    (3..=12u64).into_par_iter().for_each(|n| {
        for s in three_subsets(n) {
            let (p, witness) = oracle::brute_force_poly(&s, 40).unwrap();
            if p < 2 {
                continue;
            }
            let classes = witness.color_classes();
            for class in &classes {
                let t = ResidueSet::new(n, class.iter().copied()).unwrap();
                assert!(oracle::is_blocking(&s, &t), "class not blocking for {s} mod {n}");
            }
            let (min_size, min_witness) = oracle::min_blocking_size(&s, 24).unwrap();
            assert!(oracle::is_blocking(&s, &min_witness));
            let smallest_class = classes.iter().map(|c| c.len()).min().unwrap();
            assert!(
                min_size <= smallest_class,
                "min blocking {min_size} > smallest class {smallest_class} for {s} mod {n}"
            );
        }
    });
}

/// The minimum blocking size equals n minus the largest translate-free
/// subset, computed here by independent subset enumeration.
#[test]
fn min_blocking_complements_largest_translate_free_subset() {
    for n in 3..=10u64 {
        for s in three_subsets(n) {
            let translate_masks: Vec<u32> = (0..n)
                .map(|a| {
                    s.elements()
                        .iter()
                        .fold(0u32, |m, &e| m | (1 << ((a + e) % n)))
                })
                .collect();
            let max_free = (0u32..1 << n)
                .filter(|&u| translate_masks.iter().all(|&t| t & !u != 0))
                .map(|u| u.count_ones() as usize)
                .max()
                .unwrap();
            let (min_size, _) = oracle::min_blocking_size(&s, 24).unwrap();
            assert!(
                min_size <= n as usize - max_free,
                "blocking bound violated for {s} mod {n}"
            );
        }
    }
}

/// The closed-form 3 answer coincides with the mod-3 criterion on
/// gcd-reduced instances.
#[test]
fn mod3_condition_matches_classification() {
    for n in 3..=30u64 {
        for a in 1..n {
            for b in a + 1..n {
                if gcd(gcd(a, b), n) != 1 {
                    continue;
                }
                let s = set(n, &[0, a, b]);
                let closed = classify::poly_number_size3(&s).unwrap();
                let cond = classify::mod3_condition(n, a, b).unwrap();
                assert_eq!(
                    closed.p() == 3,
                    cond,
                    "mod-3 criterion mismatch for {s} mod {n}"
                );
            }
        }
    }
}

/// The block construction covers each element exactly once in its first t
/// rows on every applicable instance with odd n up to 105.
#[test]
fn block_coloring_well_defined_sweep() {
    (3..=105u64).into_par_iter().filter(|n| n % 2 == 1).for_each(|n| {
        for a in 1..n {
            for b in a + 1..n {
                if gcd(a, n) > 1 && gcd(b, n) > 1 && gcd(gcd(a, b), n) == 1 {
                    // construction errors only on a double-covered element
                    let chi = construct::block_coloring(n, a, b).unwrap();
                    assert!(
                        oracle::verifies(&set(n, &[0, a, b]), &chi),
                        "block coloring fails for {{0,{a},{b}}} mod {n}"
                    );
                }
            }
        }
    });
}
