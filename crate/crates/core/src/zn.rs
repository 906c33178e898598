//! Modular-arithmetic substrate: residue sets, translates, subgroup orders,
//! and the equivalence machinery that reduces any 3-element set to one of two
//! canonical forms.
//!
//! Two sets `S` and `dS + c` (with `gcd(d, n) = 1`) have the same
//! polychromatic number, and a common factor of the elements and the modulus
//! can be divided out without changing it either. [`normalize`] applies those
//! moves deterministically and records them in a [`TransformChain`], which can
//! later pull a coloring of the reduced instance back to the original one.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::coloring::{Coloring, ColoringError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZnError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("residue set must be nonempty")]
    EmptySet,
    #[error("expected a set of {expected} distinct residues, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("{factor} is not invertible mod {modulus}")]
    NotInvertible { factor: u64, modulus: u64 },
    #[error("{divisor} does not divide the modulus {modulus} and every element")]
    BadScaleDivisor { divisor: u64, modulus: u64 },
    #[error("set has modulus {expected}, operand has modulus {got}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `(a * b) mod n` without intermediate overflow.
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// The inverse of `a` mod `n`, when `gcd(a, n) = 1`.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd == 1 {
        Some(e.x.rem_euclid(n as i128) as u64)
    } else {
        None
    }
}

/// The order of `g` in `Z_n`, i.e. `n / gcd(n, g)`; `g = 0` has order 1.
pub fn subgroup_order(modulus: u64, g: u64) -> u64 {
    modulus / gcd(modulus, g % modulus)
}

/// A nonempty subset of `Z_n`, stored sorted and reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSet {
    modulus: u64,
    elements: Vec<u64>,
}

impl ResidueSet {
    /// Reduces the inputs mod `n`, sorts them, and drops duplicates.
    pub fn new(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self, ZnError> {
        if modulus == 0 {
            return Err(ZnError::ZeroModulus);
        }
        let mut elements: Vec<u64> = elements.into_iter().map(|e| e % modulus).collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(ZnError::EmptySet);
        }
        Ok(Self { modulus, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a ResidueSet is nonempty by construction
    }

    pub fn contains(&self, r: u64) -> bool {
        self.elements.binary_search(&(r % self.modulus)).is_ok()
    }

    /// The translate `c + S`.
    pub fn translate(&self, c: u64) -> Self {
        let n = self.modulus;
        let mut elements: Vec<u64> = self.elements.iter().map(|&e| (e + c % n) % n).collect();
        elements.sort_unstable();
        Self { modulus: n, elements }
    }

    /// The set `dS` for a unit `d`.
    pub fn unit_multiply(&self, d: u64) -> Result<Self, ZnError> {
        let n = self.modulus;
        if gcd(d % n, n) != 1 {
            return Err(ZnError::NotInvertible { factor: d, modulus: n });
        }
        let mut elements: Vec<u64> = self.elements.iter().map(|&e| mul_mod(e, d, n)).collect();
        elements.sort_unstable();
        Ok(Self { modulus: n, elements })
    }

    /// Divides the modulus and every element by a common divisor `d`.
    pub fn scale_divide(&self, d: u64) -> Result<Self, ZnError> {
        let n = self.modulus;
        let bad = || ZnError::BadScaleDivisor { divisor: d, modulus: n };
        if d == 0 || !n.is_multiple_of(d) {
            return Err(bad());
        }
        if self.elements.iter().any(|&e| e % d != 0) {
            return Err(bad());
        }
        let elements = self.elements.iter().map(|&e| e / d).collect();
        Ok(Self { modulus: n / d, elements })
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All `n` translates `a + S` for `a = 0..n-1`, indexed by the shift `a`.
///
/// Duplicates are retained: the verifier quantifies over every shift.
pub fn translates(set: &ResidueSet) -> Vec<ResidueSet> {
    (0..set.modulus()).map(|a| set.translate(a)).collect()
}

/// One step of an equivalence-preserving transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformStep {
    /// Add a constant to every element.
    Translate(u64),
    /// Multiply every element by a unit of the current modulus.
    UnitMultiply(u64),
    /// Divide the current modulus and every element by a common divisor.
    ScaleDivide(u64),
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformStep::Translate(c) => write!(f, "translate(+{c})"),
            TransformStep::UnitMultiply(d) => write!(f, "mul(x{d})"),
            TransformStep::ScaleDivide(d) => write!(f, "scale(/{d})"),
        }
    }
}

/// An ordered record of steps mapping a source set to a reduced set,
/// invertible on colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformChain {
    source_modulus: u64,
    target_modulus: u64,
    steps: Vec<TransformStep>,
}

impl TransformChain {
    pub fn identity(modulus: u64) -> Self {
        Self {
            source_modulus: modulus,
            target_modulus: modulus,
            steps: Vec::new(),
        }
    }

    /// Builds a chain from raw steps, computing the target modulus and
    /// rejecting steps invalid at their point of application.
    pub fn from_steps(source_modulus: u64, steps: Vec<TransformStep>) -> Result<Self, ZnError> {
        let mut m = source_modulus;
        for step in &steps {
            match *step {
                TransformStep::Translate(_) => {}
                TransformStep::UnitMultiply(d) => {
                    if gcd(d % m, m) != 1 {
                        return Err(ZnError::NotInvertible { factor: d, modulus: m });
                    }
                }
                TransformStep::ScaleDivide(d) => {
                    if d == 0 || !m.is_multiple_of(d) {
                        return Err(ZnError::BadScaleDivisor { divisor: d, modulus: m });
                    }
                    m /= d;
                }
            }
        }
        Ok(Self {
            source_modulus,
            target_modulus: m,
            steps,
        })
    }

    pub fn source_modulus(&self) -> u64 {
        self.source_modulus
    }

    pub fn target_modulus(&self) -> u64 {
        self.target_modulus
    }

    pub fn steps(&self) -> &[TransformStep] {
        &self.steps
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps in order to `set`.
    pub fn apply(&self, set: &ResidueSet) -> Result<ResidueSet, ZnError> {
        if set.modulus() != self.source_modulus {
            return Err(ZnError::ModulusMismatch {
                expected: self.source_modulus,
                got: set.modulus(),
            });
        }
        let mut cur = set.clone();
        for step in &self.steps {
            cur = match *step {
                TransformStep::Translate(c) => cur.translate(c),
                TransformStep::UnitMultiply(d) => cur.unit_multiply(d)?,
                TransformStep::ScaleDivide(d) => cur.scale_divide(d)?,
            };
        }
        Ok(cur)
    }

    /// Pulls a coloring of the reduced (target) instance back to the source
    /// instance, one step at a time in reverse:
    ///
    /// - `UnitMultiply(d)` pulls back by composing with multiplication,
    ///   `χ(y) = χ'(dy)`;
    /// - `Translate(c)` pulls back by the index shift `χ(y) = χ'(y + c)`;
    /// - `ScaleDivide(d)` lifts `χ'` on `Z_{n'}` to `Z_{dn'}` constant on each
    ///   coset offset, `χ(qd + c) = χ'(q)` for `0 ≤ c < d`.
    ///
    /// A coloring polychromatic for the reduced set pulls back to one
    /// polychromatic for the source set.
    pub fn pull_back(&self, coloring: &Coloring) -> Result<Coloring, ZnError> {
        if coloring.modulus() != self.target_modulus {
            return Err(ZnError::ModulusMismatch {
                expected: self.target_modulus,
                got: coloring.modulus(),
            });
        }
        // modulus in effect just before each step
        let mut moduli = Vec::with_capacity(self.steps.len());
        let mut m = self.source_modulus;
        for step in &self.steps {
            moduli.push(m);
            if let TransformStep::ScaleDivide(d) = step {
                m /= d;
            }
        }
        let k = coloring.num_colors();
        let mut chi = coloring.clone();
        for (step, &m_before) in self.steps.iter().zip(&moduli).rev() {
            chi = match *step {
                TransformStep::Translate(c) => {
                    Coloring::from_fn(m_before, k, |y| chi.color((y + c % m_before) % m_before))?
                }
                TransformStep::UnitMultiply(d) => {
                    Coloring::from_fn(m_before, k, |y| chi.color(mul_mod(d, y, m_before)))?
                }
                TransformStep::ScaleDivide(d) => {
                    Coloring::from_fn(m_before, k, |x| chi.color(x / d))?
                }
            };
        }
        Ok(chi)
    }

    /// Short human-readable form, e.g. `translate(+4) ; scale(/3)`.
    pub fn summary(&self) -> String {
        if self.steps.is_empty() {
            return "id".to_string();
        }
        self.steps
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

/// Which of the two normal forms a 3-element set reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Reduced set `{0, 1, b'}` with `b' ≤ ⌈n'/2⌉`.
    CaseI,
    /// Reduced set `{0, a, b}` with `gcd(a, n') > 1`, `gcd(b, n') > 1`, and
    /// `gcd(a, b, n') = 1`.
    CaseII,
}

/// The reduced instance of a 3-element set together with the chain that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    kind: CaseKind,
    reduced: ResidueSet,
    chain: TransformChain,
}

impl CanonicalForm {
    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn reduced_set(&self) -> &ResidueSet {
        &self.reduced
    }

    pub fn reduced_modulus(&self) -> u64 {
        self.reduced.modulus()
    }

    pub fn chain(&self) -> &TransformChain {
        &self.chain
    }
}

/// Pulls a coloring of the reduced instance back to the original instance.
pub fn pull_back_coloring(form: &CanonicalForm, coloring: &Coloring) -> Result<Coloring, ZnError> {
    form.chain().pull_back(coloring)
}

/// Reduces a 3-element set to canonical form.
///
/// The pipeline is deterministic: translate the minimum to 0, divide out
/// `gcd(elements, n)`, then multiply by the inverse of the smallest nonzero
/// invertible element (tested in increasing order) to reach `{0, 1, c}`, and
/// finally negate-and-shift when `c` exceeds `⌈n'/2⌉` so the third element is
/// small. Negation is recorded as `UnitMultiply(n'-1)` followed by
/// `Translate(1)`. When no element is invertible the set is already in the
/// second normal form.
pub fn normalize(set: &ResidueSet) -> Result<CanonicalForm, ZnError> {
    if set.len() != 3 {
        return Err(ZnError::WrongSize {
            expected: 3,
            got: set.len(),
        });
    }
    let mut steps = Vec::new();
    let mut cur = set.clone();
    let mut n = cur.modulus();

    let min = cur.elements()[0];
    if min != 0 {
        let c = n - min;
        cur = cur.translate(c);
        steps.push(TransformStep::Translate(c));
    }

    let g = cur.elements().iter().fold(n, |acc, &e| gcd(acc, e));
    if g > 1 {
        cur = cur.scale_divide(g)?;
        n /= g;
        steps.push(TransformStep::ScaleDivide(g));
    }

    let unit = cur.elements()[1..].iter().copied().find(|&u| gcd(u, n) == 1);
    let kind = match unit {
        Some(u) => {
            let inv = mod_inverse(u, n).expect("gcd(u, n) = 1");
            if inv != 1 {
                cur = cur.unit_multiply(inv)?;
                steps.push(TransformStep::UnitMultiply(inv));
            }
            debug_assert_eq!(&cur.elements()[..2], &[0, 1]);
            let c = cur.elements()[2];
            if c > n.div_ceil(2) {
                // b' = n - c + 1 via negation then a shift by one
                cur = cur.unit_multiply(n - 1)?;
                steps.push(TransformStep::UnitMultiply(n - 1));
                cur = cur.translate(1);
                steps.push(TransformStep::Translate(1));
            }
            CaseKind::CaseI
        }
        None => CaseKind::CaseII,
    };

    let chain = TransformChain {
        source_modulus: set.modulus(),
        target_modulus: n,
        steps,
    };
    debug_assert_eq!(chain.apply(set).as_ref(), Ok(&cur));
    Ok(CanonicalForm {
        kind,
        reduced: cur,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: u64, elems: &[u64]) -> ResidueSet {
        ResidueSet::new(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn set_reduces_sorts_and_dedups() {
        let s = set(6, &[9, 0, 3]);
        assert_eq!(s.elements(), &[0, 3]);
        assert!(ResidueSet::new(0, [0]).is_err());
        assert!(ResidueSet::new(3, []).is_err());
    }

    #[test]
    fn translates_of_singleton() {
        let all = translates(&set(3, &[0]));
        assert_eq!(all, vec![set(3, &[0]), set(3, &[1]), set(3, &[2])]);
    }

    #[test]
    fn translates_keep_duplicates() {
        // <3> has order 2 in Z_6, so shifts 0 and 3 give the same set
        let all = translates(&set(6, &[0, 3]));
        assert_eq!(all.len(), 6);
        assert_eq!(all[3], all[0]);
    }

    #[test]
    fn fano_incidence_is_a_circulant_design() {
        // the 7 translates of {0,1,3} in Z_7 form the Fano plane: the 7x7
        // incidence matrix is a circulant and every pair of points lies on
        // exactly one line
        let lines = translates(&set(7, &[0, 1, 3]));
        assert_eq!(lines.len(), 7);
        let incidence: Vec<[bool; 7]> = lines
            .iter()
            .map(|line| std::array::from_fn(|x| line.contains(x as u64)))
            .collect();
        for a in 0..7usize {
            for x in 0..7usize {
                assert_eq!(incidence[a][x], incidence[0][(x + 7 - a) % 7]);
            }
        }
        for p in 0..7u64 {
            for q in (p + 1)..7 {
                let on_both = lines.iter().filter(|l| l.contains(p) && l.contains(q)).count();
                assert_eq!(on_both, 1, "points {p},{q}");
            }
        }
    }

    #[test]
    fn subgroup_order_examples() {
        assert_eq!(subgroup_order(12, 4), 3);
        assert_eq!(subgroup_order(105, 18), 35);
        assert_eq!(subgroup_order(7, 3), 7);
        assert_eq!(subgroup_order(12, 0), 1);
    }

    #[test]
    fn normalize_negates_large_third_element() {
        // b = 5 > ceil(7/2) = 4, so b' = 7 - 5 + 1 = 3
        let form = normalize(&set(7, &[0, 1, 5])).unwrap();
        assert_eq!(form.kind(), CaseKind::CaseI);
        assert_eq!(form.reduced_set(), &set(7, &[0, 1, 3]));
        assert_eq!(
            form.chain().steps(),
            &[TransformStep::UnitMultiply(6), TransformStep::Translate(1)]
        );
    }

    #[test]
    fn normalize_keeps_case_two_untouched() {
        let form = normalize(&set(105, &[0, 18, 25])).unwrap();
        assert_eq!(form.kind(), CaseKind::CaseII);
        assert_eq!(form.reduced_set(), &set(105, &[0, 18, 25]));
        assert!(form.chain().is_identity());
    }

    #[test]
    fn normalize_divides_common_factor() {
        let form = normalize(&set(21, &[0, 3, 9])).unwrap();
        assert_eq!(form.kind(), CaseKind::CaseI);
        assert_eq!(form.reduced_modulus(), 7);
        assert_eq!(form.reduced_set(), &set(7, &[0, 1, 3]));
        assert_eq!(form.chain().steps(), &[TransformStep::ScaleDivide(3)]);
    }

    #[test]
    fn normalize_rejects_other_sizes() {
        assert_eq!(
            normalize(&set(9, &[0, 4])),
            Err(ZnError::WrongSize { expected: 3, got: 2 })
        );
    }

    #[test]
    fn pull_back_identity_chain() {
        let chain = TransformChain::identity(6);
        let chi = Coloring::parse(6, 2, "010101").unwrap();
        assert_eq!(chain.pull_back(&chi).unwrap(), chi);
    }

    #[test]
    fn pull_back_scale_divide_duplicates_on_cosets() {
        let chain = TransformChain {
            source_modulus: 9,
            target_modulus: 3,
            steps: vec![TransformStep::ScaleDivide(3)],
        };
        let chi = Coloring::parse(3, 3, "012").unwrap();
        assert_eq!(chain.pull_back(&chi).unwrap().digits(), "000111222");
    }

    #[test]
    fn pull_back_rejects_wrong_modulus() {
        let chain = TransformChain::identity(6);
        let chi = Coloring::parse(5, 2, "01010").unwrap();
        assert!(matches!(
            chain.pull_back(&chi),
            Err(ZnError::ModulusMismatch { expected: 6, got: 5 })
        ));
    }

    #[test]
    fn pull_back_constant_witness() {
        // p_21({0,3,9}) = 1: the constant witness lifts to a constant witness
        let form = normalize(&set(21, &[0, 3, 9])).unwrap();
        let lifted = pull_back_coloring(&form, &Coloring::constant(7)).unwrap();
        assert_eq!(lifted, Coloring::constant(21));
    }

    proptest! {
        #[test]
        fn subgroup_order_times_gcd_is_n(n in 1u64..5000, g in 0u64..5000) {
            let g = g % n;
            prop_assert_eq!(subgroup_order(n, g) * gcd(n, g), n);
        }

        #[test]
        fn normalize_is_idempotent(n in 3u64..400, a in 1u64..400, b in 1u64..400) {
            let s = ResidueSet::new(n, [0, a, b]).unwrap();
            prop_assume!(s.len() == 3);
            let form = normalize(&s).unwrap();
            let again = normalize(form.reduced_set()).unwrap();
            prop_assert!(again.chain().is_identity());
            prop_assert_eq!(again.reduced_set(), form.reduced_set());
            prop_assert_eq!(again.kind(), form.kind());
        }

        #[test]
        fn normalized_form_satisfies_invariants(n in 3u64..400, a in 1u64..400, b in 1u64..400) {
            let s = ResidueSet::new(n, [0, a, b]).unwrap();
            prop_assume!(s.len() == 3);
            let form = normalize(&s).unwrap();
            let n2 = form.reduced_modulus();
            let e = form.reduced_set().elements();
            let g_all = e.iter().fold(n2, |acc, &x| gcd(acc, x));
            prop_assert_eq!(g_all, 1);
            match form.kind() {
                CaseKind::CaseI => {
                    prop_assert_eq!(e[0], 0);
                    prop_assert_eq!(e[1], 1);
                    prop_assert!(e[2] <= n2.div_ceil(2));
                }
                CaseKind::CaseII => {
                    prop_assert_eq!(e[0], 0);
                    prop_assert!(gcd(e[1], n2) > 1);
                    prop_assert!(gcd(e[2], n2) > 1);
                }
            }
            // the recorded chain really maps the source to the reduced set
            prop_assert_eq!(form.chain().apply(&s).unwrap(), form.reduced_set().clone());
        }
    }
}
