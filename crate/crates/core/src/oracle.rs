//! Independent ground truth: translate verification, exhaustive
//! polychromatic-number search, exact-cover tiling, complement closure, and
//! blocking sets.
//!
//! Everything here is defined straight from first principles and shares no
//! code path with the closed-form classification or the witness
//! constructors, so the two sides can be played against each other.

use thiserror::Error;

use crate::coloring::Coloring;
use crate::zn::ResidueSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the configured search bound {bound}")]
    BoundExceeded { n: u64, bound: u64 },
    #[error("set has modulus {expected}, coloring has modulus {got}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error("the given sets do not tile Z_{modulus}")]
    NotATiling { modulus: u64 },
    #[error("expected a set {{0, a, b}} containing 0 with 3 elements")]
    NotZeroAB,
}

/// Search bounds for the exhaustive oracles. Exceeding a bound is an explicit
/// error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest `n` for `brute_force_poly`.
    pub poly: u64,
    /// Largest `n` for the tiling search when driven from the CLI.
    pub tile: u64,
    /// Largest `n` for `min_blocking_size`.
    pub blocking: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            poly: 40,
            tile: 60,
            blocking: 24,
        }
    }
}

/// A translate that misses at least one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub shift: u64,
    pub translate: ResidueSet,
    pub missing_colors: Vec<u8>,
}

/// Checks every translate `a + S` against the coloring; the returned list is
/// empty exactly when the coloring is `S`-polychromatic with all
/// `coloring.num_colors()` colors.
pub fn verify(set: &ResidueSet, coloring: &Coloring) -> Result<Vec<Violation>, OracleError> {
    let n = set.modulus();
    if coloring.modulus() != n {
        return Err(OracleError::ModulusMismatch {
            expected: n,
            got: coloring.modulus(),
        });
    }
    let k = coloring.num_colors() as usize;
    let mut violations = Vec::new();
    let mut seen = vec![false; k];
    for a in 0..n {
        seen.fill(false);
        for &s in set.elements() {
            seen[coloring.color((a + s) % n) as usize] = true;
        }
        if seen.iter().any(|&present| !present) {
            let missing_colors = (0..k as u8).filter(|&c| !seen[c as usize]).collect();
            violations.push(Violation {
                shift: a,
                translate: set.translate(a),
                missing_colors,
            });
        }
    }
    Ok(violations)
}

/// Convenience wrapper: true when `verify` reports no violations.
pub fn verifies(set: &ResidueSet, coloring: &Coloring) -> bool {
    matches!(verify(set, coloring), Ok(v) if v.is_empty())
}

struct PolySearch {
    n: usize,
    k: u8,
    full: u64,
    /// translate ids containing each position: `a = x - s mod n`
    covering: Vec<Vec<u32>>,
    /// bitmask of colors present in each translate
    mask: Vec<u64>,
    /// uncolored slots left in each translate
    uncolored: Vec<u8>,
    colors: Vec<u8>,
    /// saved masks, one entry per covering id of each placed position
    journal: Vec<u64>,
}

impl PolySearch {
    fn new(set: &ResidueSet, k: u8) -> Self {
        let n = set.modulus() as usize;
        let mut covering = vec![Vec::with_capacity(set.len()); n];
        for x in 0..n as u64 {
            for &s in set.elements() {
                let a = (x + n as u64 - s) % n as u64;
                covering[x as usize].push(a as u32);
            }
        }
        Self {
            n,
            k,
            full: (1u64 << k) - 1,
            covering,
            mask: vec![0; n],
            uncolored: vec![set.len() as u8; n],
            colors: vec![0; n],
            journal: Vec::with_capacity(n * set.len()),
        }
    }

    /// Colors position `pos`; rolls back and reports false when some touched
    /// translate can no longer collect all `k` colors.
    fn place(&mut self, pos: usize, color: u8) -> bool {
        self.colors[pos] = color;
        let bit = 1u64 << color;
        let mut ok = true;
        for i in 0..self.covering[pos].len() {
            let t = self.covering[pos][i] as usize;
            self.journal.push(self.mask[t]);
            self.mask[t] |= bit;
            self.uncolored[t] -= 1;
            let missing = (self.full & !self.mask[t]).count_ones() as u8;
            if missing > self.uncolored[t] {
                ok = false;
            }
        }
        if !ok {
            self.unplace(pos);
        }
        ok
    }

    fn unplace(&mut self, pos: usize) {
        for i in (0..self.covering[pos].len()).rev() {
            let t = self.covering[pos][i] as usize;
            self.uncolored[t] += 1;
            self.mask[t] = self.journal.pop().expect("journal underflow");
        }
    }

    fn search(&mut self) -> Option<Coloring> {
        if self.dfs(0, 0) {
            Coloring::new(self.n as u64, self.k, self.colors.clone()).ok()
        } else {
            None
        }
    }

    fn dfs(&mut self, pos: usize, max_used: u8) -> bool {
        if pos == self.n {
            return true;
        }
        // canonical colorings only: a new color may appear only as the next
        // unused index
        let limit = (max_used + 1).min(self.k - 1);
        for c in 0..=limit {
            if self.place(pos, c) {
                if self.dfs(pos + 1, max_used.max(c)) {
                    return true;
                }
                self.unplace(pos);
            }
        }
        false
    }
}

/// Exhaustive polychromatic number with a verified witness.
///
/// Tries `k = |S|` down to 2 with a backtracking search over color
/// assignments in element order (forward pruning on translates, canonical
/// color symmetry breaking) and falls back to the constant coloring. A
/// translate can hold at most `|S|` colors, so no larger `k` is considered.
pub fn brute_force_poly(set: &ResidueSet, bound: u64) -> Result<(u8, Coloring), OracleError> {
    let n = set.modulus();
    if n > bound {
        return Err(OracleError::BoundExceeded { n, bound });
    }
    if set.len() > 63 {
        // color masks are u64; sets this large sit far beyond any sane bound
        return Err(OracleError::BoundExceeded { n, bound: 63 });
    }
    let k_max = set.len() as u8;
    for k in (2..=k_max).rev() {
        if let Some(witness) = PolySearch::new(set, k).search() {
            debug_assert!(verifies(set, &witness));
            return Ok((k, witness));
        }
    }
    Ok((1, Coloring::constant(n)))
}

/// A complement set with `S ⊕ T = Z_n`, or a proof of absence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileCertificate {
    /// The complement, normalized to contain 0.
    pub complement: Option<ResidueSet>,
    /// Whether the whole search space was explored (always true when no
    /// complement exists; the search stops early on the first solution).
    pub exhausted: bool,
}

/// Exact-cover search for a set of shifts of `S` partitioning `Z_n`.
///
/// Branches on the smallest uncovered element, trying candidate shifts in
/// increasing order, so the first solution is deterministic.
pub fn find_complement(set: &ResidueSet) -> TileCertificate {
    let n = set.modulus();
    if !n.is_multiple_of(set.len() as u64) {
        return TileCertificate {
            complement: None,
            exhausted: true,
        };
    }
    let mut covered = vec![false; n as usize];
    let mut chosen = Vec::with_capacity((n / set.len() as u64) as usize);
    if cover_from(set, &mut covered, &mut chosen, 0) {
        let min = *chosen.iter().min().expect("nonempty cover");
        let complement =
            ResidueSet::new(n, chosen.iter().map(|&t| (t + n - min) % n)).expect("nonempty");
        TileCertificate {
            complement: Some(complement),
            exhausted: false,
        }
    } else {
        TileCertificate {
            complement: None,
            exhausted: true,
        }
    }
}

fn cover_from(set: &ResidueSet, covered: &mut Vec<bool>, chosen: &mut Vec<u64>, lo: usize) -> bool {
    let n = covered.len() as u64;
    let Some(e) = covered[lo..].iter().position(|&c| !c).map(|i| (lo + i) as u64) else {
        return true;
    };
    let mut candidates: Vec<u64> = set.elements().iter().map(|&s| (e + n - s) % n).collect();
    candidates.sort_unstable();
    for t in candidates {
        if set.elements().iter().all(|&s| !covered[((t + s) % n) as usize]) {
            for &s in set.elements() {
                covered[((t + s) % n) as usize] = true;
            }
            chosen.push(t);
            if cover_from(set, covered, chosen, e as usize) {
                return true;
            }
            chosen.pop();
            for &s in set.elements() {
                covered[((t + s) % n) as usize] = false;
            }
        }
    }
    false
}

/// Checks the closure property of complements of `{0, a, b}`: every `x` in
/// `T` has `x + (a + b)` in `T` as well. Errors unless `(S, T)` really tiles.
pub fn complement_closure_check(
    set: &ResidueSet,
    complement: &ResidueSet,
) -> Result<bool, OracleError> {
    let n = set.modulus();
    let [zero, a, b] = set.elements() else {
        return Err(OracleError::NotZeroAB);
    };
    if *zero != 0 {
        return Err(OracleError::NotZeroAB);
    }
    if complement.modulus() != n {
        return Err(OracleError::ModulusMismatch {
            expected: n,
            got: complement.modulus(),
        });
    }
    let mut hits = vec![0u32; n as usize];
    for &s in set.elements() {
        for &t in complement.elements() {
            hits[((s + t) % n) as usize] += 1;
        }
    }
    if hits.iter().any(|&h| h != 1) {
        return Err(OracleError::NotATiling { modulus: n });
    }
    let step = (a + b) % n;
    Ok(complement
        .elements()
        .iter()
        .all(|&x| complement.contains((x + step) % n)))
}

/// Whether `T` meets every translate of `S` (equivalently `Z_n \ T` contains
/// no translate of `S`).
pub fn is_blocking(set: &ResidueSet, blocker: &ResidueSet) -> bool {
    assert_eq!(set.modulus(), blocker.modulus(), "mismatched moduli");
    let n = set.modulus();
    (0..n).all(|a| set.elements().iter().any(|&s| blocker.contains((a + s) % n)))
}

/// Smallest blocking set by iterative deepening over the size, returning the
/// lexicographically first witness.
pub fn min_blocking_size(
    set: &ResidueSet,
    bound: u64,
) -> Result<(usize, ResidueSet), OracleError> {
    let n = set.modulus();
    if n > bound {
        return Err(OracleError::BoundExceeded { n, bound });
    }
    if n > 128 {
        return Err(OracleError::BoundExceeded { n, bound: 128 });
    }
    let translate_masks: Vec<u128> = (0..n)
        .map(|a| {
            set.elements()
                .iter()
                .fold(0u128, |m, &s| m | (1 << ((a + s) % n)))
        })
        .collect();
    let translate_max: Vec<u64> = (0..n)
        .map(|a| set.elements().iter().map(|&s| (a + s) % n).max().unwrap())
        .collect();
    let mut chosen = Vec::new();
    for size in 1..=n as usize {
        if let Some(witness) = blocking_dfs(&translate_masks, &translate_max, n, size, 0, 0, &mut chosen)
        {
            let t = ResidueSet::new(n, witness).expect("nonempty");
            return Ok((size, t));
        }
    }
    unreachable!("Z_n itself blocks every translate");
}

fn blocking_dfs(
    masks: &[u128],
    maxes: &[u64],
    n: u64,
    size: usize,
    start: u64,
    hit: u128,
    chosen: &mut Vec<u64>,
) -> Option<Vec<u64>> {
    if chosen.len() == size {
        return if masks.iter().all(|&m| m & hit != 0) {
            Some(chosen.clone())
        } else {
            None
        };
    }
    // a translate whose elements all lie before `start` can never be hit
    if masks
        .iter()
        .zip(maxes)
        .any(|(&m, &mx)| m & hit == 0 && mx < start)
    {
        return None;
    }
    let remaining = size - chosen.len();
    let last_start = n - remaining as u64;
    for x in start..=last_start {
        chosen.push(x);
        let found = blocking_dfs(masks, maxes, n, size, x + 1, hit | (1 << x), chosen);
        if found.is_some() {
            return found;
        }
        chosen.pop();
    }
    None
}
