//! Explicit witness colorings realizing the classified polychromatic number.
//!
//! [`witness`] dispatches on the classification: a constant coloring when
//! p = 1, the mod-3 striping pulled back through a gcd reduction when p = 3,
//! and one of the two-color constructions otherwise. The two-color case goes
//! through [`crate::zn::normalize`]: sets equivalent to `{0, 1, b}` are
//! colored by parity patterns or by block decompositions of the line, and the
//! remaining sets by an ell-tile matrix coloring laid out along cosets.
//! Every constructor verifies its output before returning it.

use thiserror::Error;

use crate::classify::{self, ClassifyError};
use crate::coloring::{Coloring, ColoringError};
use crate::oracle;
use crate::zn::{self, gcd, mul_mod, subgroup_order, CaseKind, ResidueSet, TransformChain, ZnError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("modulus {0} is not divisible by 3")]
    NotMultipleOfThree(u64),
    #[error("modulus {0} must be even")]
    OddModulus(u64),
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("no such coloring of Z_{0} exists")]
    UnsupportedModulus(u64),
    #[error("offset b = {b} out of range for modulus {n}")]
    BadOffset { n: u64, b: u64 },
    #[error("matrix sides must be at least 2, got {s} x {t}")]
    MatrixTooSmall { s: usize, t: usize },
    #[error("block coloring needs n odd, gcd(a,n) > 1, gcd(b,n) > 1 and gcd(a,b,n) = 1")]
    BlockPrecondition { n: u64, a: u64, b: u64 },
    #[error("witnesses exist only for sets of size 2 or 3, got {0}")]
    UnsupportedSize(usize),
    #[error("constructed coloring failed verification for S = {set} mod {modulus}")]
    VerificationFailed { modulus: u64, set: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Zn(#[from] ZnError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// The mod-3 striping `x ↦ x mod 3` with three colors.
pub fn color_rby(n: u64) -> Result<Coloring, ConstructError> {
    if !n.is_multiple_of(3) {
        return Err(ConstructError::NotMultipleOfThree(n));
    }
    Ok(Coloring::from_fn(n, 3, |x| (x % 3) as u8)?)
}

/// The parity coloring `x ↦ x mod 2` of an even modulus.
pub fn color_alternating(n: u64) -> Result<Coloring, ConstructError> {
    if !n.is_multiple_of(2) {
        return Err(ConstructError::OddModulus(n));
    }
    Ok(Coloring::from_fn(n, 2, |x| (x % 2) as u8)?)
}

/// The coloring RRBRBRB… of an odd modulus: one repeated color up front,
/// alternating afterwards. Intended for `S = {0, 1, b}` with `b` even.
pub fn color_two_odd_even_b(n: u64) -> Result<Coloring, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenModulus(n));
    }
    Ok(Coloring::from_fn(n, 2, |x| {
        if x == 0 {
            0
        } else {
            ((x - 1) % 2) as u8
        }
    })?)
}

/// A two-coloring for `{0, 1, 3}` on odd `n ≥ 5`, `n ≠ 7`: the line is cut
/// into an even number of blocks of length 2 or 3 colored alternately, so
/// every translate straddles two adjacent blocks.
///
/// The decomposition is fixed: `n ≡ 1 (mod 4)` uses `(n-3)/2` twos then one
/// 3; `n ≡ 3 (mod 4)` (so `n ≥ 11`) uses `(n-9)/2` twos then three 3s.
pub fn color_013(n: u64) -> Result<Coloring, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenModulus(n));
    }
    if n < 5 || n == 7 {
        return Err(ConstructError::UnsupportedModulus(n));
    }
    let (twos, threes) = if n % 4 == 1 {
        ((n - 3) / 2, 1)
    } else {
        ((n - 9) / 2, 3)
    };
    let blocks = (0..twos).map(|_| 2u64).chain((0..threes).map(|_| 3u64));
    let mut colors = Vec::with_capacity(n as usize);
    for (i, len) in blocks.enumerate() {
        colors.extend(std::iter::repeat_n((i % 2) as u8, len as usize));
    }
    debug_assert_eq!(colors.len() as u64, n);
    debug_assert_eq!((twos + threes) % 2, 0);
    Ok(Coloring::new(n, 2, colors)?)
}

fn chi0(x: u64, b: u64) -> u8 {
    let y = x % (b - 2);
    if y == 0 || y % 2 == 1 {
        0
    } else {
        1
    }
}

/// A two-coloring for `S = {0, 1, b}` with `n ≥ 9` and `b` both odd,
/// `5 ≤ b ≤ ⌈n/2⌉`.
///
/// Writing `n = m(b-2) + r`, the base pattern repeats RRB RB…B with period
/// `b - 2`; the residue `r` selects one of five boundary repairs near the
/// wrap-around. For `r ≥ 4` the two cells `n-b` and `n-b+1` admit more than
/// one valid color, so the candidates are tried in a fixed order and the
/// first one passing verification is returned. Every output is verified
/// before its return.
pub fn color_01b(n: u64, b: u64) -> Result<Coloring, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenModulus(n));
    }
    if n < 9 || b.is_multiple_of(2) || b < 5 || b > n.div_ceil(2) {
        return Err(ConstructError::BadOffset { n, b });
    }
    let period = b - 2;
    let r = n % period;
    debug_assert!(n / period >= 2);

    let set = ResidueSet::new(n, [0, 1, b])?;
    let coloring = match r {
        0 => Coloring::from_fn(n, 2, |x| chi0(x, b))?,
        1 => Coloring::from_fn(n, 2, |x| {
            if x <= n - b {
                chi0(x, b)
            } else if x == n - 1 {
                1
            } else {
                (x % 2) as u8 // R on even, B on odd
            }
        })?,
        2 => Coloring::from_fn(n, 2, |x| {
            if x < n - b {
                chi0(x, b)
            } else if x == n - b {
                0
            } else if x == n - b + 1 {
                1
            } else {
                ((x + 1) % 2) as u8 // R on odd, B on even
            }
        })?,
        3 => Coloring::from_fn(n, 2, |x| {
            if x <= n - b - 2 {
                chi0(x, b)
            } else if x == n - b - 1 {
                0
            } else if x == n - 1 {
                1
            } else {
                (x % 2) as u8
            }
        })?,
        _ => chi4(n, b, r, &set)?,
    };
    if !oracle::verifies(&set, &coloring) {
        return Err(ConstructError::VerificationFailed {
            modulus: n,
            set: set.to_string(),
        });
    }
    Ok(coloring)
}

/// The `r ≥ 4` repair: keep the base pattern up to `n-b-r+4`, alternate
/// across the gap, alternate on `[n-b+2, n-2]` anchored so `n-r+2` is B, pin
/// `n-1` to B, then settle the two free cells by trial.
#[allow(clippy::needless_range_loop)] // positions in Z_n, not list items
fn chi4(n: u64, b: u64, r: u64, set: &ResidueSet) -> Result<Coloring, ConstructError> {
    let prefix_end = (n - b - r + 4) as usize;
    let anchor = n - r + 2;
    let mut colors = vec![0u8; n as usize];
    for x in 0..=prefix_end {
        colors[x] = chi0(x as u64, b);
    }
    let mut prev = colors[prefix_end];
    for x in prefix_end + 1..=(n - b + 1) as usize {
        prev ^= 1;
        colors[x] = prev;
    }
    for x in (n - b + 2)..=(n - 2) {
        colors[x as usize] = if (x.abs_diff(anchor)) % 2 == 0 { 1 } else { 0 };
    }
    colors[(n - 1) as usize] = 1;

    let free0 = (n - b) as usize;
    let free1 = (n - b + 1) as usize;
    let base0 = colors[free0];
    for c1 in [1u8, 0] {
        for c0 in [base0, base0 ^ 1] {
            colors[free0] = c0;
            colors[free1] = c1;
            let candidate = Coloring::new(n, 2, colors.clone())?;
            if oracle::verifies(set, &candidate) {
                return Ok(candidate);
            }
        }
    }
    Err(ConstructError::VerificationFailed {
        modulus: n,
        set: set.to_string(),
    })
}

/// An `s × t` 0/1 matrix in which every wrap-around ell-tile (a 2×2 submatrix
/// minus its lower-right entry) sees both colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl EllMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.entries[(i % self.rows) * self.cols + (j % self.cols)]
    }

    /// Exhaustive check of all `rows × cols` wrap-around ell-tiles.
    pub fn all_ell_tiles_bichromatic(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let tile = [
                    self.entry(i, j),
                    self.entry(i, j + 1),
                    self.entry(i + 1, j),
                ];
                tile.contains(&0) && tile.contains(&1)
            })
        })
    }

    /// Row strings over R/B, top to bottom.
    pub fn row_letters(&self) -> Vec<String> {
        self.entries
            .chunks(self.cols)
            .map(|row| row.iter().map(|&c| ['R', 'B'][c as usize]).collect())
            .collect()
    }
}

/// Builds an ell-tile 2-coloring of an `s × t` matrix: row stripes when `s`
/// is even, column stripes when `t` is even, and otherwise a checkerboard
/// with the top-right and bottom-left corners flipped.
pub fn ell_tile_coloring(s: usize, t: usize) -> Result<EllMatrix, ConstructError> {
    if s < 2 || t < 2 {
        return Err(ConstructError::MatrixTooSmall { s, t });
    }
    let mut entries = vec![0u8; s * t];
    for i in 0..s {
        for j in 0..t {
            let color = if s.is_multiple_of(2) {
                (i % 2) as u8
            } else if t.is_multiple_of(2) {
                (j % 2) as u8
            } else if (i, j) == (0, t - 1) || (i, j) == (s - 1, 0) {
                1
            } else {
                ((i + j) % 2) as u8
            };
            entries[i * t + j] = color;
        }
    }
    let matrix = EllMatrix {
        rows: s,
        cols: t,
        entries,
    };
    debug_assert!(matrix.all_ell_tiles_bichromatic());
    Ok(matrix)
}

fn block_precondition(n: u64, a: u64, b: u64) -> Result<(u64, u64), ConstructError> {
    let s = gcd(a, n);
    let t = gcd(b, n);
    if n.is_multiple_of(2) || s <= 1 || t <= 1 || gcd(gcd(a, b), n) != 1 {
        return Err(ConstructError::BlockPrecondition { n, a, b });
    }
    Ok((s, t))
}

/// A two-coloring of `Z_n` for `S = {0, a, b}` with `n` odd, `gcd(a,n) > 1`,
/// `gcd(b,n) > 1`, and `gcd(a,b,n) = 1`.
///
/// The first `t = gcd(b,n)` rows of the matrix `m_ij = ai + bj` list every
/// element of `Z_n` exactly once (they are the `t` cosets of `<b>`); each
/// element takes the color of cell `(i mod t, j mod s)` of the `t × s`
/// ell-tile coloring, which turns translates of `S` into ell-tiles.
pub fn block_coloring(n: u64, a: u64, b: u64) -> Result<Coloring, ConstructError> {
    let (s, t) = block_precondition(n, a, b)?;
    let tile = ell_tile_coloring(t as usize, s as usize)?;
    let mut colors = vec![None; n as usize];
    for i in 0..t {
        for j in 0..n / t {
            let element = (mul_mod(a, i, n) + mul_mod(b, j, n)) % n;
            let color = tile.entry(i as usize, (j % s) as usize);
            // each element must appear exactly once in the first t rows
            if colors[element as usize].replace(color).is_some() {
                return Err(ConstructError::VerificationFailed {
                    modulus: n,
                    set: format!("{{0,{a},{b}}}"),
                });
            }
        }
    }
    let colors = colors
        .into_iter()
        .map(|c| c.expect("first t rows cover Z_n"))
        .collect();
    Ok(Coloring::new(n, 2, colors)?)
}

/// The constant `k` with `A_{i+1,j} = A_{i,j} + k·(bs)` in the block matrix:
/// row `i+1` of the block partition is row `i` shifted by `k` blocks.
pub fn block_row_shift(n: u64, a: u64, b: u64) -> Result<u64, ConstructError> {
    let (s, t) = block_precondition(n, a, b)?;
    let at = mul_mod(a, t, n);
    let bs = mul_mod(b, s, n);
    let blocks = n / (s * t);
    (0..blocks)
        .find(|&k| mul_mod(k, bs, n) == at)
        .ok_or(ConstructError::BlockPrecondition { n, a, b })
}

/// Which constructor produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessBranch {
    /// p = 1: the one-color coloring.
    Constant,
    /// p = 3: mod-3 striping on the gcd-reduced instance, pulled back.
    RbyPullback,
    /// Case i with even reduced modulus: parity coloring.
    CaseIAlternating,
    /// Case i, odd modulus, even third element: RRBRB….
    CaseITwoOddEvenB,
    /// Case i with third element 3: 2/3-block decomposition.
    CaseIBlocks013,
    /// Case i, odd modulus and third element `b ≥ 5`; `r_class` is
    /// `min(n mod (b-2), 4)`, identifying which boundary repair ran.
    CaseIChi { r_class: u8 },
    /// Case ii with even reduced modulus: parity coloring.
    CaseIIAlternating,
    /// Case ii, odd modulus: ell-tile block coloring.
    CaseIIBlocks,
    /// Size-2 set with p = 2: alternation along the cycles of `x ↦ x + b`.
    Size2Cycles,
}

/// A verified witness coloring with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub coloring: Coloring,
    pub branch: WitnessBranch,
    /// The reduction the coloring was pulled back through (identity when the
    /// instance was colored directly).
    pub chain: TransformChain,
}

/// Builds a coloring with exactly `p = classify(n, S)` colors in which every
/// translate of `S` sees every color. Verification runs before return; a
/// failure is an internal defect, not an input error.
pub fn witness(set: &ResidueSet) -> Result<Witness, ConstructError> {
    let witness = match set.len() {
        2 => witness_size2(set)?,
        3 => witness_size3(set)?,
        other => return Err(ConstructError::UnsupportedSize(other)),
    };
    if !oracle::verifies(set, &witness.coloring) {
        return Err(ConstructError::VerificationFailed {
            modulus: set.modulus(),
            set: set.to_string(),
        });
    }
    Ok(witness)
}

fn witness_size2(set: &ResidueSet) -> Result<Witness, ConstructError> {
    let n = set.modulus();
    let classification = classify::poly_number_size2(set)?;
    if classification.p() == 1 {
        return Ok(Witness {
            coloring: Coloring::constant(n),
            branch: WitnessBranch::Constant,
            chain: TransformChain::identity(n),
        });
    }
    // alternate along each cycle of x ↦ x + b; the cycle length |<b>| is even
    let b = set.elements()[1] - set.elements()[0];
    let order = subgroup_order(n, b);
    debug_assert_eq!(order % 2, 0);
    let mut colors = vec![0u8; n as usize];
    for start in 0..gcd(n, b) {
        let mut x = start;
        for step in 0..order {
            colors[x as usize] = (step % 2) as u8;
            x = (x + b) % n;
        }
    }
    Ok(Witness {
        coloring: Coloring::new(n, 2, colors)?,
        branch: WitnessBranch::Size2Cycles,
        chain: TransformChain::identity(n),
    })
}

fn witness_size3(set: &ResidueSet) -> Result<Witness, ConstructError> {
    let n = set.modulus();
    let classification = classify::poly_number_size3(set)?;
    match classification.p() {
        1 => Ok(Witness {
            coloring: Coloring::constant(n),
            branch: WitnessBranch::Constant,
            chain: TransformChain::identity(n),
        }),
        3 => witness_mod3(set),
        _ => witness_two_colors(set),
    }
}

/// p = 3: divide out `gcd(S - min S, n)`, stripe the reduced modulus by
/// residues mod 3, and pull back.
fn witness_mod3(set: &ResidueSet) -> Result<Witness, ConstructError> {
    let n = set.modulus();
    let min = set.elements()[0];
    let mut reduced = set.clone();
    let mut chain = Vec::new();
    if min != 0 {
        reduced = reduced.translate(n - min);
        chain.push(zn::TransformStep::Translate(n - min));
    }
    let g = reduced.elements().iter().fold(n, |acc, &e| gcd(acc, e));
    if g > 1 {
        reduced = reduced.scale_divide(g)?;
        chain.push(zn::TransformStep::ScaleDivide(g));
    }
    let chain = TransformChain::from_steps(n, chain)?;
    let rby = color_rby(reduced.modulus())?;
    Ok(Witness {
        coloring: chain.pull_back(&rby)?,
        branch: WitnessBranch::RbyPullback,
        chain,
    })
}

/// p = 2: normalize to one of the two canonical forms, color the reduced
/// instance, and pull back through the recorded chain.
fn witness_two_colors(set: &ResidueSet) -> Result<Witness, ConstructError> {
    let form = zn::normalize(set)?;
    let n2 = form.reduced_modulus();
    let elements = form.reduced_set().elements();
    let (reduced_coloring, branch) = match form.kind() {
        CaseKind::CaseI => {
            let b = elements[2];
            if n2 % 2 == 0 {
                (color_alternating(n2)?, WitnessBranch::CaseIAlternating)
            } else if b % 2 == 0 {
                (color_two_odd_even_b(n2)?, WitnessBranch::CaseITwoOddEvenB)
            } else if b == 3 {
                (color_013(n2)?, WitnessBranch::CaseIBlocks013)
            } else {
                let r_class = (n2 % (b - 2)).min(4) as u8;
                (color_01b(n2, b)?, WitnessBranch::CaseIChi { r_class })
            }
        }
        CaseKind::CaseII => {
            if n2 % 2 == 0 {
                (color_alternating(n2)?, WitnessBranch::CaseIIAlternating)
            } else {
                let (a, b) = (elements[1], elements[2]);
                (block_coloring(n2, a, b)?, WitnessBranch::CaseIIBlocks)
            }
        }
    };
    Ok(Witness {
        coloring: form.chain().pull_back(&reduced_coloring)?,
        branch,
        chain: form.chain().clone(),
    })
}
