//! Colorings of `Z_n` and their text form.
//!
//! A coloring assigns one of `k` colors to every element of `Z_n`. The
//! canonical text form is a string of `n` digit characters, character `i`
//! being the color of element `i`; colorings with at most three colors can
//! also be rendered with the letters R, B, Y (0 ↔ R, 1 ↔ B, 2 ↔ Y).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries, expected one per element of Z_{modulus}")]
    LengthMismatch { modulus: u64, got: usize },
    #[error("color {color} out of range for {num_colors} colors")]
    ColorOutOfRange { color: u8, num_colors: u8 },
    #[error("coloring must use at least one color")]
    NoColors,
    #[error("invalid color character {0:?}")]
    BadCharacter(char),
}

/// A `k`-coloring of `Z_n`: entry `i` is the color of element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    modulus: u64,
    num_colors: u8,
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(modulus: u64, num_colors: u8, colors: Vec<u8>) -> Result<Self, ColoringError> {
        if num_colors == 0 {
            return Err(ColoringError::NoColors);
        }
        if colors.len() as u64 != modulus {
            return Err(ColoringError::LengthMismatch {
                modulus,
                got: colors.len(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(ColoringError::ColorOutOfRange {
                color: c,
                num_colors,
            });
        }
        Ok(Self {
            modulus,
            num_colors,
            colors,
        })
    }

    /// The one-color coloring of `Z_n`.
    pub fn constant(modulus: u64) -> Self {
        Self {
            modulus,
            num_colors: 1,
            colors: vec![0; modulus as usize],
        }
    }

    /// Builds a coloring by evaluating `f` on every element of `Z_n`.
    pub fn from_fn(
        modulus: u64,
        num_colors: u8,
        f: impl FnMut(u64) -> u8,
    ) -> Result<Self, ColoringError> {
        Self::new(modulus, num_colors, (0..modulus).map(f).collect())
    }

    /// Parses the text form: digits `'0'..='9'` or the letters R, B, Y.
    pub fn parse(modulus: u64, num_colors: u8, text: &str) -> Result<Self, ColoringError> {
        let colors = text
            .chars()
            .map(|ch| match ch {
                '0'..='9' => Ok(ch as u8 - b'0'),
                'R' | 'r' => Ok(0),
                'B' | 'b' => Ok(1),
                'Y' | 'y' => Ok(2),
                other => Err(ColoringError::BadCharacter(other)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Self::new(modulus, num_colors, colors)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// The color of element `x` (reduced mod n).
    pub fn color(&self, x: u64) -> u8 {
        self.colors[(x % self.modulus) as usize]
    }

    /// The canonical digit string.
    pub fn digits(&self) -> String {
        self.colors.iter().map(|&c| (b'0' + c) as char).collect()
    }

    /// R/B/Y rendering; `None` when more than three colors are in play.
    pub fn letters(&self) -> Option<String> {
        if self.num_colors > 3 {
            return None;
        }
        Some(self.colors.iter().map(|&c| ['R', 'B', 'Y'][c as usize]).collect())
    }

    /// Elements of each color class, indexed by color.
    pub fn color_classes(&self) -> Vec<Vec<u64>> {
        let mut classes = vec![Vec::new(); self.num_colors as usize];
        for (x, &c) in self.colors.iter().enumerate() {
            classes[c as usize].push(x as u64);
        }
        classes
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}
