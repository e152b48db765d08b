//! Vectors of F₂ⁿ as bitmasks, and the bijection between nonzero vectors and
//! nonempty subsets of the color set `X = {x₁, …, xₙ}`.
//!
//! Bit `i - 1` (least significant first) is the indicator of color `xᵢ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of colors. Keeps `2ⁿ − 1` inside a `u32`.
pub const MAX_DIMENSION: u32 = 30;

/// Number of colors `n = |X|`, with `1 ≤ n ≤ 30`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_DIMENSION).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::InvalidDimension(n))
        }
    }

    /// The dimension whose universe `2ⁿ − 1` equals `size`, if there is one
    /// within the supported range.
    pub fn from_universe(size: usize) -> Option<Self> {
        let next = size.checked_add(1)?;
        if size == 0 || !next.is_power_of_two() {
            return None;
        }
        Dimension::new(next.trailing_zeros()).ok()
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `2ⁿ − 1`: the number of nonzero vectors, nonempty subsets, and STS points.
    #[inline]
    pub fn universe_size(self) -> usize {
        (1usize << self.0) - 1
    }

    /// Bitmask with all `n` low bits set.
    #[inline]
    pub fn mask(self) -> u32 {
        ((1u64 << self.0) - 1) as u32
    }

    #[inline]
    pub fn contains(self, bits: u32) -> bool {
        bits != 0 && bits <= self.mask()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonzero vector of F₂ⁿ.
///
/// Ordering compares the bitmask first, so sorting a set of same-dimension
/// vectors sorts them as unsigned integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorVector {
    bits: u32,
    dim: Dimension,
}

impl ColorVector {
    pub fn new(bits: u32, dim: Dimension) -> Result<Self> {
        if dim.contains(bits) {
            Ok(ColorVector { bits, dim })
        } else {
            Err(Error::InvalidVector { bits, n: dim.get() })
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> Dimension {
        self.dim
    }

    /// Sum in F₂ⁿ (symmetric difference of the supports). `None` when
    /// `a = b`, since the zero vector is not a color.
    pub fn xor_add(self, other: ColorVector) -> Result<Option<ColorVector>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim.get(),
                right: other.dim.get(),
            });
        }
        let bits = self.bits ^ other.bits;
        Ok((bits != 0).then_some(ColorVector { bits, dim: self.dim }))
    }

    /// Indicator vector of a nonempty set of 1-based color indices.
    pub fn from_subset<I>(colors: I, dim: Dimension) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut bits = 0u32;
        for i in colors {
            if i == 0 || i > dim.get() {
                return Err(Error::ColorOutOfRange { index: i, n: dim.get() });
            }
            bits |= 1 << (i - 1);
        }
        if bits == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(ColorVector { bits, dim })
    }

    /// The support: 1-based indices of the colors present.
    pub fn to_subset(self) -> BTreeSet<u32> {
        (0..self.dim.get())
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Lowercase hex, no prefix, no leading zeros.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(text: &str, dim: Dimension) -> Result<Self> {
        let bits = parse_hex(text).ok_or_else(|| Error::Input(format!("bad hex vector '{text}'")))?;
        ColorVector::new(bits, dim)
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.dim.get() as usize)
    }
}

/// Parses the hex rendering used in the file formats. Uppercase digits are
/// rejected so that the rendering stays canonical.
pub(crate) fn parse_hex(text: &str) -> Option<u32> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return None;
    }
    u32::from_str_radix(text, 16).ok()
}
