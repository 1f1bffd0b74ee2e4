//! Subsets of `{0, …, n−1}` as bit masks.
//!
//! A [`SubsetMask`] pairs a `u64` of membership bits with the size `n` of
//! the carrier it lives in, so complements are well defined. Orders above
//! [`MAX_ORDER`] are rejected at construction.
//!
//! The text form is the comma-separated ascending element list, with `-`
//! for the empty set: `{1, 2}` prints as `1,2` and `∅` prints as `-`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Largest carrier size representable by a [`SubsetMask`].
pub const MAX_ORDER: usize = 64;

/// A subset of `{0, …, n−1}` stored as membership bits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask {
    bits: u64,
    n: u8,
}

impl SubsetMask {
    /// The empty subset of a carrier of size `n`.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER, "carrier size {n} out of range");
        SubsetMask { bits: 0, n: n as u8 }
    }

    /// The whole carrier `{0, …, n−1}`.
    pub fn universe(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER, "carrier size {n} out of range");
        SubsetMask {
            bits: u64::MAX >> (64 - n),
            n: n as u8,
        }
    }

    /// The singleton `{e}`.
    pub fn singleton(n: usize, e: usize) -> Self {
        Self::empty(n).with(e)
    }

    /// Builds a subset from raw membership bits.
    ///
    /// Panics if a bit at position ≥ `n` is set.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let u = Self::universe(n);
        assert!(bits & !u.bits == 0, "bit above position {} set", n - 1);
        SubsetMask { bits, n: n as u8 }
    }

    /// Collects elements into a subset. Duplicates are harmless.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Self {
        let mut m = Self::empty(n);
        for e in elems {
            m = m.with(e);
        }
        m
    }

    /// Size of the carrier this subset lives in.
    pub fn order(self) -> usize {
        self.n as usize
    }

    /// Raw membership bits.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, e: usize) -> bool {
        e < self.order() && self.bits >> e & 1 == 1
    }

    /// This subset with `e` added.
    pub fn with(self, e: usize) -> Self {
        assert!(e < self.order(), "element {e} outside carrier");
        SubsetMask {
            bits: self.bits | 1 << e,
            n: self.n,
        }
    }

    pub fn union(self, other: Self) -> Self {
        self.check_same_carrier(other);
        SubsetMask {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        self.check_same_carrier(other);
        SubsetMask {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    pub fn complement(self) -> Self {
        SubsetMask {
            bits: Self::universe(self.order()).bits & !self.bits,
            n: self.n,
        }
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_universe(self) -> bool {
        self == Self::universe(self.order())
    }

    /// Number of elements.
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.check_same_carrier(other);
        self.bits & !other.bits == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.order()).filter(move |e| bits >> e & 1 == 1)
    }

    /// Elements collected in ascending order.
    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All 2ⁿ subsets of a carrier of size `n`, in ascending mask order
    /// (so `∅` first and the universe last).
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(n >= 1 && n < MAX_ORDER, "cannot enumerate 2^{n} subsets");
        (0..1u64 << n).map(move |bits| SubsetMask { bits, n: n as u8 })
    }

    /// Parses the text form (`1,2` or `-`) for a carrier of size `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, SubsetParseError> {
        if n == 0 || n > MAX_ORDER {
            return Err(SubsetParseError::BadOrder { order: n });
        }
        let text = text.trim();
        if text.is_empty() {
            return Err(SubsetParseError::Empty);
        }
        if text == "-" {
            return Ok(Self::empty(n));
        }
        let mut m = Self::empty(n);
        for token in text.split(',') {
            let token = token.trim();
            let e: usize = token
                .parse()
                .map_err(|_| SubsetParseError::BadIndex { token: token.into() })?;
            if e >= n {
                return Err(SubsetParseError::OutOfRange { index: e, order: n });
            }
            if m.contains(e) {
                return Err(SubsetParseError::Duplicate { index: e });
            }
            m = m.with(e);
        }
        Ok(m)
    }

    fn check_same_carrier(self, other: Self) {
        assert!(self.n == other.n, "subsets of different carriers combined");
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}/{}", self.n)
    }
}

/// Why a subset string failed to parse.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SubsetParseError {
    #[error("empty subset text (the empty set is written `-`)")]
    Empty,
    #[error("carrier size {order} unsupported (1..={MAX_ORDER})")]
    BadOrder { order: usize },
    #[error("`{token}` is not an element index")]
    BadIndex { token: String },
    #[error("element {index} outside carrier of size {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("element {index} listed twice")]
    Duplicate { index: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn display_uses_dash_for_empty_and_ascending_elements() {
        assert_eq!(SubsetMask::empty(3).to_string(), "-");
        assert_eq!(SubsetMask::from_elements(3, [2, 1]).to_string(), "1,2");
        assert_eq!(SubsetMask::universe(3).to_string(), "0,1,2");
    }

    #[test]
    fn parse_accepts_dash_and_unordered_elements() {
        assert_eq!(SubsetMask::parse("-", 3).unwrap(), SubsetMask::empty(3));
        assert_eq!(
            SubsetMask::parse("2,1", 3).unwrap(),
            SubsetMask::from_elements(3, [1, 2])
        );
        assert_eq!(
            SubsetMask::parse(" 0 , 2 ", 3).unwrap(),
            SubsetMask::from_elements(3, [0, 2])
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(SubsetMask::parse("", 2), Err(SubsetParseError::Empty));
        assert_eq!(
            SubsetMask::parse("2", 2),
            Err(SubsetParseError::OutOfRange { index: 2, order: 2 })
        );
        assert_eq!(
            SubsetMask::parse("0,0", 2),
            Err(SubsetParseError::Duplicate { index: 0 })
        );
        assert!(matches!(
            SubsetMask::parse("x", 2),
            Err(SubsetParseError::BadIndex { .. })
        ));
    }

    #[test]
    fn all_subsets_ascend_from_empty_to_universe() {
        let all: Vec<_> = SubsetMask::all(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], SubsetMask::empty(3));
        assert_eq!(all[7], SubsetMask::universe(3));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn boundary_orders_work() {
        assert_eq!(SubsetMask::universe(1).len(), 1);
        assert_eq!(SubsetMask::universe(64).len(), 64);
        assert_eq!(SubsetMask::universe(64).complement(), SubsetMask::empty(64));
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(bits in 0u64..256, n in 8usize..=12) {
            let m = SubsetMask::from_bits(n, bits);
            prop_assert_eq!(SubsetMask::parse(&m.to_string(), n).unwrap(), m);
        }

        #[test]
        fn complement_is_an_involution(bits in 0u64..1024) {
            let m = SubsetMask::from_bits(10, bits);
            prop_assert_eq!(m.complement().complement(), m);
            prop_assert!(m.intersection(m.complement()).is_empty());
            prop_assert!(m.union(m.complement()).is_universe());
        }
    }
}
