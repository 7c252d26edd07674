use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest universe representable by the bitmask encoding.
pub const MAX_UNIVERSE: usize = 63;

/// A subset of a finite universe, stored as a characteristic bitmask.
///
/// The universe size is part of the value: two subsets of differently sized
/// universes never compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    bits: u64,
    universe: u8,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_UNIVERSE, "universe too large for bitmask subsets");
        Self {
            bits: 0,
            universe: universe as u8,
        }
    }

    pub fn full(universe: usize) -> Self {
        Self::from_bits(universe, full_mask(universe))
    }

    /// Panics if `bits` has a member outside the universe.
    pub fn from_bits(universe: usize, bits: u64) -> Self {
        assert!(universe <= MAX_UNIVERSE, "universe too large for bitmask subsets");
        assert!(
            bits & !full_mask(universe) == 0,
            "subset bits exceed universe of size {universe}"
        );
        Self {
            bits,
            universe: universe as u8,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < universe, "element index {i} out of range");
            bits |= 1 << i;
        }
        Self::from_bits(universe, bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe_len(self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn count(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset {
            bits: self.bits | other.bits,
            universe: self.universe,
        }
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset {
            bits: self.bits & other.bits,
            universe: self.universe,
        }
    }

    pub fn complement(self) -> Subset {
        Subset {
            bits: !self.bits & full_mask(self.universe as usize),
            universe: self.universe,
        }
    }

    pub fn with(self, i: usize) -> Subset {
        Subset::from_bits(self.universe as usize, self.bits | (1 << i))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.universe as usize).filter(move |i| bits & (1 << i) != 0)
    }

    /// Every subset of a universe of size `n`, in increasing bitmask order.
    pub fn powerset(n: usize) -> impl Iterator<Item = Subset> {
        (0..=full_mask(n)).map(move |b| Subset::from_bits(n, b))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_includes_universe() {
        assert_ne!(Subset::empty(2), Subset::empty(3));
        assert_eq!(Subset::from_indices(3, [0, 2]), Subset::from_bits(3, 0b101));
    }

    #[test]
    fn set_ops() {
        let a = Subset::from_indices(4, [0, 1]);
        let b = Subset::from_indices(4, [1, 2]);
        assert_eq!(a.union(b).bits(), 0b0111);
        assert_eq!(a.intersection(b).bits(), 0b0010);
        assert_eq!(a.complement().bits(), 0b1100);
        assert!(a.intersection(b).is_proper_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(Subset::powerset(3).count(), 8);
    }

    #[test]
    #[should_panic]
    fn rejects_out_of_range_bits() {
        Subset::from_bits(2, 0b100);
    }
}
