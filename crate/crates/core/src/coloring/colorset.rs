use serde::{Serialize, Serializer};
use std::fmt;

/// Colors are `1..=k`; color 0 never occurs.
pub type Color = u8;

pub const MAX_COLORS: u8 = 63;

/// A set of colors stored as a bitmask (bit `c` for color `c`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, ..., k}`.
    pub fn palette(k: Color) -> ColorSet {
        ColorSet(((1u64 << k) - 1) << 1)
    }

    pub fn single(c: Color) -> ColorSet {
        ColorSet(1 << c)
    }

    pub fn contains(self, c: Color) -> bool {
        c < 64 && (self.0 >> c) & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    /// The only member, if the set is a singleton.
    pub fn as_single(self) -> Option<Color> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn min(self) -> Option<Color> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as Color;
                bits &= bits - 1;
                Some(c)
            }
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_and_iteration() {
        let p = ColorSet::palette(4);
        assert_eq!(p.iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert!(!p.contains(0));
        assert!(!p.contains(5));
        assert_eq!(ColorSet::single(3).as_single(), Some(3));
        assert_eq!(p.as_single(), None);
        let s: ColorSet = [2, 5].into_iter().collect();
        assert_eq!(s.difference(p).iter().collect::<Vec<_>>(), vec![5]);
    }
}
