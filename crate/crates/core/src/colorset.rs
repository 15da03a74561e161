// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Dense color sets for palettes of at most [`MAX_COLORS`] colors.

use std::fmt;

/// A color index, 0-based.
pub type Color = usize;

/// Largest supported palette.
pub const MAX_COLORS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// The palette `{0, .., k-1}`.
    pub fn full(k: usize) -> ColorSet {
        assert!(
            k <= MAX_COLORS,
            "palette of {k} colors exceeds {MAX_COLORS}"
        );
        if k == MAX_COLORS {
            ColorSet(u128::MAX)
        } else {
            ColorSet((1u128 << k) - 1)
        }
    }

    pub fn singleton(c: Color) -> ColorSet {
        ColorSet(1u128 << c)
    }

    pub fn from_bits(bits: u128) -> ColorSet {
        ColorSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        c < MAX_COLORS && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1u128 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u128 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
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

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color)
    }

    /// Members `>= c`.
    pub fn at_least(self, c: Color) -> ColorSet {
        if c >= MAX_COLORS {
            ColorSet::EMPTY
        } else {
            ColorSet(self.0 & !((1u128 << c) - 1))
        }
    }

    pub fn iter(self) -> ColorIter {
        ColorIter(self.0)
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

impl IntoIterator for ColorSet {
    type Item = Color;
    type IntoIter = ColorIter;
    fn into_iter(self) -> ColorIter {
        self.iter()
    }
}

pub struct ColorIter(u128);

impl Iterator for ColorIter {
    type Item = Color;
    fn next(&mut self) -> Option<Color> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as Color;
        self.0 &= self.0 - 1;
        Some(c)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
