//! Walk-girth values and the four-entry girth vector indexed by closed-walk type.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Length of a shortest closed walk of some type, or infinity when no such walk exists.
///
/// `Finite` orders below `Infinite`, so comparisons are total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u64),
    Infinite,
}

impl Girth {
    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }

    pub fn value(self) -> Option<u64> {
        match self {
            Girth::Finite(v) => Some(v),
            Girth::Infinite => None,
        }
    }
}

impl From<Option<u64>> for Girth {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Girth::Infinite, Girth::Finite)
    }
}

/// `∞ + k = ∞`.
impl Add<u64> for Girth {
    type Output = Girth;

    fn add(self, rhs: u64) -> Girth {
        match self {
            Girth::Finite(v) => Girth::Finite(v + rhs),
            Girth::Infinite => Girth::Infinite,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(v) => write!(f, "{v}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

// Infinity is encoded as JSON null.
impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Option::<u64>::deserialize(d).map(Girth::from)
    }
}

/// Type of a closed walk as an element of Z₂²: `negative` is the sign bit, `odd` the parity bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkType {
    pub negative: bool,
    pub odd: bool,
}

impl WalkType {
    pub const ALL: [WalkType; 4] = [
        WalkType::new(false, false),
        WalkType::new(false, true),
        WalkType::new(true, false),
        WalkType::new(true, true),
    ];

    pub const fn new(negative: bool, odd: bool) -> Self {
        WalkType { negative, odd }
    }

    /// Index into a 4-slot state array: `2·negative + odd`.
    pub const fn index(self) -> usize {
        (self.negative as usize) << 1 | self.odd as usize
    }

    pub const fn from_index(i: usize) -> Self {
        WalkType::new(i & 2 != 0, i & 1 != 0)
    }

    /// Group operation of Z₂².
    pub const fn shift(self, negative: bool, odd: bool) -> Self {
        WalkType::new(self.negative ^ negative, self.odd ^ odd)
    }
}

impl fmt::Display for WalkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.negative as u8, self.odd as u8)
    }
}

/// The four walk-girths `g00, g01, g10, g11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GirthVector {
    pub g00: Girth,
    pub g01: Girth,
    pub g10: Girth,
    pub g11: Girth,
}

impl GirthVector {
    pub fn new(g00: Girth, g01: Girth, g10: Girth, g11: Girth) -> Self {
        GirthVector { g00, g01, g10, g11 }
    }

    pub(crate) fn from_array(v: [Girth; 4]) -> Self {
        GirthVector::new(v[0], v[1], v[2], v[3])
    }

    pub fn get(&self, t: WalkType) -> Girth {
        match (t.negative, t.odd) {
            (false, false) => self.g00,
            (false, true) => self.g01,
            (true, false) => self.g10,
            (true, true) => self.g11,
        }
    }

    /// Girth vector of the negative cycle `C_{-g}`, fixed by parity.
    ///
    /// `g = 1` is the negative loop: looping twice gives a positive even walk of length 2.
    pub fn negative_cycle(g: u64) -> Self {
        use Girth::*;
        assert!(g >= 1, "negative cycle length must be positive");
        if g % 2 == 0 {
            GirthVector::new(Finite(2), Infinite, Finite(g), Infinite)
        } else {
            GirthVector::new(Finite(2), Infinite, Infinite, Finite(g))
        }
    }

    /// Entrywise `self ≥ other`: the no-homomorphism condition for a map into `other`.
    pub fn dominates(&self, other: &GirthVector) -> bool {
        WalkType::ALL
            .iter()
            .all(|&t| self.get(t) >= other.get(t))
    }

    pub fn is_g_wide(&self, g: u64) -> bool {
        self.dominates(&GirthVector::negative_cycle(g))
    }
}

impl fmt::Display for GirthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.g00, self.g01, self.g10, self.g11)
    }
}
