use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// Exact integer path cost with an absorbing infinity.
///
/// Every comparison in the termination rules is done on these values, so no
/// float tolerance is involved anywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cost(pub u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const ONE: Cost = Cost(1);
    /// Strictly greater than every finite cost.
    pub const INFINITY: Cost = Cost(u64::MAX);

    #[inline]
    pub fn is_finite(self) -> bool {
        self != Cost::INFINITY
    }

    /// `self - other`, clamped at zero. Infinity minus a finite value stays infinite.
    #[inline]
    pub fn saturating_sub(self, other: Cost) -> Cost {
        if !self.is_finite() {
            return Cost::INFINITY;
        }
        Cost(self.0.saturating_sub(other.0))
    }

    /// `self - other` as a signed value, or `None` if either side is infinite.
    pub fn signed_diff(self, other: Cost) -> Option<i64> {
        if self.is_finite() && other.is_finite() {
            Some(self.0 as i64 - other.0 as i64)
        } else {
            None
        }
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }
}

impl Add for Cost {
    type Output = Cost;

    #[inline]
    fn add(self, rhs: Cost) -> Cost {
        if !self.is_finite() || !rhs.is_finite() {
            return Cost::INFINITY;
        }
        let sum = self.0.checked_add(rhs.0).expect("cost overflow");
        assert!(sum != u64::MAX, "cost overflow");
        Cost(sum)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl From<u64> for Cost {
    fn from(v: u64) -> Self {
        Cost(v)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            f.write_str("inf")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infinity_absorbs() {
        assert_eq!(Cost::INFINITY + Cost(3), Cost::INFINITY);
        assert_eq!(Cost(3) + Cost::INFINITY, Cost::INFINITY);
        assert_eq!(Cost::INFINITY.saturating_sub(Cost(10)), Cost::INFINITY);
        assert_eq!(Cost(3).saturating_sub(Cost(10)), Cost::ZERO);
        assert_eq!(Cost::INFINITY.to_string(), "inf");
    }

    proptest! {
        #[test]
        fn infinity_exceeds_finite(a in 0u64..u64::MAX / 2, b in 0u64..u64::MAX / 2) {
            prop_assert!(Cost(a) < Cost::INFINITY);
            prop_assert!(Cost(a) + Cost(b) < Cost::INFINITY);
            prop_assert_eq!(Cost(a) + Cost(b), Cost(b) + Cost(a));
        }
    }
}
