use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Solution size, or infinity when no solution exists.
///
/// Addition saturates at [`Cost::INF`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cost(pub u32);

impl Cost {
    pub const INF: Cost = Cost(u32::MAX);
    pub const ZERO: Cost = Cost(0);

    pub fn is_inf(self) -> bool {
        self == Cost::INF
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    /// The value as an integer, `None` for infinity.
    pub fn finite(self) -> Option<u32> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    pub fn saturating_sub(self, rhs: Cost) -> Cost {
        if self.is_inf() {
            Cost::INF
        } else {
            Cost(self.0.saturating_sub(rhs.0))
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        if self.is_inf() || rhs.is_inf() {
            return Cost::INF;
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v != u32::MAX => Cost(v),
            _ => Cost::INF,
        }
    }
}

impl Add<u32> for Cost {
    type Output = Cost;

    fn add(self, rhs: u32) -> Cost {
        self + Cost(rhs)
    }
}

impl From<u32> for Cost {
    fn from(v: u32) -> Self {
        Cost(v)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
