//! Orders and rational values extended by infinity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// An element of ℕ ∪ {∞}. `Infinite` compares above every finite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    pub fn checked_add(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }

    /// `self / weight` as an extended rational.
    pub fn over(self, weight: u32) -> ExtRational {
        match self {
            Order::Finite(n) => ExtRational::Finite(BigRational::new(n.into(), weight.into())),
            Order::Infinite => ExtRational::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// An element of ℚ ∪ {∞}, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinite,
}

impl ExtRational {
    pub fn integer(n: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRational::Finite(BigRational::new(num.into(), den.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn floor(&self) -> Order {
        match self {
            ExtRational::Finite(q) => {
                let fl: BigInt = q.numer().div_floor(q.denom());
                Order::Finite(fl.to_u64().expect("floor of a non-negative order"))
            }
            ExtRational::Infinite => Order::Infinite,
        }
    }

    /// Divides by a positive integer; ∞ stays ∞.
    pub fn div_int(&self, n: u64) -> ExtRational {
        assert!(n > 0, "division by zero");
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q / BigRational::from_integer(n.into())),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    pub fn mul_int(&self, n: u64) -> ExtRational {
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q * BigRational::from_integer(n.into())),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(q) if q.is_zero())
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_largest() {
        assert!(Order::Finite(u64::MAX) < Order::Infinite);
        assert!(ExtRational::integer(1_000_000) < ExtRational::Infinite);
    }

    #[test]
    fn display_in_lowest_terms() {
        assert_eq!(ExtRational::ratio(6, 4).to_string(), "3/2");
        assert_eq!(ExtRational::ratio(4, 2).to_string(), "2");
        assert_eq!(ExtRational::ratio(-3, -6).to_string(), "1/2");
        assert_eq!(ExtRational::Infinite.to_string(), "inf");
    }

    #[test]
    fn floor_of_rationals() {
        assert_eq!(ExtRational::ratio(7, 2).floor(), Order::Finite(3));
        assert_eq!(ExtRational::integer(4).floor(), Order::Finite(4));
        assert_eq!(ExtRational::Infinite.floor(), Order::Infinite);
    }
}
