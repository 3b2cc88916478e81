//! Positive integers extended by an explicit infinity.
//!
//! Divisibility constants and element orders both take values in
//! `{1, 2, 3, …} ∪ {∞}`. Infinity is its own variant so that it can never be
//! confused with a large finite number.

use std::fmt;

use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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

    /// Whether `self` divides the integer `n`. Infinity divides only zero.
    pub fn divides(self, n: i64) -> bool {
        match self {
            Order::Finite(d) => n.unsigned_abs().is_multiple_of(d),
            Order::Infinite => n == 0,
        }
    }

    /// Whether `self` divides `other` in the extended sense (everything divides ∞).
    pub fn divides_order(self, other: Order) -> bool {
        match (self, other) {
            (_, Order::Infinite) => true,
            (Order::Infinite, Order::Finite(_)) => false,
            (Order::Finite(a), Order::Finite(b)) => b % a == 0,
        }
    }

    pub fn lcm(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a.lcm(&b)),
            _ => Order::Infinite,
        }
    }

    pub fn mul(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a * b),
            _ => Order::Infinite,
        }
    }

    /// Machine-readable form: decimal digits or `inf`.
    pub fn to_plain(self) -> String {
        match self {
            Order::Finite(n) => n.to_string(),
            Order::Infinite => "inf".to_string(),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "∞"),
        }
    }
}
