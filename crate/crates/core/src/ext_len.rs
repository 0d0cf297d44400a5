//! Lengths extended with `-inf` (no candidate string) and `+inf` (unbounded).

use std::fmt;
use std::ops::Add;

/// A length in `{-inf} ∪ ℕ ∪ {+inf}`.
///
/// The derived ordering is `NegInf < Finite(0) < Finite(1) < … < PosInf`.
/// Addition is absorbing for `NegInf`, so `PosInf + NegInf = NegInf`: an
/// unbounded bonus never revives an unreachable state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtLen {
    #[default]
    NegInf,
    Finite(u64),
    PosInf,
}

impl ExtLen {
    pub const ZERO: ExtLen = ExtLen::Finite(0);
    pub const ONE: ExtLen = ExtLen::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtLen::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtLen::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl From<u64> for ExtLen {
    fn from(n: u64) -> Self {
        ExtLen::Finite(n)
    }
}

impl Add for ExtLen {
    type Output = ExtLen;

    fn add(self, rhs: ExtLen) -> ExtLen {
        use ExtLen::*;
        match (self, rhs) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
}

impl fmt::Display for ExtLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLen::NegInf => f.write_str("-inf"),
            ExtLen::Finite(n) => write!(f, "{n}"),
            ExtLen::PosInf => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::ExtLen::{self, *};
    use proptest::prelude::*;

    #[test]
    fn order() {
        assert!(NegInf < Finite(0));
        assert!(Finite(0) < Finite(1));
        assert!(Finite(u64::MAX) < PosInf);
    }

    #[test]
    fn sentinel_addition() {
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(PosInf + Finite(3), PosInf);
        assert_eq!(NegInf + Finite(3), NegInf);
        assert_eq!(PosInf + NegInf, NegInf);
        assert_eq!(NegInf + PosInf, NegInf);
        assert_eq!(PosInf + PosInf, PosInf);
    }

    fn ext() -> impl Strategy<Value = ExtLen> {
        prop_oneof![Just(NegInf), Just(PosInf), (0u64..1000).prop_map(Finite)]
    }

    proptest! {
        #[test]
        fn addition_commutes_and_is_monotone(a in ext(), b in ext(), c in ext()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            if a <= b {
                prop_assert!(a + c <= b + c);
            }
        }
    }
}
