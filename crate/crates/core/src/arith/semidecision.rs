//! Fuel-bounded semidecisions: the observable side of a Sierpinski-valued
//! proposition.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Confirmed,
    Unknown,
}

impl Verdict {
    pub fn is_confirmed(self) -> bool {
        matches!(self, Verdict::Confirmed)
    }
}

/// A probe that may confirm a proposition given enough fuel.
///
/// Contract: `Confirmed` is only returned when the proposition holds, and a
/// confirmation at fuel `f` persists at every `f' >= f`. There is no
/// refutation; `Unknown` at every fuel is how falsity looks from outside.
#[derive(Clone)]
pub struct Semidecision {
    probe: Arc<dyn Fn(u64) -> Verdict + Send + Sync>,
}

impl Semidecision {
    pub fn new<F>(probe: F) -> Self
    where
        F: Fn(u64) -> Verdict + Send + Sync + 'static,
    {
        Self {
            probe: Arc::new(probe),
        }
    }

    pub fn confirmed() -> Self {
        Self::new(|_| Verdict::Confirmed)
    }

    pub fn never() -> Self {
        Self::new(|_| Verdict::Unknown)
    }

    pub fn probe(&self, fuel: u64) -> Verdict {
        (self.probe)(fuel)
    }

    /// Least fuel in `1..=max_fuel` that confirms, by bisection (valid because
    /// probes are monotone in fuel).
    pub fn first_confirmation(&self, max_fuel: u64) -> Option<u64> {
        if max_fuel == 0 || !self.probe(max_fuel).is_confirmed() {
            return None;
        }
        let (mut lo, mut hi) = (0u64, max_fuel);
        // invariant: probe(lo) unknown (or lo == 0), probe(hi) confirmed
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.probe(mid).is_confirmed() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// Finite disjunction: confirmed once either side is.
    pub fn or(&self, other: &Semidecision) -> Semidecision {
        let (a, b) = (self.clone(), other.clone());
        Semidecision::new(move |f| {
            if a.probe(f).is_confirmed() || b.probe(f).is_confirmed() {
                Verdict::Confirmed
            } else {
                Verdict::Unknown
            }
        })
    }

    /// Finite conjunction.
    pub fn and(&self, other: &Semidecision) -> Semidecision {
        let (a, b) = (self.clone(), other.clone());
        Semidecision::new(move |f| {
            if a.probe(f).is_confirmed() && b.probe(f).is_confirmed() {
                Verdict::Confirmed
            } else {
                Verdict::Unknown
            }
        })
    }

    /// Checks monotonicity on fuels `0..=max_fuel`.
    pub fn is_monotone_up_to(&self, max_fuel: u64) -> bool {
        let mut seen = false;
        for f in 0..=max_fuel {
            let c = self.probe(f).is_confirmed();
            if seen && !c {
                return false;
            }
            seen |= c;
        }
        true
    }
}

impl fmt::Debug for Semidecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Semidecision")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_search() {
        let s = Semidecision::new(|f| if f >= 17 { Verdict::Confirmed } else { Verdict::Unknown });
        assert_eq!(s.first_confirmation(100), Some(17));
        assert_eq!(s.first_confirmation(16), None);
        assert!(s.is_monotone_up_to(40));
        assert_eq!(Semidecision::never().first_confirmation(1000), None);
        assert_eq!(Semidecision::confirmed().first_confirmation(5), Some(1));
    }

    #[test]
    fn connectives() {
        let a = Semidecision::new(|f| if f >= 3 { Verdict::Confirmed } else { Verdict::Unknown });
        let b = Semidecision::new(|f| if f >= 7 { Verdict::Confirmed } else { Verdict::Unknown });
        assert_eq!(a.or(&b).first_confirmation(10), Some(3));
        assert_eq!(a.and(&b).first_confirmation(10), Some(7));
        assert_eq!(a.and(&Semidecision::never()).first_confirmation(10), None);
    }
}
