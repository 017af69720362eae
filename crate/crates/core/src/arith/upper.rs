//! Upper reals: values observed only through decreasing rational upper bounds.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::rational::{min, Rational};
use super::semidecision::{Semidecision, Verdict};

type BoundSource = dyn Fn() -> Box<dyn Iterator<Item = Rational> + Send> + Send + Sync;

/// A real number presented by a re-playable stream of rational upper bounds.
///
/// The represented value is the infimum of the stream. Every replay starts
/// with the prior bound and then takes running minima of the source, so the
/// observed sequence is non-increasing by construction. A finite source
/// repeats its last bound forever.
#[derive(Clone)]
pub struct UpperReal {
    prior: Rational,
    source: Arc<BoundSource>,
}

impl UpperReal {
    pub fn constant(q: Rational) -> Self {
        Self {
            prior: q,
            source: Arc::new(|| Box::new(std::iter::empty())),
        }
    }

    /// Bound number `n` (1-based) is `f(n)`.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u64) -> Rational + Send + Sync + 'static,
    {
        let f = Arc::new(f);
        let first = f(1);
        Self {
            prior: first,
            source: Arc::new(move || {
                let f = Arc::clone(&f);
                Box::new((2u64..).map(move |n| f(n)))
            }),
        }
    }

    /// `prior` is the first bound; the stream produced by `make` follows it.
    pub fn from_stream<F, I>(prior: Rational, make: F) -> Self
    where
        F: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = Rational> + Send + 'static,
    {
        Self {
            prior,
            source: Arc::new(move || Box::new(make())),
        }
    }

    /// Fresh replay of the bound stream, starting from the first bound.
    pub fn bounds(&self) -> Bounds {
        Bounds {
            current: None,
            prior: Some(self.prior.clone()),
            inner: (self.source)(),
        }
    }

    /// The `steps`-th bound (1-based); `steps == 0` is treated as 1.
    pub fn refine(&self, steps: usize) -> Rational {
        self.bounds()
            .nth(steps.max(1) - 1)
            .unwrap_or_else(|| self.prior.clone())
    }

    /// Semidecision of `value < q`: fuel `f` inspects the first `f` bounds.
    pub fn less_than(&self, q: Rational) -> Semidecision {
        let u = self.clone();
        Semidecision::new(move |fuel| {
            if fuel == 0 {
                return Verdict::Unknown;
            }
            if u.refine(fuel as usize) < q {
                Verdict::Confirmed
            } else {
                Verdict::Unknown
            }
        })
    }

    /// Pointwise sum of bound streams.
    pub fn add(&self, other: &UpperReal) -> UpperReal {
        let (a, b) = (self.clone(), other.clone());
        let prior = &self.prior + &other.prior;
        UpperReal::from_stream(prior, move || {
            a.bounds().skip(1).zip(b.bounds().skip(1)).map(|(x, y)| x + y)
        })
    }

    /// `k * self` for `k >= 0`.
    pub fn scale(&self, k: &Rational) -> UpperReal {
        assert!(!k.is_negative(), "upper reals scale by non-negative factors only");
        let a = self.clone();
        let k2 = k.clone();
        UpperReal::from_stream(&self.prior * k, move || {
            let k = k2.clone();
            a.bounds().skip(1).map(move |x| x * &k)
        })
    }

    pub fn offset(&self, c: &Rational) -> UpperReal {
        self.add(&UpperReal::constant(c.clone()))
    }
}

impl fmt::Debug for UpperReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UpperReal")
            .field("first_bound", &self.prior)
            .finish_non_exhaustive()
    }
}

/// Iterator over the non-increasing bounds of an [`UpperReal`].
pub struct Bounds {
    current: Option<Rational>,
    prior: Option<Rational>,
    inner: Box<dyn Iterator<Item = Rational> + Send>,
}

impl Iterator for Bounds {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if let Some(p) = self.prior.take() {
            self.current = Some(p.clone());
            return Some(p);
        }
        let cur = self.current.as_ref()?;
        let next = match self.inner.next() {
            Some(b) => min(cur, &b),
            None => cur.clone(),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// `upper_refine`: the `steps`-th bound of `u`.
pub fn upper_refine(u: &UpperReal, steps: usize) -> Rational {
    u.refine(steps)
}

/// `semidecide_less`: confirms iff the value of `u` is below `q`.
pub fn semidecide_less(u: &UpperReal, q: &Rational) -> Semidecision {
    u.less_than(q.clone())
}

/// True if the first `n` raw bounds of `u` never increase.
pub fn is_non_increasing_prefix(u: &UpperReal, n: usize) -> bool {
    let v: Vec<Rational> = u.bounds().take(n).collect();
    v.windows(2).all(|w| w[1] <= w[0])
}

impl Default for UpperReal {
    fn default() -> Self {
        UpperReal::constant(Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn harmonic() -> UpperReal {
        UpperReal::from_fn(|n| rat(1, n as i64))
    }

    #[test]
    fn refine_examples() {
        assert_eq!(upper_refine(&UpperReal::constant(int(1)), 5), int(1));
        assert_eq!(upper_refine(&harmonic(), 10), rat(1, 10));
        let u = harmonic();
        assert!(upper_refine(&u, 10) >= upper_refine(&u, 20));
    }

    #[test]
    fn less_examples() {
        let s = semidecide_less(&harmonic(), &rat(1, 2));
        assert_eq!(s.probe(2), Verdict::Unknown);
        assert_eq!(s.probe(3), Verdict::Confirmed);
        let never = semidecide_less(&UpperReal::constant(int(1)), &rat(1, 2));
        assert!((0..200).all(|f| never.probe(f) == Verdict::Unknown));
        let boundary = semidecide_less(&UpperReal::constant(rat(1, 2)), &rat(1, 2));
        assert!((0..200).all(|f| boundary.probe(f) == Verdict::Unknown));
    }

    #[test]
    fn running_minimum_and_replay() {
        // raw stream oscillates; observed bounds must not
        let u = UpperReal::from_stream(int(5), || {
            vec![int(3), int(4), int(2), int(6)].into_iter()
        });
        let seen: Vec<_> = u.bounds().take(7).collect();
        assert_eq!(seen, vec![int(5), int(3), int(3), int(2), int(2), int(2), int(2)]);
        assert_eq!(u.bounds().take(7).collect::<Vec<_>>(), seen);
        assert!(is_non_increasing_prefix(&u, 50));
    }

    #[test]
    fn sums_and_scaling() {
        let u = harmonic().add(&UpperReal::constant(int(1)));
        assert_eq!(u.refine(4), rat(5, 4));
        assert_eq!(harmonic().scale(&int(2)).refine(4), rat(1, 2));
        assert_eq!(harmonic().offset(&int(-1)).refine(2), rat(-1, 2));
    }
}
