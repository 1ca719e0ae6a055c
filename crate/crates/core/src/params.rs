use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::universe::SubsetMask;
use crate::{Error, Result};

/// Largest ground set a [`crate::Multiset`] or [`SubsetMask`] can describe.
pub const MAX_N: usize = 24;

/// Multiplicity cap `m`, possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Bounded(usize),
    Unbounded,
}

impl Multiplicity {
    /// Cap that is actually usable by `k`-multisets: `min(m, k)`.
    pub fn effective(self, k: usize) -> usize {
        match self {
            Multiplicity::Bounded(m) => m.min(k),
            Multiplicity::Unbounded => k,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Bounded(m) => write!(f, "{m}"),
            Multiplicity::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Multiplicity::Unbounded);
        }
        match s.parse::<usize>() {
            Ok(0) => Err(Error::Params("multiplicity cap must be at least 1".into())),
            Ok(m) => Ok(Multiplicity::Bounded(m)),
            Err(_) => Err(Error::Params(format!(
                "multiplicity cap must be a positive integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Bounded(m) => serializer.serialize_u64(*m as u64),
            Multiplicity::Unbounded => serializer.serialize_str("inf"),
        }
    }
}

/// The triple `(n, k, m)` together with its derived quantities.
///
/// The requested cap is retained for reporting; all arithmetic uses the
/// effective cap `min(m, k)`, since no `k`-multiset repeats a symbol more
/// than `k` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    n: usize,
    k: usize,
    requested_m: Multiplicity,
    m: usize,
}

impl Params {
    pub fn new(n: usize, k: usize, m: Multiplicity) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Params(format!("n must lie in 1..={MAX_N}, got {n}")));
        }
        if k == 0 {
            return Err(Error::Params("k must be at least 1".into()));
        }
        if m == Multiplicity::Bounded(0) {
            return Err(Error::Params("multiplicity cap must be at least 1".into()));
        }
        Ok(Params {
            n,
            k,
            requested_m: m,
            m: m.effective(k),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Effective multiplicity cap `min(m, k)`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn requested_m(&self) -> Multiplicity {
        self.requested_m
    }

    /// Least possible support size of a `k`-multiset: `ceil(k / m)`.
    pub fn q(&self) -> usize {
        self.k.div_ceil(self.m)
    }

    /// `min(k, floor(n / 2))`.
    pub fn w(&self) -> usize {
        self.k.min(self.n / 2)
    }

    /// The block `[n - k + 1, n]`; needs `n > k` so that it avoids `1`.
    pub fn h_set(&self) -> Result<SubsetMask> {
        if self.n <= self.k {
            return Err(Error::Params(format!(
                "the block [n-k+1, n] needs n > k (n = {}, k = {})",
                self.n, self.k
            )));
        }
        Ok(SubsetMask::from_elements(self.n - self.k + 1..=self.n))
    }

    /// `n >= k + q`, the standing hypothesis of the extremal results.
    pub fn meets_size_hypothesis(&self) -> bool {
        self.n >= self.k + self.q()
    }

    /// Hypotheses of the non-trivial bound: `k >= 4`, `m >= 2`, `n >= k + q`.
    pub fn check_theorem_hypotheses(&self) -> Result<()> {
        if self.k < 4 {
            return Err(Error::Precondition(format!(
                "need k >= 4, got k = {}",
                self.k
            )));
        }
        if self.requested_m == Multiplicity::Bounded(1) {
            return Err(Error::Precondition("need m >= 2, got m = 1".into()));
        }
        if !self.meets_size_hypothesis() {
            return Err(Error::Precondition(format!(
                "need n >= k + q = {}, got n = {}",
                self.k + self.q(),
                self.n
            )));
        }
        Ok(())
    }

    /// Condition under which the extremal family is unique up to relabeling:
    /// `n > k + q`, or `n = k + q` and `min(k, m)` does not divide `k`.
    pub fn uniqueness_condition(&self) -> bool {
        let kq = self.k + self.q();
        self.n > kq || (self.n == kq && !self.k.is_multiple_of(self.m))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} m={}", self.n, self.k, self.requested_m)
    }
}
