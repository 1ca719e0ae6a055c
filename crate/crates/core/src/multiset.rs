//! Multisets over `[n]` with bounded multiplicity.
//!
//! A multiset is its multiplicity vector `(μ_1, ..., μ_n)`. Two multisets
//! meet when their pointwise minimum is non-zero, which happens exactly when
//! their supports meet. Families are kept sorted in the lexicographic order
//! of multiplicity vectors (`μ_1` most significant), the same order in which
//! [`enumerate_k_multisets`] yields them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::canon::{self, mix64, Relabel};
use crate::params::MAX_N;
use crate::universe::{SetFamily, SubsetMask};
use crate::{Error, Multiplicity, Params, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    mult: Vec<u32>,
}

impl Multiset {
    pub fn new(mult: Vec<u32>) -> Self {
        assert!(mult.len() <= MAX_N, "multisets support n <= {MAX_N}");
        Multiset { mult }
    }

    pub fn zero(n: usize) -> Self {
        Multiset::new(vec![0; n])
    }

    /// The multiset with multiplicity one on each element of `set`.
    pub fn from_set(n: usize, set: SubsetMask) -> Self {
        Multiset::new((1..=n).map(|i| u32::from(set.contains(i))).collect())
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Multiplicity of the 1-based element `i`.
    pub fn multiplicity(&self, i: usize) -> u32 {
        self.mult[i - 1]
    }

    pub fn n(&self) -> usize {
        self.mult.len()
    }

    /// `|A| = Σ μ_i`.
    pub fn cardinality(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Pointwise minimum.
    pub fn intersect(&self, other: &Multiset) -> Result<Multiset> {
        if self.n() != other.n() {
            return Err(Error::Params(format!(
                "multisets over [{}] and [{}]",
                self.n(),
                other.n()
            )));
        }
        Ok(Multiset::new(
            self.mult
                .iter()
                .zip(&other.mult)
                .map(|(a, b)| *a.min(b))
                .collect(),
        ))
    }

    /// `{i : μ_i >= 1}`.
    pub fn support(&self) -> SubsetMask {
        SubsetMask::from_elements(
            self.mult
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, _)| i + 1),
        )
    }

    /// Non-empty intersection, decided on supports.
    pub fn meets(&self, other: &Multiset) -> bool {
        self.support().intersects(other.support())
    }

    /// The image `σ(A)`: multiplicity `μ_i` moves to `σ(i)`.
    pub fn apply(&self, sigma: &Permutation) -> Multiset {
        assert_eq!(
            sigma.len(),
            self.n(),
            "permutation and multiset sizes differ"
        );
        let mut mult = vec![0; self.n()];
        for (i, &m) in self.mult.iter().enumerate() {
            mult[sigma.map[i]] = m;
        }
        Multiset::new(mult)
    }

    /// Checks the cap and the ground-set size against `p`.
    pub fn validate(&self, p: &Params) -> Result<()> {
        if self.n() != p.n() {
            return Err(Error::Params(format!(
                "multiset has {} entries, expected {}",
                self.n(),
                p.n()
            )));
        }
        if let Some(&m) = self.mult.iter().find(|&&m| m as usize > p.m()) {
            return Err(Error::Params(format!(
                "multiplicity {m} exceeds the cap {}",
                p.m()
            )));
        }
        Ok(())
    }

    /// Dense text form `μ_1 μ_2 ... μ_n`.
    pub fn to_dense(&self) -> String {
        let parts: Vec<String> = self.mult.iter().map(|m| m.to_string()).collect();
        parts.join(" ")
    }

    /// Sparse text form `i^μ` over the support.
    pub fn to_sparse(&self) -> String {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, m)| format!("{}^{m}", i + 1))
            .collect();
        parts.join(" ")
    }

    /// Parses either form. A line holding any `^` is sparse, otherwise dense.
    pub fn parse(text: &str, n: usize) -> std::result::Result<Multiset, String> {
        let text = text.trim();
        if text.contains('^') {
            let mut mult = vec![0u32; n];
            for token in text.split_whitespace() {
                let (i, m) = token
                    .split_once('^')
                    .ok_or_else(|| format!("expected i^m, got {token:?}"))?;
                let i: usize = i.parse().map_err(|_| format!("bad element in {token:?}"))?;
                let m: u32 = m
                    .parse()
                    .map_err(|_| format!("bad multiplicity in {token:?}"))?;
                if i == 0 || i > n {
                    return Err(format!("element {i} outside [1, {n}]"));
                }
                if mult[i - 1] != 0 {
                    return Err(format!("element {i} listed twice"));
                }
                mult[i - 1] = m;
            }
            Ok(Multiset::new(mult))
        } else {
            let mult = text
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| format!("bad multiplicity {t:?}"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if mult.len() != n {
                return Err(format!("expected {n} multiplicities, got {}", mult.len()));
            }
            Ok(Multiset::new(mult))
        }
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_dense().replace(' ', ","))
    }
}

/// A bijection of `[n]`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_zero_based(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Params(format!("{map:?} is not a bijection")));
            }
        }
        Ok(Permutation { map })
    }

    /// Builds `σ` from the images `σ(1), ..., σ(n)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Params("permutation images are 1-based".into()));
        }
        Permutation::from_zero_based(images.iter().map(|&v| v - 1).collect())
    }

    /// Swaps the 1-based elements `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a - 1, b - 1);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    pub fn as_zero_based(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Permutation { map }
    }

    /// Images `σ(1), ..., σ(n)`.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.map.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.to_one_based())
    }
}

/// Every `k`-multiset of `[n]_m` in increasing lexicographic order.
pub fn enumerate_k_multisets(p: &Params) -> KMultisets {
    KMultisets {
        cap: p.m() as u32,
        next: lowest_fill(p.n(), p.k() as u32, p.m() as u32).map(Multiset::new),
    }
}

/// Lexicographically least vector of length `len` with entries in
/// `0..=cap` summing to `total`: the mass is packed to the right.
fn lowest_fill(len: usize, total: u32, cap: u32) -> Option<Vec<u32>> {
    let mut v = vec![0; len];
    let mut rest = total;
    for slot in v.iter_mut().rev() {
        let take = rest.min(cap);
        *slot = take;
        rest -= take;
    }
    (rest == 0).then_some(v)
}

pub struct KMultisets {
    cap: u32,
    next: Option<Multiset>,
}

impl Iterator for KMultisets {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let current = self.next.take()?;
        let v = &current.mult;
        // Rightmost slot that can grow while the suffix behind it gives up one unit.
        let mut suffix = 0u32;
        let mut pivot = None;
        for i in (0..v.len()).rev() {
            if suffix >= 1 && v[i] < self.cap {
                pivot = Some(i);
                break;
            }
            suffix += v[i];
        }
        self.next = pivot.map(|i| {
            let mut succ = v.clone();
            succ[i] += 1;
            let tail = lowest_fill(v.len() - i - 1, suffix - 1, self.cap)
                .expect("suffix capacity only shrinks by one unit");
            succ[i + 1..].copy_from_slice(&tail);
            Multiset::new(succ)
        });
        Some(current)
    }
}

/// `|binom([n]_m, k)|`: the coefficient of `x^k` in `(1 + x + ... + x^m)^n`.
pub fn count_k_multisets(p: &Params) -> BigUint {
    let (k, m) = (p.k(), p.m());
    let mut poly = vec![BigUint::zero(); k + 1];
    poly[0] = BigUint::one();
    for _ in 0..p.n() {
        let mut next = vec![BigUint::zero(); k + 1];
        for (deg, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for extra in 0..=m.min(k - deg) {
                next[deg + extra] += c;
            }
        }
        poly = next;
    }
    poly.swap_remove(k)
}

/// `∩F`, with the empty family mapped to [`TotalIntersection::Universal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotalIntersection {
    Universal,
    Multiset(Multiset),
}

impl TotalIntersection {
    /// The empty intersection counts as non-empty.
    pub fn is_nonempty(&self) -> bool {
        match self {
            TotalIntersection::Universal => true,
            TotalIntersection::Multiset(m) => !m.is_empty(),
        }
    }
}

/// A duplicate-free set of `k`-multisets under fixed parameters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultisetFamily {
    params: Params,
    members: Vec<Multiset>,
}

impl MultisetFamily {
    pub fn empty(params: Params) -> Self {
        MultisetFamily {
            params,
            members: Vec::new(),
        }
    }

    /// Validates and sorts the members; duplicates are merged.
    pub fn from_members<I: IntoIterator<Item = Multiset>>(
        params: Params,
        members: I,
    ) -> Result<Self> {
        let mut members: Vec<Multiset> = members.into_iter().collect();
        for a in &members {
            a.validate(&params)?;
            if a.cardinality() != params.k() {
                return Err(Error::Params(format!(
                    "{a:?} has cardinality {}, expected {}",
                    a.cardinality(),
                    params.k()
                )));
            }
        }
        members.sort();
        members.dedup();
        Ok(MultisetFamily { params, members })
    }

    /// All of `binom([n]_m, k)`.
    pub fn all(params: Params) -> Self {
        MultisetFamily {
            params,
            members: enumerate_k_multisets(&params).collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(params: Params, members: Vec<Multiset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        MultisetFamily { params, members }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn members(&self) -> &[Multiset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &Multiset) -> bool {
        self.members.binary_search(a).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Multiset> {
        self.members.iter()
    }

    pub fn total_intersection(&self) -> TotalIntersection {
        let mut members = self.members.iter();
        let Some(first) = members.next() else {
            return TotalIntersection::Universal;
        };
        let acc = members.fold(first.clone(), |acc, a| {
            acc.intersect(a).expect("members share the ground set")
        });
        TotalIntersection::Multiset(acc)
    }

    pub fn is_intersecting(&self) -> bool {
        let supports: Vec<SubsetMask> = self.members.iter().map(Multiset::support).collect();
        supports
            .iter()
            .enumerate()
            .all(|(i, a)| supports[i..].iter().all(|b| a.intersects(*b)))
    }

    /// `∩F ≠ ∅`.
    pub fn is_trivial(&self) -> bool {
        self.total_intersection().is_nonempty()
    }

    /// Intersecting, and every `k`-multiset outside the family misses a member.
    pub fn is_maximal_intersecting(&self) -> bool {
        if !self.is_intersecting() {
            return false;
        }
        let supports: Vec<SubsetMask> = self.members.iter().map(Multiset::support).collect();
        enumerate_k_multisets(&self.params)
            .filter(|x| !self.contains(x))
            .all(|x| {
                let s = x.support();
                supports.iter().any(|b| !b.intersects(s))
            })
    }

    /// `φ(F)`, the family of supports.
    pub fn support_family(&self) -> SetFamily {
        SetFamily::from_masks(self.params.n(), self.members.iter().map(Multiset::support))
    }

    pub fn apply(&self, sigma: &Permutation) -> MultisetFamily {
        let mut members: Vec<_> = self.members.iter().map(|a| a.apply(sigma)).collect();
        members.sort();
        MultisetFamily {
            params: self.params,
            members,
        }
    }

    pub fn canonical_labeling(&self) -> (Permutation, MultisetFamily) {
        let (perm, members) = canon::canonical_labeling(self);
        (
            perm,
            MultisetFamily::from_sorted_unchecked(self.params, members),
        )
    }

    /// Text encoding: header `n k m`, then one dense multiset per line.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = format!("{} {} {}\n", p.n(), p.k(), p.requested_m());
        for a in &self.members {
            out.push_str(&a.to_dense());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MultisetFamily> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header line"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, k, m] = fields[..] else {
            return Err(Error::parse(
                1,
                format!("header must be \"n k m\", got {header:?}"),
            ));
        };
        let n: usize = n.parse().map_err(|_| Error::parse(1, "bad n"))?;
        let k: usize = k.parse().map_err(|_| Error::parse(1, "bad k"))?;
        let m: Multiplicity = m
            .parse()
            .map_err(|e: Error| Error::parse(1, e.to_string()))?;
        let params = Params::new(n, k, m).map_err(|e| Error::parse(1, e.to_string()))?;
        let mut members = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let a = Multiset::parse(line, n).map_err(|msg| Error::parse(idx + 1, msg))?;
            members.push(a);
        }
        let len = members.len();
        let family = MultisetFamily::from_members(params, members)
            .map_err(|e| Error::parse(0, e.to_string()))?;
        if family.len() != len {
            return Err(Error::parse(0, "duplicate members"));
        }
        Ok(family)
    }
}

impl fmt::Debug for MultisetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultisetFamily({}) ", self.params)?;
        f.debug_list().entries(&self.members).finish()
    }
}

impl Relabel for MultisetFamily {
    type Key = Vec<Multiset>;

    fn points(&self) -> usize {
        self.params.n()
    }

    fn pair_colors(&self) -> Vec<u64> {
        let n = self.params.n();
        let mut colors = vec![0u64; n * n];
        for a in &self.members {
            for (i, &x) in a.mult.iter().enumerate() {
                for (j, &y) in a.mult.iter().enumerate() {
                    let tag = mix64(((x as u64) << 32) | y as u64);
                    colors[i * n + j] = colors[i * n + j].wrapping_add(tag);
                }
            }
        }
        colors
    }

    fn image_key(&self, perm: &[usize]) -> Vec<Multiset> {
        let mut image: Vec<Multiset> = self
            .members
            .iter()
            .map(|a| {
                let mut mult = vec![0; a.n()];
                for (i, &m) in a.mult.iter().enumerate() {
                    mult[perm[i]] = m;
                }
                Multiset::new(mult)
            })
            .collect();
        image.sort();
        image
    }
}

/// Decides `F ≅ G` by comparing canonical forms; on success returns `σ`
/// with `σ(F) = G`.
pub fn families_isomorphic(f: &MultisetFamily, g: &MultisetFamily) -> Option<Permutation> {
    if f.params.n() != g.params.n() || f.params.k() != g.params.k() || f.len() != g.len() {
        return None;
    }
    let (f_to_canon, f_canon) = f.canonical_labeling();
    let (g_to_canon, g_canon) = g.canonical_labeling();
    (f_canon.members == g_canon.members).then(|| g_to_canon.inverse().compose(&f_to_canon))
}
