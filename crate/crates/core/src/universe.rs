//! Subsets of `[n]` and families of them.
//!
//! The support-level universe `P` is the set of non-empty proper subsets of
//! `[n]`. A maximal intersecting family in `P` holds exactly one of every
//! complementary pair and is closed upwards; the families `U` (the star at
//! `1`), `R` (the part of `U` inside `[n - k]`) and `V = (U - R) ∪ R^c` are
//! built here, along with the twist `(U - D) ∪ D^c` used to describe every
//! maximal family relative to `U`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::canon::{self, mix64, Relabel};
use crate::math::binom;
use crate::multiset::Permutation;
use crate::params::MAX_N;
use crate::{Error, Params, Result};

/// A subset of `[n]`; element `i` is stored in bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            debug_assert!((1..=MAX_N).contains(&e));
            bits |= 1 << (e - 1);
        }
        SubsetMask(bits)
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let low = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(low + 1)
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        (1..=MAX_N).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    /// Membership in `P`: non-empty and proper.
    pub fn is_proper(self, n: usize) -> bool {
        !self.is_empty() && self != Self::full(n)
    }

    pub fn apply(self, sigma: &Permutation) -> Self {
        let mut bits = 0u32;
        for e in self.elements() {
            bits |= 1 << (sigma.image(e) - 1);
        }
        SubsetMask(bits)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// A family of subsets of `[n]`, stored as a bitset indexed by mask value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    n: usize,
    words: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_N, "set families support n <= {MAX_N}");
        let words = (1usize << n).div_ceil(64);
        SetFamily {
            n,
            words: vec![0; words],
        }
    }

    pub fn from_masks<I: IntoIterator<Item = SubsetMask>>(n: usize, masks: I) -> Self {
        let mut family = SetFamily::new(n);
        for mask in masks {
            family.insert(mask);
        }
        family
    }

    /// All of `P`.
    pub fn universe(n: usize) -> Self {
        SetFamily::from_masks(n, all_masks(n).filter(|b| b.is_proper(n)))
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), (1usize << n).div_ceil(64));
        SetFamily { n, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, mask: SubsetMask) -> bool {
        debug_assert!(mask.is_subset_of(SubsetMask::full(self.n)));
        let i = mask.0 as usize;
        let had = self.words[i / 64] >> (i % 64) & 1 == 1;
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn remove(&mut self, mask: SubsetMask) -> bool {
        let i = mask.0 as usize;
        let had = self.contains(mask);
        self.words[i / 64] &= !(1 << (i % 64));
        had
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        let i = mask.0 as usize;
        i < (1usize << self.n) && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let low = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(SubsetMask((wi * 64 + low) as u32))
            })
        })
    }

    /// Members ordered by size, then lexicographically by sorted element list.
    pub fn members_sorted(&self) -> Vec<SubsetMask> {
        let mut members: Vec<_> = self.iter().collect();
        members.sort_by_cached_key(|b| (b.len(), b.elements().collect::<Vec<_>>()));
        members
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &SetFamily) -> SetFamily {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn intersection(&self, other: &SetFamily) -> SetFamily {
        self.zip_words(other, |a, b| a & b)
    }

    fn zip_words(&self, other: &SetFamily, f: impl Fn(u64, u64) -> u64) -> SetFamily {
        assert_eq!(self.n, other.n, "set families over different ground sets");
        SetFamily {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// True when every member is non-empty and proper.
    pub fn is_p_family(&self) -> bool {
        !self.contains(SubsetMask::EMPTY) && !self.contains(SubsetMask::full(self.n))
    }

    /// `{B^c : B ∈ F}`.
    pub fn dual(&self) -> SetFamily {
        SetFamily::from_masks(self.n, self.iter().map(|b| b.complement(self.n)))
    }

    /// Members of size `i`.
    pub fn uniform_part(&self, i: usize) -> SetFamily {
        SetFamily::from_masks(self.n, self.iter().filter(|b| b.len() == i))
    }

    /// Union of the layers `q..=k`, the only supports with non-empty preimage.
    pub fn valuable_part(&self, p: &Params) -> SetFamily {
        let (q, k) = (p.q(), p.k());
        SetFamily::from_masks(self.n, self.iter().filter(|b| (q..=k).contains(&b.len())))
    }

    /// `layer_sizes()[i]` is the number of members of size `i`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n + 1];
        for b in self.iter() {
            sizes[b.len()] += 1;
        }
        sizes
    }

    /// Intersection of all members; `None` stands for the empty family,
    /// whose intersection counts as non-empty.
    pub fn common_intersection(&self) -> Option<SubsetMask> {
        let mut members = self.iter();
        let first = members.next()?;
        Some(members.fold(first, |acc, b| acc.intersection(b)))
    }

    /// True when the family has a member-wide common element (or is empty).
    pub fn has_common_element(&self) -> bool {
        self.common_intersection().is_none_or(|c| !c.is_empty())
    }

    pub fn apply(&self, sigma: &Permutation) -> SetFamily {
        assert_eq!(sigma.len(), self.n);
        SetFamily::from_masks(self.n, self.iter().map(|b| b.apply(sigma)))
    }

    /// Relabeling that sends this family to its canonical representative.
    pub fn canonical_labeling(&self) -> (Permutation, SetFamily) {
        let (perm, key) = canon::canonical_labeling(self);
        (perm, SetFamily::from_words(self.n, key))
    }

    pub fn canonical_form(&self) -> SetFamily {
        self.canonical_labeling().1
    }

    pub fn is_isomorphic(&self, other: &SetFamily) -> Option<Permutation> {
        if self.n != other.n || self.len() != other.len() {
            return None;
        }
        let (to_canon, canon_self) = self.canonical_labeling();
        let (other_to_canon, canon_other) = other.canonical_labeling();
        (canon_self == canon_other).then(|| other_to_canon.inverse().compose(&to_canon))
    }

    /// Members as sorted element lists, in [`SetFamily::members_sorted`] order.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members_sorted()
            .into_iter()
            .map(|b| b.elements().collect())
            .collect()
    }

    /// Text encoding: a header line `n`, then one member per line as its
    /// sorted elements separated by spaces (`-` for the empty set).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for b in self.members_sorted() {
            if b.is_empty() {
                out.push('-');
            } else {
                let elements: Vec<String> = b.elements().map(|e| e.to_string()).collect();
                out.push_str(&elements.join(" "));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SetFamily> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header line"))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("bad header {header:?}")))?;
        if n > MAX_N {
            return Err(Error::parse(1, format!("n must be at most {MAX_N}")));
        }
        let mut family = SetFamily::new(n);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mask = if line == "-" {
                SubsetMask::EMPTY
            } else {
                let mut mask = SubsetMask::EMPTY;
                for token in line.split_whitespace() {
                    let e: usize = token
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad element {token:?}")))?;
                    if e == 0 || e > n {
                        return Err(Error::parse(
                            line_no,
                            format!("element {e} outside [1, {n}]"),
                        ));
                    }
                    mask = mask.union(SubsetMask::from_elements([e]));
                }
                mask
            };
            if !family.insert(mask) {
                return Err(Error::parse(line_no, "duplicate member"));
            }
        }
        Ok(family)
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}) ", self.n)?;
        f.debug_list().entries(self.members_sorted()).finish()
    }
}

impl Relabel for SetFamily {
    type Key = Vec<u64>;

    fn points(&self) -> usize {
        self.n
    }

    fn pair_colors(&self) -> Vec<u64> {
        let n = self.n;
        let mut colors = vec![0u64; n * n];
        for b in self.iter() {
            let tag = mix64(b.len() as u64 + 1);
            let bits = b.bits();
            for i in b.elements() {
                let row = (i - 1) * n;
                let mut rest = bits;
                while rest != 0 {
                    let j = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    colors[row + j] = colors[row + j].wrapping_add(tag);
                }
            }
        }
        colors
    }

    fn image_key(&self, perm: &[usize]) -> Vec<u64> {
        let mut words = vec![0u64; self.words.len()];
        for b in self.iter() {
            let mut img = 0usize;
            let mut rest = b.bits();
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                img |= 1 << perm[i];
            }
            words[img / 64] |= 1 << (img % 64);
        }
        words
    }
}

/// Every subset of `[n]` in increasing mask order.
pub fn all_masks(n: usize) -> impl Iterator<Item = SubsetMask> {
    (0..(1u64 << n)).map(|b| SubsetMask(b as u32))
}

/// `{B ∈ P : center ∈ B}`.
pub fn star(n: usize, center: usize) -> SetFamily {
    SetFamily::from_masks(
        n,
        all_masks(n).filter(|b| b.contains(center) && b.is_proper(n)),
    )
}

/// The star `U` at element `1`.
pub fn build_u(p: &Params) -> SetFamily {
    star(p.n(), 1)
}

/// `R = {B ∈ U : B ⊆ [n - k]}`.
pub fn build_r(p: &Params) -> Result<SetFamily> {
    let outside = p.h_set()?.complement(p.n());
    Ok(SetFamily::from_masks(
        p.n(),
        build_u(p).iter().filter(|b| b.is_subset_of(outside)),
    ))
}

/// `V = (U - R) ∪ R^c`, the support-level shadow of the Hilton–Milner family.
pub fn build_v(p: &Params) -> Result<SetFamily> {
    let r = build_r(p)?;
    Ok(build_u(p).difference(&r).union(&r.dual()))
}

/// The valuable part of `V`.
pub fn build_v_star(p: &Params) -> Result<SetFamily> {
    Ok(build_v(p)?.valuable_part(p))
}

/// `|R(j)|`: members of `U` of size `j` inside `[n - k]`.
fn r_layer_size(n: usize, k: usize, j: usize) -> BigUint {
    if j == 0 || j > n - k {
        return BigUint::zero();
    }
    binom((n - k - 1) as i64, (j - 1) as i64)
}

/// `|V(l)| = |U(l)| - |R(l)| + |R(n - l)|`, zero for `l` outside `[1, n - 1]`.
pub fn v_layer_size(p: &Params, l: usize) -> Result<BigUint> {
    let (n, k) = (p.n(), p.k());
    if n <= k {
        return Err(Error::Params(format!("V needs n > k (n = {n}, k = {k})")));
    }
    if l == 0 || l >= n {
        return Ok(BigUint::zero());
    }
    let u = binom((n - 1) as i64, (l - 1) as i64);
    Ok(u - r_layer_size(n, k, l) + r_layer_size(n, k, n - l))
}

/// The two-branch closed forms for `|V(l)|` on `2 <= l <= w`, split by
/// whether `n >= 2k`. `None` outside that range.
pub fn v_layer_size_closed(p: &Params, l: usize) -> Option<BigUint> {
    let (n, k) = (p.n() as i64, p.k() as i64);
    if n <= k || l < 2 || l > p.w() {
        return None;
    }
    let l = l as i64;
    let value = if n >= 2 * k {
        if l < k {
            binom(n - 1, l - 1) - binom(n - k - 1, l - 1)
        } else {
            binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1u32
        }
    } else if l < k {
        binom(n - 1, l - 1) - binom(n - k - 1, l - 1)
    } else {
        binom(n - 1, l - 1)
    };
    Some(value)
}

/// The classical Hilton–Milner number for `l`-sets of `[n]`:
/// `C(n-1, l-1) - C(n-l-1, l-1) + 1`.
pub fn hm_set_number(n: usize, l: usize) -> BigUint {
    let (n, l) = (n as i64, l as i64);
    binom(n - 1, l - 1) - binom(n - l - 1, l - 1) + 1u32
}

/// Pairwise intersecting.
pub fn is_intersecting_sf(f: &SetFamily) -> bool {
    let members: Vec<_> = f.iter().collect();
    members
        .iter()
        .enumerate()
        .all(|(i, a)| members[i..].iter().all(|b| a.intersects(*b)))
}

/// Maximality checked literally: intersecting, and every `Y ∈ P - F` misses
/// some member.
pub fn is_maximal_intersecting_definitional(f: &SetFamily) -> bool {
    if !f.is_p_family() || !is_intersecting_sf(f) {
        return false;
    }
    let n = f.n();
    let members: Vec<_> = f.iter().collect();
    all_masks(n)
        .filter(|y| y.is_proper(n) && !f.contains(*y))
        .all(|y| members.iter().any(|b| !b.intersects(y)))
}

/// Maximality through the structural route when the family has the size
/// `2^(n-1) - 1` forced on maximal families; definitional otherwise.
pub fn is_maximal_intersecting_sf(f: &SetFamily) -> bool {
    let n = f.n();
    if n >= 1 && f.is_p_family() && f.len() == (1usize << (n - 1)) - 1 {
        pair_rule_holds(f) && is_up_set(f) && is_intersecting_sf(f)
    } else {
        is_maximal_intersecting_definitional(f)
    }
}

/// Exactly one of `B`, `B^c` belongs to `F` for every `B ∈ P`.
pub fn pair_rule_holds(f: &SetFamily) -> bool {
    let n = f.n();
    all_masks(n)
        .filter(|b| b.is_proper(n))
        .all(|b| f.contains(b) != f.contains(b.complement(n)))
}

/// Upward closed inside `P`.
pub fn is_up_set(f: &SetFamily) -> bool {
    let n = f.n();
    let full = SubsetMask::full(n);
    f.iter().all(|b| {
        b.complement(n).elements().all(|x| {
            let up = b.union(SubsetMask::from_elements([x]));
            up == full || f.contains(up)
        })
    })
}

fn check_inside_star(d: &SetFamily) -> Result<()> {
    if d.iter().any(|b| !b.contains(1) || !b.is_proper(d.n())) {
        return Err(Error::Params("D must be a subfamily of the star U".into()));
    }
    Ok(())
}

/// Downward closed inside `U`.
pub fn is_down_set_in_u(d: &SetFamily) -> Result<bool> {
    check_inside_star(d)?;
    Ok(d.iter().all(|b| {
        b.elements()
            .filter(|&x| x != 1)
            .all(|x| d.contains(b.intersection(SubsetMask::from_elements([x]).complement(d.n()))))
    }))
}

/// No two members (possibly equal) cover `[n]`.
pub fn union_never_full(d: &SetFamily) -> Result<bool> {
    check_inside_star(d)?;
    let full = SubsetMask::full(d.n());
    let members: Vec<_> = d.iter().collect();
    Ok(members
        .iter()
        .enumerate()
        .all(|(i, a)| members[i..].iter().all(|b| a.union(*b) != full)))
}

/// `(U - D) ∪ D^c`.
pub fn twist(u: &SetFamily, d: &SetFamily) -> Result<SetFamily> {
    if !d.is_subfamily_of(u) {
        return Err(Error::Params("D must be a subfamily of U".into()));
    }
    Ok(u.difference(d).union(&d.dual()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Multiplicity;

    fn set(elements: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(elements.iter().copied())
    }

    fn params(n: usize, k: usize) -> Params {
        Params::new(n, k, Multiplicity::Bounded(2)).unwrap()
    }

    #[test]
    fn complement_and_dual() {
        assert_eq!(set(&[1, 3]).complement(4), set(&[2, 4]));
        let f = SetFamily::from_masks(5, [set(&[1]), set(&[2, 3]), set(&[1, 4, 5])]);
        assert_eq!(f.dual().dual(), f);
        let u = star(5, 1);
        let expected =
            SetFamily::from_masks(5, all_masks(5).filter(|b| !b.contains(1) && !b.is_empty()));
        assert_eq!(u.dual(), expected);
    }

    #[test]
    fn layers_of_the_star() {
        let p = params(5, 4);
        let u = build_u(&p);
        assert_eq!(
            u.uniform_part(1).iter().collect::<Vec<_>>(),
            vec![set(&[1])]
        );
        for n in 2..=10 {
            let u = star(n, 1);
            assert_eq!(u.len(), (1 << (n - 1)) - 1);
            for l in 1..n {
                let brute = all_masks(n)
                    .filter(|b| b.len() == l && b.contains(1))
                    .count();
                assert_eq!(u.uniform_part(l).len(), brute);
                assert_eq!(BigUint::from(brute), binom(n as i64 - 1, l as i64 - 1));
            }
        }
    }

    #[test]
    fn dual_swaps_layers() {
        let f = star(6, 2).union(&SetFamily::from_masks(6, [set(&[3, 4]), set(&[5])]));
        for i in 0..=6 {
            assert_eq!(f.dual().uniform_part(i), f.uniform_part(6 - i).dual());
        }
    }

    #[test]
    fn removed_part_examples() {
        let r = build_r(&params(5, 4)).unwrap();
        assert_eq!(r.members_sorted(), vec![set(&[1])]);
        assert_eq!(r.dual().members_sorted(), vec![set(&[2, 3, 4, 5])]);
        let r = build_r(&params(7, 4)).unwrap();
        assert_eq!(
            r.members_sorted(),
            vec![set(&[1]), set(&[1, 2]), set(&[1, 3]), set(&[1, 2, 3])]
        );
        assert!(build_r(&params(4, 4)).is_err());
        assert!(build_v(&params(3, 4)).is_err());
    }

    #[test]
    fn v_star_matches_description() {
        for (n, k, m) in [(7, 4, 2), (6, 4, 2), (9, 4, 1), (8, 5, 3)] {
            let p = Params::new(n, k, Multiplicity::Bounded(m)).unwrap();
            let h = p.h_set().unwrap();
            let u = build_u(&p);
            let mut expected = SetFamily::from_masks(
                n,
                u.iter()
                    .filter(|b| (p.q()..=p.k()).contains(&b.len()) && b.intersects(h)),
            );
            expected.insert(h);
            assert_eq!(build_v_star(&p).unwrap(), expected);
        }
    }

    #[test]
    fn v_layer_size_examples() {
        assert_eq!(
            v_layer_size(&params(9, 4), 4).unwrap(),
            BigUint::from(53u32)
        );
        assert_eq!(
            v_layer_size(&params(7, 4), 3).unwrap(),
            BigUint::from(14u32)
        );
        assert_eq!(
            v_layer_size(&params(7, 4), 4).unwrap(),
            BigUint::from(21u32)
        );
        assert_eq!(v_layer_size(&params(7, 4), 0).unwrap(), BigUint::zero());
        assert_eq!(v_layer_size(&params(7, 4), 7).unwrap(), BigUint::zero());
        assert_eq!(
            v_layer_size_closed(&params(9, 4), 4),
            Some(BigUint::from(53u32))
        );
        assert_eq!(
            v_layer_size_closed(&params(7, 4), 3),
            Some(BigUint::from(14u32))
        );
        assert_eq!(v_layer_size_closed(&params(7, 4), 4), None);
    }

    #[test]
    fn maximality_examples() {
        for n in 2..=7 {
            let u = star(n, 1);
            assert!(is_maximal_intersecting_sf(&u));
            assert!(is_maximal_intersecting_definitional(&u));
            assert!(pair_rule_holds(&u) && is_up_set(&u));
        }
        let f = SetFamily::from_masks(4, [set(&[1, 2]), set(&[1, 3])]);
        assert!(is_intersecting_sf(&f));
        assert!(!is_maximal_intersecting_sf(&f));
        let v = build_v(&params(7, 4)).unwrap();
        assert!(is_maximal_intersecting_sf(&v));
        assert!(is_maximal_intersecting_definitional(&v));
        let bad = SetFamily::from_masks(4, [set(&[1, 2]), set(&[3, 4])]);
        assert!(!is_intersecting_sf(&bad));
    }

    #[test]
    fn lone_singleton_breaks_pair_rule() {
        let f = SetFamily::from_masks(3, [set(&[1])]);
        assert!(!pair_rule_holds(&f));
        assert!(!is_maximal_intersecting_sf(&f));
    }

    #[test]
    fn twist_examples() {
        let p = params(7, 4);
        let u = build_u(&p);
        let empty = SetFamily::new(7);
        assert_eq!(twist(&u, &empty).unwrap(), u);
        assert!(is_down_set_in_u(&empty).unwrap() && union_never_full(&empty).unwrap());
        let r = build_r(&p).unwrap();
        assert_eq!(twist(&u, &r).unwrap(), build_v(&p).unwrap());
        assert!(is_down_set_in_u(&r).unwrap());
        assert!(union_never_full(&r).unwrap());
        let outside = SetFamily::from_masks(7, [set(&[2])]);
        assert!(twist(&u, &outside).is_err());
        assert!(is_down_set_in_u(&outside).is_err());
    }

    #[test]
    fn text_round_trip() {
        let v = build_v(&params(6, 4)).unwrap();
        let text = v.to_text();
        assert!(text.starts_with("6\n2 3 4 5 6\n") || text.starts_with("6\n1 3\n"));
        let back = SetFamily::from_text(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.to_text(), text);
        let with_empty = SetFamily::from_masks(3, [SubsetMask::EMPTY, set(&[2])]);
        assert_eq!(
            SetFamily::from_text(&with_empty.to_text()).unwrap(),
            with_empty
        );
        assert!(SetFamily::from_text("3\n1 4\n").is_err());
        assert!(SetFamily::from_text("3\n1 2\n2 1\n").is_err());
        assert!(SetFamily::from_text("").is_err());
    }

    #[test]
    fn relabeled_star_is_isomorphic() {
        let a = star(6, 1);
        let b = star(6, 4);
        let sigma = a.is_isomorphic(&b).expect("stars are isomorphic");
        assert_eq!(a.apply(&sigma), b);
        let v = build_v(&params(6, 4)).unwrap();
        assert!(a.is_isomorphic(&v).is_none());
    }
}
