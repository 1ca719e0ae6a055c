//! The star `E` and the Hilton–Milner family `H`, and the bridge between
//! multiset families and their support families.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::coeffs::{self, coeff};
use crate::math::signed_diff;
use crate::multiset::enumerate_k_multisets;
use crate::universe::{self, is_maximal_intersecting_sf, SetFamily, SubsetMask};
use crate::{Error, Multiset, MultisetFamily, Params, Result};

/// All `k`-multisets containing `1`.
pub fn build_ekr(p: &Params) -> MultisetFamily {
    MultisetFamily::from_sorted_unchecked(
        *p,
        enumerate_k_multisets(p)
            .filter(|a| a.multiplicity(1) >= 1)
            .collect(),
    )
}

/// `{A ∈ E : A ∩ H ≠ ∅} ∪ {H}` with `H = [n - k + 1, n]`.
pub fn build_hm(p: &Params) -> Result<MultisetFamily> {
    let h = p.h_set()?;
    let members = enumerate_k_multisets(p)
        .filter(|a| a.multiplicity(1) >= 1 && a.support().intersects(h))
        .chain(std::iter::once(Multiset::from_set(p.n(), h)));
    MultisetFamily::from_members(*p, members)
}

/// `|H|` through the layer decomposition `Σ_l C(k, l) |V(l)|`.
pub fn hm_size(p: &Params) -> Result<BigUint> {
    if !p.meets_size_hypothesis() {
        return Err(Error::Precondition(format!(
            "the layer count needs n >= k + q = {} ({p})",
            p.k() + p.q()
        )));
    }
    let t = coeffs::table(p.k(), p.requested_m());
    let mut total = BigUint::zero();
    for l in p.q()..=p.k().min(p.n() - p.q()) {
        total += t.get(l) * universe::v_layer_size(p, l)?;
    }
    Ok(total)
}

/// Every `k`-multiset whose support is exactly `b`.
pub fn preimage(b: SubsetMask, p: &Params) -> MultisetFamily {
    let slots: Vec<usize> = b.elements().filter(|&e| e <= p.n()).collect();
    let mut out = Vec::new();
    if slots.len() == b.len() {
        let mut mult = vec![0u32; p.n()];
        fill_support(&slots, p.k(), p.m(), &mut mult, &mut out);
    }
    out.sort();
    MultisetFamily::from_sorted_unchecked(*p, out)
}

fn fill_support(
    slots: &[usize],
    rest: usize,
    cap: usize,
    mult: &mut [u32],
    out: &mut Vec<Multiset>,
) {
    let Some((&first, tail)) = slots.split_first() else {
        if rest == 0 {
            out.push(Multiset::new(mult.to_vec()));
        }
        return;
    };
    // Every remaining slot needs at least one unit.
    for take in 1..=cap.min(rest.saturating_sub(tail.len())) {
        mult[first - 1] = take as u32;
        fill_support(tail, rest - take, cap, mult, out);
    }
    mult[first - 1] = 0;
}

/// `φ^{-1}(F)`: the union of the preimages of the members.
pub fn preimage_family(f: &SetFamily, p: &Params) -> MultisetFamily {
    let mut members: Vec<Multiset> = f
        .iter()
        .flat_map(|b| preimage(b, p).members().to_vec())
        .collect();
    members.sort();
    MultisetFamily::from_sorted_unchecked(*p, members)
}

/// `|φ^{-1}(F)| = Σ_{B ∈ F} C(k, |B|)`.
pub fn preimage_size(f: &SetFamily, p: &Params) -> BigUint {
    let t = coeffs::table(p.k(), p.requested_m());
    f.layer_sizes()
        .iter()
        .enumerate()
        .map(|(l, &count)| t.get(l) * BigUint::from(count))
        .sum()
}

/// `Σ_{l=q}^{w} (C(k, l) - C(k, n - l)) (|Y(l)| - |B(l)|)` for two maximal
/// intersecting families of `P`; equals `|φ^{-1}(Y)| - |φ^{-1}(B)|`.
pub fn difference_formula(y: &SetFamily, b: &SetFamily, p: &Params) -> Result<BigInt> {
    if y.n() != p.n() || b.n() != p.n() {
        return Err(Error::Params(
            "families and parameters disagree on n".into(),
        ));
    }
    if !is_maximal_intersecting_sf(y) || !is_maximal_intersecting_sf(b) {
        return Err(Error::Params(
            "both families must be maximal intersecting in P".into(),
        ));
    }
    if !p.meets_size_hypothesis() {
        return Err(Error::Precondition(format!(
            "the folded sum needs n >= k + q = {}",
            p.k() + p.q()
        )));
    }
    let (ys, bs) = (y.layer_sizes(), b.layer_sizes());
    let n = p.n();
    let mut total = BigInt::zero();
    for l in p.q()..=p.w() {
        let weight = signed_diff(
            &coeff(p.k(), l, p.requested_m()),
            &coeff(p.k(), n - l, p.requested_m()),
        );
        total += weight * (BigInt::from(ys[l]) - BigInt::from(bs[l]));
    }
    Ok(total)
}

/// True when `H` is maximal intersecting among all `k`-multisets.
pub fn verify_hm_maximal(p: &Params) -> Result<bool> {
    Ok(build_hm(p)?.is_maximal_intersecting())
}

/// Closed-form sizes used as independent cross-checks.
pub mod closed_form {
    use num_bigint::BigUint;

    use crate::coeffs;
    use crate::math::binom;
    use crate::Params;

    /// Largest intersecting family of `k`-sets of `[n]`: `C(n-1, k-1)`.
    pub fn ekr_sets(n: usize, k: usize) -> BigUint {
        binom(n as i64 - 1, k as i64 - 1)
    }

    /// Largest non-trivial intersecting family of `k`-sets:
    /// `C(n-1, k-1) - C(n-k-1, k-1) + 1`.
    pub fn hm_sets(n: usize, k: usize) -> BigUint {
        let (n, k) = (n as i64, k as i64);
        binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1u32
    }

    /// Unbounded multisets: `C(n+k-2, k-1) - C(n-2, k-1) + 1`.
    pub fn hm_unbounded(n: usize, k: usize) -> BigUint {
        let (n, k) = (n as i64, k as i64);
        binom(n + k - 2, k - 1) - binom(n - 2, k - 1) + 1u32
    }

    /// `|binom([n]_inf, k)| = C(n+k-1, k)`.
    pub fn count_unbounded(n: usize, k: usize) -> BigUint {
        binom((n + k) as i64 - 1, k as i64)
    }

    /// `|E| = Σ_l C(k, l) C(n-1, l-1)`.
    pub fn ekr_size(p: &Params) -> BigUint {
        let t = coeffs::table(p.k(), p.requested_m());
        (p.q()..=p.k())
            .map(|l| t.get(l) * binom(p.n() as i64 - 1, l as i64 - 1))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::families_isomorphic;
    use crate::universe::{build_u, build_v};
    use crate::Multiplicity;

    fn params(n: usize, k: usize, m: Multiplicity) -> Params {
        Params::new(n, k, m).unwrap()
    }

    const B1: Multiplicity = Multiplicity::Bounded(1);
    const B2: Multiplicity = Multiplicity::Bounded(2);
    const INF: Multiplicity = Multiplicity::Unbounded;

    #[test]
    fn ekr_examples() {
        let p = params(6, 4, B2);
        let e = build_ekr(&p);
        assert_eq!(e.len(), 45);
        assert_eq!(BigUint::from(e.len()), closed_form::ekr_size(&p));
        assert_eq!(build_ekr(&params(5, 4, B1)).len(), 4);
        assert!(e.is_trivial());
        let common = e.total_intersection();
        assert!(
            matches!(common, crate::TotalIntersection::Multiset(ref m) if m.multiplicity(1) >= 1)
        );
    }

    #[test]
    fn hm_examples() {
        assert_eq!(build_hm(&params(9, 4, B1)).unwrap().len(), 53);
        assert_eq!(build_hm(&params(5, 4, INF)).unwrap().len(), 35);
        assert_eq!(build_hm(&params(6, 4, B2)).unwrap().len(), 45);
        assert!(build_hm(&params(4, 4, B2)).is_err());
        let h = build_hm(&params(7, 4, B2)).unwrap();
        assert!(h.is_intersecting() && !h.is_trivial());
    }

    #[test]
    fn hm_size_examples() {
        assert_eq!(hm_size(&params(7, 4, B2)).unwrap(), BigUint::from(67u32));
        assert_eq!(hm_size(&params(5, 4, INF)).unwrap(), BigUint::from(35u32));
        assert_eq!(hm_size(&params(9, 4, B1)).unwrap(), BigUint::from(53u32));
        assert_eq!(closed_form::hm_unbounded(5, 4), BigUint::from(35u32));
        assert_eq!(closed_form::hm_sets(9, 4), BigUint::from(53u32));
        assert!(hm_size(&params(5, 4, B2)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let p = params(5, 4, B2);
        let b = SubsetMask::from_elements([1, 2]);
        let pre = preimage(b, &p);
        assert_eq!(pre.members(), &[Multiset::new(vec![2, 2, 0, 0, 0])]);
        assert!(preimage(SubsetMask::from_elements([3]), &p).is_empty());
        assert!(preimage(SubsetMask::full(5), &p).is_empty());
        let p7 = params(7, 4, B2);
        let v = build_v(&p7).unwrap();
        assert_eq!(preimage_family(&v, &p7).len(), 67);
        assert_eq!(preimage_size(&v, &p7), BigUint::from(67u32));
    }

    #[test]
    fn preimage_sizes_are_coefficients() {
        for m in [B1, B2, Multiplicity::Bounded(3), INF] {
            let p = params(6, 5, m);
            for b in crate::universe::all_masks(6) {
                assert_eq!(
                    BigUint::from(preimage(b, &p).len()),
                    coeff(5, b.len(), m),
                    "{b:?} {m}"
                );
                assert!(preimage(b, &p).iter().all(|a| a.support() == b));
            }
        }
    }

    #[test]
    fn supports_land_in_star_families() {
        for (n, k, m) in [(7, 4, B2), (6, 4, B2), (5, 4, INF), (9, 4, B1)] {
            let p = params(n, k, m);
            let v = build_v(&p).unwrap();
            assert!(build_hm(&p).unwrap().support_family().is_subfamily_of(&v));
            assert!(build_ekr(&p).support_family().is_subfamily_of(&build_u(&p)));
            assert_eq!(preimage_family(&v, &p), build_hm(&p).unwrap());
            assert_eq!(preimage_family(&build_u(&p), &p), build_ekr(&p));
        }
    }

    #[test]
    fn difference_examples() {
        let p = params(7, 4, B2);
        let u = build_u(&p);
        let v = build_v(&p).unwrap();
        assert_eq!(difference_formula(&v, &v, &p).unwrap(), BigInt::zero());
        assert_eq!(difference_formula(&v, &u, &p).unwrap(), BigInt::from(-4));
        let not_maximal = SetFamily::from_masks(7, [SubsetMask::from_elements([1, 2])]);
        assert!(difference_formula(&not_maximal, &u, &p).is_err());
    }

    #[test]
    fn hm_is_maximal() {
        assert!(verify_hm_maximal(&params(7, 4, B2)).unwrap());
        assert!(verify_hm_maximal(&params(6, 4, B2)).unwrap());
        assert!(verify_hm_maximal(&params(5, 4, INF)).unwrap());
    }

    #[test]
    fn star_is_not_hm() {
        let p = params(5, 2, B1);
        let e = build_ekr(&p);
        let h = build_hm(&p).unwrap();
        assert_eq!(h.len(), 3);
        assert!(e.is_trivial() && !h.is_trivial());
        assert!(families_isomorphic(&e, &h).is_none());
    }
}
