//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's counting or search code; they work on raw bitmasks
//! and multiplicity vectors straight from the definitions.

#![allow(dead_code)]

use std::io::Write;

/// Ordered `l`-tuples over `1..=m` summing to `k`.
pub fn compositions(k: usize, l: usize, m: usize) -> u64 {
    if l == 0 {
        return u64::from(k == 0);
    }
    (1..=m.min(k))
        .map(|part| compositions(k - part, l - 1, m))
        .sum()
}

pub fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Bit `i - 1` stands for element `i`.
pub fn mask(elements: impl IntoIterator<Item = usize>) -> u32 {
    elements.into_iter().fold(0, |acc, e| acc | 1 << (e - 1))
}

/// Layer sizes of `V` read off the definition: `B` contains `1` and is not
/// inside `[n - k]`, or `B` is the complement of a set containing `1` that
/// lies inside `[n - k]`.
pub fn brute_v_layers(n: usize, k: usize) -> Vec<u64> {
    let full = (1u32 << n) - 1;
    let low = mask(1..=n - k);
    let mut layers = vec![0; n + 1];
    for b in 1..full {
        let in_r = |s: u32| s & 1 == 1 && s & !low == 0;
        let upper = b & 1 == 1 && !in_r(b);
        let twisted = in_r(full ^ b);
        if upper || twisted {
            layers[b.count_ones() as usize] += 1;
        }
    }
    layers
}

/// Every multiplicity vector on `n` symbols with entries at most `m` and
/// total `k`.
pub fn all_multisets(n: usize, k: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(i: usize, rest: usize, m: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=m.min(rest) {
            cur[i] = c as u32;
            go(i + 1, rest - c, m, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, k, m, &mut vec![0; n], &mut out);
    out
}

pub fn support(a: &[u32]) -> u32 {
    a.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `|H|` by filtering every multiset against the definition: members of the
/// star at `1` that meet `[n - k + 1, n]`, plus that block itself.
pub fn brute_hm(n: usize, k: usize, m: usize) -> u64 {
    let h = mask(n - k + 1..=n);
    let star_part = all_multisets(n, k, m)
        .iter()
        .filter(|a| a[0] >= 1 && support(a) & h != 0)
        .count() as u64;
    star_part + 1
}

/// Maximal intersecting families of non-empty proper subsets of `[n]`, found
/// by trying every way to pick one set from each complementary pair and
/// keeping the up-sets. Each family is a sorted list of masks.
pub fn naive_maximal_p_families(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    // One representative per pair: the member containing element 1.
    let reps: Vec<u32> = (1..full).filter(|b| b & 1 == 1).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1 << reps.len()) {
        let mut family: Vec<u32> = reps
            .iter()
            .enumerate()
            .map(|(i, &b)| if choice >> i & 1 == 1 { b } else { full ^ b })
            .collect();
        family.sort_unstable();
        let contains = |s: u32| family.binary_search(&s).is_ok();
        let up = family.iter().all(|&b| {
            (0..n)
                .map(|i| b | 1 << i)
                .filter(|&s| s != b && s != full)
                .all(contains)
        });
        if up {
            out.push(family);
        }
    }
    out.sort();
    out
}

/// Pairwise intersecting and not extendable within the proper non-empty
/// subsets, checked literally.
pub fn is_maximal_intersecting_raw(n: usize, family: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    let intersecting = family.iter().all(|&a| family.iter().all(|&b| a & b != 0));
    intersecting
        && (1..full)
            .filter(|y| !family.contains(y))
            .all(|y| family.iter().any(|&b| b & y == 0))
}

/// Writes straight to the process stdout so the line shows up even when the
/// test harness captures output.
pub fn announce(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}
