//! Direct search over `k`-multisets, with no use of the support reduction.
//!
//! Intersecting families are the cliques of the graph on all `k`-multisets
//! joining two multisets whose supports meet. Bron–Kerbosch with a Tomita
//! pivot lists maximal cliques; the largest non-trivial one is found by
//! pruning branches that cannot beat the current best or can only produce
//! trivial families.

use crate::multiset::{count_k_multisets, enumerate_k_multisets};
use crate::{Error, Multiset, MultisetFamily, Params, Result};

/// Default bound on the number of `k`-multisets the raw search accepts.
pub const DEFAULT_VERTEX_GUARD: usize = 120;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMaximum {
    pub size: usize,
    pub witness: MultisetFamily,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

struct Graph {
    vertices: Vec<Multiset>,
    supports: Vec<u32>,
    adjacency: Vec<Bits>,
}

impl Graph {
    fn build(p: &Params, guard: usize) -> Result<Graph> {
        let total = count_k_multisets(p);
        if total > guard.into() {
            return Err(Error::Guard(format!(
                "{total} k-multisets exceed the raw search guard of {guard}"
            )));
        }
        let vertices: Vec<Multiset> = enumerate_k_multisets(p).collect();
        let supports: Vec<u32> = vertices.iter().map(|a| a.support().bits()).collect();
        let len = vertices.len();
        let adjacency = (0..len)
            .map(|i| {
                let mut row = Bits::empty(len);
                for j in 0..len {
                    if i != j && supports[i] & supports[j] != 0 {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        Ok(Graph {
            vertices,
            supports,
            adjacency,
        })
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn family(&self, p: &Params, clique: &[usize]) -> MultisetFamily {
        let mut members: Vec<Multiset> = clique.iter().map(|&i| self.vertices[i].clone()).collect();
        members.sort();
        MultisetFamily::from_sorted_unchecked(*p, members)
    }

    fn pivot(&self, p: &Bits, x: &Bits) -> usize {
        p.or(x)
            .ones()
            .max_by_key(|&u| (self.adjacency[u].and_count(p), std::cmp::Reverse(u)))
            .expect("pivot set is non-empty")
    }

    /// Bitwise AND of the supports of `r` and every candidate in `p`.
    fn common_support(&self, r_support: u32, p: &Bits) -> u32 {
        p.ones().fold(r_support, |acc, v| acc & self.supports[v])
    }
}

struct MaxSearch<'a> {
    graph: &'a Graph,
    best: Vec<usize>,
}

impl MaxSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, r_support: u32, mut p: Bits, mut x: Bits) {
        if p.is_empty() {
            if x.is_empty() && r_support == 0 && r.len() > self.best.len() {
                self.best = r.clone();
            }
            return;
        }
        if r.len() + p.count() <= self.best.len() {
            return;
        }
        if self.graph.common_support(r_support, &p) != 0 {
            return;
        }
        let pivot = self.graph.pivot(&p, &x);
        let candidates: Vec<usize> = p.and_not(&self.graph.adjacency[pivot]).ones().collect();
        for v in candidates {
            let neighbors = &self.graph.adjacency[v];
            r.push(v);
            self.expand(
                r,
                r_support & self.graph.supports[v],
                p.and(neighbors),
                x.and(neighbors),
            );
            r.pop();
            p.clear(v);
            x.set(v);
        }
    }
}

/// Largest non-trivial intersecting family of `k`-multisets, found by
/// exhaustive clique search; `None` when every intersecting family is
/// trivial. Refuses instances with more than `guard` multisets.
pub fn raw_max_nontrivial(p: &Params, guard: usize) -> Result<Option<RawMaximum>> {
    let graph = Graph::build(p, guard)?;
    let len = graph.len();
    let mut all = Bits::empty(len);
    (0..len).for_each(|i| all.set(i));
    let mut search = MaxSearch {
        graph: &graph,
        best: Vec::new(),
    };
    let full_support = (1u32 << p.n()) - 1;
    search.expand(&mut Vec::new(), full_support, all, Bits::empty(len));
    if search.best.is_empty() {
        return Ok(None);
    }
    Ok(Some(RawMaximum {
        size: search.best.len(),
        witness: graph.family(p, &search.best),
    }))
}

/// Every maximal intersecting family of `k`-multisets, sorted.
pub fn maximal_intersecting_families(p: &Params, guard: usize) -> Result<Vec<MultisetFamily>> {
    fn walk(g: &Graph, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = g.pivot(&p, &x);
        let candidates: Vec<usize> = p.and_not(&g.adjacency[pivot]).ones().collect();
        for v in candidates {
            let neighbors = &g.adjacency[v];
            r.push(v);
            walk(g, r, p.and(neighbors), x.and(neighbors), out);
            r.pop();
            p.clear(v);
            x.set(v);
        }
    }

    let graph = Graph::build(p, guard)?;
    let len = graph.len();
    let mut all = Bits::empty(len);
    (0..len).for_each(|i| all.set(i));
    let mut cliques = Vec::new();
    walk(&graph, &mut Vec::new(), all, Bits::empty(len), &mut cliques);
    let mut families: Vec<MultisetFamily> = cliques.iter().map(|c| graph.family(p, c)).collect();
    families.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_hm, hm_size};
    use crate::Multiplicity;

    fn params(n: usize, k: usize, m: Multiplicity) -> Params {
        Params::new(n, k, m).unwrap()
    }

    #[test]
    fn matches_hm_on_small_cases() {
        for (n, k, m) in [
            (6, 4, Multiplicity::Bounded(2)),
            (5, 4, Multiplicity::Unbounded),
            (6, 3, Multiplicity::Bounded(1)),
        ] {
            let p = params(n, k, m);
            let found = raw_max_nontrivial(&p, DEFAULT_VERTEX_GUARD)
                .unwrap()
                .unwrap();
            assert_eq!(found.size, build_hm(&p).unwrap().len(), "{p}");
            assert!(found.witness.is_intersecting());
            assert!(!found.witness.is_trivial());
            assert!(found.witness.is_maximal_intersecting());
        }
        assert_eq!(
            raw_max_nontrivial(&params(6, 4, Multiplicity::Bounded(2)), 120)
                .unwrap()
                .unwrap()
                .size,
            45
        );
        assert_eq!(
            hm_size(&params(6, 4, Multiplicity::Bounded(2))).unwrap(),
            45u32.into()
        );
    }

    #[test]
    fn no_nontrivial_family_without_room() {
        // [3] has a single 3-subset.
        let p = params(3, 3, Multiplicity::Bounded(1));
        assert!(raw_max_nontrivial(&p, 120).unwrap().is_none());
    }

    #[test]
    fn guard_is_enforced() {
        let p = params(9, 4, Multiplicity::Bounded(1));
        assert!(matches!(raw_max_nontrivial(&p, 120), Err(Error::Guard(_))));
        assert!(maximal_intersecting_families(&p, 100).is_err());
    }

    #[test]
    fn maximal_families_of_pairs() {
        // Maximal intersecting families of 2-subsets of [4]: four stars and
        // four triangles.
        let p = params(4, 2, Multiplicity::Bounded(1));
        let all = maximal_intersecting_families(&p, 120).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(MultisetFamily::is_maximal_intersecting));
        assert_eq!(all.iter().filter(|f| !f.is_trivial()).count(), 4);
    }
}
