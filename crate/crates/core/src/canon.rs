//! Canonical labelings under the symmetric group on the ground set.
//!
//! A structure exposes its points, a label-invariant color for every ordered
//! pair of points, and the key of its image under a relabeling. The canonical
//! form is the least key over all labelings that are leaves of the
//! individualization-refinement tree: the ordered partition of the points is
//! refined with pair colors until stable, and when a cell with more than one
//! point survives, each of its points is individualized in turn. The
//! refinement only depends on colors and cell order, so the set of leaf keys
//! is the same for every relabeling of the input and the minimum is a
//! canonical form.

use crate::multiset::Permutation;

/// Structures acted on by permutations of `0..points()`.
pub trait Relabel {
    type Key: Ord + Clone;

    fn points(&self) -> usize;

    /// Row-major `points() x points()` matrix of pair colors. Any function of
    /// the structure that commutes with relabeling is sound; stronger colors
    /// only make the search tree smaller.
    fn pair_colors(&self) -> Vec<u64>;

    /// Key of the image under `perm`, where point `i` goes to `perm[i]`.
    fn image_key(&self, perm: &[usize]) -> Self::Key;
}

/// SplitMix64 finalizer.
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Returns the canonical relabeling and the key of the canonical image.
pub fn canonical_labeling<T: Relabel + ?Sized>(x: &T) -> (Permutation, T::Key) {
    let n = x.points();
    let colors = x.pair_colors();
    debug_assert_eq!(colors.len(), n * n);
    let mut search = Search {
        structure: x,
        colors: &colors,
        n,
        best: None,
    };
    let root = refine(vec![(0..n).collect()], &colors, n);
    search.descend(root);
    let (perm, key) = search.best.expect("the search tree has at least one leaf");
    (
        Permutation::from_zero_based(perm).expect("leaf labelings are bijections"),
        key,
    )
}

struct Search<'a, T: Relabel + ?Sized> {
    structure: &'a T,
    colors: &'a [u64],
    n: usize,
    best: Option<(Vec<usize>, T::Key)>,
}

impl<T: Relabel + ?Sized> Search<'_, T> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut perm = vec![0; self.n];
            for (pos, cell) in cells.iter().enumerate() {
                perm[cell[0]] = pos;
            }
            let key = self.structure.image_key(&perm);
            if self.best.as_ref().is_none_or(|(_, best)| key < *best) {
                self.best = Some((perm, key));
            }
            return;
        };
        for &point in &cells[target] {
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![point]);
            next.push(
                cells[target]
                    .iter()
                    .copied()
                    .filter(|&p| p != point)
                    .collect(),
            );
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(refine(next, self.colors, self.n));
        }
    }
}

/// Splits cells by the colors each point sees toward every cell until the
/// ordered partition is stable.
fn refine(mut cells: Vec<Vec<usize>>, colors: &[u64], n: usize) -> Vec<Vec<usize>> {
    loop {
        if cells.len() == n {
            return cells;
        }
        let mut next = Vec::with_capacity(n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut signed: Vec<(Vec<u64>, usize)> = cell
                .iter()
                .map(|&i| (signature(i, &cells, colors, n), i))
                .collect();
            signed.sort_by(|a, b| a.0.cmp(&b.0));
            let mut start = 0;
            for end in 1..=signed.len() {
                if end == signed.len() || signed[end].0 != signed[start].0 {
                    next.push(signed[start..end].iter().map(|(_, i)| *i).collect());
                    start = end;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn signature(i: usize, cells: &[Vec<usize>], colors: &[u64], n: usize) -> Vec<u64> {
    let row = &colors[i * n..(i + 1) * n];
    let mut sig = Vec::with_capacity(n + 1);
    sig.push(row[i]);
    let mut scratch = Vec::new();
    for cell in cells {
        scratch.clear();
        scratch.extend(cell.iter().filter(|&&j| j != i).map(|&j| row[j]));
        scratch.sort_unstable();
        sig.extend_from_slice(&scratch);
    }
    sig
}
