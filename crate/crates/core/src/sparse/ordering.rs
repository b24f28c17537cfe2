//! Bandwidth-reducing ordering for the banded shifted factorizations.

use std::collections::VecDeque;

use crate::scalar::Scalar;
use crate::sparse::CsrMatrix;

/// Symmetric permutation `perm[new] = old` with the resulting half bandwidths.
#[derive(Clone, Debug)]
pub struct BandOrdering {
    pub perm: Vec<usize>,
    pub inverse: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
}

impl BandOrdering {
    /// Chooses between the natural ordering and reverse Cuthill–McKee,
    /// whichever gives the narrower band for the pattern of `A + sI`.
    pub fn for_pattern<T: Scalar>(a: &CsrMatrix<T>) -> Self {
        let n = a.dim();
        let natural: Vec<usize> = (0..n).collect();
        let rcm = reverse_cuthill_mckee(a);
        let a_nat = Self::from_perm(a, natural);
        let a_rcm = Self::from_perm(a, rcm);
        if a_rcm.lower + a_rcm.upper < a_nat.lower + a_nat.upper {
            a_rcm
        } else {
            a_nat
        }
    }

    pub fn from_perm<T: Scalar>(a: &CsrMatrix<T>, perm: Vec<usize>) -> Self {
        let n = a.dim();
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut lower = 0;
        let mut upper = 0;
        for i in 0..n {
            let pi = inverse[i];
            for (j, _) in a.row(i) {
                let pj = inverse[j];
                if pj < pi {
                    lower = lower.max(pi - pj);
                } else {
                    upper = upper.max(pj - pi);
                }
            }
        }
        Self {
            perm,
            inverse,
            lower,
            upper,
        }
    }

    /// Ordering of the interleaved `[re, im]` doubled system built from an
    /// ordering of the base pattern.
    pub fn doubled(&self) -> Self {
        let n = self.perm.len();
        let mut perm = Vec::with_capacity(2 * n);
        for &old in &self.perm {
            perm.push(2 * old);
            perm.push(2 * old + 1);
        }
        let mut inverse = vec![0; 2 * n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        Self {
            perm,
            inverse,
            lower: 2 * self.lower + 1,
            upper: 2 * self.upper + 1,
        }
    }
}

/// Reverse Cuthill–McKee on the symmetrized pattern of `a`.
pub fn reverse_cuthill_mckee<T: Scalar>(a: &CsrMatrix<T>) -> Vec<usize> {
    let n = a.dim();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for (j, _) in a.row(i) {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    for list in adj.iter_mut() {
        list.sort_by_key(|&j| (degree[j], j));
    }

    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    loop {
        let start = match (0..n).filter(|&i| !visited[i]).min_by_key(|&i| (degree[i], i)) {
            Some(s) => pseudo_peripheral(&adj, s, &visited),
            None => break,
        };
        let mut queue = VecDeque::new();
        visited[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order.reverse();
    order
}

fn bfs_levels(adj: &[Vec<usize>], start: usize, blocked: &[bool]) -> Vec<Option<usize>> {
    let mut level = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    level[start] = Some(0);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let l = level[v].unwrap();
        for &w in &adj[v] {
            if level[w].is_none() && !blocked[w] {
                level[w] = Some(l + 1);
                queue.push_back(w);
            }
        }
    }
    level
}

fn pseudo_peripheral(adj: &[Vec<usize>], mut start: usize, blocked: &[bool]) -> usize {
    let mut depth = 0;
    for _ in 0..8 {
        let levels = bfs_levels(adj, start, blocked);
        let max_level = levels.iter().flatten().copied().max().unwrap_or(0);
        if max_level <= depth && depth > 0 {
            break;
        }
        depth = max_level;
        let far = (0..adj.len())
            .filter(|&i| levels[i] == Some(max_level))
            .min_by_key(|&i| (adj[i].len(), i))
            .unwrap_or(start);
        if far == start {
            break;
        }
        start = far;
    }
    start
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rcm_is_a_permutation() {
        let a = CsrMatrix::<f64>::from_triplets(
            5,
            &[(0, 4, 1.0), (4, 0, 1.0), (1, 3, 1.0), (3, 1, 1.0), (2, 2, 1.0), (0, 0, 1.0)],
        )
        .unwrap();
        let mut p = reverse_cuthill_mckee(&a);
        p.sort_unstable();
        assert_eq!(p, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn arrow_pattern_band_shrinks() {
        // tridiagonal path scrambled by a fixed permutation
        let n = 30;
        let scramble: Vec<usize> = (0..n).map(|i| (i * 7) % n).collect();
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((scramble[i], scramble[i], -2.0));
            if i + 1 < n {
                trip.push((scramble[i], scramble[i + 1], 1.0));
                trip.push((scramble[i + 1], scramble[i], 1.0));
            }
        }
        let a = CsrMatrix::<f64>::from_triplets(n, &trip).unwrap();
        let ord = BandOrdering::for_pattern(&a);
        assert_eq!((ord.lower, ord.upper), (1, 1));
    }
}
