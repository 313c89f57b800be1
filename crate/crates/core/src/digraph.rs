//! Directed multigraphs: Matrix-Tree arborescence counts, Eulerian tests and
//! Euler circuit counts (BEST theorem, with an exhaustive oracle).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial};
use crate::hypergraph::MultiHypergraph;
use crate::{Error, Result};

/// Arc cap for [`euler_circuit_count_brute`].
pub const MAX_BRUTE_ARCS: usize = 12;

/// Directed multigraph on `1..=n` without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiDigraph {
    n: usize,
    arcs: BTreeMap<(u32, u32), u32>,
}

impl MultiDigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            arcs: BTreeMap::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(u32, u32, u32)]) -> Result<Self> {
        let mut d = Self::new(n);
        for &(u, v, m) in arcs {
            d.add_arc(u, v, m)?;
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, u: u32, v: u32, multiplicity: u32) -> Result<()> {
        if u == v {
            return Err(Error::InvalidHypergraph(format!("self-loop at {u}")));
        }
        for w in [u, v] {
            if w == 0 || w as usize > self.n {
                return Err(Error::InvalidHypergraph(format!(
                    "arc endpoint {w} outside 1..={}",
                    self.n
                )));
            }
        }
        if multiplicity > 0 {
            *self.arcs.entry((u, v)).or_insert(0) += multiplicity;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.arcs.iter().map(|(&a, &m)| (a, m))
    }

    pub fn multiplicity(&self, u: u32, v: u32) -> u32 {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn total_arcs(&self) -> usize {
        self.arcs.values().map(|&m| m as usize).sum()
    }

    pub fn out_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0; self.n];
        for (&(u, _), &m) in &self.arcs {
            deg[u as usize - 1] += m;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0; self.n];
        for (&(_, v), &m) in &self.arcs {
            deg[v as usize - 1] += m;
        }
        deg
    }

    /// Vertices incident to at least one arc.
    fn active_vertices(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        for &(u, v) in self.arcs.keys() {
            seen[u as usize - 1] = true;
            seen[v as usize - 1] = true;
        }
        (1..=self.n as u32).filter(|&v| seen[v as usize - 1]).collect()
    }

    fn weakly_connected(&self) -> bool {
        let active = self.active_vertices();
        let Some(&start) = active.first() else {
            return true;
        };
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.arcs.keys() {
            adj[u as usize - 1].push(v);
            adj[v as usize - 1].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start as usize - 1] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u as usize - 1] {
                if !seen[w as usize - 1] {
                    seen[w as usize - 1] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == active.len()
    }

    /// Balanced at every vertex, with all arcs in one weak component.
    /// The arcless digraph is not Eulerian.
    pub fn is_eulerian(&self) -> bool {
        !self.arcs.is_empty() && self.out_degrees() == self.in_degrees() && self.weakly_connected()
    }

    /// Spanning arborescences in which every non-root vertex has exactly
    /// one out-arc and every path leads to `root`, weighted by arc
    /// multiplicities. Computed as the determinant of the out-degree
    /// Laplacian with the root's row and column removed.
    pub fn arborescence_count(&self, root: u32) -> Result<BigInt> {
        if root == 0 || root as usize > self.n {
            return Err(Error::InvalidHypergraph(format!(
                "root {root} outside 1..={}",
                self.n
            )));
        }
        let others: Vec<u32> = (1..=self.n as u32).filter(|&v| v != root).collect();
        Ok(self.laplacian_minor(&others))
    }

    /// Determinant of the out-degree Laplacian restricted to `keep`.
    fn laplacian_minor(&self, keep: &[u32]) -> BigInt {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v as usize - 1] = i;
        }
        let m = keep.len();
        let mut lap = vec![vec![0i128; m]; m];
        for (&(u, v), &mult) in &self.arcs {
            let iu = index[u as usize - 1];
            if iu == usize::MAX {
                continue;
            }
            lap[iu][iu] += i128::from(mult);
            let iv = index[v as usize - 1];
            if iv != usize::MAX {
                lap[iu][iv] -= i128::from(mult);
            }
        }
        determinant(lap)
    }

    /// Euler circuits (up to rotation, parallel arcs distinguishable) by the
    /// BEST theorem: `tau(D, r) * prod_v (deg^-(v) - 1)!`.
    pub fn euler_circuit_count_best(&self) -> Result<BigInt> {
        if !self.is_eulerian() {
            return Err(Error::NotEulerian);
        }
        let active = self.active_vertices();
        let tau = self.laplacian_minor(&active[1..]);
        let indeg = self.in_degrees();
        let falls = active
            .iter()
            .map(|&v| factorial(u64::from(indeg[v as usize - 1]) - 1))
            .fold(BigInt::one(), |acc, f| acc * f);
        Ok(tau * falls)
    }
}

/// Exhaustive Euler circuit count: every circuit is rotated to start with
/// arc 0 of the expanded arc list, so each is counted once. Returns 0 for
/// non-Eulerian digraphs.
pub fn euler_circuit_count_brute(d: &MultiDigraph) -> Result<BigInt> {
    let total = d.total_arcs();
    if total > MAX_BRUTE_ARCS {
        return Err(Error::CapExceeded {
            what: "arc count for brute-force circuit counting",
            value: total,
            cap: MAX_BRUTE_ARCS,
        });
    }
    if !d.is_eulerian() {
        return Ok(BigInt::zero());
    }
    let arcs: Vec<(u32, u32)> = d
        .arcs()
        .flat_map(|(a, m)| std::iter::repeat_n(a, m as usize))
        .collect();
    let mut used = vec![false; arcs.len()];
    used[0] = true;
    let start = arcs[0].0;
    fn walk(arcs: &[(u32, u32)], used: &mut [bool], at: u32, start: u32, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        let mut count = 0;
        for i in 1..arcs.len() {
            if !used[i] && arcs[i].0 == at {
                used[i] = true;
                count += walk(arcs, used, arcs[i].1, start, left - 1);
                used[i] = false;
            }
        }
        count
    }
    Ok(BigInt::from(walk(&arcs, &mut used, arcs[0].1, start, arcs.len() - 1)))
}

/// Euler circuits of a connected Veblen 2-graph with distinguishable
/// parallel edges: the sum over Euler orientations of the BEST count, each
/// orientation of an `m`-fold edge with `a` arcs one way arising in
/// `C(m, a)` ways.
pub fn euler_circuit_count_undirected(g: &MultiHypergraph) -> Result<BigInt> {
    if g.k() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: g.k(),
        });
    }
    if !g.is_veblen() {
        return Err(Error::NotVeblen);
    }
    if g.is_empty() || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges: Vec<(u32, u32, u32)> = g
        .edges()
        .map(|(e, m)| {
            let mut vs = e.vertices();
            (vs.next().unwrap(), vs.next().unwrap(), m)
        })
        .collect();
    let mut balance = vec![0i64; g.n()];
    let mut forward = vec![0u32; edges.len()];
    let mut total = BigInt::zero();
    orient(g.n(), &edges, 0, &mut forward, &mut balance, &mut total)?;
    Ok(total)
}

fn orient(
    n: usize,
    edges: &[(u32, u32, u32)],
    i: usize,
    forward: &mut [u32],
    balance: &mut [i64],
    total: &mut BigInt,
) -> Result<()> {
    if i == edges.len() {
        if balance.iter().any(|&b| b != 0) {
            return Ok(());
        }
        let mut d = MultiDigraph::new(n);
        let mut ways = BigInt::one();
        for (&(u, v, m), &a) in edges.iter().zip(forward.iter()) {
            d.add_arc(u, v, a)?;
            d.add_arc(v, u, m - a)?;
            ways *= binomial(u64::from(m), u64::from(a));
        }
        *total += ways * d.euler_circuit_count_best()?;
        return Ok(());
    }
    let (u, v, m) = edges[i];
    for a in 0..=m {
        let net = 2 * i64::from(a) - i64::from(m);
        balance[u as usize - 1] += net;
        balance[v as usize - 1] -= net;
        forward[i] = a;
        orient(n, edges, i + 1, forward, balance, total)?;
        balance[u as usize - 1] -= net;
        balance[v as usize - 1] += net;
    }
    Ok(())
}

/// Exact determinant by fraction-free (Bareiss) elimination. Runs in
/// `i128` and falls back to big integers on overflow.
pub fn determinant(matrix: Vec<Vec<i128>>) -> BigInt {
    match bareiss_i128(matrix.clone()) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(
            matrix
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let m = a.len();
    if m == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..m).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[m - 1][m - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let m = a.len();
    if m == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..m - 1 {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&i| !a[i][k].is_zero()) {
                Some(swap) => {
                    a.swap(k, swap);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::presets;

    fn bidirected_triangle(mult: u32) -> MultiDigraph {
        let mut arcs = Vec::new();
        for u in 1..=3 {
            for v in 1..=3 {
                if u != v {
                    arcs.push((u, v, mult));
                }
            }
        }
        MultiDigraph::from_arcs(3, &arcs).unwrap()
    }

    fn directed_cycle(len: u32) -> MultiDigraph {
        let arcs: Vec<_> = (1..=len).map(|v| (v, v % len + 1, 1)).collect();
        MultiDigraph::from_arcs(len as usize, &arcs).unwrap()
    }

    #[test]
    fn arborescences() {
        for root in 1..=3 {
            assert_eq!(bidirected_triangle(1).arborescence_count(root).unwrap(), 3.into());
            assert_eq!(bidirected_triangle(3).arborescence_count(root).unwrap(), 27.into());
        }
        let two = MultiDigraph::from_arcs(2, &[(1, 2, 1), (2, 1, 1)]).unwrap();
        assert_eq!(two.arborescence_count(1).unwrap(), 1.into());
        let split = MultiDigraph::from_arcs(4, &[(1, 2, 1), (2, 1, 1), (3, 4, 1), (4, 3, 1)]).unwrap();
        assert_eq!(split.arborescence_count(1).unwrap(), 0.into());
    }

    #[test]
    fn eulerian_tests() {
        assert!(directed_cycle(3).is_eulerian());
        assert!(!MultiDigraph::from_arcs(2, &[(1, 2, 1)]).unwrap().is_eulerian());
        let two_cycles = MultiDigraph::from_arcs(
            6,
            &[(1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 5, 1), (5, 6, 1), (6, 4, 1)],
        )
        .unwrap();
        assert!(!two_cycles.is_eulerian());
        assert!(!MultiDigraph::new(3).is_eulerian());
    }

    #[test]
    fn best_counts() {
        assert_eq!(directed_cycle(3).euler_circuit_count_best().unwrap(), 1.into());
        assert_eq!(bidirected_triangle(1).euler_circuit_count_best().unwrap(), 3.into());
        let dumbbell = MultiDigraph::from_arcs(2, &[(1, 2, 2), (2, 1, 2)]).unwrap();
        assert_eq!(dumbbell.euler_circuit_count_best().unwrap(), 2.into());
        assert!(matches!(
            MultiDigraph::from_arcs(2, &[(1, 2, 1)]).unwrap().euler_circuit_count_best(),
            Err(Error::NotEulerian)
        ));
    }

    #[test]
    fn brute_counts() {
        assert_eq!(euler_circuit_count_brute(&directed_cycle(3)).unwrap(), 1.into());
        assert_eq!(euler_circuit_count_brute(&bidirected_triangle(1)).unwrap(), 3.into());
        let path = MultiDigraph::from_arcs(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(euler_circuit_count_brute(&path).unwrap(), 0.into());
        assert!(euler_circuit_count_brute(&bidirected_triangle(3)).is_err());
    }

    #[test]
    fn undirected_circuits() {
        let count = |g: MultiHypergraph| euler_circuit_count_undirected(&g).unwrap();
        assert_eq!(count(presets::cycle(2).unwrap()), 2.into());
        assert_eq!(count(presets::cycle(3).unwrap()), 2.into());
        assert_eq!(count(presets::edge_power(2, 4).unwrap()), 12.into());
        assert!(euler_circuit_count_undirected(&presets::edge_power(2, 3).unwrap()).is_err());
    }

    #[test]
    fn determinant_paths_agree() {
        let m = vec![vec![6, -3], vec![-3, 6]];
        assert_eq!(determinant(m), 27.into());
        let singular = vec![vec![0, 1], vec![0, 2]];
        assert_eq!(determinant(singular), 0.into());
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(swap), (-1).into());
        // entries large enough to overflow i128 inside elimination
        let big = 1i128 << 70;
        let m = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]];
        let b = BigInt::from(big);
        let expected = &b * &b * &b - &b - &b;
        assert_eq!(determinant(m), expected);
    }
}
