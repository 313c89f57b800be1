//! Isomorphism classes of Veblen k-graphs, and Veblen infragraphs of a host.
//!
//! Free enumeration builds edge multisets in non-decreasing lexicographic
//! order over the labels `1..=d` (a Veblen k-graph with `d` edges has at most
//! `d` vertices since every vertex has degree at least `k`). Labellings are
//! restricted to those whose used vertices form a prefix `1..=V` with
//! non-increasing degrees; every class has such a labelling. Because edges
//! arrive in lexicographic order, vertex `v` is final once the next edge's
//! smallest vertex exceeds `v`, and is then checked for divisibility, the
//! degree order and non-emptiness. Surviving multisets are deduplicated by
//! canonical key.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::canon::{canonical_key, CanonicalKey};
use crate::hypergraph::{Edge, MultiHypergraph};
use crate::{par, Error, Result};

/// One isomorphism class of Veblen k-graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeblenClass {
    pub representative: MultiHypergraph,
    pub key: CanonicalKey,
    pub edges: usize,
    pub components: usize,
}

impl VeblenClass {
    pub fn from_key(key: CanonicalKey) -> Self {
        let representative = key.to_hypergraph();
        Self {
            edges: representative.total_edges(),
            components: representative.component_count(),
            representative,
            key,
        }
    }
}

/// Largest edge count accepted by the free enumeration for uniformity `k`.
pub fn max_free_edges(k: usize) -> usize {
    match k {
        2 => 10,
        3 => 8,
        _ => k + 2,
    }
}

/// Connected Veblen k-graphs with `d` edges, sorted by canonical key.
pub fn connected_veblen_classes(k: usize, d: usize, budget: &Budget) -> Result<Vec<VeblenClass>> {
    free_classes(k, d, true, budget)
}

/// All (possibly disconnected) Veblen k-graphs with `d` edges, enumerated
/// directly rather than through the Euler transform.
pub fn all_veblen_classes(k: usize, d: usize, budget: &Budget) -> Result<Vec<VeblenClass>> {
    free_classes(k, d, false, budget)
}

/// Number of (possibly disconnected) classes with `d` edges: the Euler
/// transform of the connected counts.
pub fn all_veblen_class_counts(k: usize, d: usize, budget: &Budget) -> Result<BigInt> {
    let connected: Vec<BigInt> = (1..=d)
        .map(|j| connected_veblen_classes(k, j, budget).map(|c| BigInt::from(c.len())))
        .collect::<Result<_>>()?;
    Ok(euler_transform(&connected)[d].clone())
}

/// `b[0..=len]` where `b` counts multisets of objects counted by `a[0] = a_1, a[1] = a_2, ...`.
pub fn euler_transform(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let c: Vec<BigInt> = (1..=n)
        .map(|j| {
            (1..=j)
                .filter(|i| j % i == 0)
                .map(|i| BigInt::from(i) * &a[i - 1])
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .collect();
    let mut b = vec![BigInt::one()];
    for m in 1..=n {
        let s = (1..=m).fold(BigInt::zero(), |acc, j| acc + &c[j - 1] * &b[m - j]);
        b.push(s / BigInt::from(m));
    }
    b
}

fn free_classes(k: usize, d: usize, connected: bool, budget: &Budget) -> Result<Vec<VeblenClass>> {
    if k < 2 {
        return Err(Error::InvalidHypergraph(format!("uniformity k = {k} < 2")));
    }
    let cap = max_free_edges(k);
    if d > cap {
        return Err(Error::CapExceeded {
            what: "edge count for free Veblen enumeration",
            value: d,
            cap,
        });
    }
    if d == 0 {
        return Ok(if connected {
            Vec::new()
        } else {
            vec![VeblenClass::from_key(canonical_key(&MultiHypergraph::new(k, 0)?)?)]
        });
    }
    if d < k {
        return Ok(Vec::new());
    }
    let candidates = k_subsets(d, k);
    // Branch on the first edge; it must contain vertex 1.
    let firsts: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].contains(1))
        .collect();
    let gen = FreeGen {
        k,
        d,
        connected,
        candidates: &candidates,
        budget,
    };
    let branches = par::try_map(&firsts, |&first| {
        let mut state = FreeState::new(d);
        state.push(candidates[first]);
        let mut found = BTreeSet::new();
        gen.extend(first, &mut state, &mut found)?;
        Ok::<_, Error>(found)
    })?;
    let mut all = BTreeSet::new();
    for b in branches {
        all.extend(b);
        budget.check_classes(all.len())?;
    }
    Ok(all.into_iter().map(VeblenClass::from_key).collect())
}

/// All `k`-subsets of `1..=n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(Edge::from_mask(mask));
        }
    }
    out.sort();
    out
}

struct FreeGen<'a> {
    k: usize,
    d: usize,
    connected: bool,
    candidates: &'a [Edge],
    budget: &'a Budget,
}

struct FreeState {
    degree: Vec<u32>,
    edges: Vec<Edge>,
}

impl FreeState {
    fn new(d: usize) -> Self {
        Self {
            degree: vec![0; d],
            edges: Vec::with_capacity(d),
        }
    }

    fn push(&mut self, e: Edge) {
        for v in e.vertices() {
            self.degree[v as usize - 1] += 1;
        }
        self.edges.push(e);
    }

    fn pop(&mut self) {
        let e = self.edges.pop().expect("non-empty");
        for v in e.vertices() {
            self.degree[v as usize - 1] -= 1;
        }
    }
}

impl FreeGen<'_> {
    /// Checks that vertices `1..below` are final-valid.
    fn closed_ok(&self, deg: &[u32], below: u32) -> bool {
        let k = self.k as u32;
        (1..below).all(|v| {
            let dv = deg[v as usize - 1];
            dv > 0 && dv.is_multiple_of(k) && (v == 1 || dv <= deg[v as usize - 2])
        })
    }

    fn extend(
        &self,
        last: usize,
        state: &mut FreeState,
        found: &mut BTreeSet<CanonicalKey>,
    ) -> Result<()> {
        let k = self.k as u32;
        let placed = state.edges.len();
        if placed == self.d {
            return self.leaf(state, found);
        }
        let left = (self.d - placed) as u32;
        // Vertex order: open vertices may not outgrow the last closed one.
        let current_min = state.edges.last().and_then(|e| e.min_vertex()).unwrap_or(1);
        if current_min > 1 {
            let cap = state.degree[current_min as usize - 2];
            if state.degree[current_min as usize - 1..].iter().any(|&x| x > cap) {
                return Ok(());
            }
        }
        let need: u32 = state.degree[current_min as usize - 1..]
            .iter()
            .map(|&x| if x == 0 { 0 } else { (k - x % k) % k })
            .sum();
        if need > k * left {
            return Ok(());
        }
        let mut checked_below = current_min;
        for idx in last..self.candidates.len() {
            let e = self.candidates[idx];
            let a = e.min_vertex().expect("non-empty edge");
            if a > checked_below {
                if !self.closed_ok(&state.degree, a)
                    || (self.connected && stranded(&state.edges, a))
                {
                    break;
                }
                checked_below = a;
            }
            state.push(e);
            let r = self.extend(idx, state, found);
            state.pop();
            r?;
        }
        Ok(())
    }

    fn leaf(&self, state: &FreeState, found: &mut BTreeSet<CanonicalKey>) -> Result<()> {
        let k = self.k as u32;
        let used = state.degree.iter().take_while(|&&x| x > 0).count();
        if state.degree[used..].iter().any(|&x| x > 0) {
            return Ok(());
        }
        if !self.closed_ok(&state.degree, used as u32 + 1) {
            return Ok(());
        }
        debug_assert!(state.degree[..used].iter().all(|&x| x % k == 0));
        let mut map = BTreeMap::new();
        for &e in &state.edges {
            *map.entry(e).or_insert(0) += 1;
        }
        let h = MultiHypergraph::from_map_unchecked(self.k, used, map);
        if self.connected && !h.is_connected() {
            return Ok(());
        }
        self.budget.check_time()?;
        found.insert(canonical_key(&h)?);
        Ok(())
    }
}

/// Whether some component of `edges` lies entirely below vertex `a`; later
/// edges all start at `a` or above and cannot reach it.
fn stranded(edges: &[Edge], a: u32) -> bool {
    let mut comps: Vec<u32> = Vec::with_capacity(edges.len());
    for e in edges {
        let mut m = e.mask();
        comps.retain(|&c| {
            if c & m != 0 {
                m |= c;
                false
            } else {
                true
            }
        });
        comps.push(m);
    }
    let open = !((1u32 << (a - 1)) - 1);
    comps.iter().any(|&c| c & open == 0)
}

/// A Veblen infragraph split into connected classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfragraphDecomposition {
    /// Connected classes with their multiplicities, sorted by key.
    pub classes: Vec<(CanonicalKey, usize)>,
    pub total_edges: usize,
}

/// A labelled Veblen infragraph of a host together with its decomposition.
#[derive(Clone, Debug)]
pub struct Infragraph {
    pub placement: MultiHypergraph,
    pub decomposition: InfragraphDecomposition,
}

fn check_host(host: &MultiHypergraph) -> Result<()> {
    if !host.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(())
}

/// Every multiset of host edges with `d` edges in total and all degrees
/// divisible by `k`, decomposed into connected canonical classes.
pub fn veblen_infragraphs(host: &MultiHypergraph, d: usize) -> Result<Vec<Infragraph>> {
    check_host(host)?;
    let mut out = Vec::new();
    for placement in veblen_placements(host, d, false)? {
        let mut counts: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
        for comp in placement.connected_components() {
            *counts.entry(canonical_key(&comp.compact())?).or_default() += 1;
        }
        out.push(Infragraph {
            decomposition: InfragraphDecomposition {
                classes: counts.into_iter().collect(),
                total_edges: d,
            },
            placement,
        });
    }
    Ok(out)
}

/// Connected Veblen infragraph classes with `d` edges and the number of
/// labelled placements of each in the host.
pub fn connected_infragraph_classes(
    host: &MultiHypergraph,
    d: usize,
) -> Result<Vec<(VeblenClass, usize)>> {
    check_host(host)?;
    let placements = veblen_placements(host, d, true)?;
    let keys = par::try_map(&placements, |p| canonical_key(&p.compact()))?;
    let mut counts: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
    for key in keys {
        *counts.entry(key).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(key, c)| (VeblenClass::from_key(key), c))
        .collect())
}

/// Labelled Veblen multiplicity vectors on the host's edges with total `d`
/// (restricted to connected supports when asked).
pub fn veblen_placements(
    host: &MultiHypergraph,
    d: usize,
    connected_only: bool,
) -> Result<Vec<MultiHypergraph>> {
    check_host(host)?;
    let edges: Vec<Edge> = host.edges().map(|(e, _)| e).collect();
    let n = host.n();
    let mut last_use = vec![None; n];
    for (i, e) in edges.iter().enumerate() {
        for v in e.vertices() {
            last_use[v as usize - 1] = Some(i);
        }
    }
    let closing: Vec<Vec<usize>> = (0..edges.len())
        .map(|i| (0..n).filter(|&v| last_use[v] == Some(i)).collect())
        .collect();
    let walk = PlacementWalk {
        k: host.k() as u32,
        n,
        edges: &edges,
        closing: &closing,
        connected_only,
    };
    let mut out = Vec::new();
    let mut degree = vec![0u32; n];
    let mut mult = vec![0u32; edges.len()];
    walk.go(0, d as u32, &mut degree, &mut mult, &mut out);
    Ok(out)
}

struct PlacementWalk<'a> {
    k: u32,
    n: usize,
    edges: &'a [Edge],
    closing: &'a [Vec<usize>],
    connected_only: bool,
}

impl PlacementWalk<'_> {
    fn go(
        &self,
        i: usize,
        left: u32,
        degree: &mut [u32],
        mult: &mut [u32],
        out: &mut Vec<MultiHypergraph>,
    ) {
        if i == self.edges.len() {
            if left == 0 {
                let map = self
                    .edges
                    .iter()
                    .zip(mult.iter())
                    .filter(|(_, &m)| m > 0)
                    .map(|(&e, &m)| (e, m))
                    .collect();
                let h = MultiHypergraph::from_map_unchecked(self.k as usize, self.n, map);
                if !self.connected_only || h.is_connected() {
                    out.push(h);
                }
            }
            return;
        }
        let e = self.edges[i];
        for m in 0..=left {
            for v in e.vertices() {
                degree[v as usize - 1] += m;
            }
            mult[i] = m;
            if self.closing[i].iter().all(|&v| degree[v].is_multiple_of(self.k)) {
                self.go(i + 1, left - m, degree, mult, out);
            }
            for v in e.vertices() {
                degree[v as usize - 1] -= m;
            }
        }
        mult[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::presets;

    fn counts(k: usize, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        range
            .map(|d| connected_veblen_classes(k, d, &Budget::unlimited()).unwrap().len())
            .collect()
    }

    #[test]
    fn connected_three_graph_counts() {
        assert_eq!(counts(3, 1..=6), vec![0, 0, 1, 1, 2, 11]);
    }

    #[test]
    fn five_edge_classes_are_the_figure_graphs() {
        let classes = connected_veblen_classes(3, 5, &Budget::unlimited()).unwrap();
        let mut expected: Vec<CanonicalKey> = ["(123)(125)(145)(234)(345)", "(123)(145)(145)(234)(235)"]
            .iter()
            .map(|s| canonical_key(&MultiHypergraph::parse_compact(3, s).unwrap()).unwrap())
            .collect();
        expected.sort();
        let got: Vec<CanonicalKey> = classes.into_iter().map(|c| c.key).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn two_graphs() {
        let tri = connected_veblen_classes(2, 3, &Budget::unlimited()).unwrap();
        assert_eq!(tri.len(), 1);
        assert_eq!(tri[0].representative.distinct_edge_count(), 3);
        // 2-cycle; 4-fold edge, two 2-cycles sharing a vertex, 4-cycle, 2-cycle plus ...
        assert_eq!(counts(2, 1..=2), vec![0, 1]);
    }

    #[test]
    fn euler_transform_of_known_counts() {
        let a: Vec<BigInt> = [0, 0, 1, 1, 2, 11, 26].iter().map(|&x| BigInt::from(x)).collect();
        let b = euler_transform(&a);
        let want: Vec<BigInt> = [1, 0, 0, 1, 1, 2, 12, 27].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(b, want);
    }

    #[test]
    fn free_enumeration_caps() {
        assert!(matches!(
            connected_veblen_classes(3, 9, &Budget::unlimited()),
            Err(Error::CapExceeded { .. })
        ));
        assert!(connected_veblen_classes(3, 0, &Budget::unlimited()).unwrap().is_empty());
        assert_eq!(all_veblen_classes(3, 0, &Budget::unlimited()).unwrap().len(), 1);
    }

    #[test]
    fn infragraphs_of_small_hosts() {
        let e = presets::single_edge(3).unwrap();
        let found = veblen_infragraphs(&e, 3).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].placement, presets::edge_power(3, 3).unwrap());

        let rowling = presets::rowling();
        assert!(veblen_infragraphs(&rowling, 4).unwrap().is_empty());
        assert!(veblen_infragraphs(&presets::edge_power(3, 2).unwrap(), 3).is_err());
    }

    #[test]
    fn rowling_nine_edge_classes() {
        let classes = connected_infragraph_classes(&presets::rowling(), 9).unwrap();
        let mut placements: BTreeMap<String, usize> = BTreeMap::new();
        for (class, count) in &classes {
            placements.insert(class.representative.to_compact(), *count);
        }
        let key = |s: &str| {
            canonical_key(&MultiHypergraph::parse_compact(3, s).unwrap())
                .unwrap()
                .to_hypergraph()
                .to_compact()
        };
        assert_eq!(placements.len(), 4);
        assert_eq!(placements[&key("(123)^9")], 5);
        assert_eq!(placements[&key("(123)^6(145)^3")], 20);
        assert_eq!(placements[&key("(123)^3(145)^3(246)^3")], 8);
        assert_eq!(placements[&key("(123)^3(145)^3(167)^3")], 2);
    }
}
