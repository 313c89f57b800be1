//! Canonical forms and automorphism counts by partition refinement with
//! exhaustive individualization.
//!
//! Every leaf of the search tree is a discrete ordered partition, i.e. a
//! relabelling. The certificate is the lexicographically least relabelled
//! edge multiset over all leaves. Because refinement and target-cell choice
//! are label-invariant, the leaves attaining the certificate form a single
//! regular orbit of the automorphism group, so their number is `|Aut(H)|`.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::hypergraph::{Edge, MultiHypergraph};
use crate::{Error, Result};

/// Largest vertex count accepted by [`canonical_key`] and [`aut_order`].
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-invariant certificate: uniformity, vertex count and the
/// sorted relabelled edge multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    k: u8,
    n: u8,
    edges: Vec<(Edge, u32)>,
}

impl CanonicalKey {
    /// The canonical representative.
    pub fn to_hypergraph(&self) -> MultiHypergraph {
        MultiHypergraph::from_map_unchecked(
            self.k as usize,
            self.n as usize,
            self.edges.iter().copied().collect(),
        )
    }

    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(|&(_, m)| m as usize).sum()
    }
}

/// Result of one canonical search.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// `labelling[v - 1]` is the canonical label of vertex `v`.
    pub labelling: Vec<u32>,
    pub aut_order: u64,
}

pub fn canonical_key(h: &MultiHypergraph) -> Result<CanonicalKey> {
    canonicalize(h).map(|c| c.key)
}

pub fn aut_order(h: &MultiHypergraph) -> Result<BigInt> {
    canonicalize(h).map(|c| BigInt::from(c.aut_order))
}

pub fn is_isomorphic(a: &MultiHypergraph, b: &MultiHypergraph) -> Result<bool> {
    Ok(canonical_key(a)? == canonical_key(b)?)
}

pub fn canonicalize(h: &MultiHypergraph) -> Result<Canonical> {
    let n = h.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count for canonical labelling",
            value: n,
            cap: MAX_CANON_VERTICES,
        });
    }
    let edges: Vec<(Edge, u32)> = h.edges().collect();
    let mut incidence = vec![Vec::new(); n];
    for (i, (e, _)) in edges.iter().enumerate() {
        for v in e.vertices() {
            incidence[v as usize - 1].push(i);
        }
    }
    let mut search = Search {
        edges: &edges,
        incidence: &incidence,
        best: None,
        best_colors: Vec::new(),
        hits: 0,
    };
    let colors = search.refine(vec![0; n]);
    search.descend(colors);
    let best = search.best.unwrap_or_default();
    Ok(Canonical {
        key: CanonicalKey {
            k: h.k() as u8,
            n: n as u8,
            edges: best,
        },
        labelling: search.best_colors.iter().map(|&c| c + 1).collect(),
        aut_order: search.hits,
    })
}

struct Search<'a> {
    edges: &'a [(Edge, u32)],
    incidence: &'a [Vec<usize>],
    best: Option<Vec<(Edge, u32)>>,
    best_colors: Vec<u32>,
    hits: u64,
}

impl Search<'_> {
    /// Iterated refinement: a vertex's new colour is the rank of its old
    /// colour together with a hash of the multiset of (multiplicity, colours
    /// of the other vertices) over its incident edges. The hash is
    /// label-invariant, so a collision can only leave cells coarser.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = colors.len();
        let mut cells = count_cells(&colors);
        let mut sums = vec![0u64; self.edges.len()];
        let mut keyed: Vec<(u32, u64, usize)> = Vec::with_capacity(n);
        loop {
            for (i, &(e, _)) in self.edges.iter().enumerate() {
                sums[i] = e
                    .vertices()
                    .fold(0u64, |acc, u| acc.wrapping_add(mix(u64::from(colors[u as usize - 1]))));
            }
            keyed.clear();
            for v in 0..n {
                let own = mix(u64::from(colors[v]));
                let h = self.incidence[v].iter().fold(0u64, |acc, &i| {
                    let m = u64::from(self.edges[i].1);
                    acc.wrapping_add(mix(mix(m ^ 0x9e37).wrapping_add(sums[i].wrapping_sub(own))))
                });
                keyed.push((colors[v], h, v));
            }
            keyed.sort_unstable();
            let mut next = vec![0u32; n];
            let mut rank = 0u32;
            for j in 0..n {
                if j > 0 && (keyed[j].0, keyed[j].1) != (keyed[j - 1].0, keyed[j - 1].1) {
                    rank += 1;
                }
                next[keyed[j].2] = rank;
            }
            colors = next;
            let distinct = rank as usize + 1;
            if n == 0 || distinct == cells {
                return colors;
            }
            cells = distinct;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let n = colors.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            self.leaf(colors);
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        for &v in &members {
            // Split the target cell into {v} followed by the rest.
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c as usize == target && u != v))
                .collect();
            let child = self.refine(densify(&split));
            self.descend(child);
        }
    }

    fn leaf(&mut self, colors: Vec<u32>) {
        let labels: Vec<u32> = colors.iter().map(|&c| c + 1).collect();
        let mut cert: Vec<(Edge, u32)> = self
            .edges
            .iter()
            .map(|&(e, m)| (e.relabel(&labels), m))
            .collect();
        cert.sort_unstable();
        let ord = match &self.best {
            None => Ordering::Less,
            Some(best) => cert.cmp(best),
        };
        match ord {
            Ordering::Less => {
                self.best = Some(cert);
                self.best_colors = colors;
                self.hits = 1;
            }
            Ordering::Equal => self.hits += 1,
            Ordering::Greater => {}
        }
    }
}

/// SplitMix64 finalizer.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn densify(colors: &[u32]) -> Vec<u32> {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).expect("present") as u32)
        .collect()
}
