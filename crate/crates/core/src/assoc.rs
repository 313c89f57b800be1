//! Euler rootings and the associated coefficient `C_H` of a Veblen
//! hypergraph.
//!
//! A rooting picks, for every copy of every edge, a root vertex inside the
//! edge; copies of one edge are indistinguishable, so a rooting is a vector
//! of root counts `r[e][v]`. The rooted digraph is the union of the stars
//! `root -> other` and it is Eulerian exactly when every vertex is a root
//! `deg(v) / k` times. A rooting stands for `prod_v n_v! / prod_e r[e][v]!`
//! orderings of its stars (non-decreasing roots, distinct edges
//! distinguishable), which is its weight in
//!
//! `C_H = sum_R weight(R) * tau(D_R) / prod_v deg^-(v)`.
//!
//! `deg^-(v) = (k - 1) deg(v) / k` is the same for every Euler rooting, so
//! the sum is accumulated over integers and divided once.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, Rational};
use crate::canon::{canonical_key, CanonicalKey, MAX_CANON_VERTICES};
use crate::digraph::{determinant, euler_circuit_count_undirected, MultiDigraph};
use crate::hypergraph::{Edge, MultiHypergraph};
use crate::{par, Error, Result};

/// Root counts per distinct edge, aligned with the edge's vertices in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rooting {
    roots: Vec<(Edge, Vec<u32>)>,
}

impl Rooting {
    pub fn new(roots: Vec<(Edge, Vec<u32>)>) -> Self {
        Self { roots }
    }

    pub fn edges(&self) -> &[(Edge, Vec<u32>)] {
        &self.roots
    }

    /// Copies of `e` rooted at `v`.
    pub fn count(&self, e: Edge, v: u32) -> u32 {
        self.roots
            .iter()
            .find(|(f, _)| *f == e)
            .and_then(|(f, counts)| f.vertices().position(|u| u == v).map(|i| counts[i]))
            .unwrap_or(0)
    }

    /// Number of roots at each vertex, indexed by `v - 1`.
    pub fn roots_per_vertex(&self, n: usize) -> Vec<u32> {
        let mut per = vec![0; n];
        for (e, counts) in &self.roots {
            for (v, &c) in e.vertices().zip(counts) {
                per[v as usize - 1] += c;
            }
        }
        per
    }

    /// Every edge of `h` appears once with counts summing to its multiplicity.
    pub fn is_valid_for(&self, h: &MultiHypergraph) -> bool {
        self.roots.len() == h.distinct_edge_count()
            && self.roots.iter().all(|(e, counts)| {
                counts.len() == e.len() && counts.iter().sum::<u32>() == h.multiplicity(*e)
            })
    }
}

/// The multi-digraph `D_R`: every copy of `e` rooted at `u` adds the arcs
/// `u -> w` for `w` in `e - {u}`.
pub fn rooted_digraph(h: &MultiHypergraph, rooting: &Rooting) -> Result<MultiDigraph> {
    if !rooting.is_valid_for(h) {
        return Err(Error::InvalidHypergraph(
            "rooting does not match the hypergraph's edges".into(),
        ));
    }
    let mut d = MultiDigraph::new(h.n());
    for (e, counts) in rooting.edges() {
        for (u, &c) in e.vertices().zip(counts) {
            if c == 0 {
                continue;
            }
            for w in e.vertices().filter(|&w| w != u) {
                d.add_arc(u, w, c)?;
            }
        }
    }
    Ok(d)
}

/// Orderings of the stars with non-decreasing roots realising `rooting`:
/// `prod_v n_v! / prod_e r[e][v]!`.
pub fn rooting_multiplicity(rooting: &Rooting) -> BigInt {
    let mut per_vertex: HashMap<u32, Vec<u32>> = HashMap::new();
    for (e, counts) in rooting.edges() {
        for (v, &c) in e.vertices().zip(counts) {
            per_vertex.entry(v).or_default().push(c);
        }
    }
    per_vertex
        .values()
        .map(|cs| crate::arith::multinomial(cs.iter().copied()))
        .fold(BigInt::one(), |acc, x| acc * x)
}

fn check_veblen(h: &MultiHypergraph) -> Result<()> {
    if !h.is_veblen() {
        return Err(Error::NotVeblen);
    }
    Ok(())
}

/// Every Euler rooting of a connected Veblen hypergraph, in a fixed order.
pub fn enumerate_euler_rootings(h: &MultiHypergraph) -> Result<Vec<Rooting>> {
    check_veblen(h)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut out = Vec::new();
    RootingWalk::new(h).run(&mut |edges, counts| {
        out.push(Rooting::new(
            edges.iter().map(|&(e, _)| e).zip(counts.iter().cloned()).collect(),
        ));
    });
    Ok(out)
}

type Visitor<'a> = dyn FnMut(&[(Edge, u32)], &[Vec<u32>]) + 'a;

/// Backtracking over per-edge root-count vectors with the balance quota
/// `deg(v) / k` per vertex.
struct RootingWalk {
    edges: Vec<(Edge, u32)>,
    verts: Vec<Vec<u32>>,
    quota: Vec<u32>,
    /// Multiplicity still to be assigned at or after edge `i` touching `v`.
    capacity: Vec<Vec<u32>>,
}

impl RootingWalk {
    fn new(h: &MultiHypergraph) -> Self {
        let k = h.k() as u32;
        let edges: Vec<(Edge, u32)> = h.edges().collect();
        let verts: Vec<Vec<u32>> = edges.iter().map(|(e, _)| e.vertices().collect()).collect();
        let quota = h.degrees().iter().map(|&d| d / k).collect();
        let mut capacity = vec![vec![0u32; h.n()]; edges.len() + 1];
        for i in (0..edges.len()).rev() {
            capacity[i] = capacity[i + 1].clone();
            for &v in &verts[i] {
                capacity[i][v as usize - 1] += edges[i].1;
            }
        }
        Self {
            edges,
            verts,
            quota,
            capacity,
        }
    }

    fn run(&self, visit: &mut Visitor<'_>) {
        let mut remaining = self.quota.clone();
        let mut counts: Vec<Vec<u32>> = self.verts.iter().map(|vs| vec![0; vs.len()]).collect();
        self.edge(0, &mut remaining, &mut counts, visit);
    }

    fn edge(
        &self,
        i: usize,
        remaining: &mut [u32],
        counts: &mut [Vec<u32>],
        visit: &mut Visitor<'_>,
    ) {
        if i == self.edges.len() {
            visit(&self.edges, counts);
            return;
        }
        self.slot(i, 0, self.edges[i].1, remaining, counts, visit);
    }

    fn slot(
        &self,
        i: usize,
        j: usize,
        left: u32,
        remaining: &mut [u32],
        counts: &mut [Vec<u32>],
        visit: &mut Visitor<'_>,
    ) {
        let vs = &self.verts[i];
        let v = vs[j] as usize - 1;
        let after = &self.capacity[i + 1];
        // Copies of this edge at v must leave v's quota coverable by later edges.
        let lo = remaining[v].saturating_sub(after[v]);
        let hi = remaining[v].min(left);
        if j + 1 == vs.len() {
            if left < lo || left > hi {
                return;
            }
            counts[i][j] = left;
            remaining[v] -= left;
            self.edge(i + 1, remaining, counts, visit);
            remaining[v] += left;
            counts[i][j] = 0;
            return;
        }
        for c in lo..=hi {
            counts[i][j] = c;
            remaining[v] -= c;
            self.slot(i, j + 1, left - c, remaining, counts, visit);
            remaining[v] += c;
        }
        counts[i][j] = 0;
    }
}

/// `C_H` of a connected Veblen hypergraph computed from its rootings
/// (no caching). Vertices of degree zero are ignored.
pub fn associated_coefficient_uncached(h: &MultiHypergraph) -> Result<Rational> {
    check_veblen(h)?;
    if h.is_empty() {
        return Ok(Rational::one());
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let h = h.compact();
    let k = h.k() as u32;
    let deg = h.degrees();
    let m = h.n();
    let walk = RootingWalk::new(&h);
    let mut numerator = BigInt::zero();
    let mut weight_parts: Vec<Vec<u32>> = vec![Vec::new(); m];
    walk.run(&mut |edges, counts| {
        // Laplacian of D_R without vertex 1 (the fixed root).
        let mut lap = vec![vec![0i128; m - 1]; m - 1];
        for part in weight_parts.iter_mut() {
            part.clear();
        }
        for ((e, _), cs) in edges.iter().zip(counts) {
            for (u, &c) in e.vertices().zip(cs) {
                weight_parts[u as usize - 1].push(c);
                if c == 0 || u == 1 {
                    continue;
                }
                let iu = u as usize - 2;
                lap[iu][iu] += i128::from(c * (k - 1));
                for w in e.vertices().filter(|&w| w != u && w != 1) {
                    lap[iu][w as usize - 2] -= i128::from(c);
                }
            }
        }
        let tau = determinant(lap);
        if tau.is_zero() {
            return;
        }
        let weight = weight_parts
            .iter()
            .map(|cs| crate::arith::multinomial(cs.iter().copied()))
            .fold(BigInt::one(), |acc, x| acc * x);
        numerator += weight * tau;
    });
    let indegree_product = deg
        .iter()
        .map(|&d| BigInt::from((k - 1) * d / k))
        .fold(BigInt::one(), |acc, x| acc * x);
    Ok(Rational::new(numerator, indegree_product))
}

/// Session cache of associated coefficients keyed by canonical form.
/// Concurrent inserts of the same key store the same value.
#[derive(Default)]
pub struct CoefficientCache {
    map: RwLock<HashMap<CanonicalKey, Rational>>,
}

impl CoefficientCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by [`associated_coefficient`].
    pub fn global() -> &'static CoefficientCache {
        static GLOBAL: OnceLock<CoefficientCache> = OnceLock::new();
        GLOBAL.get_or_init(CoefficientCache::new)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `C_H` for a connected class given by its canonical key.
    pub fn by_key(&self, key: &CanonicalKey) -> Result<Rational> {
        if let Some(c) = self.map.read().expect("cache lock").get(key) {
            return Ok(c.clone());
        }
        let c = associated_coefficient_uncached(&key.to_hypergraph())?;
        self.map
            .write()
            .expect("cache lock")
            .entry(key.clone())
            .or_insert_with(|| c.clone());
        Ok(c)
    }

    /// `C_H` for any Veblen hypergraph: product over components.
    pub fn coefficient(&self, h: &MultiHypergraph) -> Result<Rational> {
        check_veblen(h)?;
        let mut total = Rational::one();
        for comp in h.connected_components() {
            let comp = comp.compact();
            total *= if comp.n() <= MAX_CANON_VERTICES {
                self.by_key(&canonical_key(&comp)?)?
            } else {
                associated_coefficient_uncached(&comp)?
            };
        }
        Ok(total)
    }

    /// Fills the cache for many classes at once (in parallel when enabled).
    pub fn warm(&self, keys: &[CanonicalKey]) -> Result<()> {
        let missing: Vec<CanonicalKey> = {
            let map = self.map.read().expect("cache lock");
            keys.iter().filter(|k| !map.contains_key(k)).cloned().collect()
        };
        let values = par::try_map(&missing, |key| {
            associated_coefficient_uncached(&key.to_hypergraph())
        })?;
        let mut map = self.map.write().expect("cache lock");
        for (key, c) in missing.into_iter().zip(values) {
            map.entry(key).or_insert(c);
        }
        Ok(())
    }
}

/// `C_H` of a (possibly disconnected) Veblen hypergraph, memoized per
/// connected component in [`CoefficientCache::global`].
pub fn associated_coefficient(h: &MultiHypergraph) -> Result<Rational> {
    CoefficientCache::global().coefficient(h)
}

/// `C_G` of a connected Veblen 2-graph as `|Euler circuits| / prod m(e)!`.
pub fn associated_coefficient_2graph(g: &MultiHypergraph) -> Result<Rational> {
    let circuits = euler_circuit_count_undirected(g)?;
    let denom = g
        .edges()
        .map(|(_, m)| factorial(u64::from(m)))
        .fold(BigInt::one(), |acc, f| acc * f);
    Ok(Rational::new(circuits, denom))
}

/// Edge cap for [`partition_sum`].
pub const MAX_PARTITION_EDGES: usize = 8;

/// Signed sum over multisets `P` of connected Veblen graphs whose
/// multiplicities add up to `G`'s: `(-1)^{|P|} prod C(P_i) / prod mult!`,
/// the last factor running over repeated identical parts.
pub fn partition_sum(g: &MultiHypergraph) -> Result<Rational> {
    if g.k() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: g.k(),
        });
    }
    check_veblen(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let total = g.total_edges();
    if total > MAX_PARTITION_EDGES {
        return Err(Error::CapExceeded {
            what: "edge count for partition sums",
            value: total,
            cap: MAX_PARTITION_EDGES,
        });
    }
    let edges: Vec<(Edge, u32)> = g.edges().collect();
    let target: Vec<u32> = edges.iter().map(|&(_, m)| m).collect();

    // All connected Veblen sub-multigraphs, as multiplicity vectors.
    let mut parts: Vec<(Vec<u32>, Rational)> = Vec::new();
    let mut vector = vec![0u32; edges.len()];
    loop {
        let mut i = 0;
        while i < vector.len() && vector[i] == target[i] {
            vector[i] = 0;
            i += 1;
        }
        if i == vector.len() {
            break;
        }
        vector[i] += 1;
        let sub = sub_multigraph(g, &edges, &vector);
        if sub.is_veblen() && sub.is_connected() {
            parts.push((vector.clone(), associated_coefficient(&sub)?));
        }
    }

    fn extend(
        parts: &[(Vec<u32>, Rational)],
        from: usize,
        left: &mut [u32],
        run: (usize, u64),
        acc: Rational,
        total: &mut Rational,
    ) {
        if left.iter().all(|&x| x == 0) {
            *total += acc / Rational::from_integer(factorial(run.1));
            return;
        }
        for (idx, (vec, c)) in parts.iter().enumerate().skip(from) {
            if vec.iter().zip(left.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (l, a) in left.iter_mut().zip(vec) {
                *l -= a;
            }
            // Close out the symmetry factor of the previous run of equal parts.
            let (next_run, carried) = if idx == run.0 {
                ((idx, run.1 + 1), acc.clone())
            } else {
                ((idx, 1), acc.clone() / Rational::from_integer(factorial(run.1)))
            };
            extend(parts, idx, left, next_run, -carried * c, total);
            for (l, a) in left.iter_mut().zip(vec) {
                *l += a;
            }
        }
    }

    let mut total = Rational::zero();
    let mut left = target.clone();
    extend(&parts, 0, &mut left, (usize::MAX, 0), Rational::one(), &mut total);
    Ok(total)
}

fn sub_multigraph(g: &MultiHypergraph, edges: &[(Edge, u32)], vector: &[u32]) -> MultiHypergraph {
    let map = edges
        .iter()
        .zip(vector)
        .filter(|(_, &m)| m > 0)
        .map(|(&(e, _), &m)| (e, m))
        .collect();
    MultiHypergraph::from_map_unchecked(g.k(), g.n(), map)
}
