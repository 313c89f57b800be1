//! Codegree coefficients from Veblen infragraph sums.
//!
//! For a simple k-graph on `n` vertices, write
//! `g_d = -(k-1)^n * sum C_G` over labelled connected Veblen multiplicity
//! vectors `G` on the host's edges with `d` edges in total. The coefficient of
//! `x^{N-d}` in the normalized characteristic polynomial then satisfies
//! `c_0 = 1` and `d c_d = sum_{j=1..d} j g_j c_{d-j}`. Grouping the vectors by
//! isomorphism class recovers the class sum with occurrence counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{pow_int, Rational};
use crate::assoc::{associated_coefficient, CoefficientCache};
use crate::budget::Budget;
use crate::canon::{aut_order, canonical_key, CanonicalKey};
use crate::enumerate::{connected_infragraph_classes, VeblenClass};
use crate::hypergraph::{Edge, MultiHypergraph};
use crate::{par, Error, Result};

/// Codegree coefficients `c_0..=c_{valid_through}` of one host.
#[derive(Clone, Debug)]
pub struct CoefficientVector {
    pub k: usize,
    pub n: usize,
    pub host: MultiHypergraph,
    /// `entries[d] = c_d`.
    pub entries: Vec<Rational>,
    /// `connected[d] = g_d`, the connected contribution.
    pub connected: Vec<Rational>,
    pub requested: usize,
    pub valid_through: usize,
    /// Why the vector stops short of `requested`, if it does.
    pub stopped: Option<Error>,
}

impl CoefficientVector {
    pub fn get(&self, d: usize) -> Option<&Rational> {
        self.entries.get(d)
    }

    pub fn is_complete(&self) -> bool {
        self.valid_through == self.requested
    }
}

fn check_host(host: &MultiHypergraph) -> Result<()> {
    if host.k() < 2 {
        return Err(Error::InvalidHypergraph(format!("uniformity k = {} < 2", host.k())));
    }
    if !host.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(())
}

fn recoverable(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExhausted(_) | Error::ClassBudgetExhausted(_) | Error::CapExceeded { .. }
    )
}

/// Connected Veblen classes with `d` edges in the host, each with its
/// number of labelled placements and its associated coefficient.
pub fn weighted_connected_classes(
    host: &MultiHypergraph,
    d: usize,
    budget: &Budget,
) -> Result<Vec<(VeblenClass, usize, Rational)>> {
    let classes = connected_infragraph_classes(host, d)?;
    budget.check_classes(classes.len())?;
    let cache = CoefficientCache::global();
    let values = par::try_map(&classes, |(class, _)| {
        budget.check_time()?;
        cache.by_key(&class.key)
    })?;
    Ok(classes
        .into_iter()
        .zip(values)
        .map(|((class, count), c)| (class, count, c))
        .collect())
}

/// `sum C_G` over labelled connected Veblen vectors with `d` edges.
fn connected_sum(host: &MultiHypergraph, d: usize, budget: &Budget) -> Result<Rational> {
    let mut total = Rational::zero();
    for (_, count, c) in weighted_connected_classes(host, d, budget)? {
        total += c * Rational::from_integer(BigInt::from(count));
    }
    Ok(total)
}

/// `c` from `g` by `d c_d = sum_j j g_j c_{d-j}`, `c_0 = 1`; `g[0]` is ignored.
pub fn exponential_convolution(g: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    for d in 1..g.len() {
        let mut s = Rational::zero();
        for j in 1..=d {
            if !g[j].is_zero() {
                s += &g[j] * Rational::from_integer(BigInt::from(j)) * &c[d - j];
            }
        }
        c.push(s / Rational::from_integer(BigInt::from(d)));
    }
    c
}

/// Assembles coefficients with `-(k-1)^weight_exp` as the component factor.
fn assemble(
    host: &MultiHypergraph,
    d_max: usize,
    weight_exp: u32,
    budget: &Budget,
) -> Result<CoefficientVector> {
    check_host(host)?;
    let factor = Rational::from_integer(-pow_int(host.k() as i64 - 1, weight_exp));
    let mut g = vec![Rational::zero()];
    let mut stopped = None;
    for d in 1..=d_max {
        match budget.check_time().and_then(|_| connected_sum(host, d, budget)) {
            Ok(s) => g.push(&factor * s),
            Err(e) if recoverable(&e) => {
                stopped = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let entries = exponential_convolution(&g);
    Ok(CoefficientVector {
        k: host.k(),
        n: host.n(),
        host: host.clone(),
        valid_through: entries.len() - 1,
        entries,
        connected: g,
        requested: d_max,
        stopped,
    })
}

/// `c_0..=c_{d_max}` with no resource limits.
pub fn codegree_coefficients(host: &MultiHypergraph, d_max: usize) -> Result<CoefficientVector> {
    codegree_coefficients_with(host, d_max, &Budget::unlimited())
}

/// Like [`codegree_coefficients`]; a spent budget or an enumeration cap
/// yields a partial vector with `stopped` set.
pub fn codegree_coefficients_with(
    host: &MultiHypergraph,
    d_max: usize,
    budget: &Budget,
) -> Result<CoefficientVector> {
    assemble(host, d_max, host.n() as u32, budget)
}

/// Number of edge subsets of `host` whose induced hypergraph is isomorphic
/// to `pattern` (isolated vertices ignored).
pub fn simple_subgraph_count(host: &MultiHypergraph, pattern: &MultiHypergraph) -> Result<BigInt> {
    if pattern.k() != host.k() {
        return Ok(BigInt::zero());
    }
    let pattern = pattern.flatten().compact();
    let target = canonical_key(&pattern)?;
    let m = pattern.distinct_edge_count();
    let edges: Vec<Edge> = host.edges().map(|(e, _)| e).collect();
    let vertices = pattern.n() as u32;
    let mut count = BigInt::zero();
    let mut chosen = Vec::with_capacity(m);
    subsets(&edges, 0, m, &mut chosen, &mut |sub| {
        let support = sub.iter().fold(0u32, |acc, e| acc | e.mask());
        if support.count_ones() != vertices {
            return Ok(());
        }
        let map = sub.iter().map(|&e| (e, 1)).collect();
        let h = MultiHypergraph::from_map_unchecked(host.k(), host.n(), map).compact();
        if canonical_key(&h)? == target {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

fn subsets(
    items: &[Edge],
    from: usize,
    m: usize,
    chosen: &mut Vec<Edge>,
    visit: &mut dyn FnMut(&[Edge]) -> Result<()>,
) -> Result<()> {
    if chosen.len() == m {
        return visit(chosen);
    }
    let need = m - chosen.len();
    for i in from..items.len() {
        if items.len() - i < need {
            break;
        }
        chosen.push(items[i]);
        let r = subsets(items, i + 1, m, chosen, visit);
        chosen.pop();
        r?;
    }
    Ok(())
}

/// `(1/|Aut(H)|) prod_i |Aut(flat G_i)| * #(flat G_i in host)` over the
/// components `G_i` of `H`, each placed independently.
pub fn occurrence_count(host: &MultiHypergraph, h: &MultiHypergraph) -> Result<Rational> {
    check_host(host)?;
    if !h.is_veblen() {
        return Err(Error::NotVeblen);
    }
    let h = h.compact();
    let mut numerator = BigInt::one();
    for comp in h.connected_components() {
        let flat = comp.compact().flatten();
        numerator *= aut_order(&flat)? * simple_subgraph_count(host, &flat)?;
    }
    Ok(Rational::new(numerator, aut_order(&h)?))
}

/// `c_d` as the literal class sum
/// `sum_H (-(k-1)^n)^{c(H)} C_H #(H in host)` over Veblen classes `H` with
/// `d` edges whose components each embed in the host.
pub fn codegree_by_class_sum(host: &MultiHypergraph, d: usize) -> Result<Rational> {
    check_host(host)?;
    let mut pieces: Vec<(CanonicalKey, usize)> = Vec::new();
    for j in 1..=d {
        for (class, _) in connected_infragraph_classes(host, j)? {
            pieces.push((class.key, j));
        }
    }
    let factor = Rational::from_integer(-pow_int(host.k() as i64 - 1, host.n() as u32));
    let mut total = Rational::zero();
    let mut current = Vec::new();
    multisets(&pieces, 0, d, &mut current, &mut |parts: &[usize]| {
        let mut h = MultiHypergraph::new(host.k(), 0)?;
        for &i in parts {
            h = h.disjoint_union(&pieces[i].0.to_hypergraph())?;
        }
        let sign = pow_rational(&factor, parts.len());
        total += sign * associated_coefficient(&h)? * occurrence_count(host, &h)?;
        Ok(())
    })?;
    if d == 0 {
        return Ok(Rational::one());
    }
    Ok(total)
}

fn pow_rational(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn multisets(
    pieces: &[(CanonicalKey, usize)],
    from: usize,
    left: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if left == 0 {
        return if current.is_empty() { Ok(()) } else { visit(current) };
    }
    for i in from..pieces.len() {
        let size = pieces[i].1;
        if size > left {
            continue;
        }
        current.push(i);
        let r = multisets(pieces, i, left - size, current, visit);
        current.pop();
        r?;
    }
    Ok(())
}

/// Classical sum over elementary subgraphs on `d` vertices of
/// `(-1)^{c(H)} 2^{z(H)}`, with `c` components and `z` cycles.
pub fn harary_sachs_2graph(host: &MultiHypergraph, d: usize) -> Result<Rational> {
    if host.k() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: host.k(),
        });
    }
    check_host(host)?;
    let n = host.n();
    let mut adj = vec![0u32; n + 1];
    for (e, _) in host.edges() {
        let mut it = e.vertices();
        let (a, b) = (it.next().expect("2-edge"), it.next().expect("2-edge"));
        adj[a as usize] |= 1 << b;
        adj[b as usize] |= 1 << a;
    }
    let mut total = BigInt::zero();
    elementary(&adj, n as u32, 1, 0, d as u32, 0, 0, &mut total);
    Ok(Rational::from_integer(total))
}

/// Vertices below `v` are decided; `used` marks covered vertices at or above `v`.
#[allow(clippy::too_many_arguments)]
fn elementary(
    adj: &[u32],
    n: u32,
    v: u32,
    used: u32,
    left: u32,
    comps: u32,
    cycles: u32,
    total: &mut BigInt,
) {
    if left == 0 {
        let sign = if comps.is_multiple_of(2) { 1 } else { -1 };
        *total += BigInt::from(sign) << cycles;
        return;
    }
    if v > n {
        return;
    }
    if used & (1 << v) != 0 {
        elementary(adj, n, v + 1, used, left, comps, cycles, total);
        return;
    }
    elementary(adj, n, v + 1, used, left, comps, cycles, total);
    if left < 2 {
        return;
    }
    let free_above = |w: u32| w > v && used & (1 << w) == 0;
    for u in (v + 1..=n).filter(|&u| adj[v as usize] & (1 << u) != 0 && free_above(u)) {
        elementary(adj, n, v + 1, used | 1 << u, left - 2, comps + 1, cycles, total);
    }
    // Cycles with least vertex v; orient so the second vertex is smaller
    // than the last.
    let mut path = vec![v];
    cycle_paths(adj, n, v, used | 1 << v, &mut path, left, &mut |mask, len| {
        elementary(adj, n, v + 1, mask, left - len, comps + 1, cycles + 1, total);
    });
}

fn cycle_paths(
    adj: &[u32],
    n: u32,
    start: u32,
    mask: u32,
    path: &mut Vec<u32>,
    left: u32,
    found: &mut dyn FnMut(u32, u32),
) {
    let last = *path.last().expect("non-empty path");
    let len = path.len() as u32;
    if len >= 3 && adj[last as usize] & (1 << start) != 0 && path[1] < last {
        found(mask, len);
    }
    if len == left {
        return;
    }
    for w in start + 1..=n {
        if adj[last as usize] & (1 << w) != 0 && mask & (1 << w) == 0 {
            path.push(w);
            cycle_paths(adj, n, start, mask | 1 << w, path, left, found);
            path.pop();
        }
    }
}

/// `f_v(d)` values and the largest `d <= d_max` where `f_v(d) != 0`.
#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub v: u32,
    pub d_max: usize,
    /// `values[d] = f_v(d)`.
    pub values: Vec<Rational>,
    pub threshold: Option<usize>,
}

/// The codegree assembly with `(k-1)^v` in place of `(k-1)^n`, at `d`.
pub fn threshold_f(host: &MultiHypergraph, v: u32, d: usize) -> Result<Rational> {
    let vec = assemble(host, d, v, &Budget::unlimited())?;
    if let Some(e) = vec.stopped {
        return Err(e);
    }
    Ok(vec.entries[d].clone())
}

pub fn threshold_search(host: &MultiHypergraph, v: u32, d_max: usize) -> Result<ThresholdReport> {
    threshold_search_with(host, v, d_max, &Budget::unlimited())
}

pub fn threshold_search_with(
    host: &MultiHypergraph,
    v: u32,
    d_max: usize,
    budget: &Budget,
) -> Result<ThresholdReport> {
    let vec = assemble(host, d_max, v, budget)?;
    if let Some(e) = vec.stopped {
        return Err(e);
    }
    let threshold = (0..=d_max).rev().find(|&d| !vec.entries[d].is_zero());
    Ok(ThresholdReport {
        v,
        d_max,
        values: vec.entries,
        threshold,
    })
}

/// Placement counts per connected class, keyed by canonical form; used to
/// compare against [`occurrence_count`].
pub fn placement_counts(host: &MultiHypergraph, d: usize) -> Result<BTreeMap<CanonicalKey, usize>> {
    Ok(connected_infragraph_classes(host, d)?
        .into_iter()
        .map(|(c, n)| (c.key, n))
        .collect())
}
