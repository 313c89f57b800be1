//! Independent oracles shared by the integration tests. None of these call
//! into the determinant, rooting or assembly code they are checked against.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hypercoef::hypergraph::{Edge, MultiHypergraph};
use hypercoef::{canonical_key, BigInt, CanonicalKey, Rational};
use num_traits::{One, Zero};

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn relabel_perm(h: &MultiHypergraph, perm: &[usize]) -> MultiHypergraph {
    let map: Vec<u32> = perm.iter().map(|&p| p as u32 + 1).collect();
    h.relabel(&map, h.n())
}

/// `|Aut(H)|` by trying every vertex permutation.
pub fn brute_aut_order(h: &MultiHypergraph) -> u64 {
    permutations(h.n())
        .iter()
        .filter(|p| relabel_perm(h, p) == *h)
        .count() as u64
}

/// Isomorphism test by trying every vertex permutation.
pub fn brute_isomorphic(a: &MultiHypergraph, b: &MultiHypergraph) -> bool {
    a.n() == b.n()
        && a.k() == b.k()
        && a.total_edges() == b.total_edges()
        && permutations(a.n()).iter().any(|p| relabel_perm(a, p) == *b)
}

/// Arborescences towards `root` by choosing one out-arc per non-root vertex
/// (with multiplicity) and keeping the choices in which every vertex reaches
/// the root. `arcs[u][v]` is the multiplicity of `u -> v`, 0-based.
pub fn brute_arborescences(arcs: &[Vec<u64>], root: usize) -> u64 {
    let n = arcs.len();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut parent = vec![usize::MAX; n];
    fn go(arcs: &[Vec<u64>], others: &[usize], i: usize, root: usize, parent: &mut [usize]) -> u64 {
        if i == others.len() {
            let reaches = others.iter().all(|&s| {
                let mut v = s;
                for _ in 0..parent.len() {
                    if v == root {
                        return true;
                    }
                    v = parent[v];
                }
                v == root
            });
            return u64::from(reaches);
        }
        let u = others[i];
        let mut total = 0;
        for w in 0..arcs.len() {
            if arcs[u][w] > 0 && w != u {
                parent[u] = w;
                total += arcs[u][w] * go(arcs, others, i + 1, root, parent);
            }
        }
        total
    }
    go(arcs, &others, 0, root, &mut parent)
}

/// `C_H` from the literal definition: every sequence of rooted stars
/// `(e_1, v_1), ..., (e_m, v_m)` using each edge copy once with
/// `v_1 <= ... <= v_m`, identical copies indistinguishable; Eulerian
/// digraphs contribute `tau / prod deg^-(v)`.
pub fn brute_associated_coefficient(h: &MultiHypergraph) -> Rational {
    let h = h.compact();
    let edges: Vec<(Edge, u32)> = h.edges().collect();
    let mut left: Vec<u32> = edges.iter().map(|&(_, m)| m).collect();
    let n = h.n();
    let mut arcs = vec![vec![0u64; n]; n];
    let mut total = Rational::zero();
    fn go(
        edges: &[(Edge, u32)],
        left: &mut [u32],
        min_root: u32,
        arcs: &mut Vec<Vec<u64>>,
        total: &mut Rational,
    ) {
        if left.iter().all(|&x| x == 0) {
            let n = arcs.len();
            let out: Vec<u64> = (0..n).map(|u| arcs[u].iter().sum()).collect();
            let inn: Vec<u64> = (0..n).map(|v| (0..n).map(|u| arcs[u][v]).sum()).collect();
            if out != inn {
                return;
            }
            let tau = brute_arborescences(arcs, 0);
            let denom: u64 = out.iter().product();
            *total += Rational::new(BigInt::from(tau), BigInt::from(denom));
            return;
        }
        for i in 0..edges.len() {
            if left[i] == 0 {
                continue;
            }
            let e = edges[i].0;
            for u in e.vertices().filter(|&u| u >= min_root) {
                left[i] -= 1;
                for w in e.vertices().filter(|&w| w != u) {
                    arcs[u as usize - 1][w as usize - 1] += 1;
                }
                go(edges, left, u, arcs, total);
                for w in e.vertices().filter(|&w| w != u) {
                    arcs[u as usize - 1][w as usize - 1] -= 1;
                }
                left[i] += 1;
            }
        }
    }
    go(&edges, &mut left, 1, &mut arcs, &mut total);
    total
}

/// Leibniz determinant.
pub fn leibniz_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut total = BigInt::zero();
    for p in permutations(n) {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = BigInt::one();
        for (i, &pi) in p.iter().enumerate() {
            term *= m[i][pi];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

/// Coefficients `c_0..=c_n` of `det(xI - A)` for a simple graph, from
/// principal minors: `c_d = (-1)^d sum_{|S| = d} det A[S]`.
pub fn adjacency_char_poly(g: &MultiHypergraph) -> Vec<BigInt> {
    let n = g.n();
    let mut a = vec![vec![0i64; n]; n];
    for (e, m) in g.edges() {
        let vs: Vec<usize> = e.vertices().map(|v| v as usize - 1).collect();
        a[vs[0]][vs[1]] += i64::from(m);
        a[vs[1]][vs[0]] += i64::from(m);
    }
    let mut c = vec![BigInt::zero(); n + 1];
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor: Vec<Vec<i64>> = s.iter().map(|&i| s.iter().map(|&j| a[i][j]).collect()).collect();
        let det = if s.is_empty() { BigInt::one() } else { leibniz_det(&minor) };
        let d = s.len();
        c[d] += if d.is_multiple_of(2) { det } else { -det };
    }
    c
}

/// All labelled simple graphs on `n` vertices.
pub fn labelled_graphs(n: usize) -> Vec<MultiHypergraph> {
    let pairs: Vec<[u32; 2]> = (1..=n as u32)
        .flat_map(|a| (a + 1..=n as u32).map(move |b| [a, b]))
        .collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let chosen: Vec<&[u32]> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| &p[..])
                .collect();
            MultiHypergraph::simple(2, n, &chosen).unwrap()
        })
        .collect()
}

/// One representative per isomorphism class of simple graphs on `n` vertices.
pub fn graph_classes(n: usize) -> Vec<MultiHypergraph> {
    let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
    labelled_graphs(n)
        .into_iter()
        .filter(|g| seen.insert(canonical_key(g).unwrap()))
        .collect()
}

/// Connected Veblen multigraphs (even degrees) with `d` edges on at most
/// `d` vertices, one per isomorphism class, by brute force over edge
/// multisets.
pub fn veblen_2graph_classes(d: usize) -> Vec<MultiHypergraph> {
    let n = d.max(2);
    let pairs: Vec<Edge> = (1..=n as u32)
        .flat_map(|a| (a + 1..=n as u32).map(move |b| Edge::new(&[a, b]).unwrap()))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    fn go(
        pairs: &[Edge],
        from: usize,
        left: usize,
        n: usize,
        cur: &mut Vec<Edge>,
        seen: &mut BTreeSet<CanonicalKey>,
        out: &mut Vec<MultiHypergraph>,
    ) {
        if left == 0 {
            let mut h = MultiHypergraph::new(2, n).unwrap();
            for &e in cur.iter() {
                h.insert(e, 1).unwrap();
            }
            let h = h.compact();
            if h.is_veblen() && h.is_connected() {
                let key = canonical_key(&h).unwrap();
                if seen.insert(key) {
                    out.push(h);
                }
            }
            return;
        }
        for i in from..pairs.len() {
            cur.push(pairs[i]);
            go(pairs, i, left - 1, n, cur, seen, out);
            cur.pop();
        }
    }
    go(&pairs, 0, d, n, &mut Vec::new(), &mut seen, &mut out);
    out
}

/// Whether a connected 2-graph is a cycle (including the 2-cycle).
pub fn is_cycle(g: &MultiHypergraph) -> bool {
    let g = g.compact();
    g.degrees().iter().all(|&d| d == 2) && g.is_connected()
}
