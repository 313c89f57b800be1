//! k-uniform multi-hypergraphs on vertices `1..=n`.
//!
//! Edges are vertex sets stored as bitmasks, so every hypergraph here has at
//! most [`MAX_VERTICES`] vertices. Multi-edges are indistinguishable: a
//! hypergraph is a map from edge to multiplicity.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// A set of vertex labels in `1..=32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge(u32);

impl Edge {
    pub fn new(vertices: &[u32]) -> Result<Self> {
        let mut mask = 0u32;
        for &v in vertices {
            if v == 0 || v as usize > MAX_VERTICES {
                return Err(Error::InvalidHypergraph(format!(
                    "vertex label {v} outside 1..={MAX_VERTICES}"
                )));
            }
            let bit = 1u32 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidHypergraph(format!(
                    "vertex {v} repeated within an edge"
                )));
            }
            mask |= bit;
        }
        Ok(Edge(mask))
    }

    pub const fn from_mask(mask: u32) -> Self {
        Edge(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=32).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn min_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros())
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            Some(v + 1)
        })
    }

    /// Image of the edge under `v -> map[v - 1]`.
    pub fn relabel(self, map: &[u32]) -> Edge {
        Edge(self.vertices().fold(0, |m, v| m | 1 << (map[v as usize - 1] - 1)))
    }
}

// Lexicographic order on sorted vertex lists (for equal-size edges): A < B
// iff the smallest element of the symmetric difference lies in A.
impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.reverse_bits().cmp(&self.0.reverse_bits())
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A k-uniform multi-hypergraph with vertex labels `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiHypergraph {
    k: usize,
    n: usize,
    edges: BTreeMap<Edge, u32>,
}

impl MultiHypergraph {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity k = {k} < 2")));
        }
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: n,
                cap: MAX_VERTICES,
            });
        }
        Ok(Self {
            k,
            n,
            edges: BTreeMap::new(),
        })
    }

    /// Builds from `(vertex list, multiplicity)` pairs.
    pub fn from_edges(k: usize, n: usize, edges: &[(&[u32], u32)]) -> Result<Self> {
        let mut h = Self::new(k, n)?;
        for &(vs, m) in edges {
            h.add_edge(vs, m)?;
        }
        Ok(h)
    }

    /// Builds a simple hypergraph from vertex lists.
    pub fn simple(k: usize, n: usize, edges: &[&[u32]]) -> Result<Self> {
        let mut h = Self::new(k, n)?;
        for vs in edges {
            h.add_edge(vs, 1)?;
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, vertices: &[u32], multiplicity: u32) -> Result<()> {
        let e = Edge::new(vertices)?;
        self.insert(e, multiplicity)
    }

    /// Adds `multiplicity` copies of `e`, accumulating with existing copies.
    pub fn insert(&mut self, e: Edge, multiplicity: u32) -> Result<()> {
        if e.len() != self.k {
            return Err(Error::InvalidHypergraph(format!(
                "edge {e:?} has {} vertices, expected {}",
                e.len(),
                self.k
            )));
        }
        if e.max_vertex().unwrap_or(0) as usize > self.n {
            return Err(Error::InvalidHypergraph(format!(
                "edge {e:?} uses a vertex outside 1..={}",
                self.n
            )));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidHypergraph(format!(
                "edge {e:?} has multiplicity 0"
            )));
        }
        *self.edges.entry(e).or_insert(0) += multiplicity;
        Ok(())
    }

    pub(crate) fn from_map_unchecked(k: usize, n: usize, edges: BTreeMap<Edge, u32>) -> Self {
        debug_assert!(edges.iter().all(|(e, &m)| e.len() == k && m > 0));
        Self { k, n, edges }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct edges with multiplicities, in lexicographic edge order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (Edge, u32)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    pub fn edge_map(&self) -> &BTreeMap<Edge, u32> {
        &self.edges
    }

    pub fn multiplicity(&self, e: Edge) -> u32 {
        self.edges.get(&e).copied().unwrap_or(0)
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total edge count `d`, multiplicities included.
    pub fn total_edges(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&m| m == 1)
    }

    /// Degrees indexed by `v - 1`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for (&e, &m) in &self.edges {
            for v in e.vertices() {
                deg[v as usize - 1] += m;
            }
        }
        deg
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.edges
            .iter()
            .filter(|(e, _)| e.contains(v))
            .map(|(_, &m)| m)
            .sum()
    }

    /// Vertices of positive degree.
    pub fn support(&self) -> u32 {
        self.edges.keys().fold(0, |acc, e| acc | e.mask())
    }

    pub fn flatten(&self) -> Self {
        Self {
            k: self.k,
            n: self.n,
            edges: self.edges.keys().map(|&e| (e, 1)).collect(),
        }
    }

    /// Every vertex degree is divisible by `k`.
    pub fn is_veblen(&self) -> bool {
        let k = self.k as u32;
        self.degrees().iter().all(|&d| d % k == 0)
    }

    /// Edge-connected components, isolated vertices dropped. Each component
    /// keeps the original labels and vertex count `n`.
    pub fn connected_components(&self) -> Vec<Self> {
        let mut groups: Vec<(u32, BTreeMap<Edge, u32>)> = Vec::new();
        for (&e, &m) in &self.edges {
            let mut merged = (e.mask(), BTreeMap::from([(e, m)]));
            let mut i = 0;
            while i < groups.len() {
                if groups[i].0 & merged.0 != 0 {
                    let (mask, edges) = groups.swap_remove(i);
                    merged.0 |= mask;
                    merged.1.extend(edges);
                } else {
                    i += 1;
                }
            }
            groups.push(merged);
        }
        let mut comps: Vec<Self> = groups
            .into_iter()
            .map(|(_, edges)| Self::from_map_unchecked(self.k, self.n, edges))
            .collect();
        comps.sort_by_key(|c| c.support().trailing_zeros());
        comps
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Applies `v -> map[v - 1]`; `map` must be injective into `1..=n_new`.
    pub fn relabel(&self, map: &[u32], n_new: usize) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|(&e, &m)| (e.relabel(map), m))
            .collect();
        Self::from_map_unchecked(self.k, n_new, edges)
    }

    /// Drops isolated vertices, relabelling the rest to `1..=m` in order.
    pub fn compact(&self) -> Self {
        let support = self.support();
        let mut map = vec![0u32; self.n];
        let mut next = 0;
        for v in 1..=self.n as u32 {
            if support & (1 << (v - 1)) != 0 {
                next += 1;
                map[v as usize - 1] = next;
            }
        }
        self.relabel(&map, next as usize)
    }

    /// Vertex-disjoint union; `other` is shifted past `self`'s vertices.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::WrongUniformity {
                expected: self.k,
                got: other.k,
            });
        }
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: n,
                cap: MAX_VERTICES,
            });
        }
        let shift: Vec<u32> = (1..=other.n as u32).map(|v| v + self.n as u32).collect();
        let mut edges = self.edges.clone();
        edges.extend(other.relabel(&shift, n).edges);
        Ok(Self::from_map_unchecked(self.k, n, edges))
    }

    /// Multiplies every multiplicity by `factor`.
    pub fn scaled(&self, factor: u32) -> Self {
        assert!(factor > 0);
        Self {
            k: self.k,
            n: self.n,
            edges: self.edges.iter().map(|(&e, &m)| (e, m * factor)).collect(),
        }
    }

    /// Parses the text format: a `k=<int> n=<int>` header, then one edge per
    /// line as `k` labels with an optional `x<multiplicity>` suffix. `#`
    /// starts a comment. Repeated edge lines accumulate.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Self> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let tokens = tokenize(content);
            let Some(g) = graph.as_mut() else {
                graph = Some(parse_header(&tokens, line_no)?);
                continue;
            };
            let mut vertices = Vec::with_capacity(g.k);
            let mut multiplicity = 1u32;
            for (i, &(col, tok)) in tokens.iter().enumerate() {
                let err = |message: String| Error::Parse {
                    line: line_no,
                    column: col,
                    message,
                };
                if let Some(m) = tok.strip_prefix('x') {
                    if i + 1 != tokens.len() {
                        return Err(err("multiplicity suffix must come last".into()));
                    }
                    multiplicity = m
                        .parse()
                        .ok()
                        .filter(|&m: &u32| m > 0)
                        .ok_or_else(|| err(format!("bad multiplicity `{tok}`")))?;
                } else {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| err(format!("bad vertex label `{tok}`")))?;
                    if v == 0 || v as usize > g.n {
                        return Err(err(format!("vertex {v} outside 1..={}", g.n)));
                    }
                    vertices.push(v);
                }
            }
            let col = tokens[0].0;
            if vertices.len() != g.k {
                return Err(Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("expected {} vertices, found {}", g.k, vertices.len()),
                });
            }
            g.add_edge(&vertices, multiplicity).map_err(|e| Error::Parse {
                line: line_no,
                column: col,
                message: e.to_string(),
            })?;
        }
        graph.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing `k=<int> n=<int>` header".into(),
        })
    }

    /// Writes the text format accepted by [`MultiHypergraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("k={} n={}\n", self.k, self.n);
        for (e, m) in self.edges() {
            let labels: Vec<String> = e.vertices().map(|v| v.to_string()).collect();
            out.push_str(&labels.join(" "));
            if m > 1 {
                out.push_str(&format!(" x{m}"));
            }
            out.push('\n');
        }
        out
    }

    /// Compact notation such as `(123)^3(145)^3`; labels are concatenated,
    /// so it is only unambiguous for `n <= 9`.
    pub fn to_compact(&self) -> String {
        let mut out = String::new();
        for (e, m) in self.edges() {
            out.push('(');
            for v in e.vertices() {
                out.push_str(&v.to_string());
            }
            out.push(')');
            if m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        out
    }

    /// Parses the compact notation (single-digit labels); `n` is the largest
    /// label used.
    pub fn parse_compact(k: usize, text: &str) -> Result<Self> {
        let mut items: Vec<(Vec<u32>, u32)> = Vec::new();
        let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
        let bad = |msg: &str| Error::InvalidHypergraph(format!("compact edge list: {msg}"));
        while let Some(c) = chars.next() {
            if c != '(' {
                return Err(bad("expected `(`"));
            }
            let mut vs = Vec::new();
            loop {
                match chars.next() {
                    Some(')') => break,
                    Some(d) if d.is_ascii_digit() && d != '0' => vs.push(d as u32 - '0' as u32),
                    _ => return Err(bad("expected digit 1-9 or `)`")),
                }
            }
            let mut m = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                m = digits.parse().map_err(|_| bad("bad exponent"))?;
            }
            items.push((vs, m));
        }
        let n = items
            .iter()
            .flat_map(|(vs, _)| vs.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let mut h = Self::new(k, n)?;
        for (vs, m) in &items {
            h.add_edge(vs, *m)?;
        }
        Ok(h)
    }
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_header(tokens: &[(usize, &str)], line: usize) -> Result<MultiHypergraph> {
    let mut k = None;
    let mut n = None;
    for &(column, tok) in tokens {
        let err = |message: String| Error::Parse {
            line,
            column,
            message,
        };
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key=value`, found `{tok}`")))?;
        let value: usize = value
            .parse()
            .map_err(|_| err(format!("bad integer `{value}`")))?;
        match key {
            "k" => k = Some(value),
            "n" => n = Some(value),
            _ => return Err(err(format!("unknown header key `{key}`"))),
        }
    }
    match (k, n) {
        (Some(k), Some(n)) => MultiHypergraph::new(k, n).map_err(|e| Error::Parse {
            line,
            column: 1,
            message: e.to_string(),
        }),
        _ => Err(Error::Parse {
            line,
            column: 1,
            message: "header must define both k and n".into(),
        }),
    }
}

impl fmt::Debug for MultiHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} ", self.k, self.n)?;
        for (e, m) in self.edges() {
            write!(f, "{e:?}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Built-in hosts.
pub mod presets {
    use super::*;

    pub const ROWLING_EDGES: [[u32; 3]; 5] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 5, 6], [3, 5, 7]];

    /// Completion of the Rowling edge list to the Fano plane.
    pub const FANO_EDGES: [[u32; 3]; 7] = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 5, 6],
        [3, 5, 7],
        [2, 4, 7],
        [3, 4, 6],
    ];

    fn from_triples(edges: &[[u32; 3]]) -> MultiHypergraph {
        let mut h = MultiHypergraph::new(3, 7).expect("valid size");
        for e in edges {
            h.add_edge(e, 1).expect("valid preset edge");
        }
        h
    }

    /// The Fano plane with two lines removed.
    pub fn rowling() -> MultiHypergraph {
        from_triples(&ROWLING_EDGES)
    }

    pub fn fano() -> MultiHypergraph {
        from_triples(&FANO_EDGES)
    }

    /// The Fano plane with the line `247` removed.
    pub fn fano_minus_one() -> MultiHypergraph {
        from_triples(&FANO_EDGES[..6])
    }

    /// All `k`-subsets of `[k + 1]`.
    pub fn simplex(k: usize) -> Result<MultiHypergraph> {
        let mut h = MultiHypergraph::new(k, k + 1)?;
        let full = (1u32 << (k + 1)) - 1;
        for v in 0..=k {
            h.insert(Edge::from_mask(full & !(1 << v)), 1)?;
        }
        Ok(h)
    }

    /// One edge on `[k]` with the given multiplicity.
    pub fn edge_power(k: usize, multiplicity: u32) -> Result<MultiHypergraph> {
        let mut h = MultiHypergraph::new(k, k)?;
        h.insert(Edge::from_mask((1u32 << k) - 1), multiplicity)?;
        Ok(h)
    }

    pub fn single_edge(k: usize) -> Result<MultiHypergraph> {
        edge_power(k, 1)
    }

    /// Simple cycle on `len >= 3` vertices, or the 2-cycle (a doubled edge)
    /// for `len == 2`.
    pub fn cycle(len: usize) -> Result<MultiHypergraph> {
        if len == 2 {
            return edge_power(2, 2);
        }
        let mut h = MultiHypergraph::new(2, len)?;
        for v in 1..=len as u32 {
            let w = v % len as u32 + 1;
            h.add_edge(&[v, w], 1)?;
        }
        Ok(h)
    }

    pub fn by_name(name: &str) -> Result<MultiHypergraph> {
        let param = |prefix: &str| -> Option<Result<usize>> {
            name.strip_prefix(prefix).map(|rest| {
                rest.parse().map_err(|_| {
                    Error::InvalidHypergraph(format!("bad parameter in preset `{name}`"))
                })
            })
        };
        match name {
            "rowling" | "fano-minus-2" => Ok(rowling()),
            "fano" => Ok(fano()),
            "fano-minus-1" => Ok(fano_minus_one()),
            _ => {
                if let Some(k) = param("simplex-") {
                    simplex(k?)
                } else if let Some(k) = param("single-edge-") {
                    single_edge(k?)
                } else {
                    Err(Error::InvalidHypergraph(format!("unknown preset `{name}`")))
                }
            }
        }
    }

    pub const NAMES: [&str; 5] = ["rowling", "fano", "fano-minus-1", "simplex-<k>", "single-edge-<k>"];
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn h(k: usize, s: &str) -> MultiHypergraph {
        MultiHypergraph::parse_compact(k, s).unwrap()
    }

    #[test]
    fn edge_order_is_lexicographic() {
        let a = Edge::new(&[1, 2, 5]).unwrap();
        let b = Edge::new(&[1, 3, 4]).unwrap();
        let c = Edge::new(&[2, 3, 4]).unwrap();
        assert!(a < b && b < c);
        assert_eq!(a.vertices().collect::<Vec<_>>(), vec![1, 2, 5]);
        assert_eq!(a.min_vertex(), Some(1));
        assert_eq!(a.max_vertex(), Some(5));
    }

    #[test]
    fn flatten_collapses_multiplicities() {
        assert_eq!(h(3, "(123)^3").flatten(), h(3, "(123)"));
        let g92 = h(3, "(123)^6(145)^3");
        assert_eq!(g92.flatten(), h(3, "(123)(145)"));
        let r = rowling();
        assert_eq!(r.flatten(), r);
    }

    #[test]
    fn veblen_checks() {
        assert!(h(3, "(123)^3").is_veblen());
        assert!(!h(3, "(123)(124)").is_veblen());
        assert!(simplex(3).unwrap().is_veblen());
        assert!(fano().is_veblen());
        assert!(!rowling().is_veblen());
    }

    #[test]
    fn components() {
        let two = MultiHypergraph::from_edges(3, 6, &[(&[1, 2, 3], 3), (&[4, 5, 6], 3)]).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        assert_eq!(h(3, "(123)^3(145)^3").component_count(), 1);
        assert!(MultiHypergraph::new(3, 4).unwrap().connected_components().is_empty());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# Gamma_{9,2}\nk=3 n=5\n1 2 3 x6\n1 4 5 x3 # trailing\n";
        let g = MultiHypergraph::parse(text).unwrap();
        assert_eq!(g, h(3, "(123)^6(145)^3"));
        assert_eq!(MultiHypergraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match MultiHypergraph::parse("k=3 n=4\n1 2 9\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match MultiHypergraph::parse("k=3 n=4\n1 2\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(MultiHypergraph::parse("# nothing\n").is_err());
        assert!(MultiHypergraph::parse("k=3 n=4\n1 2 3 x0\n").is_err());
    }

    #[test]
    fn compact_and_disjoint_union() {
        let e = edge_power(3, 3).unwrap();
        let u = e.disjoint_union(&e).unwrap();
        assert_eq!(u.n(), 6);
        assert_eq!(u.to_compact(), "(123)^3(456)^3");
        let shifted = MultiHypergraph::from_edges(3, 9, &[(&[4, 7, 9], 2)]).unwrap();
        assert_eq!(shifted.compact(), edge_power(3, 2).unwrap());
    }

    #[test]
    fn presets_have_expected_shape() {
        assert_eq!(rowling().distinct_edge_count(), 5);
        assert_eq!(fano().distinct_edge_count(), 7);
        assert_eq!(fano_minus_one().distinct_edge_count(), 6);
        assert_eq!(simplex(4).unwrap().distinct_edge_count(), 5);
        assert_eq!(cycle(2).unwrap().total_edges(), 2);
        assert!(by_name("simplex-5").is_ok());
        assert!(by_name("bogus").is_err());
        // every pair of Fano lines meets in exactly one point
        let lines: Vec<Edge> = fano().edges().map(|(e, _)| e).collect();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                assert_eq!((a.mask() & b.mask()).count_ones(), 1);
            }
        }
    }
}
