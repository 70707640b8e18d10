//! Finite simple graphs, p-powers and strong powers.
//!
//! Vertices are dense indices `0..n`. A vertex of a k-th power is a k-tuple
//! over `0..n`; tuples map to indices in mixed radix with the first
//! coordinate most significant, so `(u_1, ..., u_k)` has index
//! `((u_1 * n + u_2) * n + ...) * n + u_k`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bitset::{iter_words, words_for, BitSet};
use crate::error::{invalid, Error, Result};

/// Default limit on the vertex count of an explicitly materialized power.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;

/// A finite simple graph stored as symmetric bitset rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Self { n, stride, rows: vec![0; stride * n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for {n} vertices"));
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Build from an adjacency predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |u, v| v == u + 1)
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("static edge list")
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + (v >> 6)] |= 1 << (v & 63);
        self.rows[v * self.stride + (u >> 6)] |= 1 << (u & 63);
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let stride = words_for(n);
        debug_assert_eq!(rows.len(), stride * n);
        Self { n, stride, rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u * self.stride + (v >> 6)] >> (v & 63)) & 1 == 1
    }

    /// Neighbor bitset of `u` as raw words.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.stride..(u + 1) * self.stride]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_words(self.row(u))
    }

    pub fn neighbor_set(&self, u: usize) -> BitSet {
        BitSet::from_words(self.row(u).to_vec(), self.n)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// A graph is nontrivial when it has at least one edge.
    pub fn is_nontrivial(&self) -> bool {
        self.rows.iter().any(|&w| w != 0)
    }

    /// Common degree if every vertex has the same degree.
    pub fn regularity(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<_> = (0..self.n).map(|u| self.degree(u)).collect();
        ds.sort_unstable();
        ds
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Induced subgraph; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.n) {
            return invalid(format!("vertex {bad} out of range"));
        }
        Ok(Self::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j])))
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return invalid("relabeling is not a permutation");
        }
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Serialize in the text format accepted by [`Graph::from_str`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Text format: first non-comment line is `n`, then one `u v` edge per line.
/// `#` starts a comment. Duplicate and reversed edges are tolerated.
impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(parse_err("expected vertex count".into()));
                    }
                    let count: usize = fields[0].parse().map_err(|e| parse_err(format!("{e}")))?;
                    if count == 0 {
                        return Err(parse_err("graph needs at least one vertex".into()));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    if fields.len() != 2 {
                        return Err(parse_err("expected `u v`".into()));
                    }
                    let u: usize = fields[0].parse().map_err(|e| parse_err(format!("{e}")))?;
                    let v: usize = fields[1].parse().map_err(|e| parse_err(format!("{e}")))?;
                    if u == v {
                        return Err(parse_err(format!("self-loop at {u}")));
                    }
                    if u >= count || v >= count {
                        return Err(parse_err(format!("vertex out of range 0..{count}")));
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "empty graph file".into() })?;
        Graph::from_edges(n, edges)
    }
}

/// Power parameters: exponent `k >= 1` and modulus `p >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PowerParams {
    pub k: usize,
    pub p: usize,
}

impl PowerParams {
    pub fn new(k: usize, p: usize) -> Result<Self> {
        if k == 0 {
            return invalid("power k must be >= 1");
        }
        if p < 2 {
            return invalid("modulus p must be >= 2");
        }
        Ok(Self { k, p })
    }
}

/// `n^k` if it fits in `u128`.
pub fn power_vertex_count(n: usize, k: usize) -> Option<u128> {
    (n as u128).checked_pow(u32::try_from(k).ok()?)
}

fn check_cap(n: usize, k: usize, cap: usize) -> Result<usize> {
    match power_vertex_count(n, k) {
        Some(total) if total <= cap as u128 => Ok(total as usize),
        Some(total) => Err(Error::SizeCap { vertices: total, cap }),
        None => Err(Error::SizeCap { vertices: u128::MAX, cap }),
    }
}

/// Index of a tuple under the mixed-radix bijection.
pub fn tuple_to_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &c| acc * n + c)
}

/// Inverse of [`tuple_to_index`] for tuples of length `k`.
pub fn index_to_tuple(n: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

fn validate_pair(g: &Graph, u: &[usize], v: &[usize]) -> Result<()> {
    if u.len() != v.len() {
        return invalid(format!("tuple lengths differ: {} vs {}", u.len(), v.len()));
    }
    if let Some(&c) = u.iter().chain(v).find(|&&c| c >= g.n) {
        return invalid(format!("coordinate {c} out of range 0..{}", g.n));
    }
    Ok(())
}

/// Number of coordinates `i` with `u_i v_i` an edge of `g`.
pub fn adjacent_coordinate_count(g: &Graph, u: &[usize], v: &[usize]) -> Result<usize> {
    validate_pair(g, u, v)?;
    Ok(u.iter().zip(v).filter(|(&a, &b)| g.has_edge(a, b)).count())
}

/// Adjacency in the k-th p-power: the adjacent-coordinate count is not 0 mod p.
pub fn p_power_adjacent(g: &Graph, params: PowerParams, u: &[usize], v: &[usize]) -> Result<bool> {
    if u.len() != params.k {
        return invalid(format!("tuple length {} but k = {}", u.len(), params.k));
    }
    Ok(adjacent_coordinate_count(g, u, v)? % params.p != 0)
}

/// For a fixed tuple `u`, the adjacent-coordinate count against every tuple
/// in index order.
fn counts_from(g: &Graph, u: &[usize]) -> Vec<u32> {
    let n = g.n;
    let mut counts = vec![0u32];
    for &c in u {
        let mut next = Vec::with_capacity(counts.len() * n);
        for &x in &counts {
            next.extend((0..n).map(|b| x + g.has_edge(c, b) as u32));
        }
        counts = next;
    }
    counts
}

/// Explicit p-power with the default vertex cap.
pub fn p_power(g: &Graph, params: PowerParams) -> Result<Graph> {
    p_power_capped(g, params, DEFAULT_MAX_VERTICES)
}

pub fn p_power_capped(g: &Graph, params: PowerParams, cap: usize) -> Result<Graph> {
    let total = check_cap(g.n, params.k, cap)?;
    let stride = words_for(total);
    let mut rows = vec![0u64; stride * total];
    let p = params.p as u32;
    rows.chunks_mut(stride).enumerate().for_each(|(ui, row)| {
        let u = index_to_tuple(g.n, params.k, ui);
        for (vi, c) in counts_from(g, &u).into_iter().enumerate() {
            if c % p != 0 {
                row[vi >> 6] |= 1 << (vi & 63);
            }
        }
    });
    Ok(Graph::from_rows(total, rows))
}

/// Explicit strong (AND) power with the default vertex cap.
pub fn strong_power(g: &Graph, k: usize) -> Result<Graph> {
    strong_power_capped(g, k, DEFAULT_MAX_VERTICES)
}

pub fn strong_power_capped(g: &Graph, k: usize, cap: usize) -> Result<Graph> {
    if k == 0 {
        return invalid("power k must be >= 1");
    }
    let total = check_cap(g.n, k, cap)?;
    let n = g.n;
    let stride = words_for(total);
    let mut rows = vec![0u64; stride * total];
    rows.chunks_mut(stride).enumerate().for_each(|(ui, row)| {
        let u = index_to_tuple(n, k, ui);
        let mut ok = vec![true];
        for &c in &u {
            let mut next = Vec::with_capacity(ok.len() * n);
            for &x in &ok {
                next.extend((0..n).map(|b| x && (b == c || g.has_edge(c, b))));
            }
            ok = next;
        }
        for (vi, good) in ok.into_iter().enumerate() {
            if good && vi != ui {
                row[vi >> 6] |= 1 << (vi & 63);
            }
        }
    });
    Ok(Graph::from_rows(total, rows))
}

/// Adjacency oracle for a p-power that is never materialized.
#[derive(Clone, Copy, Debug)]
pub struct PowerOracle<'a> {
    base: &'a Graph,
    params: PowerParams,
}

impl<'a> PowerOracle<'a> {
    pub fn new(base: &'a Graph, params: PowerParams) -> Self {
        Self { base, params }
    }

    pub fn params(&self) -> PowerParams {
        self.params
    }

    pub fn vertex_count(&self) -> Option<u128> {
        power_vertex_count(self.base.n, self.params.k)
    }

    pub fn adjacent(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        p_power_adjacent(self.base, self.params, u, v)
    }

    /// Adjacency by mixed-radix index; indices must be below `n^k`.
    pub fn adjacent_index(&self, u: u128, v: u128) -> bool {
        let n = self.base.n as u128;
        let (mut a, mut b) = (u, v);
        let mut count = 0;
        for _ in 0..self.params.k {
            if self.base.has_edge((a % n) as usize, (b % n) as usize) {
                count += 1;
            }
            a /= n;
            b /= n;
        }
        count % self.params.p != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_counts() {
        let k3 = Graph::complete(3);
        assert_eq!(adjacent_coordinate_count(&k3, &[0, 0, 0, 0], &[0, 0, 0, 0]).unwrap(), 0);
        assert_eq!(adjacent_coordinate_count(&k3, &[0, 0, 0, 0], &[1, 1, 1, 0]).unwrap(), 3);
        let k2 = Graph::complete(2);
        assert_eq!(adjacent_coordinate_count(&k2, &[0, 1], &[1, 0]).unwrap(), 2);
    }

    #[test]
    fn coordinate_count_errors() {
        let k3 = Graph::complete(3);
        assert!(matches!(adjacent_coordinate_count(&k3, &[0, 0], &[0]), Err(Error::InvalidInput(_))));
        assert!(matches!(adjacent_coordinate_count(&k3, &[0, 3], &[0, 0]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn p_power_adjacency_examples() {
        let k3 = Graph::complete(3);
        let params = PowerParams::new(4, 3).unwrap();
        assert!(!p_power_adjacent(&k3, params, &[0, 0, 0, 0], &[1, 1, 1, 0]).unwrap());
        assert!(p_power_adjacent(&k3, params, &[0, 0, 0, 0], &[1, 0, 0, 0]).unwrap());
        // Diagonal tuples in the p-th power have 0 or p adjacent coordinates.
        let c5 = Graph::cycle(5);
        let params = PowerParams::new(3, 3).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert!(!p_power_adjacent(&c5, params, &[a; 3], &[b; 3]).unwrap());
            }
        }
    }

    #[test]
    fn power_params_reject_degenerate() {
        assert!(PowerParams::new(0, 3).is_err());
        assert!(PowerParams::new(2, 1).is_err());
    }

    #[test]
    fn small_powers() {
        let k3 = Graph::complete(3);
        assert_eq!(p_power(&k3, PowerParams::new(1, 2).unwrap()).unwrap(), k3);

        let g = p_power(&k3, PowerParams::new(4, 3).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 81);
        assert_eq!(g.regularity(), Some(48));

        let k2 = Graph::complete(2);
        let g = p_power(&k2, PowerParams::new(2, 2).unwrap()).unwrap();
        // 00=0, 01=1, 10=2, 11=3
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 3) && g.has_edge(2, 3));
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 2));
    }

    #[test]
    fn cap_is_enforced() {
        let k3 = Graph::complete(3);
        let err = p_power_capped(&k3, PowerParams::new(5, 3).unwrap(), 100).unwrap_err();
        assert!(matches!(err, Error::SizeCap { vertices: 243, cap: 100 }));
        assert!(strong_power_capped(&k3, 5, 100).is_err());
    }

    #[test]
    fn strong_power_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(strong_power(&c5, 1).unwrap(), c5);
        let sq = strong_power(&c5, 2).unwrap();
        assert_eq!(sq.vertex_count(), 25);
        // C5 strong square is 8-regular.
        assert_eq!(sq.regularity(), Some(8));
        let e = Graph::complete(4).complement();
        assert_eq!(strong_power(&e, 2).unwrap().edge_count(), 0);
    }

    #[test]
    fn complement_and_regularity() {
        assert_eq!(Graph::complete(3).complement().edge_count(), 0);
        let pet = Graph::petersen();
        assert_eq!(pet.complement().complement(), pet);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.complement().degree_sequence(), c5.degree_sequence());
        assert_eq!(Graph::complete(6).regularity(), Some(5));
        assert_eq!(Graph::path(3).regularity(), None);
        assert_eq!(c5.regularity(), Some(2));
        assert_eq!(pet.regularity(), Some(3));
    }

    #[test]
    fn text_format() {
        let g: Graph = "# triangle\n3\n0 1\n1 2 # edge\n2 0\n1 0\n".parse().unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(g.to_text().parse::<Graph>().unwrap(), g);
        assert!(matches!("3\n1 1\n".parse::<Graph>(), Err(Error::Parse { line: 2, .. })));
        assert!("3\n0 3\n".parse::<Graph>().is_err());
        assert!("".parse::<Graph>().is_err());
        assert!("3\n0 1 2\n".parse::<Graph>().is_err());
    }

    #[test]
    fn tuple_bijection() {
        assert_eq!(tuple_to_index(3, &[1, 0, 2]), 11);
        assert_eq!(index_to_tuple(3, 3, 11), vec![1, 0, 2]);
    }

    #[test]
    fn oracle_matches_explicit() {
        let c4 = Graph::cycle(4);
        let params = PowerParams::new(3, 2).unwrap();
        let g = p_power(&c4, params).unwrap();
        let oracle = PowerOracle::new(&c4, params);
        for u in 0..64 {
            for v in 0..64 {
                assert_eq!(g.has_edge(u, v), oracle.adjacent_index(u as u128, v as u128));
            }
        }
    }
}
