//! Exact maximum clique / maximum independent set by branch-and-bound with a
//! greedy-coloring bound, plus a symmetry-reduced search for codes whose
//! pairwise Hamming distances are all divisible by `p`.
//!
//! Only the optimum value is deterministic; the witness returned when several
//! optima exist depends on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{invalid, Error, Result};
use crate::graph::{index_to_tuple, power_vertex_count, Graph};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes before giving up.
    pub node_budget: u64,
    /// 1 runs serially; 0 uses the global rayon pool; otherwise a pool of
    /// this many threads.
    pub threads: usize,
    /// A proven upper bound; reaching it ends the search as optimal.
    pub upper_bound: Option<usize>,
    /// Prune as if a set of this size were already known, so only larger
    /// sets are looked for. A finished search that finds none proves the
    /// optimum is at most this value.
    pub lower_bound: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET, threads: 1, upper_bound: None, lower_bound: None }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        Self { node_budget, ..Self::default() }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn lower_bound(mut self, size: usize) -> Self {
        self.lower_bound = Some(size);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub optimum: usize,
    /// Vertices of the best set found, ascending.
    pub witness: Vec<usize>,
    pub node_count: u64,
    pub proven_optimal: bool,
    /// Proven upper bound on the optimum, if the search established one.
    pub upper_bound: Option<usize>,
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
    target: usize,
    floor: usize,
}

impl Shared {
    fn new(cfg: &SearchConfig) -> Self {
        let floor = cfg.lower_bound.unwrap_or(0);
        Self {
            best: AtomicUsize::new(floor),
            witness: Mutex::new(Vec::new()),
            nodes: AtomicU64::new(0),
            budget: cfg.node_budget,
            aborted: AtomicBool::new(false),
            target: cfg.upper_bound.unwrap_or(usize::MAX),
            floor,
        }
    }

    fn offer(&self, candidate: Vec<usize>) {
        let mut w = self.witness.lock().expect("witness lock poisoned");
        if candidate.len() > w.len() {
            self.best.fetch_max(candidate.len(), Ordering::SeqCst);
            *w = candidate;
        }
    }

    fn stop(&self) -> bool {
        self.aborted.load(Ordering::Relaxed) || self.best.load(Ordering::Relaxed) >= self.target
    }

    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.stop()
    }

    fn finish(self) -> SearchResult {
        let mut witness = self.witness.into_inner().expect("witness lock poisoned");
        witness.sort_unstable();
        let optimum = witness.len();
        let aborted = self.aborted.into_inner();
        let hit_target = optimum >= self.target;
        let upper_bound = match (aborted, hit_target) {
            (_, true) => Some(optimum),
            (false, false) => Some(optimum.max(self.floor)),
            (true, false) => None,
        };
        SearchResult {
            optimum,
            witness,
            node_count: self.nodes.into_inner(),
            proven_optimal: upper_bound == Some(optimum),
            upper_bound,
        }
    }
}

/// One clique subproblem: a graph whose vertices are relabeled so index
/// order is descending degree, with a fixed prefix of already-chosen
/// vertices.
struct CliqueProblem<'a> {
    graph: Graph,
    /// local index -> caller's label
    labels: Vec<usize>,
    prefix: &'a [usize],
}

impl<'a> CliqueProblem<'a> {
    fn new(graph: &Graph, labels: &[usize], prefix: &'a [usize]) -> Self {
        let n = graph.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let mut position = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        let relabeled = graph.relabel(&position).expect("order is a permutation");
        Self { graph: relabeled, labels: order.iter().map(|&v| labels[v]).collect(), prefix }
    }

    fn record(&self, clique: &[usize], shared: &Shared) {
        let mut set: Vec<usize> = self.prefix.to_vec();
        set.extend(clique.iter().map(|&v| self.labels[v]));
        shared.offer(set);
    }

    /// Greedy sequential coloring of `cand`; returns vertices in coloring
    /// order together with the color class number of each.
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.clone();
        let mut order = Vec::with_capacity(cand.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                uncolored.remove(v);
                avail.difference_with(self.graph.row(v));
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&self, clique: &mut Vec<usize>, mut cand: BitSet, shared: &Shared) {
        if !shared.tick() {
            return;
        }
        let (order, colors) = self.color_sort(&cand);
        let base = self.prefix.len();
        for i in (0..order.len()).rev() {
            if base + clique.len() + colors[i] <= shared.best.load(Ordering::Relaxed) || shared.stop() {
                return;
            }
            let v = order[i];
            clique.push(v);
            let mut next = cand.clone();
            next.intersect_with(self.graph.row(v));
            if next.is_empty() {
                if base + clique.len() > shared.best.load(Ordering::Relaxed) {
                    self.record(clique, shared);
                }
            } else {
                self.expand(clique, next, shared);
            }
            clique.pop();
            cand.remove(v);
        }
    }

    /// Like `expand`, but while the chosen words still have a large
    /// stabilizer, branch on one candidate per orbit and drop the whole
    /// orbit afterwards.
    fn expand_orbits(&self, words: &Words, clique: &mut Vec<usize>, cand: BitSet, shared: &Shared) {
        let base = self.prefix.len();
        let members: Vec<usize> = cand.iter().collect();
        let labels: Vec<usize> = members.iter().map(|&v| self.labels[v]).collect();
        let chosen: Vec<usize> = self.prefix.iter().copied().chain(clique.iter().map(|&v| self.labels[v])).collect();
        let orbits = words.orbits(&chosen, &labels);
        if orbits.len() * 2 > members.len() {
            return self.expand(clique, cand, shared);
        }
        if !shared.tick() {
            return;
        }
        let mut rest = cand;
        for orbit in orbits {
            let (_, colors) = self.color_sort(&rest);
            if base + clique.len() + colors.last().copied().unwrap_or(0) <= shared.best.load(Ordering::Relaxed)
                || shared.stop()
            {
                return;
            }
            let v = members[orbit[0]];
            clique.push(v);
            let mut next = rest.clone();
            next.intersect_with(self.graph.row(v));
            if next.is_empty() {
                if base + clique.len() > shared.best.load(Ordering::Relaxed) {
                    self.record(clique, shared);
                }
            } else {
                self.expand_orbits(words, clique, next, shared);
            }
            clique.pop();
            for &i in &orbit {
                rest.remove(members[i]);
            }
        }
    }

    /// Run the search, fanning the top-level branches out over rayon when
    /// `parallel` is set.
    fn solve(&self, shared: &Shared, parallel: bool) {
        let n = self.graph.vertex_count();
        if n == 0 {
            return;
        }
        if !parallel {
            self.expand(&mut Vec::new(), BitSet::full(n), shared);
            return;
        }
        if !shared.tick() {
            return;
        }
        let all = BitSet::full(n);
        let (order, colors) = self.color_sort(&all);
        let base = self.prefix.len();
        (0..order.len()).into_par_iter().rev().for_each(|i| {
            if base + colors[i] <= shared.best.load(Ordering::Relaxed) || shared.stop() {
                return;
            }
            let v = order[i];
            // Branch i may only use vertices that come before v in the order.
            let mut cand = BitSet::new(n);
            for &u in &order[..i] {
                cand.insert(u);
            }
            cand.intersect_with(self.graph.row(v));
            let mut clique = vec![v];
            if cand.is_empty() {
                if base + 1 > shared.best.load(Ordering::Relaxed) {
                    self.record(&clique, shared);
                }
            } else {
                self.expand(&mut clique, cand, shared);
            }
        });
    }
}

fn run_in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Maximum clique of `g`.
pub fn max_clique(g: &Graph, cfg: SearchConfig) -> SearchResult {
    let shared = Shared::new(&cfg);
    if g.vertex_count() > 0 {
        shared.offer(vec![0]);
    }
    let labels: Vec<usize> = (0..g.vertex_count()).collect();
    let problem = CliqueProblem::new(g, &labels, &[]);
    run_in_pool(cfg.threads, || problem.solve(&shared, cfg.threads != 1));
    shared.finish()
}

/// Maximum independent set of `g`, as a maximum clique of the complement.
pub fn max_independent_set(g: &Graph, cfg: SearchConfig) -> SearchResult {
    max_clique(&g.complement(), cfg)
}

fn check_range(g: &Graph, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&v| v >= g.vertex_count()) {
        Some(v) => invalid(format!("vertex {v} out of range")),
        None => Ok(()),
    }
}

/// True iff `set` is pairwise non-adjacent in `g`.
pub fn verify_independent(g: &Graph, set: &[usize]) -> Result<bool> {
    check_range(g, set)?;
    Ok(set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v))))
}

/// True iff `set` is pairwise adjacent in `g`.
pub fn verify_clique(g: &Graph, set: &[usize]) -> Result<bool> {
    check_range(g, set)?;
    Ok(set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v))))
}

/// Which pairwise relation the Hamming-space search maximizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceRelation {
    /// Every pairwise distance is 0 mod p: independent sets of the p-power
    /// of a complete graph.
    Divisible,
    /// No pairwise distance is 0 mod p: cliques of that p-power.
    NonDivisible,
}

impl DistanceRelation {
    fn holds(self, d: usize, p: usize) -> bool {
        match self {
            Self::Divisible => d % p == 0,
            Self::NonDivisible => d % p != 0,
        }
    }
}

/// Digits of every word, so distances avoid repeated division.
struct Words {
    k: usize,
    digits: Vec<u8>,
}

impl Words {
    fn new(q: usize, k: usize, total: usize) -> Self {
        let mut digits = Vec::with_capacity(total * k);
        for i in 0..total {
            digits.extend(index_to_tuple(q, k, i).into_iter().map(|d| d as u8));
        }
        Self { k, digits }
    }

    fn word(&self, a: usize) -> &[u8] {
        &self.digits[a * self.k..(a + 1) * self.k]
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        self.word(a).iter().zip(self.word(b)).filter(|(u, v)| u != v).count()
    }

    /// Orbits of `cands` under the automorphisms of Hamming space that fix
    /// every word of `chosen`, as lists of positions into `cands`.
    ///
    /// Coordinates whose columns split `chosen` the same way can be swapped,
    /// and unused symbols of a coordinate can be permuted freely, so a
    /// candidate's orbit is determined by which chosen word it agrees with
    /// in each coordinate, taken as a multiset within each class of
    /// interchangeable coordinates.
    fn orbits(&self, chosen: &[usize], cands: &[usize]) -> Vec<Vec<usize>> {
        const NONE: u32 = u32::MAX;
        let first_match = |c: usize, symbol: u8| {
            chosen.iter().position(|&w| self.word(w)[c] == symbol).map_or(NONE, |j| j as u32)
        };
        let columns: Vec<Vec<u32>> =
            (0..self.k).map(|c| chosen.iter().map(|&w| first_match(c, self.word(w)[c])).collect()).collect();
        let mut coords: Vec<usize> = (0..self.k).collect();
        coords.sort_by(|&a, &b| columns[a].cmp(&columns[b]));
        let mut groups: std::collections::HashMap<Vec<u32>, Vec<usize>> = std::collections::HashMap::new();
        let mut key = Vec::with_capacity(self.k);
        for (i, &x) in cands.iter().enumerate() {
            key.clear();
            let word = self.word(x);
            let mut start = 0;
            while start < coords.len() {
                let mut end = start + 1;
                while end < coords.len() && columns[coords[end]] == columns[coords[start]] {
                    end += 1;
                }
                let at = key.len();
                key.extend(coords[start..end].iter().map(|&c| first_match(c, word[c])));
                key[at..].sort_unstable();
                start = end;
            }
            groups.entry(key.clone()).or_default().push(i);
        }
        let mut orbits: Vec<Vec<usize>> = groups.into_values().collect();
        orbits.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
        orbits
    }
}

/// Largest set of words in `[0,q)^k` whose pairwise distances all satisfy
/// `relation` modulo `p`. Witnesses are mixed-radix word indices.
///
/// Translations and coordinate/symbol permutations act transitively on
/// words, so one branch per distance `w` is enough: the code contains the
/// zero word and `1^w 0^(k-w)`, and `w` is its minimum distance. Serial
/// runs also branch on one candidate per orbit of the stabilizer of the
/// words chosen so far, until the orbits become small.
pub fn hamming_space_search(
    q: usize,
    k: usize,
    p: usize,
    relation: DistanceRelation,
    cfg: SearchConfig,
) -> Result<SearchResult> {
    if q < 2 || q > 256 || k == 0 || p < 2 {
        return invalid("need 2 <= q <= 256, k >= 1, p >= 2");
    }
    let total = power_vertex_count(q, k)
        .filter(|&t| t <= crate::graph::DEFAULT_MAX_VERTICES as u128)
        .ok_or(Error::SizeCap { vertices: power_vertex_count(q, k).unwrap_or(u128::MAX), cap: crate::graph::DEFAULT_MAX_VERTICES })?
        as usize;
    let shared = Shared::new(&cfg);
    shared.offer(vec![0]);
    let words = Words::new(q, k, total);

    let branch = |w: usize| {
        if shared.stop() {
            return;
        }
        // e_w: first w coordinates are 1 (most significant first).
        let ew = crate::graph::tuple_to_index(q, &(0..k).map(|i| (i < w) as usize).collect::<Vec<_>>());
        let prefix = [0, ew];
        if 2 > shared.best.load(Ordering::Relaxed) {
            shared.offer(prefix.to_vec());
        }
        let ok = |d: usize| d >= w && relation.holds(d, p);
        let cands: Vec<usize> = (1..total)
            .filter(|&x| x != ew && ok(words.distance(0, x)) && ok(words.distance(ew, x)))
            .collect();
        if cands.is_empty() || prefix.len() + cands.len() <= shared.best.load(Ordering::Relaxed) {
            return;
        }
        let sub = Graph::from_fn(cands.len(), |i, j| ok(words.distance(cands[i], cands[j])));
        let problem = CliqueProblem::new(&sub, &cands, &prefix);
        if cfg.threads == 1 {
            problem.expand_orbits(&words, &mut Vec::new(), BitSet::full(cands.len()), &shared);
        } else {
            problem.solve(&shared, true);
        }
    };

    let weights: Vec<usize> = (1..=k).filter(|&w| relation.holds(w, p)).collect();
    run_in_pool(cfg.threads, || {
        if cfg.threads == 1 {
            weights.iter().for_each(|&w| branch(w));
        } else {
            weights.par_iter().for_each(|&w| branch(w));
        }
    });
    Ok(shared.finish())
}

/// Maximum code in `[0,q)^k` with all pairwise distances divisible by `p`;
/// equals the independence number of the k-th p-power of `K_q`.
///
/// The Delsarte LP bound is used as a stopping target: a code that reaches
/// it is proven optimal without exhausting the tree.
pub fn divisible_code_search(q: usize, k: usize, p: usize, mut cfg: SearchConfig) -> Result<SearchResult> {
    if q < 2 || k == 0 || p < 2 {
        return invalid("need q >= 2, k >= 1, p >= 2");
    }
    let allowed: Vec<usize> = (1..=k).filter(|d| d % p == 0).collect();
    let lp = crate::delsarte::lp_bound(q, k, &allowed)?;
    let lp_floor = crate::exact::floor(&lp);
    let lp_floor = usize::try_from(lp_floor).unwrap_or(usize::MAX);
    cfg.upper_bound = Some(cfg.upper_bound.map_or(lp_floor, |b| b.min(lp_floor)));
    hamming_space_search(q, k, p, DistanceRelation::Divisible, cfg)
}

/// Decode a witness of [`hamming_space_search`] into words.
pub fn witness_words(q: usize, k: usize, witness: &[usize]) -> Vec<Vec<usize>> {
    witness.iter().map(|&i| index_to_tuple(q, k, i)).collect()
}
