//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the search, spectral or Krawtchouk code of the
//! crate under test.

#![allow(dead_code)]

use nalgebra::DMatrix;

/// Adjacency matrix of a graph given by its edge predicate.
pub type Adj = Vec<Vec<bool>>;

pub fn adj_of(g: &ppower_core::Graph) -> Adj {
    let n = g.vertex_count();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn complete(n: usize) -> Adj {
    (0..n).map(|u| (0..n).map(|v| u != v).collect()).collect()
}

pub fn cycle(n: usize) -> Adj {
    (0..n).map(|u| (0..n).map(|v| (u + 1) % n == v || (v + 1) % n == u).collect()).collect()
}

/// Petersen graph as the Kneser graph K(5,2).
pub fn petersen() -> Adj {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    pairs
        .iter()
        .map(|&(a, b)| pairs.iter().map(|&(c, d)| a != c && a != d && b != c && b != d).collect())
        .collect()
}

pub fn tuple(n: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// The p-power built straight from its definition.
pub fn p_power(base: &Adj, k: usize, p: usize) -> Adj {
    let n = base.len();
    let total = n.pow(k as u32);
    let tuples: Vec<Vec<usize>> = (0..total).map(|i| tuple(n, k, i)).collect();
    tuples
        .iter()
        .map(|u| {
            tuples
                .iter()
                .map(|v| u.iter().zip(v).filter(|(&a, &b)| base[a][b]).count() % p != 0)
                .collect()
        })
        .collect()
}

/// Strong power: distinct tuples equal or adjacent in every coordinate.
pub fn strong_power(base: &Adj, k: usize) -> Adj {
    let n = base.len();
    let total = n.pow(k as u32);
    let tuples: Vec<Vec<usize>> = (0..total).map(|i| tuple(n, k, i)).collect();
    tuples
        .iter()
        .map(|u| tuples.iter().map(|v| u != v && u.iter().zip(v).all(|(&a, &b)| a == b || base[a][b])).collect())
        .collect()
}

pub fn complement(a: &Adj) -> Adj {
    a.iter().enumerate().map(|(u, r)| r.iter().enumerate().map(|(v, &e)| u != v && !e).collect()).collect()
}

pub fn degree(a: &Adj, u: usize) -> usize {
    a[u].iter().filter(|&&e| e).count()
}

pub fn is_independent(a: &Adj, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !a[u][v]))
}

pub fn is_clique(a: &Adj, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| a[u][v]))
}

/// Independence number by plain branching: some vertex of the closed
/// neighborhood of a minimum-degree vertex lies in every maximal
/// independent set. Bitsets are `Vec<u64>`, so any size works, but it is
/// only fast on small or sparse graphs.
pub fn alpha(a: &Adj) -> usize {
    let n = a.len();
    let words = n.div_ceil(64);
    let nbr: Vec<Vec<u64>> = a
        .iter()
        .map(|r| {
            let mut b = vec![0u64; words];
            for (v, &e) in r.iter().enumerate() {
                if e {
                    b[v / 64] |= 1 << (v % 64);
                }
            }
            b
        })
        .collect();
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut best = 0;
    mis(&nbr, all, 0, &mut best);
    best
}

fn count(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

fn members(s: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in s.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

fn mis(nbr: &[Vec<u64>], cand: Vec<u64>, size: usize, best: &mut usize) {
    let c = count(&cand);
    if c == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + c <= *best {
        return;
    }
    let verts = members(&cand);
    let inside = |u: usize| count(&nbr[u].iter().zip(&cand).map(|(a, b)| a & b).collect::<Vec<_>>());
    let v = *verts.iter().min_by_key(|&&u| inside(u)).expect("nonempty");
    let mut branch: Vec<usize> = members(&nbr[v].iter().zip(&cand).map(|(a, b)| a & b).collect::<Vec<_>>());
    branch.push(v);
    for u in branch {
        let next: Vec<u64> = cand
            .iter()
            .zip(&nbr[u])
            .enumerate()
            .map(|(i, (c, nb))| {
                let own = if u / 64 == i { 1u64 << (u % 64) } else { 0 };
                c & !nb & !own
            })
            .collect();
        mis(nbr, next, size + 1, best);
    }
}

pub fn omega(a: &Adj) -> usize {
    alpha(&complement(a))
}

/// Eigenvalues of a symmetric 0/1 matrix, ascending.
pub fn eigenvalues(a: &Adj) -> Vec<f64> {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| if a[i][j] { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    ev
}

pub fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `K_t(s) = sum_j (-1)^j (q-1)^(t-j) C(s, j) C(k-s, t-j)`.
pub fn kraw(k: usize, q: usize, t: usize, s: usize) -> i128 {
    (0..=t)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * (q as i128 - 1).pow((t - j) as u32) * binom(s, j) * binom(k - s, t - j)
        })
        .sum()
}

pub fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Distance distribution times `|C|`: the number of ordered pairs at each
/// distance.
pub fn pair_counts(words: &[Vec<usize>], k: usize) -> Vec<i128> {
    let mut c = vec![0i128; k + 1];
    for a in words {
        for b in words {
            c[hamming(a, b)] += 1;
        }
    }
    c
}
