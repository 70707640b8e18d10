//! Rank bounds for cliques and independent sets of p-powers, the
//! polynomial-dimension bound, and the Ramsey subgraphs they give.
//!
//! A vertex representation `g` with `g(u).g(v) = 0` on edges and `1`
//! otherwise turns tuples into concatenated vectors `w_u` whose inner
//! products are `k - #{adjacent coordinates}`. Applying a polynomial that
//! vanishes off the diagonal entrywise to the Gram matrix of a clique (or of
//! a suitable independent set) gives a full-rank matrix, and the rank of an
//! entrywise polynomial image is bounded by a binomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::graph::{adjacent_coordinate_count, Graph, PowerParams};
use crate::krawtchouk::binomial;
use crate::linalg::{is_prime, rank_bareiss, rank_mod_p};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    /// `Z_p` for a prime `p`.
    Prime(usize),
    Rational,
}

impl Field {
    fn check(self) -> Result<()> {
        match self {
            Self::Prime(p) if !is_prime(p) => invalid(format!("{p} is not prime")),
            Self::Prime(p) if p >= 1 << 31 => invalid("prime too large"),
            _ => Ok(()),
        }
    }

    fn reduce(self, x: BigRational) -> BigRational {
        match self {
            Self::Prime(p) => {
                assert!(x.is_integer(), "Z_p values are integers");
                let p = BigInt::from(p);
                BigRational::from_integer(((x.to_integer() % &p) + &p) % &p)
            }
            Self::Rational => x,
        }
    }
}

/// One vector per vertex; over `Z_p` all entries lie in `0..p`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorRepresentation {
    pub field: Field,
    pub vectors: Vec<Vec<BigRational>>,
    /// The lower-triangular matrix whose rows start each vector.
    pub lower: Vec<Vec<BigRational>>,
}

impl VectorRepresentation {
    pub fn dimension(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn dot(&self, u: usize, v: usize) -> BigRational {
        let s = self.vectors[u].iter().zip(&self.vectors[v]).map(|(a, b)| a * b).sum();
        self.field.reduce(s)
    }

    /// Dot products are 0 on edges and 1 elsewhere, including `u = v`.
    pub fn satisfies(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        self.vectors.len() == n
            && (0..n).all(|u| (0..n).all(|v| self.dot(u, v) == if g.has_edge(u, v) { BigRational::zero() } else { BigRational::one() }))
    }

    /// `w_u = g(u_1) ++ ... ++ g(u_k)`.
    pub fn concat(&self, tuple: &[usize]) -> Vec<BigRational> {
        tuple.iter().flat_map(|&c| self.vectors[c].iter().cloned()).collect()
    }

    /// `z = sum_u g(u)`, reduced into the field.
    pub fn z(&self) -> Vec<BigRational> {
        (0..self.dimension())
            .map(|i| self.field.reduce(self.vectors.iter().map(|v| &v[i]).sum()))
            .collect()
    }

    /// The `k - 1` vectors `0.. ++ z ++ (-z) ++ ..0` that every `w_u`
    /// is orthogonal to when the graph is regular.
    pub fn orthogonal_block_vectors(&self, k: usize) -> Vec<Vec<BigRational>> {
        let z = self.z();
        let m = self.dimension();
        (0..k.saturating_sub(1))
            .map(|i| {
                let mut v = vec![BigRational::zero(); k * m];
                for (j, zj) in z.iter().enumerate() {
                    v[i * m + j] = zj.clone();
                    v[(i + 1) * m + j] = self.field.reduce(-zj.clone());
                }
                v
            })
            .collect()
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Build the lower-triangular matrix row by row so that distinct rows have
/// the required dot products, then fix each self dot product with extra
/// coordinates. Over `Z_p` vertex `u` gets a private block of
/// `(1 - <row_u, row_u>) mod p` ones. Over the rationals a single private
/// coordinate `sqrt(1 - <row_u, row_u>)` is used, which is refused unless
/// that is a rational square.
pub fn build_representation(g: &Graph, field: Field) -> Result<VectorRepresentation> {
    field.check()?;
    let n = g.vertex_count();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 0..n {
        for i in 0..k {
            let s: BigRational = (0..i).map(|j| &m[k][j] * &m[i][j]).sum();
            let target = if g.has_edge(k, i) { BigRational::zero() } else { BigRational::one() };
            m[k][i] = field.reduce(target - s);
        }
        m[k][k] = BigRational::one();
    }
    let selfdots: Vec<BigRational> =
        m.iter().map(|row| field.reduce(row.iter().map(|x| x * x).sum())).collect();

    let extra: Vec<Vec<BigRational>> = match field {
        Field::Prime(_) => selfdots
            .iter()
            .map(|s| {
                let deficit = field.reduce(BigRational::one() - s).to_integer().to_usize().expect("below p");
                vec![BigRational::one(); deficit]
            })
            .collect(),
        Field::Rational => selfdots
            .iter()
            .enumerate()
            .map(|(u, s)| {
                let deficit = BigRational::one() - s;
                if deficit.is_zero() {
                    return Ok(Vec::new());
                }
                rational_sqrt(&deficit).map(|r| vec![r]).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "vertex {u} needs sqrt({}) over the rationals; use the Gram path",
                        exact::to_string(&deficit)
                    ))
                })
            })
            .collect::<Result<_>>()?,
    };
    let total_extra: usize = extra.iter().map(Vec::len).sum();
    let mut offset = n;
    let vectors = m
        .iter()
        .zip(&extra)
        .map(|(row, ext)| {
            let mut v = row.clone();
            v.resize(n + total_extra, BigRational::zero());
            for (i, x) in ext.iter().enumerate() {
                v[offset + i] = x.clone();
            }
            offset += ext.len();
            v
        })
        .collect();
    Ok(VectorRepresentation { field, vectors, lower: m })
}

/// Gram matrix of the `w_u` for tuples `u` in an index set, entries
/// `k - #{i : u_i v_i in E}` (reduced into `0..p` over `Z_p`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub field: Field,
    pub k: usize,
    #[serde(skip)]
    pub entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                rank_mod_p(self.entries.iter().map(|r| r.iter().map(|&v| v as u64).collect()).collect(), p as u64)
            }
            Field::Rational => {
                rank_bareiss(self.entries.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            }
        }
    }
}

fn reduce_int(field: Field, x: i64) -> i64 {
    match field {
        Field::Prime(p) => x.rem_euclid(p as i64),
        Field::Rational => x,
    }
}

pub fn gram_from_power(g: &Graph, k: usize, set: &[Vec<usize>], field: Field) -> Result<GramMatrix> {
    field.check()?;
    if let Some(t) = set.iter().find(|t| t.len() != k) {
        return invalid(format!("tuple {t:?} does not have length {k}"));
    }
    let k_int = i64::try_from(k).map_err(|_| Error::InvalidInput("k too large".into()))?;
    let mut entries = vec![vec![0i64; set.len()]; set.len()];
    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate().skip(i) {
            let c = adjacent_coordinate_count(g, u, v)? as i64;
            let x = reduce_int(field, k_int - c);
            entries[i][j] = x;
            entries[j][i] = x;
        }
    }
    Ok(GramMatrix { field, k, entries })
}

/// The polynomials applied entrywise to Gram matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntrywisePolynomial {
    /// `prod_{j in Z_p, j != k mod p} (j - x)` over `Z_p`, for cliques.
    F1 { p: usize, k: usize },
    /// `prod_{t=1}^{floor(k/p)} (k - tp - x)` over the rationals, for sets
    /// independent in both the p-power and the strong power of the
    /// complement.
    F2 { p: usize, k: usize },
}

impl EntrywisePolynomial {
    pub fn degree(&self) -> usize {
        match *self {
            Self::F1 { p, .. } => p - 1,
            Self::F2 { p, k } => k / p,
        }
    }

    pub fn field(&self) -> Field {
        match *self {
            Self::F1 { p, .. } => Field::Prime(p),
            Self::F2 { .. } => Field::Rational,
        }
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        match *self {
            Self::F1 { p, k } => {
                let v = (0..p).filter(|&j| j != k % p).fold(BigInt::one(), |acc, j| acc * (BigInt::from(j) - &x));
                let p = BigInt::from(p);
                ((v % &p) + &p) % &p
            }
            Self::F2 { p, k } => {
                (1..=k / p).fold(BigInt::one(), |acc, t| acc * (BigInt::from(k) - BigInt::from(t * p) - &x))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub size: usize,
    pub rank_after: usize,
    pub full_rank: bool,
}

/// Large prime used to certify full rank of integer matrices cheaply.
const CHECK_PRIME: u64 = (1 << 61) - 1;

/// Rank of the entrywise image of `gram` under `poly`. Over the rationals
/// the image is first reduced mod a large prime: full rank there implies
/// full rank over Q, and only otherwise is exact elimination run.
pub fn rank_certificate(gram: &GramMatrix, poly: EntrywisePolynomial) -> Result<RankCertificate> {
    if gram.field != poly.field() {
        return Err(Error::FieldMismatch(format!("Gram over {:?}, polynomial over {:?}", gram.field, poly.field())));
    }
    let size = gram.size();
    // Entries take at most k + 1 distinct values, so evaluate once per value.
    let mut cache = std::collections::HashMap::new();
    let mut image = |x: i64| cache.entry(x).or_insert_with(|| poly.eval(x)).clone();
    let rank_after = match gram.field {
        Field::Prime(p) => {
            let rows = gram
                .entries
                .iter()
                .map(|r| r.iter().map(|&x| image(x).to_u64().expect("reduced mod p")).collect())
                .collect();
            rank_mod_p(rows, p as u64)
        }
        Field::Rational => {
            let m = BigInt::from(CHECK_PRIME);
            let rows = gram
                .entries
                .iter()
                .map(|r| r.iter().map(|&x| ((image(x) % &m + &m) % &m).to_u64().expect("reduced")).collect())
                .collect();
            match rank_mod_p(rows, CHECK_PRIME) {
                r if r == size => r,
                _ => rank_bareiss(gram.entries.iter().map(|r| r.iter().map(|&x| image(x)).collect()).collect()),
            }
        }
    };
    Ok(RankCertificate { size, rank_after, full_rank: rank_after == size })
}

/// The binomial rank bounds, which need a prime modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBounds {
    /// `C(kn + p - 1, p - 1)`.
    #[serde(serialize_with = "exact::serialize_int")]
    pub omega: BigInt,
    /// `C(kn + floor(k/p), floor(k/p))`.
    #[serde(serialize_with = "exact::serialize_int")]
    pub alpha: BigInt,
    /// `C(k(n-1) + p, p - 1)`, valid for regular graphs.
    #[serde(serialize_with = "exact::serialize_int")]
    pub regular_omega: BigInt,
    /// `C(k(n-1) + floor(k/p) + 1, floor(k/p))`, valid for regular graphs.
    #[serde(serialize_with = "exact::serialize_int")]
    pub regular_alpha: BigInt,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticBound {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub regular: bool,
    /// `H(1/p)`.
    pub entropy_exponent: f64,
    /// `2^{H(1/p)} (n-1)^{1/p}`.
    pub entropy_bound: f64,
    /// `sum_{r <= floor(k/p)} C(k,r) (n-1)^r`.
    #[serde(serialize_with = "exact::serialize_int")]
    pub dimension_count: BigInt,
    /// `None` when `p` is composite.
    pub rank: Option<RankBounds>,
}

impl AsymptoticBound {
    /// Best applicable clique bound.
    pub fn omega_bound(&self) -> Option<&BigInt> {
        let r = self.rank.as_ref()?;
        Some(if self.regular { (&r.omega).min(&r.regular_omega) } else { &r.omega })
    }

    /// Best applicable bound for sets independent in both powers.
    pub fn alpha_bound(&self) -> Option<&BigInt> {
        let r = self.rank.as_ref()?;
        Some(if self.regular { (&r.alpha).min(&r.regular_alpha) } else { &r.alpha })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bound serializes")
    }
}

pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `2^{H(1/p)} (n-1)^{1/p}`.
pub fn entropy_bound(n: usize, p: usize) -> f64 {
    2f64.powf(binary_entropy(1.0 / p as f64)) * ((n - 1) as f64).powf(1.0 / p as f64)
}

pub fn dimension_count(n: usize, k: usize, p: usize) -> BigInt {
    (0..=k / p).map(|r| binomial(k, r) * BigInt::from(n - 1).pow(r as u32)).sum()
}

pub fn bounds(n: usize, k: usize, p: usize, regular: bool) -> Result<AsymptoticBound> {
    if n < 2 || k == 0 || p < 2 {
        return invalid("bounds need n >= 2, k >= 1, p >= 2");
    }
    let f = k / p;
    let rank = is_prime(p).then(|| RankBounds {
        omega: binomial(k * n + p - 1, p - 1),
        alpha: binomial(k * n + f, f),
        regular_omega: binomial(k * (n - 1) + p, p - 1),
        regular_alpha: binomial(k * (n - 1) + f + 1, f),
    });
    Ok(AsymptoticBound {
        n,
        k,
        p,
        regular,
        entropy_exponent: binary_entropy(1.0 / p as f64),
        entropy_bound: entropy_bound(n, p),
        dimension_count: dimension_count(n, k, p),
        rank,
    })
}

/// Independent in `G^{k_(p)}` and in the strong power of the complement:
/// every two tuples have a positive number of adjacent coordinates, and that
/// number is divisible by `p`.
pub fn independent_in_both(g: &Graph, k: usize, p: usize, set: &[Vec<usize>]) -> Result<bool> {
    PowerParams::new(k, p)?;
    for (i, u) in set.iter().enumerate() {
        if u.len() != k {
            return invalid(format!("tuple {u:?} does not have length {k}"));
        }
        for v in &set[i + 1..] {
            let c = adjacent_coordinate_count(g, u, v)?;
            if c == 0 || c % p != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which set the Ramsey subgraph is built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseySeed {
    /// A clique `S` of `G`; the subgraph lives on `S^k`.
    Clique(Vec<usize>),
    /// An independent set `S` of the `ell`-th strong power of the
    /// complement, given as `ell`-tuples; the subgraph lives on
    /// `S^{k/ell}`.
    StrongComplement { ell: usize, set: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct RamseySubgraph {
    pub graph: Graph,
    /// Tuple of base vertices for each vertex of `graph`.
    pub tuples: Vec<Vec<usize>>,
    pub bounds: AsymptoticBound,
}

fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

/// Induced subgraph of `G^{k_(p)}` on `S^k` (or `S^{k/ell}`). Any two of
/// its vertices share an adjacent coordinate, so its independent sets are
/// independent in both powers and obey the rank bounds.
pub fn ramsey_subgraph(g: &Graph, k: usize, p: usize, seed: &RamseySeed, cap: usize) -> Result<RamseySubgraph> {
    let params = PowerParams::new(k, p)?;
    let n = g.vertex_count();
    let (blocks, reps): (Vec<Vec<usize>>, usize) = match seed {
        RamseySeed::Clique(s) => {
            if s.is_empty() || s.iter().any(|&v| v >= n) || !is_clique(g, s) {
                return invalid("seed is not a nonempty clique of G");
            }
            (s.iter().map(|&v| vec![v]).collect(), k)
        }
        RamseySeed::StrongComplement { ell, set } => {
            if *ell == 0 || k % ell != 0 {
                return invalid(format!("ell = {ell} must divide k = {k}"));
            }
            if set.is_empty() || set.iter().any(|t| t.len() != *ell || t.iter().any(|&v| v >= n)) {
                return invalid(format!("seed must be a nonempty set of {ell}-tuples over the vertices"));
            }
            for (i, u) in set.iter().enumerate() {
                for v in &set[i + 1..] {
                    if u == v || adjacent_coordinate_count(g, u, v)? == 0 {
                        return invalid("seed is not independent in the strong power of the complement");
                    }
                }
            }
            (set.clone(), k / ell)
        }
    };
    let count = (blocks.len() as u128).checked_pow(reps as u32).filter(|&c| c <= cap as u128);
    let Some(count) = count else {
        return Err(Error::SizeCap { vertices: (blocks.len() as u128).saturating_pow(reps as u32), cap });
    };
    let tuples: Vec<Vec<usize>> = (0..count as usize)
        .map(|idx| {
            crate::graph::index_to_tuple(blocks.len(), reps, idx)
                .into_iter()
                .flat_map(|b| blocks[b].iter().copied())
                .collect()
        })
        .collect();
    let graph = Graph::from_fn(tuples.len(), |a, b| {
        adjacent_coordinate_count(g, &tuples[a], &tuples[b]).expect("validated tuples") % params.p != 0
    });
    let bounds = bounds(n.max(2), k, p, g.regularity().is_some())?;
    Ok(RamseySubgraph { graph, tuples, bounds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub k: usize,
    #[serde(serialize_with = "exact::serialize_int")]
    pub omega_bound: BigInt,
    #[serde(serialize_with = "exact::serialize_int")]
    pub alpha_bound: BigInt,
}

/// Clique and independence rank bounds for `K_n^{k_(p)}`, `k = 1..=k_max`,
/// and the first `k` at which the independence bound overtakes the clique
/// bound. Below it the clique bound dominates the maximum of the two.
pub fn optimal_k_scan(n: usize, p: usize, k_max: usize) -> Result<(Vec<ScanRow>, Option<usize>)> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let rows: Vec<ScanRow> = (1..=k_max)
        .map(|k| {
            let b = bounds(n, k, p, false)?.rank.expect("p is prime");
            Ok(ScanRow { k, omega_bound: b.omega, alpha_bound: b.alpha })
        })
        .collect::<Result<_>>()?;
    let crossover = rows.iter().find(|r| r.alpha_bound > r.omega_bound).map(|r| r.k);
    Ok((rows, crossover))
}

/// `(p^2 - 1)`-subsets of `[p^3]` in lexicographic order, adjacent when the
/// intersection size is `-1 mod p`.
pub fn fw_variant_graph(p: usize, cap: usize) -> Result<(Graph, Vec<Vec<usize>>)> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let (ground, size) = (p * p * p, p * p - 1);
    let count = binomial(ground, size);
    match count.to_usize() {
        Some(c) if c <= cap => {}
        _ => return Err(Error::SizeCap { vertices: count.to_u128().unwrap_or(u128::MAX), cap }),
    }
    let mut subsets = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        subsets.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < ground - size + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let masks: Vec<u128> = subsets.iter().map(|s| s.iter().fold(0u128, |m, &x| m | 1 << x)).collect();
    let g = Graph::from_fn(masks.len(), |a, b| (masks[a] & masks[b]).count_ones() as usize % p == p - 1);
    Ok((g, subsets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::index_to_tuple;
    use crate::search::{max_clique, max_independent_set, SearchConfig};

    fn r(n: i64) -> BigRational {
        exact::from_int(n)
    }

    #[test]
    fn representations() {
        let k4 = build_representation(&Graph::complete(4), Field::Rational).unwrap();
        assert_eq!(k4.dimension(), 4);
        assert!(k4.satisfies(&Graph::complete(4)));
        for (i, v) in k4.vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { r(1) } else { r(0) });
            }
        }
        let c5 = Graph::cycle(5);
        assert!(build_representation(&c5, Field::Prime(3)).unwrap().satisfies(&c5));
        let e3 = Graph::empty(3);
        assert!(build_representation(&e3, Field::Prime(5)).unwrap().satisfies(&e3));
        assert!(build_representation(&e3, Field::Rational).is_err());
        assert!(build_representation(&c5, Field::Prime(4)).is_err());
    }

    #[test]
    fn block_vectors_are_orthogonal() {
        for (g, p) in [(Graph::cycle(5), 3), (Graph::petersen(), 2), (Graph::complete(4), 5)] {
            let rep = build_representation(&g, Field::Prime(p)).unwrap();
            let k = 3;
            let blocks = rep.orthogonal_block_vectors(k);
            assert_eq!(blocks.len(), k - 1);
            let n = g.vertex_count();
            for idx in 0..n.pow(k as u32) {
                let w = rep.concat(&index_to_tuple(n, k, idx));
                for b in &blocks {
                    let d: BigRational = w.iter().zip(b).map(|(x, y)| x * y).sum();
                    assert!(Field::Prime(p).reduce(d).is_zero());
                }
            }
        }
    }

    #[test]
    fn gram_entries() {
        let k3 = Graph::complete(3);
        let set: Vec<Vec<usize>> = (0..81).map(|i| index_to_tuple(3, 4, i)).collect();
        let gram = gram_from_power(&k3, 4, &set, Field::Rational).unwrap();
        assert!((0..81).all(|i| gram.entries[i][i] == 4));
        let rep = build_representation(&k3, Field::Prime(3)).unwrap();
        let gp = gram_from_power(&k3, 4, &set[..10], Field::Prime(3)).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let (a, b) = (rep.concat(&set[i]), rep.concat(&set[j]));
                let d = Field::Prime(3).reduce(a.iter().zip(&b).map(|(x, y)| x * y).sum());
                assert_eq!(d.to_integer(), BigInt::from(gp.entries[i][j]));
            }
        }
    }

    #[test]
    fn polynomials() {
        let f1 = EntrywisePolynomial::F1 { p: 3, k: 4 };
        assert_eq!(f1.degree(), 2);
        assert_ne!(f1.eval(1), BigInt::zero());
        assert_eq!(f1.eval(0), BigInt::zero());
        assert_eq!(f1.eval(2), BigInt::zero());
        let f2 = EntrywisePolynomial::F2 { p: 3, k: 7 };
        assert_eq!(f2.degree(), 2);
        assert_eq!(f2.eval(4), BigInt::zero());
        assert_eq!(f2.eval(1), BigInt::zero());
        assert_eq!(f2.eval(7), BigInt::from(18));
    }

    #[test]
    fn clique_rank_certificate() {
        let k3 = Graph::complete(3);
        let power = crate::graph::p_power(&k3, PowerParams::new(4, 3).unwrap()).unwrap();
        let clique = max_clique(&power, SearchConfig::default());
        let set: Vec<Vec<usize>> = clique.witness.iter().map(|&i| index_to_tuple(3, 4, i)).collect();
        let gram = gram_from_power(&k3, 4, &set, Field::Prime(3)).unwrap();
        let cert = rank_certificate(&gram, EntrywisePolynomial::F1 { p: 3, k: 4 }).unwrap();
        assert!(cert.full_rank);
        assert_eq!(cert.rank_after, clique.optimum);
        assert!(rank_certificate(&gram, EntrywisePolynomial::F2 { p: 3, k: 4 }).is_err());
        let single = gram_from_power(&k3, 4, &set[..1], Field::Prime(3)).unwrap();
        assert_eq!(rank_certificate(&single, EntrywisePolynomial::F1 { p: 3, k: 4 }).unwrap().rank_after, 1);
    }

    #[test]
    fn affine_lines_full_rank_over_rationals() {
        let lines = crate::constructions::affine_line_code(3).unwrap();
        let set = lines.code.words().to_vec();
        let k3 = Graph::complete(3);
        assert!(independent_in_both(&k3, 4, 3, &set).unwrap());
        let gram = gram_from_power(&k3, 4, &set, Field::Rational).unwrap();
        let cert = rank_certificate(&gram, EntrywisePolynomial::F2 { p: 3, k: 4 }).unwrap();
        assert_eq!(cert.rank_after, 9);
    }

    #[test]
    fn bound_values() {
        let b = bounds(3, 4, 3, false).unwrap();
        assert_eq!(b.rank.as_ref().unwrap().omega, BigInt::from(91));
        assert_eq!(b.rank.as_ref().unwrap().alpha, BigInt::from(13));
        assert!((entropy_bound(3, 3) - 3.0 / 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((entropy_bound(3, 3) - 2.381).abs() < 1e-3);
        let b = bounds(2, 2, 2, true).unwrap();
        assert_eq!(b.rank.as_ref().unwrap().regular_omega, BigInt::from(4));
        assert!(bounds(3, 4, 4, false).unwrap().rank.is_none());
        assert_eq!(dimension_count(3, 4, 3), BigInt::from(1 + 4 * 2));
        let json = bounds(3, 4, 3, true).unwrap().to_json();
        assert!(json.contains(r#""omega":"91""#));
    }

    #[test]
    fn independent_in_both_examples() {
        let p3 = Graph::path(3);
        assert!(independent_in_both(&p3, 2, 2, &[vec![0, 1]]).unwrap());
        // Diagonal pair (0,0),(2,2): vertices 0 and 2 are not adjacent in P3.
        assert!(!independent_in_both(&p3, 2, 2, &[vec![0, 0], vec![2, 2]]).unwrap());
        assert!(independent_in_both(&p3, 2, 2, &[vec![0, 0], vec![1, 1]]).unwrap());
    }

    #[test]
    fn ramsey_k3() {
        let k3 = Graph::complete(3);
        let sub = ramsey_subgraph(&k3, 4, 3, &RamseySeed::Clique(vec![0, 1, 2]), 1 << 20).unwrap();
        assert_eq!(sub.graph.vertex_count(), 81);
        assert_eq!(sub.bounds.rank.as_ref().unwrap().omega, BigInt::from(91));
        assert_eq!(sub.bounds.rank.as_ref().unwrap().alpha, BigInt::from(13));
        let alpha = max_independent_set(&sub.graph, SearchConfig::default());
        assert_eq!(alpha.optimum, 9);
        let tuples: Vec<Vec<usize>> = alpha.witness.iter().map(|&i| sub.tuples[i].clone()).collect();
        assert!(independent_in_both(&k3, 4, 3, &tuples).unwrap());
        let one = ramsey_subgraph(&k3, 4, 3, &RamseySeed::Clique(vec![1]), 1 << 20).unwrap();
        assert_eq!(one.graph.vertex_count(), 1);
        assert!(ramsey_subgraph(&Graph::path(3), 2, 2, &RamseySeed::Clique(vec![0, 2]), 1 << 20).is_err());
    }

    #[test]
    fn ramsey_strong_complement_seed() {
        let c5 = Graph::cycle(5);
        // Pairs of C5 vertices that pairwise share an adjacent coordinate.
        let seed = RamseySeed::StrongComplement { ell: 2, set: vec![vec![0, 0], vec![1, 2], vec![2, 4], vec![3, 1], vec![4, 3]] };
        let sub = ramsey_subgraph(&c5, 4, 2, &seed, 1 << 20).unwrap();
        assert_eq!(sub.graph.vertex_count(), 25);
        let bad = RamseySeed::StrongComplement { ell: 2, set: vec![vec![0, 0], vec![0, 2]] };
        assert!(ramsey_subgraph(&c5, 4, 2, &bad, 1 << 20).is_err());
        let wrong_ell = RamseySeed::StrongComplement { ell: 3, set: vec![vec![0, 0, 0]] };
        assert!(ramsey_subgraph(&c5, 4, 2, &wrong_ell, 1 << 20).is_err());
    }

    #[test]
    fn optimal_k() {
        assert_eq!(optimal_k_scan(2, 2, 10).unwrap().1, Some(4));
        assert_eq!(optimal_k_scan(3, 3, 20).unwrap().1, Some(9));
        assert!(optimal_k_scan(4, 4, 5).is_err());
    }

    #[test]
    fn fw_graph_shape() {
        let (g, subsets) = fw_variant_graph(2, 1 << 20).unwrap();
        assert_eq!(g.vertex_count(), 56);
        assert_eq!(subsets[0], vec![0, 1, 2]);
        assert_eq!(subsets[55], vec![5, 6, 7]);
        // A 3-set meets 3 * C(5,2) = 30 others in exactly one point.
        assert_eq!(g.regularity(), Some(30));
        assert!(fw_variant_graph(3, 1 << 20).is_err());
    }
}
