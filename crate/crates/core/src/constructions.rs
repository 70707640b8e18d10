//! Explicit independent sets in p-powers of complete graphs, i.e. codes
//! whose pairwise distances are all divisible by `p`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::code::Code;
use crate::error::{invalid, Result};
use crate::linalg::{is_prime, rank_mod_p};

/// A code claimed independent in `K_q^{k_(p)}`, with a tag naming the
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionWitness {
    pub code: Code,
    pub p: usize,
    pub provenance: String,
}

impl ConstructionWitness {
    pub fn k(&self) -> usize {
        self.code.length()
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Independence in `K_q^{k_(p)}`: every distance is `0 mod p`.
    pub fn verify(&self) -> bool {
        self.code.all_distances_divisible(self.p)
    }

    pub fn to_text(&self) -> String {
        let comment = format!("{} q={} k={} p={} size={}", self.provenance, self.code.alphabet(), self.k(), self.p, self.len());
        self.code.to_text(Some(&comment))
    }
}

/// `{(u, ..., u)}` of length `p`: any two words are adjacent in all `p`
/// coordinates or none.
pub fn diagonal_set(n: usize, p: usize) -> Result<ConstructionWitness> {
    if n == 0 || p < 2 {
        return invalid("diagonal set needs n >= 1 and p >= 2");
    }
    let words = (0..n).map(|u| vec![u; p]).collect();
    Ok(ConstructionWitness { code: Code::new(n.max(2), p, words)?, p, provenance: format!("diagonal(n={n})") })
}

/// The `p^2` non-vertical lines of `GF(p)^2`, as words
/// `(a, a*0 + b, a*1 + b, ..., a*(p-1) + b)` of length `p + 1`. Two lines
/// differ in exactly `p` coordinates.
pub fn affine_line_code(p: usize) -> Result<ConstructionWitness> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let mut words = Vec::with_capacity(p * p);
    for a in 0..p {
        for b in 0..p {
            let mut w = Vec::with_capacity(p + 1);
            w.push(a);
            w.extend((0..p).map(|x| (a * x + b) % p));
            words.push(w);
        }
    }
    Ok(ConstructionWitness { code: Code::new(p, p + 1, words)?, p, provenance: format!("affine-lines(p={p})") })
}

fn quadratic_character(x: usize, q: usize) -> i8 {
    if x % q == 0 {
        0
    } else if (1..q).any(|y| y * y % q == x % q) {
        1
    } else {
        -1
    }
}

/// Paley type I Hadamard matrix of order 12 over GF(11), normalized so the
/// first row and column are all `+1`.
pub fn hadamard_matrix() -> Vec<Vec<i8>> {
    const Q: usize = 11;
    let n = Q + 1;
    // H = I + S with S = [[0, 1^T], [-1, Q]], Q_ij = chi(j - i).
    let mut h = vec![vec![0i8; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let s = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => quadratic_character((j + Q - i) % Q, Q),
            };
            *v = s + i8::from(i == j);
        }
    }
    for row in h.iter_mut() {
        if row[0] < 0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
    h
}

/// The 12 rows of [`hadamard_matrix`] with `+1 -> 0`, `-1 -> 1`, and their
/// complements. Distinct rows agree in exactly 6 places, so every distance
/// is 6 or 12.
pub fn hadamard_paley_code() -> ConstructionWitness {
    let rows: Vec<Vec<usize>> =
        hadamard_matrix().iter().map(|r| r.iter().map(|&v| usize::from(v < 0)).collect()).collect();
    let complements: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|&b| 1 - b).collect()).collect();
    let words = rows.into_iter().chain(complements).collect();
    ConstructionWitness {
        code: Code::new(2, 12, words).expect("Hadamard rows are distinct"),
        p: 3,
        provenance: "hadamard-paley(order=12)".into(),
    }
}

/// All concatenations `a ++ b`. Distances add, so divisibility by `p`
/// is preserved.
pub fn product_concat(a: &ConstructionWitness, b: &ConstructionWitness) -> Result<ConstructionWitness> {
    if a.code.alphabet() != b.code.alphabet() || a.p != b.p {
        return invalid("product needs the same alphabet and modulus");
    }
    let mut words = Vec::with_capacity(a.len() * b.len());
    for x in a.code.words() {
        for y in b.code.words() {
            words.push(x.iter().chain(y).copied().collect());
        }
    }
    Ok(ConstructionWitness {
        code: Code::new(a.code.alphabet(), a.k() + b.k(), words)?,
        p: a.p,
        provenance: format!("product({} x {})", a.provenance, b.provenance),
    })
}

/// A single word of length `k`, the unit for [`product_concat`].
pub fn singleton(q: usize, k: usize, p: usize) -> Result<ConstructionWitness> {
    Ok(ConstructionWitness { code: Code::new(q, k, vec![vec![0; k]])?, p, provenance: format!("singleton(k={k})") })
}

/// Outcome of reducing a ternary divisible code to a self-orthogonal set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub k: usize,
    pub input_size: usize,
    /// Sizes of the classes `sum x_i^2 = c mod 3`, `c = 0, 1, 2`.
    pub class_sizes: [usize; 3],
    pub chosen_class: usize,
    /// Member subtracted from the chosen class.
    pub translate: Vec<usize>,
    pub reduced: Vec<Vec<usize>>,
    pub pairwise_orthogonal: bool,
    pub span_dimension: usize,
    /// `3 * 3^{floor(k/2)}`.
    pub implied_bound: BigInt,
}

impl ReductionReport {
    pub fn span_within_half(&self) -> bool {
        self.span_dimension <= self.k / 2
    }
}

fn dot3(x: &[usize], y: &[usize]) -> usize {
    x.iter().zip(y).map(|(a, b)| a * b).sum::<usize>() % 3
}

/// Split an independent set of `K_3^{k_(3)}` by `sum x_i^2 mod 3`, keep the
/// largest class and translate it by one of its members. The result is
/// pairwise orthogonal over GF(3), so it spans a self-orthogonal subspace.
pub fn self_orthogonal_reduction(code: &Code) -> Result<ReductionReport> {
    if code.alphabet() != 3 {
        return invalid("reduction needs a code over Z_3");
    }
    if code.is_empty() {
        return invalid("reduction needs a nonempty code");
    }
    if !code.all_distances_divisible(3) {
        return invalid("input is not independent in the 3-power of K_3");
    }
    let k = code.length();
    let mut classes: [Vec<&Vec<usize>>; 3] = Default::default();
    for w in code.words() {
        classes[dot3(w, w)].push(w);
    }
    let class_sizes = [classes[0].len(), classes[1].len(), classes[2].len()];
    let chosen_class = (0..3).max_by_key(|&c| (class_sizes[c], std::cmp::Reverse(c))).expect("three classes");
    let members = &classes[chosen_class];
    let translate = members[0].clone();
    let reduced: Vec<Vec<usize>> =
        members.iter().map(|w| w.iter().zip(&translate).map(|(a, z)| (a + 3 - z) % 3).collect()).collect();
    let pairwise_orthogonal = reduced.iter().all(|x| reduced.iter().all(|y| dot3(x, y) == 0));
    let rows = reduced.iter().map(|w| w.iter().map(|&v| v as u64).collect()).collect();
    let span_dimension = rank_mod_p(rows, 3);
    Ok(ReductionReport {
        k,
        input_size: code.len(),
        class_sizes,
        chosen_class,
        translate,
        reduced,
        pairwise_orthogonal,
        span_dimension,
        implied_bound: BigInt::from(3).pow(k as u32 / 2 + 1),
    })
}
