//! Distance distributions, the Delsarte inequalities, dual certificates in
//! the Krawtchouk basis and an exact LP bound for codes whose pairwise
//! distances are restricted to a given set.

pub mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use crate::code::Code;
use crate::error::{invalid, CertificateViolation, Error, Result};
use crate::exact;
use crate::krawtchouk::{kraw_unchecked, KrawtchoukTable};

/// `B_d` = average number of codewords at distance `d` from a codeword.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceDistribution {
    #[serde(serialize_with = "exact::serialize_vec")]
    pub b: Vec<BigRational>,
    pub size: usize,
}

impl DistanceDistribution {
    pub fn length(&self) -> usize {
        self.b.len() - 1
    }

    pub fn total(&self) -> BigRational {
        self.b.iter().sum()
    }

    /// Distances `d >= 1` with `B_d > 0`.
    pub fn support(&self) -> Vec<usize> {
        (1..self.b.len()).filter(|&d| self.b[d].is_positive()).collect()
    }
}

pub fn distance_distribution(code: &Code) -> Result<DistanceDistribution> {
    if code.is_empty() {
        return invalid("distance distribution of an empty code");
    }
    let size = BigInt::from(code.len());
    let b = code
        .distance_counts()
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), size.clone()))
        .collect();
    Ok(DistanceDistribution { b, size: code.len() })
}

fn krawtchouk_sums(q: usize, b: &[BigRational]) -> Vec<BigRational> {
    let k = b.len() - 1;
    (0..=k)
        .map(|t| {
            b.iter()
                .enumerate()
                .filter(|(_, bi)| !bi.is_zero())
                .map(|(i, bi)| bi * BigRational::from_integer(kraw_unchecked(k, q, t, i)))
                .sum()
        })
        .collect()
}

/// `sum_i B_i K_t(i)` for `t = 0..=k`. Every entry is nonnegative for a
/// genuine code. The empty code yields all zeros.
pub fn check_delsarte_inequalities(code: &Code) -> Vec<BigRational> {
    match distance_distribution(code) {
        Ok(dist) => krawtchouk_sums(code.alphabet(), &dist.b),
        Err(_) => vec![BigRational::zero(); code.length() + 1],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MacWilliamsVector {
    #[serde(serialize_with = "exact::serialize_vec")]
    pub b: Vec<BigRational>,
}

impl MacWilliamsVector {
    pub fn is_nonnegative(&self) -> bool {
        self.b.iter().all(|v| !v.is_negative())
    }
}

/// `B'_t = (1/|C|) sum_i K_t(i) B_i`.
pub fn macwilliams(dist: &DistanceDistribution, q: usize) -> Result<MacWilliamsVector> {
    if q < 2 || dist.size == 0 {
        return invalid("macwilliams needs q >= 2 and a nonempty code");
    }
    let size = exact::from_int(dist.size);
    let b = krawtchouk_sums(q, &dist.b).into_iter().map(|v| v / &size).collect();
    Ok(MacWilliamsVector { b })
}

/// `P(x) = sum_t alpha_t K_t(x)` together with the distances a code is
/// allowed to use. Serialized as
/// `{"alpha": ["num/den", ...], "allowed": [d, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePolynomial {
    #[serde(serialize_with = "exact::serialize_vec", deserialize_with = "exact::deserialize_vec")]
    pub alpha: Vec<BigRational>,
    pub allowed: Vec<usize>,
}

impl CertificatePolynomial {
    pub fn new(alpha: Vec<BigRational>, allowed: Vec<usize>) -> Self {
        Self { alpha, allowed }
    }

    pub fn length(&self) -> usize {
        self.alpha.len().saturating_sub(1)
    }

    pub fn eval(&self, q: usize, x: usize) -> BigRational {
        let k = self.length();
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(t, a)| a * BigRational::from_integer(kraw_unchecked(k, q, t, x)))
            .sum()
    }

    /// Positivity of the coefficients and `P(d) <= 0` on the allowed set.
    pub fn validate(&self, q: usize, k: usize) -> std::result::Result<(), CertificateViolation> {
        if self.alpha.len() != k + 1 {
            return Err(CertificateViolation::WrongLength { expected: k + 1, found: self.alpha.len() });
        }
        if !self.alpha[0].is_positive() {
            return Err(CertificateViolation::NonPositiveConstant);
        }
        if let Some(index) = (1..=k).find(|&t| self.alpha[t].is_negative()) {
            return Err(CertificateViolation::NegativeCoefficient { index });
        }
        for &d in &self.allowed {
            if d == 0 || d > k {
                return Err(CertificateViolation::DistanceOutOfRange { distance: d });
            }
            let value = self.eval(q, d);
            if value.is_positive() {
                return Err(CertificateViolation::PositiveOnAllowed { distance: d, value: exact::to_string(&value) });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for CertificatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(t, a)| format!("{a}*K{t}"))
            .collect();
        write!(f, "{} on {:?}", terms.join(" + "), self.allowed)
    }
}

/// `P(0)/alpha_0`, after checking the certificate is valid for length `k`
/// codes over `q` symbols.
pub fn certificate_bound(cert: &CertificatePolynomial, q: usize, k: usize) -> Result<BigRational> {
    if q < 2 {
        return invalid("alphabet size must be >= 2");
    }
    cert.validate(q, k).map_err(Error::InvalidCertificate)?;
    Ok(cert.eval(q, 0) / &cert.alpha[0])
}

fn multiples_of_three(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| d % 3 == 0).collect()
}

fn two_thirds_sqrt(k: usize) -> BigRational {
    BigRational::new(BigInt::from(2) * BigInt::from(3).pow(k as u32 / 2), BigInt::from(3))
}

/// `(2/3) 3^{k/2} + sum_{t != 0 mod 3} K_t` for ternary codes with all
/// distances divisible by 3. Needs `k = 0 mod 4`.
pub fn builtin_p(k: usize) -> Result<CertificatePolynomial> {
    if k == 0 || k % 4 != 0 {
        return invalid(format!("P needs k divisible by 4, got {k}"));
    }
    let mut alpha: Vec<BigRational> =
        (0..=k).map(|t| if t % 3 != 0 { BigRational::one() } else { BigRational::zero() }).collect();
    alpha[0] = two_thirds_sqrt(k);
    Ok(CertificatePolynomial::new(alpha, multiples_of_three(k)))
}

/// `(2/3) 3^{k/2} + sum_{t = 0 mod 3} K_t`, with `K_0` folded into the
/// constant. Needs `k = 2 mod 4`.
pub fn builtin_q(k: usize) -> Result<CertificatePolynomial> {
    if k % 4 != 2 {
        return invalid(format!("Q needs k = 2 mod 4, got {k}"));
    }
    let mut alpha: Vec<BigRational> =
        (0..=k).map(|t| if t % 3 == 0 { BigRational::one() } else { BigRational::zero() }).collect();
    alpha[0] = two_thirds_sqrt(k) + BigRational::one();
    Ok(CertificatePolynomial::new(alpha, multiples_of_three(k)))
}

/// Optimal primal and dual solutions of the Delsarte LP.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpBoundReport {
    pub q: usize,
    pub k: usize,
    #[serde(serialize_with = "exact::serialize")]
    pub bound: BigRational,
    /// An optimal `B_0..B_k`.
    #[serde(serialize_with = "exact::serialize_vec")]
    pub distribution: Vec<BigRational>,
    /// Built from the optimal duals; its `certificate_bound` equals `bound`.
    pub certificate: CertificatePolynomial,
    pub pivots: usize,
}

fn normalize_allowed(k: usize, allowed: &[usize]) -> Result<Vec<usize>> {
    let mut a = allowed.to_vec();
    a.sort_unstable();
    a.dedup();
    if let Some(&d) = a.iter().find(|&&d| d == 0 || d > k) {
        return invalid(format!("allowed distance {d} outside 1..={k}"));
    }
    Ok(a)
}

/// Solve `max sum_i B_i` over distributions supported on `{0} + allowed`
/// satisfying the Delsarte inequalities.
pub fn lp_solve(q: usize, k: usize, allowed: &[usize]) -> Result<LpBoundReport> {
    if q < 2 || k == 0 {
        return invalid("lp bound needs q >= 2 and k >= 1");
    }
    let allowed = normalize_allowed(k, allowed)?;
    let table = KrawtchoukTable::new(k, q)?;
    let rat = |v: &BigInt| BigRational::from_integer(v.clone());
    // Row t: -sum_{i in A} K_t(i) B_i <= K_t(0). The t = 0 row is implied.
    let a: Vec<Vec<BigRational>> =
        (1..=k).map(|t| allowed.iter().map(|&i| -rat(table.get(t, i))).collect()).collect();
    let b: Vec<BigRational> = (1..=k).map(|t| rat(table.get(t, 0))).collect();
    let c = vec![BigRational::one(); allowed.len()];
    let sol = simplex::maximize(&c, &a, &b)?;

    let mut distribution = vec![BigRational::zero(); k + 1];
    distribution[0] = BigRational::one();
    for (&i, x) in allowed.iter().zip(&sol.x) {
        distribution[i] = x.clone();
    }
    let mut alpha = vec![BigRational::one()];
    alpha.extend(sol.duals);
    Ok(LpBoundReport {
        q,
        k,
        bound: BigRational::one() + sol.value,
        distribution,
        certificate: CertificatePolynomial::new(alpha, allowed),
        pivots: sol.pivots,
    })
}

pub fn lp_bound(q: usize, k: usize, allowed: &[usize]) -> Result<BigRational> {
    Ok(lp_solve(q, k, allowed)?.bound)
}

/// Distances in `1..=k` divisible by `p`.
pub fn divisible_distances(k: usize, p: usize) -> Vec<usize> {
    (1..=k).filter(|d| d % p == 0).collect()
}
