//! Spectra of p-powers of regular graphs, Hoffman's ratio bound and the
//! `max{rho_1, rho_2}` bound on the growth rate of independence numbers.
//!
//! With `B_t = J + (w^t - 1) A` for a primitive p-th root `w`, the power's
//! adjacency matrix is `(1 - 1/p) J - (1/p) sum_{t=1}^{p-1} B_t^{(x)k}`, so
//! every eigenvalue comes from choosing, at each coordinate, either the
//! all-ones vector or a non-principal eigenvector of the base.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::krawtchouk::{binomial, kraw_unchecked};

/// Eigenvalues of a d-regular base graph, sorted descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaseSpectralData {
    pub n: usize,
    pub d: usize,
    pub eigenvalues: Vec<f64>,
    /// `max(lambda_2, |lambda_n|)`.
    pub lambda: f64,
}

/// Dense symmetric eigendecomposition of the adjacency matrix, descending.
pub fn adjacency_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

impl BaseSpectralData {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let d = g.regularity().ok_or_else(|| Error::InvalidInput("base graph is not regular".into()))?;
        let n = g.vertex_count();
        if n == 0 {
            return invalid("empty base graph");
        }
        let mut eigenvalues = adjacency_eigenvalues(g);
        // The top eigenvalue of a d-regular graph is exactly d.
        eigenvalues[0] = d as f64;
        let data = Self::from_sorted(n, d, eigenvalues);
        let scale = (n * d.max(1)) as f64;
        let sum: f64 = data.eigenvalues.iter().sum();
        let sq: f64 = data.eigenvalues.iter().map(|x| x * x).sum();
        if sum.abs() > 1e-8 * scale || (sq - (n * d) as f64).abs() > 1e-8 * scale {
            return Err(Error::DegenerateSpectrum(format!("trace check failed: sum {sum}, sum of squares {sq}")));
        }
        Ok(data)
    }

    /// `K_n`: `n - 1` once and `-1` with multiplicity `n - 1`.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("K_0 has no spectrum");
        }
        let mut ev = vec![-1.0; n];
        ev[0] = (n - 1) as f64;
        Ok(Self::from_sorted(n, n - 1, ev))
    }

    fn from_sorted(n: usize, d: usize, eigenvalues: Vec<f64>) -> Self {
        let lambda = if n < 2 { 0.0 } else { eigenvalues[1].max(eigenvalues[n - 1].abs()) };
        Self { n, d, eigenvalues, lambda }
    }

    /// Distinct non-principal eigenvalues with multiplicities.
    fn nonprincipal_classes(&self) -> Vec<(f64, u128)> {
        let tol = 1e-9 * (self.n as f64).max(1.0);
        let mut out: Vec<(f64, u128)> = Vec::new();
        for &v in &self.eigenvalues[1..] {
            match out.last_mut() {
                Some((last, m)) if (*last - v).abs() <= tol => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(BigInt),
    Approx(f64),
}

impl Eigenvalue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            Self::Approx(v) => *v,
        }
    }
}

impl std::fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exact(v) => write!(f, "{v}"),
            Self::Approx(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Eigenvalue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: Eigenvalue,
    pub multiplicity: u128,
}

/// Eigenvalue multiset of `G^{k_(p)}`, sorted by descending value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSpectrum {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl PowerSpectrum {
    pub fn vertex_count(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.value, Eigenvalue::Exact(_)))
    }

    /// Largest eigenvalue, which is the degree of the power.
    pub fn mu1(&self) -> &Eigenvalue {
        &self.entries[0].value
    }

    pub fn mu_min(&self) -> &Eigenvalue {
        &self.entries[self.entries.len() - 1].value
    }

    /// All eigenvalues with repetition, descending. Only for small powers.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.value.to_f64()).take(e.multiplicity as usize))
            .collect()
    }

    /// `(sum m mu, sum m mu^2 - N mu_1)`, both zero for a regular graph.
    pub fn trace_residuals(&self) -> (f64, f64) {
        let n = self.vertex_count() as f64;
        let mu1 = self.mu1().to_f64();
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for e in &self.entries {
            let v = e.value.to_f64();
            s1 += v * e.multiplicity as f64;
            s2 += v * v * e.multiplicity as f64;
        }
        (s1, s2 - n * mu1)
    }

    /// Trace identities in exact arithmetic; `None` for float spectra.
    pub fn exact_traces_hold(&self) -> Option<bool> {
        let Eigenvalue::Exact(mu1) = self.mu1() else {
            return None;
        };
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for e in &self.entries {
            let Eigenvalue::Exact(v) = &e.value else {
                return None;
            };
            let m = BigInt::from(e.multiplicity);
            s1 += v * &m;
            s2 += v * v * &m;
        }
        Some(s1.is_zero() && s2 == mu1 * BigInt::from(self.vertex_count()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }
}

fn check_params(k: usize, p: usize) -> Result<()> {
    if k == 0 {
        return invalid("k must be >= 1");
    }
    if p < 2 {
        return invalid("p must be >= 2");
    }
    Ok(())
}

fn checked_pow(base: u128, exp: usize) -> Result<u128> {
    base.checked_pow(exp as u32)
        .filter(|_| exp <= u32::MAX as usize)
        .ok_or_else(|| Error::InvalidInput("vertex count overflows u128".into()))
}

/// Degree of `G^{k_(p)}` for a d-regular `G` on `n` vertices:
/// `n^k - sum_{j = 0 mod p} C(k,j) (n-d)^{k-j} d^j`.
pub fn power_degree(n: usize, d: usize, k: usize, p: usize) -> BigInt {
    let nk = BigInt::from(n).pow(k as u32);
    let same: BigInt = (0..=k)
        .step_by(p)
        .map(|j| binomial(k, j) * BigInt::from(n - d).pow((k - j) as u32) * BigInt::from(d).pow(j as u32))
        .sum();
    nk - same
}

/// Compositions of `s` into `parts` nonnegative parts.
fn compositions(s: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, i: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i + 1 == cur.len() {
            cur[i] = rest;
            f(cur);
            return;
        }
        for c in 0..=rest {
            cur[i] = c;
            go(rest - c, i + 1, cur, f);
        }
    }
    if parts == 0 {
        if s == 0 {
            f(&[]);
        }
        return;
    }
    go(s, 0, &mut vec![0; parts], f);
}

fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total = 0u128;
    for &c in parts {
        for i in 1..=c as u128 {
            total += 1;
            acc = acc * total / i;
        }
    }
    acc
}

fn merge_float(mut raw: Vec<(f64, u128)>, tol: f64) -> Vec<SpectrumEntry> {
    raw.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, u128, f64)> = Vec::new();
    for (v, m) in raw {
        match out.last_mut() {
            Some((first, mult, weighted)) if (*first - v).abs() <= tol => {
                *mult += m;
                *weighted += v * m as f64;
            }
            _ => out.push((v, m, v * m as f64)),
        }
    }
    out.into_iter()
        .map(|(_, m, w)| SpectrumEntry { value: Eigenvalue::Approx(w / m as f64), multiplicity: m })
        .collect()
}

/// Spectrum of `G^{k_(p)}` from the spectrum of a regular base.
/// Eigenvalues are complex-double products collapsed at tolerance
/// `1e-8 n^k`; `mu_1` is computed exactly.
pub fn power_spectrum(base: &BaseSpectralData, k: usize, p: usize) -> Result<PowerSpectrum> {
    check_params(k, p)?;
    let n = base.n;
    let nk = checked_pow(n as u128, k)?;
    let (nf, df) = (n as f64, base.d as f64);
    let roots: Vec<Complex64> = (1..p).map(|t| Complex64::from_polar(1.0, 2.0 * PI * t as f64 / p as f64)).collect();

    let mut raw = vec![(power_degree(n, base.d, k, p).to_f64().unwrap_or(f64::NAN), 1u128)];
    let classes = base.nonprincipal_classes();
    for s in 1..=k {
        // The t-sum depends on s only; the chosen eigenvalues scale it.
        let mut coeff = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for w in &roots {
            let term = (nf + (w - 1.0) * df).powu((k - s) as u32) * (w - 1.0).powu(s as u32);
            coeff += term;
            magnitude += term.norm();
        }
        coeff /= -(p as f64);
        magnitude /= p as f64;
        if coeff.im.abs() > 1e-9 * magnitude.max(1.0) {
            return Err(Error::DegenerateSpectrum(format!("eigenvalue coefficient for s={s} is not real: {coeff}")));
        }
        let positions = binomial(k, s).to_u128().ok_or_else(|| Error::InvalidInput("binomial overflow".into()))?;
        let mut overflow = false;
        compositions(s, classes.len(), &mut |parts| {
            let mut prod = coeff.re;
            let mut mult = positions.checked_mul(multinomial(parts));
            for (&c, &(v, m)) in parts.iter().zip(&classes) {
                prod *= v.powi(c as i32);
                mult = mult.and_then(|x| x.checked_mul(m.checked_pow(c as u32)?));
            }
            match mult {
                Some(m) => raw.push((prod, m)),
                None => overflow = true,
            }
        });
        if overflow {
            return invalid("multiplicity overflows u128");
        }
    }
    let entries = merge_float(raw, 1e-8 * nk as f64);
    Ok(PowerSpectrum { n, k, p, entries })
}

/// Exact spectrum of `K_n^{k_(p)}`: weight class `s` contributes
/// `sum_{t != 0 mod p} K_t(s)` with multiplicity `C(k,s) (n-1)^s`.
pub fn kn_power_spectrum_exact(n: usize, k: usize, p: usize) -> Result<PowerSpectrum> {
    check_params(k, p)?;
    if n < 2 {
        return invalid("n must be >= 2");
    }
    checked_pow(n as u128, k)?;
    let mut raw: Vec<(BigInt, u128)> = (0..=k)
        .map(|s| {
            let value: BigInt = (0..=k).filter(|t| t % p != 0).map(|t| kraw_unchecked(k, n, t, s)).sum();
            let mult = binomial(k, s) * BigInt::from(n - 1).pow(s as u32);
            (value, mult.to_u128().expect("bounded by n^k"))
        })
        .collect();
    raw.sort_by(|a, b| b.0.cmp(&a.0));
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    for (v, m) in raw {
        match entries.last_mut() {
            Some(SpectrumEntry { value: Eigenvalue::Exact(last), multiplicity }) if *last == v => *multiplicity += m,
            _ => entries.push(SpectrumEntry { value: Eigenvalue::Exact(v), multiplicity: m }),
        }
    }
    Ok(PowerSpectrum { n, k, p, entries })
}

fn hoffman_parts(spec: &PowerSpectrum) -> Result<()> {
    let (mu1, mu_min) = (spec.mu1().to_f64(), spec.mu_min().to_f64());
    if !(mu1 > 0.0 && mu_min < 0.0) {
        return Err(Error::DegenerateSpectrum(format!(
            "Hoffman bound needs mu_1 > 0 > mu_min, got {mu1} and {mu_min}"
        )));
    }
    Ok(())
}

/// `-N mu_min / (mu_1 - mu_min)` in floating point.
pub fn hoffman_bound(spec: &PowerSpectrum) -> Result<f64> {
    hoffman_parts(spec)?;
    let (mu1, mu_min) = (spec.mu1().to_f64(), spec.mu_min().to_f64());
    Ok(-(spec.vertex_count() as f64) * mu_min / (mu1 - mu_min))
}

/// The same ratio exactly, for exact spectra.
pub fn hoffman_bound_exact(spec: &PowerSpectrum) -> Result<BigRational> {
    hoffman_parts(spec)?;
    match (spec.mu1(), spec.mu_min()) {
        (Eigenvalue::Exact(mu1), Eigenvalue::Exact(mu_min)) => {
            let n = BigInt::from(spec.vertex_count());
            Ok(BigRational::new(-(n * mu_min), mu1 - mu_min))
        }
        _ => invalid("exact Hoffman bound needs an exact spectrum"),
    }
}

/// Integer bound on alpha. Exact spectra are floored exactly. Float values
/// within `1e-9` (relative) of an integer are taken as that integer; other
/// values have 1e-9 subtracted before flooring.
pub fn hoffman_floor(spec: &PowerSpectrum) -> Result<u128> {
    if spec.is_exact() {
        let f = exact::floor(&hoffman_bound_exact(spec)?);
        return f.to_u128().ok_or_else(|| Error::InvalidInput("Hoffman bound out of range".into()));
    }
    let x = hoffman_bound(spec)?;
    let nearest = x.round();
    let v = if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) { nearest } else { (x - 1e-9).floor() };
    Ok(v.max(0.0) as u128)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XalBoundReport {
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub p: usize,
    pub rho1: f64,
    pub rho2: f64,
    pub bound: f64,
}

/// `max{ sqrt(n^2 - 2(1 - cos(2pi/p)) d(n-d)), lambda sqrt(2 - 2cos(2pi floor(p/2)/p)) }`.
/// Callers may first replace `p` by [`crate::linalg::smallest_divisor`].
pub fn xal_upper_bound(n: usize, d: usize, lambda: f64, p: usize) -> Result<XalBoundReport> {
    if d == 0 || d >= n {
        return invalid("need 0 < d < n");
    }
    if p < 2 {
        return invalid("p must be >= 2");
    }
    let (nf, df, pf) = (n as f64, d as f64, p as f64);
    let c1 = (2.0 * PI / pf).cos();
    let c2 = (2.0 * PI * (p / 2) as f64 / pf).cos();
    let rho1 = (nf * nf - 2.0 * (1.0 - c1) * df * (nf - df)).max(0.0).sqrt();
    let rho2 = lambda.abs() * (2.0 - 2.0 * c2).sqrt();
    Ok(XalBoundReport { n, d, lambda, p, rho1, rho2, bound: rho1.max(rho2) })
}

/// Squares of `rho_1`, `rho_2` and the bound, exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XalSquared {
    #[serde(serialize_with = "exact::serialize")]
    pub rho1_sq: BigRational,
    #[serde(serialize_with = "exact::serialize")]
    pub rho2_sq: BigRational,
    #[serde(serialize_with = "exact::serialize")]
    pub bound_sq: BigRational,
}

/// `cos(2 pi j / p)` when it is rational.
fn rational_cos(j: usize, p: usize) -> Option<BigRational> {
    let r = |a: i64, b: i64| Some(BigRational::new(a.into(), b.into()));
    match (12 * (j % p)) / p {
        _ if (12 * (j % p)) % p != 0 => None,
        0 => r(1, 1),
        2 | 10 => r(1, 2),
        3 | 9 => r(0, 1),
        4 | 8 => r(-1, 2),
        6 => r(-1, 1),
        _ => None,
    }
}

/// Exact version of [`xal_upper_bound`] for rational `lambda` and
/// `p` in {2, 3, 4, 6}, where the cosines are rational.
pub fn xal_upper_bound_squared(n: usize, d: usize, lambda: &BigRational, p: usize) -> Result<XalSquared> {
    if d == 0 || d >= n {
        return invalid("need 0 < d < n");
    }
    let (Some(c1), Some(c2)) = (rational_cos(1, p), rational_cos(p / 2, p)) else {
        return invalid(format!("cos(2pi/{p}) is irrational; use the float bound"));
    };
    let one = BigRational::one();
    let two = exact::from_int(2);
    let (nr, dr) = (exact::from_int(n), exact::from_int(d));
    let rho1_sq = &nr * &nr - &two * (&one - c1) * &dr * (&nr - &dr);
    let rho2_sq = lambda * lambda * (&two - &two * c2);
    let bound_sq = if rho1_sq >= rho2_sq { rho1_sq.clone() } else { rho2_sq.clone() };
    if rho1_sq.is_negative() {
        return invalid("negative rho_1^2");
    }
    Ok(XalSquared { rho1_sq, rho2_sq, bound_sq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{p_power, PowerParams};

    fn exact_entries(spec: &PowerSpectrum) -> Vec<(i64, u128)> {
        spec.entries
            .iter()
            .map(|e| match &e.value {
                Eigenvalue::Exact(v) => (v.to_i64().unwrap(), e.multiplicity),
                Eigenvalue::Approx(v) => (v.round() as i64, e.multiplicity),
            })
            .collect()
    }

    #[test]
    fn k3_base() {
        let base = BaseSpectralData::from_graph(&Graph::complete(3)).unwrap();
        assert_eq!(base.d, 2);
        assert!((base.eigenvalues[1] + 1.0).abs() < 1e-12 && (base.eigenvalues[2] + 1.0).abs() < 1e-12);
        assert!((base.lambda - 1.0).abs() < 1e-12);
        assert!(BaseSpectralData::from_graph(&Graph::path(3)).is_err());
    }

    #[test]
    fn k3_fourth_power() {
        let exact = kn_power_spectrum_exact(3, 4, 3).unwrap();
        assert_eq!(exact_entries(&exact), vec![(48, 1), (3, 48), (-6, 32)]);
        assert_eq!(exact.exact_traces_hold(), Some(true));
        let float = power_spectrum(&BaseSpectralData::from_graph(&Graph::complete(3)).unwrap(), 4, 3).unwrap();
        assert_eq!(exact_entries(&float), vec![(48, 1), (3, 48), (-6, 32)]);
        for (a, b) in float.entries.iter().zip(&exact.entries) {
            assert!((a.value.to_f64() - b.value.to_f64()).abs() < 1e-9);
        }
        assert_eq!(hoffman_bound_exact(&exact).unwrap(), exact::from_int(9));
        assert_eq!(hoffman_floor(&float).unwrap(), 9);
    }

    #[test]
    fn small_exact_cases() {
        let s = kn_power_spectrum_exact(2, 2, 2).unwrap();
        assert_eq!(exact_entries(&s), vec![(2, 1), (0, 2), (-2, 1)]);
        let s = kn_power_spectrum_exact(5, 1, 3).unwrap();
        assert_eq!(exact_entries(&s), vec![(4, 1), (-1, 4)]);
        assert_eq!(hoffman_bound_exact(&s).unwrap(), exact::from_int(1));
        let k6 = kn_power_spectrum_exact(3, 6, 3).unwrap();
        assert_eq!(hoffman_bound_exact(&k6).unwrap(), BigRational::new(729.into(), 57.into()));
    }

    #[test]
    fn k_equals_one_returns_base() {
        let g = Graph::petersen();
        let base = BaseSpectralData::from_graph(&g).unwrap();
        let spec = power_spectrum(&base, 1, 3).unwrap();
        let mut got = spec.expanded();
        got.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in got.iter().zip(&base.eigenvalues) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn matches_explicit_power() {
        for (g, k, p) in [(Graph::cycle(5), 2, 2), (Graph::petersen(), 2, 3), (Graph::cycle(6), 3, 4)] {
            let base = BaseSpectralData::from_graph(&g).unwrap();
            let spec = power_spectrum(&base, k, p).unwrap();
            let explicit = p_power(&g, PowerParams::new(k, p).unwrap()).unwrap();
            let numeric = adjacency_eigenvalues(&explicit);
            let ours = spec.expanded();
            assert_eq!(ours.len(), numeric.len());
            for (a, b) in ours.iter().zip(&numeric) {
                assert!((a - b).abs() < 1e-6, "{a} vs {b}");
            }
            assert_eq!(spec.mu1().to_f64() as usize, explicit.regularity().unwrap());
            let (t1, t2) = spec.trace_residuals();
            assert!(t1.abs() < 1e-6 && t2.abs() < 1e-6);
        }
    }

    #[test]
    fn degree_formula() {
        assert_eq!(power_degree(3, 2, 4, 3), BigInt::from(48));
        assert_eq!(power_degree(5, 2, 2, 2), BigInt::from(12));
    }

    #[test]
    fn degenerate_hoffman() {
        let base = BaseSpectralData::from_graph(&Graph::empty(3)).unwrap();
        let spec = power_spectrum(&base, 2, 2).unwrap();
        assert!(hoffman_bound(&spec).is_err());
    }

    #[test]
    fn xal_specializations() {
        let r = xal_upper_bound(3, 2, 1.0, 3).unwrap();
        assert!((r.bound - 3f64.sqrt()).abs() < 1e-12);
        let r = xal_upper_bound(10, 3, 2.0, 2).unwrap();
        assert!((r.rho1 - 4.0).abs() < 1e-12 && (r.rho2 - 4.0).abs() < 1e-12);
        let sq = xal_upper_bound_squared(3, 2, &exact::from_int(1), 3).unwrap();
        assert_eq!(sq.bound_sq, exact::from_int(3));
        let sq = xal_upper_bound_squared(10, 3, &exact::from_int(2), 4).unwrap();
        assert_eq!(sq.rho1_sq, exact::from_int(49 + 9));
        assert_eq!(sq.rho2_sq, exact::from_int(16));
        assert!(xal_upper_bound_squared(10, 3, &exact::from_int(2), 5).is_err());
        assert!(xal_upper_bound(3, 0, 0.0, 3).is_err());
    }

    #[test]
    fn rational_cosines() {
        assert_eq!(rational_cos(1, 6), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(rational_cos(3, 6), Some(exact::from_int(-1)));
        assert_eq!(rational_cos(1, 5), None);
        assert_eq!(rational_cos(1, 12), None);
    }
}
