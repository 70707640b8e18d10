//! Exact Krawtchouk polynomial values and their residue-class sums.
//!
//! `K_t^{n;q}(s) = sum_j C(s,j) C(n-s,t-j) (-1)^j (q-1)^(t-j)`, evaluated in
//! arbitrary precision. The residue-class sums `sum_{t = 0 mod p} K_t(s)` have
//! a closed form through a roots-of-unity filter with `zeta = e^(2 pi i/p)`:
//!
//! ```text
//! sum_{t = 0 (p)} K_t^{k;q}(s) = [s = 0] q^k / p + xi_s,
//! xi_s = (1/p) sum_{r=1}^{p-1} (1 + (q-1) zeta^r)^(k-s) (1 - zeta^r)^s
//! ```
//!
//! which for `p = q` is `[s = 0] q^(k-1) + xi_s`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn pow(base: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// `K_t^{n;q}(s)` for `0 <= t, s <= n`.
pub fn kraw(n: usize, q: usize, t: usize, s: usize) -> Result<BigInt> {
    if q < 2 {
        return invalid("alphabet size q must be >= 2");
    }
    if t > n || s > n {
        return invalid(format!("need 0 <= t, s <= n (t={t}, s={s}, n={n})"));
    }
    Ok(kraw_unchecked(n, q, t, s))
}

pub(crate) fn kraw_unchecked(n: usize, q: usize, t: usize, s: usize) -> BigInt {
    let q1 = q as i64 - 1;
    (0..=t.min(s))
        .filter(|&j| t - j <= n - s)
        .map(|j| {
            let term = binomial(s, j) * binomial(n - s, t - j) * pow(q1, t - j);
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// All values `K_t^{n;q}(s)`, indexed `[t][s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukTable {
    pub n: usize,
    pub q: usize,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if q < 2 {
            return invalid("alphabet size q must be >= 2");
        }
        let values = (0..=n).map(|t| (0..=n).map(|s| kraw_unchecked(n, q, t, s)).collect()).collect();
        Ok(Self { n, q, values })
    }

    pub fn get(&self, t: usize, s: usize) -> &BigInt {
        &self.values[t][s]
    }

    pub fn row(&self, t: usize) -> &[BigInt] {
        &self.values[t]
    }

    /// Orthogonality weight `C(n,s) (q-1)^s`.
    pub fn weight(&self, s: usize) -> BigInt {
        binomial(self.n, s) * pow(self.q as i64 - 1, s)
    }

    /// `sum_s w(s) K_a(s) K_b(s)`.
    pub fn inner_product(&self, a: usize, b: usize) -> BigInt {
        (0..=self.n).map(|s| self.weight(s) * &self.values[a][s] * &self.values[b][s]).sum()
    }
}

/// Residue-class sums of Krawtchouk values at one point `s`, computed both
/// by direct exact summation and through the closed character-sum form.
#[derive(Clone, Debug)]
pub struct CharacterSumValue {
    pub k: usize,
    pub q: usize,
    pub p: usize,
    pub s: usize,
    /// `sum_{t = 0 mod p} K_t^{k;q}(s)`, exact.
    pub divisible_sum: BigInt,
    /// `sum_{t != 0 mod p} K_t^{k;q}(s)`, exact.
    pub nondivisible_sum: BigInt,
    /// `sum_t K_t^{k;q}(s)`, exact; equals `q^k [s = 0]`.
    pub total: BigInt,
    /// `[s = 0] q^k / p`.
    pub principal: BigRational,
    pub xi: Complex64,
    /// Exact xi when the p-th roots of unity allow it (p = 2, 3).
    pub xi_exact: Option<BigRational>,
}

impl CharacterSumValue {
    /// Closed form of the divisible sum, exact when possible.
    pub fn closed_divisible_exact(&self) -> Option<BigRational> {
        self.xi_exact.as_ref().map(|x| &self.principal + x)
    }

    /// Closed form of the non-divisible sum, exact when possible.
    pub fn closed_nondivisible_exact(&self) -> Option<BigRational> {
        let total = if self.s == 0 { BigRational::from_integer(pow(self.q as i64, self.k)) } else { BigRational::zero() };
        self.xi_exact.as_ref().map(|x| total - &self.principal - x)
    }

    pub fn closed_divisible(&self) -> Complex64 {
        Complex64::new(self.principal.to_f64().unwrap_or(f64::NAN), 0.0) + self.xi
    }

    /// Relative disagreement between the direct and closed forms of the
    /// divisible sum; zero when both are exact and equal.
    pub fn closed_form_error(&self) -> f64 {
        if let Some(exact) = self.closed_divisible_exact() {
            return if exact == BigRational::from_integer(self.divisible_sum.clone()) { 0.0 } else { f64::INFINITY };
        }
        let direct = self.divisible_sum.to_f64().unwrap_or(f64::NAN);
        let closed = self.closed_divisible();
        let scale = direct.abs().max(closed.norm()).max(1.0);
        ((closed.re - direct).abs() + closed.im.abs()) / scale
    }
}

/// Complex evaluation of `xi_s` for alphabet `q` and modulus `p`.
pub fn xi_complex(k: usize, q: usize, p: usize, s: usize) -> Complex64 {
    let sum: Complex64 = (1..p)
        .map(|r| {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / p as f64);
            let a = Complex64::new(1.0, 0.0) + zeta * (q as f64 - 1.0);
            let b = Complex64::new(1.0, 0.0) - zeta;
            a.powu((k - s) as u32) * b.powu(s as u32)
        })
        .sum();
    sum / p as f64
}

/// Element `a + b w` of the Eisenstein integers, `w^2 = -1 - w`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Eisenstein {
    a: BigInt,
    b: BigInt,
}

impl Eisenstein {
    fn mul(&self, o: &Self) -> Self {
        let bd = &self.b * &o.b;
        Self { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }

    fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self { a: BigInt::one(), b: BigInt::zero() };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Exact `xi_s` for `p = 2` (zeta = -1) and `p = 3` (Eisenstein integers).
pub fn xi_exact(k: usize, q: usize, p: usize, s: usize) -> Option<BigRational> {
    match p {
        2 => {
            let v = pow(2 - q as i64, k - s) * pow(2, s);
            Some(BigRational::new(v, BigInt::from(2)))
        }
        3 => {
            let base = Eisenstein { a: BigInt::one(), b: BigInt::from(q as i64 - 1) }.pow(k - s);
            let z = base.mul(&Eisenstein { a: BigInt::one(), b: -BigInt::one() }.pow(s));
            // z + conj(z) = 2 Re z = 2a - b
            Some(BigRational::new(BigInt::from(2) * &z.a - &z.b, BigInt::from(3)))
        }
        _ => None,
    }
}

/// Residue-class sums at `s` for word length `k`, alphabet `q`, modulus `p`.
pub fn sum_divisible(k: usize, q: usize, p: usize, s: usize) -> Result<CharacterSumValue> {
    if p < 2 || q < 2 {
        return invalid("need p >= 2 and q >= 2");
    }
    if s > k {
        return invalid(format!("s = {s} exceeds k = {k}"));
    }
    let mut divisible_sum = BigInt::zero();
    let mut nondivisible_sum = BigInt::zero();
    for t in 0..=k {
        let v = kraw_unchecked(k, q, t, s);
        if t % p == 0 {
            divisible_sum += v;
        } else {
            nondivisible_sum += v;
        }
    }
    let total = &divisible_sum + &nondivisible_sum;
    let principal = if s == 0 {
        BigRational::new(pow(q as i64, k), BigInt::from(p))
    } else {
        BigRational::zero()
    };
    Ok(CharacterSumValue {
        k,
        q,
        p,
        s,
        divisible_sum,
        nondivisible_sum,
        total,
        principal,
        xi: xi_complex(k, q, p, s),
        xi_exact: xi_exact(k, q, p, s),
    })
}

/// `xi_s` for `p = q = 3`, exact.
pub fn xi(k: usize, s: usize) -> BigRational {
    xi_exact(k, 3, 3, s).expect("p = 3 has an exact path")
}

/// `(2/3) 3^(k/2) cos(pi k/2 - 2 pi s/3)`, the trigonometric form of `xi`
/// for `p = q = 3`.
pub fn xi_trig(k: usize, s: usize) -> f64 {
    use std::f64::consts::PI;
    (2.0 / 3.0) * 3f64.powf(k as f64 / 2.0) * (PI * k as f64 / 2.0 - 2.0 * PI * s as f64 / 3.0).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn kraw_values() {
        for (n, q) in [(4, 3), (7, 2), (5, 5)] {
            for s in 0..=n {
                assert_eq!(kraw(n, q, 0, s).unwrap(), int(1));
            }
            for t in 0..=n {
                assert_eq!(kraw(n, q, t, 0).unwrap(), binomial(n, t) * pow(q as i64 - 1, t));
            }
        }
        assert_eq!(kraw(4, 3, 1, 1).unwrap(), int(5));
        assert_eq!(kraw(4, 3, 3, 3).unwrap(), int(5));
    }

    #[test]
    fn kraw_range_errors() {
        assert!(kraw(4, 3, 5, 0).is_err());
        assert!(kraw(4, 3, 0, 5).is_err());
        assert!(kraw(4, 1, 0, 0).is_err());
    }

    #[test]
    fn orthogonality() {
        for (n, q) in [(6, 2), (5, 3), (4, 4)] {
            let table = KrawtchoukTable::new(n, q).unwrap();
            for a in 0..=n {
                for b in 0..=n {
                    let ip = table.inner_product(a, b);
                    if a == b {
                        assert!(ip > BigInt::zero());
                    } else {
                        assert_eq!(ip, BigInt::zero(), "n={n} q={q} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn divisible_sum_examples() {
        let v = sum_divisible(4, 3, 3, 0).unwrap();
        assert_eq!(v.divisible_sum, int(33));
        assert_eq!(v.principal, BigRational::from_integer(int(27)));
        assert_eq!(v.xi_exact, Some(BigRational::from_integer(int(6))));

        let v = sum_divisible(4, 3, 3, 3).unwrap();
        assert_eq!(v.divisible_sum, int(6));
        assert_eq!(v.xi_exact, Some(BigRational::from_integer(int(6))));
        assert_eq!(v.closed_form_error(), 0.0);
    }

    #[test]
    fn xi_residue_cases() {
        for k in (0..=16).step_by(2) {
            let mag = BigRational::new(int(2) * pow(3, k / 2), int(3));
            for s in (0..=k).filter(|s| s % 3 == 0) {
                let expect = if k % 4 == 0 { mag.clone() } else { -mag.clone() };
                assert_eq!(xi(k, s), expect, "k={k} s={s}");
            }
        }
        assert_eq!(xi(4, 0), BigRational::from_integer(int(6)));
    }

    #[test]
    fn exact_and_complex_xi_agree() {
        for p in [2, 3] {
            for q in 2..=5 {
                for k in 0..=9 {
                    for s in 0..=k {
                        let e = xi_exact(k, q, p, s).unwrap().to_f64().unwrap();
                        let c = xi_complex(k, q, p, s);
                        assert!((c.re - e).abs() <= 1e-9 * e.abs().max(1.0));
                        assert!(c.im.abs() <= 1e-9 * e.abs().max(1.0));
                    }
                }
            }
        }
    }
}
