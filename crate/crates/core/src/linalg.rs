//! Small exact linear algebra: ranks over GF(p) and over the rationals,
//! plus the integer helpers they need.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Smallest divisor `>= 2` of `p`, which is always prime.
pub fn smallest_divisor(p: usize) -> usize {
    (2..).take_while(|d| d * d <= p).find(|d| p % d == 0).unwrap_or(p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= 1 << 32 {
        a * b % p
    } else {
        (u128::from(a) * u128::from(b) % u128::from(p)) as u64
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) works.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Rank over GF(p) of a matrix with entries already reduced into `0..p`.
/// `p` must be prime and below 2^63.
pub fn rank_mod_p(rows: Vec<Vec<u64>>, p: u64) -> usize {
    if p < 1 << 16 && rows.len() as u64 * (p - 1).pow(2) + p < 1 << 32 {
        // Small p: entries of non-pivot rows are reduced only when read, so
        // the inner loop is a plain multiply-add that vectorizes.
        let rows = rows.into_iter().map(|r| r.into_iter().map(|v| v as u32).collect()).collect();
        return rank_lazy(rows, p as u32);
    }
    rank_reduced(rows, p)
}

fn rank_lazy(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &mut top[rank];
        for v in pivot[c..].iter_mut() {
            *v %= p;
        }
        let inv = inverse_mod(u64::from(pivot[c]), u64::from(p)) as u32;
        for row in rest {
            let x = row[c] % p;
            if x == 0 {
                continue;
            }
            let f = (p - x) * inv % p;
            for (v, &pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                *v += f * pv;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_reduced(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        let inv = inverse_mod(pivot[c], p);
        for row in rest {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(p - row[c], inv, p);
            for (v, &pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                if pv != 0 {
                    *v = (*v + mul_mod(f, pv, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the rationals of an integer matrix by Bareiss fraction-free
/// elimination.
pub fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<usize> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(smallest_divisor(4), 2);
        assert_eq!(smallest_divisor(9), 3);
        assert_eq!(smallest_divisor(7), 7);
        assert_eq!(inverse_mod(3, 7), 5);
    }

    #[test]
    fn ranks_mod_p() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 1], vec![1, 2]], 3), 2);
        // [[1,1],[1,-1]] is singular mod 2 only.
        assert_eq!(rank_mod_p(vec![vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank_mod_p(vec![], 3), 0);
    }

    #[test]
    fn lazy_path_matches_reduced() {
        let mut state = 7u64;
        for p in [2u64, 3, 5, 13] {
            for size in [1, 5, 17, 40] {
                let rows: Vec<Vec<u64>> = (0..size)
                    .map(|_| {
                        (0..size)
                            .map(|_| {
                                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                // Sparse-ish entries so that some matrices are singular.
                                if state >> 62 == 0 { (state >> 33) % p } else { 0 }
                            })
                            .collect()
                    })
                    .collect();
                let lazy = rank_lazy(rows.iter().map(|r| r.iter().map(|&v| v as u32).collect()).collect(), p as u32);
                assert_eq!(lazy, rank_reduced(rows, p), "p={p} size={size}");
            }
        }
    }

    #[test]
    fn ranks_rational() {
        let m = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        assert_eq!(rank_bareiss(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank_bareiss(m(&[&[2, 0], &[0, 3]])), 2);
        assert_eq!(rank_bareiss(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_bareiss(m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
    }
}
