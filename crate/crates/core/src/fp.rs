//! Compact prime-field helpers for the enumeration-heavy checks: projective
//! point iteration, u64 Gaussian elimination, and compiled quadric evaluation.

use crate::poly::MPoly;
use crate::scalar::Scalar;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Iterate over normalized representatives of P^{n-1}(F_p): for each position
/// of the first nonzero coordinate, that coordinate is 1 and earlier ones are 0.
pub fn for_each_projective_point<F: FnMut(&[u64])>(n: usize, p: u64, mut f: F) {
    let mut v = vec![0u64; n];
    for lead in 0..n {
        for x in v.iter_mut() {
            *x = 0;
        }
        v[lead] = 1;
        loop {
            f(&v);
            // odometer over the free coordinates lead+1..n
            let mut i = n;
            let mut carried = true;
            while carried && i > lead + 1 {
                i -= 1;
                v[i] += 1;
                if v[i] < p {
                    carried = false;
                } else {
                    v[i] = 0;
                }
            }
            if carried {
                break;
            }
        }
    }
}

/// Number of points of P^{n-1}(F_p).
pub fn projective_count(n: usize, p: u64) -> u64 {
    let mut acc = 0u64;
    let mut pw = 1u64;
    for _ in 0..n {
        acc += pw;
        pw *= p;
    }
    acc
}

/// Rank of a small dense matrix over F_p; destroys its argument.
pub fn rank_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = invmod(m[rank][c] % p, p);
        for i in rank + 1..rows {
            let f = mulmod(m[i][c] % p, inv, p);
            if f != 0 {
                for j in c..cols {
                    m[i][j] = submod(m[i][j] % p, mulmod(f, m[rank][j] % p, p), p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Kernel dimension of a dense matrix over F_p.
pub fn kernel_dim_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    cols - rank_mod_p(m, p)
}

/// A homogeneous quadric compiled to term triples for fast u64 evaluation.
#[derive(Clone, Debug)]
pub struct CompiledQuadric {
    pub p: u64,
    terms: Vec<(u64, u32, u32)>,
}

impl CompiledQuadric {
    pub fn compile(q: &MPoly, p: u64) -> CompiledQuadric {
        assert!(q.is_zero() || q.homogeneous_degree() == Some(2));
        let n = q.vars.len();
        let mut terms = Vec::with_capacity(q.num_terms());
        for (m, c) in q.terms() {
            let cc = match c.reduce_mod(p).expect("coefficient reduces") {
                Scalar::Fp { r, .. } => r,
                _ => unreachable!(),
            };
            let support: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
            let (i, j) = match support.len() {
                1 => (support[0], support[0]),
                2 => (support[0], support[1]),
                _ => unreachable!("non-quadratic term"),
            };
            terms.push((cc, i as u32, j as u32));
        }
        CompiledQuadric { p, terms }
    }

    #[inline]
    pub fn eval(&self, v: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &(c, i, j) in &self.terms {
            let t = mulmod(mulmod(v[i as usize], v[j as usize], p), c, p);
            acc = addmod(acc, t, p);
        }
        acc
    }
}

/// True iff every compiled quadric vanishes at `v` (early exit on the first
/// nonzero value).
#[inline]
pub fn all_vanish(quadrics: &[CompiledQuadric], v: &[u64]) -> bool {
    quadrics.iter().all(|q| q.eval(v) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_iteration_counts() {
        for (n, p) in [(2usize, 5u64), (3, 5), (3, 7), (4, 5)] {
            let mut count = 0u64;
            for_each_projective_point(n, p, |_| count += 1);
            assert_eq!(count, projective_count(n, p));
        }
    }

    #[test]
    fn projective_points_distinct_and_normalized() {
        let mut seen = std::collections::HashSet::new();
        for_each_projective_point(3, 5, |v| {
            let lead = v.iter().position(|&x| x != 0).unwrap();
            assert_eq!(v[lead], 1);
            assert!(seen.insert(v.to_vec()));
        });
        assert_eq!(seen.len() as u64, projective_count(3, 5));
    }

    #[test]
    fn rank_small() {
        let p = 7;
        let mut m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(&mut m, p), 2);
    }
}
