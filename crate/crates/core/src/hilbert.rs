//! Hilbert series of quotients by monomial (leading-term) ideals, with the
//! dimension / degree extraction used by every profile check, and the
//! projective-emptiness certificate.

use crate::groebner::GroebnerBasis;
use crate::poly::Mono;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("projective scheme is nonempty: {0:?}")]
    NotEmpty(HilbertProfile),
}

/// Hilbert series data of a homogeneous quotient ring R/I: the numerator of
/// the series over (1-t)^n, the Krull dimension of the quotient, the
/// projective dimension (one less, when the scheme is nonempty), and the
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    pub numerator: Vec<i64>,
    pub dim: usize,
    pub projective_dim: Option<usize>,
    pub degree: i64,
}

/// Polynomial product (small integer coefficient vectors).
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn minimalize(gens: &mut Vec<Vec<u8>>) {
    gens.sort_by_key(|m| m.iter().map(|&e| e as usize).sum::<usize>());
    let mut out: Vec<Vec<u8>> = Vec::new();
    'next: for g in gens.drain(..) {
        for m in &out {
            if m.iter().zip(&g).all(|(a, b)| a <= b) {
                continue 'next;
            }
        }
        out.push(g);
    }
    *gens = out;
}

/// Numerator N(t) with HS(R/I) = N(t)/(1-t)^n for the monomial ideal generated
/// by `gens`, by the standard pivot-splitting recursion
/// N(I) = N(I + (x)) + t * N(I : x).
fn numerator(mut gens: Vec<Vec<u8>>) -> Vec<i64> {
    minimalize(&mut gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0]; // contains a unit
    }
    // pairwise coprime supports: product formula
    let n = gens[0].len();
    let mut support_count = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                support_count[i] += 1;
            }
        }
    }
    if support_count.iter().all(|&c| c <= 1) {
        let mut acc = vec![1i64];
        for g in &gens {
            let d: usize = g.iter().map(|&e| e as usize).sum();
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the most shared variable
    let pivot = support_count
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .map(|(i, _)| i)
        .unwrap();
    // I + (x_pivot): generators not involving the pivot, plus the pivot itself
    let mut sum_gens: Vec<Vec<u8>> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    let mut pv = vec![0u8; n];
    pv[pivot] = 1;
    sum_gens.push(pv);
    // I : x_pivot: pivot exponent reduced by one
    let quot_gens: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h[pivot] > 0 {
                h[pivot] -= 1;
            }
            h
        })
        .collect();
    let mut acc = numerator(sum_gens);
    let q = numerator(quot_gens);
    poly_add_shifted(&mut acc, &q, 1);
    acc
}

/// Hilbert profile of R/I from the leading-term ideal of a Groebner basis.
pub fn hilbert_profile(n_vars: usize, leading_terms: &[Mono]) -> HilbertProfile {
    let gens: Vec<Vec<u8>> = leading_terms.iter().map(|m| m.0.clone()).collect();
    let mut num = numerator(gens);
    while num.last() == Some(&0) && num.len() > 1 {
        num.pop();
    }
    // factor out (1-t)^k with Q(1) != 0
    let mut q = num.clone();
    let mut k = 0usize;
    loop {
        let at_one: i64 = q.iter().sum();
        if at_one != 0 || q.iter().all(|&c| c == 0) {
            break;
        }
        // synthetic division by (1 - t): m_0 = q_0, m_i = q_i + m_{i-1}
        let mut m = vec![0i64; q.len().saturating_sub(1).max(1)];
        let mut carry = 0i64;
        for i in 0..q.len().saturating_sub(1) {
            carry = q[i] + carry;
            m[i] = carry;
        }
        q = m;
        while q.last() == Some(&0) && q.len() > 1 {
            q.pop();
        }
        k += 1;
        if k > n_vars {
            break;
        }
    }
    let degree: i64 = q.iter().sum();
    let dim = n_vars - k;
    HilbertProfile {
        numerator: num,
        dim,
        projective_dim: if dim == 0 { None } else { Some(dim - 1) },
        degree,
    }
}

pub fn profile_of(gb: &GroebnerBasis) -> HilbertProfile {
    hilbert_profile(gb.vars.len(), &gb.leading_terms())
}

/// Certify projective emptiness: the leading-term ideal must contain a pure
/// power of every variable. Returns the exponents, one per variable.
pub fn projective_emptiness(gb: &GroebnerBasis) -> Result<Vec<usize>, HilbertError> {
    let n = gb.vars.len();
    let lts = gb.leading_terms();
    let mut exps = vec![None; n];
    for m in &lts {
        let support: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            let e = m.0[i] as usize;
            if exps[i].map_or(true, |old| e < old) {
                exps[i] = Some(e);
            }
        }
    }
    if exps.iter().all(|e| e.is_some()) {
        Ok(exps.into_iter().map(|e| e.unwrap()).collect())
    } else {
        Err(HilbertError::NotEmpty(profile_of(gb)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, Budget};
    use crate::poly::{MPoly, VarSet};
    use crate::scalar::Field;

    #[test]
    fn full_ring_profile() {
        let p = hilbert_profile(3, &[]);
        assert_eq!(p.dim, 3);
        assert_eq!(p.projective_dim, Some(2));
        assert_eq!(p.degree, 1);
    }

    #[test]
    fn single_quadric_is_a_conic() {
        // one quadric leading term in 3 variables: projective dim 1, degree 2
        let p = hilbert_profile(3, &[Mono(vec![2, 0, 0])]);
        assert_eq!(p.projective_dim, Some(1));
        assert_eq!(p.degree, 2);
    }

    #[test]
    fn point_and_empty() {
        // (x, y) in 3 vars: a single projective point
        let p = hilbert_profile(3, &[Mono(vec![1, 0, 0]), Mono(vec![0, 1, 0])]);
        assert_eq!(p.projective_dim, Some(0));
        assert_eq!(p.degree, 1);
        // (x, y) in 2 vars: empty projective scheme
        let p = hilbert_profile(2, &[Mono(vec![1, 0]), Mono(vec![0, 1])]);
        assert_eq!(p.dim, 0);
        assert_eq!(p.projective_dim, None);
    }

    #[test]
    fn twisted_cubic_degree() {
        // LT ideal of the twisted cubic basis {xz - y^2, yw - z^2, xw - yz}
        // under degrevlex has leading terms xz, yw, xw (or similar); compute
        // from an actual basis to stay honest.
        let vars = VarSet::new(vec!["x", "y", "z", "w"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let w = MPoly::var(&vars, f, 3);
        let gens = vec![
            x.mul(&z).sub(&y.mul(&y)),
            y.mul(&w).sub(&z.mul(&z)),
            x.mul(&w).sub(&y.mul(&z)),
        ];
        let gb = buchberger(&gens, &Budget::default()).unwrap();
        let p = profile_of(&gb);
        assert_eq!(p.projective_dim, Some(1));
        assert_eq!(p.degree, 3);
    }

    #[test]
    fn emptiness_certificate() {
        let vars = VarSet::new(vec!["x", "y"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let gb = buchberger(&[x.clone(), y.clone()], &Budget::default()).unwrap();
        assert_eq!(projective_emptiness(&gb).unwrap(), vec![1, 1]);

        // {x^2 + y^2, xy} over F_7: empty, pure powers x^2 and y^3
        let f7 = Field::prime(7).unwrap();
        let x = MPoly::var(&vars, f7, 0);
        let y = MPoly::var(&vars, f7, 1);
        let gens = vec![x.mul(&x).add(&y.mul(&y)), x.mul(&y)];
        let gb = buchberger(&gens, &Budget::default()).unwrap();
        let exps = projective_emptiness(&gb).unwrap();
        assert_eq!(exps, vec![2, 3]);

        // a non-empty example reports the profile as evidence
        let gens = vec![x.mul(&y)];
        let gb = buchberger(&gens, &Budget::default()).unwrap();
        match projective_emptiness(&gb) {
            Err(HilbertError::NotEmpty(p)) => assert_eq!(p.projective_dim, Some(0)),
            other => panic!("expected NotEmpty, got {:?}", other),
        }
    }
}
