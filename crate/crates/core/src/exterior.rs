//! Exterior algebra over 6- and 7-dimensional spaces: wedge and contraction,
//! Pluecker coordinates and ideals, Grassmannian point sampling, quadrics
//! built from forms and endomorphisms, Schubert spans, and the reference
//! Segre / Veronese point counts.

use crate::fp::{self, CompiledQuadric};
use crate::matrix::{ExactMatrix, LinearSubspace, QuadraticForm};
use crate::poly::{graded_slice, MPoly, Mono, VarSet};
use crate::scalar::{Field, Scalar, ScalarError};
use rand::Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("degree overflow: {0} + {1} exceeds ambient dimension {2}")]
    DegreeOverflow(u8, u8, u8),
    #[error("could not sample a rank-{0} matrix after {1} attempts")]
    RankDeficient(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sign of merging two disjoint ascending index sets (bitmask form): the
/// parity of the number of pairs (i in a, j in b) with j < i.
#[inline]
pub fn merge_sign(a: u32, b: u32) -> i32 {
    let mut sign = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        // indices of a strictly greater than j
        sign += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if sign % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All k-element subsets of {0..n-1} as bitmasks, in ascending-tuple
/// lexicographic order. This is the canonical coordinate order everywhere.
pub fn basis_masks(k: usize, n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        return vec![0];
    }
    if k > n {
        return out;
    }
    loop {
        let mask = idx.iter().fold(0u32, |m, &i| m | (1 << i));
        out.push(mask);
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// A homogeneous element of the exterior algebra on an n-dimensional space,
/// stored as a map from ascending index masks to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub n: u8,
    pub k: u8,
    pub field: Field,
    terms: BTreeMap<u32, Scalar>,
}

impl ExtElement {
    pub fn zero(field: Field, n: u8, k: u8) -> ExtElement {
        ExtElement {
            n,
            k,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// Basis monomial e_{i1} ^ ... ^ e_{ik} for strictly increasing indices.
    pub fn basis(field: Field, n: u8, indices: &[usize]) -> ExtElement {
        let mut mask = 0u32;
        for w in indices.windows(2) {
            assert!(w[0] < w[1], "indices must be strictly increasing");
        }
        for &i in indices {
            assert!(i < n as usize);
            mask |= 1 << i;
        }
        let mut e = ExtElement::zero(field, n, indices.len() as u8);
        e.terms.insert(mask, field.one());
        e
    }

    pub fn from_vector(field: Field, n: u8, coords: &[Scalar]) -> ExtElement {
        assert_eq!(coords.len(), n as usize);
        let mut e = ExtElement::zero(field, n, 1);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(1 << i, c.clone());
            }
        }
        e
    }

    pub fn add_term(&mut self, mask: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones(), self.k as u32);
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExtElement {
        let mut out = ExtElement::zero(self.field, self.n, self.k);
        for (m, k) in &self.terms {
            out.add_term(*m, k * c);
        }
        out
    }

    pub fn wedge(&self, other: &ExtElement) -> Result<ExtElement, ExteriorError> {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        if self.k + other.k > self.n {
            return Err(ExteriorError::DegreeOverflow(self.k, other.k, self.n));
        }
        let mut out = ExtElement::zero(self.field, self.n, self.k + other.k);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let s = merge_sign(*ma, *mb);
                let c = ca * cb;
                out.add_term(*ma | *mb, if s > 0 { c } else { -&c });
            }
        }
        Ok(out)
    }

    /// Interior product against the i-th dual basis covector.
    pub fn contract_index(&self, i: usize) -> ExtElement {
        let mut out = ExtElement::zero(self.field, self.n, self.k.saturating_sub(1));
        if self.k == 0 {
            return out;
        }
        let bit = 1u32 << i;
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let c = if below % 2 == 0 { c.clone() } else { -c };
            out.add_term(m & !bit, c);
        }
        out
    }

    /// Interior product against a covector given by its coefficients.
    pub fn contract(&self, covector: &[Scalar]) -> ExtElement {
        assert_eq!(covector.len(), self.n as usize);
        let mut out = ExtElement::zero(self.field, self.n, self.k.saturating_sub(1));
        for (i, c) in covector.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.contract_index(i).scale(c));
            }
        }
        out
    }

    /// Coordinates in the canonical basis order of degree-k masks.
    pub fn to_coords(&self) -> Vec<Scalar> {
        basis_masks(self.k as usize, self.n as usize)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn from_coords(field: Field, n: u8, k: u8, coords: &[Scalar]) -> ExtElement {
        let masks = basis_masks(k as usize, n as usize);
        assert_eq!(coords.len(), masks.len());
        let mut e = ExtElement::zero(field, n, k);
        for (m, c) in masks.into_iter().zip(coords) {
            e.add_term(m, c.clone());
        }
        e
    }
}

/// Variable names for P(wedge^k) coordinates: `x` followed by the 1-based (for
/// n = 6, matching the section-model conventions) or 0-based (n = 7) indices.
pub fn plucker_varset(k: usize, n: usize) -> VarSet {
    let offset = if n == 6 { 1 } else { 0 };
    let names: Vec<String> = basis_masks(k, n)
        .into_iter()
        .map(|m| {
            let s: String = mask_indices(m)
                .into_iter()
                .map(|i| (i + offset).to_string())
                .collect();
            format!("x{}", s)
        })
        .collect();
    VarSet::new(names)
}

/// A projective point of G(k,n) in Pluecker coordinates (canonical basis order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPoint {
    pub k: usize,
    pub n: usize,
    pub coords: Vec<Scalar>,
}

impl PluckerPoint {
    pub fn to_ext(&self, field: Field) -> ExtElement {
        ExtElement::from_coords(field, self.n as u8, self.k as u8, &self.coords)
    }

    /// The k-dimensional subspace this (decomposable) point represents:
    /// kernel of w -> w ^ alpha.
    pub fn subspace(&self, field: Field) -> LinearSubspace {
        let alpha = self.to_ext(field);
        let rows_masks = basis_masks(self.k + 1, self.n);
        let mut rows = Vec::with_capacity(rows_masks.len());
        for rm in &rows_masks {
            let mut row = Vec::with_capacity(self.n);
            for i in 0..self.n {
                let e = ExtElement::basis(field, self.n as u8, &[i]);
                let w = e.wedge(&alpha).unwrap();
                row.push(w.coeff(*rm));
            }
            rows.push(row);
        }
        let m = ExactMatrix::from_rows(field, self.n, rows);
        LinearSubspace::from_spanning(field, self.n, m.kernel().rows_iter().map(|r| r.to_vec()).collect())
    }
}

/// Pluecker coordinates (maximal minors, columns ascending) of a k x n matrix.
pub fn plucker_coords_of_matrix(m: &ExactMatrix) -> Vec<Scalar> {
    let k = m.rows;
    let n = m.cols;
    basis_masks(k, n)
        .into_iter()
        .map(|mask| {
            let cols = mask_indices(mask);
            let sub = ExactMatrix::from_fn(m.field, k, k, |i, j| m[(i, cols[j])].clone());
            sub.det()
        })
        .collect()
}

/// Quadratic generators of the Pluecker ideal of G(k,n): for k = 2 the 4x4
/// sub-Pfaffians of the generic skew matrix, otherwise the reduced basis of
/// the shuffle relations (35-dimensional for (3,6)).
pub fn plucker_ideal(k: usize, n: usize) -> Vec<MPoly> {
    let vars = plucker_varset(k, n);
    let field = Field::Rationals;
    let masks = basis_masks(k, n);
    let index_of: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    if k == 2 {
        // x_{ij}x_{kl} - x_{ik}x_{jl} + x_{il}x_{jk} over all i<j<k<l
        let mut out = Vec::new();
        let var_idx = |a: usize, b: usize| index_of[&((1u32 << a) | (1u32 << b))];
        for quad in basis_masks(4, n) {
            let id = mask_indices(quad);
            let (i, j, kk, l) = (id[0], id[1], id[2], id[3]);
            let mut q = MPoly::zero(&vars, field);
            let mut add = |a: usize, b: usize, c: usize, d: usize, sign: i64| {
                let mut e = vec![0u8; vars.len()];
                e[var_idx(a, b)] += 1;
                e[var_idx(c, d)] += 1;
                q.add_term(Mono(e), field.from_i64(sign));
            };
            add(i, j, kk, l, 1);
            add(i, kk, j, l, -1);
            add(i, l, j, kk, 1);
            out.push(q);
        }
        return out;
    }

    // General shuffle relations, then a deterministic reduced basis.
    let mut relations = Vec::new();
    for alpha in basis_masks(k - 1, n) {
        for beta in basis_masks(k + 1, n) {
            let bi = mask_indices(beta);
            let mut q = MPoly::zero(&vars, field);
            for (s, &b) in bi.iter().enumerate() {
                let bbit = 1u32 << b;
                if alpha & bbit != 0 {
                    continue;
                }
                let first = alpha | bbit;
                let second = beta & !bbit;
                // sign: (-1)^s from the shuffle, times the sort sign of
                // appending b to alpha
                let sort_sign = merge_sign(alpha, bbit);
                let total = if s % 2 == 0 { sort_sign } else { -sort_sign };
                let mut e = vec![0u8; vars.len()];
                e[index_of[&first]] += 1;
                e[index_of[&second]] += 1;
                q.add_term(Mono(e), field.from_i64(total as i64));
            }
            if !q.is_zero() {
                relations.push(q);
            }
        }
    }
    // reduce to a canonical basis via the degree-2 slice
    let slice = graded_slice(&relations, 2).expect("homogeneous quadrics");
    let (r, rank, _) = slice.rref();
    let basis2 = crate::poly::monomial_basis(&vars, 2);
    let mut out = Vec::with_capacity(rank);
    for row in r.rows_iter().take(rank) {
        let mut q = MPoly::zero(&vars, field);
        for (c, m) in row.iter().zip(&basis2) {
            if !c.is_zero() {
                q.add_term(m.clone(), c.clone());
            }
        }
        out.push(q);
    }
    out
}

/// A uniformly sampled point of G(k,n): Pluecker vector of a random rank-k
/// matrix. Retries a bounded number of times on rank-deficient draws.
pub fn sample_grassmannian<R: Rng + ?Sized>(
    k: usize,
    n: usize,
    field: Field,
    rng: &mut R,
) -> Result<PluckerPoint, ExteriorError> {
    const MAX_RETRIES: usize = 32;
    for _ in 0..MAX_RETRIES {
        let m = ExactMatrix::from_fn(field, k, n, |_, _| field.random(rng));
        let coords = plucker_coords_of_matrix(&m);
        if coords.iter().any(|c| !c.is_zero()) {
            return Ok(PluckerPoint { k, n, coords });
        }
    }
    Err(ExteriorError::RankDeficient(k, MAX_RETRIES))
}

/// The quadratic form q_beta(alpha) = beta(alpha ^ alpha) on wedge^2 of a
/// 7-dimensional space, for a 4-form beta.
pub fn quadric_from_4form(beta: &ExtElement) -> QuadraticForm {
    assert_eq!((beta.n, beta.k), (7, 4));
    let field = beta.field;
    let masks = basis_masks(2, 7);
    let nb = masks.len();
    let mut m = ExactMatrix::zero(field, nb, nb);
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            let sign = merge_sign(s, t);
            let c = beta.coeff(s | t);
            if !c.is_zero() {
                m[(i, j)] = if sign > 0 { c } else { -&c };
            }
        }
    }
    QuadraticForm::new(plucker_varset(2, 7), m)
}

/// The quadratic form on wedge^2 V attached to a 3-vector w in wedge^3 V
/// (V 7-dimensional): b(alpha, alpha') = [w ^ alpha ^ alpha']_{e_{0..6}}.
pub fn quadric_from_3vector(w: &ExtElement) -> QuadraticForm {
    assert_eq!((w.n, w.k), (7, 3));
    let field = w.field;
    let masks = basis_masks(2, 7);
    let full: u32 = (1 << 7) - 1;
    let nb = masks.len();
    let mut m = ExactMatrix::zero(field, nb, nb);
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            let st = s | t;
            let rest = full & !st;
            let c = w.coeff(rest);
            if c.is_zero() {
                continue;
            }
            // sign of e_rest ^ e_s ^ e_t = e_{0..6}
            let sign = merge_sign(s, t) * merge_sign(rest, st);
            m[(i, j)] = if sign > 0 { c } else { -&c };
        }
    }
    QuadraticForm::new(plucker_varset(2, 7), m)
}

/// The quadric on wedge^3 U (U 6-dimensional) attached to u tensor v in
/// U tensor U*: q(alpha) = iota_v(alpha ^ u) ^ alpha, read off in wedge^6.
pub fn quadric_from_endo(u: &[Scalar], v: &[Scalar], field: Field) -> QuadraticForm {
    assert_eq!(u.len(), 6);
    assert_eq!(v.len(), 6);
    let masks = basis_masks(3, 6);
    let nb = masks.len();
    let uel = ExtElement::from_vector(field, 6, u);
    let full: u32 = (1 << 6) - 1;
    // b(alpha, beta) = (1/2)[iota_v(alpha ^ u) ^ beta + iota_v(beta ^ u) ^ alpha]
    let half = field.from_i64(2).inv().expect("odd characteristic");
    let mut m = ExactMatrix::zero(field, nb, nb);
    let contracted: Vec<ExtElement> = masks
        .iter()
        .map(|&s| {
            let es = ExtElement::from_coords(
                field,
                6,
                3,
                &basis_masks(3, 6)
                    .iter()
                    .map(|&t| if t == s { field.one() } else { field.zero() })
                    .collect::<Vec<_>>(),
            );
            es.wedge(&uel).unwrap().contract(v)
        })
        .collect();
    for (i, _s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            // iota_v(e_s ^ u) ^ e_t coefficient in e_{0..5}
            let w = &contracted[i];
            let mut val = field.zero();
            for (mask, c) in w.terms() {
                if mask & t != 0 {
                    continue;
                }
                if (mask | t) != full {
                    continue;
                }
                let sign = merge_sign(*mask, t);
                val = if sign > 0 { &val + c } else { &val - c };
            }
            if !val.is_zero() {
                m[(i, j)] = &m[(i, j)] + &(&val * &half);
                m[(j, i)] = &m[(j, i)] + &(&val * &half);
            }
        }
    }
    QuadraticForm::new(plucker_varset(3, 6), m)
}

/// The linear span of the Schubert cycle of 3-spaces containing `u` inside
/// P(wedge^3 U): the image of wedging with u. Projective dimension 9.
pub fn schubert_span(u: &[Scalar], field: Field) -> LinearSubspace {
    let uel = ExtElement::from_vector(field, 6, u);
    let two_masks = basis_masks(2, 6);
    let rows: Vec<Vec<Scalar>> = two_masks
        .iter()
        .map(|&m| {
            let beta = ExtElement::from_coords(
                field,
                6,
                2,
                &two_masks
                    .iter()
                    .map(|&t| if t == m { field.one() } else { field.zero() })
                    .collect::<Vec<_>>(),
            );
            uel.wedge(&beta).unwrap().to_coords()
        })
        .collect();
    LinearSubspace::from_spanning(field, basis_masks(3, 6).len(), rows)
}

/// Exact F_p point count of the Segre product of projective lines (or any
/// list of projective factors), by enumeration of parameter points.
pub fn segre_count(factors: &[usize], p: u64) -> Result<u64, ScalarError> {
    Field::prime(p)?;
    // count distinct normalized images of the parameter product in the tensor
    // product space
    let dims: Vec<usize> = factors.iter().map(|&d| d + 1).collect();
    let total_dim: usize = dims.iter().product();
    let mut images = std::collections::HashSet::new();
    let mut params: Vec<Vec<Vec<u64>>> = Vec::new();
    for &d in &dims {
        let mut pts = Vec::new();
        fp::for_each_projective_point(d, p, |v| pts.push(v.to_vec()));
        params.push(pts);
    }
    let mut counters = vec![0usize; params.len()];
    loop {
        let mut image = vec![1u64; 1];
        for (f, &c) in counters.iter().enumerate() {
            let v = &params[f][c];
            let mut next = Vec::with_capacity(image.len() * v.len());
            for a in &image {
                for b in v {
                    next.push(fp::mulmod(*a, *b, p));
                }
            }
            image = next;
        }
        debug_assert_eq!(image.len(), total_dim);
        // normalize: scale so first nonzero coordinate is 1
        let lead = image.iter().position(|&x| x != 0).expect("nonzero image");
        let inv = fp::invmod(image[lead], p);
        let norm: Vec<u64> = image.iter().map(|&x| fp::mulmod(x, inv, p)).collect();
        images.insert(norm);
        // advance
        let mut i = params.len();
        let mut carried = true;
        while carried && i > 0 {
            i -= 1;
            counters[i] += 1;
            if counters[i] < params[i].len() {
                carried = false;
            } else {
                counters[i] = 0;
            }
        }
        if carried {
            break;
        }
    }
    Ok(images.len() as u64)
}

/// Exact F_p point count of the Veronese surface (P^2 in P^5 by quadrics),
/// by enumeration of parameter points.
pub fn veronese_count(p: u64) -> Result<u64, ScalarError> {
    Field::prime(p)?;
    let mut images = std::collections::HashSet::new();
    fp::for_each_projective_point(3, p, |v| {
        let image = [
            fp::mulmod(v[0], v[0], p),
            fp::mulmod(v[0], v[1], p),
            fp::mulmod(v[0], v[2], p),
            fp::mulmod(v[1], v[1], p),
            fp::mulmod(v[1], v[2], p),
            fp::mulmod(v[2], v[2], p),
        ];
        let lead = image.iter().position(|&x| x != 0).unwrap();
        let inv = fp::invmod(image[lead], p);
        let norm: Vec<u64> = image.iter().map(|&x| fp::mulmod(x, inv, p)).collect();
        images.insert(norm);
    });
    Ok(images.len() as u64)
}

/// Compile an MPoly quadric list for fast F_p evaluation.
pub fn compile_quadrics(quadrics: &[MPoly], p: u64) -> Vec<CompiledQuadric> {
    quadrics
        .iter()
        .map(|q| CompiledQuadric::compile(q, p))
        .collect()
}
