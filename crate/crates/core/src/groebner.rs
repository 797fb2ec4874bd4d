//! Buchberger-based Groebner bases over prime fields, degrevlex only, with
//! Gebauer-Moeller pair elimination and a hard work budget.

use crate::poly::{MPoly, Mono, VarSet};
use crate::scalar::{Field, Scalar};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("budget exceeded: {0} (try another prime or a smaller instance)")]
    BudgetExceeded(String),
    #[error("generators must be homogeneous")]
    NotHomogeneous,
    #[error("generators must have prime-field coefficients")]
    NotPrimeField,
}

/// Work limits for a basis computation. Exceeding them is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_pair_reductions: usize,
    pub max_degree: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_pair_reductions: 200_000,
            max_degree: 20,
        }
    }
}

type Exps = SmallVec<[u8; 24]>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GMono {
    deg: u16,
    exps: Exps,
}

impl GMono {
    fn one(n: usize) -> GMono {
        GMono {
            deg: 0,
            exps: smallvec::smallvec![0; n],
        }
    }

    fn from_mono(m: &Mono) -> GMono {
        GMono {
            deg: m.degree() as u16,
            exps: Exps::from_slice(&m.0),
        }
    }

    fn to_mono(&self) -> Mono {
        Mono(self.exps.to_vec())
    }

    #[inline]
    fn cmp_degrevlex(&self, other: &GMono) -> Ordering {
        if self.deg != other.deg {
            return self.deg.cmp(&other.deg);
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn divides(&self, other: &GMono) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &GMono) -> GMono {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        GMono {
            deg: exps.iter().map(|&e| e as u16).sum(),
            exps,
        }
    }

    fn mul(&self, other: &GMono) -> GMono {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        GMono {
            deg: self.deg + other.deg,
            exps,
        }
    }

    fn div(&self, other: &GMono) -> GMono {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        GMono {
            deg: self.deg - other.deg,
            exps,
        }
    }

    fn coprime(&self, other: &GMono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Terms in strictly descending degrevlex order; coefficients nonzero mod p.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(GMono, u64)>,
}

impl GPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &GMono {
        &self.terms[0].0
    }

    fn lc(&self) -> u64 {
        self.terms[0].1
    }

    fn make_monic(&mut self, p: u64) {
        let inv = crate::fp::invmod(self.lc(), p);
        if inv == 1 {
            return;
        }
        for t in &mut self.terms {
            t.1 = t.1 * inv % p;
        }
    }

    /// self - c * m * g, merged in descending order.
    fn sub_mul(&self, c: u64, m: &GMono, g: &GPoly, p: u64) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let gm = g.terms[j].0.mul(m);
            match self.terms[i].0.cmp_degrevlex(&gm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = (p - g.terms[j].1 * c % p) % p;
                    if v != 0 {
                        out.push((gm, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = (self.terms[i].1 + p - g.terms[j].1 * c % p) % p;
                    if v != 0 {
                        out.push((gm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < g.terms.len() {
            let gm = g.terms[j].0.mul(m);
            let v = (p - g.terms[j].1 * c % p) % p;
            if v != 0 {
                out.push((gm, v));
            }
            j += 1;
        }
        GPoly { terms: out }
    }
}

fn to_gpoly(f: &MPoly, p: u64) -> GPoly {
    let mut terms: Vec<(GMono, u64)> = f
        .terms()
        .map(|(m, c)| {
            let r = match c {
                Scalar::Fp { r, p: q } => {
                    assert_eq!(*q, p);
                    *r
                }
                _ => panic!("prime-field coefficients required"),
            };
            (GMono::from_mono(m), r)
        })
        .collect();
    terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
    GPoly { terms }
}

fn from_gpoly(g: &GPoly, vars: &VarSet, p: u64) -> MPoly {
    let field = Field::Prime(p);
    let terms = g
        .terms
        .iter()
        .map(|(m, c)| (m.to_mono(), Scalar::Fp { r: *c, p }))
        .collect();
    MPoly::from_terms(vars, field, terms)
}

/// Full normal form of `f` against monic reducers; deterministic (first
/// reducer in basis order wins).
fn normal_form(f: GPoly, basis: &[GPoly], p: u64) -> GPoly {
    let mut rest = f;
    let mut out: Vec<(GMono, u64)> = Vec::new();
    'outer: while !rest.is_zero() {
        let lm = rest.lm();
        for g in basis {
            if g.lm().divides(lm) {
                let m = lm.div(g.lm());
                let c = rest.lc();
                rest = rest.sub_mul(c, &m, g, p);
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the result
        out.push(rest.terms.remove(0));
    }
    GPoly { terms: out }
}

/// A reduced Groebner basis under degrevlex: auto-reduced, monic, sorted by
/// ascending leading term. Recomputation from the same input is deterministic.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub prime: u64,
    pub vars: VarSet,
    basis: Vec<GPoly>,
    pub pair_reductions: usize,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> Vec<MPoly> {
        self.basis
            .iter()
            .map(|g| from_gpoly(g, &self.vars, self.prime))
            .collect()
    }

    pub fn leading_terms(&self) -> Vec<Mono> {
        self.basis.iter().map(|g| g.lm().to_mono()).collect()
    }

    /// Normal form of an arbitrary polynomial against the basis.
    pub fn reduce(&self, f: &MPoly) -> MPoly {
        let g = normal_form(to_gpoly(f, self.prime), &self.basis, self.prime);
        from_gpoly(&g, &self.vars, self.prime)
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        self.reduce(f).is_zero()
    }
}

#[derive(PartialEq, Eq)]
struct PairEntry {
    lcm: GMono,
    i: usize,
    j: usize,
}

impl Ord for PairEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; reverse so the smallest lcm pops first.
        other
            .lcm
            .cmp_degrevlex(&self.lcm)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger's algorithm with the Gebauer-Moeller product and chain criteria
/// and normal (minimal-lcm) pair selection.
pub fn buchberger(gens: &[MPoly], budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    let nonzero: Vec<&MPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    assert!(!nonzero.is_empty(), "no nonzero generators");
    let vars = nonzero[0].vars.clone();
    let p = match nonzero[0].field {
        Field::Prime(p) => p,
        Field::Rationals => return Err(GroebnerError::NotPrimeField),
    };
    for g in &nonzero {
        if !g.is_homogeneous() {
            return Err(GroebnerError::NotHomogeneous);
        }
    }

    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: BinaryHeap<PairEntry> = BinaryHeap::new();
    let mut reductions = 0usize;

    let mut insert = |h: GPoly,
                      basis: &mut Vec<GPoly>,
                      pairs: &mut BinaryHeap<PairEntry>| {
        let t = basis.len();
        let lt = h.lm().clone();
        // Gebauer-Moeller update of the candidate pairs (i, t)
        let mut cand: Vec<(usize, GMono, bool)> = (0..t)
            .map(|i| {
                let l = basis[i].lm().lcm(&lt);
                let cop = basis[i].lm().coprime(&lt);
                (i, l, cop)
            })
            .collect();
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[a] {
                    continue;
                }
                if !keep[b] {
                    continue;
                }
                // drop candidate a if lcm(b) properly divides lcm(a)
                if cand[b].1.divides(&cand[a].1) && cand[b].1 != cand[a].1 {
                    keep[a] = false;
                }
            }
        }
        // among equal lcms keep the lowest index
        for a in 0..cand.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..a {
                if keep[b] && cand[b].1 == cand[a].1 {
                    keep[a] = false;
                    break;
                }
            }
        }
        // chain criterion on the old pairs
        let old: Vec<PairEntry> = std::mem::take(pairs).into_vec();
        let mut newheap = BinaryHeap::new();
        for e in old {
            let li = basis[e.i].lm().lcm(&lt);
            let lj = basis[e.j].lm().lcm(&lt);
            if lt.divides(&e.lcm) && li != e.lcm && lj != e.lcm {
                continue; // eliminated by the chain criterion
            }
            newheap.push(e);
        }
        // install surviving new pairs, discarding coprime-product ones
        for (a, (i, l, cop)) in cand.into_iter().enumerate() {
            if keep[a] && !cop {
                newheap.push(PairEntry { lcm: l, i, j: t });
            }
        }
        *pairs = newheap;
        basis.push(h);
    };

    // seed with the normal forms of the input generators
    for g in &nonzero {
        let mut h = normal_form(to_gpoly(g, p), &basis, p);
        if !h.is_zero() {
            h.make_monic(p);
            insert(h, &mut basis, &mut pairs);
        }
    }

    while let Some(PairEntry { lcm, i, j }) = pairs.pop() {
        if lcm.deg as usize > budget.max_degree {
            return Err(GroebnerError::BudgetExceeded(format!(
                "S-pair degree {} exceeds cap {}",
                lcm.deg, budget.max_degree
            )));
        }
        reductions += 1;
        if reductions > budget.max_pair_reductions {
            return Err(GroebnerError::BudgetExceeded(format!(
                "more than {} pair reductions",
                budget.max_pair_reductions
            )));
        }
        // S-polynomial of the (monic) pair: mf*f - mg*g
        let s = {
            let (f, g) = (&basis[i], &basis[j]);
            let mf = lcm.div(f.lm());
            let mg = lcm.div(g.lm());
            let mf_f = GPoly {
                terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), *c)).collect(),
            };
            mf_f.sub_mul(1, &mg, g, p)
        };
        let mut h = normal_form(s, &basis, p);
        if !h.is_zero() {
            h.make_monic(p);
            insert(h, &mut basis, &mut pairs);
        }
    }

    // minimalize: drop elements whose LM is divisible by another's LM
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| basis[a].lm().cmp_degrevlex(basis[b].lm()));
    let mut minimal: Vec<GPoly> = Vec::new();
    for &idx in &order {
        if !minimal.iter().any(|m| m.lm().divides(basis[idx].lm())) {
            minimal.push(basis[idx].clone());
        }
    }
    // tail-reduce each against the others
    let mut reduced: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut h = normal_form(minimal[i].clone(), &others, p);
        assert!(!h.is_zero(), "minimal basis element reduced to zero");
        h.make_monic(p);
        reduced.push(h);
    }
    reduced.sort_by(|a, b| a.lm().cmp_degrevlex(b.lm()));

    Ok(GroebnerBasis {
        prime: p,
        vars,
        basis: reduced,
        pair_reductions: reductions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::graded_slice;

    fn mk_vars(names: &[&str]) -> VarSet {
        VarSet::new(names.to_vec())
    }

    #[test]
    fn already_a_basis() {
        let vars = mk_vars(&["x", "y"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let gb = buchberger(&[x.mul(&x), x.mul(&y)], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 2);
        // ascending degrevlex: xy < x^2
        let lts: Vec<String> = gb.elements().iter().map(|g| g.text()).collect();
        assert_eq!(lts, vec!["x*y", "x^2"]);
    }

    #[test]
    fn twisted_cubic_like_spair() {
        // {xy - z^2, xz - y^2}: the S-polynomial contributes y^3 - z^3
        let vars = mk_vars(&["x", "y", "z"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let g1 = x.mul(&y).sub(&z.mul(&z));
        let g2 = x.mul(&z).sub(&y.mul(&y));
        let gb = buchberger(&[g1.clone(), g2.clone()], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 3);
        let cubic = y.mul(&y).mul(&y).sub(&z.mul(&z).mul(&z));
        assert!(gb.contains(&cubic));
        // every input generator reduces to zero
        assert!(gb.contains(&g1));
        assert!(gb.contains(&g2));
    }

    #[test]
    fn spolys_reduce_to_zero_and_deterministic() {
        let vars = mk_vars(&["x", "y", "z", "w"]);
        let f = Field::prime(103).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let w = MPoly::var(&vars, f, 3);
        let gens = vec![
            x.mul(&w).sub(&y.mul(&z)),
            x.mul(&x).add(&y.mul(&y)).add(&z.mul(&w)),
            y.mul(&w).sub(&z.mul(&z)),
        ];
        let gb1 = buchberger(&gens, &Budget::default()).unwrap();
        let gb2 = buchberger(&gens, &Budget::default()).unwrap();
        let e1: Vec<String> = gb1.elements().iter().map(|g| g.text()).collect();
        let e2: Vec<String> = gb2.elements().iter().map(|g| g.text()).collect();
        assert_eq!(e1, e2);
        // each S-polynomial of basis pairs reduces to zero
        let polys = gb1.elements();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let (mi, _) = polys[i].leading().unwrap();
                let (mj, _) = polys[j].leading().unwrap();
                let lcm: Vec<u8> = mi.0.iter().zip(&mj.0).map(|(a, b)| *a.max(b)).collect();
                let di = Mono(lcm.iter().zip(&mi.0).map(|(l, e)| l - e).collect());
                let dj = Mono(lcm.iter().zip(&mj.0).map(|(l, e)| l - e).collect());
                let s = polys[i]
                    .mul_term(&di, &f.one())
                    .sub(&polys[j].mul_term(&dj, &f.one()));
                assert!(gb1.contains(&s));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let vars = mk_vars(&["x", "y", "z"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let gens = vec![x.mul(&y).sub(&z.mul(&z)), x.mul(&z).sub(&y.mul(&y))];
        let tiny = Budget {
            max_pair_reductions: 0,
            max_degree: 20,
        };
        assert!(matches!(
            buchberger(&gens, &tiny),
            Err(GroebnerError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn rational_input_rejected() {
        let vars = mk_vars(&["x"]);
        let f = Field::Rationals;
        let x = MPoly::var(&vars, f, 0);
        assert_eq!(
            buchberger(&[x], &Budget::default()).unwrap_err(),
            GroebnerError::NotPrimeField
        );
    }

    #[test]
    fn basis_generates_same_degree_slices() {
        // the reduced basis spans the same degree-2 and degree-3 slices as the input
        let vars = mk_vars(&["x", "y", "z", "w"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let w = MPoly::var(&vars, f, 3);
        let gens = vec![x.mul(&w).sub(&y.mul(&z)), x.mul(&z).sub(&y.mul(&y))];
        let gb = buchberger(&gens, &Budget::default()).unwrap();
        for d in [2usize, 3] {
            let s1 = graded_slice(&gens, d).unwrap().row_space();
            let degd: Vec<MPoly> = gb
                .elements()
                .into_iter()
                .filter(|g| g.homogeneous_degree().unwrap() <= d)
                .collect();
            let s2 = graded_slice(&degd, d).unwrap().row_space();
            assert_eq!(s1, s2);
        }
    }
}
