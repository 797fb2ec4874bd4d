//! Sparse multivariate polynomials over an exact field, with a fixed
//! graded-reverse-lexicographic monomial order.

use crate::matrix::ExactMatrix;
use crate::scalar::{Field, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable set mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("input is not homogeneous of degree <= {0}")]
    NonHomogeneousInput(usize),
    #[error("no substitution given for variable {0}")]
    MissingSubstitution(String),
}

/// An ordered set of variable names. The declared order fixes the monomial
/// order (degrevlex) for everything built on top: slices, Groebner bases,
/// report serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> VarSet {
        let names: Vec<String> = names.into_iter().map(|s| s.into()).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate variable name {}", n);
        }
        VarSet {
            names: Arc::new(names),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector with degrevlex ordering. `Ord` sorts ascending in the
/// monomial order, so the last key of a `BTreeMap<Mono, _>` is the leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u8>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Mono {
        let mut e = vec![0u8; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        // degrevlex tie-break: the monomial whose last nonzero entry of the
        // exponent difference is positive is the *smaller* one.
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial: map from exponent vectors to nonzero
/// coefficients, all over one field, over one variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub vars: VarSet,
    pub field: Field,
    terms: BTreeMap<Mono, Scalar>,
}

impl MPoly {
    pub fn zero(vars: &VarSet, field: Field) -> MPoly {
        MPoly {
            vars: vars.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(vars, c.field());
        if !c.is_zero() {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &VarSet, field: Field, i: usize) -> MPoly {
        let mut p = MPoly::zero(vars, field);
        p.terms.insert(Mono::var(vars.len(), i), field.one());
        p
    }

    pub fn from_terms(vars: &VarSet, field: Field, terms: Vec<(Mono, Scalar)>) -> MPoly {
        let mut p = MPoly::zero(vars, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        assert_eq!(m.0.len(), self.vars.len(), "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in the degrevlex order.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Some(d) if every term has degree d; zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        for m in it {
            if m.degree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(&self.vars, self.field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars, self.field);
        }
        let mut out = MPoly::zero(&self.vars, self.field);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_compat(other);
        let mut out = MPoly::zero(&self.vars, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(&self.vars, self.field);
        if c.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca * c);
        }
        out
    }

    pub fn pow(&self, e: usize) -> MPoly {
        let mut out = MPoly::constant(&self.vars, self.field.one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Map every coefficient into `F_p`. Fails if a denominator vanishes.
    pub fn reduce_mod(&self, p: u64) -> Result<MPoly, crate::scalar::ScalarError> {
        let mut out = MPoly::zero(&self.vars, Field::Prime(p));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    fn check_compat(&self, other: &MPoly) {
        assert_eq!(self.field, other.field, "field mismatch");
        if self.vars != other.vars {
            panic!(
                "variable set mismatch: [{}] vs [{}]",
                self.vars.names().join(","),
                other.vars.names().join(",")
            );
        }
    }

    /// Deterministic text form: terms from the leading monomial down,
    /// coefficients in the exact scalar format.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                parts.push(c.text());
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("({})*{}", c.text(), mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// All monomials of the given total degree, listed in descending degrevlex
/// order (leading first). This is the deterministic column basis used by
/// [`graded_slice`].
pub fn monomial_basis(vars: &VarSet, d: usize) -> Vec<Mono> {
    let n = vars.len();
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, rem: usize, cur: &mut Vec<u8>, out: &mut Vec<Mono>) {
        if i + 1 == cur.len() {
            cur[i] = rem as u8;
            out.push(Mono(cur.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            cur[i] = e as u8;
            rec(i + 1, rem - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Coefficient matrix whose row space is the degree-`d` piece of the ideal
/// generated by `gens`: each generator of degree e <= d is multiplied by every
/// monomial of degree d - e, and expanded in the degree-d monomial basis.
pub fn graded_slice(gens: &[MPoly], d: usize) -> Result<ExactMatrix, PolyError> {
    assert!(!gens.is_empty(), "graded_slice of empty generator list");
    let vars = gens[0].vars.clone();
    let field = gens[0].field;
    let basis = monomial_basis(&vars, d);
    let col_of: std::collections::HashMap<&Mono, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let e = g.homogeneous_degree().ok_or(PolyError::NonHomogeneousInput(d))?;
        if e > d {
            return Err(PolyError::NonHomogeneousInput(d));
        }
        for mult in monomial_basis(&vars, d - e) {
            let prod = g.mul_term(&mult, &field.one());
            let mut row = vec![field.zero(); basis.len()];
            for (m, c) in prod.terms() {
                row[col_of[m]] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(ExactMatrix::from_rows(field, basis.len(), rows))
}

/// Exact substitution of linear (or arbitrary) polynomials for the variables
/// of `f`. Every variable of `f.vars` must be assigned an image over the
/// common target variable set.
pub fn substitute(f: &MPoly, images: &[MPoly]) -> MPoly {
    assert_eq!(images.len(), f.vars.len(), "one image per variable");
    let target_vars = images[0].vars.clone();
    let field = f.field;
    let mut acc = MPoly::zero(&target_vars, field);
    for (m, c) in f.terms() {
        let mut t = MPoly::constant(&target_vars, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&images[i].pow(e as usize));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xy() -> (VarSet, Field) {
        (VarSet::new(vec!["x", "y"]), Field::Rationals)
    }

    #[test]
    fn degrevlex_order() {
        let vars = VarSet::new(vec!["x", "y", "z"]);
        let f = Field::Rationals;
        // In degrevlex with x > y > z: x^2 > xy > y^2 > xz > yz > z^2.
        let mk = |e: [u8; 3]| Mono(e.to_vec());
        let expected = [
            mk([2, 0, 0]),
            mk([1, 1, 0]),
            mk([0, 2, 0]),
            mk([1, 0, 1]),
            mk([0, 1, 1]),
            mk([0, 0, 2]),
        ];
        let basis = monomial_basis(&vars, 2);
        assert_eq!(basis, expected);
        let _ = f;
    }

    #[test]
    fn graded_slice_examples() {
        let (vars, f) = xy();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        // {x^2, xy} in degree 2: dimension 2
        let g1 = x.mul(&x);
        let g2 = x.mul(&y);
        let m = graded_slice(&[g1, g2], 2).unwrap();
        assert_eq!(m.rank(), 2);
        // {x} in degree 2: {x^2, xy}, dimension 2
        let m = graded_slice(&[x.clone()], 2).unwrap();
        assert_eq!(m.rank(), 2);
        // non-homogeneous input rejected
        let bad = x.add(&MPoly::constant(&vars, f.one()));
        assert!(graded_slice(&[bad], 2).is_err());
    }

    #[test]
    fn substitution_examples() {
        let (vars, f) = xy();
        let uv = VarSet::new(vec!["u", "v"]);
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let u = MPoly::var(&uv, f, 0);
        let v = MPoly::var(&uv, f, 1);
        // x*y under x->u, y->v
        let fx = x.mul(&y);
        assert_eq!(substitute(&fx, &[u.clone(), v.clone()]), u.mul(&v));
        // x^2 - y^2 under x->u+v, y->u-v gives 4uv
        let fx = x.mul(&x).sub(&y.mul(&y));
        let img = substitute(&fx, &[u.add(&v), u.sub(&v)]);
        assert_eq!(img, u.mul(&v).scale(&f.from_i64(4)));
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            let vars = VarSet::new(vec!["x", "y", "z"]);
            for _ in 0..25 {
                let mut f = MPoly::zero(&vars, field);
                let mut g = MPoly::zero(&vars, field);
                for m in monomial_basis(&vars, 2) {
                    f.add_term(m.clone(), field.random(&mut rng));
                    g.add_term(m, field.random(&mut rng));
                }
                let pt: Vec<Scalar> = (0..3).map(|_| field.random(&mut rng)).collect();
                assert_eq!(f.mul(&g).eval(&pt), &f.eval(&pt) * &g.eval(&pt));
                assert_eq!(f.add(&g).eval(&pt), &f.eval(&pt) + &g.eval(&pt));
            }
        }
    }

    #[test]
    fn slice_invariant_under_generator_change() {
        // Row space of the degree-d slice is unchanged when generators are
        // replaced by random invertible combinations plus multiples.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let vars = VarSet::new(vec!["x", "y", "z"]);
        let f = Field::prime(101).unwrap();
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let z = MPoly::var(&vars, f, 2);
        let g1 = x.mul(&y).sub(&z.mul(&z));
        let g2 = x.mul(&x).add(&y.mul(&z));
        let s1 = graded_slice(&[g1.clone(), g2.clone()], 3).unwrap().row_space();
        for _ in 0..5 {
            let a = f.random_nonzero(&mut rng);
            let b = f.random(&mut rng);
            // new generators: a*g1 + b*g2, g2, and a redundant x*g1
            let h1 = g1.scale(&a).add(&g2.scale(&b));
            let h2 = g2.clone();
            let h3 = x.mul(&g1);
            let s2 = graded_slice(&[h1, h2, h3], 3).unwrap().row_space();
            assert_eq!(s1, s2);
        }
    }
}
