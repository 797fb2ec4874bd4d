//! Exact dense linear algebra: rank, kernel, determinant, Pfaffian,
//! characteristic polynomial, and symmetric quadratic forms.

use crate::poly::{MPoly, Mono, VarSet};
use crate::scalar::{Field, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("Pfaffian needs even size")]
    OddSize,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("characteristic polynomial needs Q or a prime p > n")]
    SmallCharacteristic,
}

/// Dense row-major matrix of scalars over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, s) in r.into_iter().enumerate() {
                m[(i, j)] = s;
            }
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            &self[(i, j)] + &other[(i, j)]
        })
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn stack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let rows = self
            .rows_iter()
            .chain(other.rows_iter())
            .map(|r| r.to_vec())
            .collect();
        ExactMatrix::from_rows(self.field, self.cols, rows)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != -&self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced row echelon form. Returns (rref, rank, pivot columns).
    pub fn rref(&self) -> (ExactMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let s = &m[(r, j)] * &f;
                        m[(i, j)] = &m[(i, j)] - &s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Canonical form of the row space: rref truncated to its nonzero rows.
    /// Two matrices have equal row spaces iff these are equal.
    pub fn row_space(&self) -> ExactMatrix {
        let (r, rank, _) = self.rref();
        let rows = r.rows_iter().take(rank).map(|x| x.to_vec()).collect();
        ExactMatrix::from_rows(self.field, self.cols, rows)
    }

    /// Basis of the right kernel, as rows of a matrix, in rref-normalized form.
    pub fn kernel(&self) -> ExactMatrix {
        let (r, _, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(ri, fc)];
            }
            rows.push(v);
        }
        ExactMatrix::from_rows(self.field, self.cols, rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant: fraction-free Bareiss elimination over Q (controls
    /// coefficient growth), plain Gaussian elimination over prime fields.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        match self.field {
            Field::Rationals => self.det_bareiss(),
            Field::Prime(_) => self.det_gauss(),
        }
    }

    fn det_gauss(&self) -> Scalar {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = m.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return m.field.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -&det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let s = &m[(c, j)] * &f;
                    m[(i, j)] = &m[(i, j)] - &s;
                }
            }
        }
        det
    }

    fn det_bareiss(&self) -> Scalar {
        // Clear denominators first so the fraction-free recurrence divides exactly.
        let n = self.rows;
        if n == 0 {
            return self.field.one();
        }
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        let mut denom_scale = BigRational::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                if let Scalar::Q(q) = &self[(i, j)] {
                    lcm = num_integer::lcm(lcm, q.denom().clone());
                } else {
                    unreachable!()
                }
            }
            denom_scale *= BigRational::from(lcm.clone());
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                if let Scalar::Q(q) = &self[(i, j)] {
                    row.push(q.numer() * (&lcm / q.denom()));
                } else {
                    unreachable!()
                }
            }
            m.push(row);
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return self.field.zero();
                };
                m.swap(k, pr);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det_int = sign * m[n - 1][n - 1].clone();
        Scalar::Q(BigRational::from(det_int) / denom_scale)
    }

    /// Pfaffian of a skew-symmetric matrix of even size. Uses the recursive
    /// first-row expansion for size <= 8 and skew Gaussian elimination beyond
    /// (nothing in the models needs beyond 8).
    pub fn pfaffian(&self) -> Result<Scalar, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        if self.rows % 2 != 0 {
            return Err(MatrixError::OddSize);
        }
        if !self.is_skew_symmetric() {
            return Err(MatrixError::NotSkewSymmetric);
        }
        if self.rows <= 8 {
            let idx: Vec<usize> = (0..self.rows).collect();
            Ok(self.pf_expand(&idx))
        } else {
            Ok(self.pf_eliminate())
        }
    }

    fn pf_expand(&self, idx: &[usize]) -> Scalar {
        if idx.is_empty() {
            return self.field.one();
        }
        let mut acc = self.field.zero();
        let i = idx[0];
        for (t, &j) in idx.iter().enumerate().skip(1) {
            let a = &self[(i, j)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .copied()
                .filter(|&x| x != j)
                .collect();
            let term = a * &self.pf_expand(&rest);
            if t % 2 == 1 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    fn pf_eliminate(&self) -> Scalar {
        // Skew elimination: congruence transformations preserve Pf up to the
        // recorded factor.
        let n = self.rows;
        let mut m = self.clone();
        let mut factor = self.field.one();
        let mut k = 0;
        while k + 1 < n {
            let Some(pr) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return self.field.zero();
            };
            if pr != k + 1 {
                // swap rows and columns pr <-> k+1; Pf changes sign
                m.swap_rows(pr, k + 1);
                for i in 0..n {
                    let a = m[(i, pr)].clone();
                    let b = m[(i, k + 1)].clone();
                    m[(i, pr)] = b;
                    m[(i, k + 1)] = a;
                }
                factor = -&factor;
            }
            let piv = m[(k + 1, k)].clone();
            let piv_inv = piv.inv().unwrap();
            for i in k + 2..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = &m[(i, k)] * &piv_inv;
                // row_i -= f * row_{k+1}; col_i -= f * col_{k+1}
                for j in 0..n {
                    let s = &m[(k + 1, j)] * &f;
                    m[(i, j)] = &m[(i, j)] - &s;
                }
                for j in 0..n {
                    let s = &m[(j, k + 1)] * &f;
                    m[(j, i)] = &m[(j, i)] - &s;
                }
            }
            k += 2;
        }
        let mut pf = factor;
        let mut k = 0;
        while k + 1 < n {
            pf = &pf * &m[(k, k + 1)];
            k += 2;
        }
        pf
    }

    /// det(t*Id - M) by Faddeev-LeVerrier; monic of degree n in the variable
    /// named `t`. Needs Q or a prime larger than n (only divisions by
    /// 1..=n occur).
    pub fn char_poly(&self, tvar: &str) -> Result<MPoly, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if let Field::Prime(p) = self.field {
            if (p as usize) <= n {
                return Err(MatrixError::SmallCharacteristic);
            }
        }
        let vars = VarSet::new(vec![tvar]);
        // M_1 = M, c_1 = -tr(M_1); M_{k+1} = M(M_k + c_k I), c_{k+1} = -tr/ (k+1)
        let mut coeffs = vec![self.field.one()]; // c_0 = 1 (coefficient of t^n)
        let mut mk = self.clone();
        for k in 1..=n {
            let tr = (0..n).fold(self.field.zero(), |acc, i| &acc + &mk[(i, i)]);
            let ck = (-&tr).div(&self.field.from_i64(k as i64)).unwrap();
            coeffs.push(ck.clone());
            if k < n {
                let mut shifted = mk.clone();
                for i in 0..n {
                    shifted[(i, i)] = &shifted[(i, i)] + &ck;
                }
                mk = self.mul(&shifted);
            }
        }
        let mut out = MPoly::zero(&vars, self.field);
        for (k, c) in coeffs.into_iter().enumerate() {
            out.add_term(Mono(vec![(n - k) as u8]), c);
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// A linear subspace of a coordinate space, stored as an rref basis of
/// spanning row vectors (so equal subspaces compare equal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    basis: ExactMatrix,
}

impl LinearSubspace {
    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> LinearSubspace {
        let m = ExactMatrix::from_rows(field, ambient, vectors);
        let (r, rank, _) = m.rref();
        let rows = r.rows_iter().take(rank).map(|x| x.to_vec()).collect();
        LinearSubspace {
            basis: ExactMatrix::from_rows(field, ambient, rows),
        }
    }

    /// The subspace cut out by the given linear forms (rows of coefficients).
    pub fn from_equations(field: Field, ambient: usize, forms: Vec<Vec<Scalar>>) -> LinearSubspace {
        let m = ExactMatrix::from_rows(field, ambient, forms);
        LinearSubspace { basis: m.kernel() }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Projective dimension (dim - 1); panics on the zero subspace.
    pub fn projective_dim(&self) -> usize {
        assert!(self.dim() > 0, "zero subspace has no projective dimension");
        self.dim() - 1
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows_iter().map(|r| r.to_vec()).collect()
    }

    /// Linear forms vanishing exactly on this subspace.
    pub fn annihilator(&self) -> LinearSubspace {
        LinearSubspace {
            basis: self.basis.kernel(),
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let stacked = self.basis.stack(&ExactMatrix::from_rows(
            self.basis.field,
            self.ambient(),
            vec![v.to_vec()],
        ));
        stacked.rank() == self.dim()
    }

    pub fn sum(&self, other: &LinearSubspace) -> LinearSubspace {
        let rows = self
            .basis
            .rows_iter()
            .chain(other.basis.rows_iter())
            .map(|r| r.to_vec())
            .collect();
        LinearSubspace::from_spanning(self.basis.field, self.ambient(), rows)
    }

    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let ann = self
            .annihilator()
            .basis
            .rows_iter()
            .chain(other.annihilator().basis.rows_iter())
            .map(|r| r.to_vec())
            .collect();
        LinearSubspace::from_equations(self.basis.field, self.ambient(), ann)
    }

    /// Coordinates of `v` in the basis of this subspace, if it lies inside.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        // Solve basis^T x = v.
        let bt = self.basis.transpose();
        let mut aug_rows = Vec::with_capacity(bt.rows);
        for i in 0..bt.rows {
            let mut row = bt.row(i).to_vec();
            row.push(v[i].clone());
            aug_rows.push(row);
        }
        let aug = ExactMatrix::from_rows(self.basis.field, bt.cols + 1, aug_rows);
        let (r, rank, pivots) = aug.rref();
        if pivots.contains(&bt.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.basis.field.zero(); bt.cols];
        for (ri, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = r[(ri, bt.cols)].clone();
        }
        Some(x)
    }
}

/// Symmetric-matrix representation of a quadratic form on a declared
/// coordinate space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub vars: VarSet,
    matrix: ExactMatrix,
}

impl QuadraticForm {
    pub fn new(vars: VarSet, matrix: ExactMatrix) -> QuadraticForm {
        assert_eq!(matrix.rows, vars.len());
        assert!(matrix.is_symmetric(), "quadratic form matrix must be symmetric");
        QuadraticForm { vars, matrix }
    }

    /// Build from a homogeneous quadric polynomial: M[i][j] = half the
    /// coefficient of x_i x_j off the diagonal.
    pub fn from_mpoly(q: &MPoly) -> QuadraticForm {
        assert_eq!(q.homogeneous_degree(), Some(2), "not a quadric");
        let n = q.vars.len();
        let field = q.field;
        let half = field
            .from_i64(2)
            .inv()
            .expect("characteristic 2 not supported");
        let mut m = ExactMatrix::zero(field, n, n);
        for (mono, c) in q.terms() {
            let support: Vec<usize> = (0..n).filter(|&i| mono.0[i] > 0).collect();
            match support.len() {
                1 => {
                    let i = support[0];
                    m[(i, i)] = c.clone();
                }
                2 => {
                    let (i, j) = (support[0], support[1]);
                    let h = c * &half;
                    m[(i, j)] = h.clone();
                    m[(j, i)] = h;
                }
                _ => unreachable!(),
            }
        }
        QuadraticForm::new(q.vars.clone(), m)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    /// q(v) = v^T M v.
    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        let mv = self.matrix.apply(v);
        v.iter()
            .zip(mv.iter())
            .fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Polarized form b(u, v) = u^T M v.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mv = self.matrix.apply(v);
        u.iter()
            .zip(mv.iter())
            .fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Restriction B^T M B to the subspace spanned by the rows of B.
    pub fn restrict(&self, sub: &LinearSubspace) -> ExactMatrix {
        let b = sub.basis().transpose();
        b.transpose().mul(&self.matrix).mul(&b)
    }

    pub fn kernel(&self) -> LinearSubspace {
        LinearSubspace {
            basis: self.matrix.kernel(),
        }
    }

    pub fn to_mpoly(&self) -> MPoly {
        let n = self.vars.len();
        let mut q = MPoly::zero(&self.vars, self.field());
        for i in 0..n {
            for j in i..n {
                let c = if i == j {
                    self.matrix[(i, i)].clone()
                } else {
                    &self.matrix[(i, j)] + &self.matrix[(j, i)]
                };
                if !c.is_zero() {
                    let mut e = vec![0u8; n];
                    e[i] += 1;
                    e[j] += 1;
                    q.add_term(Mono(e), c);
                }
            }
        }
        q
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        QuadraticForm::new(self.vars.clone(), self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, c: &Scalar) -> QuadraticForm {
        QuadraticForm::new(self.vars.clone(), self.matrix.scale(c))
    }
}

/// All principal 2k x 2k sub-Pfaffians of a skew-symmetric matrix with
/// polynomial entries, in lexicographic order of the chosen index sets.
pub fn pfaffian_ideal(m: &[Vec<MPoly>], two_k: usize) -> Result<Vec<MPoly>, MatrixError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(MatrixError::NotSquare(n, row.len()));
        }
    }
    if two_k % 2 != 0 {
        return Err(MatrixError::OddSize);
    }
    for i in 0..n {
        for j in i..n {
            if m[i][j] != m[j][i].neg() {
                return Err(MatrixError::NotSkewSymmetric);
            }
        }
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..two_k).collect();
    loop {
        out.push(pf_poly(m, &idx));
        // next combination
        let mut i = two_k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] != i + n - two_k {
                idx[i] += 1;
                for j in i + 1..two_k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn pf_poly(m: &[Vec<MPoly>], idx: &[usize]) -> MPoly {
    let vars = m[0][0].vars.clone();
    let field = m[0][0].field;
    if idx.is_empty() {
        return MPoly::constant(&vars, field.one());
    }
    let mut acc = MPoly::zero(&vars, field);
    let i = idx[0];
    for (t, &j) in idx.iter().enumerate().skip(1) {
        if m[i][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = m[i][j].mul(&pf_poly(m, &rest));
        if t % 2 == 1 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix<R: rand::Rng>(field: Field, n: usize, rng: &mut R) -> ExactMatrix {
        ExactMatrix::from_fn(field, n, n, |_, _| field.random(rng))
    }

    fn random_skew<R: rand::Rng>(field: Field, n: usize, rng: &mut R) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let s = field.random(rng);
                m[(i, j)] = s.clone();
                m[(j, i)] = -&s;
            }
        }
        m
    }

    #[test]
    fn rref_examples() {
        let f = Field::Rationals;
        let id = ExactMatrix::identity(f, 3);
        assert_eq!(id.rank(), 3);
        let z = ExactMatrix::zero(f, 4, 7);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rank_agrees_with_bareiss_minors() {
        // rank from rref matches the largest nonvanishing leading minor size
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = Field::prime(101).unwrap();
        for _ in 0..10 {
            let m = random_matrix(f, 5, &mut rng);
            let rank = m.rank();
            // determinant-based oracle over Q via lift: embed residues as integers
            let fq = Field::Rationals;
            let mq = ExactMatrix::from_fn(fq, 5, 5, |i, j| fq.from_i64(m[(i, j)].residue() as i64));
            // full-rank check: det mod 101 nonzero iff rank 5
            let d = mq.det().reduce_mod(101).unwrap();
            assert_eq!(rank == 5, !d.is_zero());
        }
    }

    #[test]
    fn pfaffian_small_cases() {
        let f = Field::Rationals;
        let a = f.from_i64(3);
        let mut m = ExactMatrix::zero(f, 2, 2);
        m[(0, 1)] = a.clone();
        m[(1, 0)] = -&a;
        assert_eq!(m.pfaffian().unwrap(), a);

        // 4x4 with upper entries (a,b,c,d,e,f): pf = af - be + cd
        let vals = [1i64, 2, 3, 4, 5, 6];
        let mut m = ExactMatrix::zero(f, 4, 4);
        let pos = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, &(i, j)) in pos.iter().enumerate() {
            m[(i, j)] = f.from_i64(vals[k]);
            m[(j, i)] = f.from_i64(-vals[k]);
        }
        // af - be + cd = 6 - 10 + 12 = 8
        assert_eq!(m.pfaffian().unwrap(), f.from_i64(8));
    }

    #[test]
    fn pfaffian_squared_is_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for field in [Field::Rationals, Field::prime(103).unwrap()] {
            for n in [4usize, 6, 10] {
                let m = random_skew(field, n, &mut rng);
                let pf = m.pfaffian().unwrap();
                assert_eq!(&pf * &pf, m.det());
            }
            // odd size is zero det, pfaffian rejected
            let m = random_skew(field, 5, &mut rng);
            assert_eq!(m.pfaffian(), Err(MatrixError::OddSize));
        }
    }

    #[test]
    fn pfaffian_congruence_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let f = Field::prime(101).unwrap();
        for _ in 0..5 {
            let m = random_skew(f, 6, &mut rng);
            let b = random_matrix(f, 6, &mut rng);
            let bt_m_b = b.transpose().mul(&m).mul(&b);
            assert_eq!(
                bt_m_b.pfaffian().unwrap(),
                &b.det() * &m.pfaffian().unwrap()
            );
        }
    }

    #[test]
    fn rank_stable_under_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let fq = Field::Rationals;
        for _ in 0..5 {
            let m = ExactMatrix::from_fn(fq, 4, 6, |_, _| fq.random(&mut rng));
            let r = m.rank();
            for p in [1009u64, 2003, 5003] {
                let mp = ExactMatrix::from_fn(Field::Prime(p), 4, 6, |i, j| {
                    m[(i, j)].reduce_mod(p).unwrap()
                });
                assert_eq!(mp.rank(), r);
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        let f = Field::Rationals;
        let id = ExactMatrix::identity(f, 2);
        let cp = id.char_poly("t").unwrap();
        // (t-1)^2 = t^2 - 2t + 1
        assert_eq!(cp.text(), "t^2 + (-2)*t + 1");

        let mut jordan = ExactMatrix::zero(f, 3, 3);
        jordan[(0, 1)] = f.one();
        jordan[(1, 2)] = f.one();
        assert_eq!(jordan.char_poly("t").unwrap().text(), "t^3");
    }

    #[test]
    fn char_poly_trace_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = Field::Rationals;
        for n in [3usize, 5] {
            let m = random_matrix(f, n, &mut rng);
            let cp = m.char_poly("t").unwrap();
            let tr = (0..n).fold(f.zero(), |acc, i| &acc + &m[(i, i)]);
            assert_eq!(cp.coeff(&Mono(vec![(n - 1) as u8])), -&tr);
            let sign = if n % 2 == 0 { f.one() } else { -&f.one() };
            assert_eq!(cp.coeff(&Mono(vec![0])), &sign * &m.det());
        }
    }

    #[test]
    fn quadric_rank_examples() {
        // x^2 + y^2 in 4 variables (P^3): rank 2
        let vars = VarSet::new(vec!["x", "y", "z", "w"]);
        let f = Field::Rationals;
        let x = MPoly::var(&vars, f, 0);
        let y = MPoly::var(&vars, f, 1);
        let q = x.mul(&x).add(&y.mul(&y));
        assert_eq!(QuadraticForm::from_mpoly(&q).rank(), 2);
    }

    #[test]
    fn pfaffian_ideal_generic_7x7() {
        // generic skew 7x7 with indeterminate entries has C(7,4) = 35 sub-Pfaffians
        let names: Vec<String> = (0..7)
            .flat_map(|i| (i + 1..7).map(move |j| format!("x{}{}", i, j)))
            .collect();
        let vars = VarSet::new(names);
        let f = Field::Rationals;
        let mut idx = 0;
        let mut m = vec![vec![MPoly::zero(&vars, f); 7]; 7];
        for i in 0..7 {
            for j in i + 1..7 {
                let v = MPoly::var(&vars, f, idx);
                idx += 1;
                m[i][j] = v.clone();
                m[j][i] = v.neg();
            }
        }
        let pfs = pfaffian_ideal(&m, 4).unwrap();
        assert_eq!(pfs.len(), 35);
        for p in &pfs {
            assert_eq!(p.homogeneous_degree(), Some(2));
            assert_eq!(p.num_terms(), 3);
        }
    }

    #[test]
    fn subspace_operations() {
        let f = Field::Rationals;
        let e = |i: usize| {
            let mut v = vec![f.zero(); 4];
            v[i] = f.one();
            v
        };
        let s = LinearSubspace::from_spanning(f, 4, vec![e(0), e(1)]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.annihilator().dim(), 2);
        let t = LinearSubspace::from_spanning(f, 4, vec![e(1), e(2)]);
        assert_eq!(s.intersect(&t).dim(), 1);
        assert_eq!(s.sum(&t).dim(), 3);
        assert!(s.contains(&e(0)));
        assert!(!s.contains(&e(2)));
        let c = s.coordinates_of(&e(1)).unwrap();
        assert_eq!(c, vec![f.zero(), f.one()]);
    }
}
