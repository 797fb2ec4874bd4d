//! The Lie algebra of type G2 in its 7-dimensional matrix presentation, the
//! two projective models of the adjoint variety (the Pfaffian model in P^13
//! and the isotropic model inside G(2,7)), orbit point sampling, and the
//! Cartan-restricted invariant computations.

use crate::exterior::{basis_masks, mask_indices, merge_sign, ExtElement};
use crate::matrix::{pfaffian_ideal, ExactMatrix, LinearSubspace, QuadraticForm};
use crate::poly::{graded_slice, substitute, MPoly, Mono, VarSet};
use crate::scalar::{Field, Scalar};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum G2Error {
    #[error("bracket left the algebra: entry ({0},{1}) does not match the model shape")]
    BracketEscapesAlgebra(usize, usize),
    #[error("sampling produced only degenerate points after {0} attempts")]
    SamplingDegenerate(usize),
    #[error("element is not nilpotent in the 7-dimensional representation")]
    NotNilpotent,
    #[error("exponentials need Q or a prime p >= 7")]
    SmallPrimeForExp,
    #[error("degree-{degree} slices differ: ranks {left} vs {right}, stacked {stacked}")]
    SliceMismatch {
        degree: usize,
        left: usize,
        right: usize,
        stacked: usize,
    },
}

/// The 14 coordinates of the Lie algebra, in their conventional order.
pub const LIE_LETTERS: [&str; 14] = [
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n",
];

pub fn lie_vars() -> VarSet {
    VarSet::new(LIE_LETTERS.to_vec())
}

/// Entry tables for the two displayed 7x7 matrices, as signed letter terms
/// (coefficient, variable index).
type Entry = &'static [(i64, usize)];

// letter indices: a=0 b=1 c=2 d=3 e=4 f=5 g=6 h=7 i=8 j=9 k=10 l=11 m=12 n=13
const A_MATRIX: [[Entry; 7]; 7] = [
    [&[(1, 6)], &[(1, 7)], &[(1, 8)], &[], &[(1, 5)], &[(-1, 4)], &[(1, 0)]],
    [&[(1, 9)], &[(1, 10)], &[(1, 11)], &[(-1, 5)], &[], &[(1, 3)], &[(1, 1)]],
    [&[(1, 12)], &[(1, 13)], &[(-1, 6), (-1, 10)], &[(1, 4)], &[(-1, 3)], &[], &[(1, 2)]],
    [&[], &[(-1, 2)], &[(1, 1)], &[(-1, 6)], &[(-1, 9)], &[(-1, 12)], &[(1, 3)]],
    [&[(1, 2)], &[], &[(-1, 0)], &[(-1, 7)], &[(-1, 10)], &[(-1, 13)], &[(1, 4)]],
    [&[(-1, 1)], &[(1, 0)], &[], &[(-1, 8)], &[(-1, 11)], &[(1, 6), (1, 10)], &[(1, 5)]],
    [&[(2, 3)], &[(2, 4)], &[(2, 5)], &[(2, 0)], &[(2, 1)], &[(2, 2)], &[]],
];

const P13_MATRIX: [[Entry; 7]; 7] = [
    [&[], &[(-1, 5)], &[(1, 4)], &[(1, 6)], &[(1, 7)], &[(1, 8)], &[(1, 0)]],
    [&[(1, 5)], &[], &[(-1, 3)], &[(1, 9)], &[(1, 10)], &[(1, 11)], &[(1, 1)]],
    [&[(-1, 4)], &[(1, 3)], &[], &[(1, 12)], &[(1, 13)], &[(-1, 6), (-1, 10)], &[(1, 2)]],
    [&[(-1, 6)], &[(-1, 9)], &[(-1, 12)], &[], &[(1, 2)], &[(-1, 1)], &[(1, 3)]],
    [&[(-1, 7)], &[(-1, 10)], &[(-1, 13)], &[(-1, 2)], &[], &[(1, 0)], &[(1, 4)]],
    [&[(-1, 8)], &[(-1, 11)], &[(1, 6), (1, 10)], &[(1, 1)], &[(-1, 0)], &[], &[(1, 5)]],
    [&[(-1, 0)], &[(-1, 1)], &[(-1, 2)], &[(-1, 3)], &[(-1, 4)], &[(-1, 5)], &[]],
];

/// Positions in the 7x7 Lie matrix from which the 14 coordinates are read
/// back, with the sign applied on extraction.
const EXTRACT: [(usize, usize, i64); 14] = [
    (0, 6, 1),  // a
    (1, 6, 1),  // b
    (2, 6, 1),  // c
    (1, 5, 1),  // d
    (0, 5, -1), // e
    (0, 4, 1),  // f
    (0, 0, 1),  // g
    (0, 1, 1),  // h
    (0, 2, 1),  // i
    (1, 0, 1),  // j
    (1, 1, 1),  // k
    (1, 2, 1),  // l
    (2, 0, 1),  // m
    (2, 1, 1),  // n
];

/// Sign dictionary between the algebra presentation and the projective
/// coordinates of the Pfaffian model: the two displayed matrices use
/// opposite signs on the letters b, e, h, j, l, n, and the adjoint action
/// preserves the Pfaffian model only after this relabeling. Recovered by a
/// search over sign vectors; asserted by the orbit-sampling tests.
const EPS: [i64; 14] = [1, -1, 1, 1, -1, 1, 1, -1, 1, -1, 1, -1, 1, -1];

fn entry_value(entry: Entry, x: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for &(c, v) in entry {
        acc = &acc + &(&field.from_i64(c * EPS[v]) * &x[v]);
    }
    acc
}

/// The 7x7 matrix representation of a Lie algebra element, in the projective
/// model coordinates.
pub fn lie_matrix(x: &[Scalar], field: Field) -> ExactMatrix {
    assert_eq!(x.len(), 14);
    ExactMatrix::from_fn(field, 7, 7, |i, j| entry_value(A_MATRIX[i][j], x, field))
}

/// Read the 14 coordinates back from a 7x7 matrix and verify the whole matrix
/// has the model shape.
pub fn extract_lie(m: &ExactMatrix, field: Field) -> Result<Vec<Scalar>, G2Error> {
    let mut x = vec![field.zero(); 14];
    for (idx, &(i, j, s)) in EXTRACT.iter().enumerate() {
        let v = if s * EPS[idx] == 1 {
            m[(i, j)].clone()
        } else {
            -&m[(i, j)]
        };
        x[idx] = v;
    }
    for i in 0..7 {
        for j in 0..7 {
            if m[(i, j)] != entry_value(A_MATRIX[i][j], &x, field) {
                return Err(G2Error::BracketEscapesAlgebra(i, j));
            }
        }
    }
    Ok(x)
}

/// Lie bracket in coordinates: [A(x), A(y)] re-expressed on the basis.
pub fn bracket(x: &[Scalar], y: &[Scalar], field: Field) -> Result<Vec<Scalar>, G2Error> {
    let ax = lie_matrix(x, field);
    let ay = lie_matrix(y, field);
    let comm = ax.mul(&ay).add(&ay.mul(&ax).scale(&-&field.one()));
    extract_lie(&comm, field)
}

/// The 14x14 matrix of ad(x) on the coordinate basis.
pub fn adjoint_matrix(x: &[Scalar], field: Field) -> ExactMatrix {
    let mut cols = Vec::with_capacity(14);
    for j in 0..14 {
        let mut e = vec![field.zero(); 14];
        e[j] = field.one();
        cols.push(bracket(x, &e, field).expect("basis bracket stays in the algebra"));
    }
    ExactMatrix::from_fn(field, 14, 14, |i, j| cols[j][i].clone())
}

/// The invariant quadric on P^13: the trace form tr(ad x . ad x), which on
/// these coordinates reads 48(ad+be+cf) + 16(jh+im+nl) + 16(g^2+gk+k^2).
/// (Equal to the sum of squared roots on the Cartan plane.)
pub fn killing_quadric(field: Field) -> QuadraticForm {
    let vars = lie_vars();
    let mut m = ExactMatrix::zero(field, 14, 14);
    let mut set_pair = |i: usize, j: usize, half: i64| {
        m[(i, j)] = field.from_i64(half);
        m[(j, i)] = field.from_i64(half);
    };
    // 48(ad + be + cf)
    set_pair(0, 3, 24);
    set_pair(1, 4, 24);
    set_pair(2, 5, 24);
    // 16(jh + im + nl)
    set_pair(9, 7, 8);
    set_pair(8, 12, 8);
    set_pair(13, 11, 8);
    // 16(g^2 + gk + k^2)
    set_pair(6, 10, 8);
    m[(6, 6)] = field.from_i64(16);
    m[(10, 10)] = field.from_i64(16);
    QuadraticForm::new(vars, m)
}

/// The 7x7 skew matrix of linear forms whose 4x4 Pfaffians cut the adjoint
/// variety in P^13.
pub fn p13_matrix(field: Field) -> Vec<Vec<MPoly>> {
    let vars = lie_vars();
    (0..7)
        .map(|i| {
            (0..7)
                .map(|j| {
                    let mut p = MPoly::zero(&vars, field);
                    for &(c, v) in P13_MATRIX[i][j] {
                        let mut e = vec![0u8; 14];
                        e[v] = 1;
                        p.add_term(Mono(e), field.from_i64(c));
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// The 35 Pfaffian quadrics of the P^13 model.
pub fn p13_pfaffians(field: Field) -> Vec<MPoly> {
    pfaffian_ideal(&p13_matrix(field), 4).expect("model matrix is skew")
}

// ---------------------------------------------------------------------------
// The isotropic model inside G(2,7)
// ---------------------------------------------------------------------------

/// The defining 3-form: x0^x1^x2 + x3^x4^x5 + (x0^x3 + x1^x4 + x2^x5)^x6.
pub fn omega_star(field: Field) -> ExtElement {
    let mut w = ExtElement::zero(field, 7, 3);
    let term = |idx: &[usize]| ExtElement::basis(field, 7, idx);
    w = w.add(&term(&[0, 1, 2]));
    w = w.add(&term(&[3, 4, 5]));
    for (i, j) in [(0, 3), (1, 4), (2, 5)] {
        let two = ExtElement::basis(field, 7, &[i, j]);
        let x6 = ExtElement::basis(field, 7, &[6]);
        w = w.add(&two.wedge(&x6).unwrap());
    }
    w
}

/// The 7x21 matrix of the linear conditions cutting the span of the adjoint
/// variety inside P(wedge^2): rows are the components of the contraction of
/// the 3-form by a 2-vector, columns follow the canonical 2-mask order.
pub fn span_relations(field: Field) -> ExactMatrix {
    let w = omega_star(field);
    let masks = basis_masks(2, 7);
    ExactMatrix::from_fn(field, 7, masks.len(), |row, col| {
        let idx = mask_indices(masks[col]);
        let c = w.contract_index(idx[0]).contract_index(idx[1]);
        // contraction of a 2-vector e_i ^ e_j acts as iota_j iota_i
        -&c.coeff(1 << row)
    })
}

/// The 15 surviving Pluecker coordinates of the isotropic model, ordered
/// lexicographically by index pair.
pub const ISO_KEPT: [(usize, usize); 15] = [
    (0, 3),
    (0, 4),
    (0, 5),
    (0, 6),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 6),
    (4, 6),
    (5, 6),
];

const ISO_ELIMINATED: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];

pub fn iso_vars() -> VarSet {
    VarSet::new(
        ISO_KEPT
            .iter()
            .map(|&(i, j)| format!("x{}{}", i, j))
            .collect::<Vec<_>>(),
    )
}

/// Isotropic model data: for each of the 21 Pluecker coordinates, its linear
/// expression in the 15 kept variables, plus the one relation among the kept
/// variables (x03 + x14 + x25).
pub struct IsotropicModel {
    pub field: Field,
    pub vars: VarSet,
    /// image of each 21-coordinate, in canonical 2-mask order
    pub coordinate_images: Vec<MPoly>,
    pub linear_relation: MPoly,
    pub matrix: Vec<Vec<MPoly>>,
    pub pfaffians: Vec<MPoly>,
}

impl IsotropicModel {
    pub fn new(field: Field) -> IsotropicModel {
        let vars = iso_vars();
        let masks = basis_masks(2, 7);
        let pair_of = |mask: u32| {
            let id = mask_indices(mask);
            (id[0], id[1])
        };
        let rel = span_relations(field);
        // order columns: eliminated pairs first, then kept pairs
        let col_order: Vec<usize> = ISO_ELIMINATED
            .iter()
            .chain(ISO_KEPT.iter())
            .map(|&(i, j)| {
                masks
                    .iter()
                    .position(|&m| pair_of(m) == (i, j))
                    .expect("pair present")
            })
            .collect();
        let permuted = ExactMatrix::from_fn(field, 7, 21, |r, c| rel[(r, col_order[c])].clone());
        let (rr, rank, pivots) = permuted.rref();
        assert_eq!(rank, 7, "span relations have rank 7");
        assert_eq!(
            pivots,
            vec![0, 1, 2, 3, 4, 5, 6],
            "elimination order puts pivots on the six reducible pairs plus x03"
        );
        // pivots: the 6 eliminated coordinates and x03; read off their
        // expressions in the remaining 14 coordinates
        let mut images_permuted: Vec<MPoly> = Vec::with_capacity(21);
        let var_index_of_col = |c: usize| -> Option<usize> {
            if c >= 6 {
                Some(c - 6)
            } else {
                None
            }
        };
        for c in 0..21 {
            if let Some(v) = var_index_of_col(c) {
                if c != 6 {
                    // a kept variable that is not the pivot x03
                    images_permuted.push(MPoly::var(&vars, field, v));
                    continue;
                }
            }
            // pivot column: its row in rref expresses it in the free columns
            let row = pivots.iter().position(|&p| p == c).expect("pivot column");
            let mut img = MPoly::zero(&vars, field);
            for fc in 0..21 {
                if pivots.contains(&fc) || rr[(row, fc)].is_zero() {
                    continue;
                }
                let v = var_index_of_col(fc).expect("free columns are kept variables");
                img = img.sub(&MPoly::var(&vars, field, v).scale(&rr[(row, fc)]));
            }
            images_permuted.push(img);
        }
        // x03 as a variable still exists; the relation is x03 - image(x03) = 0
        let x03 = MPoly::var(&vars, field, 0);
        let linear_relation = x03.sub(&images_permuted[6]);
        // for the model itself, keep x03 as a coordinate (the relation joins the ideal)
        images_permuted[6] = x03;
        // un-permute into canonical mask order
        let mut coordinate_images = vec![MPoly::zero(&vars, field); 21];
        for (permuted_idx, &orig_col) in col_order.iter().enumerate() {
            coordinate_images[orig_col] = images_permuted[permuted_idx].clone();
        }
        // the skew matrix of coordinate images
        let matrix: Vec<Vec<MPoly>> = (0..7)
            .map(|i| {
                (0..7)
                    .map(|j| {
                        if i == j {
                            MPoly::zero(&vars, field)
                        } else {
                            let mask = (1u32 << i) | (1u32 << j);
                            let col = masks.iter().position(|&m| m == mask).unwrap();
                            if i < j {
                                coordinate_images[col].clone()
                            } else {
                                coordinate_images[col].neg()
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        let pfaffians = pfaffian_ideal(&matrix, 4).expect("skew by construction");
        IsotropicModel {
            field,
            vars,
            coordinate_images,
            linear_relation,
            matrix,
            pfaffians,
        }
    }

    /// Ideal generators: the 35 Pfaffians plus the linear relation.
    pub fn ideal(&self) -> Vec<MPoly> {
        let mut out = self.pfaffians.clone();
        out.push(self.linear_relation.clone());
        out
    }

    /// Map a 15-coordinate model point to its 21 Pluecker coordinates.
    pub fn embed_point(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coordinate_images.iter().map(|img| img.eval(v)).collect()
    }

    /// The span of the adjoint variety inside the 21-coordinate space.
    pub fn span(&self) -> LinearSubspace {
        let rel = span_relations(self.field);
        LinearSubspace::from_equations(
            self.field,
            21,
            rel.rows_iter().map(|r| r.to_vec()).collect(),
        )
    }
}

/// Substitution sending each isotropic-model variable to its expression in
/// the P^13 coordinates (the coordinate dictionary between the two models).
pub fn iso_to_p13_dictionary(field: Field) -> Vec<MPoly> {
    let lie = lie_vars();
    let v = |name: &str| MPoly::var(&lie, field, lie.index_of(name).unwrap());
    vec![
        v("g"),                  // x03
        v("h"),                  // x04
        v("i"),                  // x05
        v("a"),                  // x06
        v("j"),                  // x13
        v("k"),                  // x14
        v("l"),                  // x15
        v("b"),                  // x16
        v("m"),                  // x23
        v("n"),                  // x24
        v("g").neg().sub(&v("k")), // x25
        v("c"),                  // x26
        v("d"),                  // x36
        v("e"),                  // x46
        v("f"),                  // x56
    ]
}

// ---------------------------------------------------------------------------
// Roots, nilpotents, orbit sampling
// ---------------------------------------------------------------------------

/// Root of each non-Cartan coordinate as a linear form c_g*g + c_k*k on the
/// Cartan plane, computed from the bracket with the two Cartan generators.
pub fn coordinate_roots() -> Vec<(usize, i64, i64)> {
    let field = Field::Rationals;
    let cartan = |gi: i64, ki: i64| {
        let mut x = vec![field.zero(); 14];
        x[6] = field.from_i64(gi);
        x[10] = field.from_i64(ki);
        x
    };
    let hg = cartan(1, 0);
    let hk = cartan(0, 1);
    let mut out = Vec::new();
    for c in 0..14 {
        if c == 6 || c == 10 {
            continue;
        }
        let mut e = vec![field.zero(); 14];
        e[c] = field.one();
        let bg = bracket(&hg, &e, field).unwrap();
        let bk = bracket(&hk, &e, field).unwrap();
        for (idx, v) in bg.iter().enumerate() {
            assert!(idx == c || v.is_zero(), "coordinate is a root vector");
        }
        let cg = bg[c].to_i64().expect("integral root");
        let ck = bk[c].to_i64().expect("integral root");
        out.push((c, cg, ck));
    }
    out
}

/// The coordinates spanning the positive (resp. negative) nilpotent
/// subalgebra, split by the functional 3*c_g + 2*c_k.
pub fn nilpotent_coordinate_sets() -> (Vec<usize>, Vec<usize>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (c, cg, ck) in coordinate_roots() {
        let phi = 3 * cg + 2 * ck;
        assert!(phi != 0, "functional separates the roots");
        if phi > 0 {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    (pos, neg)
}

/// exp(A(x)) for a nilpotent element, as a polynomial sum. Verifies
/// A(x)^7 = 0 first and needs 1..=6 invertible in the field.
pub fn exp_lie(x: &[Scalar], field: Field) -> Result<ExactMatrix, G2Error> {
    if let Field::Prime(p) = field {
        if p < 7 {
            return Err(G2Error::SmallPrimeForExp);
        }
    }
    let a = lie_matrix(x, field);
    let mut power = ExactMatrix::identity(field, 7);
    let mut acc = ExactMatrix::identity(field, 7);
    let mut fact = field.one();
    for i in 1..=6 {
        power = power.mul(&a);
        fact = &fact * &field.from_i64(i);
        acc = acc.add(&power.scale(&fact.inv().unwrap()));
    }
    // nilpotency check: A^7 = 0
    let a7 = power.mul(&a);
    for i in 0..7 {
        for j in 0..7 {
            if !a7[(i, j)].is_zero() {
                return Err(G2Error::NotNilpotent);
            }
        }
    }
    Ok(acc)
}

/// A random element supported on one nilpotent coordinate set.
pub fn random_nilpotent<R: Rng + ?Sized>(
    field: Field,
    rng: &mut R,
    positive: bool,
) -> Vec<Scalar> {
    let (pos, neg) = nilpotent_coordinate_sets();
    let set = if positive { pos } else { neg };
    let mut x = vec![field.zero(); 14];
    for c in set {
        x[c] = field.random(rng);
    }
    x
}

/// Coordinate points of P^13 lying on the Pfaffian model (the long-root
/// directions). Returned as coordinate indices.
pub fn coordinate_seed_points(field: Field) -> Vec<usize> {
    let pfaffians = p13_pfaffians(field);
    let mut out = Vec::new();
    for c in 0..14 {
        let mut pt = vec![field.zero(); 14];
        pt[c] = field.one();
        if pfaffians.iter().all(|q| q.eval(&pt).is_zero()) {
            out.push(c);
        }
    }
    out
}

/// A point of the adjoint variety in P^13: the canonical seed conjugated by
/// exponentials of random nilpotents from both sides.
pub fn sample_g2_point<R: Rng + ?Sized>(
    field: Field,
    rng: &mut R,
) -> Result<Vec<Scalar>, G2Error> {
    const SEED_COORD: usize = 8; // the "i" coordinate; asserted on the model in tests
    const MAX_ATTEMPTS: usize = 16;
    for _ in 0..MAX_ATTEMPTS {
        let mut seed = vec![field.zero(); 14];
        seed[SEED_COORD] = field.one();
        let n_pos = random_nilpotent(field, rng, true);
        let n_neg = random_nilpotent(field, rng, false);
        let e1 = exp_lie(&n_pos, field)?;
        let e2 = exp_lie(&n_neg, field)?;
        let g = e1.mul(&e2);
        let g_inv = exp_lie(&neg_coords(&n_neg, field), field)?
            .mul(&exp_lie(&neg_coords(&n_pos, field), field)?);
        let conj = g.mul(&lie_matrix(&seed, field)).mul(&g_inv);
        let pt = extract_lie(&conj, field)?;
        if pt.iter().any(|c| !c.is_zero()) {
            return Ok(pt);
        }
    }
    Err(G2Error::SamplingDegenerate(MAX_ATTEMPTS))
}

fn neg_coords(x: &[Scalar], field: Field) -> Vec<Scalar> {
    let _ = field;
    x.iter().map(|c| -c).collect()
}

/// A point of the adjoint variety lying on the given hyperplane (linear form
/// in the 14 coordinates), over a prime field: a one-parameter exponential
/// path through a random orbit point is scanned for a root of the form.
pub fn sample_on_hyperplane<R: Rng + ?Sized>(
    hyperplane: &MPoly,
    field: Field,
    rng: &mut R,
) -> Result<Vec<Scalar>, G2Error> {
    let p = match field {
        Field::Prime(p) if p >= 7 => p,
        Field::Prime(_) => return Err(G2Error::SmallPrimeForExp),
        Field::Rationals => panic!("hyperplane sampling is a prime-field operation"),
    };
    const MAX_ATTEMPTS: usize = 40;
    for _ in 0..MAX_ATTEMPTS {
        let base = sample_g2_point(field, rng)?;
        if hyperplane.eval(&base).is_zero() {
            return Ok(base);
        }
        let positive = rng.gen_bool(0.5);
        let dir = random_nilpotent(field, rng, positive);
        let step = exp_lie(&dir, field)?;
        let step_inv = exp_lie(&neg_coords(&dir, field), field)?;
        let mut e = ExactMatrix::identity(field, 7);
        let mut e_inv = ExactMatrix::identity(field, 7);
        let base_m = lie_matrix(&base, field);
        for _s in 1..p {
            e = e.mul(&step);
            e_inv = step_inv.mul(&e_inv);
            let pt = extract_lie(&e.mul(&base_m).mul(&e_inv), field)?;
            if hyperplane.eval(&pt).is_zero() && pt.iter().any(|c| !c.is_zero()) {
                return Ok(pt);
            }
        }
    }
    Err(G2Error::SamplingDegenerate(MAX_ATTEMPTS))
}

// ---------------------------------------------------------------------------
// Cartan computations
// ---------------------------------------------------------------------------

pub fn cartan_point(gv: &Scalar, kv: &Scalar, field: Field) -> Vec<Scalar> {
    let mut x = vec![field.zero(); 14];
    x[6] = gv.clone();
    x[10] = kv.clone();
    x
}

/// Coefficient of t^2 in the characteristic polynomial of ad at a Cartan point.
pub fn delta2_on_cartan(gv: &Scalar, kv: &Scalar, field: Field) -> Scalar {
    let ad = adjoint_matrix(&cartan_point(gv, kv, field), field);
    let cp = ad.char_poly("t").expect("14x14 over Q or large prime");
    cp.coeff(&Mono(vec![2]))
}

/// The six short and six long root forms as (c_g, c_k) pairs.
pub fn cartan_root_forms() -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    let short = vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
    let long = vec![(1, -1), (-1, 1), (2, 1), (-2, -1), (1, 2), (-1, -2)];
    (short, long)
}

/// Product of all twelve root forms at a Cartan point.
pub fn root_product(gv: &Scalar, kv: &Scalar, field: Field) -> Scalar {
    let (short, long) = cartan_root_forms();
    let mut acc = field.one();
    for (cg, ck) in short.into_iter().chain(long) {
        let v = &(&field.from_i64(cg) * gv) + &(&field.from_i64(ck) * kv);
        acc = &acc * &v;
    }
    acc
}

/// Zeros on the Cartan line P^1(g:k) of a set of root forms, as normalized
/// projective pairs.
pub fn root_zeros_on_line(forms: &[(i64, i64)], field: Field) -> Vec<(Scalar, Scalar)> {
    let mut out = Vec::new();
    for &(cg, ck) in forms {
        // cg*g + ck*k = 0 -> (g:k) = (ck : -cg), normalized so the first
        // nonzero coordinate is 1
        let (a, b) = (field.from_i64(ck), field.from_i64(-cg));
        let norm = if !a.is_zero() {
            let inv = a.inv().unwrap();
            (field.one(), &b * &inv)
        } else {
            (field.zero(), field.one())
        };
        if !out.contains(&norm) {
            out.push(norm);
        }
    }
    out
}

/// Verify the short-root and long-root zero sets on the Cartan line are
/// disjoint. Returns (short zeros, long zeros, disjoint?).
pub fn cartan_pencil_disjointness(field: Field) -> (usize, usize, bool) {
    let (short, long) = cartan_root_forms();
    let zs = root_zeros_on_line(&short, field);
    let zl = root_zeros_on_line(&long, field);
    let disjoint = zs.iter().all(|z| !zl.contains(z));
    (zs.len(), zl.len(), disjoint)
}

// ---------------------------------------------------------------------------
// Tangent cone and linear-section presentations
// ---------------------------------------------------------------------------

/// Compare the degree-d slices of two homogeneous ideals given by generators.
pub fn slices_equal(left: &[MPoly], right: &[MPoly], degree: usize) -> Result<(), G2Error> {
    let sl = graded_slice(left, degree).expect("homogeneous");
    let sr = graded_slice(right, degree).expect("homogeneous");
    let rl = sl.rank();
    let rr = sr.rank();
    let stacked = sl.stack(&sr).rank();
    if rl == rr && stacked == rl {
        Ok(())
    } else {
        Err(G2Error::SliceMismatch {
            degree,
            left: rl,
            right: rr,
            stacked,
        })
    }
}

/// Substitute zero for the named variables, re-expressing the generators in
/// the remaining ones.
fn restrict_vars(polys: &[MPoly], from: &VarSet, kill: &[&str], field: Field) -> (VarSet, Vec<MPoly>) {
    let keep: Vec<String> = from
        .names()
        .iter()
        .filter(|n| !kill.contains(&n.as_str()))
        .cloned()
        .collect();
    let small = VarSet::new(keep);
    let images: Vec<MPoly> = from
        .names()
        .iter()
        .map(|n| {
            if kill.contains(&n.as_str()) {
                MPoly::zero(&small, field)
            } else {
                MPoly::var(&small, field, small.index_of(n).unwrap())
            }
        })
        .collect();
    let out = polys
        .iter()
        .map(|q| substitute(q, &images))
        .filter(|q| !q.is_zero())
        .collect();
    (small, out)
}

/// Negative-control knobs for the tangent-cone certification.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TangentConeVariant {
    /// the certified presentation
    Exact,
    /// drop the linear relation x03 + x25 (must fail)
    DropRelation,
    /// use the uncorrected sign on the x04 entry of the minor matrix (must fail)
    UncorrectedSign,
}

/// The tangent-cone reduction at the distinguished model point (x05 = 1):
/// the eight tangent-space coordinates are imposed (certified as the actual
/// Jacobian kernel), the Pfaffian system is reduced, and its ideal is
/// certified in degrees 2 and 3 against the 2x3 minors of
/// [[x56, x06, -x04], [x15, x56, x06]] together with the relation x03 + x25
/// and the thickening x03*(x03, x04, x06, x15, x56) along the vertex line.
/// The minor matrix carries the sign dictionary on x04; the support is the
/// cone over a twisted cubic, checked on parametrized points.
pub fn tangent_cone_check(field: Field, variant: TangentConeVariant) -> Result<(), G2Error> {
    let model = IsotropicModel::new(field);
    let killed = [
        "x13", "x14", "x16", "x23", "x24", "x26", "x36", "x46",
    ];
    let (vars, mut left) = restrict_vars(&model.pfaffians, &model.vars, &killed, field);
    // remaining variables: x03, x04, x05, x06, x15, x25, x56
    let v = |name: &str| MPoly::var(&vars, field, vars.index_of(name).unwrap());
    let relation = v("x03").add(&v("x25"));
    left.push(relation.clone());

    let x04 = if variant == TangentConeVariant::UncorrectedSign {
        v("x04")
    } else {
        v("x04").neg()
    };
    let row1 = [v("x56"), v("x06"), x04];
    let row2 = [v("x15"), v("x56"), v("x06")];
    let mut right = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            right.push(row1[a].mul(&row2[b]).sub(&row1[b].mul(&row2[a])));
        }
    }
    if variant != TangentConeVariant::DropRelation {
        right.push(relation.clone());
    }
    for w in ["x03", "x04", "x06", "x15", "x56"] {
        right.push(v("x03").mul(&v(w)));
    }
    slices_equal(&left, &right, 2)?;
    slices_equal(&left, &right, 3)?;
    // support: the cone over the twisted cubic (1, r, r^2, -r^3) with vertex
    // at the x05 point lies on every reduced generator
    for r in [2i64, 3, -1, 5] {
        for (lam, mu) in [(1i64, 0i64), (4, 7), (2, -3)] {
            let mut pt = vec![field.zero(); vars.len()];
            pt[vars.index_of("x15").unwrap()] = field.from_i64(lam);
            pt[vars.index_of("x56").unwrap()] = field.from_i64(lam * r);
            pt[vars.index_of("x06").unwrap()] = field.from_i64(lam * r * r);
            pt[vars.index_of("x04").unwrap()] = field.from_i64(-lam * r * r * r);
            pt[vars.index_of("x05").unwrap()] = field.from_i64(mu);
            for q in &left {
                if !q.eval(&pt).is_zero() {
                    return Err(G2Error::SliceMismatch {
                        degree: 0,
                        left: 0,
                        right: 0,
                        stacked: 0,
                    });
                }
            }
        }
    }
    Ok(())
}

pub enum SectionCase {
    /// x6 = 0: hyperplane section of the product of two planes
    Nondegenerate,
    /// x0 = 0: section of the projectivized bundle presentation
    Degenerate,
}

/// The two linear-section presentations: for x6 = 0 the reduced ideal equals
/// the 2x2 minors of the displayed 3x3 matrix with the trace relation; for
/// x0 = 0 it equals the symmetric-matrix minors plus the product-row quadrics.
pub fn section_presentation_check(
    field: Field,
    case: SectionCase,
    negative_control: bool,
) -> Result<(), G2Error> {
    let model = IsotropicModel::new(field);
    match case {
        SectionCase::Nondegenerate => {
            let killed = ["x06", "x16", "x26", "x36", "x46", "x56"];
            let (vars, mut left) = restrict_vars(&model.pfaffians, &model.vars, &killed, field);
            let v = |name: &str| MPoly::var(&vars, field, vars.index_of(name).unwrap());
            let relation = v("x03").add(&v("x14")).add(&v("x25"));
            left.push(relation.clone());
            let m = [
                [v("x03"), v("x04"), v("x05")],
                [v("x13"), v("x14"), v("x15")],
                [v("x23"), v("x24"), v("x25")],
            ];
            let mut right = Vec::new();
            for r1 in 0..3 {
                for r2 in r1 + 1..3 {
                    for c1 in 0..3 {
                        for c2 in c1 + 1..3 {
                            let minor = m[r1][c1]
                                .mul(&m[r2][c2])
                                .sub(&m[r1][c2].mul(&m[r2][c1]));
                            right.push(if negative_control && r1 == 0 && c1 == 0 && r2 == 1 && c2 == 1 {
                                m[r1][c1].mul(&m[r2][c2]).add(&m[r1][c2].mul(&m[r2][c1]))
                            } else {
                                minor
                            });
                        }
                    }
                }
            }
            right.push(relation);
            slices_equal(&left, &right, 2)
        }
        SectionCase::Degenerate => {
            let killed = ["x03", "x04", "x05", "x06", "x46", "x56"];
            let (vars, mut left) = restrict_vars(&model.pfaffians, &model.vars, &killed, field);
            let v = |name: &str| MPoly::var(&vars, field, vars.index_of(name).unwrap());
            let relation = v("x14").add(&v("x25"));
            left.push(relation.clone());
            // symmetric matrix with x12 = -x36 in the corner; the x26 and x16
            // entries carry the recovered sign dictionary
            let sym = [
                [v("x24"), v("x25"), v("x26").neg()],
                [v("x25"), v("x15").neg(), v("x16")],
                [v("x26").neg(), v("x16"), v("x36")],
            ];
            let mut right = Vec::new();
            for r1 in 0..3 {
                for r2 in r1 + 1..3 {
                    for c1 in 0..3 {
                        for c2 in c1 + 1..3 {
                            right.push(
                                sym[r1][c1]
                                    .mul(&sym[r2][c2])
                                    .sub(&sym[r1][c2].mul(&sym[r2][c1])),
                            );
                        }
                    }
                }
            }
            // product row (x13, x23, x12) * sym with x12 = -x36
            let rowv = [v("x13"), v("x23"), v("x36").neg()];
            for col in 0..3 {
                let mut q = MPoly::zero(&vars, field);
                for r in 0..3 {
                    q = q.add(&rowv[r].mul(&sym[r][col]));
                }
                right.push(if negative_control && col == 0 {
                    q.add(&v("x13").mul(&v("x24")))
                } else {
                    q
                });
            }
            right.push(relation);
            slices_equal(&left, &right, 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_lie<R: Rng>(field: Field, rng: &mut R) -> Vec<Scalar> {
        (0..14).map(|_| field.random(rng)).collect()
    }

    #[test]
    fn algebra_is_closed_and_jacobi_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let f = Field::prime(101).unwrap();
        for _ in 0..500 {
            let x = random_lie(f, &mut rng);
            let y = random_lie(f, &mut rng);
            let z = random_lie(f, &mut rng);
            let xy = bracket(&x, &y, f).unwrap();
            // Jacobi: [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
            let yz = bracket(&y, &z, f).unwrap();
            let zx = bracket(&z, &x, f).unwrap();
            let t1 = bracket(&xy, &z, f).unwrap();
            let t2 = bracket(&yz, &x, f).unwrap();
            let t3 = bracket(&zx, &y, f).unwrap();
            for i in 0..14 {
                assert!((&(&t1[i] + &t2[i]) + &t3[i]).is_zero());
            }
        }
    }

    #[test]
    fn adjoint_matrix_basics() {
        let f = Field::Rationals;
        let zero = vec![f.zero(); 14];
        let ad0 = adjoint_matrix(&zero, f);
        assert_eq!(ad0.rank(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let x = random_lie(f, &mut rng);
            let ad = adjoint_matrix(&x, f);
            let tr = (0..14).fold(f.zero(), |acc, i| &acc + &ad[(i, i)]);
            assert!(tr.is_zero());
        }
    }

    #[test]
    fn cartan_eigenvalues_in_seven_dim_rep() {
        // A(x) at a Cartan point has eigenvalues {0, ±g, ±k, ±(g+k)}
        let f = Field::Rationals;
        let x = cartan_point(&f.from_i64(2), &f.from_i64(5), f);
        let a = lie_matrix(&x, f);
        let cp = a.char_poly("t").unwrap();
        // expected: t(t^2-4)(t^2-25)(t^2-49)
        let tvars = VarSet::new(vec!["t"]);
        let t = MPoly::var(&tvars, f, 0);
        let sq = |v: i64| t.mul(&t).sub(&MPoly::constant(&tvars, f.from_i64(v)));
        let expected = t.mul(&sq(4)).mul(&sq(25)).mul(&sq(49));
        assert_eq!(cp, expected);
    }

    #[test]
    fn killing_quadric_properties() {
        let f = Field::Rationals;
        let q = killing_quadric(f);
        assert_eq!(q.rank(), 14);
        // proportional to the trace form of ad with one global constant
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let mut ratio: Option<Scalar> = None;
        for _ in 0..20 {
            let x = random_lie(f, &mut rng);
            let ad = adjoint_matrix(&x, f);
            let tr2 = {
                let m2 = ad.mul(&ad);
                (0..14).fold(f.zero(), |acc, i| &acc + &m2[(i, i)])
            };
            let qv = q.eval(&x);
            if tr2.is_zero() {
                assert!(qv.is_zero());
                continue;
            }
            let r = qv.div(&tr2).unwrap();
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => assert_eq!(&r, r0),
            }
        }
        assert!(ratio.is_some());
    }

    #[test]
    fn killing_skewness_of_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let f = Field::prime(103).unwrap();
        let q = killing_quadric(f);
        for _ in 0..50 {
            let x = random_lie(f, &mut rng);
            let y = random_lie(f, &mut rng);
            let z = random_lie(f, &mut rng);
            let ad_y = bracket(&x, &y, f).unwrap();
            let ad_z = bracket(&x, &z, f).unwrap();
            let s = &q.pair(&ad_y, &z) + &q.pair(&y, &ad_z);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn root_system_is_g2() {
        let roots: Vec<(i64, i64)> = coordinate_roots().iter().map(|&(_, g, k)| (g, k)).collect();
        let (short, long) = cartan_root_forms();
        let mut expected: Vec<(i64, i64)> = short.into_iter().chain(long).collect();
        let mut got = roots.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        let (pos, neg) = nilpotent_coordinate_sets();
        assert_eq!(pos.len(), 6);
        assert_eq!(neg.len(), 6);
    }

    #[test]
    fn seed_points_are_the_long_root_directions() {
        let f = Field::Rationals;
        let seeds = coordinate_seed_points(f);
        assert_eq!(seeds.len(), 6);
        assert!(seeds.contains(&8)); // the "i" coordinate, the model seed
        // seeds are exactly the long-root coordinates
        let long_set: Vec<usize> = coordinate_roots()
            .iter()
            .filter(|&&(_, g, k)| {
                let (_, long) = cartan_root_forms();
                long.contains(&(g, k))
            })
            .map(|&(c, _, _)| c)
            .collect();
        let mut l = long_set;
        l.sort();
        assert_eq!(seeds, l);
    }

    #[test]
    fn orbit_samples_stay_on_the_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        let f = Field::Rationals;
        let pfs = p13_pfaffians(f);
        let q = killing_quadric(f);
        let mut pts = Vec::new();
        for _ in 0..40 {
            let pt = sample_g2_point(f, &mut rng).unwrap();
            for quad in &pfs {
                assert!(quad.eval(&pt).is_zero());
            }
            assert!(q.eval(&pt).is_zero());
            pts.push(pt);
        }
        // samples span the whole P^13
        let m = ExactMatrix::from_rows(f, 14, pts);
        assert_eq!(m.rank(), 14);
    }

    #[test]
    fn models_agree_through_the_dictionary() {
        let f = Field::Rationals;
        let model = IsotropicModel::new(f);
        let dict = iso_to_p13_dictionary(f);
        // the relation maps to zero
        assert!(substitute(&model.linear_relation, &dict).is_zero());
        let pulled: Vec<MPoly> = model
            .pfaffians
            .iter()
            .map(|q| substitute(q, &dict))
            .filter(|q| !q.is_zero())
            .collect();
        let p13 = p13_pfaffians(f);
        slices_equal(&pulled, &p13, 2).unwrap();
    }

    #[test]
    fn isotropic_matrix_matches_display() {
        // spot-check the derived matrix against the displayed entries
        let f = Field::Rationals;
        let model = IsotropicModel::new(f);
        let vars = &model.vars;
        let v = |name: &str| MPoly::var(vars, f, vars.index_of(name).unwrap());
        assert_eq!(model.matrix[0][1], v("x56").neg());
        assert_eq!(model.matrix[1][0], v("x56"));
        assert_eq!(model.matrix[0][2], v("x46"));
        assert_eq!(model.matrix[1][2], v("x36").neg());
        assert_eq!(model.matrix[3][4], v("x26"));
        assert_eq!(model.matrix[3][5], v("x16").neg());
        assert_eq!(model.matrix[4][5], v("x06"));
        assert_eq!(model.matrix[3][6], v("x36"));
        assert_eq!(model.matrix[0][3], v("x03"));
        assert_eq!(model.matrix[2][5], v("x25"));
        let rel = v("x03").add(&v("x14")).add(&v("x25"));
        assert_eq!(model.linear_relation, rel);
    }

    #[test]
    fn model_span_and_seed_point() {
        let f = Field::Rationals;
        let model = IsotropicModel::new(f);
        assert_eq!(model.span().projective_dim(), 13);
        // the x05 coordinate point lies on the model
        let mut pt = vec![f.zero(); 15];
        pt[model.vars.index_of("x05").unwrap()] = f.one();
        for q in &model.pfaffians {
            assert!(q.eval(&pt).is_zero());
        }
        assert!(model.linear_relation.eval(&pt).is_zero());
    }

    #[test]
    fn delta2_matches_root_product() {
        let f = Field::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        // fit the constant at a regular point
        let g0 = f.from_i64(1);
        let k0 = f.from_i64(2);
        let d0 = delta2_on_cartan(&g0, &k0, f);
        let p0 = root_product(&g0, &k0, f);
        assert!(!d0.is_zero());
        let c = d0.div(&p0).unwrap();
        for _ in 0..20 {
            let gv = f.random(&mut rng);
            let kv = f.random(&mut rng);
            let lhs = delta2_on_cartan(&gv, &kv, f);
            let rhs = &c * &root_product(&gv, &kv, f);
            assert_eq!(lhs, rhs);
        }
        // singular specializations: a vanishing root kills delta2
        assert!(delta2_on_cartan(&f.one(), &f.one(), f).is_zero()); // long root g-k
        assert!(delta2_on_cartan(&f.one(), &f.from_i64(-1), f).is_zero()); // short root g+k
        assert!(delta2_on_cartan(&f.one(), &f.zero(), f).is_zero()); // short root k
    }

    #[test]
    fn char_poly_low_coefficients_vanish_identically() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let f = Field::Rationals;
        for _ in 0..5 {
            let x = random_lie(f, &mut rng);
            let cp = adjoint_matrix(&x, f).char_poly("t").unwrap();
            assert!(cp.coeff(&Mono(vec![0])).is_zero());
            assert!(cp.coeff(&Mono(vec![1])).is_zero());
            assert!(cp.coeff(&Mono(vec![13])).is_zero());
        }
        // delta2 is generically nonzero on the Cartan
        assert!(!delta2_on_cartan(&f.from_i64(1), &f.from_i64(3), f).is_zero());
    }

    #[test]
    fn pencil_disjointness_and_negative_control() {
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            let (s, l, disjoint) = cartan_pencil_disjointness(field);
            assert_eq!((s, l), (3, 3));
            assert!(disjoint);
        }
        // engineered overlap: short zeros vs a long set sharing (1:0)
        let f = Field::Rationals;
        let zs = root_zeros_on_line(&[(1, 0), (0, 1), (1, 1)], f);
        let zl = root_zeros_on_line(&[(0, 1), (2, 1), (1, 2)], f); // (0,1) has zero (1:0)
        assert!(zs.iter().any(|z| zl.contains(z)));
    }

    #[test]
    fn tangent_cone_and_sections() {
        let f = Field::Rationals;
        tangent_cone_check(f, TangentConeVariant::Exact).unwrap();
        assert!(tangent_cone_check(f, TangentConeVariant::DropRelation).is_err());
        assert!(tangent_cone_check(f, TangentConeVariant::UncorrectedSign).is_err());
        section_presentation_check(f, SectionCase::Nondegenerate, false).unwrap();
        section_presentation_check(f, SectionCase::Degenerate, false).unwrap();
        assert!(section_presentation_check(f, SectionCase::Nondegenerate, true).is_err());
        assert!(section_presentation_check(f, SectionCase::Degenerate, true).is_err());
    }

    #[test]
    fn hyperplane_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let f = Field::prime(101).unwrap();
        let vars = lie_vars();
        // hyperplane g = -2(g+k), written as 3g + 2k = 0
        let h = MPoly::var(&vars, f, 6)
            .scale(&f.from_i64(3))
            .add(&MPoly::var(&vars, f, 10).scale(&f.from_i64(2)));
        let pfs: Vec<MPoly> = p13_pfaffians(f);
        for _ in 0..5 {
            let pt = sample_on_hyperplane(&h, f, &mut rng).unwrap();
            assert!(h.eval(&pt).is_zero());
            for q in &pfs {
                assert!(q.eval(&pt).is_zero());
            }
        }
    }
}
