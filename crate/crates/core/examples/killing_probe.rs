use g2kit_core::g2::{adjoint_matrix, killing_quadric, LIE_LETTERS};
use g2kit_core::matrix::ExactMatrix;
use g2kit_core::scalar::Field;

fn main() {
    let f = Field::Rationals;
    // T[i][j] = tr(ad(e_i) ad(e_j))
    let ads: Vec<ExactMatrix> = (0..14)
        .map(|i| {
            let mut x = vec![f.zero(); 14];
            x[i] = f.one();
            adjoint_matrix(&x, f)
        })
        .collect();
    let mut t = ExactMatrix::zero(f, 14, 14);
    for i in 0..14 {
        for j in 0..14 {
            let prod = ads[i].mul(&ads[j]);
            t[(i, j)] = (0..14).fold(f.zero(), |acc, k| &acc + &prod[(k, k)]);
        }
    }
    println!("trace form (nonzero entries):");
    for i in 0..14 {
        for j in i..14 {
            if !t[(i, j)].is_zero() {
                println!("  ({},{}) = {}", LIE_LETTERS[i], LIE_LETTERS[j], t[(i, j)].text());
            }
        }
    }
    let q = killing_quadric(f);
    println!("declared Q (nonzero entries, doubled off-diagonal):");
    let qm = q.matrix();
    for i in 0..14 {
        for j in i..14 {
            if !qm[(i, j)].is_zero() {
                println!("  ({},{}) = {}", LIE_LETTERS[i], LIE_LETTERS[j], qm[(i, j)].text());
            }
        }
    }
}
