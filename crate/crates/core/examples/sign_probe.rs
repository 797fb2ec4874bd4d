use g2kit_core::g2::*;
use g2kit_core::matrix::ExactMatrix;
use g2kit_core::scalar::Field;

fn main() {
    let f = Field::Rationals;
    let pfs = p13_pfaffians(f);
    let (pos, neg) = nilpotent_coordinate_sets();
    let dirs: Vec<usize> = pos.iter().chain(neg.iter()).copied().collect();

    // precompute conjugated seed points for each single-coordinate direction
    let mut seed = vec![f.zero(); 14];
    seed[8] = f.one();
    let mut conj_pts = Vec::new();
    for &c in &dirs {
        let mut n = vec![f.zero(); 14];
        n[c] = f.one();
        let e = exp_lie(&n, f).unwrap();
        let e_inv = exp_lie(&n.iter().map(|x| -x).collect::<Vec<_>>(), f).unwrap();
        let conj = e.mul(&lie_matrix(&seed, f)).mul(&e_inv);
        conj_pts.push(extract_lie(&conj, f).unwrap());
        // also a two-step conjugation for a stronger test
        let mut n2 = vec![f.zero(); 14];
        n2[dirs[(c + 3) % dirs.len()]] = f.from_i64(2);
        let e2 = exp_lie(&n2, f).unwrap();
        let e2_inv = exp_lie(&n2.iter().map(|x| -x).collect::<Vec<_>>(), f).unwrap();
        let conj2 = e2.mul(&e.mul(&lie_matrix(&seed, f)).mul(&e_inv)).mul(&e2_inv);
        conj_pts.push(extract_lie(&conj2, f).unwrap());
    }

    let mut hits = Vec::new();
    for mask in 0u32..(1 << 13) {
        // sign vector with eps[0] = +1
        let eps: Vec<i64> = (0..14)
            .map(|i| {
                if i == 0 {
                    1
                } else if mask & (1 << (i - 1)) != 0 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        let ok = conj_pts.iter().all(|pt| {
            let mapped: Vec<_> = pt
                .iter()
                .enumerate()
                .map(|(i, v)| if eps[i] == 1 { v.clone() } else { -v })
                .collect();
            pfs.iter().all(|q| q.eval(&mapped).is_zero())
        });
        if ok {
            hits.push(eps);
        }
    }
    println!("{} sign vectors work", hits.len());
    for h in hits.iter().take(8) {
        let flipped: Vec<&str> = (0..14).filter(|&i| h[i] == -1).map(|i| LIE_LETTERS[i]).collect();
        println!("  flip: {:?}", flipped);
    }
    let _ = ExactMatrix::zero(f, 1, 1);
}
