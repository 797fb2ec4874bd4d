use g2kit_core::g2::*;
use g2kit_core::scalar::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = Field::Rationals;
    let pfs = p13_pfaffians(f);
    // seed alone
    let mut seed = vec![f.zero(); 14];
    seed[8] = f.one();
    let bad: Vec<usize> = pfs.iter().enumerate().filter(|(_, q)| !q.eval(&seed).is_zero()).map(|(i, _)| i).collect();
    println!("seed violations: {:?}", bad);

    // single positive exp conjugation with one coordinate
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (pos, neg) = nilpotent_coordinate_sets();
    println!("pos set: {:?}, neg set: {:?}", pos, neg);
    for &c in pos.iter().chain(neg.iter()) {
        let mut n = vec![f.zero(); 14];
        n[c] = f.one();
        let e = exp_lie(&n, f).unwrap();
        let e_inv = exp_lie(&n.iter().map(|x| -x).collect::<Vec<_>>(), f).unwrap();
        let conj = e.mul(&lie_matrix(&seed, f)).mul(&e_inv);
        match extract_lie(&conj, f) {
            Ok(pt) => {
                let viol = pfs.iter().filter(|q| !q.eval(&pt).is_zero()).count();
                println!("coord {}: extract ok, {} pfaffian violations", c, viol);
            }
            Err(err) => println!("coord {}: extract FAILED: {}", c, err),
        }
    }
    let _ = &mut rng;
}
