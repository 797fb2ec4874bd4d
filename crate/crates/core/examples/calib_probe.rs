// quick calibration probe (not committed)
use g2kit_core::exterior::plucker_ideal;
use g2kit_core::groebner::{buchberger, Budget};
use g2kit_core::hilbert::profile_of;

fn main() {
    for (k, n) in [(3usize, 6usize), (2, 7)] {
        let gens = plucker_ideal(k, n);
        for p in [101u64, 103, 107] {
            let t0 = std::time::Instant::now();
            let gens_p: Vec<_> = gens.iter().map(|g| g.reduce_mod(p).unwrap()).collect();
            let gb = buchberger(&gens_p, &Budget::default()).unwrap();
            let prof = profile_of(&gb);
            println!(
                "G({},{}) p={}: basis {} elems, {} reductions, projdim {:?}, degree {}, {:.2?}",
                k, n, p, gb.len(), gb.pair_reductions, prof.projective_dim, prof.degree,
                t0.elapsed()
            );
        }
    }
}
