use g2kit_core::g2::*;
use g2kit_core::poly::{graded_slice, substitute, MPoly, VarSet};
use g2kit_core::scalar::{Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = Field::prime(101).unwrap();
    let model = IsotropicModel::new(f);
    let vars = &model.vars;
    let killed = ["x06", "x16", "x26", "x36", "x46", "x56"];
    let keep: Vec<String> = vars.names().iter().filter(|nm| !killed.contains(&nm.as_str())).cloned().collect();
    let small = VarSet::new(keep.clone());
    println!("kept: {:?}", keep);
    let images: Vec<MPoly> = vars.names().iter().map(|nm| {
        if killed.contains(&nm.as_str()) { MPoly::zero(&small, f) }
        else { MPoly::var(&small, f, small.index_of(nm).unwrap()) }
    }).collect();
    let left: Vec<MPoly> = model.pfaffians.iter().map(|q| substitute(q, &images)).filter(|q| !q.is_zero()).collect();
    println!("{} reduced Pfaffians", left.len());

    // rank-1 traceless points: M = u v^T with u.v = 0, entries into x03..x25 grid
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let grid = [["x03","x04","x05"],["x13","x14","x15"],["x23","x24","x25"]];
    let mut fails = 0;
    for _ in 0..50 {
        let u: Vec<Scalar> = (0..3).map(|_| f.random(&mut rng)).collect();
        // v with u.v = 0: pick v = (a,b,c) solving
        let mut v = vec![f.random(&mut rng), f.random(&mut rng), f.zero()];
        if u[2].is_zero() { continue; }
        let dot = &(&u[0] * &v[0]) + &(&u[1] * &v[1]);
        v[2] = (-&dot).div(&u[2]).unwrap();
        let mut pt = vec![f.zero(); small.len()];
        for i in 0..3 { for j in 0..3 {
            pt[small.index_of(grid[i][j]).unwrap()] = &u[i] * &v[j];
        }}
        for q in &left {
            if !q.eval(&pt).is_zero() { fails += 1; break; }
        }
    }
    println!("points failing left ideal: {}/50ish", fails);

    // which minors are in the left slice?
    let vv = |name: &str| MPoly::var(&small, f, small.index_of(name).unwrap());
    let relation = vv("x03").add(&vv("x14")).add(&vv("x25"));
    let mut leftr = left.clone();
    leftr.push(relation.clone());
    let sl = graded_slice(&leftr, 2).unwrap();
    let m = |i: usize, j: usize| vv(grid[i][j]);
    for r1 in 0..3 { for r2 in r1+1..3 { for c1 in 0..3 { for c2 in c1+1..3 {
        let minor = m(r1,c1).mul(&m(r2,c2)).sub(&m(r1,c2).mul(&m(r2,c1)));
        let sm = graded_slice(&[minor.clone()], 2).unwrap();
        let inside = sl.stack(&sm).rank() == sl.rank();
        if !inside {
            println!("minor rows({},{}) cols({},{}) NOT in left slice", r1, r2, c1, c2);
        }
    }}}}
}
