use g2kit_core::g2::*;
use g2kit_core::poly::{graded_slice, substitute, MPoly, VarSet};
use g2kit_core::scalar::Field;

fn main() {
    let f = Field::prime(101).unwrap();
    let model = IsotropicModel::new(f);
    let vars = &model.vars;
    let killed = ["x03", "x04", "x05", "x06", "x46", "x56"];
    let keep: Vec<String> = vars.names().iter().filter(|nm| !killed.contains(&nm.as_str())).cloned().collect();
    let small = VarSet::new(keep.clone());
    let images: Vec<MPoly> = vars.names().iter().map(|nm| {
        if killed.contains(&nm.as_str()) { MPoly::zero(&small, f) }
        else { MPoly::var(&small, f, small.index_of(nm).unwrap()) }
    }).collect();
    let mut left: Vec<MPoly> = model.pfaffians.iter().map(|q| substitute(q, &images)).filter(|q| !q.is_zero()).collect();
    let v = |name: &str| MPoly::var(&small, f, small.index_of(name).unwrap());
    let relation = v("x14").add(&v("x25"));
    left.push(relation.clone());
    let sl = graded_slice(&left, 2).unwrap();
    println!("left rank: {}", sl.rank());

    // search sign patterns for the sym-matrix entries and product row
    // entries: s = [x24, x25, x26, x15, x16, x36corner] signs; row = [x13, x23, x36row]
    let mk_right = |sg: &[i64]| -> Vec<MPoly> {
        let e = |name: &str, s: i64| v(name).scale(&f.from_i64(s));
        let sym = [
            [e("x24", sg[0]), e("x25", sg[1]), e("x26", sg[2])],
            [e("x25", sg[1]), e("x15", -sg[3]), e("x16", -sg[4])],
            [e("x26", sg[2]), e("x16", -sg[4]), e("x36", sg[5])],
        ];
        let mut right = Vec::new();
        for r1 in 0..3 { for r2 in r1..3 { for c1 in 0..3 { for c2 in c1..3 {
            if r1 == r2 && c1 == c2 { continue; }
            if r1 < r2 && c1 < c2 {
                right.push(sym[r1][c1].mul(&sym[r2][c2]).sub(&sym[r1][c2].mul(&sym[r2][c1])));
            }
        }}}}
        let rowv = [e("x13", sg[6]), e("x23", sg[7]), e("x36", -sg[8])];
        for col in 0..3 {
            let mut q = MPoly::zero(&small, f);
            for r in 0..3 {
                q = q.add(&rowv[r].mul(&sym[r][col]));
            }
            right.push(q);
        }
        right.push(relation.clone());
        right
    };
    let mut found = 0;
    for mask in 0u32..512 {
        let sg: Vec<i64> = (0..9).map(|k| if mask & (1 << k) != 0 { -1 } else { 1 }).collect();
        let right = mk_right(&sg);
        let sr = graded_slice(&right, 2).unwrap();
        if sr.rank() == sl.rank() && sl.stack(&sr).rank() == sl.rank() {
            println!("signs {:?} work, rank {}", sg, sr.rank());
            found += 1;
            if found > 5 { break; }
        }
    }
    if found == 0 {
        println!("no sign pattern works; membership report for the printed signs:");
        let right = mk_right(&[1,1,1,1,1,1,1,1,1]);
        for (k, q) in right.iter().enumerate() {
            let sm = graded_slice(&[q.clone()], 2).unwrap();
            let inside = sl.stack(&sm).rank() == sl.rank();
            println!("  gen {}: in-left={} : {}", k, inside, q.text());
        }
    }
}
