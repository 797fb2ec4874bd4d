use g2kit_core::g2::*;
use g2kit_core::poly::{graded_slice, substitute, MPoly, VarSet};
use g2kit_core::scalar::Field;

fn main() {
    let f = Field::Rationals;
    let model = IsotropicModel::new(f);
    let vars = &model.vars;
    let killed = ["x13", "x14", "x16", "x23", "x24", "x26", "x36", "x46"];
    let keep: Vec<String> = vars.names().iter().filter(|nm| !killed.contains(&nm.as_str())).cloned().collect();
    let small = VarSet::new(keep);
    let images: Vec<MPoly> = vars.names().iter().map(|nm| {
        if killed.contains(&nm.as_str()) { MPoly::zero(&small, f) }
        else { MPoly::var(&small, f, small.index_of(nm).unwrap()) }
    }).collect();
    let mut left: Vec<MPoly> = model.pfaffians.iter().map(|q| substitute(q, &images)).filter(|q| !q.is_zero()).collect();
    let v = |name: &str| MPoly::var(&small, f, small.index_of(name).unwrap());
    left.push(v("x03").add(&v("x25")));

    // sign-corrected minors: [[x56, x06, -x04], [x15, x56, x06]]
    let row1 = [v("x56"), v("x06"), v("x04").neg()];
    let row2 = [v("x15"), v("x56"), v("x06")];
    let mut right = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            right.push(row1[a].mul(&row2[b]).sub(&row1[b].mul(&row2[a])));
        }
    }
    right.push(v("x03").add(&v("x25")));
    for w in ["x03", "x04", "x06", "x15", "x56"] {
        right.push(v("x03").mul(&v(w)));
    }
    for d in [2usize, 3, 4] {
        let sl = graded_slice(&left, d).unwrap();
        let sr = graded_slice(&right, d).unwrap();
        let stacked = sl.stack(&sr).rank();
        println!("deg {}: left {} right {} stacked {}", d, sl.rank(), sr.rank(), stacked);
    }
    // support: cone over twisted cubic (1, r, r^2, -r^3) scaled, vertex x05
    for r in [2i64, 3, -1, 5] {
        for lam in [1i64, 4] {
            for mu in [0i64, 7] {
                let mut pt = vec![f.zero(); small.len()];
                pt[small.index_of("x15").unwrap()] = f.from_i64(lam);
                pt[small.index_of("x56").unwrap()] = f.from_i64(lam * r);
                pt[small.index_of("x06").unwrap()] = f.from_i64(lam * r * r);
                pt[small.index_of("x04").unwrap()] = f.from_i64(-lam * r * r * r);
                pt[small.index_of("x05").unwrap()] = f.from_i64(mu);
                let ok = left.iter().all(|q| q.eval(&pt).is_zero());
                if !ok { println!("cone point FAILS: r={} lam={} mu={}", r, lam, mu); }
            }
        }
    }
    println!("cone support check done");
}
