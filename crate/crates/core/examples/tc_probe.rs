use g2kit_core::g2::*;
use g2kit_core::matrix::ExactMatrix;
use g2kit_core::poly::{graded_slice, substitute, MPoly, Mono, VarSet};
use g2kit_core::scalar::Field;

fn main() {
    let f = Field::Rationals;
    let model = IsotropicModel::new(f);
    let vars = &model.vars;
    let n = vars.len();
    // tangent space at p = (x05 = 1): kernel of the Jacobian of the ideal at p
    let mut pt = vec![f.zero(); n];
    pt[vars.index_of("x05").unwrap()] = f.one();
    let mut rows = Vec::new();
    for q in model.ideal() {
        // gradient at pt
        let mut grad = Vec::with_capacity(n);
        for v in 0..n {
            // d/dxv of quadric: sum over terms
            let mut acc = f.zero();
            for (m, c) in q.terms() {
                if m.0[v] == 0 { continue; }
                let mut e = m.0.clone();
                e[v] -= 1;
                let deriv_mono = MPoly::from_terms(vars, f, vec![(Mono(e), &f.from_i64(m.0[v] as i64) * c)]);
                acc = &acc + &deriv_mono.eval(&pt);
            }
            grad.push(acc);
        }
        rows.push(grad);
    }
    let jac = ExactMatrix::from_rows(f, n, rows);
    let (rr, rank, pivots) = jac.rref();
    println!("Jacobian rank at p: {}", rank);
    println!("tangent-space equations (rref rows):");
    for r in 0..rank {
        let mut s = String::new();
        for c in 0..n {
            if !rr[(r, c)].is_zero() {
                s.push_str(&format!(" +({})*{}", rr[(r, c)].text(), vars.name(c)));
            }
        }
        println!("  {}", s);
    }
    let _ = pivots;

    // reduced Pfaffian slice vs sign-variant minors matrices
    let killed = ["x13", "x14", "x16", "x23", "x24", "x26", "x36", "x46"];
    let keep: Vec<String> = vars.names().iter().filter(|nm| !killed.contains(&nm.as_str())).cloned().collect();
    let small = VarSet::new(keep);
    let images: Vec<MPoly> = vars.names().iter().map(|nm| {
        if killed.contains(&nm.as_str()) { MPoly::zero(&small, f) }
        else { MPoly::var(&small, f, small.index_of(nm).unwrap()) }
    }).collect();
    let mut left: Vec<MPoly> = model.pfaffians.iter().map(|q| substitute(q, &images)).filter(|q| !q.is_zero()).collect();
    let v = |name: &str| MPoly::var(&small, f, small.index_of(name).unwrap());
    let relation = v("x03").add(&v("x25"));
    left.push(relation.clone());
    let sl = graded_slice(&left, 2).unwrap();
    println!("left slice rank (deg 2): {}", sl.rank());

    let entries = ["x56", "x06", "x04", "x15", "x56", "x06"];
    for mask in 0u32..64 {
        let sgn = |k: usize| if mask & (1 << k) != 0 { -1i64 } else { 1 };
        let row1: Vec<MPoly> = (0..3).map(|k| v(entries[k]).scale(&f.from_i64(sgn(k)))).collect();
        let row2: Vec<MPoly> = (3..6).map(|k| v(entries[k]).scale(&f.from_i64(sgn(k)))).collect();
        let mut right = Vec::new();
        for a in 0..3 {
            for b in a + 1..3 {
                right.push(row1[a].mul(&row2[b]).sub(&row1[b].mul(&row2[a])));
            }
        }
        right.push(relation.clone());
        right.push(v("x03").mul(&v("x03")));
        let sr = graded_slice(&right, 2).unwrap();
        let stacked = sl.stack(&sr).rank();
        if sl.rank() == sr.rank() && stacked == sl.rank() {
            println!("sign mask {:06b} works (deg 2): rank {}", mask, sr.rank());
            // check degree 3 too
            let sl3 = graded_slice(&left, 3).unwrap();
            let sr3 = graded_slice(&right, 3).unwrap();
            let st3 = sl3.stack(&sr3).rank();
            println!("  deg 3: {} vs {} stacked {}", sl3.rank(), sr3.rank(), st3);
        }
    }
}
