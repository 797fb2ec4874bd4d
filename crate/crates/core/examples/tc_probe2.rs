use g2kit_core::g2::*;
use g2kit_core::poly::{graded_slice, monomial_basis, substitute, MPoly, VarSet};
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
    let left: Vec<MPoly> = model.pfaffians.iter().map(|q| substitute(q, &images)).filter(|q| !q.is_zero()).collect();
    println!("nonzero reduced Pfaffians: {}", left.len());
    for q in &left {
        println!("  {}", q.text());
    }
    let sl = graded_slice(&left, 2).unwrap();
    println!("slice rank without relation: {}", sl.rank());
    let basis2 = monomial_basis(&small, 2);
    let (rr, rank, _) = sl.rref();
    println!("basis of the slice:");
    for r in 0..rank {
        let mut s = String::new();
        for (c, m) in basis2.iter().enumerate() {
            if !rr[(r, c)].is_zero() {
                let mono: Vec<String> = (0..small.len()).filter(|&i| m.0[i] > 0).map(|i| {
                    if m.0[i] == 1 { small.name(i).into() } else { format!("{}^{}", small.name(i), m.0[i]) }
                }).collect();
                s.push_str(&format!(" +({})*{}", rr[(r, c)].text(), mono.join("*")));
            }
        }
        println!("  {}", s);
    }
}
