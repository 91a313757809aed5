//! Dual rotations of a field pair and the behaviour of its invariants.

use std::f64::consts::PI;

use dualfield::dualsym::{
    complex_invariant, dual_invariants, dual_rotate, parity_classify, standard_invariants,
    FieldKind, FieldPair,
};

fn main() -> dualfield::Result<()> {
    let fp = FieldPair::real([1.0, 2.0, 0.5], [-0.3, 1.0, 2.0]);
    println!("K = {:.6}", complex_invariant(&fp));
    for k in 0..=4 {
        let theta = k as f64 * PI / 8.0;
        let r = dual_rotate(&fp, theta);
        let (i1, i2) = standard_invariants(&r);
        println!(
            "theta = {theta:.4}: E^2 - H^2 = {i1:+.6}, 2 E.H = {i2:+.6}, |K| = {:.6}",
            complex_invariant(&r).norm()
        );
    }
    let swap = dual_rotate(&fp, PI / 2.0);
    println!(
        "quarter turn: E' = H exactly: {}, H' = -E exactly: {}",
        swap.e == fp.h,
        swap.h == -fp.e
    );
    println!(
        "dual_invariants at theta = 0.3: {:?}",
        dual_invariants(&fp, 0.3)
    );

    for kind in FieldKind::ALL {
        let row: Vec<String> = (1..=4)
            .map(|c| parity_classify(kind, c).map(|p| format!("{p:?}")))
            .collect::<Result<_, _>>()?;
        println!("{kind:?}: {}", row.join(" "));
    }
    Ok(())
}
