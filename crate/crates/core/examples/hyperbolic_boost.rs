//! Hyperbolic dual transformations, the W ratio and field boosts.

use dualfield::dualsym::{
    boost_fields, boost_magnitudes, hyper_invariants, hyper_rotate, FieldPair, HyperParam,
};
use nalgebra::Vector3;

fn main() -> dualfield::Result<()> {
    let fp = FieldPair::real([1.0, 0.0, 2.0], [0.0, 3.0, -1.0]);
    for vt in [-1.0, 0.0, 0.5, 2.0] {
        let hp = HyperParam::new(vt);
        let inv = hyper_invariants(&fp, hp);
        let k = dualfield::dualsym::complex_invariant(&hyper_rotate(&fp, hp));
        println!(
            "vartheta = {vt:+.1}: I1 = {:+.6e}, I2 = {:+.6e}, W = {:.6}, K = {k:.4}",
            inv.i1, inv.i2, inv.w
        );
    }

    let (e, h) = boost_magnitudes(1.0, 1.0, 0.6)?;
    println!("magnitude boost at beta = 0.6: |E''| = {e}, |H''| = {h}");
    let hp = HyperParam::from_beta(0.6)?;
    println!("rapidity of beta = 0.6: {:.12}", hp.vartheta);

    let c = 299_792_458.0;
    let pair = FieldPair::real([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
    let b = boost_fields(&pair, &Vector3::new(0.0, 0.0, 0.6 * c), c)?;
    println!("vector boost: E'' = {:?}", b.e.map(|z| z.re).as_slice());
    println!("              H'' = {:?}", b.h.map(|z| z.re).as_slice());
    println!(
        "boosting at c is rejected: {}",
        boost_magnitudes(1.0, 1.0, 1.0).is_err()
    );
    Ok(())
}
