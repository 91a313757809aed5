//! The truncated Fock algebra: exact commutators, canonical pairs, field
//! operators, Heisenberg evolution and the cosine-ansatz certificate.

use std::f64::consts::PI;

use dualfield::cavity::Cavity;
use dualfield::constants::PhysicalConstants;
use dualfield::qfield::surd::SurdMatrix;
use dualfield::qfield::{
    commutator, cosine_ansatz_contradiction, heisenberg_evolve, interior_block, position_momentum,
    FieldKind, QuantizedCavity, QuantizedMode, DEFAULT_DIM_CAP,
};

fn main() -> dualfield::Result<()> {
    let a = SurdMatrix::annihilation(6);
    println!(
        "exact [a, a+] diagonal for D = 6: {:?}",
        a.commutator(&a.transpose()).integer_diagonal()
    );

    let pc = PhysicalConstants::UNIT;
    let cav = Cavity::new(pc, 1.0, 1.0)?
        .with_real_mode(1, 1.0, 1.0, 0.0)?
        .with_real_mode(2, 1.0, 0.5, 0.0)?;
    let qm = QuantizedMode::new(cav.modes[0], 8)?;
    let (q, p) = position_momentum(&qm, &pc);
    let qp = interior_block(&commutator(&q.matrix, &p.matrix), 3);
    println!("[q, p] on the leading 3x3 block (hbar = 1):{qp:.3}");

    let qc = QuantizedCavity::new(cav, 6, DEFAULT_DIM_CAP)?;
    for kind in FieldKind::ALL {
        let op = qc.field_operator(kind, 0.3, 0.2)?;
        println!(
            "{kind:?}: relative Hermiticity defect {:.3e}",
            op.relative_hermiticity_defect()
        );
    }

    let (at, _) = heisenberg_evolve(&qm, 0.25);
    println!(
        "a(t)[0,1] = {:.6}, expected exp(-i omega t) = {:.6}",
        at.matrix[(0, 1)],
        dualfield::Complex64::from_polar(1.0, -PI * 0.25)
    );

    let w = qm.mode.omega;
    let r = cosine_ansatz_contradiction(
        &QuantizedMode::new(qm.mode, 12)?,
        PI / 6.0 / w,
        PI / 3.0 / w,
    )?;
    println!(
        "cosine ansatz: left side varies by {}, tan values {:.6} and {:.6}, contradiction {}",
        r.lhs_variation, r.tan_t1, r.tan_t2, r.contradiction
    );
    Ok(())
}
