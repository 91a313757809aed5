//! Cavity four-currents in closed form and from the Noether construction,
//! with continuity, charge and spirality.

use dualfield::cavity::Cavity;
use dualfield::constants::PhysicalConstants;
use dualfield::currents::{
    continuity_residual, current, current_generic, spin_density, spirality, spirality_scale,
    total_charge, Family, FieldFunctionSet, NoetherContext, SignFamily,
};
use dualfield::grid::{Grid, UniformAxis};
use dualfield::Complex64;

fn main() -> dualfield::Result<()> {
    let cav = Cavity::new(PhysicalConstants::UNIT, 1.0, 2.0)?
        .with_mode(1, 1.0, Complex64::new(0.8, 0.1), Complex64::new(0.3, -0.4))?
        .with_mode(2, 1.0, Complex64::new(-0.2, 0.5), Complex64::new(0.6, 0.0))?;
    let ffs = FieldFunctionSet::new(cav, SignFamily::Plus);
    let ctx = NoetherContext::default();
    let (z, t) = (0.3, 0.45);
    for family in [Family::J1, Family::J2] {
        for mu in [3, 4] {
            let closed = current(&ffs, family, mu, z, t)?;
            let noether = current_generic(&ffs, &ctx, family, mu, z, t)?;
            println!("{family:?} mu = {mu}: closed {closed:+.8}, Noether {noether:+.8}");
        }
    }

    let g = Grid::zt(
        UniformAxis::linspace(0.0, 1.0, 32)?,
        UniformAxis::linspace(0.0, 2.0, 32)?,
    );
    println!(
        "continuity residual (relative): {:.3e}",
        continuity_residual(&ffs, &g, Family::Total)?.relative()
    );

    for t in [0.0, 0.5, 1.0, 1.5] {
        println!(
            "t = {t}: Q = {:.12}, S43 = {:.3e} (scale {:.3e}), spin density at z = 0.3: {:+.6}",
            total_charge(&ffs, t),
            spirality(&ffs, t).norm(),
            spirality_scale(&ffs, t),
            spin_density(&ffs, 4, 0.3, t)?
        );
    }
    Ok(())
}
