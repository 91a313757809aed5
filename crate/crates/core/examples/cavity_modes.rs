//! A two-mode cavity: fields, energy, and second-order convergence of the
//! finite-difference Maxwell residual.

use dualfield::cavity::{Branch, Cavity};
use dualfield::constants::PhysicalConstants;
use dualfield::grid::{Grid, UniformAxis};

fn main() -> dualfield::Result<()> {
    let cav = Cavity::new(PhysicalConstants::CODATA, 0.1, 1e-3)?
        .with_real_mode(1, 1.0, 1.0, 0.0)?
        .with_real_mode(3, 1.0, 0.4, 0.7)?;
    let c = cav.constants.c;
    for m in &cav.modes {
        println!(
            "mode {}: omega = {:.6e} rad/s, k = {:.6} 1/m",
            m.alpha, m.omega, m.k
        );
    }
    let t = 0.2 * cav.length / c;
    for z in [0.0, 0.025, 0.05] {
        let e = cav.field_e(z, t, Branch::First)?[0];
        let h = cav.field_h(z, t, Branch::First)?[1];
        println!("z = {z:.3}: Ex = {:+.6e}, Hy = {:+.6e}", e.re, h.re);
    }
    println!(
        "H(0) = {:.9e} J, H(t) = {:.9e} J",
        cav.hamiltonian(0.0),
        cav.hamiltonian(t)
    );
    println!(
        "field energy by quadrature: {:.9e} J",
        cav.field_energy_quadrature(t, 1000)?
    );

    println!("   n      r1           r2        ratios");
    let mut prev: Option<(f64, f64)> = None;
    for n in [17, 33, 65, 129] {
        // the time step is half the light-crossing time of a space step
        let g = Grid::zt(
            UniformAxis::linspace(0.0, cav.length, n)?,
            UniformAxis::linspace(0.0, 0.5 * cav.length / c, n)?,
        );
        let (r1, r2) = cav.maxwell_residual(Branch::First, &g)?;
        match prev {
            Some((p1, p2)) => println!("{n:4}  {r1:.4e}  {r2:.4e}  {:.3} {:.3}", p1 / r1, p2 / r2),
            None => println!("{n:4}  {r1:.4e}  {r2:.4e}"),
        }
        prev = Some((r1, r2));
    }
    Ok(())
}
