//! The gauge group U1 x R, its irreducible representations and its action
//! on mode functions.

use dualfield::gauge::{gauge_transform, irrep_gamma, mode_ode_residual, GaugeElement, IrrepLabel};
use dualfield::Complex64;

fn main() -> dualfield::Result<()> {
    let g = GaugeElement::new(0.7, -1.5)?;
    let h = GaugeElement::new(-0.2, 0.5)?;
    for (m, k) in [(0, 0), (1, 0), (2, 1), (-1, -1)] {
        let label = IrrepLabel { m, k };
        let lhs = irrep_gamma(&g.compose(&h), label)?;
        let rhs = irrep_gamma(&g, label)? * irrep_gamma(&h, label)?;
        println!("(m, k) = ({m:+}, {k:+}): Gamma(gh) = {lhs:.6}, Gamma(g)Gamma(h) = {rhs:.6}");
    }

    let omega = 3.0;
    let dt = 1e-3;
    let u: Vec<Complex64> = (0..2000)
        .map(|n| Complex64::from_polar(1.0, omega * n as f64 * dt))
        .collect();
    let ug = gauge_transform(&u, &g)?;
    let (r, rg) = (
        mode_ode_residual(&u, dt, omega)?,
        mode_ode_residual(&ug, dt, omega)?,
    );
    println!(
        "mode equation residual: {r:.3e} before, {rg:.3e} after (ratio {:.6} = |beta|)",
        rg / r
    );
    Ok(())
}
