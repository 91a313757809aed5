//! Packing fields into quaternions, the generalized Maxwell residual and the
//! biquaternion gradient of the Riemann-Silberstein field.

use dualfield::cavity::{Branch, Cavity};
use dualfield::constants::PhysicalConstants;
use dualfield::grid::{Grid, UniformAxis};
use dualfield::quatmaxwell::{
    assemble, biquat_gradient, generalized_maxwell_residual, residual_by_component,
    Biquaternion3Field, Components, GradientMode,
};

fn grid(cav: &Cavity, n: usize) -> dualfield::Result<Grid> {
    Ok(Grid::xyzt(
        UniformAxis::point(0.0),
        UniformAxis::point(0.0),
        UniformAxis::linspace(0.0, cav.length, n)?,
        UniformAxis::linspace(0.0, 0.5 * cav.length / cav.constants.c, n)?,
    ))
}

fn main() -> dualfield::Result<()> {
    let pc = PhysicalConstants::UNIT;
    let cav = Cavity::new(pc, 1.0, 1.0)?
        .with_real_mode(1, 1.0, 1.0, 0.3)?
        .with_real_mode(2, 1.0, 0.5, -0.4)?;
    let mut prev = None;
    for n in [17, 33, 65] {
        let g = grid(&cav, n)?;
        let mut c = Components::zeros(g.len());
        c.embed_cavity(&cav, Branch::First, 1, &g)?;
        c.embed_cavity(&cav, Branch::Second, 2, &g)?;
        let fq = assemble(&g, &c)?;
        assert_eq!(fq.decompose(), c);
        let r = generalized_maxwell_residual(&fq, &pc)?;
        print!(
            "n = {n:3}: faraday {:.4e}, ampere {:.4e}, gauss {:.1e}",
            r.faraday,
            r.ampere,
            r.gauss_e.max(r.gauss_h)
        );
        if let Some(p) = prev {
            print!(", ratio {:.3}", p / r.faraday);
        }
        println!();
        prev = Some(r.faraday);
        if n == 65 {
            let by = residual_by_component(&fq, &pc)?;
            println!(
                "per-component faraday residuals: {:.3e} {:.3e} {:.3e} {:.3e}",
                by[0][0], by[1][0], by[2][0], by[3][0]
            );
            let phi = Biquaternion3Field::riemann_silberstein(&g, &c, &pc)?;
            for mode in [GradientMode::Spatial, GradientMode::Spacetime] {
                let d = biquat_gradient(&phi, mode, &pc)?;
                println!(
                    "{mode:?} gradient: scalar {:.3e}, vector {:.3e}",
                    d.max_scalar(),
                    d.max_vector()
                );
            }
        }
    }
    Ok(())
}
