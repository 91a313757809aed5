//! Export a sampled cavity field in both snapshot encodings and read it back.

use dualfield::cavity::{maxwell_residual_sampled, Branch, Cavity};
use dualfield::constants::PhysicalConstants;
use dualfield::grid::{Grid, UniformAxis};
use dualfield::snapshot::{self, Encoding};

fn main() -> dualfield::Result<()> {
    let cav = Cavity::new(PhysicalConstants::UNIT, 1.0, 1.0)?.with_real_mode(2, 1.0, 1.0, 0.0)?;
    let g = Grid::zt(
        UniformAxis::linspace(0.0, 1.0, 33)?,
        UniformAxis::linspace(0.0, 0.5, 33)?,
    );
    let field = cav.sample(Branch::First, &g)?;
    let dir = std::env::temp_dir().join("dualfield-snapshot-example");
    std::fs::create_dir_all(&dir)?;
    for enc in [Encoding::F64Le, Encoding::Csv] {
        let base = dir.join(format!("{enc:?}").to_lowercase());
        let data = snapshot::save(&field, &base, enc)?;
        let back = snapshot::load(&base)?;
        println!(
            "{enc:?}: {} ({} bytes), identical after reload: {}",
            data.display(),
            std::fs::metadata(&data)?.len(),
            back == field
        );
    }
    print!("{}", snapshot::header(&field, Encoding::F64Le));
    let (r1, r2) = maxwell_residual_sampled(&field, &cav.constants)?;
    println!("residual of the stored samples: {r1:.4e} {r2:.4e}");
    Ok(())
}
