//! Complex numbers as 2x2 real matrices, the cyclic [0,1] bases and the two
//! quaternion multiplication tables.

use dualfield::algebra::{
    basis01_element, complex_to_matrix2, hermitian_split, quat_mul, real_block, unit_product,
    Basis01Variant, QuatBasis, Quaternion,
};
use dualfield::Complex64;
use nalgebra::DMatrix;

fn main() -> dualfield::Result<()> {
    let (a, b) = (complex_to_matrix2(1.0, 2.0), complex_to_matrix2(3.0, -1.0));
    println!("(1+2i)(3-i) as a matrix product:{}", a * b);

    for v in Basis01Variant::ALL {
        let e2 = basis01_element(v, 2)?;
        println!(
            "{v:?}: e2^2 = e3 {}, e2^4 = e1 {}",
            e2 * e2 == basis01_element(v, 3)?,
            e2.pow(4) == basis01_element(v, 1)?
        );
    }

    let names = ["1", "i", "j", "k"];
    for basis in [QuatBasis::Hamilton, QuatBasis::LeviCivita] {
        println!("{basis:?} table:");
        for x in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|y| {
                    let (s, k) = unit_product(basis, x, y);
                    format!(
                        "{:>3}",
                        format!("{}{}", if s < 0 { "-" } else { "" }, names[k])
                    )
                })
                .collect();
            println!("  {}", row.join(" "));
        }
    }

    let p = Quaternion::from_real(QuatBasis::Hamilton, [1.0, 2.0, 0.0, -1.0]);
    let q = Quaternion::from_real(QuatBasis::Hamilton, [0.5, 0.0, 1.0, 1.0]);
    let pq = quat_mul(&p, &q)?;
    println!(
        "|pq| = {:.6}, |p||q| = {:.6}",
        pq.modulus(),
        p.modulus() * q.modulus()
    );

    let h = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 0.0),
        ],
    );
    let (s, an) = hermitian_split(&h, 1e-12)?;
    println!(
        "real 4x4 form of a Hermitian matrix:{}",
        real_block(&s, &an)
    );
    Ok(())
}
