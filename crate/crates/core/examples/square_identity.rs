//! Euler's four-square identity as the bilinear map of the N = 4 family.

use affine_hopf::hrmat::{bilinear_image, build_hr_family, verify_square_identity};
use affine_hopf::linalg::RationalVector;

fn main() -> affine_hopf::Result<()> {
    let fam = build_hr_family(4)?;
    let a = RationalVector::parse("1,2,3,4")?;
    let b = RationalVector::parse("1,0,-1,1")?;
    let c = bilinear_image(&fam, &a, &b)?;
    println!("a = ({a}), b = ({b})");
    println!("c = ({c})");
    println!(
        "|a|^2 |b|^2 = {} * {} = {} = |c|^2",
        a.norm_squared(),
        b.norm_squared(),
        c.norm_squared()
    );
    assert!(verify_square_identity(&fam, &a, &b)?);

    let a = RationalVector::parse("1/2,-3,2/7,5")?;
    let b = RationalVector::parse("4,1/3,-1,0")?;
    println!(
        "rational inputs satisfy the identity: {}",
        verify_square_identity(&fam, &a, &b)?
    );
    Ok(())
}
