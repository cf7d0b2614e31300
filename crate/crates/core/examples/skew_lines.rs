//! The fibration of R^3 by pairwise skew lines, with the fibers through a few
//! base points and an exact skewness check between them.

use affine_hopf::fibration::{build_fibration, pairwise_skew, verify_fibration};
use affine_hopf::linalg::RationalVector;

fn main() -> affine_hopf::Result<()> {
    let fib = build_fibration(1, 3)?;
    println!("{}", fib.to_json());
    let bases = ["0,0", "1,0", "0,1", "2,-3"];
    let fibers: Vec<_> = bases
        .iter()
        .map(|b| fib.fiber_at(&RationalVector::parse(b).unwrap()))
        .collect::<Result<_, _>>()?;
    for (b, f) in bases.iter().zip(&fibers) {
        println!(
            "b = ({b}): point ({}) direction ({})",
            f.base(),
            f.directions().column(0)
        );
    }
    for i in 0..fibers.len() {
        for j in i + 1..fibers.len() {
            println!(
                "fibers {i} and {j} skew: {}",
                pairwise_skew(&fibers[i], &fibers[j])?
            );
        }
    }
    println!("{}", verify_fibration(&fib, 1000, 0)?);
    Ok(())
}
