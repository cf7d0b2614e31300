//! Projects points of R^7 to the base of the (3, 7) fibration and lifts them
//! back onto their fibers.

use affine_hopf::fibration::build_fibration;
use affine_hopf::sampling::SampleRng;

fn main() -> affine_hopf::Result<()> {
    let fib = build_fibration(3, 7)?;
    let mut rng = SampleRng::new(1);
    for _ in 0..5 {
        let point = rng.rational_vector(7);
        let b = fib.base_point(&point)?;
        let on_fiber = fib.fiber_at(&b)?.contains(&point)?;
        println!("({point}) -> b = ({b}), on fiber: {on_fiber}");
    }
    Ok(())
}
