//! Builds the fibration of R^n by skew affine p-planes and checks seeded
//! pairs of fibers.
//!
//!     cargo run --release --example fibration_verify -- 8 24 200

use affine_hopf::fibration::{build_fibration, verify_fibration};
use affine_hopf::hrcore::{exists_fibration, is_dominant, DimensionPair};

fn main() -> affine_hopf::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (p, n, samples) = match args[..] {
        [p, n, s] => (p, n, s as usize),
        [p, n] => (p, n, 200),
        _ => (8, 24, 200),
    };
    let pair = DimensionPair::new(p, n);
    if !exists_fibration(&pair)? {
        println!("R^{n} has no fibration by skew affine {p}-planes");
        return Ok(());
    }
    println!("({p}, {n}) dominant: {}", is_dominant(&pair)?);
    let fib = build_fibration(p, n)?;
    println!(
        "base R^{}, {} normalized B-matrices",
        fib.base_dim(),
        fib.family_size()
    );
    println!("{}", verify_fibration(&fib, samples, 0)?);
    Ok(())
}
