//! Prints the Hurwitz–Radon function at powers of two and the admissible
//! fiber dimensions for a range of ambient dimensions.
//!
//!     cargo run --example rho_table -- 3 40

use affine_hopf::hrcore::{render_table, rho_u64, TableFormat};

fn main() -> affine_hopf::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (from, to) = match args[..] {
        [a, b] => (a, b),
        _ => (3, 40),
    };
    for k in 0..16 {
        print!("rho(2^{k}) = {}  ", rho_u64(1 << k)?);
        if k % 4 == 3 {
            println!();
        }
    }
    println!();
    print!("{}", render_table(from, to, TableFormat::Text)?);
    Ok(())
}
