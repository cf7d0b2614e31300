//! Builds the canonical Hurwitz–Radon family on R^N and verifies it.
//!
//!     cargo run --example hr_family -- 24

use affine_hopf::hrmat::{build_hr_family, verify_hr_family};

fn main() -> affine_hopf::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(8);
    let fam = build_hr_family(n)?;
    println!("N = {n}: {} matrices", fam.len());
    if n <= 8 {
        for (i, m) in fam.matrices().iter().enumerate() {
            println!("A_{}:", i + 1);
            for row in m.to_rows() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
                println!("  [{}]", cells.join(" "));
            }
        }
    }
    println!("{}", verify_hr_family(&fam)?);
    Ok(())
}
