//! Lower bounds on the ambient dimension of complex skew fibrations from the
//! integrality of the coefficients of (t / ln(1 + t))^(n - p).

use affine_hopf::series::{base_series, min_complex_ambient, DEFAULT_SEARCH_LIMIT};

fn main() -> affine_hopf::Result<()> {
    let s = base_series(6);
    let coeffs: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    println!("t / ln(1 + t) = {} + ...", coeffs.join(", "));
    for p in 1..=4 {
        match min_complex_ambient(p, DEFAULT_SEARCH_LIMIT)? {
            Some(n) => println!("p = {p}: n >= {n}"),
            None => println!("p = {p}: no n up to {DEFAULT_SEARCH_LIMIT}"),
        }
    }
    Ok(())
}
