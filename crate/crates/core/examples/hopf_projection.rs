//! Centrally projected Hopf fibrations: great circles of S^{2m+1} and great
//! 3-spheres of S^{4m+3} become skew affine lines and 3-planes.
//!
//!     cargo run --example hopf_projection -- segments.tsv

use affine_hopf::fibration::segments_tsv;
use affine_hopf::hopf::{sample_hopf_fibration, Algebra};

fn main() -> affine_hopf::Result<()> {
    for (algebra, m) in [
        (Algebra::Complex, 1),
        (Algebra::Complex, 2),
        (Algebra::Quaternion, 1),
    ] {
        let report = sample_hopf_fibration(algebra, m, None, 30, 0)?;
        println!("{report}");
    }
    if let Some(path) = std::env::args().nth(1) {
        let report = sample_hopf_fibration(Algebra::Complex, 1, None, 12, 0)?;
        std::fs::write(&path, segments_tsv(&report.fibers))
            .map_err(|e| affine_hopf::Error::Domain(format!("cannot write {path}: {e}")))?;
        println!("wrote {} skew lines of R^3 to {path}", report.fibers.len());
    }
    Ok(())
}
