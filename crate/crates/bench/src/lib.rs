//! Fixtures shared by the benchmarks.

use modrec_core::generators::{random_flag, rips_from_points, sample_shapes};
use modrec_core::{FilteredComplex, RipsParams, Shape};

/// Rips filtration of `n` points on the unit 3-sphere up to dimension 3.
pub fn sphere(n: usize, rho: f64, seed: u64) -> FilteredComplex {
    let cloud = sample_shapes(Shape::Sphere3, n, seed).expect("positive sample size");
    rips_from_points(&cloud, &RipsParams::new(rho, 3).expect("valid threshold")).expect("valid cloud")
}

/// Random flag complex with `m` edges on `n` vertices.
pub fn flag(n: usize, m: usize, seed: u64) -> FilteredComplex {
    random_flag(n, m, 3, seed).expect("edge count within range")
}
