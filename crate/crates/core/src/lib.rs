//! Persistent homology over many prime fields at once.
//!
//! A filtered simplicial complex is reduced a single time over `Z/QZ`, where
//! `Q = q_1 ... q_r` is a product of distinct primes. The Chinese remainder
//! theorem splits the ring into the fields `Z/q_sZ`, and the reduction keeps
//! track of which fields each persistence pair lives in. The result is a
//! [`MultiFieldDiagram`] whose projections are the diagrams of every field,
//! from which [`torsion`] recovers integral Betti numbers and the primes of
//! torsion summands.
//!
//! ```
//! use modrec_core::{fixtures, reduce_multifield, PrimeBasis};
//! use modrec_core::torsion::{betti_table, infer_torsion};
//!
//! let rp2 = fixtures::rp2();
//! let basis = PrimeBasis::new(vec![2, 3, 5]).unwrap();
//! let (diagram, _) = reduce_multifield(&rp2, &basis, true);
//! let profile = infer_torsion(&betti_table(&diagram, None, 2), None).unwrap();
//! assert_eq!(profile.group(1), "Z/2^*Z");
//! ```

pub mod complex;
pub mod crt;
pub mod error;
pub mod experiment;
pub mod field;
pub mod fixtures;
pub mod generators;
pub mod io;
pub mod multifield;
pub mod torsion;

pub use complex::{FilteredComplex, Simplex, SparseColumn};
pub use crt::{first_primes, word_length, ModulusMask, PrimeBasis, RingElem};
pub use error::{Error, Result};
pub use field::{reduce_single_field, FieldDiagram, PersistencePair};
pub use generators::{DistanceMatrix, PointCloud, RipsParams, Shape};
pub use multifield::{
    project_diagram, reduce_multifield, reduce_multifield_with, MultiFieldDiagram, MultiFieldPair, Options, Reduction,
    ReductionStats,
};
pub use torsion::{BettiTable, IntegralProfile};
