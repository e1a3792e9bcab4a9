//! Small named complexes with known homology.

use crate::complex::{FilteredComplex, Simplex};

fn simplex(v: &[u32]) -> Simplex {
    Simplex::new(v.iter().copied()).expect("fixture simplices are valid")
}

/// Closure of the given maximal simplices, each face entering at its dimension.
pub fn closure_by_dimension(maximal: &[&[u32]]) -> FilteredComplex {
    let mut faces = std::collections::BTreeSet::new();
    for top in maximal {
        let n = top.len();
        for subset in 1u32..(1 << n) {
            let face: Vec<u32> = (0..n).filter(|i| subset & (1 << i) != 0).map(|i| top[i]).collect();
            faces.insert(simplex(&face));
        }
    }
    let items = faces.into_iter().map(|s| {
        let d = s.dim() as f64;
        (s, d)
    });
    FilteredComplex::from_unsorted(items.collect()).expect("closure is a valid filtration")
}

/// A single vertex.
pub fn single_vertex() -> FilteredComplex {
    FilteredComplex::new(vec![simplex(&[0])], vec![0.0]).expect("valid")
}

/// Filtration `a, b, c, ab, ac, bc, abc` at values `0..7`.
pub fn filled_triangle() -> FilteredComplex {
    let simplices = [&[0][..], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
    FilteredComplex::new(simplices.iter().map(|v| simplex(v)).collect(), (0..7).map(f64::from).collect())
        .expect("valid")
}

/// Boundary of the tetrahedron, a 2-sphere.
pub fn tetrahedron_boundary() -> FilteredComplex {
    closure_by_dimension(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// Minimal 6-vertex triangulation of the real projective plane.
pub fn rp2() -> FilteredComplex {
    closure_by_dimension(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[2, 4, 5],
        &[1, 3, 5],
    ])
}

/// A 7-vertex torus triangulation (Moebius-Csaszar).
pub fn torus() -> FilteredComplex {
    let mut triangles = Vec::new();
    for i in 0..7u32 {
        triangles.push([i, (i + 1) % 7, (i + 3) % 7]);
        triangles.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    let refs: Vec<&[u32]> = triangles.iter().map(|t| &t[..]).collect();
    closure_by_dimension(&refs)
}
