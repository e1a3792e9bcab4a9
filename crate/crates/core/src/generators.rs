//! Rips filtrations, random complexes and point samples.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::complex::{FilteredComplex, Simplex};
use crate::error::{Error, Result};

/// Name of the generator behind every seeded routine in this module.
pub const RNG_NAME: &str = "ChaCha8";

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points of `R^D`, all of the same dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty point cloud".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput("points must have at least one coordinate".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInput(format!("point {i} has {} coordinates, expected {dim}", p.len())));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient dimension `D`.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }
}

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    /// Row-major lower triangle: `d(i, j)` for `j < i` at `i (i - 1) / 2 + j`.
    lower: Vec<f64>,
}

impl DistanceMatrix {
    /// From rows `i = 0..n`, row `i` holding `d(i, 0..i)`.
    pub fn from_lower_triangular(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty distance matrix".into()));
        }
        let mut lower = Vec::with_capacity(n * (n - 1) / 2);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != i {
                return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {i}", row.len())));
            }
            if let Some(d) = row.iter().find(|d| !d.is_finite() || **d < 0.0) {
                return Err(Error::InvalidInput(format!("row {i} has invalid distance {d}")));
            }
            lower.extend(row);
        }
        Ok(DistanceMatrix { n, lower })
    }

    /// From a full square matrix, checking symmetry and the zero diagonal.
    pub fn from_square(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if row[i] != 0.0 {
                return Err(Error::InvalidInput(format!("non-zero diagonal entry at {i}")));
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(Error::InvalidInput(format!("d({i},{j}) != d({j},{i})")));
                }
            }
        }
        Self::from_lower_triangular(rows.iter().enumerate().map(|(i, row)| row[..i].to_vec()).collect())
    }

    /// Euclidean distances between the points of a cloud.
    pub fn from_points(cloud: &PointCloud) -> Self {
        let pts = cloud.points();
        let n = pts.len();
        let mut lower = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in 0..i {
                let d2: f64 = pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                lower.push(d2.sqrt());
            }
        }
        DistanceMatrix { n, lower }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => self.lower[i * (i - 1) / 2 + j],
            std::cmp::Ordering::Less => self.lower[j * (j - 1) / 2 + i],
        }
    }
}

/// Threshold `rho` and dimension cap of a Rips complex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RipsParams {
    pub threshold: f64,
    pub max_dim: usize,
}

impl RipsParams {
    pub fn new(threshold: f64, max_dim: usize) -> Result<Self> {
        if threshold.is_nan() || threshold < 0.0 {
            return Err(Error::InvalidInput(format!("threshold must be >= 0, got {threshold}")));
        }
        Ok(RipsParams { threshold, max_dim })
    }
}

/// Flag complex of a weighted graph on vertices `0..n`.
///
/// Vertices enter at 0, every clique of at most `max_dim + 1` vertices at the
/// largest weight among its edges.
pub fn flag_complex(n: usize, edges: &[(u32, u32, f64)], max_dim: usize) -> Result<FilteredComplex> {
    let mut upper: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == hi || hi as usize >= n {
            return Err(Error::InvalidInput(format!("invalid edge ({a}, {b})")));
        }
        upper[lo as usize].push((hi, w));
    }
    for list in &mut upper {
        list.sort_unstable_by_key(|e| e.0);
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("repeated edge".into()));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(max_dim + 1);
    for v in 0..n as u32 {
        current.push(v);
        out.push((Simplex::from_sorted(&current), 0.0));
        if max_dim > 0 {
            expand(&upper, &mut current, 0.0, &upper[v as usize], max_dim, &mut out);
        }
        current.pop();
    }
    FilteredComplex::from_unsorted(out)
}

/// Adds every extension of the clique `current` by vertices of `candidates`,
/// each given with its largest edge weight to the clique.
fn expand(
    upper: &[Vec<(u32, f64)>],
    current: &mut Vec<u32>,
    value: f64,
    candidates: &[(u32, f64)],
    max_dim: usize,
    out: &mut Vec<(Simplex, f64)>,
) {
    for (pos, &(c, weight)) in candidates.iter().enumerate() {
        let v = value.max(weight);
        current.push(c);
        out.push((Simplex::from_sorted(current), v));
        if current.len() <= max_dim {
            let next = intersect(&candidates[pos + 1..], &upper[c as usize]);
            if !next.is_empty() {
                expand(upper, current, v, &next, max_dim, out);
            }
        }
        current.pop();
    }
}

fn intersect(candidates: &[(u32, f64)], neighbors: &[(u32, f64)]) -> Vec<(u32, f64)> {
    let mut out = Vec::new();
    let (mut i, mut k) = (0, 0);
    while i < candidates.len() && k < neighbors.len() {
        match candidates[i].0.cmp(&neighbors[k].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
            std::cmp::Ordering::Equal => {
                out.push((candidates[i].0, candidates[i].1.max(neighbors[k].1)));
                i += 1;
                k += 1;
            }
        }
    }
    out
}

/// Rips filtration of a metric: cliques of the graph of pairs at distance at
/// most `rho`, each entering at its diameter.
pub fn rips_filtration(metric: &DistanceMatrix, params: &RipsParams) -> Result<FilteredComplex> {
    let n = metric.len();
    if n > u32::MAX as usize {
        return Err(Error::InvalidInput("too many points".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let d = metric.get(i, j);
            if d <= params.threshold {
                edges.push((j as u32, i as u32, d));
            }
        }
    }
    flag_complex(n, &edges, params.max_dim)
}

/// Rips filtration of a point cloud under the Euclidean metric.
pub fn rips_from_points(cloud: &PointCloud, params: &RipsParams) -> Result<FilteredComplex> {
    rips_filtration(&DistanceMatrix::from_points(cloud), params)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Complete graph on `n` vertices at value 0 plus `m` distinct uniformly
/// random triangles at values `1..=m` in insertion order.
pub fn linial_meshulam(n: usize, m: usize, seed: u64) -> Result<FilteredComplex> {
    let total = binomial(n as u64, 3) as usize;
    if m > total {
        return Err(Error::InvalidInput(format!("{m} triangles requested, only {total} exist on {n} vertices")));
    }
    let n = n as u32;
    let mut triangles = Vec::with_capacity(total);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triangles.push([a, b, c]);
            }
        }
    }
    let mut rng = rng(seed);
    let (chosen, _) = triangles.partial_shuffle(&mut rng, m);

    let mut simplices = Vec::with_capacity(n as usize * (n as usize + 1) / 2 + m);
    let mut values = Vec::with_capacity(simplices.capacity());
    for v in 0..n {
        simplices.push(Simplex::from_sorted(&[v]));
    }
    for a in 0..n {
        for b in a + 1..n {
            simplices.push(Simplex::from_sorted(&[a, b]));
        }
    }
    values.resize(simplices.len(), 0.0);
    for (i, t) in chosen.iter().enumerate() {
        simplices.push(Simplex::from_sorted(t));
        values.push((i + 1) as f64);
    }
    FilteredComplex::new(simplices, values)
}

/// Flag complex of `m` uniformly random edges on `n` vertices, the edges
/// entering at values `1..=m` in random order.
pub fn random_flag(n: usize, m: usize, max_dim: usize, seed: u64) -> Result<FilteredComplex> {
    let total = binomial(n as u64, 2) as usize;
    if m > total {
        return Err(Error::InvalidInput(format!("{m} edges requested, only {total} exist on {n} vertices")));
    }
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(total);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            pairs.push((a, b));
        }
    }
    let mut rng = rng(seed);
    let (chosen, _) = pairs.partial_shuffle(&mut rng, m);
    let edges: Vec<(u32, u32, f64)> = chosen.iter().enumerate().map(|(i, &(a, b))| (a, b, (i + 1) as f64)).collect();
    flag_complex(n, &edges, max_dim)
}

/// Parametric shapes for [`sample_shapes`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    /// Uniform in `[0, 1]^dim`.
    Cube { dim: usize },
    /// Uniform on the unit sphere of `R^4`.
    Sphere3,
    /// Figure-eight Klein bottle in `R^5`, uniform with respect to area.
    KleinBottle,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Cube { dim } => write!(f, "cube:{dim}"),
            Shape::Sphere3 => write!(f, "sphere-s3"),
            Shape::KleinBottle => write!(f, "klein-bottle"),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Accepts `cube`, `cube:D`, `sphere-s3` and `klein-bottle`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(Shape::Cube { dim: 3 }),
            "sphere-s3" | "sphere" => Ok(Shape::Sphere3),
            "klein-bottle" | "klein" => Ok(Shape::KleinBottle),
            _ => match s.strip_prefix("cube:").map(str::parse::<usize>) {
                Some(Ok(dim)) if dim > 0 => Ok(Shape::Cube { dim }),
                _ => Err(Error::InvalidInput(format!("unknown shape '{s}'"))),
            },
        }
    }
}

/// Major radius of the figure-eight immersion.
pub const KLEIN_RADIUS: f64 = 2.0;
/// Amplitude of the two extra coordinates that remove the self-intersection.
pub const KLEIN_LIFT: f64 = 1.0;

/// The figure-eight Klein bottle lifted to `R^5`.
///
/// The first three coordinates are the classical figure-eight immersion
/// `((R + c sin v - s sin 2v) cos t, (R + c sin v - s sin 2v) sin t,
/// s sin v + c sin 2v)` with `c = cos(t/2)`, `s = sin(t/2)`. It fails to be
/// injective only where `sin v = 0`, and the extra pair
/// `(e cos v cos t, e cos v sin t)` separates those points. Both are
/// invariant under `(t + 2 pi, v) ~ (t, -v)`.
pub fn klein_bottle_point(t: f64, v: f64) -> [f64; 5] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let radial = KLEIN_RADIUS + c * v.sin() - s * (2.0 * v).sin();
    [
        radial * t.cos(),
        radial * t.sin(),
        s * v.sin() + c * (2.0 * v).sin(),
        KLEIN_LIFT * v.cos() * t.cos(),
        KLEIN_LIFT * v.cos() * t.sin(),
    ]
}

/// `|d/dt x d/dv|` of the parametrization, by central differences.
fn klein_area_element(t: f64, v: f64) -> f64 {
    const H: f64 = 1e-6;
    let diff = |a: [f64; 5], b: [f64; 5]| -> [f64; 5] { std::array::from_fn(|i| (a[i] - b[i]) / (2.0 * H)) };
    let dt = diff(klein_bottle_point(t + H, v), klein_bottle_point(t - H, v));
    let dv = diff(klein_bottle_point(t, v + H), klein_bottle_point(t, v - H));
    let dot = |a: &[f64; 5], b: &[f64; 5]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // Gram determinant of the two tangent vectors
    (dot(&dt, &dt) * dot(&dv, &dv) - dot(&dt, &dv).powi(2)).max(0.0).sqrt()
}

fn klein_max_area_element() -> f64 {
    const GRID: usize = 256;
    let mut max: f64 = 0.0;
    for i in 0..GRID {
        for k in 0..GRID {
            let t = TAU * i as f64 / GRID as f64;
            let v = TAU * k as f64 / GRID as f64;
            max = max.max(klein_area_element(t, v));
        }
    }
    max
}

/// `n` pseudo-random points of a shape, reproducible per seed.
pub fn sample_shapes(shape: Shape, n: usize, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be positive".into()));
    }
    let mut rng = rng(seed);
    let points = match shape {
        Shape::Cube { dim } => (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect(),
        Shape::Sphere3 => (0..n)
            .map(|_| loop {
                let g: Vec<f64> = (0..4).map(|_| rng.sample(StandardNormal)).collect();
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-9 {
                    break g.iter().map(|x| x / norm).collect();
                }
            })
            .collect(),
        Shape::KleinBottle => {
            let bound = 1.05 * klein_max_area_element();
            (0..n)
                .map(|_| loop {
                    let t = rng.random::<f64>() * TAU;
                    let v = rng.random::<f64>() * TAU;
                    if rng.random::<f64>() * bound <= klein_area_element(t, v) {
                        break klein_bottle_point(t, v).to_vec();
                    }
                })
                .collect()
        }
    };
    PointCloud::new(points)
}

/// Greedy max-min subsample of `k` points.
///
/// Starts from the point with index `seed % len` and repeatedly adds the point
/// farthest from those already chosen. The result covers the cloud far more
/// evenly than a random subset of the same size.
pub fn maxmin_subsample(cloud: &PointCloud, k: usize, seed: u64) -> Result<PointCloud> {
    let pts = cloud.points();
    if k == 0 || k > pts.len() {
        return Err(Error::InvalidInput(format!("cannot pick {k} of {} points", pts.len())));
    }
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let first = (seed % pts.len() as u64) as usize;
    let mut chosen = vec![first];
    let mut nearest: Vec<f64> = pts.iter().map(|p| dist(p, &pts[first])).collect();
    while chosen.len() < k {
        let (next, _) = nearest.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty cloud");
        chosen.push(next);
        for (d, p) in nearest.iter_mut().zip(pts) {
            *d = d.min(dist(p, &pts[next]));
        }
    }
    PointCloud::new(chosen.into_iter().map(|i| pts[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::reduce_single_field;
    use proptest::prelude::*;

    fn count_dim(k: &FilteredComplex, d: usize) -> usize {
        k.simplices().iter().filter(|s| s.dim() == d).count()
    }

    #[test]
    fn rips_below_threshold() {
        let m = DistanceMatrix::from_lower_triangular(vec![vec![], vec![1.0]]).unwrap();
        let k = rips_filtration(&m, &RipsParams::new(0.5, 2).unwrap()).unwrap();
        assert_eq!((k.len(), count_dim(&k, 1)), (2, 0));
    }

    #[test]
    fn rips_equilateral_triangle() {
        let m = DistanceMatrix::from_lower_triangular(vec![vec![], vec![1.0], vec![1.0, 1.0]]).unwrap();
        let k = rips_filtration(&m, &RipsParams::new(1.0, 2).unwrap()).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.values(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn rips_unit_square_has_a_loop() {
        let cloud = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let k = rips_from_points(&cloud, &RipsParams::new(1.1, 2).unwrap()).unwrap();
        assert_eq!((count_dim(&k, 1), count_dim(&k, 2)), (4, 0));
        let (dgm, _) = reduce_single_field(&k, 2, false).unwrap();
        assert_eq!(dgm.essential().filter(|p| p.dim == 1).count(), 1);
    }

    #[test]
    fn distance_matrix_validation() {
        assert!(DistanceMatrix::from_square(&[vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(DistanceMatrix::from_square(&[vec![1.0]]).is_err());
        assert!(DistanceMatrix::from_lower_triangular(vec![vec![], vec![-1.0]]).is_err());
        assert!(DistanceMatrix::from_lower_triangular(vec![vec![], vec![1.0, 2.0]]).is_err());
        let m = DistanceMatrix::from_square(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!((m.get(0, 1), m.get(1, 0), m.get(1, 1)), (2.0, 2.0, 0.0));
        assert!(RipsParams::new(-1.0, 1).is_err());
    }

    #[test]
    fn linial_meshulam_examples() {
        let k = linial_meshulam(3, 1, 7).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.value(7), 1.0);
        let k = linial_meshulam(4, 4, 1).unwrap();
        let (dgm, _) = reduce_single_field(&k, 3, false).unwrap();
        assert_eq!(dgm.betti_at(k.len() as u32, 2), 1);
        let k = linial_meshulam(50, 3000, 3).unwrap();
        assert_eq!(count_dim(&k, 2), 3000);
        assert!(linial_meshulam(4, 5, 0).is_err());
    }

    #[test]
    fn random_flag_examples() {
        let k = random_flag(3, 3, 2, 5).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.value(7), 3.0);
        let k = random_flag(5, 0, 3, 5).unwrap();
        let (dgm, _) = reduce_single_field(&k, 2, false).unwrap();
        assert_eq!(dgm.betti_at(k.len() as u32, 0), 5);
        let k = random_flag(6, 15, 2, 5).unwrap();
        assert_eq!(count_dim(&k, 2), 20);
        assert!(random_flag(3, 4, 1, 0).is_err());
    }

    #[test]
    fn samplers() {
        let s = sample_shapes(Shape::Sphere3, 200, 1).unwrap();
        assert!(s.points().iter().all(|p| (p.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-12));
        let c = sample_shapes(Shape::Cube { dim: 3 }, 200, 1).unwrap();
        assert!(c.points().iter().flatten().all(|x| (0.0..=1.0).contains(x)));
        let k = sample_shapes(Shape::KleinBottle, 10, 1).unwrap();
        assert_eq!(k.dim(), 5);
        assert_eq!(sample_shapes(Shape::KleinBottle, 10, 1).unwrap(), k);
        assert!(sample_shapes(Shape::Sphere3, 0, 1).is_err());
        assert_eq!("cube:4".parse::<Shape>().unwrap(), Shape::Cube { dim: 4 });
        assert!("torus".parse::<Shape>().is_err());
    }

    #[test]
    fn klein_bottle_identification() {
        for (t, v) in [(0.3, 1.1), (2.0, -0.4), (5.5, 3.0)] {
            let a = klein_bottle_point(t, v);
            let b = klein_bottle_point(t + TAU, -v);
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
        }
    }

    #[test]
    fn seeded_generators_reproduce() {
        let a = linial_meshulam(10, 30, 42).unwrap();
        let b = linial_meshulam(10, 30, 42).unwrap();
        assert_eq!(a.simplices(), b.simplices());
        let c = linial_meshulam(10, 30, 43).unwrap();
        assert_ne!(a.simplices(), c.simplices());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rips_grows_with_threshold(seed in 0u64..1000, lo in 0.1f64..0.6, extra in 0.0f64..0.5) {
            let cloud = sample_shapes(Shape::Cube { dim: 2 }, 12, seed).unwrap();
            let small = rips_from_points(&cloud, &RipsParams::new(lo, 2).unwrap()).unwrap();
            let large = rips_from_points(&cloud, &RipsParams::new(lo + extra, 2).unwrap()).unwrap();
            for (j, s) in small.simplices().iter().enumerate() {
                let i = large.index_of(s);
                prop_assert!(i.is_some());
                prop_assert_eq!(large.value(i.unwrap()), small.value(j as u32 + 1));
            }
        }

        #[test]
        fn rips_ignores_point_order(seed in 0u64..1000) {
            let cloud = sample_shapes(Shape::Cube { dim: 3 }, 10, seed).unwrap();
            let mut reversed = cloud.points().to_vec();
            reversed.reverse();
            let reversed = PointCloud::new(reversed).unwrap();
            let params = RipsParams::new(0.7, 3).unwrap();
            let a = rips_from_points(&cloud, &params).unwrap();
            let b = rips_from_points(&reversed, &params).unwrap();
            let n = cloud.len() as u32 - 1;
            let mut va: Vec<(Vec<u32>, u64)> = a.simplices().iter().zip(a.values()).map(|(s, v)| (s.vertices().to_vec(), v.to_bits())).collect();
            let mut vb: Vec<(Vec<u32>, u64)> = b.simplices().iter().zip(b.values()).map(|(s, v)| {
                let mut vs: Vec<u32> = s.vertices().iter().map(|x| n - x).collect();
                vs.sort_unstable();
                (vs, v.to_bits())
            }).collect();
            va.sort();
            vb.sort();
            prop_assert_eq!(va, vb);
        }
    }
}
