//! Persistence over all fields `Z/q_sZ` of a prime basis in one reduction
//! over `Z/QZ`.
//!
//! Each reduced column `j` carries a set `L(j)` of `(row, mask)` entries: in
//! every field of `mask` the column has its low at `row`. Masks of one column
//! are disjoint, as are masks registered at the same row by different
//! columns, so a field never has two columns with the same low.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::complex::{FilteredComplex, SparseColumn};
use crate::crt::{ModulusMask, PrimeBasis, RingElem};
use crate::error::{Error, Result};
use crate::field::{column_order, FieldDiagram, PersistencePair};

/// A pair `(birth, death)` together with the fields in which it occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiFieldPair {
    pub dim: usize,
    pub birth: u32,
    /// `None` for an essential class.
    pub death: Option<u32>,
    pub mask: ModulusMask,
}

/// The superimposed diagrams of every field of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiFieldDiagram {
    primes: Vec<u64>,
    pairs: Vec<MultiFieldPair>,
    values: Vec<f64>,
}

impl MultiFieldDiagram {
    /// Sorts pairs by birth, then death.
    ///
    /// `values[i - 1]` is the filtration value of index `i`.
    pub fn new(primes: Vec<u64>, mut pairs: Vec<MultiFieldPair>, values: Vec<f64>) -> Result<Self> {
        let r = primes.len();
        for p in &pairs {
            if p.mask.is_empty() || p.mask.fields().any(|s| s >= r) {
                return Err(Error::InvalidInput(format!("pair {p:?} has a mask outside the basis")));
            }
            let last = p.death.unwrap_or(p.birth) as usize;
            if p.birth == 0 || last > values.len() || p.death.is_some_and(|d| d <= p.birth) {
                return Err(Error::InvalidInput(format!("pair {p:?} has invalid indices")));
            }
        }
        pairs.sort_by_key(|p| (p.birth, p.death));
        Ok(MultiFieldDiagram { primes, pairs, values })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn pairs(&self) -> &[MultiFieldPair] {
        &self.pairs
    }

    /// Filtration value of index `i`.
    pub fn value(&self, i: u32) -> f64 {
        self.values[i as usize - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `P_r`: the number of triples plus essential entries.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn triples(&self) -> impl Iterator<Item = &MultiFieldPair> {
        self.pairs.iter().filter(|p| p.death.is_some())
    }

    pub fn essentials(&self) -> impl Iterator<Item = &MultiFieldPair> {
        self.pairs.iter().filter(|p| p.death.is_none())
    }

    /// Entries present in only some of the fields.
    pub fn partial_entries(&self) -> impl Iterator<Item = &MultiFieldPair> {
        let r = self.primes.len();
        self.pairs.iter().filter(move |p| p.mask.len() != r)
    }

    /// Primes of the fields in `mask`.
    pub fn mask_primes(&self, mask: &ModulusMask) -> Vec<u64> {
        mask.fields().map(|s| self.primes[s]).collect()
    }

    /// The diagram of field `s` (0-based).
    pub fn project(&self, s: usize) -> FieldDiagram {
        let pairs = self
            .pairs
            .iter()
            .filter(|p| p.mask.contains(s))
            .map(|p| PersistencePair { dim: p.dim, birth: p.birth, death: p.death })
            .collect();
        FieldDiagram::new(self.primes[s], pairs)
    }
}

/// The diagram of field `s` (0-based).
pub fn project_diagram(mf: &MultiFieldDiagram, s: usize) -> FieldDiagram {
    mf.project(s)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub clearing: bool,
    /// Keep the reduced matrix and the reduction basis for [`Reduction::reconstruct_cycle`].
    pub retain_basis: bool,
}

/// Operation counts of one reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub axpy: u64,
    /// Partial inverses requested, including those served from the cache.
    pub partial_inverses: u64,
    pub cache_hits: u64,
    pub cleared_columns: u64,
    /// `column_axpys[j - 1]`: column operations applied to column `j`.
    pub column_axpys: Vec<u32>,
    /// `registry_sizes[j - 1] = |L(j)|`.
    pub registry_sizes: Vec<u32>,
}

impl ReductionStats {
    /// `sum_{j' < j} |L(j')|` for every `j`, in index order.
    pub fn axpy_bounds(&self) -> Vec<u64> {
        let mut acc = 0u64;
        self.registry_sizes
            .iter()
            .map(|&size| {
                let bound = acc;
                acc += u64::from(size);
                bound
            })
            .collect()
    }

    /// `sum_j sum_{j' < j} |L(j')|`.
    pub fn total_axpy_bound(&self) -> u64 {
        self.axpy_bounds().iter().sum()
    }

    /// Columns that received more operations than their bound.
    pub fn bound_violations(&self) -> Vec<u32> {
        self.column_axpys
            .iter()
            .zip(self.axpy_bounds())
            .enumerate()
            .filter(|&(_, (&ops, bound))| u64::from(ops) > bound)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }
}

/// Result of a multi-field reduction, optionally with the matrices needed to
/// recover representative cycles.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub diagram: MultiFieldDiagram,
    pub stats: ReductionStats,
    basis: PrimeBasis,
    reduced: Option<Vec<SparseColumn>>,
    chains: Option<Vec<SparseColumn>>,
}

impl Reduction {
    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    /// Reduced column `j` over `Z/QZ`, when retained.
    pub fn reduced_column(&self, j: u32) -> Option<&SparseColumn> {
        self.reduced.as_ref().and_then(|cols| cols.get(j as usize))
    }

    /// A cycle over `Z/q_sZ` associated with index `j` in field `s`.
    ///
    /// For a death `j` this is the reduced column, whose low is the birth. For
    /// a birth it is a cycle born at `j`: the reduction-basis column, or the
    /// reduced column of the matching death when `j` was cleared.
    pub fn reconstruct_cycle(&self, j: u32, s: usize) -> Result<Vec<(u32, u64)>> {
        let m = self.diagram.values.len() as u32;
        if j == 0 || j > m {
            return Err(Error::InvalidInput(format!("index {j} outside 1..={m}")));
        }
        if s >= self.basis.len() {
            return Err(Error::InvalidInput(format!("field {s} outside the basis")));
        }
        let reduced =
            self.reduced.as_ref().ok_or_else(|| Error::State("reduction ran without retaining its matrices".into()))?;
        let column = reduced[j as usize].project(&self.basis, s);
        if !column.is_empty() {
            return Ok(column);
        }
        if let Some(chains) = &self.chains {
            let chain = chains[j as usize].project(&self.basis, s);
            if !chain.is_empty() {
                return Ok(chain);
            }
        }
        let death = self.diagram.pairs.iter().find(|p| p.birth == j && p.mask.contains(s)).and_then(|p| p.death);
        match death {
            Some(d) => Ok(reduced[d as usize].project(&self.basis, s)),
            None => Err(Error::State(format!(
                "index {j} is essential in field {s} but the reduction basis was not retained"
            ))),
        }
    }
}

/// One entry of `L(j)` seen from its row: column `j` has its low at that row
/// in the fields of `mask`.
#[derive(Clone, Debug)]
struct RegistryEntry {
    column: u32,
    mask: ModulusMask,
}

/// Reduces the boundary matrix over `Z/QZ` and returns the multi-field diagram.
pub fn reduce_multifield(
    complex: &FilteredComplex,
    basis: &PrimeBasis,
    clearing: bool,
) -> (MultiFieldDiagram, ReductionStats) {
    let run = reduce_multifield_with(complex, basis, Options { clearing, retain_basis: false });
    (run.diagram, run.stats)
}

pub fn reduce_multifield_with(complex: &FilteredComplex, basis: &PrimeBasis, options: Options) -> Reduction {
    let m = complex.len();
    let full = basis.full_mask();
    let mut columns: Vec<SparseColumn> = vec![SparseColumn::new(); m + 1];
    let mut chains: Vec<SparseColumn> =
        if options.retain_basis { vec![SparseColumn::new(); m + 1] } else { Vec::new() };
    let mut registry: Vec<SmallVec<[RegistryEntry; 1]>> = vec![SmallVec::new(); m + 1];
    let mut lows: Vec<SmallVec<[(u32, ModulusMask); 1]>> = vec![SmallVec::new(); m + 1];
    let mut birth_masks: Vec<Option<ModulusMask>> = vec![None; m + 1];
    let mut cache: HashMap<(RingElem, ModulusMask), RingElem> = HashMap::new();
    let mut stats =
        ReductionStats { column_axpys: vec![0; m], registry_sizes: vec![0; m], ..ReductionStats::default() };
    let mut scratch = Vec::new();

    for j in column_order(complex, options.clearing) {
        let ju = j as usize;
        if options.clearing && birth_masks[ju].as_ref() == Some(&full) {
            stats.cleared_columns += 1;
            continue;
        }
        let mut col = complex.boundary_column(j);
        let mut chain = options.retain_basis.then(|| SparseColumn::unit(j));
        let mut open = full.clone();
        let mut previous_low = u32::MAX;

        while let Some(pos) = col.low_position(&open, open == full, basis) {
            let (k, pivot) = col.entries()[pos].clone();
            debug_assert!(k < previous_low, "lows must strictly decrease");
            previous_low = k;
            let mut units = basis.unit_fields(&pivot, &open);
            debug_assert!(!units.is_empty());

            for entry in &registry[k as usize] {
                if !units.intersects(&entry.mask) {
                    continue;
                }
                units = units.without(&entry.mask);
                let source = &columns[entry.column as usize];
                let lead = source.get(k).expect("registered low is stored");
                let xbar = partial_inverse_cached(basis, &full, lead, &entry.mask, &mut cache, &mut stats);
                let current = col.get(k).cloned().unwrap_or(RingElem::ZERO);
                let alpha = basis.neg(&basis.mul(&current, &xbar));
                col.axpy_in_place(&alpha, source, basis, &mut scratch);
                if let Some(chain) = chain.as_mut() {
                    chain.axpy_in_place(&alpha, &chains[entry.column as usize], basis, &mut scratch);
                }
                stats.axpy += 1;
                stats.column_axpys[ju - 1] += 1;
            }

            if !units.is_empty() {
                open = open.without(&units);
                lows[ju].push((k, units));
            }
        }

        for (k, mask) in &lows[ju] {
            registry[*k as usize].push(RegistryEntry { column: j, mask: mask.clone() });
            let births = birth_masks[*k as usize].get_or_insert_with(|| basis.empty_mask());
            debug_assert!(!births.intersects(mask));
            *births = births.union(mask);
        }
        stats.registry_sizes[ju - 1] = lows[ju].len() as u32;
        columns[ju] = col;
        if let Some(chain) = chain {
            chains[ju] = chain;
        }
    }

    let diagram = extract_diagram(complex, basis, &lows, &birth_masks);
    Reduction {
        diagram,
        stats,
        basis: basis.clone(),
        reduced: options.retain_basis.then_some(columns),
        chains: options.retain_basis.then_some(chains),
    }
}

fn partial_inverse_cached(
    basis: &PrimeBasis,
    full: &ModulusMask,
    x: &RingElem,
    mask: &ModulusMask,
    cache: &mut HashMap<(RingElem, ModulusMask), RingElem>,
    stats: &mut ReductionStats,
) -> RingElem {
    stats.partial_inverses += 1;
    if x.is_unit_sign() && mask == full {
        return x.clone();
    }
    let key = (x.clone(), mask.clone());
    if let Some(xbar) = cache.get(&key) {
        stats.cache_hits += 1;
        return xbar.clone();
    }
    let (xbar, units) = basis.partial_inverse(x, mask);
    debug_assert!(&units == mask, "registered lows are units in their fields");
    cache.insert(key, xbar.clone());
    xbar
}

fn extract_diagram(
    complex: &FilteredComplex,
    basis: &PrimeBasis,
    lows: &[SmallVec<[(u32, ModulusMask); 1]>],
    birth_masks: &[Option<ModulusMask>],
) -> MultiFieldDiagram {
    let full = basis.full_mask();
    let mut pairs = Vec::new();
    for (j, entries) in lows.iter().enumerate().skip(1) {
        for (k, mask) in entries {
            pairs.push(MultiFieldPair {
                dim: complex.dim_of(*k),
                birth: *k,
                death: Some(j as u32),
                mask: mask.clone(),
            });
        }
    }
    for i in 1..=complex.len() {
        let mut used = basis.empty_mask();
        for (_, mask) in &lows[i] {
            used = used.union(mask);
        }
        if let Some(births) = &birth_masks[i] {
            debug_assert!(!used.intersects(births), "index {i} both birth and death in a field");
            used = used.union(births);
        }
        let essential = full.without(&used);
        if !essential.is_empty() {
            pairs.push(MultiFieldPair { dim: complex.dim_of(i as u32), birth: i as u32, death: None, mask: essential });
        }
    }
    MultiFieldDiagram::new(basis.primes().to_vec(), pairs, complex.values().to_vec())
        .expect("reduction produces a valid diagram")
}
