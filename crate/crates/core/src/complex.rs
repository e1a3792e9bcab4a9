//! Filtered simplicial complexes and boundary columns over `Z/QZ`.
//!
//! Simplices are addressed by their 1-based filtration index, which is also
//! the row index used in boundary columns.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::crt::{ModulusMask, PrimeBasis, RingElem};
use crate::error::{Error, Result};

pub type Vertex = u32;

/// A simplex, stored as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[Vertex; 4]>);

impl Simplex {
    /// Sorts the vertices; fails on an empty list or a repeated vertex.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: SmallVec<[Vertex; 4]> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::InvalidComplex("simplex with no vertices".into()));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!("repeated vertex in {v:?}")));
        }
        Ok(Simplex(v))
    }

    pub(crate) fn from_sorted(vertices: &[Vertex]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(SmallVec::from_slice(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The facets `[v_0, .., ^v_i, .., v_d]` together with the sign `(-1)^i`.
    pub fn facets(&self) -> impl Iterator<Item = (Simplex, i8)> + '_ {
        let d = self.dim();
        (0..=d).filter(move |_| d > 0).map(move |i| {
            let facet: SmallVec<[Vertex; 4]> =
                self.0.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            (Simplex(facet), if i % 2 == 0 { 1 } else { -1 })
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A simplicial complex with one simplex per filtration step.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    values: Vec<f64>,
    index: HashMap<Simplex, u32>,
    /// Boundary of simplex `j` is `bd_entries[bd_offsets[j-1]..bd_offsets[j]]`, sorted by row.
    bd_offsets: Vec<usize>,
    bd_entries: Vec<(u32, i8)>,
}

impl FilteredComplex {
    /// Complex from simplices already in filtration order.
    ///
    /// Checks that values are non-decreasing, that no simplex is repeated and
    /// that every facet appears before its coface.
    pub fn new(simplices: Vec<Simplex>, values: Vec<f64>) -> Result<Self> {
        if simplices.len() != values.len() {
            return Err(Error::InvalidComplex(format!(
                "{} simplices but {} filtration values",
                simplices.len(),
                values.len()
            )));
        }
        if simplices.len() >= u32::MAX as usize {
            return Err(Error::InvalidComplex("too many simplices".into()));
        }
        if let Some(i) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidComplex(format!("NaN filtration value at index {}", i + 1)));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidComplex(format!("filtration values decrease at index {}", i + 2)));
        }
        let mut index = HashMap::with_capacity(simplices.len());
        let mut bd_offsets = Vec::with_capacity(simplices.len() + 1);
        let mut bd_entries = Vec::new();
        bd_offsets.push(0);
        for (pos, sigma) in simplices.iter().enumerate() {
            let start = bd_entries.len();
            for (facet, sign) in sigma.facets() {
                match index.get(&facet) {
                    Some(&row) => bd_entries.push((row, sign)),
                    None => {
                        return Err(Error::InvalidComplex(format!(
                            "facet {facet:?} of {sigma:?} is missing or comes later"
                        )))
                    }
                }
            }
            bd_entries[start..].sort_unstable_by_key(|&(row, _)| row);
            bd_offsets.push(bd_entries.len());
            if index.insert(sigma.clone(), pos as u32 + 1).is_some() {
                return Err(Error::InvalidComplex(format!("simplex {sigma:?} listed twice")));
            }
        }
        Ok(FilteredComplex { simplices, values, index, bd_offsets, bd_entries })
    }

    /// Complex from simplices in any order.
    ///
    /// Sorts by value, breaking ties by dimension and then lexicographically by
    /// vertices, which yields a valid filtration whenever faces never have a
    /// larger value than their cofaces.
    pub fn from_unsorted(mut items: Vec<(Simplex, f64)>) -> Result<Self> {
        if items.iter().any(|(_, v)| v.is_nan()) {
            return Err(Error::InvalidComplex("NaN filtration value".into()));
        }
        items.sort_by(|(a, va), (b, vb)| va.total_cmp(vb).then(a.dim().cmp(&b.dim())).then_with(|| a.cmp(b)));
        let (simplices, values) = items.into_iter().unzip();
        Self::new(simplices, values)
    }

    /// Number of simplices `m`.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Simplex at 1-based index `j`.
    pub fn simplex(&self, j: u32) -> &Simplex {
        &self.simplices[j as usize - 1]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn value(&self, j: u32) -> f64 {
        self.values[j as usize - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim_of(&self, j: u32) -> usize {
        self.simplex(j).dim()
    }

    pub fn max_dim(&self) -> usize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    /// 1-based index of a simplex.
    pub fn index_of(&self, sigma: &Simplex) -> Option<u32> {
        self.index.get(sigma).copied()
    }

    /// Facet rows of simplex `j` with signs `+-1`, sorted by row.
    pub fn boundary(&self, j: u32) -> &[(u32, i8)] {
        let j = j as usize;
        &self.bd_entries[self.bd_offsets[j - 1]..self.bd_offsets[j]]
    }

    /// Largest index whose filtration value is at most `value` (0 if none).
    pub fn last_index_at(&self, value: f64) -> u32 {
        self.values.partition_point(|&v| v <= value) as u32
    }

    /// Column `j` of the boundary matrix over `Z/QZ`; `-1` is stored as `Q - 1`.
    pub fn boundary_column(&self, j: u32) -> SparseColumn {
        SparseColumn {
            entries: self
                .boundary(j)
                .iter()
                .map(|&(row, sign)| (row, if sign > 0 { RingElem::ONE } else { RingElem::MINUS_ONE }))
                .collect(),
        }
    }
}

/// One column of a matrix over `Z/QZ`: entries sorted by row, none zero mod `Q`.
///
/// Entries that vanish in some but not all fields are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumn {
    entries: Vec<(u32, RingElem)>,
}

impl SparseColumn {
    pub fn new() -> Self {
        SparseColumn::default()
    }

    /// Validates row order and drops zero coefficients.
    pub fn from_entries(entries: Vec<(u32, RingElem)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput("column rows must be strictly increasing".into()));
        }
        Ok(SparseColumn { entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// The unit vector `e_row`.
    pub fn unit(row: u32) -> Self {
        SparseColumn { entries: vec![(row, RingElem::ONE)] }
    }

    pub fn entries(&self) -> &[(u32, RingElem)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: u32) -> Option<&RingElem> {
        self.entries.binary_search_by_key(&row, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    /// Non-zero entries of the projection onto `Z/q_sZ`.
    pub fn project(&self, basis: &PrimeBasis, s: usize) -> Vec<(u32, u64)> {
        self.entries.iter().map(|(row, c)| (*row, basis.crt_project(c, s))).filter(|&(_, c)| c != 0).collect()
    }

    /// Position of the extended low: the lowest entry not divisible by `Q_S`.
    pub(crate) fn low_position(&self, mask: &ModulusMask, full: bool, basis: &PrimeBasis) -> Option<usize> {
        if full {
            // every stored entry is non-zero mod Q
            return self.entries.len().checked_sub(1);
        }
        self.entries.iter().rposition(|(_, c)| basis.is_nonzero_mod(c, mask))
    }

    /// `self <- self + alpha * source`, merging into `scratch` and swapping.
    pub(crate) fn axpy_in_place(
        &mut self,
        alpha: &RingElem,
        source: &SparseColumn,
        basis: &PrimeBasis,
        scratch: &mut Vec<(u32, RingElem)>,
    ) {
        if alpha.is_zero() || source.is_empty() {
            return;
        }
        scratch.clear();
        scratch.reserve(self.entries.len() + source.entries.len());
        let mut target = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut src = source.entries.iter().peekable();
        loop {
            match (target.peek(), src.peek()) {
                (Some(t), Some(s)) if t.0 < s.0 => scratch.push(target.next().unwrap()),
                (Some(t), Some(s)) if t.0 > s.0 => {
                    let (row, c) = src.next().unwrap();
                    let v = basis.mul(alpha, c);
                    if !v.is_zero() {
                        scratch.push((*row, v));
                    }
                }
                (Some(_), Some(_)) => {
                    let (row, t) = target.next().unwrap();
                    let (_, c) = src.next().unwrap();
                    let v = basis.mul_add(&t, alpha, c);
                    if !v.is_zero() {
                        scratch.push((row, v));
                    }
                }
                (Some(_), None) => {
                    scratch.extend(target);
                    break;
                }
                (None, Some(_)) => {
                    for (row, c) in src {
                        let v = basis.mul(alpha, c);
                        if !v.is_zero() {
                            scratch.push((*row, v));
                        }
                    }
                    break;
                }
                (None, None) => break,
            }
        }
        let mut merged = std::mem::take(scratch);
        std::mem::swap(&mut self.entries, &mut merged);
        *scratch = merged;
    }

    fn scaled(&self, c: &RingElem, basis: &PrimeBasis) -> SparseColumn {
        SparseColumn {
            entries: self
                .entries
                .iter()
                .map(|(row, v)| (*row, basis.mul(c, v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }
}

/// `target + alpha * source` over `Z/QZ`.
pub fn column_axpy(target: &SparseColumn, alpha: &RingElem, source: &SparseColumn, basis: &PrimeBasis) -> SparseColumn {
    let mut out = target.clone();
    out.axpy_in_place(alpha, source, basis, &mut Vec::new());
    out
}

/// Extended low: the largest row `k` with `col[k] mod Q_S != 0`.
pub fn low_extended(col: &SparseColumn, mask: &ModulusMask, basis: &PrimeBasis) -> Option<u32> {
    let full = mask.len() == basis.len();
    col.low_position(mask, full, basis).map(|p| col.entries[p].0)
}

/// Partial exchange: the projections of `a` and `b` are swapped in the fields of `S`.
pub fn partial_swap(
    a: &SparseColumn,
    b: &SparseColumn,
    mask: &ModulusMask,
    basis: &PrimeBasis,
) -> (SparseColumn, SparseColumn) {
    let keep = basis.partial_identity(&basis.full_mask().without(mask));
    let take = basis.partial_identity(mask);
    let a_new = column_axpy(&a.scaled(&keep, basis), &take, b, basis);
    let b_new = column_axpy(&b.scaled(&keep, basis), &take, a, basis);
    (a_new, b_new)
}

/// Partial negation: multiply by `L_[r] - 2 L_S`.
pub fn partial_negate(a: &SparseColumn, mask: &ModulusMask, basis: &PrimeBasis) -> SparseColumn {
    let identity = basis.partial_identity(mask);
    let factor = basis.sub(&RingElem::ONE, &basis.add(&identity, &identity));
    a.scaled(&factor, basis)
}
