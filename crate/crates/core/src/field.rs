//! Persistence over a single prime field `Z/qZ`.
//!
//! This is the textbook left-to-right column reduction. It is the baseline
//! the modular reconstruction is timed against, and the oracle it is checked
//! against.

use crate::complex::FilteredComplex;
use crate::crt::is_prime;
use crate::error::{Error, Result};

/// One interval of an indexed persistence diagram; `death == None` is `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: u32,
    pub death: Option<u32>,
}

impl PersistencePair {
    /// Alive at index `t`: born at or before `t`, not yet dead.
    pub fn alive_at(&self, t: u32) -> bool {
        self.birth <= t && self.death.is_none_or(|j| j > t)
    }
}

/// Indexed persistence diagram over `Z/qZ`, sorted by birth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDiagram {
    pub prime: u64,
    pub pairs: Vec<PersistencePair>,
}

impl FieldDiagram {
    pub fn new(prime: u64, mut pairs: Vec<PersistencePair>) -> Self {
        pairs.sort_unstable_by_key(|p| (p.birth, p.death));
        FieldDiagram { prime, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn finite(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| p.death.is_some())
    }

    pub fn essential(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| p.death.is_none())
    }

    /// Betti number in dimension `d` of the complex at index `t`.
    pub fn betti_at(&self, t: u32, d: usize) -> usize {
        self.pairs.iter().filter(|p| p.dim == d && p.alive_at(t)).count()
    }
}

/// `Z/qZ` with an inverse table for small `q`.
#[derive(Clone, Debug)]
pub(crate) struct PrimeField {
    q: u64,
    inverses: Vec<u32>,
}

impl PrimeField {
    pub(crate) fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q > u64::from(u32::MAX) {
            return Err(Error::Arithmetic(format!("{q} is not a prime below 2^32")));
        }
        let mut inverses = Vec::new();
        if q < 1 << 16 {
            inverses = vec![0u32; q as usize];
            for x in 1..q {
                inverses[x as usize] = pow_mod(x, q - 2, q) as u32;
            }
        }
        Ok(PrimeField { q, inverses })
    }

    fn inv(&self, x: u32) -> u32 {
        match self.inverses.get(x as usize) {
            Some(&i) => i,
            None => pow_mod(u64::from(x), self.q - 2, self.q) as u32,
        }
    }

    fn neg_one(&self) -> u32 {
        (self.q - 1) as u32
    }
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

/// `col <- col + alpha * src` over `Z/qZ`.
fn axpy(col: &mut Vec<(u32, u32)>, alpha: u32, src: &[(u32, u32)], q: u64, scratch: &mut Vec<(u32, u32)>) {
    scratch.clear();
    scratch.reserve(col.len() + src.len());
    let alpha = u64::from(alpha);
    let (mut i, mut k) = (0, 0);
    while i < col.len() && k < src.len() {
        let (rt, ct) = col[i];
        let (rs, cs) = src[k];
        if rt < rs {
            scratch.push((rt, ct));
            i += 1;
        } else if rt > rs {
            scratch.push((rs, (alpha * u64::from(cs) % q) as u32));
            k += 1;
        } else {
            let v = (u64::from(ct) + alpha * u64::from(cs)) % q;
            if v != 0 {
                scratch.push((rt, v as u32));
            }
            i += 1;
            k += 1;
        }
    }
    scratch.extend_from_slice(&col[i..]);
    scratch.extend(src[k..].iter().map(|&(r, c)| (r, (alpha * u64::from(c) % q) as u32)));
    std::mem::swap(col, scratch);
}

/// Column processing order: left to right, or by decreasing dimension when
/// clearing so that a column is known to be a birth before it is visited.
pub(crate) fn column_order(complex: &FilteredComplex, clearing: bool) -> Vec<u32> {
    let mut order: Vec<u32> = (1..=complex.len() as u32).collect();
    if clearing {
        order.sort_by_key(|&j| std::cmp::Reverse(complex.dim_of(j)));
    }
    order
}

/// Reduces the boundary matrix over `Z/qZ`.
///
/// Returns the diagram and the number of column operations performed. With
/// `clearing`, a column whose index is already known to be the birth of a
/// finite pair is set to zero without being reduced.
pub fn reduce_single_field(complex: &FilteredComplex, q: u64, clearing: bool) -> Result<(FieldDiagram, u64)> {
    let field = PrimeField::new(q)?;
    let m = complex.len();
    let mut columns: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m + 1];
    let mut pivot_of_row = vec![0u32; m + 1];
    let mut cleared = vec![false; m + 1];
    let mut scratch = Vec::new();
    let mut ops = 0u64;

    for j in column_order(complex, clearing) {
        if cleared[j as usize] {
            continue;
        }
        let mut col: Vec<(u32, u32)> =
            complex.boundary(j).iter().map(|&(row, sign)| (row, if sign > 0 { 1 } else { field.neg_one() })).collect();
        while let Some(&(k, c)) = col.last() {
            let pivot = pivot_of_row[k as usize];
            if pivot == 0 {
                break;
            }
            let src = &columns[pivot as usize];
            let lead = src.last().expect("pivot columns are non-zero").1;
            let factor = u64::from(c) * u64::from(field.inv(lead)) % q;
            let alpha = ((q - factor) % q) as u32;
            axpy(&mut col, alpha, src, q, &mut scratch);
            ops += 1;
        }
        if let Some(&(k, _)) = col.last() {
            pivot_of_row[k as usize] = j;
            if clearing {
                cleared[k as usize] = true;
            }
        }
        columns[j as usize] = col;
    }

    let mut pairs = Vec::with_capacity(m);
    let mut paired = vec![false; m + 1];
    for (row, &j) in pivot_of_row.iter().enumerate().skip(1) {
        if j != 0 {
            pairs.push(PersistencePair { dim: complex.dim_of(row as u32), birth: row as u32, death: Some(j) });
            paired[row] = true;
            paired[j as usize] = true;
        }
    }
    for i in 1..=m {
        if !paired[i] {
            pairs.push(PersistencePair { dim: complex.dim_of(i as u32), birth: i as u32, death: None });
        }
    }
    Ok((FieldDiagram::new(q, pairs), ops))
}

/// Betti number of dimension `d` at index `t`.
pub fn betti_at(diagram: &FieldDiagram, t: u32, d: usize) -> usize {
    diagram.betti_at(t, d)
}
