//! Integral homology from Betti numbers over several prime fields.
//!
//! For a prime `q`, `b_d(Z/qZ) = b_d(Z) + t(d, q) + t(d - 1, q)` where
//! `t(d, q)` counts the summands `Z/q^kZ` of `H_d(K; Z)`. A reference field
//! whose prime exceeds every torsion prime gives `b_d(Z)` directly, and the
//! counts follow by recurrence from `t(0, q) = 0`. Exponents `k` are not
//! recoverable and are rendered as `q^*`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multifield::{MultiFieldDiagram, MultiFieldPair};

/// `beta[d][s]`: Betti number of dimension `d` over field `s` at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub primes: Vec<u64>,
    pub index: u32,
    pub beta: Vec<Vec<usize>>,
}

/// Betti numbers of every field at index `t`, or of the whole complex.
pub fn betti_table(mf: &MultiFieldDiagram, t: Option<u32>, d_max: usize) -> BettiTable {
    let index = t.unwrap_or(mf.values().len() as u32);
    let r = mf.primes().len();
    let mut beta = vec![vec![0usize; r]; d_max + 1];
    for p in mf.pairs() {
        if p.dim > d_max || p.birth > index || p.death.is_some_and(|j| j <= index) {
            continue;
        }
        for s in p.mask.fields() {
            beta[p.dim][s] += 1;
        }
    }
    BettiTable { primes: mf.primes().to_vec(), index, beta }
}

/// Integral Betti numbers and torsion counts inferred from a [`BettiTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralProfile {
    pub primes: Vec<u64>,
    pub index: u32,
    /// Field assumed free of torsion.
    pub reference: usize,
    pub beta_z: Vec<usize>,
    /// `torsion[d][s]`: number of `Z/q_s^kZ` summands of `H_d`.
    pub torsion: Vec<Vec<i64>>,
    pub consistent: bool,
    /// `(d, s)` entries whose count came out negative, or `(0, s)` when
    /// `b_0` depends on the field.
    pub violations: Vec<(usize, usize)>,
}

/// Runs the recurrence against field `reference`, by default the largest prime.
pub fn infer_torsion(table: &BettiTable, reference: Option<usize>) -> Result<IntegralProfile> {
    let r = table.primes.len();
    if r == 0 || table.beta.is_empty() || table.beta.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidInput("empty or ragged Betti table".into()));
    }
    let reference = match reference {
        Some(s) if s < r => s,
        Some(s) => return Err(Error::InvalidInput(format!("reference field {s} outside the basis"))),
        None => (0..r).max_by_key(|&s| table.primes[s]).expect("non-empty"),
    };
    let beta_z: Vec<usize> = table.beta.iter().map(|row| row[reference]).collect();
    let mut torsion = vec![vec![0i64; r]; table.beta.len()];
    let mut violations = Vec::new();
    for s in 0..r {
        if table.beta[0][s] != table.beta[0][reference] {
            violations.push((0, s));
        }
        for d in 1..table.beta.len() {
            let t = table.beta[d][s] as i64 - table.beta[d][reference] as i64 - torsion[d - 1][s];
            if t < 0 {
                violations.push((d, s));
            }
            torsion[d][s] = t;
        }
    }
    violations.sort_unstable();
    Ok(IntegralProfile {
        primes: table.primes.clone(),
        index: table.index,
        reference,
        beta_z,
        consistent: violations.is_empty(),
        torsion,
        violations,
    })
}

impl IntegralProfile {
    /// `Z^b + (Z/q^*Z)^t + ...` for dimension `d`, or `0`.
    pub fn group(&self, d: usize) -> String {
        let mut terms = Vec::new();
        match self.beta_z[d] {
            0 => {}
            1 => terms.push("Z".to_string()),
            b => terms.push(format!("Z^{b}")),
        }
        for (s, &t) in self.torsion[d].iter().enumerate() {
            let q = self.primes[s];
            match t {
                t if t <= 0 => {}
                1 => terms.push(format!("Z/{q}^*Z")),
                t => terms.push(format!("(Z/{q}^*Z)^{t}")),
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// One `H_d = ...` line per dimension, then a consistency note if needed.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for d in 0..self.beta_z.len() {
            let _ = writeln!(out, "H_{d} = {}", self.group(d));
        }
        if !self.consistent {
            let list: Vec<String> = self
                .violations
                .iter()
                .map(|&(d, s)| format!("t({d},{})={}", self.primes[s], self.torsion[d][s]))
                .collect();
            let _ = writeln!(
                out,
                "inconsistent: reference prime {} is not torsion-free here ({})",
                self.primes[self.reference],
                list.join(", ")
            );
        }
        out
    }

    /// Rows `t,d,beta_Z,q,t(d,q)` with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,d,beta_Z,q,t(d,q)\n");
        for d in 0..self.beta_z.len() {
            for (s, &q) in self.primes.iter().enumerate() {
                let _ = writeln!(out, "{},{d},{},{q},{}", self.index, self.beta_z[d], self.torsion[d][s]);
            }
        }
        out
    }

    /// `b_d(Z) + t(d, q_s) + t(d - 1, q_s)`.
    pub fn reconstruct(&self) -> Vec<Vec<i64>> {
        (0..self.beta_z.len())
            .map(|d| {
                (0..self.primes.len())
                    .map(|s| {
                        let below = if d == 0 { 0 } else { self.torsion[d - 1][s] };
                        self.beta_z[d] as i64 + self.torsion[d][s] + below
                    })
                    .collect()
            })
            .collect()
    }
}

/// A point of the superimposed diagrams and the fields it occurs in.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnotatedPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
    pub primes: Vec<u64>,
    pub multiplicity: usize,
}

/// Groups pairs by dimension, filtration values and field set, in order of
/// first appearance.
pub fn annotate_diagram(mf: &MultiFieldDiagram) -> Vec<AnnotatedPoint> {
    let mut points: Vec<AnnotatedPoint> = Vec::new();
    let mut seen: HashMap<(usize, u64, Option<u64>, Vec<u64>), usize> = HashMap::new();
    for p in mf.pairs() {
        let birth = mf.value(p.birth);
        let death = p.death.map(|j| mf.value(j));
        let primes = mf.mask_primes(&p.mask);
        let key = (p.dim, birth.to_bits(), death.map(f64::to_bits), primes.clone());
        match seen.get(&key) {
            Some(&i) => points[i].multiplicity += 1,
            None => {
                seen.insert(key, points.len());
                points.push(AnnotatedPoint { dim: p.dim, birth, death, primes, multiplicity: 1 });
            }
        }
    }
    points
}

/// Persistence `death - birth` in filtration values. Essential classes are
/// cut off at the last value of the filtration.
pub fn persistence(mf: &MultiFieldDiagram, p: &MultiFieldPair) -> f64 {
    let end = p.death.map_or_else(|| mf.values().last().copied().unwrap_or(0.0), |j| mf.value(j));
    end - mf.value(p.birth)
}

/// The `count` most persistent entries of dimension `dim`, longest first.
pub fn most_persistent(mf: &MultiFieldDiagram, dim: usize, count: usize) -> Vec<&MultiFieldPair> {
    let mut pairs: Vec<&MultiFieldPair> = mf.pairs().iter().filter(|p| p.dim == dim).collect();
    pairs.sort_by(|a, b| persistence(mf, b).total_cmp(&persistence(mf, a)).then(a.birth.cmp(&b.birth)));
    pairs.truncate(count);
    pairs
}
