//! Timing of the multi-field reduction against one reduction per field, and
//! the torsion window of random 2-complexes.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::complex::FilteredComplex;
use crate::crt::{word_length, PrimeBasis};
use crate::error::{Error, Result};
use crate::field::{reduce_single_field, FieldDiagram};
use crate::generators::{linial_meshulam, RNG_NAME};
use crate::multifield::{reduce_multifield, MultiFieldDiagram, ReductionStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub clearing: bool,
    /// Timed repetitions; the median is reported.
    pub repeats: usize,
    /// Bits per machine word for the word-length readout.
    pub word_bits: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { clearing: true, repeats: 3, word_bits: 64 }
    }
}

/// One modular run against the `r` single-field runs on the same complex.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub primes: Vec<u64>,
    pub simplices: usize,
    /// `T_r`: median wall time of the modular run.
    pub modular: Duration,
    /// `T_bf`: median over repetitions of the summed single-field times.
    pub bruteforce: Duration,
    /// `P_F` per field.
    pub field_pairs: Vec<usize>,
    pub multifield_pairs: usize,
    pub word_bits: u32,
    /// `lambda(Q)` in words of `word_bits` bits.
    pub word_length: u64,
    pub stats: ReductionStats,
    /// Column operations summed over the single-field runs.
    pub bruteforce_ops: u64,
}

impl BenchReport {
    pub fn r(&self) -> usize {
        self.primes.len()
    }

    /// `R_r = T_bf / T_r`.
    pub fn ratio(&self) -> f64 {
        self.bruteforce.as_secs_f64() / self.modular.as_secs_f64().max(1e-9)
    }

    pub const CSV_HEADER: &'static str =
        "r,simplices,T_r,T_bf,R_r,P_r,P_F_min,P_F_max,lambda,axpy,partial_inverses,cache_hits,bf_ops";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.6},{:.6},{:.4},{},{},{},{},{},{},{},{}",
            self.r(),
            self.simplices,
            self.modular.as_secs_f64(),
            self.bruteforce.as_secs_f64(),
            self.ratio(),
            self.multifield_pairs,
            self.field_pairs.iter().min().copied().unwrap_or(0),
            self.field_pairs.iter().max().copied().unwrap_or(0),
            self.word_length,
            self.stats.axpy,
            self.stats.partial_inverses,
            self.stats.cache_hits,
            self.bruteforce_ops,
        )
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "r = {} (primes {}..={})", self.r(), self.primes[0], self.primes[self.r() - 1]);
        let _ = writeln!(out, "simplices = {}", self.simplices);
        let _ = writeln!(out, "T_r = {:.6} s", self.modular.as_secs_f64());
        let _ = writeln!(out, "T_bf = {:.6} s", self.bruteforce.as_secs_f64());
        let _ = writeln!(out, "R_r = {:.3}", self.ratio());
        let _ = writeln!(
            out,
            "P_r = {}, P_F in [{}, {}]",
            self.multifield_pairs,
            self.field_pairs.iter().min().copied().unwrap_or(0),
            self.field_pairs.iter().max().copied().unwrap_or(0)
        );
        let _ = writeln!(out, "lambda(Q) = {} words of {} bits", self.word_length, self.word_bits);
        let _ = writeln!(
            out,
            "axpy = {}, partial inverses = {} ({} cached), single-field axpy = {}",
            self.stats.axpy, self.stats.partial_inverses, self.stats.cache_hits, self.bruteforce_ops
        );
        out
    }
}

/// CSV of a sweep over bases, one row per report.
pub fn emit_figure_data(reports: &[BenchReport]) -> String {
    let mut out = format!("{}\n", BenchReport::CSV_HEADER);
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Compares every projection of `mf` with the corresponding field diagram.
pub fn check_against_fields(mf: &MultiFieldDiagram, fields: &[FieldDiagram]) -> Result<()> {
    for (s, oracle) in fields.iter().enumerate() {
        let projected = mf.project(s);
        if &projected != oracle {
            let first = projected
                .pairs
                .iter()
                .zip(&oracle.pairs)
                .find(|(a, b)| a != b)
                .map(|(a, b)| format!("{a:?} vs {b:?}"))
                .unwrap_or_else(|| format!("{} vs {} pairs", projected.len(), oracle.len()));
            return Err(Error::OracleMismatch(format!("field {}: {first}", oracle.prime)));
        }
    }
    Ok(())
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

/// Verifies the modular diagram against every field, then times both methods.
pub fn run_bench(complex: &FilteredComplex, basis: &PrimeBasis, config: &BenchConfig) -> Result<BenchReport> {
    if config.repeats == 0 {
        return Err(Error::InvalidInput("at least one repetition is needed".into()));
    }
    let (mf, stats) = reduce_multifield(complex, basis, config.clearing);
    let mut fields = Vec::with_capacity(basis.len());
    let mut bruteforce_ops = 0;
    for &q in basis.primes() {
        let (dgm, ops) = reduce_single_field(complex, q, config.clearing)?;
        bruteforce_ops += ops;
        fields.push(dgm);
    }
    check_against_fields(&mf, &fields)?;

    let mut modular = Vec::with_capacity(config.repeats);
    let mut bruteforce = Vec::with_capacity(config.repeats);
    for _ in 0..config.repeats {
        let start = Instant::now();
        std::hint::black_box(reduce_multifield(complex, basis, config.clearing));
        modular.push(start.elapsed());
        let start = Instant::now();
        for &q in basis.primes() {
            std::hint::black_box(reduce_single_field(complex, q, config.clearing)?);
        }
        bruteforce.push(start.elapsed());
    }

    Ok(BenchReport {
        primes: basis.primes().to_vec(),
        simplices: complex.len(),
        modular: median(modular),
        bruteforce: median(bruteforce),
        field_pairs: fields.iter().map(FieldDiagram::len).collect(),
        multifield_pairs: mf.len(),
        word_bits: config.word_bits,
        word_length: word_length(basis.modulus(), config.word_bits)?,
        stats,
        bruteforce_ops,
    })
}

/// Parameters of the torsion-window experiment on `Y(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowConfig {
    pub n: usize,
    /// Triangles inserted; at most `C(n, 3)`.
    pub m_max: usize,
    pub r: usize,
    pub trials: usize,
    /// Threshold constant subtracted after normalization.
    pub c_star: f64,
    pub seed: u64,
}

/// Triangle counts `m` at which some `H_1` has torsion, as a closed range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialWindow {
    pub trial: usize,
    pub seed: u64,
    pub window: Option<(usize, usize)>,
}

/// Min, quartiles, median and max.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl FiveNumber {
    /// Quartiles by linear interpolation between order statistics.
    pub fn of(samples: &[f64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let mut v = samples.to_vec();
        v.sort_by(f64::total_cmp);
        let at = |p: f64| {
            let pos = p * (v.len() - 1) as f64;
            let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(FiveNumber { min: v[0], q1: at(0.25), median: at(0.5), q3: at(0.75), max: v[v.len() - 1] })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowReport {
    pub config: WindowConfig,
    pub rng: &'static str,
    pub trials: Vec<TrialWindow>,
}

impl WindowReport {
    /// `n m / C(n, 3) - c_star`.
    pub fn normalize(&self, m: usize) -> f64 {
        let n = self.config.n as f64;
        let total = n * (n - 1.0) * (n - 2.0) / 6.0;
        n * m as f64 / total - self.config.c_star
    }

    pub fn lower_edges(&self) -> Vec<f64> {
        self.trials.iter().filter_map(|t| t.window).map(|(lo, _)| self.normalize(lo)).collect()
    }

    pub fn upper_edges(&self) -> Vec<f64> {
        self.trials.iter().filter_map(|t| t.window).map(|(_, hi)| self.normalize(hi)).collect()
    }

    pub fn lower_summary(&self) -> Option<FiveNumber> {
        FiveNumber::of(&self.lower_edges())
    }

    pub fn upper_summary(&self) -> Option<FiveNumber> {
        FiveNumber::of(&self.upper_edges())
    }

    /// Per-trial rows `n,trial,seed,lower_m,upper_m,lower_x,upper_x`; empty
    /// windows leave the last four fields blank.
    pub fn trials_csv(&self) -> String {
        let mut out = String::from("n,trial,seed,lower_m,upper_m,lower_x,upper_x\n");
        for t in &self.trials {
            let _ = match t.window {
                Some((lo, hi)) => writeln!(
                    out,
                    "{},{},{},{lo},{hi},{:.6},{:.6}",
                    self.config.n,
                    t.trial,
                    t.seed,
                    self.normalize(lo),
                    self.normalize(hi)
                ),
                None => writeln!(out, "{},{},{},,,,", self.config.n, t.trial, t.seed),
            };
        }
        out
    }

    /// Rows `n,edge,count,min,q1,median,q3,max` for the lower and upper edges.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("n,edge,count,min,q1,median,q3,max\n");
        for (edge, summary, count) in [
            ("lower", self.lower_summary(), self.lower_edges().len()),
            ("upper", self.upper_summary(), self.upper_edges().len()),
        ] {
            let _ = match summary {
                Some(f) => writeln!(
                    out,
                    "{},{edge},{count},{:.6},{:.6},{:.6},{:.6},{:.6}",
                    self.config.n, f.min, f.q1, f.median, f.q3, f.max
                ),
                None => writeln!(out, "{},{edge},0,,,,,", self.config.n),
            };
        }
        out
    }
}

/// Range of `m` at which `H_1` of `Y(n, m)` has torsion in some field.
///
/// The complex has a complete 1-skeleton and no tetrahedra, so `H_2` is free
/// and torsion in `H_1` for the prime of field `s` shows up as
/// `b_1(s) > b_1(reference)`, the reference being the largest prime.
pub fn torsion_window_of(mf: &MultiFieldDiagram, m_max: usize) -> Option<(usize, usize)> {
    let r = mf.primes().len();
    let reference = r - 1;
    // deaths[s][m]: H_1 classes of field s killed by triangle m
    let mut deaths = vec![vec![0i64; m_max + 1]; r];
    for p in mf.triples().filter(|p| p.dim == 1) {
        let m = mf.value(p.death.expect("triple")) as usize;
        for s in p.mask.fields() {
            deaths[s][m] += 1;
        }
    }
    let mut surplus = vec![0i64; r];
    let mut window: Option<(usize, usize)> = None;
    for m in 0..=m_max {
        for s in 0..r {
            surplus[s] += deaths[reference][m] - deaths[s][m];
        }
        if surplus.iter().any(|&x| x > 0) {
            window = Some(window.map_or((m, m), |(lo, _)| (lo, m)));
        }
    }
    window
}

/// Runs `trials` independent samples of `Y(n, m_max)` with seeds `seed + trial`.
pub fn torsion_window(config: &WindowConfig) -> Result<WindowReport> {
    if config.n < 4 || config.trials == 0 || config.r == 0 {
        return Err(Error::InvalidInput("need n >= 4, at least one trial and one prime".into()));
    }
    if !config.c_star.is_finite() {
        return Err(Error::InvalidInput("c_star must be finite".into()));
    }
    let basis = PrimeBasis::first(config.r)?;
    let mut trials = Vec::with_capacity(config.trials);
    for trial in 0..config.trials {
        let seed = config.seed.wrapping_add(trial as u64);
        let complex = linial_meshulam(config.n, config.m_max, seed)?;
        let (mf, _) = reduce_multifield(&complex, &basis, true);
        trials.push(TrialWindow { trial, seed, window: torsion_window_of(&mf, config.m_max) });
    }
    Ok(WindowReport { config: *config, rng: RNG_NAME, trials })
}
