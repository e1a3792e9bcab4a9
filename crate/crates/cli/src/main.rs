mod args;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::Parser;

use modrec_core::experiment::{
    check_against_fields, emit_figure_data, run_bench, torsion_window, BenchConfig, WindowConfig,
};
use modrec_core::generators::{linial_meshulam, maxmin_subsample, random_flag, rips_filtration, sample_shapes};
use modrec_core::torsion::{betti_table, infer_torsion, most_persistent, persistence};
use modrec_core::{
    io as mio, reduce_multifield, reduce_single_field, DistanceMatrix, Error, FilteredComplex, PrimeBasis, RipsParams,
    Shape,
};

use args::{Cli, Command, Geometry, Mode, Primes, Source};

/// Misuse of flags that clap cannot detect on its own.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::OracleMismatch(_)) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Rips { source, geometry, out } => {
            if source.filtration.is_some() {
                bail!(Usage("rips needs points, distances or a shape".into()));
            }
            let complex = load_complex(&source, &geometry)?;
            emit(out.as_deref(), |w| mio::write_filtration(w, &complex))
        }
        Command::GenYm { n, m, seed, out } => {
            let complex = linial_meshulam(n, m, seed)?;
            emit(out.as_deref(), |w| mio::write_filtration(w, &complex))
        }
        Command::GenFlag { n, m, max_dim, seed, out } => {
            let complex = random_flag(n, m, max_dim, seed)?;
            emit(out.as_deref(), |w| mio::write_filtration(w, &complex))
        }
        Command::Reduce { source, geometry, primes, mode, no_clearing, out } => {
            let complex = load_complex(&source, &geometry)?;
            reduce(&complex, &parse_primes(&primes)?, mode, !no_clearing, out.as_deref())
        }
        Command::Torsion { source, geometry, primes, no_clearing, at, d_max, reference, top, out } => {
            let complex = load_complex(&source, &geometry)?;
            let basis = parse_primes(&primes)?;
            let reference = match reference {
                None => None,
                Some(q) => {
                    Some(basis.field_of(q).ok_or_else(|| Usage(format!("reference prime {q} is not in the basis")))?)
                }
            };
            let (mf, _) = reduce_multifield(&complex, &basis, !no_clearing);
            let t = at.map(|v| complex.last_index_at(v));
            let profile = infer_torsion(&betti_table(&mf, t, d_max), reference)?;
            let mut report = profile.report();
            for d in 0..=d_max.min(complex.max_dim()) {
                for p in most_persistent(&mf, d, top) {
                    let death = p.death.map_or("inf".to_string(), |j| mf.value(j).to_string());
                    let _ = writeln!(
                        report,
                        "H_{d} class [{}, {death}) persistence {} primes {:?}",
                        mf.value(p.birth),
                        persistence(&mf, p),
                        mf.mask_primes(&p.mask)
                    );
                }
            }
            print!("{report}");
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("torsion.txt"), &report)?;
                fs::write(dir.join("torsion.csv"), profile.to_csv())?;
                mio::save(&dir.join("multifield.txt"), |w| mio::write_multifield_diagram(w, &mf))?;
            }
            Ok(())
        }
        Command::Bench { source, geometry, sweep, repeats, word_bits, no_clearing, out } => {
            let complex = load_complex(&source, &geometry)?;
            let config = BenchConfig { clearing: !no_clearing, repeats, word_bits };
            let mut reports = Vec::with_capacity(sweep.len());
            let mut text = String::new();
            for r in sweep {
                let report = run_bench(&complex, &PrimeBasis::first(r)?, &config)?;
                text.push_str(&report.summary());
                text.push('\n');
                reports.push(report);
            }
            let csv = emit_figure_data(&reports);
            print!("{text}");
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    fs::write(dir.join("bench.csv"), csv)?;
                    fs::write(dir.join("bench.txt"), text)?;
                }
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Window { n, m_max, r, trials, c_star, seed, out } => {
            let report = torsion_window(&WindowConfig { n, m_max, r, trials, c_star, seed })?;
            let summary = report.summary_csv();
            print!("{summary}");
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("window_trials.csv"), report.trials_csv())?;
                fs::write(dir.join("window_summary.csv"), summary)?;
            }
            Ok(())
        }
    }
}

fn parse_primes(primes: &Primes) -> anyhow::Result<PrimeBasis> {
    let text = primes.text.trim();
    let basis = if text.contains(',') {
        let list = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| Usage(format!("'{t}' is not a prime"))))
            .collect::<Result<Vec<u64>, Usage>>()?;
        PrimeBasis::new(list)?
    } else {
        let r: usize = text.parse().map_err(|_| Usage(format!("'{text}' is neither a count nor a prime list")))?;
        PrimeBasis::first(r)?
    };
    Ok(basis)
}

fn load_complex(source: &Source, geometry: &Geometry) -> anyhow::Result<FilteredComplex> {
    if let Some(path) = &source.filtration {
        return mio::load_filtration(path).with_context(|| format!("reading {}", path.display()));
    }
    let metric = if let Some(path) = &source.distances {
        mio::load_distance_matrix(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        let mut cloud = match (&source.points, &source.shape) {
            (Some(path), _) => mio::load_points(path).with_context(|| format!("reading {}", path.display()))?,
            (None, Some(name)) => {
                let shape: Shape = name.parse().map_err(|e: Error| Usage(e.to_string()))?;
                sample_shapes(shape, geometry.samples, geometry.seed)?
            }
            (None, None) => unreachable!("clap requires one source"),
        };
        if let Some(k) = geometry.landmarks {
            cloud = maxmin_subsample(&cloud, k, geometry.seed)?;
        }
        DistanceMatrix::from_points(&cloud)
    };
    let rho = geometry.rho.ok_or_else(|| Usage("--rho is required for point and distance input".into()))?;
    Ok(rips_filtration(&metric, &RipsParams::new(rho, geometry.max_dim)?)?)
}

fn reduce(
    complex: &FilteredComplex,
    basis: &PrimeBasis,
    mode: Mode,
    clearing: bool,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    let mut log = String::new();
    let modular = if mode != Mode::Bruteforce {
        let start = Instant::now();
        let (mf, stats) = reduce_multifield(complex, basis, clearing);
        let _ = writeln!(
            log,
            "modular: {} entries, {} axpy, {} partial inverses, {:.3} s",
            mf.len(),
            stats.axpy,
            stats.partial_inverses,
            start.elapsed().as_secs_f64()
        );
        Some(mf)
    } else {
        None
    };
    let fields = if mode != Mode::Modular {
        let start = Instant::now();
        let fields = basis
            .primes()
            .iter()
            .map(|&q| reduce_single_field(complex, q, clearing).map(|(d, _)| d))
            .collect::<modrec_core::Result<Vec<_>>>()?;
        let counts: Vec<String> = fields.iter().map(|d| d.len().to_string()).collect();
        let _ =
            writeln!(log, "bruteforce: pairs per field {}, {:.3} s", counts.join(","), start.elapsed().as_secs_f64());
        Some(fields)
    } else {
        None
    };
    if let (Some(mf), Some(fields)) = (&modular, &fields) {
        check_against_fields(mf, fields)?;
        log.push_str("projections agree with every field\n");
    }
    match out {
        Some(dir) => {
            if let Some(mf) = &modular {
                mio::save(&dir.join("multifield.txt"), |w| mio::write_multifield_diagram(w, mf))?;
            }
            for d in fields.iter().flatten() {
                mio::save(&dir.join(format!("field_{}.txt", d.prime)), |w| {
                    mio::write_field_diagram(w, d, complex.values())
                })?;
            }
        }
        None => {
            let mut stdout = io::stdout().lock();
            if let Some(mf) = &modular {
                mio::write_multifield_diagram(&mut stdout, mf)?;
            } else {
                for d in fields.iter().flatten() {
                    mio::write_field_diagram(&mut stdout, d, complex.values())?;
                }
            }
        }
    }
    eprint!("{log}");
    Ok(())
}

fn emit(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> modrec_core::Result<()>) -> anyhow::Result<()> {
    match out {
        Some(path) => mio::save(path, |w| body(w))?,
        None => body(&mut io::stdout().lock())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(text: &str) -> anyhow::Result<Vec<u64>> {
        parse_primes(&Primes { text: text.into() }).map(|b| b.primes().to_vec())
    }

    #[test]
    fn prime_specs() {
        assert_eq!(primes("4").unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primes("7,").unwrap(), vec![7]);
        assert_eq!(primes("5, 2,3").unwrap(), vec![2, 3, 5]);
        assert_eq!(exit_code(&primes("x").unwrap_err()), 1);
        assert_eq!(exit_code(&primes("2,9").unwrap_err()), 2);
    }

    #[test]
    fn oracle_mismatch_exit_code() {
        let e = anyhow::Error::from(Error::OracleMismatch("field 2".into()));
        assert_eq!(exit_code(&e), 3);
        assert_eq!(exit_code(&anyhow::Error::from(Error::State("x".into()))), 2);
    }
}
