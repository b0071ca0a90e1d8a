//! Timing harness over random feasible arrays.
//!
//! Each length `n` draws `trials` arrays with `y[1] = n` and every other
//! `y[i]` uniform on `0..=n-i+1`, times [`infer_graph`] on each (graph
//! construction included, generation and I/O excluded) and reports one CSV
//! row per length. Inputs are reproducible: every length owns a SplitMix64
//! stream derived from `(seed, n)`.

use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::build_prefix_graph;
use crate::par;
use crate::prefix_table::{compute_prefix_table, FeasibleArray};
use crate::reveng::infer_graph;

pub const CSV_HEADER: &str =
    "n,trials,mean_us,median_us,max_us,mean_sigma,mean_pos_edges,mean_neg_edges";

/// Every this many trials the inferred string is checked against the input.
const ROUND_TRIP_EVERY: usize = 100;

/// Untimed runs per length before measuring, on arrays from a separate stream.
const WARMUP_TRIALS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Ascending, all `>= 1`.
    pub lengths: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Run different lengths on separate workers. Timing inside a trial is
    /// always single-threaded.
    pub parallel: bool,
}

impl BenchConfig {
    pub fn new(lengths: Vec<usize>, trials: usize, seed: u64) -> Self {
        BenchConfig {
            lengths,
            trials,
            seed,
            output: None,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lengths.is_empty() {
            return Err(Error::BenchConfig("no lengths given".into()));
        }
        if self.lengths.contains(&0) {
            return Err(Error::BenchConfig("lengths must be at least 1".into()));
        }
        if !self.lengths.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BenchConfig(
                "lengths must be strictly ascending".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::BenchConfig("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses `a:b:step` (inclusive) or a comma-separated list.
pub fn parse_lengths(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::BenchConfig(format!("bad lengths `{spec}`, expected a:b:step or a,b,c"));
    let nums = |sep: char| -> Result<Vec<usize>> {
        spec.split(sep)
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    if spec.contains(':') {
        match nums(':')?.as_slice() {
            &[a, b, step] if step > 0 && a <= b => Ok((a..=b).step_by(step).collect()),
            _ => Err(bad()),
        }
    } else {
        nums(',')
    }
}

/// Random stream for one length, derived from the run seed.
pub fn stream_rng(seed: u64, n: usize) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `y[1] = n`; `y[i]` uniform on `0..=n-i+1` for `i` in `2..n`.
pub fn gen_random_feasible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FeasibleArray {
    assert!(n >= 1, "length must be at least 1");
    let mut values = Vec::with_capacity(n);
    values.push(n);
    for i in 2..=n {
        values.push(rng.random_range(0..=n - i + 1));
    }
    FeasibleArray::from_vec_unchecked(values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub mean_us: f64,
    pub median_us: f64,
    pub max_us: f64,
    pub mean_sigma: f64,
    pub mean_pos_edges: f64,
    pub mean_neg_edges: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(CSV_HEADER.split(','))?;
        }
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header.join(",") != CSV_HEADER {
            return Err(Error::Csv(format!(
                "unexpected header `{}`",
                header.join(",")
            )));
        }
        let rows = r
            .deserialize()
            .collect::<std::result::Result<Vec<BenchRow>, _>>()?;
        Ok(BenchReport { rows })
    }
}

struct Sample {
    micros: f64,
    sigma: usize,
    pos: usize,
    neg: usize,
}

fn run_length(n: usize, cfg: &BenchConfig) -> Result<BenchRow> {
    let mut warm = stream_rng(!cfg.seed, n);
    for _ in 0..WARMUP_TRIALS {
        std::hint::black_box(infer_graph(&build_prefix_graph(&gen_random_feasible(
            n, &mut warm,
        ))));
    }
    let mut rng = stream_rng(cfg.seed, n);
    let mut samples = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let y = gen_random_feasible(n, &mut rng);
        let start = Instant::now();
        let graph = build_prefix_graph(&y);
        let x = infer_graph(&graph);
        let micros = start.elapsed().as_secs_f64() * 1e6;
        if trial % ROUND_TRIP_EVERY == 0 && compute_prefix_table(&x) != y {
            return Err(Error::RoundTrip(y.to_string()));
        }
        samples.push(Sample {
            micros,
            sigma: x.alphabet_size(),
            pos: graph.pos_edges().len(),
            neg: graph.neg_edges().len(),
        });
    }
    Ok(summarize(n, &samples))
}

fn summarize(n: usize, samples: &[Sample]) -> BenchRow {
    let count = samples.len() as f64;
    let mean = |f: &dyn Fn(&Sample) -> f64| samples.iter().map(f).sum::<f64>() / count;
    let mut times: Vec<f64> = samples.iter().map(|s| s.micros).collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    BenchRow {
        n,
        trials: samples.len(),
        mean_us: mean(&|s| s.micros),
        median_us: median,
        max_us: *times.last().unwrap(),
        mean_sigma: mean(&|s| s.sigma as f64),
        mean_pos_edges: mean(&|s| s.pos as f64),
        mean_neg_edges: mean(&|s| s.neg as f64),
    }
}

/// Times inference over fresh random arrays for every configured length and
/// writes the CSV report to `cfg.output` if set.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let rows = if cfg.parallel {
        par::map(&cfg.lengths, |&n| run_length(n, cfg))
    } else {
        par::map_seq(&cfg.lengths, |&n| run_length(n, cfg))
    };
    let report = BenchReport {
        rows: rows.into_iter().collect::<Result<_>>()?,
    };
    if let Some(path) = &cfg.output {
        std::fs::write(path, report.to_csv()?)?;
    }
    Ok(report)
}

/// Least-squares slope of `ln(mean_us)` against `ln(n)`.
pub fn growth_trend(rows: &[BenchRow]) -> Result<f64> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 || ns.len() != rows.len() {
        return Err(Error::TooFewRows(ns.len()));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.mean_us.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// [`growth_trend`] over CSV text in the report format.
pub fn growth_trend_csv(text: &str) -> Result<f64> {
    growth_trend(&BenchReport::from_csv(text)?.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix_table::validate_feasible;

    fn synthetic(power: i32) -> Vec<BenchRow> {
        [10usize, 20, 40, 80, 160]
            .iter()
            .map(|&n| BenchRow {
                n,
                trials: 1,
                mean_us: 0.37 * (n as f64).powi(power),
                median_us: 0.0,
                max_us: 0.0,
                mean_sigma: 0.0,
                mean_pos_edges: 0.0,
                mean_neg_edges: 0.0,
            })
            .collect()
    }

    #[test]
    fn slope_of_exact_powers() {
        assert!((growth_trend(&synthetic(2)).unwrap() - 2.0).abs() < 1e-9);
        assert!((growth_trend(&synthetic(3)).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn slope_needs_three_rows() {
        let rows = synthetic(2);
        assert_eq!(growth_trend(&rows[..2]), Err(Error::TooFewRows(2)));
        let dup = vec![rows[0].clone(), rows[0].clone(), rows[1].clone()];
        assert!(growth_trend(&dup).is_err());
    }

    #[test]
    fn generated_arrays_are_feasible_and_reproducible() {
        for n in [1usize, 2, 7, 50] {
            for seed in 0..20 {
                let a = gen_random_feasible(n, &mut stream_rng(seed, n));
                let raw: Vec<i64> = a.as_slice().iter().map(|&v| v as i64).collect();
                assert!(validate_feasible(&raw).is_ok());
                assert_eq!(a, gen_random_feasible(n, &mut stream_rng(seed, n)));
            }
        }
        assert_eq!(
            gen_random_feasible(1, &mut stream_rng(3, 1)).as_slice(),
            &[1]
        );
    }

    #[test]
    fn single_trial_statistics() {
        let report = run_bench(&BenchConfig::new(vec![1], 1, 9)).unwrap();
        let row = &report.rows[0];
        assert_eq!((row.n, row.trials), (1, 1));
        assert_eq!(row.mean_us, row.median_us);
        assert_eq!(row.mean_us, row.max_us);
        assert_eq!(row.mean_sigma, 1.0);
    }

    #[test]
    fn report_rows_and_csv() {
        let mut cfg = BenchConfig::new((10..=100).step_by(10).collect(), 5, 1);
        cfg.parallel = true;
        let report = run_bench(&cfg).unwrap();
        assert_eq!(report.rows.len(), 10);
        assert!(report.rows.windows(2).all(|w| w[0].n < w[1].n));
        let csv = report.to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 11);
        assert_eq!(BenchReport::from_csv(&csv).unwrap(), report);
        assert!(growth_trend_csv(&csv).is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(BenchConfig::new(vec![], 1, 0).validate().is_err());
        assert!(BenchConfig::new(vec![0, 1], 1, 0).validate().is_err());
        assert!(BenchConfig::new(vec![5, 2], 1, 0).validate().is_err());
        assert!(BenchConfig::new(vec![5], 0, 0).validate().is_err());
    }

    #[test]
    fn unwritable_output_is_an_error() {
        let mut cfg = BenchConfig::new(vec![3], 1, 0);
        cfg.output = Some(PathBuf::from("/nonexistent-dir/x/report.csv"));
        assert!(matches!(run_bench(&cfg), Err(Error::Io(_))));
    }

    #[test]
    fn lengths_spec() {
        assert_eq!(parse_lengths("10:50:10").unwrap(), vec![10, 20, 30, 40, 50]);
        assert_eq!(parse_lengths("50,100,200").unwrap(), vec![50, 100, 200]);
        assert!(parse_lengths("10:5:1").is_err());
        assert!(parse_lengths("1:5:0").is_err());
        assert!(parse_lengths("x").is_err());
    }
}
