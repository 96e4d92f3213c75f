//! Census over all free trees of a given order: for each tree, does the
//! Fiedler vector take its extremes at a diametral pair?

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissibility::extrema_verdict;
use crate::enumeration::{free_tree_count, FreeTrees, LevelSequence};
use crate::error::{Error, Result};
use crate::graph6;
use crate::json::{self, format_f64};
use crate::spectral::fiedler_pair;

pub const DEFAULT_CHECKPOINT_EVERY: usize = 100_000;
pub const CSV_HEADER: &str = "n,code,lambda2,degenerate,strict,relaxed,argmax,argmin";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub n: usize,
    pub code: String,
    pub lambda2: f64,
    pub degenerate: bool,
    pub strict: bool,
    pub relaxed: bool,
    pub diametral_pairs: usize,
    pub argmax: Vec<usize>,
    pub argmin: Vec<usize>,
}

impl SurveyRecord {
    pub fn csv_row(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.code,
            format_f64(self.lambda2),
            self.degenerate,
            self.strict,
            self.relaxed,
            join(&self.argmax),
            join(&self.argmin)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyAggregate {
    pub n: usize,
    pub total: u64,
    pub degenerate: u64,
    /// Trees counted in the failure fractions.
    pub evaluated: u64,
    pub strict_failures: u64,
    pub relaxed_failures: u64,
    pub strict_failure_fraction: f64,
    pub relaxed_failure_fraction: f64,
    pub include_degenerate: bool,
    /// `total` equals the number of free trees of this order.
    pub census_matches: bool,
}

impl SurveyAggregate {
    pub fn new(n: usize, include_degenerate: bool) -> Self {
        SurveyAggregate {
            n,
            total: 0,
            degenerate: 0,
            evaluated: 0,
            strict_failures: 0,
            relaxed_failures: 0,
            strict_failure_fraction: 0.0,
            relaxed_failure_fraction: 0.0,
            include_degenerate,
            census_matches: false,
        }
    }

    pub fn add(&mut self, record: &SurveyRecord) {
        self.total += 1;
        if record.degenerate {
            self.degenerate += 1;
            if !self.include_degenerate {
                return;
            }
        }
        self.evaluated += 1;
        self.strict_failures += u64::from(!record.strict);
        self.relaxed_failures += u64::from(!record.relaxed);
    }

    /// Fills in the fractions and the census check.
    pub fn finish(&mut self) {
        let denom = self.evaluated.max(1) as f64;
        self.strict_failure_fraction = self.strict_failures as f64 / denom;
        self.relaxed_failure_fraction = self.relaxed_failures as f64 / denom;
        self.census_matches = u128::from(self.total) == free_tree_count(self.n);
    }
}

/// Fiedler pair and extrema verdicts for one tree.
pub fn analyze_tree(seq: &LevelSequence) -> Result<SurveyRecord> {
    let g = seq.to_graph();
    let pair = fiedler_pair(&g)?;
    let verdict = extrema_verdict(&g, &pair)?;
    Ok(SurveyRecord {
        n: g.n(),
        code: seq.code(),
        lambda2: pair.lambda,
        degenerate: pair.degenerate,
        strict: verdict.strict,
        relaxed: verdict.relaxed,
        diametral_pairs: verdict.diametral_pairs.len(),
        argmax: verdict.argmax,
        argmin: verdict.argmin,
    })
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub parallelism: usize,
    pub include_degenerate: bool,
    pub checkpoint_every: usize,
    /// Output prefix: writes `<prefix>.csv`, `<prefix>.json` and
    /// `<prefix>.checkpoint.json` (plus `<prefix>.g6` with `graph6`).
    pub output: Option<PathBuf>,
    pub graph6: bool,
    /// Continue from `<prefix>.checkpoint.json` if present.
    pub resume: bool,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            parallelism: 1,
            include_degenerate: false,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
            output: None,
            graph6: false,
            resume: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub processed: u64,
    pub csv_bytes: u64,
    pub graph6_bytes: u64,
    pub aggregate: SurveyAggregate,
    pub complete: bool,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn csv_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".csv")
}

pub fn json_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".json")
}

pub fn checkpoint_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".checkpoint.json")
}

pub fn graph6_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".g6")
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = with_suffix(path, ".tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Sinks {
    prefix: PathBuf,
    csv: BufWriter<File>,
    g6: Option<BufWriter<File>>,
    csv_bytes: u64,
    g6_bytes: u64,
}

impl Sinks {
    fn open(prefix: &Path, graph6: bool, resume_from: Option<&Checkpoint>) -> Result<Self> {
        let open =
            |path: PathBuf, keep: Option<u64>, header: Option<&str>| -> Result<(File, u64)> {
                match keep {
                    Some(len) => {
                        let file = OpenOptions::new().write(true).open(&path)?;
                        file.set_len(len)?;
                        let mut file = file;
                        std::io::Seek::seek(&mut file, std::io::SeekFrom::End(0))?;
                        Ok((file, len))
                    }
                    None => {
                        let mut file = File::create(&path)?;
                        let mut len = 0;
                        if let Some(h) = header {
                            writeln!(file, "{h}")?;
                            len = h.len() as u64 + 1;
                        }
                        Ok((file, len))
                    }
                }
            };
        let (csv, csv_bytes) = open(
            csv_path(prefix),
            resume_from.map(|c| c.csv_bytes),
            Some(CSV_HEADER),
        )?;
        let (g6, g6_bytes) = if graph6 {
            let (f, len) = open(
                graph6_path(prefix),
                resume_from.map(|c| c.graph6_bytes),
                None,
            )?;
            (Some(BufWriter::new(f)), len)
        } else {
            (None, 0)
        };
        Ok(Sinks {
            prefix: prefix.to_path_buf(),
            csv: BufWriter::new(csv),
            g6,
            csv_bytes,
            g6_bytes,
        })
    }

    fn write(&mut self, record: &SurveyRecord, seq: &LevelSequence) -> Result<()> {
        let row = record.csv_row();
        writeln!(self.csv, "{row}")?;
        self.csv_bytes += row.len() as u64 + 1;
        if let Some(g6) = &mut self.g6 {
            let line = graph6::encode(&seq.to_graph());
            writeln!(g6, "{line}")?;
            self.g6_bytes += line.len() as u64 + 1;
        }
        Ok(())
    }

    fn checkpoint(
        &mut self,
        n: usize,
        processed: u64,
        agg: &SurveyAggregate,
        complete: bool,
    ) -> Result<()> {
        self.csv.flush()?;
        if let Some(g6) = &mut self.g6 {
            g6.flush()?;
        }
        let cp = Checkpoint {
            n,
            processed,
            csv_bytes: self.csv_bytes,
            graph6_bytes: self.g6_bytes,
            aggregate: agg.clone(),
            complete,
        };
        write_atomic(&checkpoint_path(&self.prefix), &json::to_string(&cp))
    }
}

pub fn read_checkpoint(prefix: &Path) -> Result<Option<Checkpoint>> {
    let path = checkpoint_path(prefix);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Runs the census, calling `sink` on every record in enumeration order.
/// The aggregate does not depend on `config.parallelism`.
pub fn run_survey_with<F>(n: usize, config: &SurveyConfig, mut sink: F) -> Result<SurveyAggregate>
where
    F: FnMut(&SurveyRecord),
{
    if n < 2 {
        return Err(Error::InvalidArgument(
            "survey needs trees on at least 2 vertices".into(),
        ));
    }
    let mut trees = FreeTrees::new(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;

    let mut agg = SurveyAggregate::new(n, config.include_degenerate);
    let mut processed = 0u64;
    let mut sinks = None;
    if let Some(prefix) = &config.output {
        let resume_from = if config.resume {
            read_checkpoint(prefix)?.filter(|c| c.n == n && !c.complete)
        } else {
            None
        };
        if let Some(cp) = &resume_from {
            if cp.aggregate.include_degenerate != config.include_degenerate {
                return Err(Error::InvalidArgument(
                    "checkpoint was taken with a different degenerate-tree policy".into(),
                ));
            }
            agg = cp.aggregate.clone();
            processed = cp.processed;
            for _ in 0..processed {
                trees.next();
            }
        }
        sinks = Some(Sinks::open(prefix, config.graph6, resume_from.as_ref())?);
    }

    let chunk_len = config.checkpoint_every.max(1);
    loop {
        let chunk: Vec<LevelSequence> = trees.by_ref().take(chunk_len).collect();
        if chunk.is_empty() {
            break;
        }
        let records = pool.install(|| {
            chunk
                .par_iter()
                .map(analyze_tree)
                .collect::<Result<Vec<_>>>()
        })?;
        for (record, seq) in records.iter().zip(&chunk) {
            agg.add(record);
            sink(record);
            if let Some(s) = &mut sinks {
                s.write(record, seq)
                    .map_err(|e| Error::Io(format!("{e} (checkpoint holds {processed} trees)")))?;
            }
        }
        processed += chunk.len() as u64;
        if let Some(s) = &mut sinks {
            s.checkpoint(n, processed, &agg, false)?;
        }
    }
    agg.finish();
    if let (Some(s), Some(prefix)) = (&mut sinks, &config.output) {
        s.checkpoint(n, processed, &agg, true)?;
        write_atomic(&json_path(prefix), &json::to_string(&agg))?;
    }
    Ok(agg)
}

pub fn run_survey(n: usize, config: &SurveyConfig) -> Result<SurveyAggregate> {
    run_survey_with(n, config, |_| {})
}

/// In-memory census: aggregate plus every record.
pub fn survey_records(
    n: usize,
    parallelism: usize,
) -> Result<(SurveyAggregate, Vec<SurveyRecord>)> {
    let mut records = Vec::new();
    let config = SurveyConfig {
        parallelism,
        ..SurveyConfig::default()
    };
    let agg = run_survey_with(n, &config, |r| records.push(r.clone()))?;
    Ok((agg, records))
}
