//! Append-only performance database with a plottable CSV on-disk format.
//!
//! Layout of a saved database:
//!
//! ```text
//! # space: <hex digest of the parameter space>
//! # param: <name>,<lower>,<upper>,<q>,<scale>     (one line per parameter)
//! seq,worker,elapsed_s,objective,<param names...>
//! 0,0,0.004,0.85,...
//! ```
//!
//! The digest is order-sensitive over `(name, lower, upper, q, scale)` so
//! that databases from differently refined spaces cannot be mixed up. The
//! `# param:` lines make a saved file self-contained: `load` rebuilds the
//! space and verifies it against the recorded digest. An objective of -1
//! encodes an evaluation failure.
//!
//! When opened with a file sink, every append is flushed before returning,
//! so a crash loses at most the record in flight.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::space::{Configuration, ParameterDef, ParameterSpace, Scale};
use crate::tuner::{EvaluationRecord, FAILURE_OBJECTIVE};

/// Order-sensitive digest of a parameter space.
pub fn fingerprint(space: &ParameterSpace) -> String {
    let mut hasher = Sha256::new();
    for def in space.params() {
        hasher.update(def.name.as_bytes());
        hasher.update([0x1f]);
        hasher.update(def.lower.to_bits().to_le_bytes());
        hasher.update(def.upper.to_bits().to_le_bytes());
        hasher.update(def.q.to_bits().to_le_bytes());
        hasher.update([match def.scale {
            Scale::Linear => 0u8,
            Scale::Log => 1u8,
        }]);
        hasher.update([0x1e]);
    }
    hasher
        .finalize()
        .iter()
        .take(16)
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug)]
pub struct PerformanceDatabase {
    space: ParameterSpace,
    records: Vec<EvaluationRecord>,
    sink: Option<BufWriter<File>>,
}

impl PerformanceDatabase {
    /// In-memory database.
    pub fn new(space: ParameterSpace) -> Self {
        PerformanceDatabase {
            space,
            records: Vec::new(),
            sink: None,
        }
    }

    /// Database backed by a file; the preamble and header are written and
    /// flushed immediately.
    pub fn create(space: ParameterSpace, path: &Path) -> Result<Self> {
        let mut db = PerformanceDatabase::new(space);
        let mut sink = BufWriter::new(File::create(path)?);
        write!(sink, "{}", db.preamble())?;
        sink.flush()?;
        db.sink = Some(sink);
        Ok(db)
    }

    pub fn space(&self) -> &ParameterSpace {
        &self.space
    }

    pub fn records(&self) -> &[EvaluationRecord] {
        &self.records
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(&self.space)
    }

    /// Integrity check against the space a caller expects this database to
    /// belong to.
    pub fn verify_space(&self, space: &ParameterSpace) -> Result<()> {
        if fingerprint(space) != self.fingerprint() {
            return Err(Error::Integrity(
                "database fingerprint does not match the supplied space".into(),
            ));
        }
        Ok(())
    }

    fn preamble(&self) -> String {
        let mut out = format!("# space: {}\n", self.fingerprint());
        for def in self.space.params() {
            out.push_str(&format!(
                "# param: {},{},{},{},{}\n",
                def.name, def.lower, def.upper, def.q, def.scale
            ));
        }
        out.push_str(&self.header_line());
        out.push('\n');
        out
    }

    fn header_line(&self) -> String {
        let mut cols = vec![
            "seq".to_string(),
            "worker".to_string(),
            "elapsed_s".to_string(),
            "objective".to_string(),
        ];
        cols.extend(self.space.params().iter().map(|p| p.name.clone()));
        cols.join(",")
    }

    fn record_line(&self, r: &EvaluationRecord) -> String {
        let mut cols = vec![
            r.sequence_index.to_string(),
            r.worker_id.to_string(),
            r.elapsed_seconds.to_string(),
            r.objective.to_string(),
        ];
        for def in self.space.params() {
            cols.push(r.config.get(&def.name).expect("validated on append").to_string());
        }
        cols.join(",")
    }

    /// Validate and persist one record. Sequence indices must strictly
    /// increase; the configuration must be valid in this database's space.
    pub fn append(&mut self, record: EvaluationRecord) -> Result<()> {
        self.space.validate(&record.config)?;
        if let Some(last) = self.records.last() {
            if record.sequence_index <= last.sequence_index {
                return Err(Error::Integrity(format!(
                    "sequence index {} does not exceed the last index {}",
                    record.sequence_index, last.sequence_index
                )));
            }
        }
        if !((0.0..=1.0).contains(&record.objective) || record.objective == FAILURE_OBJECTIVE) {
            return Err(Error::invalid(format!(
                "objective {} is neither in [0, 1] nor the failure sentinel",
                record.objective
            )));
        }
        if !(record.elapsed_seconds >= 0.0) {
            return Err(Error::invalid("elapsed_seconds must be nonnegative"));
        }
        if let Some(sink) = &mut self.sink {
            let line = self.record_line(&record);
            writeln!(sink, "{line}")?;
            sink.flush()?;
        }
        self.records.push(record);
        Ok(())
    }

    /// Write the whole database to `path` (independent of any sink).
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        write!(out, "{}", self.preamble())?;
        for r in &self.records {
            writeln!(out, "{}", self.record_line(r))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Read a saved database. The file is self-contained: the space is
    /// rebuilt from the `# param:` lines and checked against the recorded
    /// digest.
    pub fn load(path: &Path) -> Result<Self> {
        let reader = BufReader::new(File::open(path)?);
        let mut stated_digest: Option<String> = None;
        let mut defs: Vec<ParameterDef> = Vec::new();
        let mut header_seen = false;
        let mut db: Option<PerformanceDatabase> = None;

        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let parse = |message: String| Error::Parse {
                line: lineno,
                message,
            };
            if let Some(rest) = line.strip_prefix("# space:") {
                stated_digest = Some(rest.trim().to_string());
                continue;
            }
            if let Some(rest) = line.strip_prefix("# param:") {
                let fields: Vec<&str> = rest.trim().split(',').collect();
                if fields.len() != 5 {
                    return Err(parse(format!(
                        "param line needs 5 comma-separated fields, got {}",
                        fields.len()
                    )));
                }
                let num = |s: &str| -> Result<f64> {
                    s.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("`{s}` is not a number"),
                    })
                };
                defs.push(ParameterDef::new(
                    fields[0],
                    num(fields[1])?,
                    num(fields[2])?,
                    num(fields[3])?,
                    fields[4].parse()?,
                )?);
                continue;
            }
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            if !header_seen {
                let space = ParameterSpace::new(std::mem::take(&mut defs))?;
                let fresh = PerformanceDatabase::new(space);
                match stated_digest.as_deref() {
                    Some(d) if d == fresh.fingerprint() => {}
                    Some(_) => {
                        return Err(Error::Integrity(
                            "recorded fingerprint does not match the space block".into(),
                        ))
                    }
                    None => {
                        return Err(parse("missing `# space:` line before the header".into()))
                    }
                }
                if line != fresh.header_line() {
                    return Err(parse(format!(
                        "header `{line}` does not match the space (expected `{}`)",
                        fresh.header_line()
                    )));
                }
                db = Some(fresh);
                header_seen = true;
                continue;
            }
            let db = db.as_mut().expect("header parsed");
            let fields: Vec<&str> = line.split(',').collect();
            let expected = 4 + db.space.len();
            if fields.len() != expected {
                return Err(parse(format!(
                    "record has {} fields, expected {expected}",
                    fields.len()
                )));
            }
            let num = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("`{s}` is not a number"),
                })
            };
            let int = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("`{s}` is not an index"),
                })
            };
            let pairs = db
                .space
                .params()
                .iter()
                .zip(&fields[4..])
                .map(|(def, s)| Ok((def.name.clone(), num(s)?)))
                .collect::<Result<Vec<_>>>()?;
            let record = EvaluationRecord {
                config: Configuration::from_pairs(pairs),
                objective: num(fields[3])?,
                elapsed_seconds: num(fields[2])?,
                sequence_index: int(fields[0])?,
                worker_id: int(fields[1])?,
                duplicate_fallback: false,
            };
            db.append(record).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::Parse {
                    line: lineno,
                    message: other.to_string(),
                },
            })?;
        }
        if !header_seen {
            return Err(Error::Parse {
                line: 0,
                message: "file contains no header line".into(),
            });
        }
        Ok(db.expect("header parsed"))
    }

    /// Prefix maxima of the objective: the accuracy-over-time series behind
    /// the usual tuning plots.
    pub fn running_best(&self) -> Result<Vec<(usize, f64)>> {
        if self.records.is_empty() {
            return Err(Error::invalid("running_best needs a nonempty database"));
        }
        let mut best = f64::NEG_INFINITY;
        Ok(self
            .records
            .iter()
            .map(|r| {
                best = best.max(r.objective);
                (r.sequence_index, best)
            })
            .collect())
    }
}
