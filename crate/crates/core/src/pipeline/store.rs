//! On-disk results, stats and checkpoint for [`super::search`].
//!
//! Layout of the output directory:
//! - `found.tsv`: `task  board  score  words` for every winning board, appended as tasks finish
//! - `stats.tsv`: `task  root_bound  nodes_allocated  elapsed_ms`, appended as tasks finish
//! - `checkpoint.txt`: completed task ranges, one `A..B` per line
//! - `results.tsv`: `board  score  words`, deduplicated and sorted best first

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use super::{ClassResult, Found};
use crate::error::{Error, Result};
use crate::geometry::{Board, Dims};

/// A set of task indices stored as disjoint half-open ranges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RangeSet {
    // start -> end
    ranges: BTreeMap<usize, usize>,
}

impl RangeSet {
    pub fn contains(&self, i: usize) -> bool {
        self.ranges
            .range(..=i)
            .next_back()
            .is_some_and(|(_, &end)| i < end)
    }

    pub fn insert(&mut self, i: usize) {
        self.insert_range(i..i + 1);
    }

    pub fn insert_range(&mut self, r: Range<usize>) {
        if r.is_empty() {
            return;
        }
        let (mut start, mut end) = (r.start, r.end);
        if let Some((&s, &e)) = self.ranges.range(..=start).next_back() {
            if e >= start {
                start = s;
                end = end.max(e);
            }
        }
        let overlapping: Vec<usize> = self.ranges.range(start..=end).map(|(&s, _)| s).collect();
        for s in overlapping {
            let e = self.ranges.remove(&s).unwrap();
            end = end.max(e);
        }
        self.ranges.insert(start, end);
    }

    pub fn len(&self) -> usize {
        self.ranges.iter().map(|(s, e)| e - s).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.ranges.iter().map(|(&s, &e)| s..e)
    }
}

/// Parses `A..B` lines (blank lines ignored).
pub fn parse_ranges(text: &str) -> std::result::Result<RangeSet, String> {
    let mut set = RangeSet::default();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (a, b) = line
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {line:?}"))?;
        let a: usize = a
            .parse()
            .map_err(|_| format!("bad range start in {line:?}"))?;
        let b: usize = b
            .parse()
            .map_err(|_| format!("bad range end in {line:?}"))?;
        if a > b {
            return Err(format!("reversed range {line:?}"));
        }
        set.insert_range(a..b);
    }
    Ok(set)
}

pub(super) struct Store {
    dir: PathBuf,
    dims: Dims,
    completed: RangeSet,
    found: File,
    stats: File,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Store {
    pub(super) fn open(dir: &Path, dims: Dims) -> Result<Self> {
        fs::create_dir_all(dir).map_err(io(dir))?;
        let cp = dir.join("checkpoint.txt");
        let completed = match fs::read_to_string(&cp) {
            Ok(text) => parse_ranges(&text).map_err(|reason| Error::Checkpoint {
                path: cp.clone(),
                reason,
            })?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => RangeSet::default(),
            Err(e) => return Err(io(&cp)(e)),
        };
        let append = |name: &str| -> Result<File> {
            let p = dir.join(name);
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(&p)
                .map_err(io(&p))
        };
        Ok(Self {
            dir: dir.to_path_buf(),
            dims,
            completed,
            found: append("found.tsv")?,
            stats: append("stats.tsv")?,
        })
    }

    pub(super) fn completed(&self) -> &RangeSet {
        &self.completed
    }

    pub(super) fn record(&mut self, r: &ClassResult, s_high: u32) -> Result<()> {
        let found_path = self.dir.join("found.tsv");
        let mut lines = String::new();
        for v in r.winners(s_high) {
            lines.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.task,
                v.board.canonicalize(),
                v.score,
                v.words
            ));
        }
        self.found
            .write_all(lines.as_bytes())
            .and_then(|_| self.found.flush())
            .map_err(io(&found_path))?;
        let stats_path = self.dir.join("stats.tsv");
        writeln!(
            self.stats,
            "{}\t{}\t{}\t{}",
            r.task,
            r.stats.root_bound,
            r.stats.nodes_allocated,
            r.stats.elapsed.as_millis()
        )
        .and_then(|_| self.stats.flush())
        .map_err(io(&stats_path))?;
        self.completed.insert(r.task);
        self.write_checkpoint()
    }

    fn write_checkpoint(&self) -> Result<()> {
        let path = self.dir.join("checkpoint.txt");
        let tmp = self.dir.join("checkpoint.txt.tmp");
        let text: String = self
            .completed
            .iter()
            .map(|r| format!("{}..{}\n", r.start, r.end))
            .collect();
        fs::write(&tmp, text).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))
    }

    /// Winning boards recorded by earlier runs for completed tasks in `range`.
    pub(super) fn previous_found(&self, range: &Range<usize>) -> Result<Vec<Found>> {
        let path = self.dir.join("found.tsv");
        let file = File::open(&path).map_err(io(&path))?;
        let bad = |line: &str| Error::Checkpoint {
            path: path.clone(),
            reason: format!("malformed line {line:?}"),
        };
        let mut out = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line.map_err(io(&path))?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(bad(&line));
            }
            let task: usize = f[0].parse().map_err(|_| bad(&line))?;
            if !range.contains(&task) || !self.completed.contains(task) {
                continue;
            }
            let board = Board::parse(f[1], self.dims).map_err(|_| bad(&line))?;
            out.push(Found {
                board,
                score: f[2].parse().map_err(|_| bad(&line))?,
                words: f[3].parse().map_err(|_| bad(&line))?,
            });
        }
        Ok(out)
    }

    pub(super) fn write_results(&mut self, boards: &[Found]) -> Result<()> {
        let path = self.dir.join("results.tsv");
        let text: String = boards
            .iter()
            .map(|f| format!("{}\t{}\t{}\n", f.board, f.score, f.words))
            .collect();
        fs::write(&path, text).map_err(io(&path))?;
        self.sort_stats()
    }

    fn sort_stats(&mut self) -> Result<()> {
        let path = self.dir.join("stats.tsv");
        let text = fs::read_to_string(&path).map_err(io(&path))?;
        let mut rows: Vec<(usize, &str)> = text
            .lines()
            .filter(|l| !l.is_empty())
            .map(|l| {
                (
                    l.split('\t')
                        .next()
                        .and_then(|t| t.parse().ok())
                        .unwrap_or(usize::MAX),
                    l,
                )
            })
            .collect();
        rows.sort_by_key(|&(t, _)| t);
        rows.dedup_by_key(|&mut (t, _)| t);
        let sorted: String = rows.iter().map(|(_, l)| format!("{l}\n")).collect();
        let tmp = self.dir.join("stats.tsv.tmp");
        fs::write(&tmp, sorted).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))?;
        self.stats = OpenOptions::new()
            .append(true)
            .open(&path)
            .map_err(io(&path))?;
        Ok(())
    }
}
