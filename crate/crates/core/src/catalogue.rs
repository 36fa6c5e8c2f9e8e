//! Catalogue runs: generation of the four matroid classes, regularity filtering,
//! Tutte attachment, dual listings and count tables.
//!
//! Line format, one entry per line:
//!
//! ```text
//! k=<k> n=<n> r=(r1,...,rn) flags=<LSCR subset> [tutte=<rows ';', entries ','>] [dualized]
//! ```

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::{self, ColumnClass, EnumerateError, LabelVector};
use crate::matroid::MatroidError;
use crate::regularity;
use crate::tutte::{self, TuttePolynomial};

/// Largest size and rank generated without `--force`.
pub const MAX_SIZE: usize = 15;
pub const MAX_RANK: usize = 7;

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("invalid shape: rank {rank}, size {size}")]
    InvalidShape { rank: usize, size: usize },
    #[error("rank {rank}, size {size} exceeds the default limits (size <= {MAX_SIZE}, rank <= {MAX_RANK}); pass --force to run anyway")]
    ResourceGuard { rank: usize, size: usize },
    #[error("class {0} is not closed under duality; use connected-loopless or connected-simple")]
    UnsupportedClass(MatroidClass),
    #[error("malformed catalogue line: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

impl CatalogueError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            CatalogueError::InvalidShape { .. } | CatalogueError::UnsupportedClass(_) => 2,
            CatalogueError::ResourceGuard { .. } => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum MatroidClass {
    Loopless,
    Simple,
    ConnectedLoopless,
    ConnectedSimple,
}

impl MatroidClass {
    pub fn column_class(self) -> ColumnClass {
        match self {
            MatroidClass::Loopless | MatroidClass::ConnectedLoopless => ColumnClass::Loopless,
            MatroidClass::Simple | MatroidClass::ConnectedSimple => ColumnClass::Simple,
        }
    }

    pub fn connected(self) -> bool {
        matches!(
            self,
            MatroidClass::ConnectedLoopless | MatroidClass::ConnectedSimple
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            MatroidClass::Loopless => "loopless",
            MatroidClass::Simple => "simple",
            MatroidClass::ConnectedLoopless => "connected-loopless",
            MatroidClass::ConnectedSimple => "connected-simple",
        }
    }

    fn admits(self, flags: Flags) -> bool {
        flags.loopless
            && (!self.connected() || flags.connected)
            && (self.column_class() == ColumnClass::Loopless || flags.simple)
    }
}

impl fmt::Display for MatroidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Flags {
    pub loopless: bool,
    pub simple: bool,
    pub connected: bool,
    pub regular: bool,
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (on, c) in [
            (self.loopless, 'L'),
            (self.simple, 'S'),
            (self.connected, 'C'),
            (self.regular, 'R'),
        ] {
            if on {
                s.push(c);
            }
        }
        if s.is_empty() {
            s.push('-');
        }
        f.write_str(&s)
    }
}

impl FromStr for Flags {
    type Err = CatalogueError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut flags = Flags::default();
        if s == "-" {
            return Ok(flags);
        }
        for c in s.chars() {
            let slot = match c {
                'L' => &mut flags.loopless,
                'S' => &mut flags.simple,
                'C' => &mut flags.connected,
                'R' => &mut flags.regular,
                _ => return Err(CatalogueError::Parse(format!("unknown flag `{c}`"))),
            };
            *slot = true;
        }
        Ok(flags)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub rank: usize,
    pub size: usize,
    pub labels: LabelVector,
    pub flags: Flags,
    pub tutte: Option<TuttePolynomial>,
    pub dualized: bool,
}

impl CatalogueEntry {
    /// Computes flags (and optionally the Tutte polynomial) from the labels.
    pub fn evaluate(
        labels: LabelVector,
        with_tutte: bool,
        dualized: bool,
    ) -> Result<Self, CatalogueError> {
        let m = labels.to_matroid();
        let flags = Flags {
            loopless: m.loops().is_empty(),
            simple: m.is_simple(),
            connected: m.is_connected()?,
            regular: regularity::is_regular(&m)?.regular,
        };
        let tutte = if with_tutte {
            Some(tutte::tutte_by_activities(&m)?)
        } else {
            None
        };
        Ok(Self {
            rank: labels.rank(),
            size: labels.size(),
            labels,
            flags,
            tutte,
            dualized,
        })
    }
}

impl fmt::Display for CatalogueEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} n={} r={} flags={}",
            self.rank, self.size, self.labels, self.flags
        )?;
        if let Some(t) = &self.tutte {
            write!(f, " tutte={}", t.to_inline())?;
        }
        if self.dualized {
            f.write_str(" dualized")?;
        }
        Ok(())
    }
}

impl FromStr for CatalogueEntry {
    type Err = CatalogueError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogueError::Parse(line.to_string());
        let mut rank = None;
        let mut size = None;
        let mut labels = None;
        let mut flags = None;
        let mut tutte_text = None;
        let mut dualized = false;
        for token in line.split(' ') {
            match token.split_once('=') {
                Some(("k", v)) => rank = Some(v.parse::<usize>().map_err(|_| bad())?),
                Some(("n", v)) => size = Some(v.parse::<usize>().map_err(|_| bad())?),
                Some(("r", v)) => {
                    let inner = v
                        .strip_prefix('(')
                        .and_then(|v| v.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    labels = Some(
                        inner
                            .split(',')
                            .map(|l| l.parse::<usize>().map_err(|_| bad()))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Some(("flags", v)) => flags = Some(v.parse::<Flags>()?),
                Some(("tutte", v)) => tutte_text = Some(v),
                None if token == "dualized" => dualized = true,
                _ => return Err(bad()),
            }
        }
        let (rank, size) = (rank.ok_or_else(bad)?, size.ok_or_else(bad)?);
        let labels = LabelVector::new(rank, labels.ok_or_else(bad)?)?;
        if labels.size() != size {
            return Err(bad());
        }
        let tutte = tutte_text
            .map(|t| TuttePolynomial::from_inline(rank, size, t))
            .transpose()
            .map_err(|e| CatalogueError::Parse(e.to_string()))?;
        Ok(Self {
            rank,
            size,
            labels,
            flags: flags.ok_or_else(bad)?,
            tutte,
            dualized,
        })
    }
}

fn check_shape(rank: usize, size: usize, force: bool) -> Result<(), CatalogueError> {
    if rank == 0 || rank > size || rank > enumerate::MAX_RANK || size > crate::gf2::MAX_LEN {
        return Err(CatalogueError::InvalidShape { rank, size });
    }
    if !force && (size > MAX_SIZE || rank > MAX_RANK) {
        return Err(CatalogueError::ResourceGuard { rank, size });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateRequest {
    pub rank: usize,
    pub size: usize,
    pub class: MatroidClass,
    pub regular_only: bool,
    pub with_tutte: bool,
    pub force: bool,
}

impl GenerateRequest {
    pub fn new(rank: usize, size: usize, class: MatroidClass) -> Self {
        Self {
            rank,
            size,
            class,
            regular_only: false,
            with_tutte: false,
            force: false,
        }
    }
}

/// Standard representatives of the requested class, in increasing label order.
pub fn run_generate(req: &GenerateRequest) -> Result<Vec<CatalogueEntry>, CatalogueError> {
    check_shape(req.rank, req.size, req.force)?;
    let reps = enumerate::generate(req.rank, req.size, req.class.column_class())?;
    let evaluated: Vec<CatalogueEntry> = reps
        .into_par_iter()
        .map(|lv| CatalogueEntry::evaluate(lv, false, false))
        .collect::<Result<_, _>>()?;
    evaluated
        .into_par_iter()
        .filter(|e| req.class.admits(e.flags) && (!req.regular_only || e.flags.regular))
        .map(|mut e| {
            if req.with_tutte {
                e.tutte = Some(tutte::tutte_by_activities(&e.labels.to_matroid())?);
            }
            Ok(e)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualListingRequest {
    pub rank: usize,
    pub size: usize,
    pub class: MatroidClass,
    pub regular_only: bool,
    pub with_tutte: bool,
    pub canonicalize: bool,
    pub force: bool,
}

impl DualListingRequest {
    pub fn new(rank: usize, size: usize, class: MatroidClass) -> Self {
        Self {
            rank,
            size,
            class,
            regular_only: false,
            with_tutte: false,
            canonicalize: false,
            force: false,
        }
    }
}

/// Rank-`k` entries obtained by dualizing the rank-`(n − k)` connected list.
///
/// Entries keep the order of the primal list and are in general not standard
/// representatives; with `canonicalize` they are replaced by their standard
/// representatives and sorted.
pub fn run_dual_listing(req: &DualListingRequest) -> Result<Vec<CatalogueEntry>, CatalogueError> {
    if !req.class.connected() {
        return Err(CatalogueError::UnsupportedClass(req.class));
    }
    if req.rank == 0 || req.rank >= req.size {
        return Err(CatalogueError::InvalidShape {
            rank: req.rank,
            size: req.size,
        });
    }
    let corank = req.size - req.rank;
    check_shape(corank, req.size, req.force)?;
    if req.rank > enumerate::MAX_RANK {
        return Err(CatalogueError::InvalidShape {
            rank: req.rank,
            size: req.size,
        });
    }
    let primal = run_generate(&GenerateRequest {
        rank: corank,
        size: req.size,
        class: MatroidClass::ConnectedLoopless,
        regular_only: false,
        with_tutte: false,
        force: req.force,
    })?;
    let mut out: Vec<CatalogueEntry> = primal
        .into_par_iter()
        .map(|entry| {
            let dual = entry.labels.to_matroid().dual();
            let cols = dual.column_words().iter().map(|&c| c as usize).collect();
            let mut labels = LabelVector::from_unsorted(req.rank, cols)?;
            if req.canonicalize {
                labels = labels.to_multiplicity()?.canonical_form().to_label_vector();
            }
            CatalogueEntry::evaluate(labels, false, !req.canonicalize)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|e| req.class.admits(e.flags) && (!req.regular_only || e.flags.regular))
        .collect();
    if req.with_tutte {
        for e in &mut out {
            e.tutte = Some(tutte::tutte_by_activities(&e.labels.to_matroid())?);
        }
    }
    if req.canonicalize {
        out.sort_by(|a, b| a.labels.cmp(&b.labels));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsRequest {
    pub max_rank: usize,
    pub max_size: usize,
    pub class: MatroidClass,
    pub regular_only: bool,
    pub force: bool,
}

/// Class counts indexed by rank `1..=max_rank` and size `1..=max_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub max_rank: usize,
    pub max_size: usize,
    pub class: MatroidClass,
    pub regular_only: bool,
    cells: Vec<Vec<usize>>,
}

impl CountTable {
    pub fn get(&self, rank: usize, size: usize) -> usize {
        self.cells[rank - 1][size - 1]
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# class={} regular-only={}",
            self.class,
            if self.regular_only { "yes" } else { "no" }
        )?;
        let width = self
            .cells
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .chain([self.max_size.to_string().len(), 3])
            .max()
            .unwrap_or(1);
        write!(f, "{:>width$}", "k\\n")?;
        for n in 1..=self.max_size {
            write!(f, " {n:>width$}")?;
        }
        writeln!(f)?;
        for (k, row) in self.cells.iter().enumerate() {
            write!(f, "{:>width$}", k + 1)?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn run_counts(req: &CountsRequest) -> Result<CountTable, CatalogueError> {
    if req.max_rank == 0 || req.max_size == 0 {
        return Err(CatalogueError::InvalidShape {
            rank: req.max_rank,
            size: req.max_size,
        });
    }
    if !req.force && (req.max_size > MAX_SIZE || req.max_rank > MAX_RANK) {
        return Err(CatalogueError::ResourceGuard {
            rank: req.max_rank,
            size: req.max_size,
        });
    }
    let mut cells = vec![vec![0; req.max_size]; req.max_rank];
    for (k, row) in cells.iter_mut().enumerate() {
        let k = k + 1;
        for (n, cell) in row.iter_mut().enumerate() {
            let n = n + 1;
            if k > n {
                continue;
            }
            *cell = run_generate(&GenerateRequest {
                rank: k,
                size: n,
                class: req.class,
                regular_only: req.regular_only,
                with_tutte: false,
                force: req.force,
            })?
            .len();
        }
    }
    Ok(CountTable {
        max_rank: req.max_rank,
        max_size: req.max_size,
        class: req.class,
        regular_only: req.regular_only,
        cells,
    })
}

/// Writes one line per entry, LF-terminated.
pub fn write_entries<W: Write>(entries: &[CatalogueEntry], mut out: W) -> io::Result<()> {
    for e in entries {
        writeln!(out, "{e}")?;
    }
    out.flush()
}
