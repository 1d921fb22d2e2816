//! The example corpus: structure files with claims, and the driver that
//! verifies every claim, runs ×2 mutation controls and writes the
//! line-oriented summary.
//!
//! Files are compiled in; setting `RBX_CORPUS_DIR` loads `*.json` from that
//! directory instead.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::checks::{self, Inputs};
use crate::error::{Error, Result};
use crate::format::{Claim, Expect, Structure, StructureFile};
use crate::linalg::Tensor;
use crate::report::{format_indices, CheckReport};
use crate::structures::{BilinearForm, LinearOp};

pub const ENV_DIR: &str = "RBX_CORPUS_DIR";

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../corpus/", $name)))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embed!(
    "ex3.16.json",
    "ex3.6-qt.json",
    "ex3.6-rs.json",
    "ex5.9.json",
    "sec6.dim2-qt.json",
    "sec6.dim2-rq.json",
    "sec6.dim2-rr.json",
    "sec6.dim2-rs.json",
    "sec6.dim3-qt.json",
    "sec6.dim3-rq-sqrt.json",
    "sec6.dim3-rq.json",
    "sec6.dim3-rr.json",
    "sec6.dim3-rs.json",
    "sec6.dim4-qt.json",
    "sec6.dim4-rq.json",
    "sec6.dim4-rr.json",
    "sec6.dim4-rs.json",
);

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub file: String,
    pub structure: Arc<Structure>,
    pub claim: Claim,
}

/// Orders ids segment by segment, numerically where both segments are numbers.
pub fn id_order(a: &str, b: &str) -> Ordering {
    let mut xs = a.split('.');
    let mut ys = b.split('.');
    loop {
        match (xs.next(), ys.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let o = match (x.parse::<u64>(), y.parse::<u64>()) {
                    (Ok(m), Ok(n)) => m.cmp(&n),
                    _ => x.cmp(y),
                };
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

/// A glob over ids; a pattern without wildcards also selects every id it is
/// a dotted prefix of.
pub fn matches(filter: &str, id: &str) -> bool {
    if id.starts_with(filter) && id[filter.len()..].starts_with('.') {
        return true;
    }
    glob::Pattern::new(filter).map(|p| p.matches(id)).unwrap_or(false)
}

impl CorpusEntry {
    /// The list an entry belongs to: `sec6.dim3.RQ`, `ex3.6.QT`, ...
    pub fn family(&self) -> String {
        let parts: Vec<&str> = self.id.split('.').collect();
        match parts.as_slice() {
            [a, b, "Q", _, "R", _] => format!("{a}.{b}.RQ"),
            _ => parts.iter().take(3).copied().collect::<Vec<_>>().join("."),
        }
    }

    pub fn inputs<'a>(&self, s: &'a Structure) -> Result<Inputs<'a>> {
        let weights = self
            .claim
            .weights
            .iter()
            .map(|w| s.scalar(w))
            .collect::<Result<Vec<_>>>()?;
        checks::checker(&self.claim.checker)?.inputs(s, &self.claim.ops, &self.claim.forms, weights)
    }

    /// The claimed checker on a variant of this entry's structure.
    pub fn run_on(&self, s: &Structure) -> Result<CheckReport> {
        checks::run_check(&self.claim.checker, s, &self.inputs(s)?)
    }

    pub fn run(&self) -> Result<CheckReport> {
        self.run_on(&self.structure)
    }

    /// The claimed checker after substituting rationals for parameters.
    pub fn run_specialized(&self, values: &[(usize, BigRational)]) -> Result<CheckReport> {
        let s = self.structure.specialize(values)?;
        let weights = self
            .claim
            .weights
            .iter()
            .map(|w| self.structure.scalar(w)?.specialize(values))
            .collect::<Result<Vec<_>>>()?;
        let spec = checks::checker(&self.claim.checker)?;
        let inputs = spec.inputs(&s, &self.claim.ops, &self.claim.forms, weights)?;
        checks::run_check(&self.claim.checker, &s, &inputs)
    }
}

fn integrity(file: &str, e: impl std::fmt::Display) -> Error {
    Error::CorpusIntegrity(format!("{file}: {e}"))
}

/// Parses named file contents into entries, sorted by id.
pub fn parse_corpus<'a>(files: impl IntoIterator<Item = (String, &'a str)>) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    let mut ids = BTreeSet::new();
    for (file, text) in files {
        let sf = StructureFile::from_json(text).map_err(|e| integrity(&file, e))?;
        let structure = Arc::new(sf.resolve().map_err(|e| integrity(&file, e))?);
        for claim in sf.claims {
            if !ids.insert(claim.id.clone()) {
                return Err(integrity(&file, format!("duplicate id `{}`", claim.id)));
            }
            let entry = CorpusEntry {
                id: claim.id.clone(),
                file: file.clone(),
                structure: structure.clone(),
                claim,
            };
            entry.inputs(&structure).map_err(|e| integrity(&file, format!("{}: {e}", entry.id)))?;
            entries.push(entry);
        }
    }
    entries.sort_by(|a, b| id_order(&a.id, &b.id));
    Ok(entries)
}

pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut files = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let path = item?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            files.push((name, std::fs::read_to_string(&path)?));
        }
    }
    files.sort();
    parse_corpus(files.iter().map(|(n, t)| (n.clone(), t.as_str())))
}

/// Every corpus entry, from `RBX_CORPUS_DIR` if set, else the compiled-in files.
pub fn load_corpus() -> Result<Vec<CorpusEntry>> {
    match std::env::var_os(ENV_DIR) {
        Some(dir) => load_corpus_dir(Path::new(&dir)),
        None => parse_corpus(EMBEDDED.iter().map(|(n, t)| (n.to_string(), *t))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: String,
    pub checker: String,
    pub status: Status,
    pub verdict: bool,
    pub report: CheckReport,
}

impl Outcome {
    pub fn residual_at(&self) -> Option<Vec<usize>> {
        self.report.first_failure().map(|(_, f)| f.at.clone())
    }

    /// `ENTRY <id> <checker> <status> [residual-at=<indices>]`.
    pub fn line(&self) -> String {
        let mut s = format!("ENTRY {} {} {}", self.id, self.checker, self.status.as_str());
        if self.status != Status::Pass {
            if let Some(at) = self.residual_at() {
                let _ = write!(s, " residual-at={}", format_indices(&at));
            }
        }
        s
    }
}

fn verdict_of(r: Result<CheckReport>, checker: &str) -> CheckReport {
    r.unwrap_or_else(|e| {
        let mut rep = CheckReport::new(checker);
        rep.condition(format!("checker raised: {e}"), false);
        rep
    })
}

pub fn evaluate(entry: &CorpusEntry) -> Outcome {
    let report = verdict_of(entry.run(), &entry.claim.checker);
    let verdict = report.verdict();
    let status = match (entry.claim.expect, verdict) {
        (Expect::Pass, true) | (Expect::Fail, false) => Status::Pass,
        _ if entry.claim.flagged.is_some() => Status::Flagged,
        _ => Status::Fail,
    };
    Outcome {
        id: entry.id.clone(),
        checker: entry.claim.checker.clone(),
        status,
        verdict,
        report,
    }
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub entry: String,
    /// `name[i,j]` of the doubled coefficient.
    pub at: String,
    pub flipped: bool,
    /// The claim survives every rescaling of this coefficient, so doubling
    /// it stays inside the printed family.
    pub free: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyControl {
    pub family: String,
    pub mutations: Vec<Mutation>,
}

impl FamilyControl {
    pub fn flipped(&self) -> usize {
        self.mutations.iter().filter(|m| m.flipped).count()
    }

    pub fn free(&self) -> usize {
        self.mutations.iter().filter(|m| m.free).count()
    }

    pub fn survivors(&self) -> impl Iterator<Item = &Mutation> {
        self.mutations.iter().filter(|m| !m.flipped)
    }

    /// Survivors whose coefficient is not free.
    pub fn unexplained(&self) -> impl Iterator<Item = &Mutation> {
        self.survivors().filter(|m| !m.free)
    }

    /// Flipped fraction among mutations that leave the family.
    pub fn rate(&self) -> f64 {
        let n = self.mutations.len() - self.free();
        if n == 0 {
            1.0
        } else {
            self.flipped() as f64 / n as f64
        }
    }
}

fn scaled(t: &Tensor, at: &[usize], k: i64) -> Tensor {
    let mut t = t.clone();
    let v = t.get(at).scale_int(k);
    t.set(at, v);
    t
}

/// Doubles each nonzero coefficient of each operator and form the claim
/// uses, one at a time, and records whether the claim's verdict flips.
///
/// Every checker is a polynomial identity of degree at most 2 in any one
/// coefficient. A survivor that also passes at factor 3 therefore passes
/// at every factor (1, 2 and 3 are three roots), and is marked free.
pub fn mutations(entry: &CorpusEntry) -> Vec<Mutation> {
    let base = &*entry.structure;
    let holds = |s: &Structure| verdict_of(entry.run_on(s), &entry.claim.checker).verdict();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (kind, name) in entry
        .claim
        .ops
        .iter()
        .map(|n| ("op", n))
        .chain(entry.claim.forms.iter().map(|n| ("form", n)))
    {
        if !seen.insert((kind, name.clone())) {
            continue;
        }
        let mat = match kind {
            "op" => base.operator(name).map(|o| o.mat().clone()),
            _ => base.form(name).map(|f| f.mat().clone()),
        };
        let Ok(mat) = mat else { continue };
        for (at, _) in mat.nonzero_entries() {
            let with = |k: i64| {
                let mut s = base.clone();
                let t = scaled(&mat, &at, k);
                if kind == "op" {
                    s.operators.insert(name.clone(), LinearOp::new(t).expect("square"));
                } else {
                    s.forms.insert(name.clone(), BilinearForm::new(t).expect("square"));
                }
                s
            };
            let flipped = !holds(&with(2));
            out.push(Mutation {
                entry: entry.id.clone(),
                at: format!("{name}[{}]", format_indices(&at)),
                flipped,
                free: !flipped && holds(&with(3)),
            });
        }
    }
    out
}

/// Mutation controls over the entries whose claim currently holds, grouped
/// by family.
pub fn negative_controls(entries: &[&CorpusEntry]) -> Vec<FamilyControl> {
    let per_entry: Vec<(String, Vec<Mutation>)> = entries
        .par_iter()
        .filter(|e| e.claim.expect == Expect::Pass && evaluate(e).status == Status::Pass)
        .map(|e| (e.family(), mutations(e)))
        .collect();
    let mut families: BTreeMap<String, Vec<Mutation>> = BTreeMap::new();
    for (family, ms) in per_entry {
        families.entry(family).or_default().extend(ms);
    }
    families
        .into_iter()
        .filter(|(_, ms)| !ms.is_empty())
        .map(|(family, mutations)| FamilyControl { family, mutations })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub outcomes: Vec<Outcome>,
    pub controls: Vec<FamilyControl>,
}

impl Summary {
    pub fn count(&self, status: Status) -> usize {
        self.outcomes.iter().filter(|o| o.status == status).count()
    }

    /// Failures not covered by a documented flag.
    pub fn unexplained(&self) -> usize {
        self.count(Status::Fail)
    }

    /// The `ENTRY` lines, sorted by id; this is the golden file's content.
    pub fn golden(&self) -> String {
        self.outcomes.iter().map(|o| o.line() + "\n").collect()
    }

    /// `ENTRY` lines, then `CONTROL` lines, then totals.
    pub fn render(&self) -> String {
        let mut out = self.golden();
        for c in &self.controls {
            let _ = writeln!(
                out,
                "CONTROL {} flipped={}/{} free={}",
                c.family,
                c.flipped(),
                c.mutations.len(),
                c.free()
            );
            for m in c.survivors() {
                let why = if m.free { "free" } else { "unexplained" };
                let _ = writeln!(out, "  survivor {} {} {why}", m.entry, m.at);
            }
        }
        let _ = writeln!(
            out,
            "TOTAL entries={} pass={} fail={} flagged={}",
            self.outcomes.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        );
        out
    }
}

/// Verifies `entries` in parallel; mutation controls are optional.
pub fn verify_entries(entries: &[CorpusEntry], controls: bool) -> Summary {
    let outcomes: Vec<Outcome> = entries.par_iter().map(evaluate).collect();
    let controls = if controls {
        let refs: Vec<&CorpusEntry> = entries.iter().collect();
        negative_controls(&refs)
    } else {
        Vec::new()
    };
    Summary { outcomes, controls }
}

/// Loads the corpus and verifies the entries matching `filter`, with
/// mutation controls.
pub fn verify_corpus(filter: &str) -> Result<Summary> {
    let entries: Vec<CorpusEntry> = load_corpus()?
        .into_iter()
        .filter(|e| matches(filter, &e.id))
        .collect();
    Ok(verify_entries(&entries, true))
}
