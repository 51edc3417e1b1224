//! The registry of identities, each binding an evaluator to its expected
//! value, plus the machinery that runs them and collects outcomes.

mod checks;
mod exact_entries;
mod fe;
mod integrals;
mod limits;
mod roots;
mod series;
mod util;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::{Instant, SystemTime};

use rayon::prelude::*;

use crate::constants::ClosedForm;
use crate::error::{Error, Result};
use crate::quad::NumericResult;

pub use fe::{check_functional_equation, fe_suite, FeSummary};

/// Tolerance used by entries whose check is exact equality.
pub const EXACT_TOL: f64 = f64::MIN_POSITIVE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Integral,
    Series,
    DoubleSeries,
    Product,
    Limit,
    RootSum,
    Exact,
    FunctionalEquation,
    Inequality,
    Extremum,
    Consistency,
}

impl Category {
    pub const ALL: [Category; 11] = [
        Category::Integral,
        Category::Series,
        Category::DoubleSeries,
        Category::Product,
        Category::Limit,
        Category::RootSum,
        Category::Exact,
        Category::FunctionalEquation,
        Category::Inequality,
        Category::Extremum,
        Category::Consistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Integral => "integral",
            Category::Series => "series",
            Category::DoubleSeries => "double_series",
            Category::Product => "product",
            Category::Limit => "limit",
            Category::RootSum => "root_sum",
            Category::Exact => "exact",
            Category::FunctionalEquation => "functional_equation",
            Category::Inequality => "inequality",
            Category::Extremum => "extremum",
            Category::Consistency => "consistency",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Category::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::InvalidOption(format!("unknown category `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Journal {
    Amm,
    MathMag,
    Cmj,
    Crux,
    ElemMath,
    Gazette,
}

impl Journal {
    /// Short name used in ids and filters.
    pub fn key(self) -> &'static str {
        match self {
            Journal::Amm => "amm",
            Journal::MathMag => "mm",
            Journal::Cmj => "cmj",
            Journal::Crux => "crux",
            Journal::ElemMath => "elem",
            Journal::Gazette => "gaz",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Journal::Amm => "Amer. Math. Monthly",
            Journal::MathMag => "Math. Magazine",
            Journal::Cmj => "College Math. J.",
            Journal::Crux => "Crux Mathematicorum",
            Journal::ElemMath => "Elemente der Mathematik",
            Journal::Gazette => "Math. Gazette",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Source {
    pub journal: Journal,
    pub problem: &'static str,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.journal.title(), self.problem)
    }
}

/// What the evaluator's value is compared against.
#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Closed(ClosedForm),
    /// Boolean checks report 1 when the statement holds.
    Holds,
    /// Residual checks expect 0.
    Residual,
    /// The evaluator computes the reference value itself.
    Oracle(&'static str),
}

impl Expected {
    pub fn describe(&self) -> String {
        match self {
            Expected::Closed(c) => c.to_prefix(),
            Expected::Holds => "holds".into(),
            Expected::Residual => "residual 0".into(),
            Expected::Oracle(what) => format!("agrees with {what}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    Fast,
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Fast => "fast",
            Profile::Full => "full",
        }
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidOption(format!("profile must be fast or full, got `{s}`"))),
        }
    }
}

/// Run-wide settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub profile: Profile,
    pub seed: u64,
    pub tol_scale: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { profile: Profile::Full, seed: 0, tol_scale: 1.0 }
    }
}

impl RunConfig {
    pub fn new(profile: Profile, seed: u64, tol_scale: f64) -> Result<Self> {
        if !(tol_scale > 0.0 && tol_scale.is_finite()) {
            return Err(Error::InvalidOption(format!("tolerance scale must be positive, got {tol_scale}")));
        }
        Ok(Self { profile, seed, tol_scale })
    }

    /// Effective tolerance for an entry.
    pub fn tol(&self, base: f64) -> f64 {
        let f = match self.profile {
            Profile::Fast => 100.0,
            Profile::Full => 1.0,
        };
        base * f * self.tol_scale
    }
}

/// What an evaluator sees: the effective tolerance and the work budget.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub profile: Profile,
    pub seed: u64,
    pub tol: f64,
}

impl Budget {
    pub fn full(tol: f64) -> Self {
        Self { profile: Profile::Full, seed: 0, tol }
    }

    /// A full-profile count scaled down for the fast profile.
    pub fn count(&self, full: u64) -> u64 {
        match self.profile {
            Profile::Full => full,
            Profile::Fast => (full / 10).max(1),
        }
    }

    pub fn is_fast(&self) -> bool {
        self.profile == Profile::Fast
    }
}

/// An evaluator's result: its value and, for consistency checks, the
/// independently computed value it must agree with.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub value: NumericResult,
    pub reference: Option<NumericResult>,
}

impl From<NumericResult> for Evaluation {
    fn from(value: NumericResult) -> Self {
        Self { value, reference: None }
    }
}

impl Evaluation {
    pub fn holds(ok: bool) -> Self {
        NumericResult::exact(if ok { 1.0 } else { 0.0 }).into()
    }
}

pub type Evaluator = Arc<dyn Fn(&Budget) -> Result<Evaluation> + Send + Sync>;

/// One registered identity.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub source: Source,
    pub category: Category,
    /// Plain-text statement of the left side.
    pub statement: &'static str,
    pub expected: Expected,
    pub tol: f64,
    pub tags: Vec<&'static str>,
    /// Abbreviated anchor from the published solution.
    pub quote: &'static str,
    pub note: Option<&'static str>,
    evaluator: Evaluator,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("category", &self.category)
            .field("expected", &self.expected)
            .field("tol", &self.tol)
            .finish_non_exhaustive()
    }
}

impl Identity {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new<F>(
        id: &'static str,
        source: (Journal, &'static str),
        category: Category,
        statement: &'static str,
        expected: Expected,
        tol: f64,
        quote: &'static str,
        evaluator: F,
    ) -> Self
    where
        F: Fn(&Budget) -> Result<Evaluation> + Send + Sync + 'static,
    {
        Self {
            id,
            source: Source { journal: source.0, problem: source.1 },
            category,
            statement,
            expected,
            tol,
            tags: Vec::new(),
            quote,
            note: None,
            evaluator: Arc::new(evaluator),
        }
    }

    pub(crate) fn tags(mut self, tags: &[&'static str]) -> Self {
        self.tags.extend_from_slice(tags);
        self
    }

    pub(crate) fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    /// Expected value when it does not depend on the evaluator.
    pub fn expected_value(&self) -> Result<Option<f64>> {
        match &self.expected {
            Expected::Closed(c) => c.eval().map(Some),
            Expected::Holds => Ok(Some(1.0)),
            Expected::Residual => Ok(Some(0.0)),
            Expected::Oracle(_) => Ok(None),
        }
    }

    pub fn evaluate(&self, budget: &Budget) -> Result<Evaluation> {
        (self.evaluator)(budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationOutcome {
    pub id: String,
    pub category: Category,
    pub status: Status,
    pub computed: f64,
    pub expected: f64,
    pub abs_err: f64,
    pub kernel_err: f64,
    pub tol: f64,
    pub seconds: f64,
    /// Kernel error text for status error.
    pub message: Option<String>,
}

impl VerificationOutcome {
    /// Equality ignoring the wall-clock field.
    pub fn same_result(&self, other: &Self) -> bool {
        let bits = |v: f64| v.to_bits();
        self.id == other.id
            && self.status == other.status
            && bits(self.computed) == bits(other.computed)
            && bits(self.expected) == bits(other.expected)
            && bits(self.abs_err) == bits(other.abs_err)
            && bits(self.kernel_err) == bits(other.kernel_err)
            && bits(self.tol) == bits(other.tol)
            && self.message == other.message
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(outcomes: &[VerificationOutcome]) -> Self {
        let mut s = Summary::default();
        for o in outcomes {
            match o.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.error
    }

    pub fn all_pass(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub engine_version: &'static str,
    pub profile: Profile,
    pub seed: u64,
    pub timestamp: SystemTime,
    pub outcomes: Vec<VerificationOutcome>,
    pub summary: Summary,
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKey {
    Id,
    Category,
    Source,
    Tag,
}

/// Conjunction over keys; several values for one key are alternatives.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Filter {
    clauses: Vec<(FilterKey, String)>,
}

impl Filter {
    pub fn all() -> Self {
        Self::default()
    }

    /// Parses `KEY=VALUE[,KEY=VALUE...]`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::InvalidOption(format!("filter clause `{part}` is not KEY=VALUE")))?;
            let key = match k.trim() {
                "id" => FilterKey::Id,
                "category" => FilterKey::Category,
                "source" => FilterKey::Source,
                "tag" => FilterKey::Tag,
                other => return Err(Error::InvalidOption(format!("unknown filter key `{other}`"))),
            };
            let v = v.trim();
            if v.is_empty() {
                return Err(Error::InvalidOption(format!("filter clause `{part}` has an empty value")));
            }
            if key == FilterKey::Category {
                v.parse::<Category>()?;
            }
            clauses.push((key, v.to_string()));
        }
        Ok(Self { clauses })
    }

    pub fn with(mut self, key: FilterKey, value: &str) -> Self {
        self.clauses.push((key, value.to_string()));
        self
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.clauses.iter().filter(|(k, _)| *k == FilterKey::Id).map(|(_, v)| v.as_str())
    }

    pub fn matches(&self, e: &Identity) -> bool {
        let keys = [FilterKey::Id, FilterKey::Category, FilterKey::Source, FilterKey::Tag];
        keys.iter().all(|&key| {
            let mut values = self.clauses.iter().filter(|(k, _)| *k == key).map(|(_, v)| v.as_str()).peekable();
            if values.peek().is_none() {
                return true;
            }
            values.any(|v| match key {
                FilterKey::Id => e.id == v,
                FilterKey::Category => e.category.name() == v,
                FilterKey::Source => e.source.journal.key() == v || e.source.problem == v,
                FilterKey::Tag => e.tags.contains(&v),
            })
        })
    }
}

/// The built-in identities, sorted by id.
pub struct Registry {
    entries: Vec<Identity>,
}

impl Registry {
    pub fn get(&self, id: &str) -> Result<&Identity> {
        self.entries.binary_search_by(|e| e.id.cmp(id)).map(|i| &self.entries[i]).map_err(|_| Error::NotFound(id.to_string()))
    }

    pub fn entries(&self) -> &[Identity] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn select(&self, filter: &Filter) -> Vec<&Identity> {
        self.entries.iter().filter(|e| filter.matches(e)).collect()
    }

    /// Every quote is nonempty, ids are unique, tolerances positive and every
    /// fixed expected value finite.
    pub fn self_test(&self) -> Result<()> {
        for w in self.entries.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::CheckFailed(format!("duplicate id {}", w[0].id)));
            }
        }
        for e in &self.entries {
            if e.quote.trim().is_empty() {
                return Err(Error::CheckFailed(format!("{} has no quote", e.id)));
            }
            if !(e.tol > 0.0) {
                return Err(Error::CheckFailed(format!("{} has tolerance {}", e.id, e.tol)));
            }
            if let Some(v) = e.expected_value()? {
                if !v.is_finite() {
                    return Err(Error::CheckFailed(format!("{} expects {v}", e.id)));
                }
            }
        }
        Ok(())
    }
}

/// The full built-in registry. Built once; later calls share it.
pub fn builtin_manifest() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut entries = Vec::new();
        entries.extend(integrals::entries());
        entries.extend(series::entries());
        entries.extend(limits::entries());
        entries.extend(roots::entries());
        entries.extend(exact_entries::entries());
        entries.extend(fe::entries());
        entries.extend(checks::entries());
        entries.sort_by(|a, b| a.id.cmp(b.id));
        Registry { entries }
    })
}

/// Runs one identity.
pub fn verify_entry(entry: &Identity, cfg: &RunConfig) -> VerificationOutcome {
    let tol = cfg.tol(entry.tol);
    let budget = Budget { profile: cfg.profile, seed: cfg.seed, tol };
    let start = Instant::now();
    let result = entry.evaluate(&budget).and_then(|ev| {
        let expected = match (entry.expected_value()?, ev.reference) {
            (_, Some(r)) => r,
            (Some(v), None) => NumericResult::exact(v),
            (None, None) => return Err(Error::CheckFailed("oracle entry returned no reference".into())),
        };
        Ok((ev.value, expected))
    });
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok((value, expected)) => {
            let abs_err = (value.value - expected.value).abs();
            let kernel_err = value.err + expected.err;
            let pass = abs_err <= tol && kernel_err <= tol;
            VerificationOutcome {
                id: entry.id.to_string(),
                category: entry.category,
                status: if pass { Status::Pass } else { Status::Fail },
                computed: value.value,
                expected: expected.value,
                abs_err,
                kernel_err,
                tol,
                seconds,
                message: None,
            }
        }
        Err(e) => VerificationOutcome {
            id: entry.id.to_string(),
            category: entry.category,
            status: Status::Error,
            computed: f64::NAN,
            expected: entry.expected_value().ok().flatten().unwrap_or(f64::NAN),
            abs_err: f64::NAN,
            kernel_err: f64::NAN,
            tol,
            seconds,
            message: Some(e.to_string()),
        },
    }
}

/// Runs the identity with the given id.
pub fn verify(id: &str, cfg: &RunConfig) -> Result<VerificationOutcome> {
    let entry = builtin_manifest().get(id)?;
    Ok(verify_entry(entry, cfg))
}

/// Runs every matching identity on `jobs` worker threads. Outcomes are
/// sorted by id whatever the thread count.
pub fn verify_all(filter: &Filter, jobs: usize, cfg: &RunConfig) -> Result<Report> {
    if jobs == 0 {
        return Err(Error::InvalidOption("jobs must be at least 1".into()));
    }
    let selected = builtin_manifest().select(filter);
    let timestamp = SystemTime::now();
    let mut outcomes: Vec<VerificationOutcome> = if jobs == 1 {
        selected.iter().map(|e| verify_entry(e, cfg)).collect()
    } else {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::InvalidOption(format!("thread pool: {e}")))?;
        pool.install(|| selected.par_iter().map(|e| verify_entry(e, cfg)).collect())
    };
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = Summary::of(&outcomes);
    Ok(Report { engine_version: ENGINE_VERSION, profile: cfg.profile, seed: cfg.seed, timestamp, outcomes, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_parse() {
        let f = Filter::parse("category=product,tag=headline").unwrap();
        assert_eq!(f.clauses.len(), 2);
        assert!(Filter::parse("colour=red").is_err());
        assert!(Filter::parse("category=nonsense").is_err());
        assert!(Filter::parse("id").is_err());
        assert_eq!(Filter::parse("").unwrap(), Filter::all());
    }

    #[test]
    fn manifest_is_consistent() {
        let reg = builtin_manifest();
        reg.self_test().unwrap();
        assert!(reg.get("nonexistent").is_err());
        let e = reg.get("amm-12398").unwrap();
        assert_eq!(e.tol, 1e-10);
        assert!((e.expected_value().unwrap().unwrap() - 2.0 / (std::f64::consts::E - 1.0)).abs() < 1e-15);
        assert_eq!(reg.get("crux-4988").unwrap().tol, 1e-9);
    }

    #[test]
    fn empty_selection() {
        let f = Filter::all().with(FilterKey::Id, "no-such-id");
        let r = verify_all(&f, 1, &RunConfig::default()).unwrap();
        assert!(r.outcomes.is_empty());
        assert_eq!(r.summary, Summary::default());
    }
}
