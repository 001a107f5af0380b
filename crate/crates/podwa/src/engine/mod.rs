//! Observational equivalence of two observed automata.
//!
//! Two instances disagree on some word exactly when one of finitely many
//! threshold queries is satisfiable, each asking for a word whose first value
//! stays below one cut while the second value reaches another. Queries are
//! decided on the weighted product graph; `NotEquivalent` always carries a
//! re-verified witness word and `Equivalent` requires a refutation of every
//! query, so `Inconclusive` is the only fallible outcome.

mod feasibility;
mod product;
mod zsearch;

use std::fmt;

pub use feasibility::{two_gen_feasibility, TwoGenOutcome};
pub use product::{
    build_product, cycle_components, simple_cycles, Cycle, CycleComponents, Dir,
    ProductEdge, ProductGraph,
};
pub use zsearch::{max_walk_value, WalkBound};

use crate::automaton::{ObservationScheme, Podwa, Word};
use zsearch::SearchContext;

/// Search caps; the defaults suit small verification workloads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// exhaustive word length for the brute-force stage
    pub bf_len: usize,
    /// cap on enumerated walk bases (Pareto-pruned simple-path effects)
    pub max_paths: usize,
    /// cap on enumerated simple cycles
    pub max_cycles: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            bf_len: 8,
            max_paths: 20000,
            max_cycles: 20000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichAuto {
    First,
    Second,
}

/// One one-sided condition `value_low < lambda_low && value_high >= lambda_high`;
/// `lambda_low` is absent when the low side is unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdQuery {
    /// which automaton carries the `<` side
    pub low: WhichAuto,
    pub lambda_low: Option<i64>,
    pub lambda_high: i64,
}

/// A concrete separating word with both values and observation indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub value1: i64,
    pub value2: i64,
    pub index1: usize,
    pub index2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryOutcome {
    Yes(Witness),
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryStatus {
    Refuted,
    Unknown,
    CapExceeded(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryReport {
    pub query: ThresholdQuery,
    pub status: QueryStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineVerdict {
    Equivalent,
    NotEquivalent(Witness),
    Inconclusive(Vec<QueryReport>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    AlphabetMismatch,
    CapExceeded(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::AlphabetMismatch => write!(f, "automata use different alphabets"),
            EngineError::CapExceeded(c) => write!(f, "search cap exceeded: {c}"),
        }
    }
}

impl std::error::Error for EngineError {}

/// Candidate threshold pairs: for every cut of one scheme, ask whether some
/// word observes strictly below that index on one side and at least that
/// index on the other. The languages differ on a word exactly when one of
/// these queries is satisfiable.
pub fn threshold_queries(
    s1: &ObservationScheme,
    s2: &ObservationScheme,
) -> Vec<ThresholdQuery> {
    let mut out = Vec::new();
    for k in 1..=s2.max_index() {
        out.push(ThresholdQuery {
            low: WhichAuto::First,
            lambda_low: s1.cuts().get(k - 1).copied(),
            lambda_high: s2.cuts()[k - 1],
        });
    }
    for k in 1..=s1.max_index() {
        out.push(ThresholdQuery {
            low: WhichAuto::Second,
            lambda_low: s2.cuts().get(k - 1).copied(),
            lambda_high: s1.cuts()[k - 1],
        });
    }
    out
}

/// Exhaustive shortlex scan for a word observed differently by the two
/// instances, up to the given length. This is the independent oracle the
/// engine is validated against.
pub fn brute_force_witness(
    p1: &Podwa,
    p2: &Podwa,
    max_len: usize,
) -> Result<Option<Witness>, EngineError> {
    if p1.automaton.alphabet() != p2.automaton.alphabet() {
        return Err(EngineError::AlphabetMismatch);
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p1: &Podwa,
        p2: &Podwa,
        s1: crate::automaton::State,
        s2: crate::automaton::State,
        v1: i64,
        v2: i64,
        remaining: usize,
        word: &mut Word,
    ) -> Option<Witness> {
        if remaining == 0 {
            let (i1, i2) = (p1.scheme.index_of(v1), p2.scheme.index_of(v2));
            if i1 != i2 {
                return Some(Witness {
                    word: word.clone(),
                    value1: v1,
                    value2: v2,
                    index1: i1,
                    index2: i2,
                });
            }
            return None;
        }
        for l in p1.automaton.alphabet().letters() {
            word.push(l);
            let found = rec(
                p1,
                p2,
                p1.automaton.step(s1, l),
                p2.automaton.step(s2, l),
                v1 + p1.automaton.weight(s1, l),
                v2 + p2.automaton.weight(s2, l),
                remaining - 1,
                word,
            );
            if found.is_some() {
                return found;
            }
            word.pop();
        }
        None
    }
    for len in 1..=max_len {
        let mut word = Vec::with_capacity(len);
        if let Some(w) = rec(
            p1,
            p2,
            p1.automaton.initial(),
            p2.automaton.initial(),
            0,
            0,
            len,
            &mut word,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decides one threshold query on a prebuilt product graph.
pub fn witness_search(
    g: &ProductGraph,
    p1: &Podwa,
    p2: &Podwa,
    query: &ThresholdQuery,
    cfg: &EngineConfig,
) -> Result<QueryOutcome, EngineError> {
    let mut ctx = SearchContext::new(g, cfg)?;
    zsearch::search_query(&mut ctx, p1, p2, query)
}

/// Full equivalence check: runs every threshold query, returns the first
/// verified witness, `Equivalent` when every query is refuted, and otherwise
/// an `Inconclusive` verdict carrying the per-query statuses.
pub fn equivalent(
    p1: &Podwa,
    p2: &Podwa,
    cfg: &EngineConfig,
) -> Result<EngineVerdict, EngineError> {
    if p1.automaton.alphabet() != p2.automaton.alphabet() {
        return Err(EngineError::AlphabetMismatch);
    }
    let queries = threshold_queries(&p1.scheme, &p2.scheme);
    let g = build_product(&p1.automaton, &p2.automaton)?;
    let mut ctx: Option<SearchContext> = None;
    let mut reports: Vec<QueryReport> = Vec::new();
    let mut all_refuted = true;
    for q in queries {
        let status = match try_query(&g, &mut ctx, p1, p2, &q, cfg) {
            Ok(QueryOutcome::Yes(w)) => return Ok(EngineVerdict::NotEquivalent(w)),
            Ok(QueryOutcome::No) => QueryStatus::Refuted,
            Ok(QueryOutcome::Unknown) => {
                all_refuted = false;
                QueryStatus::Unknown
            }
            Err(EngineError::CapExceeded(c)) => {
                all_refuted = false;
                QueryStatus::CapExceeded(c)
            }
            Err(e) => return Err(e),
        };
        reports.push(QueryReport { query: q, status });
    }
    if all_refuted {
        Ok(EngineVerdict::Equivalent)
    } else {
        Ok(EngineVerdict::Inconclusive(reports))
    }
}

fn try_query<'a>(
    g: &'a ProductGraph,
    ctx: &mut Option<SearchContext<'a>>,
    p1: &Podwa,
    p2: &Podwa,
    q: &ThresholdQuery,
    cfg: &EngineConfig,
) -> Result<QueryOutcome, EngineError> {
    if ctx.is_none() {
        *ctx = Some(SearchContext::new(g, cfg)?);
    }
    zsearch::search_query(ctx.as_mut().unwrap(), p1, p2, q)
}
