//! Minimization by state merging: search over transition congruences of the
//! reachable part and over bounded integer weight assignments for a smaller
//! automaton that observes every word exactly as the input does.
//!
//! The weight search is counterexample-guided. Candidate assignments must
//! first satisfy a growing cache of word constraints (interval conditions on
//! linear combinations of the open weights), then the equivalence engine
//! confirms or refutes; refutations extend the cache.

use std::fmt;

use crate::automaton::{Dwa, Podwa, State, Word};
use crate::engine::{equivalent, EngineConfig, EngineVerdict};
use crate::transforms::{quotient, DwaSkeleton};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OminError {
    CapExceeded(String),
    /// the engine could not classify a candidate, so neither a positive nor
    /// a negative overall answer would be sound
    InconclusiveEngine,
}

impl fmt::Display for OminError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OminError::CapExceeded(c) => write!(f, "search cap exceeded: {c}"),
            OminError::InconclusiveEngine => {
                write!(f, "equivalence engine was inconclusive on a candidate")
            }
        }
    }
}

impl std::error::Error for OminError {}

/// Caps and bounds for the merge search.
#[derive(Debug, Clone)]
pub struct MergeSearchConfig {
    /// maximum number of states of the merged automaton
    pub k: usize,
    /// maximum absolute weight; defaults to the source's maximum
    pub weight_bound: Option<i64>,
    /// cap on raw partitions enumerated
    pub max_partitions: usize,
    /// cap on engine-confirmed candidate assignments
    pub max_assignments: usize,
    /// cap on weight-search nodes per congruence
    pub max_nodes: usize,
    /// cap on the seeded counterexample cache
    pub cache_cap: usize,
    pub engine: EngineConfig,
}

impl MergeSearchConfig {
    pub fn new(k: usize) -> Self {
        MergeSearchConfig {
            k,
            weight_bound: None,
            max_partitions: 2_000_000,
            max_assignments: 2_000,
            max_nodes: 2_000_000,
            cache_cap: 5_000,
            engine: EngineConfig::default(),
        }
    }
}

/// Every partition of the reachable states into at most `max_blocks` blocks
/// that is closed under the transition function (merged states have merged
/// successors). Partitions with more blocks come first; blocks are listed by
/// smallest member.
pub fn enumerate_congruences(
    a: &Dwa,
    max_blocks: usize,
    cap: usize,
) -> Result<Vec<Vec<Vec<State>>>, OminError> {
    let reach = a.reachable();
    let n = reach.len();
    if max_blocks == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<Vec<Vec<State>>> = Vec::new();
    let mut visited = 0usize;
    // restricted growth strings with exactly `blocks` classes
    for blocks in (1..=max_blocks.min(n)).rev() {
        let mut assign = vec![0usize; n];
        enumerate_rgs(
            &reach,
            a,
            &mut assign,
            0,
            0,
            blocks,
            &mut visited,
            cap,
            &mut out,
        )?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rgs(
    reach: &[State],
    a: &Dwa,
    assign: &mut Vec<usize>,
    pos: usize,
    used: usize,
    want: usize,
    visited: &mut usize,
    cap: usize,
    out: &mut Vec<Vec<Vec<State>>>,
) -> Result<(), OminError> {
    let n = reach.len();
    if pos == n {
        if used == want {
            *visited += 1;
            if *visited > cap {
                return Err(OminError::CapExceeded("max partitions".into()));
            }
            let mut blocks: Vec<Vec<State>> = vec![Vec::new(); used];
            for (i, &b) in assign.iter().enumerate() {
                blocks[b].push(reach[i]);
            }
            if is_congruence(a, reach, assign, used) {
                out.push(blocks);
            }
        }
        return Ok(());
    }
    // enough states left to open the remaining blocks?
    if want - used > n - pos {
        return Ok(());
    }
    let limit = used.min(want - 1);
    for b in 0..=limit {
        assign[pos] = b;
        let next_used = if b == used { used + 1 } else { used };
        enumerate_rgs(reach, a, assign, pos + 1, next_used, want, visited, cap, out)?;
    }
    Ok(())
}

fn is_congruence(a: &Dwa, reach: &[State], assign: &[usize], blocks: usize) -> bool {
    let mut block_of = vec![usize::MAX; a.state_count()];
    for (i, &s) in reach.iter().enumerate() {
        block_of[s.index()] = assign[i];
    }
    let k = a.alphabet().len();
    let mut target = vec![vec![usize::MAX; k]; blocks];
    for &s in reach {
        let b = block_of[s.index()];
        for l in a.alphabet().letters() {
            let tb = block_of[a.step(s, l).index()];
            debug_assert_ne!(tb, usize::MAX);
            let slot = &mut target[b][l.index()];
            if *slot == usize::MAX {
                *slot = tb;
            } else if *slot != tb {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// bounded integer weight search over a quotient skeleton
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct WordConstraint {
    /// (variable, occurrence count) pairs, variables are (state, letter) slots
    terms: Vec<(usize, i64)>,
    lo: Option<i64>,
    hi: Option<i64>,
}

enum SolveOutcome {
    Sat(Vec<i64>),
    Unsat,
    Budget,
}

struct WeightSearch {
    bound: i64,
    /// per variable: preferred values first, then the rest by magnitude
    prefs: Vec<Vec<i64>>,
    constraints: Vec<WordConstraint>,
    var_cons: Vec<Vec<usize>>,
}

impl WeightSearch {
    fn new(bound: i64, prefs: Vec<Vec<i64>>) -> Self {
        let vars = prefs.len();
        WeightSearch {
            bound,
            prefs,
            constraints: Vec::new(),
            var_cons: vec![Vec::new(); vars],
        }
    }

    fn add_constraint(&mut self, c: WordConstraint) {
        let idx = self.constraints.len();
        for &(v, _) in &c.terms {
            self.var_cons[v].push(idx);
        }
        self.constraints.push(c);
    }

    /// Bounds consistency over interval domains. Returns false on wipeout.
    fn propagate(&self, dom: &mut [(i64, i64)], mut queue: Vec<usize>) -> bool {
        let mut pass = 0usize;
        while let Some(ci) = queue.pop() {
            pass += 1;
            if pass > 100_000 {
                return true; // give up on further tightening, search handles it
            }
            let c = &self.constraints[ci];
            let mut sum_lo: i128 = 0;
            let mut sum_hi: i128 = 0;
            for &(v, cnt) in &c.terms {
                sum_lo += cnt as i128 * dom[v].0 as i128;
                sum_hi += cnt as i128 * dom[v].1 as i128;
            }
            if let Some(hi) = c.hi {
                if sum_lo > hi as i128 {
                    return false;
                }
            }
            if let Some(lo) = c.lo {
                if sum_hi < lo as i128 {
                    return false;
                }
            }
            for &(v, cnt) in &c.terms {
                let rest_lo = sum_lo - cnt as i128 * dom[v].0 as i128;
                let rest_hi = sum_hi - cnt as i128 * dom[v].1 as i128;
                let mut new_lo = dom[v].0;
                let mut new_hi = dom[v].1;
                if let Some(hi) = c.hi {
                    // cnt * x <= hi - rest_lo
                    let cap = (hi as i128 - rest_lo).div_euclid(cnt as i128);
                    new_hi = new_hi.min(cap.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                }
                if let Some(lo) = c.lo {
                    // cnt * x >= lo - rest_hi
                    let need = lo as i128 - rest_hi;
                    let floor = need.div_euclid(cnt as i128);
                    let min = if floor * cnt as i128 == need {
                        floor
                    } else {
                        floor + 1
                    };
                    new_lo = new_lo.max(min.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                }
                if (new_lo, new_hi) != dom[v] {
                    if new_lo > new_hi {
                        return false;
                    }
                    dom[v] = (new_lo, new_hi);
                    for &other in &self.var_cons[v] {
                        if other != ci {
                            queue.push(other);
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&self, budget: &mut usize) -> SolveOutcome {
        let mut dom: Vec<(i64, i64)> = vec![(-self.bound, self.bound); self.prefs.len()];
        if !self.propagate(&mut dom, (0..self.constraints.len()).collect()) {
            return SolveOutcome::Unsat;
        }
        self.dfs(&mut dom, budget)
    }

    fn dfs(&self, dom: &mut [(i64, i64)], budget: &mut usize) -> SolveOutcome {
        if *budget == 0 {
            return SolveOutcome::Budget;
        }
        *budget -= 1;
        // smallest unresolved domain first
        let pick = dom
            .iter()
            .enumerate()
            .filter(|(_, d)| d.0 < d.1)
            .min_by_key(|(_, d)| d.1 - d.0)
            .map(|(i, _)| i);
        let Some(v) = pick else {
            return SolveOutcome::Sat(dom.iter().map(|d| d.0).collect());
        };
        let (lo, hi) = dom[v];
        let mut tried: Vec<i64> = Vec::new();
        let ordered = self.prefs[v]
            .iter()
            .copied()
            .filter(|x| (lo..=hi).contains(x))
            .chain(value_order(lo, hi));
        for val in ordered {
            if tried.contains(&val) {
                continue;
            }
            tried.push(val);
            let mut next = dom.to_vec();
            next[v] = (val, val);
            if !self.propagate(&mut next, self.var_cons[v].clone()) {
                continue;
            }
            match self.dfs(&mut next, budget) {
                SolveOutcome::Unsat => continue,
                other => return other,
            }
        }
        SolveOutcome::Unsat
    }
}

/// All integers in `[lo, hi]` ordered by absolute value, ties negative last.
fn value_order(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let mut vals: Vec<i64> = (lo..=hi).collect();
    vals.sort_by_key(|&v| (v.abs(), v < 0));
    vals.into_iter()
}

fn constraint_for(
    skeleton: &DwaSkeleton,
    scheme: &crate::automaton::ObservationScheme,
    word: &Word,
    idx: usize,
) -> WordConstraint {
    let k = skeleton.alphabet.len();
    let mut counts: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    for (s, l) in skeleton.steps(word) {
        *counts.entry(s * k + l).or_insert(0) += 1;
    }
    let (lo, hi) = scheme.interval_bounds(idx);
    WordConstraint {
        terms: counts.into_iter().collect(),
        lo,
        hi,
    }
}

/// Shortlex words over the alphabet up to length 3, capped.
fn seed_cache(p: &Podwa, cap: usize) -> Vec<(Word, usize)> {
    let letters: Vec<_> = p.automaton.alphabet().letters().collect();
    let mut cache = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut word = w.clone();
                word.push(l);
                if cache.len() < cap {
                    let idx = p.observe(&word).expect("seed words are well-formed");
                    cache.push((word.clone(), idx));
                }
                next.push(word);
            }
        }
        layer = next;
        if cache.len() >= cap {
            break;
        }
    }
    cache
}

/// Searches for an automaton with at most `cfg.k` states, obtained from the
/// input by merging, with weights bounded by `cfg.weight_bound`, observing
/// every word like the input. Returns `None` when the exhausted search proves
/// no such automaton exists within the caps.
pub fn omin_by_merging(p: &Podwa, cfg: &MergeSearchConfig) -> Result<Option<Dwa>, OminError> {
    let source = p.automaton.restrict_reachable();
    let bound = cfg.weight_bound.unwrap_or_else(|| source.max_abs_weight());
    let congruences = enumerate_congruences(&source, cfg.k, cfg.max_partitions)?;
    let mut cache = seed_cache(p, cfg.cache_cap);
    let mut engine_calls = 0usize;
    let mut inconclusive = false;
    for partition in &congruences {
        let (skeleton, _map) = quotient(&source, partition)
            .expect("enumerated partitions are congruences");
        // preferred values per open slot: merged source weights, small first
        let k = skeleton.alphabet.len();
        let mut prefs: Vec<Vec<i64>> = vec![Vec::new(); skeleton.state_count() * k];
        for (bi, block) in partition.iter().enumerate() {
            // block bi maps to the skeleton state with the same canonical name
            let name = block
                .iter()
                .map(|&s| source.state_name(s).to_string())
                .min()
                .unwrap();
            let si = skeleton.states.iter().position(|s| s == &name).unwrap();
            let _ = bi;
            for &s in block {
                for l in source.alphabet().letters() {
                    let w = source.weight(s, l);
                    if w.abs() <= bound && !prefs[si * k + l.index()].contains(&w) {
                        prefs[si * k + l.index()].push(w);
                    }
                }
            }
        }
        for p_list in &mut prefs {
            p_list.sort_by_key(|&v| (v.abs(), v < 0));
        }
        let mut search = WeightSearch::new(bound, prefs);
        for (word, idx) in &cache {
            search.add_constraint(constraint_for(&skeleton, &p.scheme, word, *idx));
        }
        loop {
            let mut budget = cfg.max_nodes;
            match search.solve(&mut budget) {
                SolveOutcome::Unsat => break,
                SolveOutcome::Budget => {
                    return Err(OminError::CapExceeded("weight search nodes".into()))
                }
                SolveOutcome::Sat(values) => {
                    let weights: Vec<Vec<i64>> = (0..skeleton.state_count())
                        .map(|s| (0..k).map(|l| values[s * k + l]).collect())
                        .collect();
                    let candidate = skeleton.with_weights(&weights);
                    engine_calls += 1;
                    if engine_calls > cfg.max_assignments {
                        return Err(OminError::CapExceeded("max assignments".into()));
                    }
                    let cand_podwa = Podwa::new(candidate.clone(), p.scheme.clone());
                    match equivalent(&cand_podwa, p, &cfg.engine)
                        .expect("same alphabet by construction")
                    {
                        EngineVerdict::Equivalent => return Ok(Some(candidate)),
                        EngineVerdict::NotEquivalent(w) => {
                            let idx = p
                                .observe(&w.word)
                                .expect("witness words are well-formed");
                            search.add_constraint(constraint_for(
                                &skeleton, &p.scheme, &w.word, idx,
                            ));
                            if cache.len() < cfg.cache_cap {
                                cache.push((w.word, idx));
                            }
                        }
                        EngineVerdict::Inconclusive(_) => {
                            inconclusive = true;
                            break;
                        }
                    }
                }
            }
        }
    }
    if inconclusive {
        Err(OminError::InconclusiveEngine)
    } else {
        Ok(None)
    }
}

/// Is there a merged automaton with at most `k` states (weights bounded by
/// the source's maximum) observing every word like the input?
pub fn omin_decision(p: &Podwa, k: usize) -> Result<bool, OminError> {
    omin_by_merging(p, &MergeSearchConfig::new(k)).map(|o| o.is_some())
}
