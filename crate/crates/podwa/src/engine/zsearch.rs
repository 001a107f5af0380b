//! Per-query decision procedure on the product graph. A threshold query asks
//! for a non-empty word whose value pair satisfies `v_low < λ_low` (when
//! constrained) and `v_high >= λ_high`. The search runs three stages:
//!
//! 1. a brute-force pass over short words,
//! 2. a constructive pass that pumps up to two cycles reached from a
//!    Pareto-maximal walk base, with connector cycles traversed once, and
//! 3. a refutation pass that over-approximates all walk effects by base
//!    effects plus the rational cone of the anchored cycle generators.
//!
//! Queries with an unconstrained low side reduce to the exact maximum walk
//! value in one coordinate and never end inconclusive.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automaton::Podwa;
use crate::engine::feasibility::{
    add, cone_covers, parallel_family_feasible, sub, two_gen_feasibility, TwoGenOutcome, V2,
};
use crate::engine::product::{
    cycle_components, enumerate_bases, reconstruct_walk, simple_cycles, Base, Cycle,
    CycleComponents, Dir, ProductGraph,
};
use crate::engine::{
    EngineConfig, EngineError, QueryOutcome, ThresholdQuery, WhichAuto, Witness,
};

/// Cycle enumeration plus component structure over one product graph.
pub(crate) struct CycleAnalysis {
    cycles: Vec<Cycle>,
    comps: CycleComponents,
    /// representative cycle per (component, effect), in deterministic order
    reps: Vec<(usize, V2, usize)>,
}

/// Search state shared across the threshold queries of one product. Cycle
/// enumeration and base enumeration are capped, so they run lazily: the
/// brute-force and one-sided stages must stay available even when a cap
/// would fire.
pub(crate) struct SearchContext<'a> {
    pub g: &'a ProductGraph,
    analysis: Option<CycleAnalysis>,
    bases: [Option<Vec<Base>>; 2],
    cfg: EngineConfig,
}

impl<'a> SearchContext<'a> {
    pub fn new(g: &'a ProductGraph, cfg: &EngineConfig) -> Self {
        SearchContext {
            g,
            analysis: None,
            bases: [None, None],
            cfg: cfg.clone(),
        }
    }

    fn ensure_analysis(&mut self) -> Result<&CycleAnalysis, EngineError> {
        if self.analysis.is_none() {
            let cycles = simple_cycles(self.g, self.cfg.max_cycles)?;
            let comps = cycle_components(self.g, &cycles);
            let mut seen: BTreeMap<(usize, V2), usize> = BTreeMap::new();
            for (ci, c) in cycles.iter().enumerate() {
                seen.entry((comps.comp_of[ci], c.effect)).or_insert(ci);
            }
            let reps: Vec<(usize, V2, usize)> = seen
                .into_iter()
                .map(|((comp, eff), ci)| (comp, eff, ci))
                .collect();
            self.analysis = Some(CycleAnalysis {
                cycles,
                comps,
                reps,
            });
        }
        Ok(self.analysis.as_ref().unwrap())
    }

    fn ensure_bases(&mut self, dir: Dir) -> Result<(), EngineError> {
        self.ensure_analysis()?;
        let slot = match dir {
            Dir::LowFirst => 0,
            Dir::LowSecond => 1,
        };
        if self.bases[slot].is_none() {
            let comps = &self.analysis.as_ref().unwrap().comps;
            let b = enumerate_bases(self.g, comps, dir, self.cfg.max_paths)?;
            self.bases[slot] = Some(b);
        }
        Ok(())
    }

    fn bases_ref(&self, dir: Dir) -> &[Base] {
        let slot = match dir {
            Dir::LowFirst => 0,
            Dir::LowSecond => 1,
        };
        self.bases[slot].as_ref().expect("bases prepared").as_slice()
    }
}

fn dir_of(q: &ThresholdQuery) -> Dir {
    match q.low {
        WhichAuto::First => Dir::LowFirst,
        WhichAuto::Second => Dir::LowSecond,
    }
}

/// Transform a raw effect pair into "lowness" coordinates `(-v_low, v_high)`
/// so that the query becomes a componentwise covering question `u >= t`.
fn to_u(dir: Dir, eff: V2) -> V2 {
    match dir {
        Dir::LowFirst => (-eff.0, eff.1),
        Dir::LowSecond => (-eff.1, eff.0),
    }
}

/// The covering target; the low component is absent for one-sided queries.
fn target(q: &ThresholdQuery) -> Option<V2> {
    q.lambda_low.map(|l| (-l + 1, q.lambda_high))
}

fn satisfies(q: &ThresholdQuery, v1: i64, v2: i64) -> bool {
    let (v_low, v_high) = match q.low {
        WhichAuto::First => (v1, v2),
        WhichAuto::Second => (v2, v1),
    };
    q.lambda_low.is_none_or(|l| v_low < l) && v_high >= q.lambda_high
}

fn make_witness(
    p1: &Podwa,
    p2: &Podwa,
    word: &[crate::automaton::Letter],
) -> Option<Witness> {
    let value1 = p1.automaton.evaluate(word).ok()?;
    let value2 = p2.automaton.evaluate(word).ok()?;
    let index1 = p1.scheme.index_of(value1);
    let index2 = p2.scheme.index_of(value2);
    if index1 == index2 {
        return None;
    }
    Some(Witness {
        word: word.to_vec(),
        value1,
        value2,
        index1,
        index2,
    })
}

/// Verified witness from a walk through the product graph; rejects the
/// candidate when re-evaluation does not satisfy the query.
fn witness_from_edges(
    g: &ProductGraph,
    p1: &Podwa,
    p2: &Podwa,
    q: &ThresholdQuery,
    edges: &[(usize, usize)],
) -> Option<Witness> {
    let word: Vec<_> = edges.iter().map(|&(n, ei)| g.out(n)[ei].letter).collect();
    let v1 = p1.automaton.evaluate(&word).ok()?;
    let v2 = p2.automaton.evaluate(&word).ok()?;
    if !satisfies(q, v1, v2) {
        debug_assert!(false, "materialized walk failed verification");
        return None;
    }
    make_witness(p1, p2, &word)
}

// ---------------------------------------------------------------------------
// stage 1: bounded brute force
// ---------------------------------------------------------------------------

fn brute_force_query(
    g: &ProductGraph,
    p1: &Podwa,
    p2: &Podwa,
    q: &ThresholdQuery,
    max_len: usize,
) -> Option<Witness> {
    // iterative deepening keeps the shortlex order
    for len in 1..=max_len {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(len);
        if let Some(w) = brute_rec(g, p1, p2, q, g.start(), (0, 0), len, &mut edges) {
            return Some(w);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn brute_rec(
    g: &ProductGraph,
    p1: &Podwa,
    p2: &Podwa,
    q: &ThresholdQuery,
    node: usize,
    eff: V2,
    remaining: usize,
    edges: &mut Vec<(usize, usize)>,
) -> Option<Witness> {
    if remaining == 0 {
        if satisfies(q, eff.0, eff.1) {
            return witness_from_edges(g, p1, p2, q, edges);
        }
        return None;
    }
    for (ei, e) in g.out(node).iter().enumerate() {
        edges.push((node, ei));
        let found = brute_rec(g, p1, p2, q, e.to, add(eff, e.effect), remaining - 1, edges);
        if found.is_some() {
            return found;
        }
        edges.pop();
    }
    None
}

// ---------------------------------------------------------------------------
// exact one-coordinate walk maxima
// ---------------------------------------------------------------------------

/// Per-node entry of a layered longest-walk table: value plus parent edge.
type LayerSlot = Option<(i64, usize, usize)>;

/// An edge list, each edge given as (node, out-edge index).
type EdgeList = Vec<(usize, usize)>;

/// Supremum of one effect coordinate over non-empty walks from the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkBound {
    Unbounded,
    Finite(i64),
}

fn max_walk_by(g: &ProductGraph, eff: impl Fn(V2) -> i64) -> WalkBound {
    let n = g.node_count();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    dist[g.start()] = Some(0);
    for round in 0..=n {
        let mut improved = false;
        for e in g.edges() {
            if let Some(d) = dist[e.from] {
                let cand = d + eff(e.effect);
                if dist[e.to].is_none_or(|x| cand > x) {
                    dist[e.to] = Some(cand);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
        if round == n {
            return WalkBound::Unbounded;
        }
    }
    let best = g
        .edges()
        .filter_map(|e| dist[e.from].map(|d| d + eff(e.effect)))
        .max();
    WalkBound::Finite(best.expect("total automaton has outgoing edges"))
}

/// Largest achievable value of the chosen effect coordinate over non-empty
/// walks from the start node, or `Unbounded` when a reachable cycle has
/// strictly positive effect in that coordinate.
pub fn max_walk_value(g: &ProductGraph, dim: u8) -> WalkBound {
    assert!(dim == 1 || dim == 2);
    max_walk_by(g, move |e| if dim == 1 { e.0 } else { e.1 })
}

/// A walk (as edge list) of one-coordinate value at least `goal`, when one
/// exists. Exact: uses layered longest-walk tables and, in the unbounded
/// case, an explicitly extracted positive cycle.
fn walk_reaching(g: &ProductGraph, eff: &dyn Fn(V2) -> i64, goal: i64) -> Option<EdgeList> {
    let n = g.node_count();
    match max_walk_by(g, eff) {
        WalkBound::Finite(best) => {
            if best < goal {
                return None;
            }
            // layered maxima with parents; finite case converges within n edges
            let mut layers: Vec<Vec<LayerSlot>> = Vec::new();
            let mut cur: Vec<LayerSlot> = vec![None; n];
            cur[g.start()] = Some((0, usize::MAX, usize::MAX));
            layers.push(cur);
            for len in 1..=n {
                let mut next: Vec<LayerSlot> = vec![None; n];
                for (from, slot) in layers[len - 1].iter().enumerate() {
                    let Some((d, _, _)) = slot else { continue };
                    for (ei, e) in g.out(from).iter().enumerate() {
                        let cand = d + eff(e.effect);
                        if next[e.to].is_none_or(|(x, _, _)| cand > x) {
                            next[e.to] = Some((cand, from, ei));
                        }
                    }
                }
                // first walk reaching the goal wins
                for (node, slot) in next.iter().enumerate() {
                    if let Some((d, _, _)) = slot {
                        if *d >= goal {
                            layers.push(next.clone());
                            return Some(backtrack(&layers, len, node));
                        }
                    }
                }
                layers.push(next);
            }
            None
        }
        WalkBound::Unbounded => {
            let (stem, cycle) = positive_cycle(g, eff)?;
            let stem_val: i64 = stem.iter().map(|&(f, ei)| eff(g.out(f)[ei].effect)).sum();
            let cyc_val: i64 = cycle.iter().map(|&(f, ei)| eff(g.out(f)[ei].effect)).sum();
            debug_assert!(cyc_val > 0);
            let deficit = goal - stem_val;
            let pumps = if deficit <= 0 {
                if stem.is_empty() {
                    1
                } else {
                    0
                }
            } else {
                (deficit + cyc_val - 1) / cyc_val
            };
            let mut edges = stem;
            for _ in 0..pumps {
                edges.extend_from_slice(&cycle);
            }
            Some(edges)
        }
    }
}

fn backtrack(layers: &[Vec<LayerSlot>], len: usize, node: usize) -> EdgeList {
    let mut edges = Vec::with_capacity(len);
    let mut cur = node;
    for l in (1..=len).rev() {
        let (_, from, ei) = layers[l][cur].expect("parent chain intact");
        edges.push((from, ei));
        cur = from;
    }
    edges.reverse();
    edges
}

/// Extracts a reachable cycle of strictly positive coordinate effect plus a
/// stem from the start node to its entry (classic relaxation argument with
/// parent walking).
fn positive_cycle(g: &ProductGraph, eff: &dyn Fn(V2) -> i64) -> Option<(EdgeList, EdgeList)> {
    let n = g.node_count();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    dist[g.start()] = Some(0);
    let mut touched = None;
    for round in 0..=n {
        let mut improved = None;
        for (from, edges) in (0..n).map(|v| (v, g.out(v))) {
            let Some(d) = dist[from] else { continue };
            for (ei, e) in edges.iter().enumerate() {
                let cand = d + eff(e.effect);
                if dist[e.to].is_none_or(|x| cand > x) {
                    dist[e.to] = Some(cand);
                    parent[e.to] = Some((from, ei));
                    improved = Some(e.to);
                }
            }
        }
        improved?;
        if round == n {
            touched = improved;
        }
    }
    // walk parents n steps to land inside the positive cycle
    let mut v = touched?;
    for _ in 0..n {
        v = parent[v]?.0;
    }
    let mut cycle_rev: Vec<(usize, usize)> = Vec::new();
    let mut cur = v;
    loop {
        let (pf, pe) = parent[cur]?;
        cycle_rev.push((pf, pe));
        cur = pf;
        if cur == v {
            break;
        }
    }
    cycle_rev.reverse();
    // BFS stem from start to the cycle entry v
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[g.start()] = true;
    queue.push_back(g.start());
    while let Some(u) = queue.pop_front() {
        if u == v {
            break;
        }
        for (ei, e) in g.out(u).iter().enumerate() {
            if !seen[e.to] {
                seen[e.to] = true;
                prev[e.to] = Some((u, ei));
                queue.push_back(e.to);
            }
        }
    }
    if !seen[v] {
        return None;
    }
    let mut stem_rev = Vec::new();
    let mut cur = v;
    while let Some((pf, pe)) = prev[cur] {
        stem_rev.push((pf, pe));
        cur = pf;
    }
    stem_rev.reverse();
    Some((stem_rev, cycle_rev))
}

// ---------------------------------------------------------------------------
// stage 2: constructive search with pumped cycles
// ---------------------------------------------------------------------------

/// A cycle scheduled for materialization, anchored either on the base walk
/// or inside another planned cycle.
struct PlanCycle {
    cycle: usize,
    mult: u64,
    anchor_node: usize,
    parent: Option<usize>, // index into the plan; None anchors on the walk
}

/// Builds anchor chains from the walk to each requested cycle with a BFS over
/// the node-sharing structure, shared across all cycles of the touched
/// components.
struct AnchorForest {
    /// per cycle: (parent cycle or None-for-walk, anchor node)
    link: BTreeMap<usize, (Option<usize>, usize)>,
}

fn anchor_forest(
    ctx: &SearchContext,
    walk_nodes: &[usize],
) -> AnchorForest {
    let mut link: BTreeMap<usize, (Option<usize>, usize)> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &node in walk_nodes {
        for &ci in &ctx.comps.node_cycles[node] {
            if seen.insert(ci) {
                link.insert(ci, (None, node));
                queue.push_back(ci);
            }
        }
    }
    while let Some(ci) = queue.pop_front() {
        let nodes = ctx.cycles[ci].nodes.clone();
        for node in nodes {
            for &cj in &ctx.comps.node_cycles[node] {
                if seen.insert(cj) {
                    link.insert(cj, (Some(ci), node));
                    queue.push_back(cj);
                }
            }
        }
    }
    AnchorForest { link }
}

/// Chain of cycles from the walk to `cycle`, outermost first.
fn chain_to(forest: &AnchorForest, cycle: usize) -> Option<Vec<usize>> {
    let mut chain = vec![cycle];
    let mut cur = cycle;
    loop {
        let &(parent, _) = forest.link.get(&cur)?;
        match parent {
            None => break,
            Some(p) => {
                chain.push(p);
                cur = p;
            }
        }
    }
    chain.reverse();
    Some(chain)
}

/// Assembles the edge list of walk + planned cycles. Every plan entry is
/// inserted at the first arrival at its anchor node (once per plan entry,
/// repeated `mult` times in place).
fn materialize(
    ctx: &SearchContext,
    walk: &[(usize, usize)],
    plan: &[PlanCycle],
) -> Option<Vec<(usize, usize)>> {
    let total_len: u64 = walk.len() as u64
        + plan
            .iter()
            .map(|p| p.mult * ctx.cycles[p.cycle].edges.len() as u64)
            .sum::<u64>();
    if total_len > 2_000_000 {
        return None;
    }
    // children grouped by parent
    let mut walk_children: Vec<usize> = Vec::new();
    let mut cycle_children: Vec<Vec<usize>> = vec![Vec::new(); plan.len()];
    for (i, p) in plan.iter().enumerate() {
        match p.parent {
            None => walk_children.push(i),
            Some(par) => cycle_children[par].push(i),
        }
    }
    let mut emitted = vec![false; plan.len()];
    let mut edges: Vec<(usize, usize)> = Vec::new();

    fn emit_cycle(
        ctx: &SearchContext,
        plan: &[PlanCycle],
        cycle_children: &[Vec<usize>],
        emitted: &mut [bool],
        edges: &mut Vec<(usize, usize)>,
        idx: usize,
    ) {
        let p = &plan[idx];
        let cyc = &ctx.cycles[p.cycle];
        let len = cyc.nodes.len();
        let offset = cyc
            .nodes
            .iter()
            .position(|&v| v == p.anchor_node)
            .expect("anchor lies on the cycle");
        for rep in 0..p.mult {
            for step in 0..cyc.edges.len() {
                let at = cyc.nodes[(offset + step) % len];
                if rep == 0 {
                    for &child in &cycle_children[idx] {
                        if !emitted[child] && plan[child].anchor_node == at {
                            emitted[child] = true;
                            emit_cycle(ctx, plan, cycle_children, emitted, edges, child);
                        }
                    }
                }
                edges.push(cyc.edges[(offset + step) % len]);
            }
        }
    }

    let visit = |node: usize,
                 edges: &mut Vec<(usize, usize)>,
                 emitted: &mut [bool]| {
        for &child in &walk_children {
            if !emitted[child] && plan[child].anchor_node == node {
                emitted[child] = true;
                emit_cycle(ctx, plan, &cycle_children, emitted, edges, child);
            }
        }
    };

    visit(ctx.g.start(), &mut edges, &mut emitted);
    for &(from, ei) in walk {
        edges.push((from, ei));
        let to = ctx.g.out(from)[ei].to;
        visit(to, &mut edges, &mut emitted);
    }
    if emitted.iter().any(|e| !e) {
        debug_assert!(false, "plan cycle never anchored");
        return None;
    }
    Some(edges)
}

/// Builds the plan (connector chains once, pumped cycles with extra
/// multiplicity) for up to two pumped cycles and returns the once-traversed
/// offsets for the feasibility call.
fn build_plan(
    ctx: &SearchContext,
    forest: &AnchorForest,
    pumped: &[(usize, u64)],
) -> Option<(Vec<PlanCycle>, Vec<V2>)> {
    let mut order: Vec<usize> = Vec::new(); // cycles outermost-first, deduped
    for &(c, _) in pumped {
        let chain = chain_to(forest, c)?;
        for ci in chain {
            if !order.contains(&ci) {
                order.push(ci);
            }
        }
    }
    let mut plan: Vec<PlanCycle> = Vec::new();
    let mut offsets: Vec<V2> = Vec::new();
    for ci in order {
        let (parent_cycle, anchor_node) = forest.link[&ci];
        let parent = parent_cycle.map(|pc| {
            plan.iter()
                .position(|p| p.cycle == pc)
                .expect("chains are emitted outermost first")
        });
        let extra: u64 = pumped
            .iter()
            .filter(|&&(c, _)| c == ci)
            .map(|&(_, m)| m)
            .sum();
        offsets.push(ctx.cycles[ci].effect);
        plan.push(PlanCycle {
            cycle: ci,
            mult: 1 + extra,
            anchor_node,
            parent,
        });
    }
    Some((plan, offsets))
}

// ---------------------------------------------------------------------------
// the full per-query procedure
// ---------------------------------------------------------------------------

pub(crate) fn search_query(
    ctx: &mut SearchContext,
    p1: &Podwa,
    p2: &Podwa,
    q: &ThresholdQuery,
) -> Result<QueryOutcome, EngineError> {
    let cfg = ctx.cfg.clone();
    // stage 1: short words, shortlex
    if let Some(w) = brute_force_query(ctx.g, p1, p2, q, cfg.bf_len) {
        return Ok(QueryOutcome::Yes(w));
    }
    let dir = dir_of(q);
    let high_dim = match q.low {
        WhichAuto::First => 2u8,
        WhichAuto::Second => 1u8,
    };
    let eff_high = move |e: V2| if high_dim == 1 { e.0 } else { e.1 };

    // one-sided queries reduce to the exact walk maximum
    let Some(t) = target(q) else {
        return Ok(match walk_reaching(ctx.g, &eff_high, q.lambda_high) {
            Some(edges) => match witness_from_edges(ctx.g, p1, p2, q, &edges) {
                Some(w) => QueryOutcome::Yes(w),
                None => QueryOutcome::Unknown,
            },
            None => QueryOutcome::No,
        });
    };

    // stage 2: walk bases plus up to two pumped cycle representatives
    ctx.ensure_bases(dir)?;
    let ctx = &*ctx;
    let reps = &ctx.reps;
    let bases = ctx.bases_ref(dir);
    for (bi, base) in bases.iter().enumerate() {
        if !base.alive {
            continue;
        }
        let (eff, mask) = (base.eff, base.mask);
        let u = to_u(dir, eff);
        if u.0 >= t.0 && u.1 >= t.1 {
            let (walk, _) = reconstruct_walk(ctx.g, bases, bi);
            if let Some(w) = witness_from_edges(ctx.g, p1, p2, q, &walk) {
                return Ok(QueryOutcome::Yes(w));
            }
            continue;
        }
        let in_mask: Vec<(usize, V2, usize)> = reps
            .iter()
            .filter(|(comp, _, _)| mask & (1u64 << comp) != 0)
            .cloned()
            .collect();
        if in_mask.is_empty() {
            continue;
        }
        // connectors and pumps all live in the cone of the touched
        // generators: if the cone cannot even rationally cover the deficit,
        // no candidate from this base can succeed
        let gens_u: Vec<V2> = in_mask.iter().map(|&(_, e, _)| to_u(dir, e)).collect();
        if !cone_covers(&gens_u, sub(t, u)) {
            continue;
        }
        let (walk, walk_nodes) = reconstruct_walk(ctx.g, bases, bi);
        let forest = anchor_forest(ctx, &walk_nodes);
        for (i, &(_, c_eff, c_id)) in in_mask.iter().enumerate() {
            // single pumped cycle
            let candidates = std::iter::once(None).chain(in_mask[i..].iter().map(Some));
            for second in candidates {
                let (pumped_ids, c2_eff) = match second {
                    None => (vec![(c_id, 0u64)], None),
                    Some(&(_, d_eff, d_id)) => {
                        if d_id == c_id {
                            continue;
                        }
                        (vec![(c_id, 0u64), (d_id, 0u64)], Some(d_eff))
                    }
                };
                let Some((_, offsets)) = build_plan(ctx, &forest, &pumped_ids) else {
                    continue;
                };
                let offsets_u: Vec<V2> = offsets.iter().map(|&o| to_u(dir, o)).collect();
                let outcome = two_gen_feasibility(
                    u,
                    &offsets_u,
                    to_u(dir, c_eff),
                    c2_eff.map(|e| to_u(dir, e)),
                    t,
                );
                if let TwoGenOutcome::Yes { m, n } = outcome {
                    let mut pumped = vec![(c_id, m)];
                    if let Some(&(_, _, d_id)) = second {
                        pumped.push((d_id, n));
                    }
                    let Some((plan, _)) = build_plan(ctx, &forest, &pumped) else {
                        continue;
                    };
                    if let Some(edges) = materialize(ctx, &walk, &plan) {
                        if let Some(w) = witness_from_edges(ctx.g, p1, p2, q, &edges) {
                            return Ok(QueryOutcome::Yes(w));
                        }
                    }
                }
            }
        }
    }

    // stage 3: refutation
    // exact one-coordinate screens first
    if let WalkBound::Finite(best_high) = max_walk_by(ctx.g, eff_high) {
        if best_high < q.lambda_high {
            return Ok(QueryOutcome::No);
        }
    }
    let lambda_low = q.lambda_low.expect("two-sided query here");
    let eff_low = |e: V2| match q.low {
        WhichAuto::First => -e.0,
        WhichAuto::Second => -e.1,
    };
    if let WalkBound::Finite(best_neg_low) = max_walk_by(ctx.g, eff_low) {
        // every walk has v_low >= -best_neg_low
        if -best_neg_low >= lambda_low {
            return Ok(QueryOutcome::No);
        }
    }
    // cone certificate over every surviving base
    let mut gens_cache: BTreeMap<u64, Vec<V2>> = BTreeMap::new();
    let mut all_refuted = true;
    for b in bases.iter().filter(|b| b.alive) {
        let u = to_u(dir, b.eff);
        let z = sub(t, u);
        let gens = gens_cache.entry(b.mask).or_insert_with(|| {
            let mut g: Vec<V2> = reps
                .iter()
                .filter(|(comp, _, _)| b.mask & (1u64 << comp) != 0)
                .map(|&(_, eff, _)| to_u(dir, eff))
                .filter(|&e| e != (0, 0))
                .collect();
            g.sort_unstable();
            g.dedup();
            g
        });
        if !cone_covers(gens, z) {
            continue;
        }
        // rational relaxation failed to refute; parallel families still
        // admit an exact integer answer
        if parallel_family_feasible(gens, z) == Some(false) {
            continue;
        }
        all_refuted = false;
        break;
    }
    if all_refuted {
        return Ok(QueryOutcome::No);
    }
    Ok(QueryOutcome::Unknown)
}
