//! Reachable product of two weighted automata. Each edge carries the pair of
//! transition weights, so words correspond to walks and word-value pairs to
//! walk effects. The module also enumerates simple cycles, groups them into
//! node-sharing components, and enumerates Pareto-maximal walk effects used
//! as bases by the equivalence search.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::automaton::{Dwa, Letter, State};
use crate::engine::feasibility::{add, V2};
use crate::engine::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductEdge {
    pub from: usize,
    pub letter: Letter,
    pub to: usize,
    pub effect: V2,
}

/// Reachable product graph of two automata over a common alphabet.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    pairs: Vec<(State, State)>,
    out: Vec<Vec<ProductEdge>>,
    scc_id: Vec<usize>,
    scc_count: usize,
    condensation: Vec<Vec<usize>>,
}

impl ProductGraph {
    pub fn node_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn pairs(&self) -> &[(State, State)] {
        &self.pairs
    }

    pub fn out(&self, node: usize) -> &[ProductEdge] {
        &self.out[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = &ProductEdge> {
        self.out.iter().flatten()
    }

    pub fn scc_id(&self) -> &[usize] {
        &self.scc_id
    }

    pub fn scc_count(&self) -> usize {
        self.scc_count
    }

    /// Adjacency between strongly connected components (deduplicated).
    pub fn condensation(&self) -> &[Vec<usize>] {
        &self.condensation
    }
}

/// Builds the reachable product; nodes are numbered in BFS discovery order
/// with the pair of initial states first.
pub fn build_product(a1: &Dwa, a2: &Dwa) -> Result<ProductGraph, EngineError> {
    if a1.alphabet() != a2.alphabet() {
        return Err(EngineError::AlphabetMismatch);
    }
    let mut index: HashMap<(State, State), usize> = HashMap::new();
    let mut pairs: Vec<(State, State)> = Vec::new();
    let mut out: Vec<Vec<ProductEdge>> = Vec::new();
    let start = (a1.initial(), a2.initial());
    index.insert(start, 0);
    pairs.push(start);
    out.push(Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(node) = queue.pop_front() {
        let (q1, q2) = pairs[node];
        for l in a1.alphabet().letters() {
            let to_pair = (a1.step(q1, l), a2.step(q2, l));
            let to = match index.get(&to_pair) {
                Some(&i) => i,
                None => {
                    let i = pairs.len();
                    index.insert(to_pair, i);
                    pairs.push(to_pair);
                    out.push(Vec::new());
                    queue.push_back(i);
                    i
                }
            };
            out[node].push(ProductEdge {
                from: node,
                letter: l,
                to,
                effect: (a1.weight(q1, l), a2.weight(q2, l)),
            });
        }
    }
    let (scc_id, scc_count) = tarjan_scc(&out);
    let mut condensation: Vec<Vec<usize>> = vec![Vec::new(); scc_count];
    for edges in &out {
        for e in edges {
            let (a, b) = (scc_id[e.from], scc_id[e.to]);
            if a != b && !condensation[a].contains(&b) {
                condensation[a].push(b);
            }
        }
    }
    for adj in &mut condensation {
        adj.sort_unstable();
    }
    Ok(ProductGraph {
        pairs,
        out,
        scc_id,
        scc_count,
        condensation,
    })
}

/// Iterative Tarjan; component ids are in reverse topological order.
fn tarjan_scc(out: &[Vec<ProductEdge>]) -> (Vec<usize>, usize) {
    let n = out.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut scc_id = vec![usize::MAX; n];
    let mut next_index = 0usize;
    let mut scc_count = 0usize;
    // call stack frames: (node, next edge position)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < out[v].len() {
                let w = out[v][*pos].to;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("scc stack non-empty");
                        on_stack[w] = false;
                        scc_id[w] = scc_count;
                        if w == v {
                            break;
                        }
                    }
                    scc_count += 1;
                }
            }
        }
    }
    (scc_id, scc_count)
}

/// A simple cycle, stored as the visited nodes plus the edge choices; the
/// first node is the smallest one on the cycle.
#[derive(Debug, Clone)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    /// (node, out-edge index) per step; `edges[i]` leaves `nodes[i]`.
    pub edges: Vec<(usize, usize)>,
    pub effect: V2,
}

const CYCLE_STEP_BUDGET: usize = 4_000_000;

/// Enumerates elementary cycles of the product multigraph. Parallel edges
/// over different letters count as different cycles because their effects
/// differ. Each cycle is reported once, rooted at its smallest node.
pub fn simple_cycles(g: &ProductGraph, cap: usize) -> Result<Vec<Cycle>, EngineError> {
    let n = g.node_count();
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut steps = 0usize;
    for root in 0..n {
        // DFS over nodes >= root; the path is node-simple
        let mut on_path = vec![false; n];
        let mut path_nodes: Vec<usize> = vec![root];
        let mut path_edges: Vec<(usize, usize)> = Vec::new();
        let mut effect_stack: Vec<V2> = vec![(0, 0)];
        let mut frame: Vec<usize> = vec![0];
        on_path[root] = true;
        while let Some(pos) = frame.last_mut() {
            let v = *path_nodes.last().unwrap();
            if *pos >= g.out(v).len() {
                frame.pop();
                path_nodes.pop();
                on_path[v] = false;
                path_edges.pop();
                effect_stack.pop();
                continue;
            }
            let ei = *pos;
            *pos += 1;
            steps += 1;
            if steps > CYCLE_STEP_BUDGET {
                return Err(EngineError::CapExceeded("cycle enumeration steps".into()));
            }
            let e = &g.out(v)[ei];
            if e.to < root {
                continue;
            }
            if e.to == root {
                let mut edges = path_edges.clone();
                edges.push((v, ei));
                cycles.push(Cycle {
                    nodes: path_nodes.clone(),
                    edges,
                    effect: add(*effect_stack.last().unwrap(), e.effect),
                });
                if cycles.len() > cap {
                    return Err(EngineError::CapExceeded("max simple cycles".into()));
                }
                continue;
            }
            if on_path[e.to] {
                continue;
            }
            on_path[e.to] = true;
            path_nodes.push(e.to);
            path_edges.push((v, ei));
            effect_stack.push(add(*effect_stack.last().unwrap(), e.effect));
            frame.push(0);
        }
    }
    Ok(cycles)
}

/// Node-sharing structure over the cycles: cycles that share a node (directly
/// or through other cycles) form one component. A per-node bitmask records
/// which components pass through each node.
#[derive(Debug, Clone)]
pub struct CycleComponents {
    pub comp_of: Vec<usize>,
    pub comp_count: usize,
    pub node_mask: Vec<u64>,
    /// cycles through each node
    pub node_cycles: Vec<Vec<usize>>,
}

pub fn cycle_components(g: &ProductGraph, cycles: &[Cycle]) -> CycleComponents {
    let n = g.node_count();
    let mut node_cycles: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, c) in cycles.iter().enumerate() {
        for &v in &c.nodes {
            node_cycles[v].push(ci);
        }
    }
    let mut parent: Vec<usize> = (0..cycles.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let nxt = parent[c];
            parent[c] = r;
            c = nxt;
        }
        r
    }
    for list in &node_cycles {
        for w in list.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp_of = vec![0usize; cycles.len()];
    for (i, slot) in comp_of.iter_mut().enumerate() {
        let root = find(&mut parent, i);
        let next = comp_index.len();
        *slot = *comp_index.entry(root).or_insert(next);
    }
    let mut comp_count = comp_index.len();
    let coarse = comp_count > 64;
    if coarse {
        // too many components for a bitmask: collapse into one (coarser but
        // still sound, generator sets just get larger)
        comp_of.iter_mut().for_each(|c| *c = 0);
        comp_count = 1;
    }
    let mut node_mask = vec![0u64; n];
    for (ci, c) in cycles.iter().enumerate() {
        for &v in &c.nodes {
            node_mask[v] |= 1u64 << comp_of[ci];
        }
    }
    CycleComponents {
        comp_of,
        comp_count,
        node_mask,
        node_cycles,
    }
}

/// Orientation of the Pareto order on walk effects: which value coordinate
/// the active query wants low (the other one is wanted high).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    LowFirst,
    LowSecond,
}

impl Dir {
    /// `a` is at least as good as `b` in every query of this orientation.
    fn dominates(self, a: V2, b: V2) -> bool {
        match self {
            Dir::LowFirst => a.0 <= b.0 && a.1 >= b.1,
            Dir::LowSecond => a.1 <= b.1 && a.0 >= b.0,
        }
    }
}

/// A Pareto-maximal effect of some non-empty walk from the start node,
/// together with the cycle components the walk touches.
#[derive(Debug, Clone)]
pub struct Base {
    pub node: usize,
    pub eff: V2,
    pub mask: u64,
    pub parent: Option<u32>,
    /// out-edge index taken at the previous node (at the start for roots)
    pub in_edge: u16,
    pub alive: bool,
}

fn try_insert(
    bases: &mut Vec<Base>,
    per_node: &mut [Vec<u32>],
    frontier: &mut Vec<u32>,
    cand: Base,
    dir: Dir,
    cap: usize,
) -> Result<(), EngineError> {
    let node = cand.node;
    for &ki in &per_node[node] {
        let kept = &bases[ki as usize];
        if dir.dominates(kept.eff, cand.eff) && kept.mask & cand.mask == cand.mask {
            return Ok(()); // dominated, drop
        }
    }
    let mut retained = Vec::with_capacity(per_node[node].len() + 1);
    for &ki in &per_node[node] {
        let kept_eff = bases[ki as usize].eff;
        let kept_mask = bases[ki as usize].mask;
        if dir.dominates(cand.eff, kept_eff) && cand.mask & kept_mask == kept_mask {
            bases[ki as usize].alive = false;
        } else {
            retained.push(ki);
        }
    }
    let idx = bases.len() as u32;
    bases.push(cand);
    if bases.len() > cap {
        return Err(EngineError::CapExceeded("max simple paths".into()));
    }
    retained.push(idx);
    per_node[node] = retained;
    frontier.push(idx);
    Ok(())
}

/// Enumerates walk effects of length up to `2 |V|` with Pareto pruning:
/// a new effect dominated by a kept one (with a component mask at least as
/// large) cannot matter for either side of the search. The result covers, up
/// to domination, every simple path and every cycle through the start.
pub fn enumerate_bases(
    g: &ProductGraph,
    comps: &CycleComponents,
    dir: Dir,
    cap: usize,
) -> Result<Vec<Base>, EngineError> {
    let n = g.node_count();
    let max_depth = 2 * n;
    let mut bases: Vec<Base> = Vec::new();
    let mut per_node: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut frontier: Vec<u32> = Vec::new();

    let start_mask = comps.node_mask[g.start()];
    for (ei, e) in g.out(g.start()).iter().enumerate() {
        let cand = Base {
            node: e.to,
            eff: e.effect,
            mask: start_mask | comps.node_mask[e.to],
            parent: None,
            in_edge: ei as u16,
            alive: true,
        };
        try_insert(&mut bases, &mut per_node, &mut frontier, cand, dir, cap)?;
    }
    for _ in 1..max_depth {
        if frontier.is_empty() {
            break;
        }
        let current = std::mem::take(&mut frontier);
        for bi in current {
            if !bases[bi as usize].alive {
                continue;
            }
            let (node, eff, mask) = {
                let b = &bases[bi as usize];
                (b.node, b.eff, b.mask)
            };
            for (ei, e) in g.out(node).iter().enumerate() {
                let cand = Base {
                    node: e.to,
                    eff: add(eff, e.effect),
                    mask: mask | comps.node_mask[e.to],
                    parent: Some(bi),
                    in_edge: ei as u16,
                    alive: true,
                };
                try_insert(&mut bases, &mut per_node, &mut frontier, cand, dir, cap)?;
            }
        }
    }
    Ok(bases)
}

/// Rebuilds the walk behind a base: the edge list from the start node and the
/// set of visited nodes (including the start).
pub fn reconstruct_walk(g: &ProductGraph, bases: &[Base], idx: usize) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut rev: Vec<(usize, usize)> = Vec::new();
    let mut cur = idx;
    loop {
        let b = &bases[cur];
        match b.parent {
            Some(p) => {
                rev.push((bases[p as usize].node, b.in_edge as usize));
                cur = p as usize;
            }
            None => {
                rev.push((g.start(), b.in_edge as usize));
                break;
            }
        }
    }
    rev.reverse();
    let mut nodes = vec![g.start()];
    for &(from, ei) in &rev {
        nodes.push(g.out(from)[ei].to);
    }
    nodes.sort_unstable();
    nodes.dedup();
    (rev, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_ccount, fig2_pair, subset_sum_pair};

    #[test]
    fn single_state_product() {
        let p = example_ccount();
        let g = build_product(&p.automaton, &p.automaton).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.out(0).len(), 3);
        assert_eq!(g.scc_count(), 1);
    }

    #[test]
    fn subset_sum_product_is_a_chain() {
        let (p1, p2) = subset_sum_pair(&[2, 4], 6).unwrap();
        let g = build_product(&p1.automaton, &p2.automaton).unwrap();
        // both chains are isomorphic, so the product follows the diagonal
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.scc_count(), 4);
        let last = g.node_count() - 1;
        assert!(g.out(last).iter().all(|e| e.to == last));
        // every other node is a singleton component without self-loops
        for v in 0..last {
            assert!(g.out(v).iter().all(|e| e.to != v));
        }
    }

    #[test]
    fn fig2_product_reaches_three_nodes() {
        let (p1, p2) = fig2_pair();
        let g = build_product(&p1.automaton, &p2.automaton).unwrap();
        assert_eq!(g.node_count(), 3);
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let p = example_ccount();
        let (f, _) = fig2_pair();
        assert!(matches!(
            build_product(&p.automaton, &f.automaton),
            Err(EngineError::AlphabetMismatch)
        ));
    }

    #[test]
    fn cycles_of_single_node_are_self_loops() {
        let p = example_ccount();
        let g = build_product(&p.automaton, &p.automaton).unwrap();
        let cycles = simple_cycles(&g, 1000).unwrap();
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.nodes == vec![0]));
    }

    #[test]
    fn cycle_components_share_nodes() {
        let (p1, p2) = fig2_pair();
        let g = build_product(&p1.automaton, &p2.automaton).unwrap();
        let cycles = simple_cycles(&g, 1000).unwrap();
        let comps = cycle_components(&g, &cycles);
        // self-loops at the two sink-ish nodes stay in separate components
        assert_eq!(comps.comp_count, 2);
    }

    #[test]
    fn bases_cover_walks_up_to_domination() {
        let (p1, p2) = subset_sum_pair(&[2, 4], 6).unwrap();
        let g = build_product(&p1.automaton, &p2.automaton).unwrap();
        let cycles = simple_cycles(&g, 1000).unwrap();
        let comps = cycle_components(&g, &cycles);
        let bases = enumerate_bases(&g, &comps, Dir::LowFirst, 20000).unwrap();
        // the full word 110 has effect (0, 1)
        assert!(bases
            .iter()
            .any(|b| b.alive && dominated_by(b.eff, (0, 1), Dir::LowFirst)));
    }

    fn dominated_by(kept: V2, target: V2, dir: Dir) -> bool {
        match dir {
            Dir::LowFirst => kept.0 <= target.0 && kept.1 >= target.1,
            Dir::LowSecond => kept.1 <= target.1 && kept.0 >= target.0,
        }
    }
}
