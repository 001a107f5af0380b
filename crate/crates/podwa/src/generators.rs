//! Constructors for the automaton families used across the test suites:
//! letter-counting examples, the exponential-weight minimization family, the
//! equivalent-but-non-isomorphic pair, subset-sum equivalence instances,
//! graph-coloring merge instances, sample encodings of 3-CNF formulas, and
//! seeded random instances.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Dwa, ObservationScheme, Podwa, RawDwa, RawTransition};
use crate::fitting::Sample;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    BadParameter(String),
    SelfLoopEdge(String),
    ImproperColoring(String),
    BadClause(String),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::BadParameter(m) => write!(f, "bad parameter: {m}"),
            GenError::SelfLoopEdge(v) => write!(f, "self-loop edge at `{v}`"),
            GenError::ImproperColoring(m) => write!(f, "improper coloring: {m}"),
            GenError::BadClause(m) => write!(f, "bad clause: {m}"),
        }
    }
}

impl std::error::Error for GenError {}

/// A directed graph given as an edge list; self-loops are rejected because
/// the coloring reduction needs distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    pub fn from_edges(edges: Vec<(String, String)>) -> Result<Self, GenError> {
        let mut vertices: Vec<String> = Vec::new();
        for (u, v) in &edges {
            if u == v {
                return Err(GenError::SelfLoopEdge(u.clone()));
            }
            if !vertices.contains(u) {
                vertices.push(u.clone());
            }
            if !vertices.contains(v) {
                vertices.push(v.clone());
            }
        }
        vertices.sort();
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges in input order; indices in constructions are 1-based.
    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn adjacent(&self, u: &str, v: &str) -> bool {
        self.edges
            .iter()
            .any(|(a, b)| (a == u && b == v) || (a == v && b == u))
    }
}

/// A literal of a 3-CNF formula; variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

/// A 3-CNF formula. Short clauses are padded by repeating a literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<[Lit; 3]>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<Self, GenError> {
        if num_vars == 0 {
            return Err(GenError::BadParameter("formula needs a variable".into()));
        }
        let mut fixed = Vec::with_capacity(clauses.len());
        for c in clauses {
            if c.is_empty() || c.len() > 3 {
                return Err(GenError::BadClause(format!(
                    "clause must have 1 to 3 literals, got {}",
                    c.len()
                )));
            }
            for l in &c {
                if l.var == 0 || l.var > num_vars {
                    return Err(GenError::BadClause(format!(
                        "literal references variable {} of {}",
                        l.var, num_vars
                    )));
                }
            }
            let pad = *c.last().unwrap();
            let mut arr = [pad; 3];
            for (i, l) in c.into_iter().enumerate() {
                arr[i] = l;
            }
            fixed.push(arr);
        }
        Ok(Cnf {
            num_vars,
            clauses: fixed,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    /// Evaluates the formula under an assignment indexed by variable - 1.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| assignment[l.var - 1] == l.positive)
        })
    }

    /// Truth-table satisfiability check.
    pub fn satisfiable(&self) -> bool {
        (0..1u64 << self.num_vars).any(|bits| {
            let assignment: Vec<bool> =
                (0..self.num_vars).map(|i| bits >> i & 1 == 1).collect();
            self.satisfied_by(&assignment)
        })
    }
}

fn build_podwa(raw: RawDwa, cuts: Vec<i64>) -> Podwa {
    let dwa = raw.build().expect("generator output is valid");
    let scheme = ObservationScheme::new(cuts).expect("generator cuts are valid");
    Podwa::new(dwa, scheme)
}

fn tr(from: &str, letter: &str, to: &str, weight: i64) -> RawTransition {
    RawTransition {
        from: from.into(),
        letter: letter.into(),
        to: to.into(),
        weight,
    }
}

/// Single-state binary instance over `{a, b, c}` with weights `-1, 0, 1`:
/// a word is accepted exactly when it has more `c`s than `a`s.
pub fn example_ccount() -> Podwa {
    let raw = RawDwa {
        alphabet: vec!["a".into(), "b".into(), "c".into()],
        states: vec!["q0".into()],
        initial: "q0".into(),
        transitions: vec![
            tr("q0", "a", "q0", -1),
            tr("q0", "b", "q0", 0),
            tr("q0", "c", "q0", 1),
        ],
    };
    build_podwa(raw, vec![1])
}

/// The two single-state components whose union language ("more `c` than `a`
/// or more `c` than `b`") has no observed-automaton recognizer.
pub fn l_union_components() -> (Podwa, Podwa) {
    let lb_raw = RawDwa {
        alphabet: vec!["a".into(), "b".into(), "c".into()],
        states: vec!["q0".into()],
        initial: "q0".into(),
        transitions: vec![
            tr("q0", "a", "q0", 0),
            tr("q0", "b", "q0", -1),
            tr("q0", "c", "q0", 1),
        ],
    };
    (example_ccount(), build_podwa(lb_raw, vec![1]))
}

/// Three-letter family with weights in `{-1, 0, 1}` whose minimal equivalent
/// automata require weights exponential in `n`.
///
/// The value of a word is fixed by its first `n + 1` letters: a prefix
/// `i^k a` (k < n) yields +1 unless it is completed by exactly `b^(n-k)`,
/// which brings the value back to 0, and symmetrically for `i^k b` with -1.
/// Scheme cuts are `[0, 1]`, splitting negative / zero / positive.
pub fn lambda_n(n: usize) -> Result<Podwa, GenError> {
    if n < 2 {
        return Err(GenError::BadParameter("family is defined for n >= 2".into()));
    }
    let spine = |j: usize| format!("q{j}");
    let high = |j: usize| format!("q{j}a");
    let low = |j: usize| format!("q{j}b");
    let mut states: Vec<String> = vec!["s".into()];
    states.push(spine(0));
    for j in 1..=n {
        states.push(spine(j));
        states.push(high(j));
        states.push(low(j));
    }
    let mut trans: Vec<RawTransition> = Vec::new();
    for j in 0..n {
        trans.push(tr(&spine(j), "i", &spine(j + 1), 0));
        trans.push(tr(&spine(j), "a", &high(j + 1), 1));
        trans.push(tr(&spine(j), "b", &low(j + 1), -1));
    }
    trans.push(tr(&spine(n), "i", "s", 0));
    trans.push(tr(&spine(n), "a", "s", 1));
    trans.push(tr(&spine(n), "b", "s", -1));
    for j in 1..n {
        trans.push(tr(&high(j), "b", &high(j + 1), 0));
        trans.push(tr(&low(j), "a", &low(j + 1), 0));
    }
    trans.push(tr(&high(n), "b", "s", -1));
    trans.push(tr(&low(n), "a", "s", 1));
    // everything not listed falls into the absorbing zero state
    let listed: Vec<(String, String)> = trans
        .iter()
        .map(|t| (t.from.clone(), t.letter.clone()))
        .collect();
    for st in &states {
        for letter in ["a", "b", "i"] {
            if !listed.contains(&(st.clone(), letter.to_string())) {
                trans.push(tr(st, letter, "s", 0));
            }
        }
    }
    let raw = RawDwa {
        alphabet: vec!["a".into(), "b".into(), "i".into()],
        states,
        initial: spine(0),
        transitions: trans,
    };
    Ok(build_podwa(raw, vec![0, 1]))
}

/// Minimal counterpart of [`lambda_n`]: a single spine of `n + 2` states with
/// doubling weights `2^(n-j)` (and 2 on the last step) feeding an absorbing
/// zero state.
pub fn lambda_n_minimal(n: usize) -> Result<Podwa, GenError> {
    if n < 2 {
        return Err(GenError::BadParameter("family is defined for n >= 2".into()));
    }
    if n >= 60 {
        return Err(GenError::BadParameter("weights overflow i64".into()));
    }
    let spine = |j: usize| format!("q{j}");
    let mut states: Vec<String> = (0..=n).map(spine).collect();
    states.push("s".into());
    let mut trans = Vec::new();
    for j in 0..=n {
        let w = if j < n { 1i64 << (n - j) } else { 2 };
        let to = if j < n { spine(j + 1) } else { "s".to_string() };
        trans.push(tr(&spine(j), "a", &to, w));
        trans.push(tr(&spine(j), "b", &to, -w));
        trans.push(tr(&spine(j), "i", &to, 0));
    }
    for letter in ["a", "b", "i"] {
        trans.push(tr("s", letter, "s", 0));
    }
    let raw = RawDwa {
        alphabet: vec!["a".into(), "b".into(), "i".into()],
        states,
        initial: spine(0),
        transitions: trans,
    };
    Ok(build_podwa(raw, vec![0, 1]))
}

/// Two binary instances that are observationally equivalent and minimal but
/// not isomorphic: both give the word `a` a negative value and every other
/// word a positive one.
pub fn fig2_pair() -> (Podwa, Podwa) {
    let first = RawDwa {
        alphabet: vec!["a".into(), "b".into()],
        states: vec!["q0".into(), "q1".into()],
        initial: "q0".into(),
        transitions: vec![
            tr("q0", "a", "q1", -1),
            tr("q0", "b", "q1", 2),
            tr("q1", "a", "q1", 2),
            tr("q1", "b", "q1", 2),
        ],
    };
    let second = RawDwa {
        alphabet: vec!["a".into(), "b".into()],
        states: vec!["q0".into(), "q1".into()],
        initial: "q0".into(),
        transitions: vec![
            tr("q0", "a", "q1", -1),
            tr("q0", "b", "q0", 2),
            tr("q1", "a", "q1", 2),
            tr("q1", "b", "q1", 2),
        ],
    };
    (build_podwa(first, vec![1]), build_podwa(second, vec![1]))
}

/// Equivalence instance pair encoding a subset-sum question: words over
/// `{0, 1}` pick a subset, the first automaton accumulates the picked sum
/// minus `target`, the second shifts every value by one. The pair is
/// observationally equivalent exactly when no subset hits the target.
///
/// Odd inputs are doubled first, which preserves solution existence.
pub fn subset_sum_pair(values: &[i64], target: i64) -> Result<(Podwa, Podwa), GenError> {
    if values.is_empty() {
        return Err(GenError::BadParameter("need at least one value".into()));
    }
    let (values, target): (Vec<i64>, i64) =
        if values.iter().any(|v| v % 2 != 0) || target % 2 != 0 {
            (values.iter().map(|v| v * 2).collect(), target * 2)
        } else {
            (values.to_vec(), target)
        };
    let k = values.len();
    let name = |i: usize| format!("q{i:02}");
    let states: Vec<String> = (0..=k + 1).map(name).collect();
    let build = |final_weight: i64| -> Podwa {
        let mut trans = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            trans.push(tr(&name(i), "1", &name(i + 1), v));
            trans.push(tr(&name(i), "0", &name(i + 1), 0));
        }
        trans.push(tr(&name(k), "0", &name(k + 1), final_weight));
        trans.push(tr(&name(k), "1", &name(k + 1), final_weight));
        trans.push(tr(&name(k + 1), "0", &name(k + 1), 0));
        trans.push(tr(&name(k + 1), "1", &name(k + 1), 0));
        build_podwa(
            RawDwa {
                alphabet: vec!["0".into(), "1".into()],
                states: states.clone(),
                initial: name(0),
                transitions: trans,
            },
            vec![1],
        )
    };
    Ok((build(-target), build(-target + 1)))
}

fn edge_letter(i: usize, plus: bool) -> String {
    format!("e{}{}", i, if plus { "+" } else { "-" })
}

fn vertex_state(v: &str) -> String {
    format!("v_{v}")
}

/// Binary instance for a graph whose merge-minimization answers a k-coloring
/// question. Letters are `ei+`/`ei-` per edge; from the initial state they
/// reach the edge's two endpoints, everything else falls into a zero sink.
/// Weights are arranged so the endpoint states of an edge cannot share a
/// weight row while non-adjacent vertex states can be recolored to match.
pub fn coloring_automaton(g: &Graph) -> Result<Podwa, GenError> {
    if g.edges().is_empty() {
        return Err(GenError::BadParameter("graph needs at least one edge".into()));
    }
    let mut alphabet = Vec::new();
    for i in 1..=g.edges().len() {
        alphabet.push(edge_letter(i, true));
        alphabet.push(edge_letter(i, false));
    }
    let mut states: Vec<String> = vec!["q0".into(), "qf".into()];
    states.extend(g.vertices().iter().map(|v| vertex_state(v)));
    let mut trans = Vec::new();
    for (idx, (v, u)) in g.edges().iter().enumerate() {
        let i = idx + 1;
        let w0 = -(3 * i as i64) - 1;
        trans.push(tr("q0", &edge_letter(i, false), &vertex_state(v), w0));
        trans.push(tr("q0", &edge_letter(i, true), &vertex_state(u), w0));
    }
    for x in g.vertices() {
        for (idx, (v, u)) in g.edges().iter().enumerate() {
            let i = idx + 1;
            let (wm, wp) = if x == v {
                (3 * i as i64, 3 * i as i64 + 2)
            } else if x == u {
                (3 * i as i64 + 2, 3 * i as i64)
            } else {
                (3 * i as i64 + 1, 3 * i as i64 + 1)
            };
            trans.push(tr(&vertex_state(x), &edge_letter(i, false), "qf", wm));
            trans.push(tr(&vertex_state(x), &edge_letter(i, true), "qf", wp));
        }
    }
    for i in 1..=g.edges().len() {
        trans.push(tr("qf", &edge_letter(i, false), "qf", 0));
        trans.push(tr("qf", &edge_letter(i, true), "qf", 0));
    }
    Ok(build_podwa(
        RawDwa {
            alphabet,
            states,
            initial: "q0".into(),
            transitions: trans,
        },
        vec![1],
    ))
}

/// Applies the constructive side of the coloring correspondence: given a
/// proper coloring, vertex states of one color get identical weight rows
/// (an endpoint of an edge dictates the row entry for that edge's letters)
/// and each color class collapses into one state, leaving `k + 2` states.
pub fn recolor_weights(
    g: &Graph,
    coloring: &BTreeMap<String, usize>,
) -> Result<Dwa, GenError> {
    for v in g.vertices() {
        match coloring.get(v) {
            None => {
                return Err(GenError::ImproperColoring(format!(
                    "vertex `{v}` has no color"
                )))
            }
            Some(0) => {
                return Err(GenError::ImproperColoring("colors start at 1".into()))
            }
            Some(_) => {}
        }
    }
    for (u, v) in g.edges() {
        if coloring[u] == coloring[v] {
            return Err(GenError::ImproperColoring(format!(
                "edge ({u}, {v}) joins two `{}`-colored vertices",
                coloring[u]
            )));
        }
    }
    let mut colors: Vec<usize> = coloring.values().copied().collect();
    colors.sort();
    colors.dedup();
    let class_state = |c: usize| format!("c{c}");

    let mut alphabet = Vec::new();
    for i in 1..=g.edges().len() {
        alphabet.push(edge_letter(i, true));
        alphabet.push(edge_letter(i, false));
    }
    let mut states: Vec<String> = vec!["q0".into(), "qf".into()];
    states.extend(colors.iter().map(|&c| class_state(c)));
    let mut trans = Vec::new();
    for (idx, (v, u)) in g.edges().iter().enumerate() {
        let i = idx + 1;
        let w0 = -(3 * i as i64) - 1;
        trans.push(tr("q0", &edge_letter(i, false), &class_state(coloring[v]), w0));
        trans.push(tr("q0", &edge_letter(i, true), &class_state(coloring[u]), w0));
    }
    for &c in &colors {
        for (idx, (v, u)) in g.edges().iter().enumerate() {
            let i = idx + 1;
            // at most one member of the class is an endpoint of edge i
            let (wm, wp) = if coloring[v] == c {
                (3 * i as i64, 3 * i as i64 + 2)
            } else if coloring[u] == c {
                (3 * i as i64 + 2, 3 * i as i64)
            } else {
                (3 * i as i64 + 1, 3 * i as i64 + 1)
            };
            trans.push(tr(&class_state(c), &edge_letter(i, false), "qf", wm));
            trans.push(tr(&class_state(c), &edge_letter(i, true), "qf", wp));
        }
    }
    for i in 1..=g.edges().len() {
        trans.push(tr("qf", &edge_letter(i, false), "qf", 0));
        trans.push(tr("qf", &edge_letter(i, true), "qf", 0));
    }
    RawDwa {
        alphabet,
        states,
        initial: "q0".into(),
        transitions: trans,
    }
    .build()
    .map_err(|v| GenError::BadParameter(format!("internal: {v:?}")))
}

/// Encodes a 3-CNF formula as a fitting sample over `{q} ∪ {pi, npi}` with
/// cuts `[0, 2]`: a single-state automaton fits the sample exactly when the
/// formula is satisfiable.
pub fn sat_sample(cnf: &Cnf) -> Sample {
    let mut letters = vec!["q".to_string()];
    for i in 1..=cnf.num_vars() {
        letters.push(format!("p{i}"));
        letters.push(format!("np{i}"));
    }
    let lit_name = |l: &Lit| {
        if l.positive {
            format!("p{}", l.var)
        } else {
            format!("np{}", l.var)
        }
    };
    let mut entries: Vec<(Vec<String>, usize)> = Vec::new();
    entries.push((vec!["q".into()], 1));
    entries.push((vec!["q".into(), "q".into()], 2));
    for i in 1..=cnf.num_vars() {
        let p = format!("p{i}");
        let np = format!("np{i}");
        entries.push((vec![p.clone()], 1));
        entries.push((vec![np.clone()], 1));
        entries.push((vec![p.clone(), np.clone()], 1));
        entries.push((vec![p, np, "q".into()], 2));
    }
    for c in cnf.clauses() {
        let mut word: Vec<String> = c.iter().map(lit_name).collect();
        word.push("q".into());
        entries.push((word, 2));
    }
    Sample::from_names(letters, vec![0, 2], entries).expect("encoded sample is valid")
}

/// Seeded random instance; identical arguments give identical output.
pub fn random_podwa(
    seed: u64,
    n_states: usize,
    alphabet_size: usize,
    max_weight: i64,
    cuts: &[i64],
) -> Result<Podwa, GenError> {
    if n_states == 0 || alphabet_size == 0 {
        return Err(GenError::BadParameter("counts must be positive".into()));
    }
    if alphabet_size > 26 {
        return Err(GenError::BadParameter("at most 26 letters".into()));
    }
    if max_weight < 0 {
        return Err(GenError::BadParameter("max weight must be >= 0".into()));
    }
    let scheme = ObservationScheme::new(cuts.to_vec())
        .map_err(|v| GenError::BadParameter(v.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<String> = (0..alphabet_size)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let width = if n_states > 10 { 2 } else { 1 };
    let name = |i: usize| format!("q{i:0width$}");
    let states: Vec<String> = (0..n_states).map(name).collect();
    let mut trans = Vec::new();
    for s in 0..n_states {
        for l in &letters {
            let to = rng.gen_range(0..n_states);
            let w = rng.gen_range(-max_weight..=max_weight);
            trans.push(tr(&name(s), l, &name(to), w));
        }
    }
    let raw = RawDwa {
        alphabet: letters,
        states,
        initial: name(0),
        transitions: trans,
    };
    Ok(Podwa::new(
        raw.build().expect("random instance is valid"),
        scheme,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Word;

    fn w(p: &Podwa, s: &str) -> Word {
        p.automaton.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn ccount_basic_observations() {
        let p = example_ccount();
        assert_eq!(p.automaton.state_count(), 1);
        assert_eq!(p.observe(&w(&p, "c")).unwrap(), 1);
        assert_eq!(p.observe(&w(&p, "ac")).unwrap(), 0);
    }

    #[test]
    fn union_components_are_single_state() {
        let (la, lb) = l_union_components();
        assert_eq!(la.automaton.state_count(), 1);
        assert_eq!(lb.automaton.state_count(), 1);
        assert_eq!(lb.observe(&w(&lb, "c")).unwrap(), 1);
        assert_eq!(lb.observe(&w(&lb, "bc")).unwrap(), 0);
    }

    #[test]
    fn lambda_n_shape_and_observations() {
        let p = lambda_n(2).unwrap();
        assert_eq!(p.automaton.state_count(), 8);
        assert_eq!(p.observe(&w(&p, "ia")).unwrap(), 2);
        assert_eq!(p.observe(&w(&p, "abb")).unwrap(), 1);
        assert!(lambda_n(1).is_err());
    }

    #[test]
    fn lambda_semantics_small_n() {
        // independent oracle: the value of a word is decided by its prefix
        for n in [2usize, 3] {
            let p = lambda_n(n).unwrap();
            let alphabet = ["a", "b", "i"];
            let mut words: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
            let mut all = words.clone();
            for _ in 1..n + 3 {
                words = words
                    .iter()
                    .flat_map(|w| alphabet.iter().map(move |a| format!("{w}{a}")))
                    .collect();
                all.extend(words.iter().cloned());
            }
            for word in &all {
                let expected = lambda_oracle(n, word);
                let got = p.observe(&w(&p, word)).unwrap();
                assert_eq!(got, expected, "word {word} at n={n}");
            }
        }
    }

    fn lambda_oracle(n: usize, word: &str) -> usize {
        let chars: Vec<char> = word.chars().collect();
        let k = chars.iter().take_while(|&&c| c == 'i').count();
        if k >= chars.len() || k > n {
            return 1; // all-i prefix long enough: value stays 0
        }
        if k == n {
            // single step from the end of the spine
            return if chars[k] == 'a' { 2 } else { 0 };
        }
        let sign = chars[k];
        let need = n - k;
        let tail = &chars[k + 1..];
        let completer = if sign == 'a' { 'b' } else { 'a' };
        if tail.len() >= need && tail[..need].iter().all(|&c| c == completer) {
            1
        } else if tail.len() < need && tail.iter().all(|&c| c == completer) {
            // still on the branch: value is +-1 so far
            if sign == 'a' {
                2
            } else {
                0
            }
        } else {
            // deviated: dropped into the sink with value +-1
            if sign == 'a' {
                2
            } else {
                0
            }
        }
    }

    #[test]
    fn lambda_minimal_weights() {
        let p = lambda_n_minimal(2).unwrap();
        assert_eq!(p.automaton.state_count(), 4);
        assert_eq!(p.automaton.evaluate(&w(&p, "abb")).unwrap(), 0);
        let q0 = p.automaton.initial();
        let a = p.automaton.alphabet().letter("a").unwrap();
        assert_eq!(p.automaton.weight(q0, a), 4); // 2^n at the first step
    }

    #[test]
    fn fig2_values() {
        let (p1, _) = fig2_pair();
        assert_eq!(p1.observe(&w(&p1, "a")).unwrap(), 0);
        assert_eq!(p1.observe(&w(&p1, "aa")).unwrap(), 1);
    }

    #[test]
    fn subset_sum_values() {
        let (p1, p2) = subset_sum_pair(&[2, 4], 6).unwrap();
        assert_eq!(p1.automaton.evaluate(&w(&p1, "110")).unwrap(), 0);
        assert_eq!(p2.automaton.evaluate(&w(&p2, "110")).unwrap(), 1);
        assert!(subset_sum_pair(&[], 2).is_err());
    }

    #[test]
    fn subset_sum_doubles_odd_inputs() {
        let (p1, _) = subset_sum_pair(&[1, 2], 3).unwrap();
        // doubled to [2, 4], 6
        assert_eq!(p1.automaton.evaluate(&w(&p1, "110")).unwrap(), 0);
    }

    #[test]
    fn coloring_two_letter_values() {
        let g = Graph::from_edges(vec![("u".into(), "v".into())]).unwrap();
        let p = coloring_automaton(&g).unwrap();
        assert_eq!(p.automaton.state_count(), 4);
        assert_eq!(p.automaton.evaluate(&w(&p, "e1-.e1-")).unwrap(), -1);
        assert_eq!(p.automaton.evaluate(&w(&p, "e1-.e1+")).unwrap(), 1);
        assert_eq!(p.automaton.evaluate(&w(&p, "e1+.e1+")).unwrap(), -1);
        assert_eq!(p.automaton.evaluate(&w(&p, "e1+.e1-")).unwrap(), 1);
        // one-letter words from the initial state are always negative
        assert_eq!(p.observe(&w(&p, "e1-")).unwrap(), 0);
        assert_eq!(p.observe(&w(&p, "e1+")).unwrap(), 0);
    }

    #[test]
    fn coloring_rejects_self_loop() {
        assert!(matches!(
            Graph::from_edges(vec![("u".into(), "u".into())]),
            Err(GenError::SelfLoopEdge(_))
        ));
    }

    #[test]
    fn recolor_improper_coloring_rejected() {
        let g = Graph::from_edges(vec![("u".into(), "v".into())]).unwrap();
        let mut c = BTreeMap::new();
        c.insert("u".to_string(), 1);
        c.insert("v".to_string(), 1);
        assert!(matches!(
            recolor_weights(&g, &c),
            Err(GenError::ImproperColoring(_))
        ));
    }

    #[test]
    fn sat_sample_entry_count() {
        let cnf = Cnf::new(
            1,
            vec![vec![Lit {
                var: 1,
                positive: true,
            }]],
        )
        .unwrap();
        let s = sat_sample(&cnf);
        assert_eq!(s.entries().len(), 7);
        // the two base entries are always present
        let q = s.alphabet().letter("q").unwrap();
        assert!(s.entries().iter().any(|(w, i)| w == &vec![q, q] && *i == 2));
    }

    #[test]
    fn random_podwa_is_deterministic_and_valid() {
        for seed in 0..100u64 {
            let p = random_podwa(seed, 3, 2, 2, &[0, 1]).unwrap();
            assert!(p.validate().is_empty());
            assert_eq!(p, random_podwa(seed, 3, 2, 2, &[0, 1]).unwrap());
        }
        let z = random_podwa(7, 1, 1, 0, &[1]).unwrap();
        let a = z.automaton.alphabet().letter("a").unwrap();
        assert_eq!(z.automaton.weight(z.automaton.initial(), a), 0);
    }

    #[test]
    fn generator_outputs_validate() {
        assert!(example_ccount().validate().is_empty());
        let (la, lb) = l_union_components();
        assert!(la.validate().is_empty() && lb.validate().is_empty());
        for n in 2..=4 {
            assert!(lambda_n(n).unwrap().validate().is_empty());
            assert!(lambda_n_minimal(n).unwrap().validate().is_empty());
        }
        let (f1, f2) = fig2_pair();
        assert!(f1.validate().is_empty() && f2.validate().is_empty());
        let (s1, s2) = subset_sum_pair(&[2, 4, 6], 8).unwrap();
        assert!(s1.validate().is_empty() && s2.validate().is_empty());
        let g = Graph::from_edges(vec![
            ("u".into(), "v".into()),
            ("v".into(), "w".into()),
        ])
        .unwrap();
        assert!(coloring_automaton(&g).unwrap().validate().is_empty());
    }
}
