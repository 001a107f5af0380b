//! Core data model: deterministic weighted automata, observation schemes and
//! the partially observable pairing of the two.
//!
//! A [`Dwa`] assigns every non-empty word the sum of the transition weights
//! along its unique run. A [`Podwa`] wraps a `Dwa` with an
//! [`ObservationScheme`] and only reveals the index of the integer interval
//! the value falls into.

use std::collections::VecDeque;
use std::fmt;

/// Index of a letter in a (canonically sorted) alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub(crate) usize);

impl Letter {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Index of a state in a (canonically sorted) state list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub(crate) usize);

impl State {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A word is a sequence of letters of some automaton's alphabet.
pub type Word = Vec<Letter>;

/// Errors raised by evaluation-style operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Evaluation and observation are defined on non-empty words only.
    EmptyWord,
    /// A letter does not belong to the automaton's alphabet.
    UnknownLetter(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::EmptyWord => write!(f, "the empty word has no value"),
            EvalError::UnknownLetter(l) => write!(f, "letter `{l}` is not in the alphabet"),
        }
    }
}

impl std::error::Error for EvalError {}

/// A single invariant violation found while validating raw automaton data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet,
    NoStates,
    DuplicateLetter(String),
    DuplicateState(String),
    UnknownInitial(String),
    /// delta/weight must be defined for every (state, letter) pair.
    MissingTransition { state: String, letter: String },
    DuplicateTransition { state: String, letter: String },
    UnknownState(String),
    UnknownLetter(String),
    EmptyCuts,
    CutsNotStrictlyIncreasing,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAlphabet => write!(f, "alphabet is empty"),
            Violation::NoStates => write!(f, "state set is empty"),
            Violation::DuplicateLetter(l) => write!(f, "duplicate letter `{l}`"),
            Violation::DuplicateState(s) => write!(f, "duplicate state `{s}`"),
            Violation::UnknownInitial(s) => write!(f, "initial state `{s}` is not a state"),
            Violation::MissingTransition { state, letter } => {
                write!(f, "no transition for ({state}, {letter})")
            }
            Violation::DuplicateTransition { state, letter } => {
                write!(f, "duplicate transition for ({state}, {letter})")
            }
            Violation::UnknownState(s) => write!(f, "transition references unknown state `{s}`"),
            Violation::UnknownLetter(l) => write!(f, "transition references unknown letter `{l}`"),
            Violation::EmptyCuts => write!(f, "observation scheme needs at least one cut"),
            Violation::CutsNotStrictlyIncreasing => {
                write!(f, "cut points must be strictly increasing")
            }
        }
    }
}

/// A canonically ordered, duplicate-free set of letter symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet; letters are sorted and must be distinct and non-empty.
    pub fn new(mut letters: Vec<String>) -> Result<Self, Violation> {
        if letters.is_empty() {
            return Err(Violation::EmptyAlphabet);
        }
        letters.sort();
        for w in letters.windows(2) {
            if w[0] == w[1] {
                return Err(Violation::DuplicateLetter(w[0].clone()));
            }
        }
        if letters.iter().any(|l| l.is_empty()) {
            return Err(Violation::DuplicateLetter(String::new()));
        }
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letters.len()).map(Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l.0]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.letters.binary_search_by(|x| x.as_str().cmp(name)).ok().map(Letter)
    }

    /// Parses a word given either as a plain concatenation of single-character
    /// letters or as a `.`-separated list of (possibly multi-character)
    /// letters; a bare letter name is also accepted as a one-letter word.
    pub fn parse_word(&self, text: &str) -> Result<Word, EvalError> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains('.') {
            let mut word = Vec::new();
            for part in text.split('.') {
                let l = self
                    .letter(part)
                    .ok_or_else(|| EvalError::UnknownLetter(part.to_string()))?;
                word.push(l);
            }
            return Ok(word);
        }
        if let Some(l) = self.letter(text) {
            return Ok(vec![l]);
        }
        let mut word = Vec::new();
        for ch in text.chars() {
            let s = ch.to_string();
            let l = self.letter(&s).ok_or(EvalError::UnknownLetter(s))?;
            word.push(l);
        }
        Ok(word)
    }

    /// Renders a word; multi-character letters are joined with `.`.
    pub fn render_word(&self, word: &[Letter]) -> String {
        let multi = word.iter().any(|&l| self.name(l).chars().count() > 1);
        let parts: Vec<&str> = word.iter().map(|&l| self.name(l)).collect();
        if multi {
            parts.join(".")
        } else {
            parts.concat()
        }
    }
}

/// Raw transition data as it appears in files or hand-written constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTransition {
    pub from: String,
    pub letter: String,
    pub to: String,
    pub weight: i64,
}

/// Unchecked automaton data. `validate` lists every invariant violation;
/// `build` produces a canonical [`Dwa`] when there are none.
#[derive(Debug, Clone, Default)]
pub struct RawDwa {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<RawTransition>,
}

impl RawDwa {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut letters = self.alphabet.clone();
        letters.sort();
        if letters.is_empty() {
            out.push(Violation::EmptyAlphabet);
        }
        for w in letters.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::DuplicateLetter(w[0].clone()));
            }
        }
        let mut states = self.states.clone();
        states.sort();
        if states.is_empty() {
            out.push(Violation::NoStates);
        }
        for w in states.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::DuplicateState(w[0].clone()));
            }
        }
        if !states.is_empty() && states.binary_search(&self.initial).is_err() {
            out.push(Violation::UnknownInitial(self.initial.clone()));
        }
        let mut seen: Vec<(String, String)> = Vec::new();
        for t in &self.transitions {
            if states.binary_search(&t.from).is_err() {
                out.push(Violation::UnknownState(t.from.clone()));
            }
            if states.binary_search(&t.to).is_err() {
                out.push(Violation::UnknownState(t.to.clone()));
            }
            if letters.binary_search(&t.letter).is_err() {
                out.push(Violation::UnknownLetter(t.letter.clone()));
            }
            let key = (t.from.clone(), t.letter.clone());
            if seen.contains(&key) {
                out.push(Violation::DuplicateTransition {
                    state: t.from.clone(),
                    letter: t.letter.clone(),
                });
            } else {
                seen.push(key);
            }
        }
        // totality
        for s in &states {
            for l in &letters {
                if states.binary_search(s).is_ok()
                    && !self
                        .transitions
                        .iter()
                        .any(|t| &t.from == s && &t.letter == l)
                {
                    out.push(Violation::MissingTransition {
                        state: s.clone(),
                        letter: l.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<Dwa, Vec<Violation>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(violations);
        }
        let alphabet = Alphabet::new(self.alphabet).map_err(|v| vec![v])?;
        let mut states = self.states;
        states.sort();
        let initial = State(states.binary_search(&self.initial).unwrap());
        let n = states.len();
        let k = alphabet.len();
        let mut delta = vec![vec![State(0); k]; n];
        let mut weight = vec![vec![0i64; k]; n];
        for t in self.transitions {
            let s = states.binary_search(&t.from).unwrap();
            let l = alphabet.letter(&t.letter).unwrap().0;
            let to = states.binary_search(&t.to).unwrap();
            delta[s][l] = State(to);
            weight[s][l] = t.weight;
        }
        Ok(Dwa {
            alphabet,
            states,
            initial,
            delta,
            weight,
        })
    }
}

/// A deterministic weighted automaton over the integers.
///
/// The transition and weight functions are total; states and letters are kept
/// in lexicographic order so that structurally equal automata compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dwa {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: State,
    delta: Vec<Vec<State>>,
    weight: Vec<Vec<i64>>,
}

impl Dwa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = State> {
        (0..self.states.len()).map(State)
    }

    pub fn state_name(&self, s: State) -> &str {
        &self.states[s.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_by_name(&self, name: &str) -> Option<State> {
        self.states.binary_search_by(|x| x.as_str().cmp(name)).ok().map(State)
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn step(&self, s: State, l: Letter) -> State {
        self.delta[s.0][l.0]
    }

    pub fn weight(&self, s: State, l: Letter) -> i64 {
        self.weight[s.0][l.0]
    }

    fn check_word(&self, word: &[Letter]) -> Result<(), EvalError> {
        for &l in word {
            if l.0 >= self.alphabet.len() {
                return Err(EvalError::UnknownLetter(format!("#{}", l.0)));
            }
        }
        Ok(())
    }

    /// The sequence of states visited while reading `word`, starting from the
    /// initial state. The empty word yields just the initial state.
    pub fn run(&self, word: &[Letter]) -> Result<Vec<State>, EvalError> {
        self.check_word(word)?;
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut cur = self.initial;
        states.push(cur);
        for &l in word {
            cur = self.step(cur, l);
            states.push(cur);
        }
        Ok(states)
    }

    /// Sum of the transition weights along the run on a non-empty word.
    pub fn evaluate(&self, word: &[Letter]) -> Result<i64, EvalError> {
        if word.is_empty() {
            return Err(EvalError::EmptyWord);
        }
        self.evaluate_from(self.initial, word)
    }

    /// Same sum, started from an arbitrary state. The empty word sums to 0.
    pub fn evaluate_from(&self, from: State, word: &[Letter]) -> Result<i64, EvalError> {
        self.check_word(word)?;
        let mut cur = from;
        let mut total: i64 = 0;
        for &l in word {
            total += self.weight(cur, l);
            cur = self.step(cur, l);
        }
        Ok(total)
    }

    /// States reachable from the initial state, in index order.
    pub fn reachable(&self) -> Vec<State> {
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::new();
        seen[self.initial.0] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for l in self.alphabet.letters() {
                let to = self.step(q, l);
                if !seen[to.0] {
                    seen[to.0] = true;
                    queue.push_back(to);
                }
            }
        }
        (0..self.states.len()).filter(|&i| seen[i]).map(State).collect()
    }

    /// A copy containing only the reachable part.
    pub fn restrict_reachable(&self) -> Dwa {
        let reach = self.reachable();
        if reach.len() == self.states.len() {
            return self.clone();
        }
        let raw = RawDwa {
            alphabet: self.alphabet.names().to_vec(),
            states: reach.iter().map(|&s| self.states[s.0].clone()).collect(),
            initial: self.states[self.initial.0].clone(),
            transitions: reach
                .iter()
                .flat_map(|&s| {
                    self.alphabet.letters().map(move |l| RawTransition {
                        from: self.states[s.0].clone(),
                        letter: self.alphabet.name(l).to_string(),
                        to: self.states[self.step(s, l).0].clone(),
                        weight: self.weight(s, l),
                    })
                })
                .collect(),
        };
        raw.build().expect("reachable restriction stays valid")
    }

    /// Diagnostic size metric: state count plus total bit length of weights.
    pub fn size(&self) -> usize {
        let bits: usize = self
            .weight
            .iter()
            .flatten()
            .map(|&w| {
                let m = w.unsigned_abs();
                (64 - m.leading_zeros()).max(1) as usize
            })
            .sum();
        self.states.len() + bits
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.weight
            .iter()
            .flatten()
            .map(|w| w.abs())
            .max()
            .unwrap_or(0)
    }

    /// Re-exports the automaton as raw data (canonical order).
    pub fn to_raw(&self) -> RawDwa {
        RawDwa {
            alphabet: self.alphabet.names().to_vec(),
            states: self.states.clone(),
            initial: self.states[self.initial.0].clone(),
            transitions: self
                .states()
                .flat_map(|s| {
                    self.alphabet.letters().map(move |l| RawTransition {
                        from: self.states[s.0].clone(),
                        letter: self.alphabet.name(l).to_string(),
                        to: self.states[self.step(s, l).0].clone(),
                        weight: self.weight(s, l),
                    })
                })
                .collect(),
        }
    }
}

/// A finite list of strictly increasing cut points `l_1 < … < l_s`.
///
/// The induced intervals are `(-inf, l_1)`, `[l_i, l_{i+1})` and `[l_s, +inf)`;
/// the observation index of a value is the number of cuts less than or equal
/// to it, so indices range over `0..=s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationScheme {
    cuts: Vec<i64>,
}

impl ObservationScheme {
    pub fn new(cuts: Vec<i64>) -> Result<Self, Violation> {
        if cuts.is_empty() {
            return Err(Violation::EmptyCuts);
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::CutsNotStrictlyIncreasing);
        }
        Ok(ObservationScheme { cuts })
    }

    /// The two-interval scheme `(-inf, 0]`, `(0, +inf)`.
    pub fn binary() -> Self {
        ObservationScheme { cuts: vec![1] }
    }

    pub fn is_binary(&self) -> bool {
        self.cuts == [1]
    }

    pub fn cuts(&self) -> &[i64] {
        &self.cuts
    }

    /// Number of cuts, i.e. the largest observation index.
    pub fn max_index(&self) -> usize {
        self.cuts.len()
    }

    pub fn interval_count(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Observation index of an integer value.
    pub fn index_of(&self, value: i64) -> usize {
        self.cuts.partition_point(|&c| c <= value)
    }

    /// Smallest member of interval `idx`; the unbounded-below interval is
    /// represented by the value just under the first cut.
    pub fn representative(&self, idx: usize) -> i64 {
        if idx == 0 {
            self.cuts[0] - 1
        } else {
            self.cuts[idx - 1]
        }
    }

    /// Inclusive value bounds of interval `idx`; `None` marks an open end.
    pub fn interval_bounds(&self, idx: usize) -> (Option<i64>, Option<i64>) {
        let lo = if idx == 0 { None } else { Some(self.cuts[idx - 1]) };
        let hi = if idx == self.cuts.len() {
            None
        } else {
            Some(self.cuts[idx] - 1)
        };
        (lo, hi)
    }
}

/// Raw observed-automaton data (automaton plus cut list).
#[derive(Debug, Clone, Default)]
pub struct RawPodwa {
    pub dwa: RawDwa,
    pub cuts: Vec<i64>,
}

impl RawPodwa {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.dwa.validate();
        if self.cuts.is_empty() {
            out.push(Violation::EmptyCuts);
        } else if self.cuts.windows(2).any(|w| w[0] >= w[1]) {
            out.push(Violation::CutsNotStrictlyIncreasing);
        }
        out
    }

    pub fn build(self) -> Result<Podwa, Vec<Violation>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(Podwa {
            automaton: self.dwa.build()?,
            scheme: ObservationScheme::new(self.cuts).map_err(|v| vec![v])?,
        })
    }
}

/// A weighted automaton observed through an interval scheme. Its language
/// maps every non-empty word to the interval index of the word's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Podwa {
    pub automaton: Dwa,
    pub scheme: ObservationScheme,
}

impl Podwa {
    pub fn new(automaton: Dwa, scheme: ObservationScheme) -> Self {
        Podwa { automaton, scheme }
    }

    /// Interval index of the word's value; rejects the empty word.
    pub fn observe(&self, word: &[Letter]) -> Result<usize, EvalError> {
        let v = self.automaton.evaluate(word)?;
        Ok(self.scheme.index_of(v))
    }

    /// Re-checks every type invariant; empty on a well-formed value.
    pub fn validate(&self) -> Vec<Violation> {
        let mut raw = RawPodwa {
            dwa: self.automaton.to_raw(),
            cuts: self.scheme.cuts().to_vec(),
        };
        let out = raw.validate();
        raw.cuts.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_ccount, lambda_n, lambda_n_minimal, subset_sum_pair};

    fn w(p: &Podwa, s: &str) -> Word {
        p.automaton.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn run_empty_word_is_initial_only() {
        let p = example_ccount();
        let r = p.automaton.run(&[]).unwrap();
        assert_eq!(r, vec![p.automaton.initial()]);
    }

    #[test]
    fn run_single_state_automaton() {
        let p = example_ccount();
        let r = p.automaton.run(&w(&p, "ab")).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|&s| s == p.automaton.initial()));
    }

    #[test]
    fn run_follows_transition_table() {
        let p = lambda_n(2).unwrap();
        let r = p.automaton.run(&w(&p, "ia")).unwrap();
        let names: Vec<&str> = r.iter().map(|&s| p.automaton.state_name(s)).collect();
        assert_eq!(names, vec!["q0", "q1", "q2a"]);
    }

    #[test]
    fn evaluate_counts_letters() {
        let p = example_ccount();
        assert_eq!(p.automaton.evaluate(&w(&p, "cca")).unwrap(), 1);
    }

    #[test]
    fn evaluate_rejects_empty() {
        let p = example_ccount();
        assert_eq!(p.automaton.evaluate(&[]), Err(EvalError::EmptyWord));
    }

    #[test]
    fn parse_word_rejects_unknown_letter() {
        let p = example_ccount();
        assert_eq!(
            p.automaton.alphabet().parse_word("ax"),
            Err(EvalError::UnknownLetter("x".into()))
        );
    }

    #[test]
    fn evaluate_subset_sum_instance() {
        let (p1, _) = subset_sum_pair(&[2, 4], 6).unwrap();
        assert_eq!(p1.automaton.evaluate(&w(&p1, "110")).unwrap(), 0);
    }

    #[test]
    fn evaluate_exponential_weight_family() {
        let p = lambda_n_minimal(2).unwrap();
        assert_eq!(p.automaton.evaluate(&w(&p, "abb")).unwrap(), 0);
    }

    #[test]
    fn observe_examples() {
        let p = example_ccount();
        assert_eq!(p.observe(&w(&p, "c")).unwrap(), 1);
        assert_eq!(p.observe(&w(&p, "ab")).unwrap(), 0);
        let l = lambda_n(2).unwrap();
        assert_eq!(l.observe(&w(&l, "abb")).unwrap(), 1);
    }

    #[test]
    fn validate_clean_instance() {
        assert!(example_ccount().validate().is_empty());
    }

    #[test]
    fn validate_reports_missing_transition() {
        let raw = RawDwa {
            alphabet: vec!["a".into(), "b".into()],
            states: vec!["q0".into()],
            initial: "q0".into(),
            transitions: vec![RawTransition {
                from: "q0".into(),
                letter: "a".into(),
                to: "q0".into(),
                weight: 0,
            }],
        };
        let v = raw.validate();
        assert_eq!(
            v,
            vec![Violation::MissingTransition {
                state: "q0".into(),
                letter: "b".into()
            }]
        );
    }

    #[test]
    fn validate_reports_bad_cuts() {
        assert_eq!(
            ObservationScheme::new(vec![3, 3]).unwrap_err(),
            Violation::CutsNotStrictlyIncreasing
        );
        let raw = RawPodwa {
            dwa: example_ccount().automaton.to_raw(),
            cuts: vec![3, 3],
        };
        assert_eq!(raw.validate(), vec![Violation::CutsNotStrictlyIncreasing]);
    }

    #[test]
    fn observation_index_is_cut_count() {
        let s = ObservationScheme::new(vec![0, 1]).unwrap();
        assert_eq!(s.index_of(-5), 0);
        assert_eq!(s.index_of(0), 1);
        assert_eq!(s.index_of(1), 2);
        assert_eq!(s.index_of(7), 2);
    }

    #[test]
    fn prefix_additivity() {
        let p = lambda_n(3).unwrap();
        let a = &p.automaton;
        let u = w(&p, "ia");
        let v = w(&p, "bb");
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let mid = *a.run(&u).unwrap().last().unwrap();
        assert_eq!(
            a.evaluate(&uv).unwrap(),
            a.evaluate(&u).unwrap() + a.evaluate_from(mid, &v).unwrap()
        );
    }

    #[test]
    fn run_extends_under_concatenation() {
        let p = lambda_n(2).unwrap();
        let u = w(&p, "ib");
        let mut uv = u.clone();
        uv.extend_from_slice(&w(&p, "aa"));
        let ru = p.automaton.run(&u).unwrap();
        let ruv = p.automaton.run(&uv).unwrap();
        assert_eq!(ruv.len(), uv.len() + 1);
        assert_eq!(&ruv[..ru.len()], &ru[..]);
    }

    #[test]
    fn observe_is_monotone_in_value() {
        let p = lambda_n(2).unwrap();
        let words = ["a", "b", "i", "ab", "abb", "ia", "iab", "ibb"];
        for x in words {
            for y in words {
                let wx = w(&p, x);
                let wy = w(&p, y);
                let (vx, vy) = (
                    p.automaton.evaluate(&wx).unwrap(),
                    p.automaton.evaluate(&wy).unwrap(),
                );
                if vx <= vy {
                    assert!(p.observe(&wx).unwrap() <= p.observe(&wy).unwrap());
                }
            }
        }
    }

    #[test]
    fn size_counts_states_and_weight_bits() {
        let p = example_ccount();
        // one state, weights -1, 0, 1 -> 1 + (1 + 1 + 1)
        assert_eq!(p.automaton.size(), 4);
    }
}
