//! Sample-consistency checking and small-scale fitting: exhaustive search for
//! a consistent single-state automaton and the constructive prefix-tree fit.

use std::collections::BTreeMap;
use std::fmt;

use crate::automaton::{
    Alphabet, ObservationScheme, Podwa, RawDwa, RawTransition, Word,
};

/// A finite list of `(word, interval index)` constraints over a fixed
/// alphabet and observation scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    scheme: ObservationScheme,
    entries: Vec<(Word, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitError {
    AlphabetMismatch,
    SchemeMismatch,
    DirectContradiction(String),
    SearchSpaceCap,
    BadEntry(String),
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::AlphabetMismatch => write!(f, "sample alphabet differs from automaton"),
            FitError::SchemeMismatch => write!(f, "sample scheme differs from automaton"),
            FitError::DirectContradiction(w) => {
                write!(f, "word `{w}` appears with two different intervals")
            }
            FitError::SearchSpaceCap => write!(f, "weight search space exceeds the cap"),
            FitError::BadEntry(m) => write!(f, "bad sample entry: {m}"),
        }
    }
}

impl std::error::Error for FitError {}

/// One discrepancy found while checking an automaton against a sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleViolation {
    DirectContradiction { word: Word },
    Mismatch { word: Word, expected: usize, actual: usize },
}

impl Sample {
    pub fn new(
        alphabet: Alphabet,
        scheme: ObservationScheme,
        entries: Vec<(Word, usize)>,
    ) -> Result<Self, FitError> {
        for (w, idx) in &entries {
            if w.is_empty() {
                return Err(FitError::BadEntry("empty word".into()));
            }
            if w.iter().any(|l| l.index() >= alphabet.len()) {
                return Err(FitError::BadEntry("letter outside alphabet".into()));
            }
            if *idx > scheme.max_index() {
                return Err(FitError::BadEntry(format!(
                    "interval index {idx} exceeds {}",
                    scheme.max_index()
                )));
            }
        }
        Ok(Sample {
            alphabet,
            scheme,
            entries,
        })
    }

    /// Convenience constructor from letter names.
    pub fn from_names(
        letters: Vec<String>,
        cuts: Vec<i64>,
        entries: Vec<(Vec<String>, usize)>,
    ) -> Result<Self, FitError> {
        let alphabet =
            Alphabet::new(letters).map_err(|v| FitError::BadEntry(v.to_string()))?;
        let scheme =
            ObservationScheme::new(cuts).map_err(|v| FitError::BadEntry(v.to_string()))?;
        let mut resolved = Vec::with_capacity(entries.len());
        for (names, idx) in entries {
            let mut word = Vec::with_capacity(names.len());
            for n in &names {
                let l = alphabet
                    .letter(n)
                    .ok_or_else(|| FitError::BadEntry(format!("unknown letter `{n}`")))?;
                word.push(l);
            }
            resolved.push((word, idx));
        }
        Sample::new(alphabet, scheme, resolved)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn scheme(&self) -> &ObservationScheme {
        &self.scheme
    }

    pub fn entries(&self) -> &[(Word, usize)] {
        &self.entries
    }

    /// Words that occur with two different required intervals.
    pub fn direct_contradictions(&self) -> Vec<Word> {
        let mut index: BTreeMap<&Word, usize> = BTreeMap::new();
        let mut bad = Vec::new();
        for (w, idx) in &self.entries {
            match index.get(w) {
                Some(&prev) if prev != *idx => {
                    if !bad.contains(w) {
                        bad.push(w.clone());
                    }
                }
                Some(_) => {}
                None => {
                    index.insert(w, *idx);
                }
            }
        }
        bad
    }
}

/// Checks every entry of the sample against the automaton's observations.
/// The result is empty exactly when the automaton is consistent.
pub fn check_sample(p: &Podwa, sample: &Sample) -> Result<Vec<SampleViolation>, FitError> {
    if p.automaton.alphabet() != sample.alphabet() {
        return Err(FitError::AlphabetMismatch);
    }
    if &p.scheme != sample.scheme() {
        return Err(FitError::SchemeMismatch);
    }
    let mut out: Vec<SampleViolation> = sample
        .direct_contradictions()
        .into_iter()
        .map(|word| SampleViolation::DirectContradiction { word })
        .collect();
    for (word, expected) in sample.entries() {
        let actual = p.observe(word).map_err(|e| FitError::BadEntry(e.to_string()))?;
        if actual != *expected {
            out.push(SampleViolation::Mismatch {
                word: word.clone(),
                expected: *expected,
                actual,
            });
        }
    }
    Ok(out)
}

const SINGLE_STATE_SEARCH_CAP: u128 = 20_000_000;

/// Exhaustive search for a one-state automaton consistent with the sample:
/// the value of a word is the weighted count of its letters. Weights range
/// over `[-bound, bound]` per letter and the lexicographically first solution
/// wins.
pub fn fit_single_state(sample: &Sample, bound: i64) -> Result<Option<Podwa>, FitError> {
    if bound < 0 {
        return Err(FitError::BadEntry("bound must be >= 0".into()));
    }
    let k = sample.alphabet().len();
    let span = 2 * bound as u128 + 1;
    let mut space: u128 = 1;
    for _ in 0..k {
        space = space.saturating_mul(span);
        if space > SINGLE_STATE_SEARCH_CAP {
            return Err(FitError::SearchSpaceCap);
        }
    }
    // letter occurrence counts per entry
    let counted: Vec<(Vec<i64>, usize)> = sample
        .entries()
        .iter()
        .map(|(w, idx)| {
            let mut counts = vec![0i64; k];
            for l in w {
                counts[l.index()] += 1;
            }
            (counts, *idx)
        })
        .collect();
    let mut weights = vec![-bound; k];
    loop {
        let ok = counted.iter().all(|(counts, idx)| {
            let value: i64 = counts.iter().zip(&weights).map(|(c, w)| c * w).sum();
            sample.scheme().index_of(value) == *idx
        });
        if ok {
            let raw = RawDwa {
                alphabet: sample.alphabet().names().to_vec(),
                states: vec!["q0".into()],
                initial: "q0".into(),
                transitions: sample
                    .alphabet()
                    .names()
                    .iter()
                    .enumerate()
                    .map(|(i, l)| RawTransition {
                        from: "q0".into(),
                        letter: l.clone(),
                        to: "q0".into(),
                        weight: weights[i],
                    })
                    .collect(),
            };
            return Ok(Some(Podwa::new(
                raw.build().expect("single state automaton is valid"),
                sample.scheme().clone(),
            )));
        }
        // next vector in lexicographic order, last letter fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if weights[pos] < bound {
                weights[pos] += 1;
                for w in &mut weights[pos + 1..] {
                    *w = -bound;
                }
                break;
            }
        }
    }
}

/// Builds a prefix-tree automaton consistent with the sample: tree edges
/// default to weight zero, each sample word's final edge is set so the value
/// lands on the least member of the required interval, and a zero sink
/// completes the transition function.
pub fn fit_prefix_tree(sample: &Sample) -> Result<Podwa, FitError> {
    if let Some(w) = sample.direct_contradictions().first() {
        return Err(FitError::DirectContradiction(
            sample.alphabet().render_word(w),
        ));
    }
    let k = sample.alphabet().len();
    // trie over all sample words; node 0 is the root
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut weights: Vec<Vec<i64>> = vec![vec![0; k]];
    for (word, _) in sample.entries() {
        let mut cur = 0usize;
        for l in word {
            cur = match children[cur][l.index()] {
                Some(n) => n,
                None => {
                    children.push(vec![None; k]);
                    weights.push(vec![0; k]);
                    let n = children.len() - 1;
                    children[cur][l.index()] = Some(n);
                    n
                }
            };
        }
    }
    // assign final-edge weights in increasing word length order
    let mut entries: Vec<&(Word, usize)> = sample.entries().iter().collect();
    entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    entries.dedup();
    for (word, idx) in entries {
        let mut cur = 0usize;
        let mut prefix_value = 0i64;
        for l in &word[..word.len() - 1] {
            prefix_value += weights[cur][l.index()];
            cur = children[cur][l.index()].expect("prefix is in the trie");
        }
        let last = word[word.len() - 1];
        let target = sample.scheme().representative(*idx);
        weights[cur][last.index()] = target - prefix_value;
    }
    // materialize with a zero sink
    let width = children.len().to_string().len().max(2);
    let name = |i: usize| format!("n{i:0width$}");
    let mut states: Vec<String> = (0..children.len()).map(name).collect();
    states.push("sink".into());
    let mut transitions = Vec::new();
    for (i, row) in children.iter().enumerate() {
        for (li, child) in row.iter().enumerate() {
            let to = match child {
                Some(c) => name(*c),
                None => "sink".into(),
            };
            transitions.push(RawTransition {
                from: name(i),
                letter: sample.alphabet().names()[li].clone(),
                to,
                weight: weights[i][li],
            });
        }
    }
    for l in sample.alphabet().names() {
        transitions.push(RawTransition {
            from: "sink".into(),
            letter: l.clone(),
            to: "sink".into(),
            weight: 0,
        });
    }
    let raw = RawDwa {
        alphabet: sample.alphabet().names().to_vec(),
        states,
        initial: name(0),
        transitions,
    };
    Ok(Podwa::new(
        raw.build().expect("prefix tree is valid"),
        sample.scheme().clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_ccount, sat_sample, Cnf, Lit};

    fn lit(var: usize, positive: bool) -> Lit {
        Lit { var, positive }
    }

    fn basic_sample(entries: Vec<(&str, usize)>) -> Sample {
        let p = example_ccount();
        let resolved = entries
            .iter()
            .map(|(w, i)| (p.automaton.alphabet().parse_word(w).unwrap(), *i))
            .collect();
        Sample::new(
            p.automaton.alphabet().clone(),
            p.scheme.clone(),
            resolved,
        )
        .unwrap()
    }

    #[test]
    fn check_sample_consistent() {
        let p = example_ccount();
        let s = basic_sample(vec![("c", 1)]);
        assert!(check_sample(&p, &s).unwrap().is_empty());
    }

    #[test]
    fn check_sample_mismatch() {
        let p = example_ccount();
        let s = basic_sample(vec![("a", 1)]);
        let v = check_sample(&p, &s).unwrap();
        assert_eq!(v.len(), 1);
        assert!(matches!(
            &v[0],
            SampleViolation::Mismatch {
                expected: 1,
                actual: 0,
                ..
            }
        ));
    }

    #[test]
    fn check_sample_flags_contradiction() {
        let p = example_ccount();
        let s = basic_sample(vec![("ab", 0), ("ab", 1)]);
        let v = check_sample(&p, &s).unwrap();
        assert!(v
            .iter()
            .any(|x| matches!(x, SampleViolation::DirectContradiction { .. })));
    }

    #[test]
    fn fit_single_state_forced_clause() {
        // (p1 or p1 or p1) forces p1 true
        let cnf = Cnf::new(1, vec![vec![lit(1, true), lit(1, true), lit(1, true)]]).unwrap();
        let s = sat_sample(&cnf);
        let fitted = fit_single_state(&s, 1).unwrap().expect("satisfiable");
        let a = &fitted.automaton;
        let q0 = a.initial();
        let q = a.alphabet().letter("q").unwrap();
        let p1 = a.alphabet().letter("p1").unwrap();
        assert_eq!(a.weight(q0, q), 1);
        assert_eq!(a.weight(q0, p1), 1);
        assert!(check_sample(&fitted, &s).unwrap().is_empty());
    }

    #[test]
    fn fit_single_state_unsatisfiable() {
        // (p1) and (not p1)
        let cnf = Cnf::new(1, vec![vec![lit(1, true)], vec![lit(1, false)]]).unwrap();
        let s = sat_sample(&cnf);
        assert!(fit_single_state(&s, 1).unwrap().is_none());
    }

    #[test]
    fn fit_single_state_empty_sample() {
        let p = example_ccount();
        let s = Sample::new(p.automaton.alphabet().clone(), p.scheme.clone(), vec![]).unwrap();
        let fitted = fit_single_state(&s, 0).unwrap().expect("trivially fits");
        let a = &fitted.automaton;
        for l in a.alphabet().letters() {
            assert_eq!(a.weight(a.initial(), l), 0);
        }
    }

    #[test]
    fn prefix_tree_hits_interval_representatives() {
        let s = basic_sample(vec![("a", 1), ("ab", 0)]);
        let fitted = fit_prefix_tree(&s).unwrap();
        let w_a = fitted.automaton.alphabet().parse_word("a").unwrap();
        let w_ab = fitted.automaton.alphabet().parse_word("ab").unwrap();
        assert_eq!(fitted.automaton.evaluate(&w_a).unwrap(), 1);
        assert_eq!(fitted.automaton.evaluate(&w_ab).unwrap(), 0);
        assert!(check_sample(&fitted, &s).unwrap().is_empty());
    }

    #[test]
    fn prefix_tree_single_entry() {
        let s = basic_sample(vec![("a", 1)]);
        let fitted = fit_prefix_tree(&s).unwrap();
        let w_a = fitted.automaton.alphabet().parse_word("a").unwrap();
        assert_eq!(fitted.automaton.evaluate(&w_a).unwrap(), 1);
    }

    #[test]
    fn prefix_tree_rejects_contradiction() {
        let s = basic_sample(vec![("b", 0), ("b", 1)]);
        assert!(matches!(
            fit_prefix_tree(&s),
            Err(FitError::DirectContradiction(_))
        ));
    }

    #[test]
    fn prefix_tree_fits_any_sat_encoding() {
        let cnf = Cnf::new(
            2,
            vec![
                vec![lit(1, true), lit(2, false), lit(2, false)],
                vec![lit(1, false), lit(2, true), lit(1, false)],
            ],
        )
        .unwrap();
        let s = sat_sample(&cnf);
        let fitted = fit_prefix_tree(&s).unwrap();
        assert!(check_sample(&fitted, &s).unwrap().is_empty());
        // states stay within distinct prefixes plus root and sink
        let mut prefixes: Vec<Vec<crate::automaton::Letter>> = Vec::new();
        for (w, _) in s.entries() {
            for i in 1..=w.len() {
                if !prefixes.contains(&w[..i].to_vec()) {
                    prefixes.push(w[..i].to_vec());
                }
            }
        }
        assert!(fitted.automaton.state_count() <= prefixes.len() + 2);
    }

    #[test]
    fn single_state_cap_applies() {
        let letters: Vec<String> = (0..12).map(|i| format!("l{i:02}")).collect();
        let s = Sample::from_names(letters, vec![1], vec![]).unwrap();
        assert_eq!(fit_single_state(&s, 6), Err(FitError::SearchSpaceCap));
    }
}
