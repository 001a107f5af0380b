// temporary stress probe, not part of the repo
use podwa::automaton::{ObservationScheme, Podwa};
use podwa::engine::{brute_force_witness, equivalent, EngineConfig, EngineVerdict};
use podwa::generators::random_podwa;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let cfg = EngineConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    let mut stats = (0usize, 0usize, 0usize); // eq, neq, total
    let hard = std::env::args().any(|a| a == "--hard");
    let n_pairs = if hard { 1000 } else { 3000 };
    for i in 0..n_pairs {
        let letters = rng.gen_range(1..=3);
        let max_weight = if hard { rng.gen_range(0..=5) } else { rng.gen_range(0..=2) };
        let make = |rng: &mut ChaCha8Rng| {
            let states = if hard { rng.gen_range(1..=6) } else { rng.gen_range(1..=4) };
            let seed: u64 = rng.gen();
            let mut p = random_podwa(seed, states, letters, max_weight, &[1]).unwrap();
            let count = rng.gen_range(1..=3);
            let mut cuts: Vec<i64> = Vec::new();
            while cuts.len() < count {
                let c = if hard { rng.gen_range(-6..=6) } else { rng.gen_range(-3..=3) };
                if !cuts.contains(&c) { cuts.push(c); }
            }
            cuts.sort_unstable();
            p.scheme = ObservationScheme::new(cuts).unwrap();
            p
        };
        let p1: Podwa = make(&mut rng);
        let p2: Podwa = make(&mut rng);
        let verdict = equivalent(&p1, &p2, &cfg).expect("engine ok");
        let oracle = brute_force_witness(&p1, &p2, 8).unwrap();
        match &verdict {
            EngineVerdict::Inconclusive(reports) => {
                let truth = brute_force_witness(&p1, &p2, 12).unwrap();
                println!("  INCONCLUSIVE at pair {i}: oracle12 {:?}", truth.map(|w| w.word.len()));
                for r in reports {
                    println!("    query {:?} -> {:?}", r.query, r.status);
                }
                if !hard { std::process::exit(1); }
                stats.2 += 1;
                continue;
            }
            EngineVerdict::Equivalent => {
                if oracle.is_some() { println!("UNSOUND EQ at {i}"); std::process::exit(1); }
                stats.0 += 1;
            }
            EngineVerdict::NotEquivalent(w) => {
                let v1 = p1.automaton.evaluate(&w.word).unwrap();
                let v2 = p2.automaton.evaluate(&w.word).unwrap();
                assert_ne!(p1.scheme.index_of(v1), p2.scheme.index_of(v2));
                if oracle.is_none() {
                    // confirm with the oracle at the witness's own horizon
                    let confirm = brute_force_witness(&p1, &p2, w.word.len()).unwrap();
                    assert!(confirm.is_some(), "oracle must confirm at length {}", w.word.len());
                    println!("  long witness at {i}: len {} (oracle confirms)", w.word.len());
                }
                stats.1 += 1;
            }
        }
        stats.2 += 1;
    }
    println!("stress ok: {} equivalent, {} not, {} total", stats.0, stats.1, stats.2);
}
