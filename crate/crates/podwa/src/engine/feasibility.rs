//! Exact two-dimensional feasibility kernels used by the equivalence search:
//! rational cone membership (with componentwise slack) and bounded integer
//! feasibility for up to two pumped generators.

pub(crate) type V2 = (i64, i64);

pub(crate) fn add(a: V2, b: V2) -> V2 {
    (a.0 + b.0, a.1 + b.1)
}

pub(crate) fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: V2, b: V2) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: V2, b: V2) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

fn is_zero(v: V2) -> bool {
    v == (0, 0)
}

/// `z = α g` for some rational `α >= 0`.
fn on_ray(g: V2, z: V2) -> bool {
    !is_zero(g) && cross(g, z) == 0 && dot(g, z) >= 0
}

/// `z = x g + y h` for some rationals `x, y >= 0`.
fn pair_spans(g: V2, h: V2, z: V2) -> bool {
    if is_zero(z) {
        return true;
    }
    let d = cross(g, h);
    if d != 0 {
        let xn = cross(z, h);
        let yn = cross(g, z);
        if d > 0 {
            xn >= 0 && yn >= 0
        } else {
            xn <= 0 && yn <= 0
        }
    } else {
        // parallel or degenerate: rays, or a full line for opposite directions
        on_ray(g, z)
            || on_ray(h, z)
            || (!is_zero(g) && !is_zero(h) && dot(g, h) < 0 && cross(g, z) == 0)
    }
}

/// Membership of `z` in the convex cone spanned by `gens`, decided over the
/// rationals by checking all one- and two-generator combinations.
pub(crate) fn cone_contains(gens: &[V2], z: V2) -> bool {
    if is_zero(z) {
        return true;
    }
    for (i, &g) in gens.iter().enumerate() {
        if on_ray(g, z) {
            return true;
        }
        for &h in &gens[i + 1..] {
            if pair_spans(g, h, z) {
                return true;
            }
        }
    }
    false
}

/// Does some non-negative rational combination of `gens` dominate `z`
/// componentwise? Equivalent to cone membership once the two coordinate
/// down-directions are added.
pub(crate) fn cone_covers(gens: &[V2], z: V2) -> bool {
    let mut extended: Vec<V2> = Vec::with_capacity(gens.len() + 2);
    extended.extend_from_slice(gens);
    extended.push((-1, 0));
    extended.push((0, -1));
    cone_contains(&extended, z)
}

/// Outcome of [`two_gen_feasibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoGenOutcome {
    Yes { m: u64, n: u64 },
    No,
}

impl TwoGenOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, TwoGenOutcome::Yes { .. })
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b != 0);
    let q = a / b;
    let r = a % b;
    if r != 0 && (r < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Integer multiplicities `(p, q)` with `p c1 + q c2 >= (1, 1)`, when any
/// non-negative rational combination dominating `(1, 1)` exists.
fn dominating_direction(c1: V2, c2: Option<V2>) -> Option<(u64, u64)> {
    if c1.0 > 0 && c1.1 > 0 {
        return Some((1, 0));
    }
    if let Some(c2) = c2 {
        if c2.0 > 0 && c2.1 > 0 {
            return Some((0, 1));
        }
        let d = cross(c1, c2);
        if d != 0 {
            let one = (1i64, 1i64);
            let xn = cross(one, c2);
            let yn = cross(c1, one);
            // scaled by |d| the equality solution becomes integral and the
            // combined vector equals |d|·(1,1)
            if d > 0 && xn >= 0 && yn >= 0 && (xn, yn) != (0, 0) {
                return Some((xn as u64, yn as u64));
            }
            if d < 0 && xn <= 0 && yn <= 0 && (xn, yn) != (0, 0) {
                return Some(((-xn) as u64, (-yn) as u64));
            }
        }
    }
    None
}

/// Decides whether integers `m, n >= 0` exist with
/// `base + Σ offsets + m c1 + n c2 >= t` componentwise.
///
/// Rational feasibility is checked first; a rationally infeasible system is a
/// definitive no. If some integer combination of the generators strictly
/// dominates both coordinates, pumping that direction settles the question.
/// Otherwise an exhaustive scan up to `4 (|t'|∞ + 1) (maxcomp + 1)^2` decides.
pub fn two_gen_feasibility(
    base: V2,
    offsets: &[V2],
    c1: V2,
    c2: Option<V2>,
    t: V2,
) -> TwoGenOutcome {
    let mut b = base;
    for &o in offsets {
        b = add(b, o);
    }
    let z = sub(t, b);
    if z.0 <= 0 && z.1 <= 0 {
        return TwoGenOutcome::Yes { m: 0, n: 0 };
    }
    let gens: Vec<V2> = match c2 {
        Some(c2) => vec![c1, c2],
        None => vec![c1],
    };
    if !cone_covers(&gens, z) {
        return TwoGenOutcome::No;
    }
    if let Some((p, q)) = dominating_direction(c1, c2) {
        let d = (
            p as i128 * c1.0 as i128 + q as i128 * c2.map_or(0, |c| c.0) as i128,
            p as i128 * c1.1 as i128 + q as i128 * c2.map_or(0, |c| c.1) as i128,
        );
        debug_assert!(d.0 >= 1 && d.1 >= 1);
        let k = ceil_div(z.0 as i128, d.0)
            .max(ceil_div(z.1 as i128, d.1))
            .max(0) as u64;
        return TwoGenOutcome::Yes { m: k * p, n: k * q };
    }
    // bounded exhaustive scan
    let maxcomp = gens
        .iter()
        .flat_map(|g| [g.0.abs(), g.1.abs()])
        .max()
        .unwrap_or(0) as i128;
    let norm = z.0.abs().max(z.1.abs()) as i128;
    let bound = 4 * (norm + 1) * (maxcomp + 1) * (maxcomp + 1);
    let bound = bound.min(u32::MAX as i128) as u64;
    for m in 0..=bound {
        let r0 = z.0 as i128 - m as i128 * c1.0 as i128;
        let r1 = z.1 as i128 - m as i128 * c1.1 as i128;
        match c2 {
            None => {
                if r0 <= 0 && r1 <= 0 {
                    return TwoGenOutcome::Yes { m, n: 0 };
                }
            }
            Some(c2) => {
                let mut lo: i128 = 0;
                let mut hi: i128 = bound as i128;
                let mut ok = true;
                for (r, c) in [(r0, c2.0 as i128), (r1, c2.1 as i128)] {
                    if c > 0 {
                        lo = lo.max(ceil_div(r, c));
                    } else if c < 0 {
                        hi = hi.min(floor_div(r, c));
                    } else if r > 0 {
                        ok = false;
                    }
                }
                if ok && lo <= hi {
                    return TwoGenOutcome::Yes {
                        m,
                        n: lo.max(0) as u64,
                    };
                }
            }
        }
    }
    TwoGenOutcome::No
}

/// Exact integer feasibility of `∃ m_i >= 0: z <= Σ m_i g_i` for a family of
/// pairwise parallel generators. Returns `None` when the family is not
/// parallel or the required enumeration would be too large.
pub(crate) fn parallel_family_feasible(gens: &[V2], z: V2) -> Option<bool> {
    let gens: Vec<V2> = gens.iter().copied().filter(|g| !is_zero(*g)).collect();
    if gens.is_empty() {
        return Some(z.0 <= 0 && z.1 <= 0);
    }
    for i in 1..gens.len() {
        if cross(gens[0], gens[i]) != 0 {
            return None;
        }
    }
    // primitive direction of the family
    let g0 = gens[0];
    let gcd0 = gcd(g0.0.unsigned_abs(), g0.1.unsigned_abs()) as i64;
    let d = (g0.0 / gcd0, g0.1 / gcd0);
    let mut ks: Vec<i64> = Vec::new();
    for g in &gens {
        let k = if d.0 != 0 { g.0 / d.0 } else { g.1 / d.1 };
        debug_assert_eq!((k * d.0, k * d.1), *g);
        ks.push(k);
    }
    // constraints s·d >= z componentwise, where s = Σ m_i k_i
    let mut lo: Option<i128> = None;
    let mut hi: Option<i128> = None;
    for (zc, dc) in [(z.0 as i128, d.0 as i128), (z.1 as i128, d.1 as i128)] {
        if dc > 0 {
            let v = ceil_div(zc, dc);
            lo = Some(lo.map_or(v, |x: i128| x.max(v)));
        } else if dc < 0 {
            let v = floor_div(zc, dc);
            hi = Some(hi.map_or(v, |x: i128| x.min(v)));
        } else if zc > 0 {
            return Some(false);
        }
    }
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return Some(false);
        }
    }
    if lo.is_none_or(|l| l <= 0) && hi.is_none_or(|h| h >= 0) {
        return Some(true); // all multiplicities zero
    }
    let g = ks.iter().fold(0u64, |acc, &k| gcd(acc, k.unsigned_abs()));
    debug_assert!(g > 0);
    let has_pos = ks.iter().any(|&k| k > 0);
    let has_neg = ks.iter().any(|&k| k < 0);
    if has_pos && has_neg {
        // every multiple of the gcd is achievable
        return Some(range_has_multiple(lo, hi, g as i128));
    }
    // single-signed family: a numerical semigroup (possibly mirrored)
    let (lo, hi, ks): (Option<i128>, Option<i128>, Vec<i128>) = if has_pos {
        (lo, hi, ks.iter().map(|&k| k as i128).collect())
    } else {
        (
            hi.map(|h| -h),
            lo.map(|l| -l),
            ks.iter().map(|&k| -k as i128).collect(),
        )
    };
    let lo = lo.unwrap_or(0).max(0);
    let maxk = *ks.iter().max().unwrap();
    // beyond the conductor every gcd multiple is reachable
    let conductor = maxk * maxk;
    let scan_hi = match hi {
        Some(h) => h.min(lo + conductor + maxk),
        None => lo + conductor + maxk,
    };
    if scan_hi < lo {
        return Some(false);
    }
    if scan_hi > 4_000_000 {
        return None;
    }
    let limit = scan_hi as usize;
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for s in 0..=limit {
        if !reach[s] {
            continue;
        }
        for &k in &ks {
            let nxt = s + k as usize;
            if nxt <= limit {
                reach[nxt] = true;
            }
        }
    }
    if (lo as usize..=limit).any(|s| reach[s]) {
        return Some(true);
    }
    if hi.is_none() || hi.unwrap() > scan_hi {
        // unbounded above: all gcd multiples beyond the conductor qualify
        return Some(true);
    }
    Some(false)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn range_has_multiple(lo: Option<i128>, hi: Option<i128>, g: i128) -> bool {
    match (lo, hi) {
        (None, _) | (_, None) => true,
        (Some(l), Some(h)) => floor_div(h, g) * g >= l,
    }
}
