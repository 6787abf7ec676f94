//! Independent reference computations used only by tests.
//!
//! Nothing here shares code with `bridgegenus`: linking numbers come from
//! tracing an actual 4-plat diagram, and even continued fractions are
//! enumerated and evaluated with `num-rational`.

use num_rational::Ratio;

/// Ordinary continued fraction `x = 1/(a_1 + 1/(a_2 + ...))` of `0 < x < 1`,
/// all `a_i >= 1`, adjusted to odd length.
pub fn ordinary_cf(beta: i64, alpha: i64) -> Vec<i64> {
    assert!(0 < beta && beta < alpha);
    let mut x = Ratio::new(alpha, beta);
    let mut out = Vec::new();
    loop {
        let a = x.floor();
        out.push(a.to_integer());
        let frac = x - a;
        if frac == Ratio::from_integer(0) {
            break;
        }
        x = frac.recip();
    }
    if out.len() % 2 == 0 {
        let last = out.pop().unwrap();
        if last == 1 {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(last - 1);
            out.push(1);
        }
    }
    out
}

/// One crossing between positions `i` and `i + 1` of a four-strand diagram.
/// With `positive` the strand running from `i` down to `i + 1` passes over.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub i: usize,
    pub positive: bool,
}

/// Crossings of the 4-plat `σ2^{a1} σ1^{-a2} σ2^{a3} ...` closed by caps on
/// positions (0, 1) and (2, 3) at top and bottom.
pub fn four_plat(cf: &[i64]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for (t, &a) in cf.iter().enumerate() {
        let (i, positive) = if t % 2 == 0 { (1, a > 0) } else { (0, a < 0) };
        for _ in 0..a.abs() {
            out.push(Crossing { i, positive });
        }
    }
    out
}

/// Result of tracing a closed 4-plat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub components: usize,
    /// Sum of crossing signs between distinct components, halved.
    pub linking_number: i64,
}

/// Walks every component of the closed 4-plat, orienting each along the walk,
/// and sums the signs of crossings between different components.
pub fn trace(crossings: &[Crossing]) -> Traced {
    let m = crossings.len();
    // visits[c] = [(component, going_down, strand_starts_left)] for the two strands
    let mut visits: Vec<Vec<(usize, bool, bool)>> = vec![Vec::new(); m];
    // seen[level][pos]: the vertical piece below crossing level-1 and above crossing level
    let mut seen = vec![[false; 4]; m + 1];
    let mut components = 0;
    for start in 0..4 {
        if seen[0][start] {
            continue;
        }
        let comp = components;
        components += 1;
        let (mut level, mut pos, mut down) = (0usize, start, true);
        loop {
            if seen[level][pos] {
                break;
            }
            seen[level][pos] = true;
            if down {
                if level == m {
                    pos ^= 1;
                    down = false;
                    continue;
                }
                let c = crossings[level];
                if pos == c.i || pos == c.i + 1 {
                    let from_left = pos == c.i;
                    visits[level].push((comp, true, from_left));
                    pos = if from_left { c.i + 1 } else { c.i };
                }
                level += 1;
            } else {
                if level == 0 {
                    pos ^= 1;
                    down = true;
                    continue;
                }
                let c = crossings[level - 1];
                if pos == c.i || pos == c.i + 1 {
                    let arrives_left = pos == c.i;
                    // going up from bottom-left means the strand starts top-right
                    visits[level - 1].push((comp, false, !arrives_left));
                    pos = if arrives_left { c.i + 1 } else { c.i };
                }
                level -= 1;
            }
        }
    }

    let mut twice = 0;
    for (c, v) in crossings.iter().zip(&visits) {
        assert_eq!(v.len(), 2, "every crossing is passed twice");
        if v[0].0 == v[1].0 {
            continue;
        }
        let dir = |&(_, down, from_left): &(usize, bool, bool)| -> (i64, i64) {
            let dx = if from_left { 1 } else { -1 };
            if down {
                (dx, -1)
            } else {
                (-dx, 1)
            }
        };
        let (over, under) = if v[0].2 == c.positive {
            (dir(&v[0]), dir(&v[1]))
        } else {
            (dir(&v[1]), dir(&v[0]))
        };
        twice += (over.0 * under.1 - over.1 * under.0).signum();
    }
    Traced {
        components,
        linking_number: twice / 2,
    }
}

/// `|lk|` of the 2-bridge link `β/α` read off its 4-plat diagram.
pub fn diagram_linking_number(beta: i64, alpha: i64) -> Traced {
    trace(&four_plat(&ordinary_cf(beta, alpha)))
}

/// `head + 1/(b_1 + 1/(b_2 + ...))` evaluated exactly.
pub fn evaluate(head: i64, entries: &[i64]) -> Option<Ratio<i64>> {
    let mut tail: Option<Ratio<i64>> = None;
    for &b in entries.iter().rev() {
        let v = match tail {
            None => Ratio::from_integer(b),
            Some(t) if t == Ratio::from_integer(0) => return None,
            Some(t) => Ratio::from_integer(b) + t.recip(),
        };
        tail = Some(v);
    }
    match tail {
        Some(t) if t != Ratio::from_integer(0) => Some(Ratio::from_integer(head) + t.recip()),
        _ => None,
    }
}

/// Every odd-length sequence of nonzero even integers with at most
/// `max_len` entries, each of absolute value at most `max_abs`.
pub fn even_sequences(max_len: usize, max_abs: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (1..=max_abs / 2).flat_map(|h| [2 * h, -2 * h]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for len in 1..=max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                values.iter().map(move |&v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        if len % 2 == 1 {
            out.extend(layer.iter().cloned());
        }
    }
    out
}
