//! End-to-end acceptance checks. Runs without the libtest harness so every
//! check prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use bridgegenus::diagram::{build_a_path, build_ab_path, build_ad_path, orient_path, PathClass};
use bridgegenus::invariants::{genus_a, genus_ab, genus_ad, genus_from_euler, is_fibered, Fibered};
use bridgegenus::knots::{
    satellite_genus, satellite_slope_check, torti_genus, GenusValue, SatelliteKnot,
    TortiRationalKnot,
};
use bridgegenus::rationals::{evaluate_cf, even_cf, EvenContinuedFraction, Head, ReducedFraction};
use bridgegenus::slopes::{
    accumulate_slopes, calibrate, calibration_seeds, closed_form_slopes, ConventionTable,
    SheetData, Slope,
};
use bridgegenus_cli::svg::render_svg;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

const ROUND_TRIP_BUDGET: Duration = Duration::from_secs(5);
const FIBERED_SWEEP_BUDGET: Duration = Duration::from_secs(10);
const GENUS_SAMPLES: usize = 500;
const SLOPE_SAMPLES: usize = 200;
const SATELLITE_SAMPLES: usize = 100;
const SEED: u64 = 0x5eed_2b1d;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn link_fractions(max_alpha: i64) -> impl Iterator<Item = ReducedFraction> {
    (4..=max_alpha).step_by(2).flat_map(|alpha| {
        (1..alpha).filter_map(move |beta| {
            ReducedFraction::new(beta, alpha)
                .ok()
                .filter(|x| x.den() == alpha)
        })
    })
}

fn random_fraction(rng: &mut ChaCha8Rng, max_alpha: i64) -> ReducedFraction {
    loop {
        let alpha = 2 * rng.gen_range(2..=max_alpha / 2);
        let beta = rng.gen_range(1..alpha);
        if let Ok(x) = ReducedFraction::new(beta, alpha) {
            if x.den() == alpha {
                return x;
            }
        }
    }
}

fn random_cf(rng: &mut ChaCha8Rng, min_len: usize, min_half: i64) -> EvenContinuedFraction {
    let head = if rng.gen_bool(0.5) {
        Head::Zero
    } else {
        Head::One
    };
    let len = 2 * rng.gen_range(min_len / 2..=4) + 1;
    let entries = (0..len)
        .map(|_| {
            let h = rng.gen_range(min_half..=6);
            if rng.gen_bool(0.5) {
                -2 * h
            } else {
                2 * h
            }
        })
        .collect();
    EvenContinuedFraction::new(head, entries).unwrap()
}

fn cf_round_trip() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for x in link_fractions(1000) {
        for head in [Head::Zero, Head::One] {
            let c = even_cf(x, head).map_err(|e| format!("{x}: {e}"))?;
            ensure(c.len() % 2 == 1, || format!("{c}: even length"))?;
            ensure(c.entries().iter().all(|b| b % 2 == 0 && *b != 0), || {
                format!("{c}: bad entry")
            })?;
            ensure(evaluate_cf(&c) == Ok(x), || {
                format!("{c} does not evaluate to {x}")
            })?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ROUND_TRIP_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{count} expansions in {elapsed:.2?}"))
}

fn linking_number_consistency() -> Check {
    let mut count = 0;
    for x in link_fractions(1000) {
        let l0 = even_cf(x, Head::Zero).unwrap().linking_number().magnitude;
        let l1 = even_cf(x, Head::One).unwrap().linking_number().magnitude;
        ensure(l0 == l1, || format!("{x}: |lk| {l0} vs {l1}"))?;
        if x.den() <= 100 {
            let traced = bridgegenus_oracles::diagram_linking_number(x.num(), x.den());
            ensure(traced.components == 2, || {
                format!("{x}: diagram has {} components", traced.components)
            })?;
            ensure(traced.linking_number.abs() == l0, || {
                format!("{x}: diagram |lk| {} vs {l0}", traced.linking_number.abs())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} links checked against the 4-plat diagram"))
}

fn genus_oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = [0usize; 3];

    while checked[0] < GENUS_SAMPLES {
        let c = random_cf(&mut rng, 1, 1);
        let path = build_a_path(&c);
        let euler = genus_from_euler(&path, &SheetData::single(1, 1).unwrap());
        ensure(euler == Ok(genus_a(&c)), || {
            format!("A {c}: {euler:?} vs {}", genus_a(&c))
        })?;
        checked[0] += 1;
    }

    while checked[1] < GENUS_SAMPLES {
        let c = random_cf(&mut rng, 3, 2);
        let n = 2 * rng.gen_range(0..=5) + 1;
        let path = build_ab_path(&c).map_err(|e| format!("AB {c}: {e}"))?;
        let sheets = SheetData::single(n, n).unwrap();
        let (formula, euler) = (genus_ab(&c, n), genus_from_euler(&path, &sheets));
        ensure(formula.is_ok() && formula == euler, || {
            format!("AB {c}, n = {n}: {formula:?} vs {euler:?}")
        })?;
        checked[1] += 1;
    }

    while checked[2] < GENUS_SAMPLES {
        let c = random_cf(&mut rng, 1, 1);
        let parity = c.odd_half_entries().map(i64::abs).sum::<i64>() % 2;
        let n = 2 * rng.gen_range(0..=3) + if parity == 0 { 2 } else { 1 };
        let mu = n * rng.gen_range(1..=6);
        if mu <= 1 {
            continue;
        }
        let sheets = SheetData::single(mu, n).unwrap();
        let path = build_ad_path(&c);
        let (formula, euler) = (genus_ad(&c, &sheets), genus_from_euler(&path, &sheets));
        ensure(formula == euler, || {
            format!("AD {c}, mu {mu}, n {n}: {formula:?} vs {euler:?}")
        })?;
        if formula.is_ok() {
            checked[2] += 1;
        }
    }
    Ok(format!("{GENUS_SAMPLES} instances each for A, AB and AD"))
}

fn ad_path_of_three_eighths() -> Check {
    let c = EvenContinuedFraction::new(Head::Zero, vec![2, 2, -2]).unwrap();
    let seq = build_ad_path(&c).type_sequence();
    ensure(seq == "ADAADA", || format!("got {seq}"))?;
    Ok(format!("AD-path of {c} is {seq}"))
}

fn slope_engine_calibration() -> Check {
    let tables = calibrate();
    ensure(tables.first() == Some(&ConventionTable::CALIBRATED), || {
        format!("calibration search returned {tables:?}")
    })?;
    let table = ConventionTable::CALIBRATED;
    for c in calibration_seeds() {
        let path = orient_path(&build_ad_path(&c)).unwrap();
        for mu in [2, 6, 12] {
            let s = SheetData::single(mu, 1).unwrap();
            let acc = accumulate_slopes(&path, &s, &table).map_err(|e| e.to_string())?;
            ensure(acc == closed_form_slopes(&c, &s), || {
                format!("seed {c}, mu {mu}: {acc:?}")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut heads = [0; 2];
    for _ in 0..SLOPE_SAMPLES {
        let x = random_fraction(&mut rng, 1000);
        let head = if rng.gen_bool(0.5) {
            Head::Zero
        } else {
            Head::One
        };
        let c = even_cf(x, head).unwrap();
        let mu = rng.gen_range(2..=40);
        let rho = rng.gen_range(1..=3);
        let s = SheetData::new(mu, rho, 1).unwrap();
        let path = orient_path(&build_ad_path(&c)).unwrap();
        let acc = accumulate_slopes(&path, &s, &table).map_err(|e| e.to_string())?;
        let closed = closed_form_slopes(&c, &s);
        ensure(acc == closed, || {
            format!("{c}, mu {mu}, rho {rho}: {acc:?} vs {closed:?}")
        })?;
        heads[head.value() as usize] += 1;
    }
    ensure(heads[0] > 0 && heads[1] > 0, || {
        "one head never sampled".into()
    })?;
    Ok(format!(
        "{SLOPE_SAMPLES} random paths ({} head 0, {} head 1) and 2 seeds",
        heads[0], heads[1]
    ))
}

fn satellite_slope_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut checked = 0;
    while checked < SATELLITE_SAMPLES {
        let x = random_fraction(&mut rng, 200);
        let p = rng.gen_range(2..=9) * if rng.gen_bool(0.5) { -1 } else { 1 };
        let q = rng.gen_range(2..=9) * if rng.gen_bool(0.5) { -1 } else { 1 };
        let Ok(k) = SatelliteKnot::new(x.den(), x.num(), p, q) else {
            continue;
        };
        let report = satellite_genus(&k).map_err(|e| e.to_string())?;
        if report.lk.is_zero() {
            continue;
        }
        let lk = report.lk.magnitude;
        let pq = (p * q).abs();
        let s = report.slopes.ok_or("no slopes reported")?;
        ensure(s.k2.meridional.abs() == lk * lk * pq, || {
            format!("{k:?}: K2 slope {}", s.k2)
        })?;
        let k1 = s.k1.as_fraction();
        ensure(k1.num().abs() == 1 && k1.den() == pq, || {
            format!("{k:?}: K1 slope {}", s.k1)
        })?;
        ensure(satellite_slope_check(&k) == Ok(true), || {
            format!("{k:?}: slope check")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} satellite knots with lk != 0"))
}

fn worked_values() -> Check {
    let sat = |a, b, p, q| satellite_genus(&SatelliteKnot::new(a, b, p, q).unwrap()).unwrap();
    let torti = |a, b, r| torti_genus(&TortiRationalKnot::new(a, b, r).unwrap()).unwrap();

    let r = sat(12, 5, 2, 3);
    let selected = r
        .cases
        .iter()
        .find(|c| c.selected)
        .ok_or("no selected case")?;
    ensure(
        selected.surface_genus == Some(GenusValue::Integer(6)),
        || format!("g(F') {:?}", selected.surface_genus),
    )?;
    ensure(r.genus == Some(8), || {
        format!("K(12,5,2,3) genus {:?}", r.genus)
    })?;
    ensure(r.fibered == Fibered::Yes, || {
        "K(12,5,2,3) not fibered".into()
    })?;
    let s = r.slopes.ok_or("no slopes")?;
    ensure(
        (s.k1, s.k2) == (Slope::new(12, -2), Slope::new(1, -24)),
        || format!("slopes {} {}", s.k1, s.k2),
    )?;

    for (name, got, want) in [
        ("K(4,1,2,3)", sat(4, 1, 2, 3).genus, 7),
        ("K(5/12;2)", torti(12, 5, 2).genus, 2),
        ("K(5/12;-1)", torti(12, 5, -1).genus, 1),
        ("K(19/46;1)", torti(46, 19, 1).genus, 1),
    ] {
        ensure(got == Some(want), || {
            format!("{name}: {got:?}, expected {want}")
        })?;
    }
    let r = torti(46, 19, 1);
    let via = r.cases.iter().find(|c| c.selected).map(|c| c.name.clone());
    ensure(via.as_deref() == Some("unit-twist"), || {
        format!("K(19/46;1) selected {via:?}")
    })?;
    Ok("5 knots".into())
}

/// Odd-length sequences of at most `max_len` entries whose entry at 0-based
/// position `pos` is drawn from `allowed(pos)`.
fn sequences(max_len: usize, allowed: impl Fn(usize) -> Vec<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for pos in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<i64>| {
                allowed(pos).into_iter().map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        if pos % 2 == 0 {
            out.extend(layer.iter().cloned());
        }
    }
    out
}

/// Fibered expansions built directly from the three normal forms.
fn fibered_forms(max_len: usize, max_abs: i64) -> [BTreeSet<(u8, Vec<i64>)>; 3] {
    let evens: Vec<i64> = (1..=max_abs / 2).flat_map(|h| [2 * h, -2 * h]).collect();
    let positive: Vec<i64> = evens.iter().copied().filter(|x| *x > 0).collect();
    let negative: Vec<i64> = evens.iter().copied().filter(|x| *x < 0).collect();
    let mut forms: [BTreeSet<(u8, Vec<i64>)>; 3] = Default::default();
    for head in [0u8, 1] {
        let unit = |_| vec![2, -2];
        let alternating = |pos: usize| {
            if pos % 2 == 1 {
                vec![2, -2]
            } else {
                evens.clone()
            }
        };
        let separated = |pos: usize| match (pos % 2, head) {
            (1, 0) => vec![-2],
            (1, _) => vec![2],
            (_, 0) => positive.clone(),
            _ => negative.clone(),
        };
        forms[0].extend(sequences(max_len, unit).into_iter().map(|s| (head, s)));
        forms[1].extend(
            sequences(max_len, alternating)
                .into_iter()
                .map(|s| (head, s)),
        );
        forms[2].extend(sequences(max_len, separated).into_iter().map(|s| (head, s)));
    }
    forms
}

fn fiberedness_structure() -> Check {
    let start = Instant::now();
    let [a_forms, ad_forms, d_forms] = fibered_forms(5, 6);
    let mut swept = 0;
    for entries in bridgegenus_oracles::even_sequences(5, 6) {
        for (head, h) in [(Head::Zero, 0u8), (Head::One, 1u8)] {
            let c = EvenContinuedFraction::new(head, entries.clone()).unwrap();
            let key = (h, entries.clone());
            for (class, forms) in [
                (PathClass::A, &a_forms),
                (PathClass::AD, &ad_forms),
                (PathClass::D, &d_forms),
            ] {
                let got = is_fibered(&c, class).map_err(|e| e.to_string())?;
                ensure(got == forms.contains(&key), || {
                    format!("{c} {class}: is_fibered = {got}")
                })?;
            }
            if head == Head::Zero && is_fibered(&c, PathClass::D).unwrap() {
                ensure(!c.linking_number().is_zero(), || {
                    format!("{c}: D-fibered with lk = 0")
                })?;
            }
            swept += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < FIBERED_SWEEP_BUDGET, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{swept} expansions in {elapsed:.2?}"))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bridgegenus_cli::run(
        std::iter::once("bridgegenus").chain(args.iter().copied()),
        &mut out,
        &mut err,
        false,
    );
    (code, out)
}

fn cli_goldens() -> Check {
    let cases: [(&str, &[&str]); 5] = [
        (
            "satellite_12_5_2_3.json",
            &[
                "satellite",
                "--alpha",
                "12",
                "--beta",
                "5",
                "-p",
                "2",
                "-q",
                "3",
                "--json",
            ],
        ),
        (
            "satellite_4_1_2_3.json",
            &[
                "satellite",
                "--alpha",
                "4",
                "--beta",
                "1",
                "-p",
                "2",
                "-q",
                "3",
                "--json",
            ],
        ),
        (
            "torti_5_12_2.json",
            &["torti", "--alpha", "12", "--beta", "5", "-r", "2", "--json"],
        ),
        (
            "torti_5_12_m1.json",
            &[
                "torti", "--alpha", "12", "--beta", "5", "-r", "-1", "--json",
            ],
        ),
        (
            "torti_19_46_1.json",
            &[
                "torti", "--alpha", "46", "--beta", "19", "-r", "1", "--json",
            ],
        ),
    ];
    for (file, args) in cases {
        let expected =
            std::fs::read(golden_dir().join(file)).map_err(|e| format!("{file}: {e}"))?;
        let (code, out) = run_cli(args);
        ensure(code == 0, || format!("{file}: exit {code}"))?;
        ensure(out == expected, || {
            format!("{file}: output differs from golden")
        })?;
    }

    let c = EvenContinuedFraction::new(Head::Zero, vec![2, 2, -2]).unwrap();
    let path = orient_path(&build_ad_path(&c)).unwrap();
    let first = Sha256::digest(render_svg(&path).as_bytes());
    let second = Sha256::digest(render_svg(&path).as_bytes());
    let golden = std::fs::read(golden_dir().join("path_3_8_ad.svg")).map_err(|e| e.to_string())?;
    ensure(first == second, || "SVG rendering is not repeatable".into())?;
    ensure(first == Sha256::digest(&golden), || {
        "SVG differs from golden".into()
    })?;
    Ok(format!("5 JSON goldens, SVG sha256 {:x}", first))
}

fn main() {
    let checks: [Criterion; 9] = [
        ("continued fraction round trip", cf_round_trip),
        ("linking number consistency", linking_number_consistency),
        ("genus formulas match Euler count", genus_oracle_equivalence),
        ("AD-path of 3/8 is ADAADA", ad_path_of_three_eighths),
        ("slope table calibration", slope_engine_calibration),
        ("satellite boundary slope law", satellite_slope_law),
        ("worked knot values", worked_values),
        ("fiberedness normal forms", fiberedness_structure),
        ("CLI golden files", cli_goldens),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
