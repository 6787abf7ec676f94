//! Genus pipelines for satellite tunnel-number-one knots `K(α, β; p, q)` and
//! torti-rational knots `K(β/α; r)`.

use serde::{Serialize, Serializer};

use crate::diagram::{build_ab_path, PathClass};
use crate::error::{Error, Result};
use crate::invariants::{genus_ab, genus_ad, is_fibered, Fibered};
use crate::rationals::{
    even_cf_pair, gcd, EvenContinuedFraction, Head, LinkingNumber, ReducedFraction,
};
use crate::slopes::{closed_form_slopes, slopes_for_class, SheetData, SlopePair};

fn link_fraction(alpha: i64, beta: i64) -> Result<ReducedFraction> {
    if alpha < 4 || alpha % 2 != 0 {
        return Err(Error::InvalidKnot(format!(
            "alpha = {alpha} must be even and at least 4"
        )));
    }
    if beta <= 0 || beta >= alpha {
        return Err(Error::InvalidKnot(format!(
            "beta = {beta} must satisfy 0 < beta < alpha"
        )));
    }
    if gcd(alpha, beta) != 1 {
        return Err(Error::InvalidKnot(format!("gcd({alpha}, {beta}) != 1")));
    }
    ReducedFraction::new(beta, alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SatelliteKnot {
    pub alpha: i64,
    pub beta: i64,
    pub p: i64,
    pub q: i64,
}

impl SatelliteKnot {
    pub fn new(alpha: i64, beta: i64, p: i64, q: i64) -> Result<Self> {
        link_fraction(alpha, beta)?;
        if p.abs() < 2 || q.abs() < 2 {
            return Err(Error::InvalidKnot(format!(
                "need |p|, |q| >= 2, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        Ok(Self { alpha, beta, p, q })
    }

    pub fn fraction(&self) -> ReducedFraction {
        ReducedFraction::new(self.beta, self.alpha).expect("validated")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TortiRationalKnot {
    pub alpha: i64,
    pub beta: i64,
    pub r: i64,
}

impl TortiRationalKnot {
    pub fn new(alpha: i64, beta: i64, r: i64) -> Result<Self> {
        link_fraction(alpha, beta)?;
        Ok(Self { alpha, beta, r })
    }

    pub fn fraction(&self) -> ReducedFraction {
        ReducedFraction::new(self.beta, self.alpha).expect("validated")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "knot", rename_all = "lowercase")]
pub enum KnotInput {
    Satellite {
        alpha: i64,
        beta: i64,
        p: i64,
        q: i64,
    },
    Torti {
        alpha: i64,
        beta: i64,
        r: i64,
    },
}

/// A genus candidate: an integer, or a fraction when a formula fails to be
/// integral (reported, never rounded).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusValue {
    Integer(i64),
    Fraction(ReducedFraction),
}

impl GenusValue {
    pub fn from_ratio(num: i64, den: i64) -> Self {
        let f = ReducedFraction::new(num, den).expect("nonzero denominator");
        if f.den() == 1 {
            GenusValue::Integer(f.num())
        } else {
            GenusValue::Fraction(f)
        }
    }

    pub fn integer(&self) -> Option<i64> {
        match self {
            GenusValue::Integer(g) => Some(*g),
            GenusValue::Fraction(_) => None,
        }
    }
}

impl std::fmt::Display for GenusValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenusValue::Integer(g) => write!(f, "{g}"),
            GenusValue::Fraction(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for GenusValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GenusValue::Integer(g) => s.serialize_i64(*g),
            GenusValue::Fraction(x) => s.collect_str(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub applicable: bool,
    pub selected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub head: Option<Head>,
    pub path_class: Option<PathClass>,
    pub sheets: Option<SheetData>,
    /// Genus of the spanning surface of `K2` in the link complement.
    pub surface_genus: Option<GenusValue>,
    pub genus: Option<GenusValue>,
    pub fibered: Fibered,
}

impl CaseReport {
    fn skipped(name: &str, reason: String) -> Self {
        Self {
            name: name.into(),
            applicable: false,
            selected: false,
            reason: Some(reason),
            head: None,
            path_class: None,
            sheets: None,
            surface_genus: None,
            genus: None,
            fibered: Fibered::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotReport {
    pub input: KnotInput,
    pub cf0: EvenContinuedFraction,
    pub cf1: EvenContinuedFraction,
    pub lk: LinkingNumber,
    pub cases: Vec<CaseReport>,
    pub genus: Option<i64>,
    pub slopes: Option<SlopePair>,
    pub fibered: Fibered,
    pub warnings: Vec<String>,
}

pub fn torus_knot_genus(p: i64, q: i64) -> Result<i64> {
    if p.abs() < 2 || q.abs() < 2 {
        return Err(Error::InvalidKnot(format!(
            "need |p|, |q| >= 2, got ({p}, {q})"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok((p.abs() - 1) * (q.abs() - 1) / 2)
}

/// Alternative index ranges for the zero-linking sum, for comparison only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroLinkingReading {
    pub head: Head,
    pub all: i64,
    pub odd_positions: i64,
    pub even_positions: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroLinkingGenus {
    pub genus: i64,
    pub readings: [ZeroLinkingReading; 2],
    pub warnings: Vec<String>,
}

pub const ZERO_LINKING_WARNING: &str = "zero linking number: genus is the sum of |r_t| over all \
    entries of the head-0 expansion; the index range of this sum is ambiguous";

fn reading(cf: &EvenContinuedFraction) -> ZeroLinkingReading {
    ZeroLinkingReading {
        head: cf.head(),
        all: cf.half_entries().map(i64::abs).sum(),
        odd_positions: cf.odd_half_entries().map(i64::abs).sum(),
        even_positions: cf.even_half_entries().map(i64::abs).sum(),
    }
}

/// Genus when `lk = 0`: `Σ |r_t|` over every entry of the head-0 expansion.
pub fn zero_linking_genus(
    cf0: &EvenContinuedFraction,
    cf1: &EvenContinuedFraction,
) -> Result<ZeroLinkingGenus> {
    for cf in [cf0, cf1] {
        let lk = cf.linking_number();
        if !lk.is_zero() {
            return Err(Error::NonzeroLinking(lk.value));
        }
    }
    let readings = [reading(cf0), reading(cf1)];
    let mut warnings = vec![ZERO_LINKING_WARNING.to_string()];
    if readings[0].all != readings[1].all {
        warnings.push(format!(
            "the head-1 expansion gives {} instead of {}",
            readings[1].all, readings[0].all
        ));
    }
    Ok(ZeroLinkingGenus {
        genus: readings[0].all,
        readings,
        warnings,
    })
}

fn zero_linking_cases(z: &ZeroLinkingGenus, diagnostics: bool) -> Vec<CaseReport> {
    let mut cases = Vec::new();
    for r in &z.readings {
        let mut push = |name: String, value: i64, selected: bool| {
            cases.push(CaseReport {
                name,
                applicable: true,
                selected,
                reason: None,
                head: Some(r.head),
                path_class: None,
                sheets: None,
                surface_genus: None,
                genus: Some(GenusValue::Integer(value)),
                fibered: Fibered::Unknown,
            })
        };
        let h = r.head.value();
        push(format!("zero-linking-head{h}"), r.all, r.head == Head::Zero);
        if diagnostics {
            push(format!("zero-linking-head{h}-odd"), r.odd_positions, false);
            push(
                format!("zero-linking-head{h}-even"),
                r.even_positions,
                false,
            );
        }
    }
    cases
}

struct Expansions {
    cf0: EvenContinuedFraction,
    cf1: EvenContinuedFraction,
    lk: LinkingNumber,
}

fn expansions(x: ReducedFraction) -> Result<Expansions> {
    let (cf0, cf1) = even_cf_pair(x)?;
    let lk = cf0.linking_number();
    debug_assert_eq!(lk.magnitude, cf1.linking_number().magnitude);
    Ok(Expansions { cf0, cf1, lk })
}

impl Expansions {
    fn cf(&self, head: Head) -> &EvenContinuedFraction {
        match head {
            Head::Zero => &self.cf0,
            Head::One => &self.cf1,
        }
    }
}

/// Options that only change what is reported, never the genus.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    /// List the odd- and even-position sums next to the zero-linking genus.
    pub zero_linking_readings: bool,
}

fn satellite_sheets(k: &SatelliteKnot, lk: &LinkingNumber) -> Result<SheetData> {
    let mu = lk
        .magnitude
        .checked_mul(k.p.checked_mul(k.q).ok_or(Error::Overflow("pq"))?.abs())
        .ok_or(Error::Overflow("mu"))?;
    SheetData::single(mu, lk.magnitude)
}

fn satellite_head(k: &SatelliteKnot) -> Head {
    assert!(k.p * k.q != 0, "validated knots have |p|, |q| >= 2");
    if k.p * k.q > 0 {
        Head::Zero
    } else {
        Head::One
    }
}

pub fn satellite_genus(k: &SatelliteKnot) -> Result<KnotReport> {
    satellite_genus_with(k, ReportOptions::default())
}

/// Genus of `K(α, β; p, q)`: the AD-path surface `F'` of the expansion with
/// head 0 when `pq > 0` (head 1 when `pq < 0`), with `mu = |lk pq|` and
/// `n = |lk|`, plus `|lk|` copies of a Seifert surface of the companion.
pub fn satellite_genus_with(k: &SatelliteKnot, opts: ReportOptions) -> Result<KnotReport> {
    let x = link_fraction(k.alpha, k.beta)?;
    SatelliteKnot::new(k.alpha, k.beta, k.p, k.q)?;
    let e = expansions(x)?;
    let input = KnotInput::Satellite {
        alpha: k.alpha,
        beta: k.beta,
        p: k.p,
        q: k.q,
    };

    if e.lk.is_zero() {
        let z = zero_linking_genus(&e.cf0, &e.cf1)?;
        return Ok(KnotReport {
            input,
            cases: zero_linking_cases(&z, opts.zero_linking_readings),
            cf0: e.cf0,
            cf1: e.cf1,
            lk: e.lk,
            genus: Some(z.genus),
            slopes: None,
            fibered: Fibered::Unknown,
            warnings: z.warnings,
        });
    }

    let sheets = satellite_sheets(k, &e.lk)?;
    let companion = e.lk.magnitude * torus_knot_genus(k.p, k.q)?;
    let chosen = satellite_head(k);
    let mut cases = Vec::new();
    let mut genus = None;
    let mut fibered = Fibered::Unknown;
    for head in [Head::Zero, Head::One] {
        let cf = e.cf(head);
        let surface = genus_ad(cf, &sheets)?;
        let total = surface + companion;
        let f: Fibered = is_fibered(cf, PathClass::AD)?.into();
        if head == chosen {
            genus = Some(total);
            fibered = f;
        }
        cases.push(CaseReport {
            name: format!("ad-head{}", head.value()),
            applicable: true,
            selected: head == chosen,
            reason: None,
            head: Some(head),
            path_class: Some(PathClass::AD),
            sheets: Some(sheets),
            surface_genus: Some(GenusValue::Integer(surface)),
            genus: Some(GenusValue::Integer(total)),
            fibered: f,
        });
    }
    Ok(KnotReport {
        input,
        slopes: Some(closed_form_slopes(e.cf(chosen), &sheets)),
        cf0: e.cf0,
        cf1: e.cf1,
        lk: e.lk,
        cases,
        genus,
        fibered,
        warnings: Vec::new(),
    })
}

/// The slopes of `F'` have `|K2 meridional| = lk² |pq|` and `K1` slope of
/// magnitude `1/|pq|`.
pub fn satellite_slope_check(k: &SatelliteKnot) -> Result<bool> {
    let e = expansions(k.fraction())?;
    if e.lk.is_zero() {
        return Err(Error::NotApplicable("slopes of F' need lk != 0".into()));
    }
    let pq = (k.p * k.q).abs();
    let sheets = satellite_sheets(k, &e.lk)?;
    let s = closed_form_slopes(e.cf(satellite_head(k)), &sheets);
    let k1 = s.k1.as_fraction();
    Ok(
        s.k2.meridional.abs() == e.lk.magnitude * e.lk.magnitude * pq
            && k1.num().abs() == 1
            && k1.den() == pq,
    )
}

pub fn torti_genus(k: &TortiRationalKnot) -> Result<KnotReport> {
    torti_genus_with(k, ReportOptions::default())
}

/// Genus of `K(β/α; r)`. Every case whose hypothesis holds is evaluated;
/// the reported genus is the least integral candidate.
pub fn torti_genus_with(k: &TortiRationalKnot, opts: ReportOptions) -> Result<KnotReport> {
    let x = link_fraction(k.alpha, k.beta)?;
    let e = expansions(x)?;
    let input = KnotInput::Torti {
        alpha: k.alpha,
        beta: k.beta,
        r: k.r,
    };

    if e.lk.is_zero() {
        let z = zero_linking_genus(&e.cf0, &e.cf1)?;
        return Ok(KnotReport {
            input,
            cases: zero_linking_cases(&z, opts.zero_linking_readings),
            cf0: e.cf0,
            cf1: e.cf1,
            lk: e.lk,
            genus: Some(z.genus),
            slopes: None,
            fibered: Fibered::Unknown,
            warnings: z.warnings,
        });
    }

    let r = k.r;
    let n = e.lk.magnitude;
    let mut warnings = Vec::new();
    let mut cases = vec![
        twisted_ad_case("twist-above-one", r > 1, "r > 1", Head::One, &e, r)?,
        twisted_ad_case("twist-below-one", r < 1, "r < 1", Head::Zero, &e, r)?,
        ab_case(&e, r, &mut warnings)?,
        unit_case(&e, r, &mut warnings)?,
    ];

    let best = cases
        .iter()
        .enumerate()
        .filter(|(_, c)| c.applicable)
        .filter_map(|(i, c)| c.genus.and_then(|g| g.integer()).map(|g| (g, i)))
        .min();
    let candidates: Vec<String> = cases
        .iter()
        .filter(|c| c.applicable)
        .filter_map(|c| c.genus.map(|g| format!("{} = {g}", c.name)))
        .collect();
    let distinct = cases
        .iter()
        .filter(|c| c.applicable)
        .filter_map(|c| c.genus)
        .collect::<std::collections::HashSet<_>>();
    if distinct.len() > 1 {
        warnings.push(format!(
            "cases disagree ({}); reporting the least integral value",
            candidates.join(", ")
        ));
    }

    let (genus, slopes) = match best {
        Some((g, i)) => {
            cases[i].selected = true;
            let c = &cases[i];
            let cf = e.cf(c.head.expect("applicable cases record a head"));
            let sheets = c.sheets.expect("applicable cases record sheets");
            let class = c.path_class.expect("applicable cases record a class");
            (Some(g), slopes_for_class(class, cf, &sheets).ok())
        }
        None => {
            warnings.push(format!(
                "no integral genus formula applies for r = {r}, |lk| = {n}"
            ));
            (None, None)
        }
    };

    Ok(KnotReport {
        input,
        cf0: e.cf0,
        cf1: e.cf1,
        lk: e.lk,
        cases,
        genus,
        slopes,
        fibered: Fibered::Unknown,
        warnings,
    })
}

fn twisted_ad_case(
    name: &str,
    guard: bool,
    guard_text: &str,
    head: Head,
    e: &Expansions,
    r: i64,
) -> Result<CaseReport> {
    if !guard {
        return Ok(CaseReport::skipped(name, format!("needs {guard_text}")));
    }
    let n = e.lk.magnitude;
    let mu = n.checked_mul(r.abs()).ok_or(Error::Overflow("mu"))?;
    if mu <= 1 {
        return Ok(CaseReport::skipped(
            name,
            format!("|lk r| = {mu}; the AD-path surface needs at least two sheets"),
        ));
    }
    let cf = e.cf(head);
    let sheets = SheetData::single(mu, n)?;
    let g = genus_ad(cf, &sheets)?;
    Ok(CaseReport {
        name: name.into(),
        applicable: true,
        selected: false,
        reason: None,
        head: Some(head),
        path_class: Some(PathClass::AD),
        sheets: Some(sheets),
        surface_genus: Some(GenusValue::Integer(g)),
        genus: Some(GenusValue::Integer(g)),
        fibered: is_fibered(cf, PathClass::AD)?.into(),
    })
}

fn ab_case(e: &Expansions, r: i64, warnings: &mut Vec<String>) -> Result<CaseReport> {
    const NAME: &str = "ab-path";
    let n = e.lk.magnitude;
    if r.abs() <= 1 || n <= 1 {
        return Ok(CaseReport::skipped(
            NAME,
            "needs |r| > 1 and |lk| > 1".into(),
        ));
    }
    let Some(head) = [Head::Zero, Head::One]
        .into_iter()
        .find(|&h| build_ab_path(e.cf(h)).is_ok())
    else {
        return Ok(CaseReport::skipped(
            NAME,
            "neither expansion has k >= 3 and every |r_t| >= 2".into(),
        ));
    };
    let cf = e.cf(head);
    let value = match genus_ab(cf, n) {
        Ok(g) => GenusValue::Integer(g),
        Err(Error::NonIntegerGenus { .. }) => {
            let k = cf.len() as i64;
            let v = GenusValue::from_ratio(4 + (n + 1) * (k - 3), 4);
            warnings.push(format!("AB-path formula is not integral: {v}"));
            v
        }
        Err(err) => return Err(err),
    };
    Ok(CaseReport {
        name: NAME.into(),
        applicable: true,
        selected: false,
        reason: None,
        head: Some(head),
        path_class: Some(PathClass::AB),
        sheets: Some(SheetData::single(n, n)?),
        surface_genus: Some(value),
        genus: Some(value),
        fibered: Fibered::Unknown,
    })
}

/// `min((i - 1)/4, (j - 1)/4)` for the expansion lengths `i`, `j`.
fn unit_case(e: &Expansions, r: i64, warnings: &mut Vec<String>) -> Result<CaseReport> {
    const NAME: &str = "unit-twist";
    if r.abs() != 1 || e.lk.magnitude != 1 {
        return Ok(CaseReport::skipped(
            NAME,
            "needs |r| = 1 and |lk| = 1".into(),
        ));
    }
    let (i, j) = (e.cf0.len() as i64, e.cf1.len() as i64);
    let head = if i <= j { Head::Zero } else { Head::One };
    let value = GenusValue::from_ratio(i.min(j) - 1, 4);
    if value.integer().is_none() {
        warnings.push(format!(
            "unit-twist formula min(({i}-1)/4, ({j}-1)/4) = {value} is not an integer"
        ));
    }
    Ok(CaseReport {
        name: NAME.into(),
        applicable: true,
        selected: false,
        reason: None,
        head: Some(head),
        path_class: Some(PathClass::A),
        sheets: Some(SheetData::single(1, 1)?),
        surface_genus: Some(value),
        genus: Some(value),
        fibered: is_fibered(e.cf(head), PathClass::A)?.into(),
    })
}
