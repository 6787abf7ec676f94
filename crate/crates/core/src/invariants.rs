//! Genus and fiberedness of surfaces carried by edge-paths.
//!
//! Each path class has its own closed formula; [`genus_from_euler`] counts
//! caps and saddles directly and should agree with all of them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{build_a_path, build_ab_path, build_ad_path, EdgePath, EdgeType, PathClass};
use crate::error::{Error, Result};
use crate::rationals::{EvenContinuedFraction, Head};
use crate::slopes::SheetData;

/// Fiberedness of a surface, or `Unknown` where no criterion applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fibered {
    Yes,
    No,
    Unknown,
}

impl Fibered {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Fibered::Yes => Some(true),
            Fibered::No => Some(false),
            Fibered::Unknown => None,
        }
    }
}

impl From<bool> for Fibered {
    fn from(b: bool) -> Self {
        if b {
            Fibered::Yes
        } else {
            Fibered::No
        }
    }
}

impl fmt::Display for Fibered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fibered::Yes => "yes",
            Fibered::No => "no",
            Fibered::Unknown => "unknown",
        })
    }
}

/// `true`, `false` or `"unknown"`.
impl Serialize for Fibered {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_bool() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub genus: i64,
    pub boundary_on_k1: i64,
    pub boundary_on_k2: i64,
    pub sheets: SheetData,
    pub path_class: PathClass,
    pub fibered: Fibered,
    pub warnings: Vec<String>,
}

/// Saddles of the carried surface: one per A-edge, `(mu-1)/2` per B-edge and
/// `mu-1` per D-edge.
pub fn saddle_count(path: &EdgePath, sheets: &SheetData) -> Result<i64> {
    let mu = sheets.mu;
    let mut total: i64 = 0;
    for edge in path.edges() {
        let s = match edge.kind {
            EdgeType::A(_) => 1,
            EdgeType::B if mu % 2 == 1 => (mu - 1) / 2,
            EdgeType::B => return Err(Error::ParityError(mu)),
            EdgeType::D => mu - 1,
            EdgeType::C => {
                return Err(Error::NotApplicable(
                    "C-edges do not occur in carried surfaces of this kind".into(),
                ))
            }
        };
        total = total
            .checked_add(s)
            .ok_or(Error::Overflow("saddle count"))?;
    }
    Ok(total)
}

/// `χ = (mu + 1) - saddles`, `b = n + 1`, genus `(2 - χ - b) / 2`.
///
/// The `mu + 1` caps are `mu` disks around `K1` and one around `K2`; with
/// `mu = 1` this is the two caps of an A-path surface and with `mu = n` the
/// `n + 1` caps of an AB-path surface.
pub fn genus_from_euler(path: &EdgePath, sheets: &SheetData) -> Result<i64> {
    if path.class() == PathClass::D {
        return Err(Error::WrongClass {
            expected: "A, AB or AD",
            found: PathClass::D,
        });
    }
    let saddles = saddle_count(path, sheets)?;
    let chi = sheets.mu + 1 - saddles;
    let boundary = sheets.n + 1;
    half(2 - chi - boundary)
}

fn half(twice: i64) -> Result<i64> {
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::NonIntegerGenus { twice });
    }
    Ok(twice / 2)
}

pub fn genus_a(cf: &EvenContinuedFraction) -> i64 {
    (cf.len() as i64 - 1) / 2
}

pub fn genus_ab(cf: &EvenContinuedFraction, n: i64) -> Result<i64> {
    build_ab_path(cf)?;
    if n < 1 {
        return Err(Error::InvalidSheets(format!("n = {n} must be positive")));
    }
    let k = cf.len() as i64;
    let num = (n + 1)
        .checked_mul(k - 3)
        .ok_or(Error::Overflow("AB genus"))?;
    if num % 4 != 0 {
        return Err(Error::NonIntegerGenus { twice: 2 + num / 2 });
    }
    Ok(1 + num / 4)
}

/// `½[(-1 + Σ_{h odd} |r_h|)(mu - 1) + (k + 1) - (n + 1)]`.
pub fn genus_ad(cf: &EvenContinuedFraction, sheets: &SheetData) -> Result<i64> {
    if sheets.mu <= 1 {
        return Err(Error::NotApplicable(format!(
            "AD-path surfaces need mu > 1, got {}",
            sheets.mu
        )));
    }
    let odd_sum: i64 = cf.odd_half_entries().map(i64::abs).sum();
    let k = cf.len() as i64;
    let twice = (odd_sum - 1)
        .checked_mul(sheets.mu - 1)
        .and_then(|x| x.checked_add(k - sheets.n))
        .ok_or(Error::Overflow("AD genus"))?;
    half(twice)
}

/// Fiberedness criterion for surfaces carried by `class`-paths of `cf`.
///
/// - A: every entry is `±2`.
/// - AD: every entry at an even (1-based) position is `±2`.
/// - D: head 0 with positive entries at odd positions and `-2` at even
///   positions, or head 1 with negative entries and `+2`.
pub fn is_fibered(cf: &EvenContinuedFraction, class: PathClass) -> Result<bool> {
    let e = cf.entries();
    Ok(match class {
        PathClass::A => e.iter().all(|x| x.abs() == 2),
        PathClass::AD => e.iter().skip(1).step_by(2).all(|x| x.abs() == 2),
        PathClass::D => {
            let (sign, sep) = match cf.head() {
                Head::Zero => (1, -2),
                Head::One => (-1, 2),
            };
            e.iter().enumerate().all(|(i, &x)| {
                if i % 2 == 0 {
                    x.signum() == sign
                } else {
                    x == sep
                }
            })
        }
        PathClass::AB => {
            return Err(Error::WrongClass {
                expected: "A, AD or D",
                found: PathClass::AB,
            })
        }
    })
}

/// Genus (closed formula, checked against the Euler count) and fiberedness of
/// the surface carried by the `class`-path of `cf` with the given sheets.
pub fn surface_report(
    cf: &EvenContinuedFraction,
    class: PathClass,
    sheets: &SheetData,
) -> Result<SurfaceReport> {
    let (genus, path) = match class {
        PathClass::A => {
            if sheets.mu != 1 || sheets.n != 1 {
                return Err(Error::InvalidSheets(
                    "A-path surfaces have mu = n = 1".into(),
                ));
            }
            (genus_a(cf), build_a_path(cf))
        }
        PathClass::AB => (genus_ab(cf, sheets.n)?, build_ab_path(cf)?),
        PathClass::AD => (genus_ad(cf, sheets)?, build_ad_path(cf)),
        PathClass::D => {
            return Err(Error::WrongClass {
                expected: "A, AB or AD",
                found: PathClass::D,
            })
        }
    };
    let mut warnings = Vec::new();
    match genus_from_euler(&path, sheets) {
        Ok(g) if g == genus => {}
        Ok(g) => warnings.push(format!(
            "closed formula gives genus {genus} but the Euler count gives {g}"
        )),
        Err(e) => warnings.push(format!("Euler count unavailable: {e}")),
    }
    let fibered = match class {
        PathClass::AB => Fibered::Unknown,
        _ => is_fibered(cf, class)?.into(),
    };
    Ok(SurfaceReport {
        genus,
        boundary_on_k1: sheets.n,
        boundary_on_k2: 1,
        sheets: *sheets,
        path_class: class,
        fibered,
        warnings,
    })
}
