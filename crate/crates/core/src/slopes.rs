//! Boundary slopes of surfaces carried by AD-paths.
//!
//! Two routes are provided. [`closed_form_slopes`] reads the slopes straight
//! off the linking number and is what reports use. [`accumulate_slopes`]
//! sums per-edge intersection counts from the slope table over an oriented
//! path and then corrects to the preferred longitudes; it exists to check the
//! closed form.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{EdgePath, EdgeType, Orientation, PathClass};
use crate::error::{Error, Result};
use crate::rationals::{EvenContinuedFraction, Head, ReducedFraction};

/// Sheet numbers of a carried surface: `mu` along `K1`, `rho` along `K2`,
/// and the number `n` of boundary components on `K1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SheetData {
    pub mu: i64,
    pub rho: i64,
    pub n: i64,
}

impl SheetData {
    pub fn new(mu: i64, rho: i64, n: i64) -> Result<Self> {
        if mu < 1 || rho < 1 || n < 1 {
            return Err(Error::InvalidSheets(format!(
                "mu, rho and n must be positive (got {mu}, {rho}, {n})"
            )));
        }
        if mu % n != 0 {
            return Err(Error::InvalidSheets(format!(
                "mu = {mu} is not a multiple of n = {n}"
            )));
        }
        Ok(Self { mu, rho, n })
    }

    /// `rho = 1`, the only case the knot pipelines use.
    pub fn single(mu: i64, n: i64) -> Result<Self> {
        Self::new(mu, 1, n)
    }

    /// Diagram parameter `t = mu / rho`.
    pub fn t(&self) -> ReducedFraction {
        ReducedFraction::new(self.mu, self.rho).expect("rho >= 1")
    }
}

/// A boundary slope as the exact pair (longitudinal, meridional).
///
/// The pair is not reduced: `(12, -2)` records twelve sheets, not `-1/6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    pub longitudinal: i64,
    pub meridional: i64,
}

impl Slope {
    pub fn new(longitudinal: i64, meridional: i64) -> Self {
        Self {
            longitudinal,
            meridional,
        }
    }

    /// meridional / longitudinal in lowest terms.
    pub fn as_fraction(&self) -> ReducedFraction {
        ReducedFraction::new(self.meridional, self.longitudinal)
            .expect("slopes have a positive longitudinal part")
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.longitudinal, self.meridional)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.longitudinal, self.meridional].serialize(s)
    }
}

/// Slopes on `∂N(K1)` and `∂N(K2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlopePair {
    pub k1: Slope,
    pub k2: Slope,
}

/// Interval containing `-d/c` for the group element carrying an edge's base
/// edge. Each edge type uses three of these as its table rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RatioClass {
    /// `-∞ < -d/c < 0`
    Negative,
    /// `0 < -d/c < ∞`
    Positive,
    /// `-d/c ∈ {0, ±∞}`
    ZeroOrInfinity,
    /// `0 < -d/c < 1`
    BetweenZeroAndOne,
    /// `-d/c ∈ {0, 1}`
    ZeroOrOne,
    /// `1/2 < -d/c < ∞`
    AboveHalf,
    /// `-d/c ∈ {1/2, ±∞}`
    HalfOrInfinity,
    /// any other value
    Otherwise,
}

impl RatioClass {
    pub fn name(self) -> &'static str {
        match self {
            RatioClass::Negative => "(-inf, 0)",
            RatioClass::Positive => "(0, inf)",
            RatioClass::ZeroOrInfinity => "{0, inf}",
            RatioClass::BetweenZeroAndOne => "(0, 1)",
            RatioClass::ZeroOrOne => "{0, 1}",
            RatioClass::AboveHalf => "(1/2, inf)",
            RatioClass::HalfOrInfinity => "{1/2, inf}",
            RatioClass::Otherwise => "otherwise",
        }
    }

    /// The row of `edge`'s block that contains the exact value `ratio = -d/c`.
    pub fn classify(edge: EdgeType, ratio: ReducedFraction) -> RatioClass {
        let (p, q) = (ratio.num(), ratio.den());
        let inf = ratio.is_infinite();
        match edge {
            EdgeType::A(_) | EdgeType::B => {
                if inf || p == 0 {
                    RatioClass::ZeroOrInfinity
                } else if p < 0 {
                    RatioClass::Negative
                } else {
                    RatioClass::Positive
                }
            }
            EdgeType::C => {
                if !inf && (p == 0 || p == q) {
                    RatioClass::ZeroOrOne
                } else if !inf && p > 0 && p < q {
                    RatioClass::BetweenZeroAndOne
                } else {
                    RatioClass::Otherwise
                }
            }
            EdgeType::D => {
                if inf || 2 * p == q {
                    RatioClass::HalfOrInfinity
                } else if 2 * p > q {
                    RatioClass::AboveHalf
                } else {
                    RatioClass::Otherwise
                }
            }
        }
    }
}

/// `mu_coef * mu + rho_coef * rho`, kept symbolic so the preferred-longitude
/// correction can substitute values for `mu` and `rho`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinearCount {
    pub mu_coef: i64,
    pub rho_coef: i64,
}

impl LinearCount {
    const ZERO: Self = Self::new(0, 0);
    const RHO: Self = Self::new(0, 1);
    const MU_MINUS_RHO: Self = Self::new(1, -1);

    pub const fn new(mu_coef: i64, rho_coef: i64) -> Self {
        Self { mu_coef, rho_coef }
    }

    pub fn eval(&self, sheets: &SheetData) -> i64 {
        self.mu_coef * sheets.mu + self.rho_coef * sheets.rho
    }

    fn scale(self, k: i64) -> Self {
        Self::new(self.mu_coef * k, self.rho_coef * k)
    }
}

impl std::ops::Add for LinearCount {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.mu_coef + o.mu_coef, self.rho_coef + o.rho_coef)
    }
}

/// Row of the slope table: contributions `(i1, i2)` of a forward edge.
pub fn slope_row(edge: EdgeType, class: RatioClass) -> Result<(LinearCount, LinearCount)> {
    use RatioClass::*;
    let rho = LinearCount::RHO;
    let mr = LinearCount::MU_MINUS_RHO;
    let zero = LinearCount::ZERO;
    let row = match (edge, class) {
        (EdgeType::A(_), Negative) => (rho, rho),
        (EdgeType::A(_), Positive) => (rho.scale(-1), rho.scale(-1)),
        (EdgeType::A(_), ZeroOrInfinity) => (zero, zero),
        (EdgeType::B, Negative) => (mr.scale(-1), zero),
        (EdgeType::B, Positive) => (mr, zero),
        (EdgeType::B, ZeroOrInfinity) => (zero, zero),
        (EdgeType::C, BetweenZeroAndOne) => (rho.scale(-2), zero),
        (EdgeType::C, ZeroOrOne) => (rho.scale(-1), rho),
        (EdgeType::C, Otherwise) => (zero, rho.scale(2)),
        (EdgeType::D, AboveHalf) => (mr, mr),
        (EdgeType::D, HalfOrInfinity) => (zero, mr),
        (EdgeType::D, Otherwise) => (mr.scale(-1), mr),
        (edge, class) => {
            return Err(Error::UnknownRatioClass {
                edge: edge.letter(),
                class: class.name(),
            })
        }
    };
    Ok(row)
}

/// Contribution of one edge to `(i1, i2)`; a backward edge negates the row.
pub fn slope_contribution(
    edge: EdgeType,
    class: RatioClass,
    orientation: Orientation,
    sheets: &SheetData,
) -> Result<(i64, i64)> {
    let (i1, i2) = slope_row(edge, class)?;
    let s = orientation.sign();
    Ok((s * i1.eval(sheets), s * i2.eval(sheets)))
}

/// Which table row each edge type falls in for the paths built here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConventionTable {
    pub a: Option<RatioClass>,
    pub b: Option<RatioClass>,
    pub c: Option<RatioClass>,
    pub d: Option<RatioClass>,
}

impl ConventionTable {
    /// Frozen output of [`calibrate`]. B and C never occur in AD-paths and are
    /// left unset.
    pub const CALIBRATED: ConventionTable = ConventionTable {
        a: Some(RatioClass::Negative),
        b: None,
        c: None,
        d: Some(RatioClass::Otherwise),
    };

    pub const UNCALIBRATED: ConventionTable = ConventionTable {
        a: None,
        b: None,
        c: None,
        d: None,
    };

    pub fn class_for(&self, edge: EdgeType) -> Result<RatioClass> {
        let entry = match edge {
            EdgeType::A(_) => self.a,
            EdgeType::B => self.b,
            EdgeType::C => self.c,
            EdgeType::D => self.d,
        };
        entry.ok_or(Error::UncalibratedConvention(edge.letter()))
    }
}

/// Running sums `i1 = ∂S·λ1`, `i2 = ∂S·λ2` in the non-standard longitudes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SlopeAccumulator {
    pub i1: LinearCount,
    pub i2: LinearCount,
}

impl SlopeAccumulator {
    pub fn add(
        &mut self,
        edge: EdgeType,
        class: RatioClass,
        orientation: Orientation,
    ) -> Result<()> {
        let (i1, i2) = slope_row(edge, class)?;
        let s = orientation.sign();
        self.i1 = self.i1 + i1.scale(s);
        self.i2 = self.i2 + i2.scale(s);
        Ok(())
    }

    /// `i2 = v (mu - rho) + s rho`; this is `v`.
    pub fn v(&self) -> i64 {
        self.i2.mu_coef
    }

    /// Slopes with respect to the preferred longitudes.
    ///
    /// The preferred longitude of `K1` is `(1, i1|mu=1,rho=0)` and that of
    /// `K2` is `(1, i2|mu=0,rho=1)`; subtracting the right multiple of each
    /// leaves `(mu, i1.rho_coef * rho)` and `(rho, i2.mu_coef * mu)`.
    pub fn slopes(&self, sheets: &SheetData) -> SlopePair {
        SlopePair {
            k1: Slope::new(sheets.mu, self.i1.rho_coef * sheets.rho),
            k2: Slope::new(sheets.rho, self.i2.mu_coef * sheets.mu),
        }
    }
}

/// Sums the slope table over an oriented AD-path.
pub fn accumulate_with(path: &EdgePath, table: &ConventionTable) -> Result<SlopeAccumulator> {
    if path.class() != PathClass::AD {
        return Err(Error::WrongClass {
            expected: "AD",
            found: path.class(),
        });
    }
    let mut acc = SlopeAccumulator::default();
    for edge in path.edges() {
        let orientation = edge.orientation.ok_or_else(|| {
            Error::NotApplicable("path must be oriented before accumulating slopes".into())
        })?;
        acc.add(edge.kind, table.class_for(edge.kind)?, orientation)?;
    }
    Ok(acc)
}

pub fn accumulate_slopes(
    path: &EdgePath,
    sheets: &SheetData,
    table: &ConventionTable,
) -> Result<SlopePair> {
    Ok(accumulate_with(path, table)?.slopes(sheets))
}

/// Slopes of the surface carried by the AD-path of `cf`:
/// `((mu, -lk rho), (rho, -lk mu))` for head 0 and the same with `+lk` for head 1.
pub fn closed_form_slopes(cf: &EvenContinuedFraction, sheets: &SheetData) -> SlopePair {
    let lk = cf.linking_number().value;
    let signed = match cf.head() {
        Head::Zero => -lk,
        Head::One => lk,
    };
    SlopePair {
        k1: Slope::new(sheets.mu, signed * sheets.rho),
        k2: Slope::new(sheets.rho, signed * sheets.mu),
    }
}

/// Closed-form slopes for any path class that carries a surface with
/// non-meridional boundary: A- and AB-paths give meridional part zero.
pub fn slopes_for_class(
    class: PathClass,
    cf: &EvenContinuedFraction,
    sheets: &SheetData,
) -> Result<SlopePair> {
    match class {
        PathClass::AD => Ok(closed_form_slopes(cf, sheets)),
        PathClass::A | PathClass::AB => Ok(SlopePair {
            k1: Slope::new(sheets.mu, 0),
            k2: Slope::new(sheets.rho, 0),
        }),
        PathClass::D => Err(Error::NotApplicable(
            "D-paths carry surfaces with meridional boundary on K1".into(),
        )),
    }
}

/// Expansions whose accumulated slopes fix the convention table.
pub fn calibration_seeds() -> Vec<EvenContinuedFraction> {
    vec![
        EvenContinuedFraction::new(Head::Zero, vec![4]).expect("valid"),
        EvenContinuedFraction::new(Head::One, vec![-2, 2, -2]).expect("valid"),
    ]
}

/// Every uniform choice of A- and D-rows under which the accumulated slopes
/// of the seed paths equal the closed form, for a few sheet counts.
pub fn calibrate() -> Vec<ConventionTable> {
    use crate::diagram::{build_ad_path, orient_path};
    const A_ROWS: [RatioClass; 3] = [
        RatioClass::Negative,
        RatioClass::Positive,
        RatioClass::ZeroOrInfinity,
    ];
    const D_ROWS: [RatioClass; 3] = [
        RatioClass::AboveHalf,
        RatioClass::HalfOrInfinity,
        RatioClass::Otherwise,
    ];
    let seeds: Vec<_> = calibration_seeds()
        .into_iter()
        .map(|cf| {
            let path = orient_path(&build_ad_path(&cf)).expect("AD-paths orient");
            (cf, path)
        })
        .collect();
    let sheet_samples: Vec<SheetData> = [(2, 1, 2), (12, 1, 2), (7, 2, 1)]
        .iter()
        .map(|&(mu, rho, n)| SheetData::new(mu, rho, n).expect("valid samples"))
        .collect();

    let mut found = Vec::new();
    for a in A_ROWS {
        for d in D_ROWS {
            let table = ConventionTable {
                a: Some(a),
                b: None,
                c: None,
                d: Some(d),
            };
            let ok = seeds.iter().all(|(cf, path)| {
                sheet_samples.iter().all(|sheets| {
                    accumulate_slopes(path, sheets, &table).ok()
                        == Some(closed_form_slopes(cf, sheets))
                })
            });
            if ok {
                found.push(table);
            }
        }
    }
    found
}
