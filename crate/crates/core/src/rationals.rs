//! Exact fractions, even continued fractions and the linking number they encode.
//!
//! A 2-bridge link is named by a reduced fraction `β/α` with `α` even. Such a
//! fraction has exactly two continued fraction expansions whose entries are
//! all even: one starting `[0; ...]` and one starting `[1; ...]`, both of odd
//! length. Everything downstream (edge-paths, genus, slopes) is read off
//! these two expansions.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// A rational number `num/den` in lowest terms, or the point `1/0` at infinity.
///
/// The denominator is never negative. The value `1/0` is the only fraction
/// with a zero denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: i64,
    den: i64,
}

impl ReducedFraction {
    pub const INFINITY: ReducedFraction = ReducedFraction { num: 1, den: 0 };
    pub const ZERO: ReducedFraction = ReducedFraction { num: 0, den: 1 };
    pub const ONE: ReducedFraction = ReducedFraction { num: 1, den: 1 };

    /// Reduces `num/den` to lowest terms with the sign carried by the numerator.
    /// Any `k/0` with `k != 0` becomes `1/0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return if num == 0 {
                Err(Error::ZeroOverZero)
            } else {
                Ok(Self::INFINITY)
            };
        }
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Self {
            num: sign * (num / g),
            den: sign * (den / g),
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// The determinant `p1 q2 - p2 q1` of two fractions viewed as column vectors.
    /// Farey neighbours are exactly the pairs with determinant `±1`.
    pub fn det(&self, other: &ReducedFraction) -> i64 {
        self.num * other.den - other.num * self.den
    }

    pub fn is_farey_neighbor(&self, other: &ReducedFraction) -> bool {
        self.det(other).abs() == 1
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }

    /// Checks the parameters of a 2-bridge link: `0 < β < α`, `α` even, reduced.
    pub fn validate_link_parameter(&self) -> Result<()> {
        if self.is_infinite() {
            return Err(Error::InvalidFraction(
                "1/0 does not name a 2-bridge link".into(),
            ));
        }
        if self.den % 2 != 0 {
            return Err(Error::InvalidFraction(format!(
                "{self}: denominator must be even for a two-component link"
            )));
        }
        if self.num <= 0 || self.num >= self.den {
            return Err(Error::InvalidFraction(format!(
                "{self}: need 0 < beta < alpha"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for ReducedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFraction(format!("cannot parse {s:?} as p/q"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = num.parse::<i64>().map_err(|_| bad())?;
        let den = den.parse::<i64>().map_err(|_| bad())?;
        Self::new(num, den)
    }
}

/// Reduces `num/den`. Thin wrapper over [`ReducedFraction::new`].
pub fn reduce(num: i64, den: i64) -> Result<ReducedFraction> {
    ReducedFraction::new(num, den)
}

/// Head of an even continued fraction: `[0; ...]` or `[1; ...]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u8")]
pub enum Head {
    Zero,
    One,
}

impl Head {
    pub fn value(self) -> i64 {
        match self {
            Head::Zero => 0,
            Head::One => 1,
        }
    }

    pub fn other(self) -> Head {
        match self {
            Head::Zero => Head::One,
            Head::One => Head::Zero,
        }
    }
}

impl From<Head> for u8 {
    fn from(h: Head) -> u8 {
        h.value() as u8
    }
}

impl TryFrom<u8> for Head {
    type Error = Error;

    fn try_from(v: u8) -> Result<Head> {
        match v {
            0 => Ok(Head::Zero),
            1 => Ok(Head::One),
            _ => Err(Error::InvalidContinuedFraction(format!(
                "head must be 0 or 1, got {v}"
            ))),
        }
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `[head; b1, ..., bk]` with every `b` even and nonzero and `k` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EvenContinuedFraction {
    head: Head,
    entries: Vec<i64>,
}

impl EvenContinuedFraction {
    pub fn new(head: Head, entries: Vec<i64>) -> Result<Self> {
        if entries.len().is_multiple_of(2) {
            return Err(Error::InvalidContinuedFraction(format!(
                "length must be odd, got {}",
                entries.len()
            )));
        }
        if let Some(b) = entries.iter().find(|&&b| b == 0 || b % 2 != 0) {
            return Err(Error::InvalidContinuedFraction(format!(
                "entry {b} is not a nonzero even integer"
            )));
        }
        Ok(Self { head, entries })
    }

    pub fn head(&self) -> Head {
        self.head
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Number of entries `k` after the head.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The halves `r_t = b_t / 2`.
    pub fn half_entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().map(|b| b / 2)
    }

    /// Halves at the odd positions `1, 3, ..., k` (1-based).
    pub fn odd_half_entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().step_by(2).map(|b| b / 2)
    }

    /// Halves at the even positions `2, 4, ..., k-1` (1-based).
    pub fn even_half_entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().skip(1).step_by(2).map(|b| b / 2)
    }

    /// Exact value of the nested fraction.
    pub fn evaluate(&self) -> Result<ReducedFraction> {
        evaluate_cf(self)
    }

    pub fn convergents(&self) -> Vec<ReducedFraction> {
        convergents(self)
    }

    pub fn linking_number(&self) -> LinkingNumber {
        linking_number(self)
    }

    /// The same expansion with every entry negated.
    pub fn negated(&self) -> Self {
        Self {
            head: self.head,
            entries: self.entries.iter().map(|b| -b).collect(),
        }
    }
}

impl fmt::Display for EvenContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.head)?;
        for (i, b) in self.entries.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{b}")?;
        }
        write!(f, "]")
    }
}

/// The signed linking number of the two components, as read from one expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingNumber {
    pub value: i64,
    pub magnitude: i64,
}

impl LinkingNumber {
    pub fn new(value: i64) -> Self {
        Self {
            value,
            magnitude: value.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Even continued fraction of `x` with the requested head.
///
/// Repeatedly takes the even integer nearest to the current tail. The tail
/// never sits exactly between two even integers: the numerator and
/// denominator of every tail have opposite parity, so it is never an odd
/// integer.
pub fn even_cf(x: ReducedFraction, head: Head) -> Result<EvenContinuedFraction> {
    x.validate_link_parameter()?;
    // y = 1 / (x - head), kept as num/den with den > 0
    let (mut num, mut den) = normalize(x.den, x.num - head.value() * x.den);
    let mut entries = Vec::new();
    loop {
        let floor = num.div_euclid(2 * den) * 2;
        let offset = num - floor * den; // y - floor, scaled by den; in [0, 2 den)
        let b = match offset.cmp(&den) {
            std::cmp::Ordering::Less => floor,
            std::cmp::Ordering::Greater => floor + 2,
            std::cmp::Ordering::Equal => {
                return Err(Error::InvalidFraction(format!(
                    "{x}: tail {num}/{den} has no unique nearest even integer"
                )))
            }
        };
        entries.push(b);
        let rem = num - b * den;
        if rem == 0 {
            break;
        }
        (num, den) = normalize(den, rem);
    }
    EvenContinuedFraction::new(head, entries)
}

fn normalize(num: i64, den: i64) -> (i64, i64) {
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Both even expansions `(head 0, head 1)` of a link parameter.
pub fn even_cf_pair(x: ReducedFraction) -> Result<(EvenContinuedFraction, EvenContinuedFraction)> {
    Ok((even_cf(x, Head::Zero)?, even_cf(x, Head::One)?))
}

pub fn evaluate_cf(cf: &EvenContinuedFraction) -> Result<ReducedFraction> {
    // tail value as num/den, starting from the innermost entry
    let (mut num, mut den) = (0i64, 1i64);
    for &b in cf.entries.iter().rev() {
        // b + num/den, inverted
        let top = b
            .checked_mul(den)
            .and_then(|v| v.checked_add(num))
            .ok_or(Error::Overflow("continued fraction value"))?;
        if top == 0 {
            return Err(Error::DivisionByZero);
        }
        (num, den) = (den, top);
    }
    ReducedFraction::new(cf.head.value() * den + num, den)
}

/// Convergents `β_0/α_0 = head/1, β_1/α_1, ..., β_k/α_k` by the continuant recurrence.
pub fn convergents(cf: &EvenContinuedFraction) -> Vec<ReducedFraction> {
    let (mut p_prev, mut q_prev) = (1i64, 0i64);
    let (mut p, mut q) = (cf.head.value(), 1i64);
    let mut out = Vec::with_capacity(cf.len() + 1);
    out.push(ReducedFraction::new(p, q).expect("q_0 = 1"));
    for &b in &cf.entries {
        (p_prev, p) = (p, b * p + p_prev);
        (q_prev, q) = (q, b * q + q_prev);
        // consecutive continuants are coprime, so only the sign needs fixing
        out.push(ReducedFraction::new(p, q).expect("continuants are never both zero"));
    }
    out
}

/// `lk(K1, K2) = r_1 + r_3 + ... + r_k`, summing halves at odd positions.
pub fn linking_number(cf: &EvenContinuedFraction) -> LinkingNumber {
    LinkingNumber::new(cf.odd_half_entries().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> ReducedFraction {
        ReducedFraction::new(n, d).unwrap()
    }

    fn cf(head: Head, entries: &[i64]) -> EvenContinuedFraction {
        EvenContinuedFraction::new(head, entries.to_vec()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(6, 4).unwrap(), frac(3, 2));
        assert_eq!((frac(3, 2).num(), frac(3, 2).den()), (3, 2));
        let r = reduce(-3, -8).unwrap();
        assert_eq!((r.num(), r.den()), (3, 8));
        assert_eq!(reduce(5, 0).unwrap(), ReducedFraction::INFINITY);
        assert_eq!(reduce(-5, 0).unwrap(), ReducedFraction::INFINITY);
        assert_eq!(reduce(0, 0), Err(Error::ZeroOverZero));
        let r = reduce(3, -6).unwrap();
        assert_eq!((r.num(), r.den()), (-1, 2));
        assert_eq!(reduce(0, -7).unwrap(), ReducedFraction::ZERO);
    }

    #[test]
    fn parse_fraction() {
        assert_eq!("3/8".parse::<ReducedFraction>().unwrap(), frac(3, 8));
        assert_eq!(" 6 / 16".parse::<ReducedFraction>().unwrap(), frac(3, 8));
        assert!("3/x".parse::<ReducedFraction>().is_err());
        assert_eq!("0/0".parse::<ReducedFraction>(), Err(Error::ZeroOverZero));
    }

    #[test]
    fn even_cf_examples() {
        assert_eq!(
            even_cf(frac(3, 8), Head::Zero).unwrap(),
            cf(Head::Zero, &[2, 2, -2])
        );
        assert_eq!(
            even_cf(frac(3, 8), Head::One).unwrap(),
            cf(Head::One, &[-2, 2, 2])
        );
        assert_eq!(
            even_cf(frac(1, 4), Head::Zero).unwrap(),
            cf(Head::Zero, &[4])
        );
        assert_eq!(
            even_cf(frac(5, 12), Head::One).unwrap(),
            cf(Head::One, &[-2, 4, -2])
        );
    }

    #[test]
    fn even_cf_rejects_bad_parameters() {
        assert!(matches!(
            even_cf(frac(1, 3), Head::Zero),
            Err(Error::InvalidFraction(_))
        ));
        assert!(matches!(
            even_cf(frac(9, 8), Head::Zero),
            Err(Error::InvalidFraction(_))
        ));
        assert!(matches!(
            even_cf(frac(-3, 8), Head::One),
            Err(Error::InvalidFraction(_))
        ));
        assert!(even_cf(ReducedFraction::INFINITY, Head::Zero).is_err());
    }

    #[test]
    fn structural_validation() {
        assert!(EvenContinuedFraction::new(Head::Zero, vec![2, 2]).is_err());
        assert!(EvenContinuedFraction::new(Head::Zero, vec![3]).is_err());
        assert!(EvenContinuedFraction::new(Head::Zero, vec![2, 0, 2]).is_err());
        assert!(EvenContinuedFraction::new(Head::Zero, vec![]).is_err());
        assert!(Head::try_from(2).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate_cf(&cf(Head::Zero, &[4])).unwrap(), frac(1, 4));
        assert_eq!(
            evaluate_cf(&cf(Head::Zero, &[2, 2, -2])).unwrap(),
            frac(3, 8)
        );
        assert_eq!(
            evaluate_cf(&cf(Head::One, &[-2, 2, -2])).unwrap(),
            frac(1, 4)
        );
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(
            convergents(&cf(Head::Zero, &[2, 2, 2])),
            vec![frac(0, 1), frac(1, 2), frac(2, 5), frac(5, 12)]
        );
        assert_eq!(
            convergents(&cf(Head::Zero, &[4])),
            vec![frac(0, 1), frac(1, 4)]
        );
        assert_eq!(
            convergents(&cf(Head::Zero, &[2, 2, -2])),
            vec![frac(0, 1), frac(1, 2), frac(2, 5), frac(3, 8)]
        );
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_number(&cf(Head::Zero, &[2, 2, -2])).value, 0);
        assert_eq!(linking_number(&cf(Head::Zero, &[4])).value, 2);
        let lk = linking_number(&cf(Head::One, &[-2, 2, -2]));
        assert_eq!((lk.value, lk.magnitude), (-2, 2));
    }

    #[test]
    fn display() {
        assert_eq!(cf(Head::One, &[-2, 4, -2]).to_string(), "[1; -2, 4, -2]");
        assert_eq!(frac(-1, 6).to_string(), "-1/6");
        assert_eq!(ReducedFraction::INFINITY.to_string(), "1/0");
    }
}
