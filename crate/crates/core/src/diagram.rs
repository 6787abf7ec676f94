//! Symbolic edge-paths in the diagrams `D_1`, `D_0` and `D_t`.
//!
//! Vertices of the diagrams are fractions (slopes of arcs on a level sphere).
//! An edge-path runs from `1/0` to `β/α`; its edges carry one of the labels
//! A, B, C, D. Only four path shapes are built here, one per surface family:
//!
//! * A-paths walk the convergents of an even expansion in the Farey diagram.
//! * AD-paths replace each turn around an odd-denominator convergent by a
//!   group of D-edges: `A D..D A A D..D A ... A D..D A`.
//! * AB-paths do the same with a pair of B-edges: `ABBA ABBA ... ABBA`.
//! * D-paths live in `D_0` and consist of D-edges only.
//!
//! Vertices that lie inside the inscribed rectangles of `D_t` are kept
//! symbolic ([`Vertex::Interior`]): nothing downstream needs their position.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rationals::{EvenContinuedFraction, Head, ReducedFraction};

/// Residue of a reduced fraction `p/q` with `p` and `q` taken mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mod2Class {
    /// `0/1`: even numerator, odd denominator.
    ZeroOne,
    /// `1/0`: odd numerator, even denominator.
    OneZero,
    /// `1/1`: both odd.
    OneOne,
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mod2Class::ZeroOne => "0/1",
            Mod2Class::OneZero => "1/0",
            Mod2Class::OneOne => "1/1",
        })
    }
}

pub fn vertex_mod2(v: ReducedFraction) -> Mod2Class {
    match (v.num().rem_euclid(2), v.den().rem_euclid(2)) {
        (0, 1) => Mod2Class::ZeroOne,
        (1, 0) => Mod2Class::OneZero,
        (1, 1) => Mod2Class::OneOne,
        // both even cannot happen for a reduced fraction
        _ => unreachable!("{v} is not reduced"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ASubtype {
    A0,
    A1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeType {
    A(ASubtype),
    B,
    C,
    D,
}

impl EdgeType {
    pub fn letter(self) -> char {
        match self {
            EdgeType::A(_) => 'A',
            EdgeType::B => 'B',
            EdgeType::C => 'C',
            EdgeType::D => 'D',
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, EdgeType::A(_))
    }

    pub fn a_subtype(self) -> Option<ASubtype> {
        match self {
            EdgeType::A(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeType::A(ASubtype::A0) => f.write_str("A0"),
            EdgeType::A(ASubtype::A1) => f.write_str("A1"),
            other => write!(f, "{}", other.letter()),
        }
    }
}

impl Serialize for EdgeType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Type of the Farey edge `⟨u, v⟩` read from the mod-2 classes of its ends:
/// `{1/0, 0/1}` is A0, `{1/0, 1/1}` is A1 and `{0/1, 1/1}` is the diagonal C.
pub fn classify_farey_edge(u: ReducedFraction, v: ReducedFraction) -> Result<EdgeType> {
    if !u.is_farey_neighbor(&v) {
        return Err(Error::NotFareyEdge(u.to_string(), v.to_string()));
    }
    use Mod2Class::*;
    Ok(match (vertex_mod2(u), vertex_mod2(v)) {
        (OneZero, ZeroOne) | (ZeroOne, OneZero) => EdgeType::A(ASubtype::A0),
        (OneZero, OneOne) | (OneOne, OneZero) => EdgeType::A(ASubtype::A1),
        (ZeroOne, OneOne) | (OneOne, ZeroOne) => EdgeType::C,
        _ => unreachable!("Farey neighbours have distinct classes"),
    })
}

/// Agreement of an edge with the image `g(e_0)` of its base edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Backward => -1,
        }
    }

    pub fn arrow(self) -> &'static str {
        match self {
            Orientation::Forward => "->",
            Orientation::Backward => "<-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Fraction(ReducedFraction),
    /// A point on an inscribed rectangle of `D_t`, `step` positions into
    /// the edge group `group` that turns around the convergent `pivot`.
    Interior {
        group: usize,
        step: usize,
        pivot: ReducedFraction,
    },
}

impl Vertex {
    pub fn fraction(&self) -> Option<ReducedFraction> {
        match self {
            Vertex::Fraction(f) => Some(*f),
            Vertex::Interior { .. } => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Fraction(x) => write!(f, "{x}"),
            Vertex::Interior { group, step, pivot } => write!(f, "x{group}.{step}@{pivot}"),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    #[serde(rename = "type")]
    pub kind: EdgeType,
    pub orientation: Option<Orientation>,
    /// 0-based index of the expansion entry whose turn this edge belongs to
    /// (B- and D-edges only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<usize>,
}

impl Edge {
    fn new(from: Vertex, to: Vertex, kind: EdgeType, entry: Option<usize>) -> Self {
        Self {
            from,
            to,
            kind,
            orientation: None,
            entry,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathClass {
    A,
    AB,
    AD,
    D,
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathClass::A => "A",
            PathClass::AB => "AB",
            PathClass::AD => "AD",
            PathClass::D => "D",
        })
    }
}

impl Serialize for PathClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePath {
    edges: Vec<Edge>,
    class: PathClass,
    source: Option<EvenContinuedFraction>,
}

impl EdgePath {
    /// A walk in the Farey diagram `D_1` through the given fractions.
    /// Edges are typed by the mod-2 classes of their ends.
    pub fn from_farey_vertices(vertices: &[ReducedFraction]) -> Result<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| {
                let kind = classify_farey_edge(w[0], w[1])?;
                Ok(Edge::new(
                    Vertex::Fraction(w[0]),
                    Vertex::Fraction(w[1]),
                    kind,
                    None,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            edges,
            class: PathClass::A,
            source: None,
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn class(&self) -> PathClass {
        self.class
    }

    pub fn source(&self) -> Option<&EvenContinuedFraction> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.edges.first().map(|e| e.from).into_iter().collect();
        out.extend(self.edges.iter().map(|e| e.to));
        out
    }

    /// Edge letters without separators, e.g. `"ADAADA"`.
    pub fn type_sequence(&self) -> String {
        self.edges.iter().map(|e| e.kind.letter()).collect()
    }

    pub fn count(&self, letter: char) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind.letter() == letter)
            .count()
    }
}

/// `β_{-1} = 1/0` followed by the convergents `β_0, ..., β_k`.
fn path_vertices(cf: &EvenContinuedFraction) -> Vec<ReducedFraction> {
    let mut v = vec![ReducedFraction::INFINITY];
    v.extend(cf.convergents());
    v
}

pub fn build_a_path(cf: &EvenContinuedFraction) -> EdgePath {
    let vertices = path_vertices(cf);
    let mut path = EdgePath::from_farey_vertices(&vertices)
        .expect("consecutive convergents are Farey neighbours");
    path.source = Some(cf.clone());
    path
}

/// Shared skeleton of AB- and AD-paths: for each group `g` an A-edge into the
/// rectangle around `β_{2g}`, `inner` edges of type `kind`, and an A-edge out
/// to `β_{2g+1}`.
fn grouped_path(
    cf: &EvenContinuedFraction,
    class: PathClass,
    kind: EdgeType,
    inner: impl Fn(usize) -> usize,
) -> EdgePath {
    let v = path_vertices(cf); // v[i + 1] = β_i
    let groups = cf.len().div_ceil(2);
    let mut edges = Vec::new();
    for g in 0..groups {
        let entry = 2 * g;
        let start = v[entry];
        let pivot = v[entry + 1];
        let end = v[entry + 2];
        let n = inner(entry);
        let at = |step| Vertex::Interior {
            group: g,
            step,
            pivot,
        };
        let into = classify_farey_edge(start, pivot).expect("convergents are Farey neighbours");
        let out = classify_farey_edge(pivot, end).expect("convergents are Farey neighbours");
        edges.push(Edge::new(Vertex::Fraction(start), at(0), into, None));
        for step in 0..n {
            edges.push(Edge::new(at(step), at(step + 1), kind, Some(entry)));
        }
        edges.push(Edge::new(at(n), Vertex::Fraction(end), out, None));
    }
    EdgePath {
        edges,
        class,
        source: Some(cf.clone()),
    }
}

/// `A D^{|r_1|} A A D^{|r_3|} A ... A D^{|r_k|} A`.
pub fn build_ad_path(cf: &EvenContinuedFraction) -> EdgePath {
    let halves: Vec<i64> = cf.half_entries().collect();
    grouped_path(cf, PathClass::AD, EdgeType::D, |entry| {
        halves[entry].unsigned_abs() as usize
    })
}

/// `ABBA` repeated `(k + 1) / 2` times. Exists only when `k >= 3` and every
/// `|r_t| >= 2`; otherwise the path would not be minimal.
pub fn build_ab_path(cf: &EvenContinuedFraction) -> Result<EdgePath> {
    if cf.len() < 3 {
        return Err(Error::NotApplicable(format!(
            "{cf}: an AB-path needs at least three entries"
        )));
    }
    if let Some(r) = cf.half_entries().find(|r| r.abs() < 2) {
        return Err(Error::NotApplicable(format!(
            "{cf}: entry 2*({r}) has |r| < 2, no minimal AB-path"
        )));
    }
    Ok(grouped_path(cf, PathClass::AB, EdgeType::B, |_| 2))
}

/// The all-D path of `D_0` for a head-0 expansion: `|r_t|` D-edges per entry.
///
/// The first group follows `1/0, 1/2r, 1/4r, ..., 1/2r_1 = β_1` with
/// `r = sign(r_1)`; later groups end at symbolic rectangle points except for
/// the final vertex `β/α`.
pub fn build_d_path(cf: &EvenContinuedFraction) -> Result<EdgePath> {
    if cf.head() != Head::Zero {
        return Err(Error::InvalidHead(1));
    }
    let conv = cf.convergents();
    let target = *conv.last().expect("at least one convergent");
    let halves: Vec<i64> = cf.half_entries().collect();
    let k = halves.len();
    let mut edges = Vec::new();
    let mut current = Vertex::Fraction(ReducedFraction::INFINITY);
    for (t, &r) in halves.iter().enumerate() {
        let steps = r.unsigned_abs() as usize;
        for j in 1..=steps {
            let next = if t == 0 {
                let s = r.signum();
                Vertex::Fraction(ReducedFraction::new(1, 2 * s * j as i64).expect("nonzero"))
            } else if t == k - 1 && j == steps {
                Vertex::Fraction(target)
            } else {
                Vertex::Interior {
                    group: t,
                    step: j,
                    pivot: conv[t],
                }
            };
            edges.push(Edge::new(current, next, EdgeType::D, Some(t)));
            current = next;
        }
    }
    Ok(EdgePath {
        edges,
        class: PathClass::D,
        source: Some(cf.clone()),
    })
}

/// No two consecutive edges bound a common face of the diagram.
///
/// For walks in `D_1` the edges `⟨u, v⟩` and `⟨v, w⟩` lie on one ideal
/// triangle exactly when `⟨u, w⟩` is its third side, i.e. when `u` and `w`
/// are Farey neighbours; a backtrack has `det(u, w) = 0`. So the walk is
/// minimal iff `|det(u, w)| >= 2` at every interior vertex.
///
/// The grouped classes are minimal by construction; for them this checks
/// that the path has the shape its source expansion dictates.
pub fn is_minimal(path: &EdgePath) -> bool {
    match path.class {
        PathClass::A => {
            let Some(vs) = path
                .vertices()
                .iter()
                .map(Vertex::fraction)
                .collect::<Option<Vec<_>>>()
            else {
                return false;
            };
            vs.windows(3).all(|w| w[0].det(&w[2]).abs() >= 2)
        }
        PathClass::AD => match &path.source {
            Some(cf) => {
                let expected = build_ad_path(cf);
                uniform_a_subtype(path).is_some()
                    && path.type_sequence() == expected.type_sequence()
            }
            None => false,
        },
        PathClass::AB => match &path.source {
            Some(cf) => match build_ab_path(cf) {
                Ok(expected) => {
                    let blocks = path.len() / 4;
                    uniform_a_subtype(path).is_some()
                        && blocks >= 2
                        && path.type_sequence() == "ABBA".repeat(blocks)
                        && path.type_sequence() == expected.type_sequence()
                }
                Err(_) => false,
            },
            None => false,
        },
        PathClass::D => match &path.source {
            Some(cf) => {
                let total: u64 = cf.half_entries().map(|r| r.unsigned_abs()).sum();
                path.edges.iter().all(|e| e.kind == EdgeType::D) && path.len() as u64 == total
            }
            None => false,
        },
    }
}

/// The common A-subtype of all A-edges, if there is exactly one.
pub fn uniform_a_subtype(path: &EdgePath) -> Option<ASubtype> {
    let mut subtypes = path.edges.iter().filter_map(|e| e.kind.a_subtype());
    let first = subtypes.next()?;
    subtypes.all(|s| s == first).then_some(first)
}

/// Fills in edge orientations of an AD-path.
///
/// A-edges alternate `→A (←A →A) ... (←A →A) ←A`. A D-edge group turning
/// around the entry `2 r_h` is `←D` when `r_h > 0` and `→D` when `r_h < 0`
/// for head 0; head 1 swaps the two.
pub fn orient_path(path: &EdgePath) -> Result<EdgePath> {
    if path.class != PathClass::AD {
        return Err(Error::WrongClass {
            expected: "AD",
            found: path.class,
        });
    }
    let cf = path.source.as_ref().ok_or(Error::WrongClass {
        expected: "AD (built from an expansion)",
        found: path.class,
    })?;
    let halves: Vec<i64> = cf.half_entries().collect();
    let mut out = path.clone();
    let mut a_index = 0usize;
    for edge in &mut out.edges {
        let o = match edge.kind {
            EdgeType::A(_) => {
                let o = if a_index.is_multiple_of(2) {
                    Orientation::Forward
                } else {
                    Orientation::Backward
                };
                a_index += 1;
                o
            }
            EdgeType::D => {
                let r = halves[edge.entry.expect("D-edges record their entry")];
                match (cf.head(), r > 0) {
                    (Head::Zero, true) | (Head::One, false) => Orientation::Backward,
                    (Head::Zero, false) | (Head::One, true) => Orientation::Forward,
                }
            }
            other => {
                return Err(Error::NotApplicable(format!(
                    "unexpected {other}-edge in an AD-path"
                )))
            }
        };
        edge.orientation = Some(o);
    }
    Ok(out)
}
