//! Edge-paths drawn in the Poincaré disk.
//!
//! Fractions `p/q` sit on the unit circle at the image of `p/q` under
//! `z ↦ -(z - (1+i)/2) / (z - (1-i)/2)`; Farey edges become geodesic arcs.
//! Rectangle points of D- and B-groups have no fraction of their own and are
//! drawn inside the disk next to the convergent they turn around.

use std::fmt::Write;

use bridgegenus::diagram::{EdgePath, Orientation, Vertex};
use bridgegenus::rationals::ReducedFraction;
use num_complex::Complex64;

const ANTIPODAL_TOLERANCE: f64 = 1e-9;

/// Image of `x ∈ ℚ ∪ {∞}` on the unit circle.
pub fn disk_point(x: ReducedFraction) -> Complex64 {
    if x.is_infinite() {
        return Complex64::new(-1.0, 0.0);
    }
    let z = Complex64::new(x.to_f64(), 0.0);
    let a = Complex64::new(0.5, 0.5);
    let b = Complex64::new(0.5, -0.5);
    -(z - a) / (z - b)
}

pub fn are_antipodal(u: Complex64, v: Complex64) -> bool {
    (u + v).norm() < ANTIPODAL_TOLERANCE
}

fn vertex_point(v: &Vertex, path: &EdgePath) -> Complex64 {
    match v {
        Vertex::Fraction(f) => disk_point(*f),
        Vertex::Interior { group, step, pivot } => {
            let steps = path
                .edges()
                .iter()
                .filter_map(|e| match e.to {
                    Vertex::Interior {
                        group: g, step: s, ..
                    } if g == *group => Some(s),
                    _ => None,
                })
                .max()
                .unwrap_or(0)
                .max(*step);
            let depth = 0.12 + 0.5 * (*step as f64 + 1.0) / (steps as f64 + 2.0);
            disk_point(*pivot) * (1.0 - depth)
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// SVG coordinates: y grows downwards.
fn xy(z: Complex64) -> (String, String) {
    (num(z.re), num(-z.im))
}

/// Path data for the geodesic from `u` to `v` (both on the unit circle), and
/// the point of the geodesic nearest the origin for its label.
fn geodesic(u: Complex64, v: Complex64) -> (String, Complex64) {
    let (ux, uy) = xy(u);
    let (vx, vy) = xy(v);
    if are_antipodal(u, v) {
        return (format!("M {ux} {uy} L {vx} {vy}"), Complex64::new(0.0, 0.0));
    }
    let delta = (u.conj() * v).arg().abs();
    let radius = (delta / 2.0).tan();
    let mid_dir = (u + v) / (u + v).norm();
    let center = mid_dir / (delta / 2.0).cos();
    let label = center - mid_dir * radius;
    let sweep = if u.re * v.im - u.im * v.re > 0.0 {
        1
    } else {
        0
    };
    let r = num(radius);
    (
        format!("M {ux} {uy} A {r} {r} 0 0 {sweep} {vx} {vy}"),
        label,
    )
}

fn segment(u: Complex64, v: Complex64) -> (String, Complex64) {
    let (ux, uy) = xy(u);
    let (vx, vy) = xy(v);
    (format!("M {ux} {uy} L {vx} {vy}"), (u + v) / 2.0)
}

fn label(v: &Vertex) -> String {
    match v {
        Vertex::Fraction(f) => f.to_string(),
        other => other.to_string(),
    }
}

/// Renders `path` as a standalone SVG 1.1 document. The output depends only
/// on the path.
pub fn render_svg(path: &EdgePath) -> String {
    let mut out = String::new();
    let title = match path.source() {
        Some(cf) => format!("{}-path of {cf}", path.class()),
        None => format!("{}-path", path.class()),
    };
    out.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
        "width=\"600\" height=\"600\" viewBox=\"-1.300000 -1.300000 2.600000 2.600000\">\n",
    ));
    let _ = writeln!(out, "<title>{}</title>", escape(&title));
    out.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" ",
        "markerWidth=\"4\" markerHeight=\"4\" orient=\"auto-start-reverse\">",
        "<path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n",
        "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.005\"/>\n",
    ));

    out.push_str("<g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.008\">\n");
    let mut edge_labels = Vec::new();
    for (i, e) in path.edges().iter().enumerate() {
        let u = vertex_point(&e.from, path);
        let v = vertex_point(&e.to, path);
        let (d, at) = match (&e.from, &e.to) {
            (Vertex::Fraction(_), Vertex::Fraction(_)) => geodesic(u, v),
            _ => segment(u, v),
        };
        let marker = match e.orientation {
            Some(Orientation::Forward) => " marker-end=\"url(#arrow)\"",
            Some(Orientation::Backward) => " marker-start=\"url(#arrow)\"",
            None => "",
        };
        let _ = writeln!(out, "<path id=\"e{i}\" d=\"{d}\"{marker}/>");
        edge_labels.push((at, e.kind.letter()));
    }
    out.push_str("</g>\n");

    out.push_str("<g font-family=\"sans-serif\" font-size=\"0.06\" fill=\"#b03030\" text-anchor=\"middle\">\n");
    for (at, letter) in edge_labels {
        let (x, y) = xy(at);
        let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\">{letter}</text>");
    }
    out.push_str("</g>\n");

    out.push_str("<g font-family=\"sans-serif\" font-size=\"0.06\" fill=\"#000000\" text-anchor=\"middle\">\n");
    let mut drawn: Vec<Vertex> = Vec::new();
    for v in path.vertices() {
        if drawn.contains(&v) {
            continue;
        }
        drawn.push(v);
        let p = vertex_point(&v, path);
        let (x, y) = xy(p);
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"0.012\"/>");
        if let Vertex::Fraction(_) = v {
            let (lx, ly) = xy(p * 1.1);
            let _ = writeln!(
                out,
                "<text x=\"{lx}\" y=\"{ly}\">{}</text>",
                escape(&label(&v))
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64, d: i64) -> ReducedFraction {
        ReducedFraction::new(n, d).unwrap()
    }

    #[test]
    fn special_points() {
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-12;
        assert!(close(
            disk_point(ReducedFraction::INFINITY),
            Complex64::new(-1.0, 0.0)
        ));
        assert!(close(disk_point(f(0, 1)), Complex64::new(0.0, -1.0)));
        assert!(close(disk_point(f(1, 1)), Complex64::new(0.0, 1.0)));
        assert!(close(disk_point(f(1, 2)), Complex64::new(1.0, 0.0)));
        for (n, d) in [(3, 8), (-5, 7), (11, 2)] {
            assert!((disk_point(f(n, d)).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn antipodes() {
        assert!(are_antipodal(
            disk_point(ReducedFraction::INFINITY),
            disk_point(f(1, 2))
        ));
        assert!(are_antipodal(disk_point(f(0, 1)), disk_point(f(1, 1))));
        assert!(!are_antipodal(
            disk_point(ReducedFraction::INFINITY),
            disk_point(f(0, 1))
        ));
    }

    #[test]
    fn geodesic_shapes() {
        let (d, _) = geodesic(disk_point(ReducedFraction::INFINITY), disk_point(f(1, 2)));
        assert!(d.contains(" L "));
        let (d, label) = geodesic(disk_point(ReducedFraction::INFINITY), disk_point(f(0, 1)));
        assert!(d.contains(" A 1.000000 1.000000 "));
        assert!(label.norm() < 1.0);
    }
}
