//! Minimal deterministic SVG output. Coordinates are exact rationals
//! rounded to three decimals only at render time.

use std::fmt::Write;

use wonderfan::affine::Alcove;
use wonderfan::lattice::rational::Rat;
use wonderfan::lattice::Fan;
use wonderfan::voronoi::{voronoi_cell, QuadraticForm};

use crate::error::CliError;

const SIZE: f64 = 400.0;

fn f(q: &Rat) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

struct Element {
    name: &'static str,
    attrs: String,
}

/// A canvas in user coordinates, mapped to a square viewport with y up.
pub struct Canvas {
    scale: f64,
    origin_y: f64,
    elements: Vec<Element>,
}

impl Canvas {
    fn new(extent: f64) -> Self {
        let extent = if extent > 0.0 { extent } else { 1.0 };
        Canvas {
            scale: SIZE / (2.2 * extent),
            origin_y: SIZE / 2.0,
            elements: Vec::new(),
        }
    }

    /// Upper half-plane only: the origin sits near the bottom edge.
    fn upper(extent: f64) -> Self {
        let mut c = Canvas::new(extent);
        c.origin_y = SIZE * 0.9;
        c
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (SIZE / 2.0 + x * self.scale, self.origin_y - y * self.scale)
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        let (x1, y1) = self.map(a.0, a.1);
        let (x2, y2) = self.map(b.0, b.1);
        self.elements.push(Element {
            name: "line",
            attrs: format!(
                r#"class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}""#
            ),
        });
    }

    fn polygon(&mut self, pts: &[(f64, f64)], class: &str) {
        let mut s = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let (u, v) = self.map(x, y);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{u:.3},{v:.3}");
        }
        self.elements.push(Element {
            name: "polygon",
            attrs: format!(r#"class="{class}" points="{s}""#),
        });
    }

    fn point(&mut self, p: (f64, f64), class: &str) {
        let (cx, cy) = self.map(p.0, p.1);
        self.elements.push(Element {
            name: "circle",
            attrs: format!(r#"class="{class}" cx="{cx:.3}" cy="{cy:.3}" r="2""#),
        });
    }

    pub fn element_names(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.name.to_string()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        out.push('\n');
        out.push_str(
            "<style>line{stroke:#333;stroke-width:1}polygon{fill:none;stroke:#246;stroke-width:1}circle{fill:#a22}</style>\n",
        );
        for e in &self.elements {
            let _ = writeln!(out, "<{} {}/>", e.name, e.attrs);
        }
        out.push_str("</svg>\n");
        out
    }
}

/// A fan in `V_T ⊕ Z` for a rank-1 form: the rays cut at height 3/2, the
/// slice at height 1 and the lattice points of that slice. An empty fan
/// gives an empty canvas.
pub fn fan(fan: &Fan, centers: &[Vec<i64>]) -> Canvas {
    let rays = fan.rays();
    let top = 1.5;
    let ends: Vec<(f64, f64)> = rays
        .iter()
        .map(|r| {
            let (x, h) = (r[0] as f64, r[1] as f64);
            if h > 0.0 {
                (x * top / h, top)
            } else {
                let n = (x * x + h * h).sqrt();
                (x / n, h / n)
            }
        })
        .collect();
    let extent = ends.iter().fold(top, |m, &(x, _)| m.max(x.abs()));
    let mut c = Canvas::upper(extent);
    if rays.is_empty() {
        return c;
    }
    let (lo, hi) = centers
        .iter()
        .fold((0_i64, 0_i64), |(l, h), n| (l.min(n[0]), h.max(n[0])));
    c.line((lo as f64 - 0.5, 1.0), (hi as f64 + 0.5, 1.0), "slice");
    for e in ends {
        c.line((0.0, 0.0), e, "ray");
    }
    for n in centers {
        c.point((n[0] as f64, 1.0), "lattice");
    }
    c
}

/// The fundamental alcove in simple-coroot coordinates (rank 1 or 2).
pub fn alcove(al: &Alcove) -> Canvas {
    let pts: Vec<(f64, f64)> = al
        .vertices
        .iter()
        .map(|v| {
            let x = f(&v.coroot_coords[0]);
            let y = v.coroot_coords.get(1).map(f).unwrap_or(0.0);
            (x, y)
        })
        .collect();
    let extent = pts
        .iter()
        .fold(0.0_f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
    let mut c = Canvas::new(extent);
    if pts.len() == 2 {
        c.line(pts[0], pts[1], "alcove");
    } else {
        c.polygon(&pts, "alcove");
    }
    for p in pts {
        c.point(p, "vertex");
    }
    c
}

/// Voronoi cells of the centers with coordinates in `[-w, w]` (rank 1 or 2).
pub fn voronoi(q: &QuadraticForm, w: i64) -> Result<Canvas, CliError> {
    let n = q.rank();
    let centers: Vec<Vec<i64>> = if n == 1 {
        (-w..=w).map(|a| vec![a]).collect()
    } else {
        (-w..=w)
            .flat_map(|a| (-w..=w).map(move |b| vec![a, b]))
            .collect()
    };
    let mut cells = Vec::with_capacity(centers.len());
    for ctr in &centers {
        cells.push(voronoi_cell(q, ctr)?);
    }
    let mut c = Canvas::new(w as f64 + 1.0);
    for (ctr, cell) in centers.iter().zip(&cells) {
        let verts = cell.vertices.clone().unwrap_or_default();
        let pts: Vec<(f64, f64)> = verts
            .iter()
            .map(|v| (f(&v[0]), v.get(1).map(f).unwrap_or(0.0)))
            .collect();
        if n == 1 {
            c.line(pts[0], pts[1], "cell");
        } else {
            c.polygon(&pts, "cell");
        }
        let y = ctr.get(1).copied().unwrap_or(0) as f64;
        c.point((ctr[0] as f64, y), "center");
    }
    Ok(c)
}
