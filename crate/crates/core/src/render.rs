//! SVG drawings of arrangements.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use crate::arrangement::Arrangement;
use crate::geometry::{Line, Point, Rational};
use crate::invariants::{find_centrexes, summary_triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    /// Canvas width and height in pixels, before the caption strip.
    pub size: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { size: 400 }
    }
}

const CAPTION_HEIGHT: u32 = 28;

/// Exact viewport `(xmin, ymin, xmax, ymax)`: the marks' bounding box, or a
/// unit box plus a point of every line when there are no marks, widened by
/// 10% on every side.
pub fn viewport(a: &Arrangement) -> [Rational; 4] {
    let mut pts: Vec<Point> = a.points().to_vec();
    if pts.is_empty() {
        pts.push(Point::from_ints(0, 0));
        pts.push(Point::from_ints(1, 1));
        pts.extend(a.lines().iter().map(Line::anchor));
    }
    let min = |f: fn(&Point) -> &Rational| pts.iter().map(f).min().expect("nonempty").clone();
    let max = |f: fn(&Point) -> &Rational| pts.iter().map(f).max().expect("nonempty").clone();
    let (mut x0, mut y0, mut x1, mut y1) = (min(|p| &p.x), min(|p| &p.y), max(|p| &p.x), max(|p| &p.y));
    let half = Rational::new(1.into(), 2.into());
    for (lo, hi) in [(&mut x0, &mut x1), (&mut y0, &mut y1)] {
        if *lo == *hi {
            *lo -= &half;
            *hi += &half;
        }
    }
    // square it up so both axes share one scale
    let (w, h) = (&x1 - &x0, &y1 - &y0);
    if w > h {
        let d = (&w - &h) * &half;
        y0 -= &d;
        y1 += &d;
    } else if h > w {
        let d = (&h - &w) * &half;
        x0 -= &d;
        x1 += &d;
    }
    let margin = (&x1 - &x0) / Rational::from_integer(10.into());
    [&x0 - &margin, &y0 - &margin, &x1 + &margin, &y1 + &margin]
}

/// The part of `l` inside the box, if any.
fn clip(l: &Line, vp: &[Rational; 4]) -> Option<(Point, Point)> {
    let (a, b, c) = (
        Rational::from_integer(l.a().clone()),
        Rational::from_integer(l.b().clone()),
        Rational::from_integer(l.c().clone()),
    );
    let [x0, y0, x1, y1] = vp;
    let mut hits: Vec<Point> = Vec::new();
    if !b.is_zero() {
        for x in [x0, x1] {
            let y = (&c - &a * x) / &b;
            if &y >= y0 && &y <= y1 {
                hits.push(Point::new(x.clone(), y));
            }
        }
    }
    if !a.is_zero() {
        for y in [y0, y1] {
            let x = (&c - &b * y) / &a;
            if &x >= x0 && &x <= x1 {
                hits.push(Point::new(x, y.clone()));
            }
        }
    }
    hits.sort();
    hits.dedup();
    match hits.len() {
        0 | 1 => None,
        _ => Some((hits[0].clone(), hits[hits.len() - 1].clone())),
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

pub fn render_svg(a: &Arrangement, spec: &RenderSpec) -> String {
    let vp = viewport(a);
    let size = spec.size.max(16);
    let scale = Rational::from_integer(size.into()) / (&vp[2] - &vp[0]);
    let px = |p: &Point| {
        let x = (&p.x - &vp[0]) * &scale;
        let y = (&vp[3] - &p.y) * &scale;
        (to_f64(&x), to_f64(&y))
    };
    let height = size + CAPTION_HEIGHT;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{height}" viewBox="0 0 {size} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{size}" height="{height}" fill="white"/>"#).unwrap();
    writeln!(out, r##"<g stroke="#4a6fa5" stroke-width="1.5">"##).unwrap();
    for l in a.lines() {
        if let Some((p, q)) = clip(l, &vp) {
            let ((x1, y1), (x2, y2)) = (px(&p), px(&q));
            writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    let centrexes = find_centrexes(a);
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for p in a.points() {
        let (x, y) = px(p);
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    for z in &centrexes {
        let (x, y) = px(z);
        writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="7" fill="none" stroke="#c0392b" stroke-width="2"/>"##
        )
        .unwrap();
    }
    let t = summary_triple(a);
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="16" text-anchor="middle">{t}</text>"#,
        size / 2,
        size + CAPTION_HEIGHT - 9
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
