//! Deterministic SVG and DOT drawings of diagrams, trees and forests.

use std::fmt::Write;

use crate::chord::ChordSequence;

const SIZE: f64 = 320.0;
const RADIUS: f64 = 120.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    )
}

/// Marked point `k` of `n`, clockwise from the top.
fn point(n: usize, k: usize, r: f64) -> (f64, f64) {
    let t = std::f64::consts::TAU * k as f64 / n as f64;
    (SIZE / 2.0 + r * t.sin(), SIZE / 2.0 - r * t.cos())
}

pub fn diagram_svg(s: &ChordSequence) -> String {
    let n = s.n;
    let c = SIZE / 2.0;
    let mut out = header(SIZE, SIZE);
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">\
<path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );
    let _ = writeln!(out, "<circle cx=\"{c:.2}\" cy=\"{c:.2}\" r=\"{RADIUS:.2}\" fill=\"none\" stroke=\"black\"/>");
    for k in 0..n {
        let (x, y) = point(n, k, RADIUS);
        let (lx, ly) = point(n, k, RADIUS + 16.0);
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
        let _ = writeln!(out, "<text x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{k}</text>");
    }
    for (p, g) in s.items.iter().enumerate() {
        let pos = p + 1;
        if g.is_loop() {
            let (x, y) = point(n, g.i, RADIUS - 14.0);
            let (lx, ly) = point(n, g.i, RADIUS - 34.0);
            let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"14\" fill=\"none\" stroke=\"blue\"/>");
            let _ = writeln!(out, "<text x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"blue\">{pos}</text>");
        } else {
            let (x1, y1) = point(n, g.i, RADIUS);
            let (x2, y2) = point(n, g.j, RADIUS);
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\" marker-end=\"url(#arrow)\"/>"
            );
            let _ = writeln!(out, "<text x=\"{mx:.2}\" y=\"{:.2}\" text-anchor=\"middle\" fill=\"red\">{pos}</text>", my - 4.0);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Layered layout: depth gives the row, leaves in depth-first label order
/// give the columns, internal vertices sit over their children.
fn layout(parent: &[usize]) -> Vec<(f64, usize)> {
    let n = parent.len();
    let mut children = vec![Vec::new(); n + 1];
    for (v, &p) in parent.iter().enumerate() {
        children[p].push(v + 1);
    }
    let mut pos = vec![(0.0, 0); n + 1];
    let mut next = 0.0;
    fn place(v: usize, depth: usize, children: &[Vec<usize>], pos: &mut [(f64, usize)], next: &mut f64) {
        if children[v].is_empty() {
            pos[v] = (*next, depth);
            *next += 1.0;
            return;
        }
        for &c in &children[v] {
            place(c, depth + 1, children, pos, next);
        }
        let xs: Vec<f64> = children[v].iter().map(|&c| pos[c].0).collect();
        pos[v] = ((xs[0] + xs[xs.len() - 1]) / 2.0, depth);
    }
    for &r in &children[0] {
        place(r, 0, &children, &mut pos, &mut next);
    }
    pos.remove(0);
    pos
}

/// Node-link drawing of a forest; `caption` is printed under it.
pub fn forest_svg(parent: &[usize], caption: &str) -> String {
    let pos = layout(parent);
    let cols = pos.iter().map(|p| p.0).fold(0.0, f64::max) + 1.0;
    let rows = pos.iter().map(|p| p.1).max().map_or(1, |d| d + 1);
    let (dx, dy, m) = (60.0, 60.0, 40.0);
    let w = (cols * dx + 2.0 * m).max(120.0);
    let h = rows as f64 * dy + 2.0 * m + 20.0;
    let at = |v: usize| (m + pos[v - 1].0 * dx + dx / 2.0, m + pos[v - 1].1 as f64 * dy);
    let mut out = header(w, h);
    for (v, &p) in parent.iter().enumerate() {
        if p != 0 {
            let ((x1, y1), (x2, y2)) = (at(p), at(v + 1));
            let _ = writeln!(out, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\"/>");
        }
    }
    for v in 1..=parent.len() {
        let (x, y) = at(v);
        let fill = if parent[v - 1] == 0 { "#ddd" } else { "white" };
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"12\" fill=\"{fill}\" stroke=\"black\"/>");
        let _ = writeln!(out, "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{v}</text>");
    }
    if !caption.is_empty() {
        let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{caption}</text>", w / 2.0, h - 12.0);
    }
    out.push_str("</svg>\n");
    out
}

pub fn forest_dot(parent: &[usize], caption: &str) -> String {
    let mut out = String::from("digraph forest {\n  node [shape=circle];\n");
    if !caption.is_empty() {
        let _ = writeln!(out, "  label=\"{caption}\";");
    }
    for v in 1..=parent.len() {
        let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
    }
    for (v, &p) in parent.iter().enumerate() {
        if p != 0 {
            let _ = writeln!(out, "  v{p} -> v{};", v + 1);
        }
    }
    out.push_str("}\n");
    out
}
