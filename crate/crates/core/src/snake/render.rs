use super::graph::{Matching, SnakeGraph};
use std::fmt::Write;

fn matched(p: Option<&Matching>, e: usize) -> bool {
    p.is_some_and(|m| m.edges.binary_search(&e).is_ok())
}

/// Text drawing; matched edges are drawn `===` and `#`.
pub fn render_ascii(g: &SnakeGraph, p: Option<&Matching>) -> String {
    let (w, h) = g.tiles().iter().fold((0, 0), |a, t| (a.0.max(t.0 + 1), a.1.max(t.1 + 1)));
    let (cols, rows) = (4 * w as usize + 1, 2 * h as usize + 1);
    let mut grid = vec![vec![' '; cols]; rows];
    let row = |y: i32| rows - 1 - 2 * y as usize;
    for (k, e) in g.edges().iter().enumerate() {
        let m = matched(p, k);
        if e.is_vertical() {
            grid[row(e.a.1) - 1][4 * e.a.0 as usize] = if m { '#' } else { '|' };
        } else {
            for c in 1..4 {
                grid[row(e.a.1)][4 * e.a.0 as usize + c] = if m { '=' } else { '-' };
            }
        }
        grid[row(e.a.1)][4 * e.a.0 as usize] = '+';
        grid[row(e.b.1)][4 * e.b.0 as usize] = '+';
    }
    for (t, l) in g.tiles().iter().zip(g.tile_labels()) {
        let s = l.to_string();
        let (r, c) = (row(t.1) - 1, 4 * t.0 as usize + 1);
        for (k, ch) in s.chars().take(3).enumerate() {
            grid[r][c + k] = ch;
        }
    }
    let mut out = String::new();
    for line in grid {
        let s: String = line.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out
}

/// TikZ picture with tile labels, edge labels and an optional matching.
pub fn render_tikz(g: &SnakeGraph, p: Option<&Matching>) -> String {
    let mut s = String::from("\\begin{tikzpicture}\n");
    for (k, e) in g.edges().iter().enumerate() {
        let style = if matched(p, k) { "[very thick,red]" } else { "" };
        let _ = write!(s, "  \\draw{style} ({},{}) -- ({},{})", e.a.0, e.a.1, e.b.0, e.b.1);
        match g.edge_label(k) {
            Some(l) => {
                let _ = writeln!(s, " node[midway,font=\\tiny,fill=white] {{{l}}};");
            }
            None => s.push_str(";\n"),
        }
    }
    for (t, l) in g.tiles().iter().zip(g.tile_labels()) {
        let _ = writeln!(s, "  \\node at ({}.5,{}.5) {{$G_{{{l}}}$}};", t.0, t.1);
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

/// SVG drawing, 40 px per unit, y axis pointing up.
pub fn render_svg(g: &SnakeGraph, p: Option<&Matching>) -> String {
    let u = 40;
    let pad = 12;
    let (w, h) = g.tiles().iter().fold((0, 0), |a, t| (a.0.max(t.0 + 1), a.1.max(t.1 + 1)));
    let (pw, ph) = (w * u + 2 * pad, h * u + 2 * pad);
    let px = |x: i32| x * u + pad;
    let py = |y: i32| (h - y) * u + pad;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{pw}\" height=\"{ph}\" viewBox=\"0 0 {pw} {ph}\">\n"
    );
    for (k, t) in g.tiles().iter().enumerate() {
        let fill = match p {
            Some(m) if m.enclosed[k] => "#fde2c8",
            _ => "#f4f4f4",
        };
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{u}\" height=\"{u}\" fill=\"{fill}\"/><text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            px(t.0),
            py(t.1 + 1),
            px(t.0) + u / 2,
            py(t.1) - u / 2 + 4,
            g.tile_labels()[k]
        );
    }
    for (k, e) in g.edges().iter().enumerate() {
        let (stroke, width) = if matched(p, k) { ("#c0392b", 5) } else { ("#555", 1) };
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
            px(e.a.0),
            py(e.a.1),
            px(e.b.0),
            py(e.b.1)
        );
    }
    s.push_str("</svg>\n");
    s
}
