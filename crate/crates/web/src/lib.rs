//! Browser demo. The `render` functions are plain Rust returning HTML or SVG
//! strings; the `#[wasm_bindgen]` exports wrap them for the page in `www/`.

use wasm_bindgen::prelude::*;

pub mod render {
    use std::fmt::Write as _;

    use hlsnake::expansion::{expand, extremal_matching};
    use hlsnake::hl::dictionary;
    use hlsnake::qchar::{dimension, qchar_hl};
    use hlsnake::quiver::{build_quiver, statistics, HeightFunction};
    use hlsnake::snake::{build_snake_graph, render_svg, sign_function};

    /// Largest rank for which the page computes q-characters.
    pub const QCHAR_MAX_RANK: usize = 5;

    pub fn escape(s: &str) -> String {
        s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
    }

    pub fn parse_xi(s: &str) -> Result<HeightFunction, String> {
        let vals = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| format!("bad value {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        HeightFunction::new(vals).map_err(|e| e.to_string())
    }

    fn interval(h: &HeightFunction, i: usize, j: usize) -> Result<(), String> {
        h.check_interval(i, j).map_err(|e| e.to_string())
    }

    /// Statistics table and arrow list of `Q_ξ`.
    pub fn quiver_html(xi: &str) -> Result<String, String> {
        let h = parse_xi(xi)?;
        let q = build_quiver(&h);
        let stats = statistics(&h);
        let mut s = String::from("<table class=\"stats\">");
        let rows: [(&str, Vec<String>); 5] = [
            ("i", stats.iter().map(|t| t.0.to_string()).collect()),
            ("ξ", (1..=h.n()).map(|k| h.xi(k).to_string()).collect()),
            ("i◇", stats.iter().map(|t| t.1.to_string()).collect()),
            ("i•", stats.iter().map(|t| t.2.to_string()).collect()),
            ("ī", stats.iter().map(|t| t.3.to_string()).collect()),
        ];
        for (name, vals) in rows {
            let _ = write!(s, "<tr><th>{name}</th>");
            for v in vals {
                let _ = write!(s, "<td>{v}</td>");
            }
            s.push_str("</tr>");
        }
        s.push_str("</table>");
        let _ = write!(s, "<p>sources/sinks: {:?}</p>", h.sources_sinks());
        let _ = write!(s, "<p class=\"arrows\">{}</p>", escape(&q.to_string()));
        Ok(s)
    }

    pub fn matching_count(xi: &str, i: usize, j: usize) -> Result<usize, String> {
        let h = parse_xi(xi)?;
        interval(&h, i, j)?;
        Ok(build_snake_graph(&h, i, j).map_err(|e| e.to_string())?.matchings().len())
    }

    /// SVG of `G_{i,j}` with the `k`-th perfect matching drawn.
    pub fn snake_svg(xi: &str, i: usize, j: usize, k: usize) -> Result<String, String> {
        let h = parse_xi(xi)?;
        interval(&h, i, j)?;
        let g = build_snake_graph(&h, i, j).map_err(|e| e.to_string())?;
        let ms = g.matchings();
        let m = ms.get(k).ok_or_else(|| format!("matching {k} out of range ({} matchings)", ms.len()))?;
        let sd = sign_function(&g);
        let mut s = render_svg(&g, Some(m));
        let _ = write!(
            s,
            "<p>matching {} of {}: x(P) = {}, y(P) = {}; runs {:?}</p>",
            k + 1,
            ms.len(),
            escape(&g.x_weight(m).to_string()),
            escape(&g.y_weight(m).to_string()),
            sd.runs
        );
        Ok(s)
    }

    /// Expansion of `x[α_{i,j}]`, its extremal term and, for small rank, the q-character.
    pub fn expansion_html(xi: &str, i: usize, j: usize) -> Result<String, String> {
        let h = parse_xi(xi)?;
        interval(&h, i, j)?;
        let e = expand(&h, i, j).map_err(|e| e.to_string())?;
        let x = extremal_matching(&h, i, j).map_err(|e| e.to_string())?;
        let mut s = String::new();
        let _ = write!(s, "<p>HL module L({})</p>", escape(&dictionary(&h, i, j).to_string()));
        let _ = write!(s, "<p>F|<sub>P</sub> = {}</p><ol class=\"terms\">", escape(&e.tropical.to_string()));
        for t in &e.terms {
            let _ = write!(s, "<li>{}</li>", escape(&t.value.to_string()));
        }
        s.push_str("</ol>");
        let _ = write!(
            s,
            "<p>extremal term {}<br>highest weight {}<br>lowest weight {}</p>",
            escape(&x.value.to_string()),
            escape(&x.highest.to_string()),
            escape(&x.lowest.to_string())
        );
        if h.n() <= QCHAR_MAX_RANK {
            let q = qchar_hl(&h, i, j).map_err(|e| e.to_string())?;
            let _ = write!(s, "<p>q-character: {} monomials, dimension {}</p>", q.len(), dimension(&q));
        } else {
            let _ = write!(s, "<p>q-character skipped for rank above {QCHAR_MAX_RANK}</p>");
        }
        Ok(s)
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn quiver_html(xi: &str) -> Result<String, JsError> {
    js(render::quiver_html(xi))
}

#[wasm_bindgen]
pub fn matching_count(xi: &str, i: usize, j: usize) -> Result<usize, JsError> {
    render::matching_count(xi, i, j).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn snake_svg(xi: &str, i: usize, j: usize, k: usize) -> Result<String, JsError> {
    js(render::snake_svg(xi, i, j, k))
}

#[wasm_bindgen]
pub fn expansion_html(xi: &str, i: usize, j: usize) -> Result<String, JsError> {
    js(render::expansion_html(xi, i, j))
}

#[cfg(test)]
mod tests {
    use super::render::*;

    const XI: &str = "-4,-5,-6,-5,-4,-3,-4,-5,-6";

    #[test]
    fn quiver_table() {
        let s = quiver_html(XI).unwrap();
        assert!(s.contains("<tr><th>ī</th><td>2</td><td>1</td><td>4</td>"));
        assert!(s.contains("2-&gt;1"));
        assert!(quiver_html("0,2").is_err());
    }

    #[test]
    fn snake_matchings() {
        assert_eq!(matching_count(XI, 1, 7).unwrap(), 23);
        let s = snake_svg(XI, 1, 7, 0).unwrap();
        assert!(s.starts_with("<svg") && s.contains("matching 1 of 23"));
        assert!(snake_svg(XI, 1, 7, 23).is_err());
        assert!(snake_svg(XI, 7, 1, 0).is_err());
    }

    #[test]
    fn expansion_and_qchar() {
        let s = expansion_html(XI, 1, 7).unwrap();
        assert_eq!(s.matches("<li>").count(), 23);
        assert!(s.contains("skipped"));
        let s = expansion_html("-6,-5,-6,-5", 1, 3).unwrap();
        assert!(s.contains("dimension 325"), "{s}");
    }
}
