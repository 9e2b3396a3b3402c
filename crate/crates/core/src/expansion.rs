//! F-polynomials of snake graphs and the expansion of `x[α_{i,j}]` in the
//! initial seed of `Q_ξ`.

use crate::algebra::{fy, tropical_sum, x, xp, Generator, Monomial, Poly, TropicalElement};
use crate::hl;
use crate::quiver::{build_quiver, HeightFunction, QuiverError, Vertex};
use crate::snake::{build_snake_graph, side, sign_function, zigzag_parts, Matching, Side, SnakeGraph};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("internal check failed: {0}")]
    Invariant(String),
}

/// `F = Σ_P y(P)` over all perfect matchings.
pub fn f_polynomial_direct(g: &SnakeGraph) -> Poly {
    Poly::from_terms(g.matchings().iter().map(|m| (g.y_weight(m), 1.into())))
}

/// Continuant `N[L_1, …, L_n]` over polynomials.
pub fn continuant(ls: &[Poly]) -> Poly {
    let (mut prev, mut cur) = (Poly::zero(), Poly::one());
    for l in ls {
        let next = &(l * &cur) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Continued-fraction form of `F`.
///
/// Uses the `S`-anchored or `W`-anchored formula according to `P₋`. When the
/// first run has length 1 the graph is reversed first, and transposed if that
/// still does not help; both maps preserve `F`.
pub fn f_polynomial_cf(g: &SnakeGraph) -> Poly {
    if sign_function(g).runs[0] == 1 {
        let r = g.reverse();
        if sign_function(&r).runs[0] > 1 {
            return f_polynomial_cf(&r);
        }
        return f_polynomial_cf(&g.transpose());
    }
    let sd = sign_function(g);
    let l = sd.partial_sums();
    let n = sd.runs.len();
    let tau = g.tile_labels();
    let prod = |a: usize, b: usize| -> Monomial { Monomial::from_pairs((a.max(1)..=b).map(|j| (fy(tau[j - 1]), 1))) };
    let chain =
        |lo: usize, hi: usize, from: usize| -> Poly { Poly::from_terms((lo..=hi).map(|k| (prod(from, k), 1.into()))) };
    let rchain =
        |lo: usize, hi: usize, to: usize| -> Poly { Poly::from_terms((lo..=hi).map(|k| (prod(k, to), 1.into()))) };
    let south = g.anchor() == Side::S;
    let mut ls = Vec::with_capacity(n);
    let mut last_c = Monomial::one();
    for i in 1..=n {
        let odd = i % 2 == 1;
        let (c, phi) = match (south, odd) {
            (true, true) => (prod(1, l[i - 1]), chain(l[i - 1], l[i] - 1, l[i - 1] + 1)),
            (true, false) => (prod(1, l[i] - 1).inv(), rchain(l[i - 1] + 1, l[i], l[i] - 1)),
            (false, true) => (prod(l[1], l[i] - 1).inv(), rchain(l[i - 1] + 1, l[i], l[i] - 1)),
            (false, false) => (prod(l[1], l[i - 1]), chain(l[i - 1], l[i] - 1, l[i - 1] + 1)),
        };
        ls.push(phi.mul_monomial(&c));
        last_c = c;
    }
    let num = continuant(&ls);
    if south == (n % 2 == 1) {
        num
    } else {
        num.div_monomial(&last_c)
    }
}

/// Both sides of the recursion
/// `F(G[a_1..a_n]) = y34 F(G[a_1..a_{n-1}]) F(H_n) + y56 F(G[a_1..a_{n-2}])`
/// for a `W`-anchored graph with at least two runs.
pub fn dual_recursion_sides(g: &SnakeGraph) -> Option<(Poly, Poly)> {
    let sd = sign_function(g);
    let n = sd.runs.len();
    if n < 2 || g.anchor() != Side::W {
        return None;
    }
    let l = sd.partial_sums();
    let d = g.len();
    let tau = g.tile_labels();
    let y = |j: usize| if j == 0 { Monomial::one() } else { Monomial::var(fy(tau[j - 1])) };
    let prefix = |tiles: usize| if tiles == 0 { Poly::one() } else { f_polynomial_direct(&g.sub(0..tiles)) };
    let f1 = prefix(l[n - 1] - 1);
    let f2 = if n >= 3 { prefix(l[n - 2] - 1) } else { Poly::one() };
    let hn = f_polynomial_direct(&g.sub(l[n - 1]..d));
    let (y34, y56) = if n % 2 == 1 {
        let m = (l[n - 2]..=l[n] - 1).fold(Monomial::one(), |acc, j| acc.mul(&y(j)));
        (Monomial::one(), m)
    } else {
        (y(l[n - 1]), Monomial::one())
    };
    let rhs = &(&f1 * &hn).mul_monomial(&y34) + &f2.mul_monomial(&y56);
    Some((f_polynomial_direct(g), rhs))
}

/// `ŷ_ℓ` for `ℓ ∈ [i, j]`: signed product of the frozen neighbours of `ℓ`.
///
/// Frozen here means every `x'_m` and every `x_m` with `m` outside `[i, j]`.
pub fn yhat(h: &HeightFunction, i: usize, j: usize) -> Vec<Monomial> {
    let q = build_quiver(h);
    let var = |v: Vertex| -> Option<Generator> {
        match v {
            Vertex::Frozen(m) => Some(xp(m)),
            Vertex::Mutable(m) if (m as usize) < i || (m as usize) > j => Some(x(m)),
            _ => None,
        }
    };
    (i..=j)
        .map(|l| {
            let v = Vertex::Mutable(l as u32);
            let ins = q.incoming(v).into_iter().filter_map(|(u, k)| var(u).map(|g| (g, k as i32)));
            let outs = q.outgoing(v).into_iter().filter_map(|(u, k)| var(u).map(|g| (g, -(k as i32))));
            Monomial::from_pairs(ins.chain(outs))
        })
        .collect()
}

/// Substitutes `y_ℓ ↦ ŷ_ℓ` in a monomial in the formal variables.
pub fn substitute_yhat(m: &Monomial, i: usize, yh: &[Monomial]) -> Monomial {
    m.iter().fold(Monomial::one(), |acc, (g, e)| match g {
        Generator::FormalY(l) => acc.mul(&yh[l as usize - i].pow(e)),
        _ => acc.mul(&Monomial::power(g, e)),
    })
}

/// One term of the expansion, attached to a perfect matching.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionTerm {
    pub matching: Matching,
    pub x_weight: Monomial,
    pub y_weight: Monomial,
    /// `x(P) ŷ(P) / (F|_P · ∏ x_ℓ)`.
    pub value: Monomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expansion {
    pub i: usize,
    pub j: usize,
    pub graph: SnakeGraph,
    pub yhat: Vec<Monomial>,
    pub tropical: Monomial,
    pub terms: Vec<ExpansionTerm>,
}

impl Expansion {
    pub fn polynomial(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|t| (t.value.clone(), 1.into())))
    }
}

/// Tropical value `F|_P = ⊕_P ŷ(P)`.
///
/// Checked against `ŷ(P₊) ⊕ 1`, since `P₋` and `P₊` bound every other matching.
pub fn tropical_f(h: &HeightFunction, i: usize, j: usize) -> Result<TropicalElement, ExpansionError> {
    let g = build_snake_graph(h, i, j)?;
    let yh = yhat(h, i, j);
    tropical_of(&g, &g.matchings(), i, &yh)
}

fn tropical_of(g: &SnakeGraph, ms: &[Matching], i: usize, yh: &[Monomial]) -> Result<TropicalElement, ExpansionError> {
    let vals: Vec<TropicalElement> =
        ms.iter().map(|m| TropicalElement::from_monomial(&substitute_yhat(&g.y_weight(m), i, yh))).collect();
    let t = tropical_sum(&vals).map_err(|e| ExpansionError::Invariant(e.to_string()))?;
    let top = TropicalElement::from_monomial(&substitute_yhat(&g.y_weight(&g.maximal_matching()), i, yh));
    if t != top.oplus(&TropicalElement::one()) {
        return Err(ExpansionError::Invariant(format!(
            "tropical F {t} differs from y(P+) (+) 1 = {}",
            top.oplus(&TropicalElement::one())
        )));
    }
    Ok(t)
}

/// Laurent expansion of `x[α_{i,j}]` from the snake graph `G_{i,j}`.
pub fn expand(h: &HeightFunction, i: usize, j: usize) -> Result<Expansion, ExpansionError> {
    let g = build_snake_graph(h, i, j)?;
    let yh = yhat(h, i, j);
    let ms = g.matchings();
    let trop = tropical_of(&g, &ms, i, &yh)?.to_monomial();
    let denom = Monomial::from_pairs((i..=j).map(|l| (x(l as u32), 1))).mul(&trop);
    let terms = ms
        .into_iter()
        .map(|m| {
            let xw = g.x_weight(&m);
            let yw = g.y_weight(&m);
            let value = xw.mul(&substitute_yhat(&yw, i, &yh)).div(&denom);
            ExpansionTerm { matching: m, x_weight: xw, y_weight: yw, value }
        })
        .collect();
    Ok(Expansion { i, j, graph: g, yhat: yh, tropical: trop, terms })
}

/// Closed form of the extremal term: `x'_i [x'_{i+1}] ∏ x'_{i+ℓ_t} x_{j+1}^{1-δ} / (x_i [x_{i+1}] ∏ x_{i+ℓ_t})`,
/// the bracketed factors present when `i < j` and `i` is a source or sink.
pub fn extremal_closed_form(h: &HeightFunction, i: usize, j: usize) -> Result<Monomial, ExpansionError> {
    let g = build_snake_graph(h, i, j)?;
    let sd = sign_function(&g);
    let l = sd.partial_sums();
    let n = h.n();
    let mut nodes = vec![i];
    if i < j && h.is_source_or_sink(i) {
        nodes.push(i + 1);
    }
    nodes.extend(l[1..l.len() - 1].iter().map(|&t| i + t));
    let mut pairs: Vec<(Generator, i32)> = Vec::new();
    for &v in nodes.iter().filter(|&&v| v <= n) {
        pairs.push((xp(v as u32), 1));
        pairs.push((x(v as u32), -1));
    }
    if j < n {
        pairs.push((x(j as u32 + 1), 1 - h.d(j) as i32));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// The extremal matching and its expansion term.
#[derive(Clone, Debug, Serialize)]
pub struct Extremal {
    pub matching: Matching,
    pub value: Monomial,
    pub highest: Monomial,
    pub lowest: Monomial,
}

/// Glues the extremal matching from the zigzag parts `H_t`.
///
/// On `H_t` it takes `P₋|H_t` when `i+ℓ_{t-1} → (i+ℓ_{t-1})'` and `P₊|H_t`
/// otherwise; when `i < j` is a source or sink, `H_1` instead takes the boundary
/// matching through `S(G_i)` with its first tile turned. The result is
/// compared with an exhaustive scan over all matchings.
pub fn extremal_matching(h: &HeightFunction, i: usize, j: usize) -> Result<Extremal, ExpansionError> {
    let ex = expand(h, i, j)?;
    let g = &ex.graph;
    let q = build_quiver(h);
    let sd = sign_function(g);
    let l = sd.partial_sums();
    let parts = zigzag_parts(&sd, g.len());
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for (t0, range) in parts.iter().enumerate() {
        let t = t0 + 1;
        if range.is_empty() {
            let a = l[t - 1];
            let e = g.side_index(a - 1, if g.step(a - 1) == crate::snake::Step::East { Side::E } else { Side::N });
            chosen.insert(e);
            continue;
        }
        let sub = g.sub(range.clone());
        let local: Vec<usize> = if t == 1 && i < j && h.is_source_or_sink(i) {
            let (through_s, _) = sub.boundary_matchings();
            let drop = [sub.side_index(0, Side::S), sub.side_index(0, Side::N)];
            let mut m: Vec<usize> = through_s.into_iter().filter(|e| !drop.contains(e)).collect();
            m.push(sub.side_index(0, Side::W));
            m.push(sub.side_index(0, Side::E));
            m
        } else {
            let v = (i + l[t - 1]) as u32;
            if q.has_arrow(Vertex::Mutable(v), Vertex::Frozen(v)) {
                sub.minimal_edges().to_vec()
            } else {
                sub.maximal_edges()
            }
        };
        for e in local {
            let edge = sub.edges()[e];
            chosen.insert(g.edge_index(edge).expect("sub-snake edge"));
        }
    }
    let edges: Vec<usize> = chosen.into_iter().collect();
    let term = ex
        .terms
        .iter()
        .find(|t| t.matching.edges == edges)
        .ok_or_else(|| ExpansionError::Invariant("glued edge set is not a perfect matching".into()))?;
    let closed = extremal_closed_form(h, i, j)?;
    if term.value != closed {
        return Err(ExpansionError::Invariant(format!(
            "glued matching gives {} but the closed form is {closed}",
            term.value
        )));
    }
    let hits = ex.terms.iter().filter(|t| t.value == closed).count();
    if hits != 1 {
        return Err(ExpansionError::Invariant(format!("{hits} matchings attain the extremal term")));
    }
    let highest = hl::iota_monomial(h, &closed);
    if highest != hl::dictionary(h, i, j) {
        return Err(ExpansionError::Invariant(format!(
            "extremal term maps to {highest}, expected {}",
            hl::dictionary(h, i, j)
        )));
    }
    let lowest = hl::lowest_of(h.n(), &highest);
    Ok(Extremal { matching: term.matching.clone(), value: closed, highest, lowest })
}

/// Highest and lowest monomials of `χ_q(ι(x[α_{i,j}]))`.
pub fn extremal_weights(h: &HeightFunction, i: usize, j: usize) -> Result<(Monomial, Monomial), ExpansionError> {
    let e = extremal_matching(h, i, j)?;
    Ok((e.highest, e.lowest))
}

/// Edge `side` of the first tile, re-exported for callers building matchings by hand.
pub fn first_tile_side(g: &SnakeGraph, s: Side) -> usize {
    g.edge_index(side(g.tiles()[0], s)).unwrap()
}
