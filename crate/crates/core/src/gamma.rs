//! The sets `Γ_{i,j}` of 0/1 sequences, the derived sequences `ε'` and the
//! monomials `m^ε f^ε` that index the terms of `x[α_{i,j}]`.

use crate::algebra::{x, xp, Monomial};
use crate::expansion::{expand, ExpansionError};
use crate::quiver::{HeightFunction, QuiverError};
use crate::snake::build_snake_graph;
use serde::Serialize;

/// Sequences longer than this are generated by pruned search instead of filtering.
pub const FILTER_LIMIT: usize = 24;

/// An element `ε = (ε_i, …, ε_{j+1})` of `Γ_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Epsilon {
    pub i: usize,
    pub bits: Vec<u8>,
}

impl Epsilon {
    /// `ε_m` for `i <= m <= j+1`.
    pub fn at(&self, m: usize) -> u8 {
        self.bits[m - self.i]
    }

    fn sum(&self, a: usize, b: usize) -> u32 {
        if a > b {
            return 0;
        }
        (a..=b).map(|m| self.at(m) as u32).sum()
    }

    pub fn render(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

struct Windows {
    /// `(a, b, c)`: `ε_a + … + ε_b <= 1 <= ε_a + … + ε_c`.
    windows: Vec<(usize, usize, usize)>,
    tail: (usize, usize),
    last_forced: bool,
}

fn windows(h: &HeightFunction, i: usize, j: usize) -> Windows {
    let mut windows = Vec::new();
    let id = h.diamond(i);
    if id <= j {
        windows.push((i, id, id + 1));
    }
    let jb = h.bullet(j);
    for m in id..jb {
        if h.diamond(m) == m {
            let md = h.diamond(m + 1);
            windows.push((m + 1, md, md + 1));
        }
    }
    Windows { windows, tail: (i.max(jb + 1), j), last_forced: h.diamond(j) == j }
}

fn admissible(w: &Windows, e: &Epsilon, j: usize) -> bool {
    for &(a, b, c) in &w.windows {
        if e.sum(a, b) > 1 || e.sum(a, c) < 1 {
            return false;
        }
    }
    let t = e.sum(w.tail.0, w.tail.1);
    if t > 1 {
        return false;
    }
    let want = if w.last_forced { 1 } else { 1 - t as u8 };
    e.at(j + 1) == want
}

/// `Γ_{i,j}` in lexicographic order; `Γ_{i,j} = {0}` when `j < i`.
pub fn gamma_set(h: &HeightFunction, i: usize, j: usize) -> Vec<Epsilon> {
    if j < i {
        return vec![Epsilon { i, bits: vec![] }];
    }
    if j - i + 2 <= FILTER_LIMIT {
        gamma_by_filter(h, i, j)
    } else {
        gamma_by_search(h, i, j)
    }
}

/// Filters all `2^(j-i+2)` sequences.
pub fn gamma_by_filter(h: &HeightFunction, i: usize, j: usize) -> Vec<Epsilon> {
    let len = j - i + 2;
    let w = windows(h, i, j);
    let mut out: Vec<Epsilon> = (0..1u64 << len)
        .map(|mask| Epsilon { i, bits: (0..len).map(|k| (mask >> (len - 1 - k) & 1) as u8).collect() })
        .filter(|e| admissible(&w, e, j))
        .collect();
    out.sort();
    out
}

/// Depth-first search that checks each window as soon as it is filled.
pub fn gamma_by_search(h: &HeightFunction, i: usize, j: usize) -> Vec<Epsilon> {
    let len = j - i + 2;
    let w = windows(h, i, j);
    let mut out = Vec::new();
    let mut cur = Epsilon { i, bits: Vec::with_capacity(len) };
    fn rec(w: &Windows, cur: &mut Epsilon, len: usize, j: usize, out: &mut Vec<Epsilon>) {
        let filled = cur.i + cur.bits.len();
        let ok_partial = w.windows.iter().all(|&(a, b, c)| {
            let upper = filled <= b + 1 || cur.sum(a, b) <= 1;
            let upper_now = cur.sum(a, b.min(filled.saturating_sub(1))) <= 1 || filled <= a;
            let lower = filled <= c || cur.sum(a, c) >= 1;
            upper && upper_now && lower
        }) && (filled <= w.tail.0 || cur.sum(w.tail.0, w.tail.1.min(filled - 1)) <= 1);
        if !ok_partial {
            return;
        }
        if cur.bits.len() == len {
            if admissible(w, cur, j) {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..2 {
            cur.bits.push(b);
            rec(w, cur, len, j, out);
            cur.bits.pop();
        }
    }
    rec(&w, &mut cur, len, j, &mut out);
    out
}

/// `|Γ_{i,j}|` by the recursion `|Γ_{i,j}| = |Γ_{i,j-1}| + |Γ_{i,j•-1}|`, seeded by `|Γ_{i,i}| = 2`.
pub fn gamma_count_recursive(h: &HeightFunction, i: usize, j: usize) -> u128 {
    let mut memo = vec![0u128; j + 2];
    for k in i..=j {
        memo[k] = if k == i {
            2
        } else {
            let b = h.bullet(k);
            let second = if b > i { memo[b - 1] } else { 1 };
            memo[k - 1] + second
        };
    }
    memo[j]
}

/// `ε' = (ε'_i, …, ε'_{j+1})`.
pub fn epsilon_prime(h: &HeightFunction, e: &Epsilon, j: usize) -> Vec<i32> {
    let i = e.i;
    let d = |m: usize| h.d(m) as i32;
    let mut out = Vec::with_capacity(j - i + 2);
    for m in i..=j {
        let mb = h.bullet(m);
        let pre = if mb >= 1 { e.sum(i.max(h.bullet(mb) + 1), mb) } else { 0 };
        let s = e.sum(i.max(mb + 1), m);
        let em1 = e.at(m + 1) as i32;
        let v = if h.bullet(i) == mb || pre == 1 {
            if s == 0 {
                (d(m) - 1) * em1 - d(m)
            } else {
                d(m) - (e.at(m) as i32 + em1)
            }
        } else {
            d(m) * (1 - em1)
        };
        out.push(v);
    }
    let s = e.sum(i.max(h.bullet(j) + 1), j) as i32;
    out.push(if h.d(j) == 1 { 1 - s } else { s });
    out
}

/// `m^ε = x_{i-1}^{1-ε_i} ∏_{m=i}^{j+1} x_m^{ε'_m}`; indices outside `1..=n` are dropped.
pub fn m_monomial(h: &HeightFunction, e: &Epsilon, j: usize) -> Monomial {
    let n = h.n();
    let i = e.i;
    let ep = epsilon_prime(h, e, j);
    let mut pairs = Vec::new();
    if i >= 2 {
        pairs.push((x(i as u32 - 1), 1 - e.at(i) as i32));
    }
    for (k, m) in (i..=j + 1).enumerate() {
        if m <= n {
            pairs.push((x(m as u32), ep[k]));
        }
    }
    Monomial::from_pairs(pairs)
}

/// `f^ε = ∏_{m=i}^{j} x'_m^{ε_m} · x'_{j+1}^{(1-δ_{j,j⋄}) ε_{j+1}}`.
pub fn f_monomial(h: &HeightFunction, e: &Epsilon, j: usize) -> Monomial {
    let mut pairs: Vec<_> = (e.i..=j).map(|m| (xp(m as u32), e.at(m) as i32)).collect();
    if j < h.n() {
        pairs.push((xp(j as u32 + 1), (1 - h.d(j) as i32) * e.at(j + 1) as i32));
    }
    Monomial::from_pairs(pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    pub epsilon: String,
    pub epsilon_prime: Vec<i32>,
    pub m: Monomial,
    pub f: Monomial,
}

/// Rows `(ε, ε', m^ε, f^ε)` for every element of `Γ_{i,j}`.
pub fn gamma_table(h: &HeightFunction, i: usize, j: usize) -> Result<Vec<GammaRow>, QuiverError> {
    h.check_interval(i, j)?;
    Ok(gamma_set(h, i, j)
        .into_iter()
        .map(|e| GammaRow {
            epsilon: e.render(),
            epsilon_prime: epsilon_prime(h, &e, j),
            m: m_monomial(h, &e, j),
            f: f_monomial(h, &e, j),
        })
        .collect())
}

/// Projection count of one window of `Γ_{i,j}`, its closed form, and the
/// matching count of the corresponding sub-snake (when it exists).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentCount {
    pub kind: &'static str,
    pub start: usize,
    pub end: usize,
    pub projections: usize,
    pub closed_form: usize,
    pub matchings: Option<usize>,
}

pub fn segment_counts(h: &HeightFunction, i: usize, j: usize) -> Result<Vec<SegmentCount>, QuiverError> {
    let set = gamma_set(h, i, j);
    let g = build_snake_graph(h, i, j)?;
    let d = g.len();
    let proj = |a: usize, b: usize| {
        let mut v: Vec<Vec<u8>> = set.iter().map(|e| e.bits[a - i..=b - i].to_vec()).collect();
        v.sort();
        v.dedup();
        v.len()
    };
    let matches = |lo: usize, hi: usize| {
        if lo >= 1 && hi <= d && lo <= hi {
            Some(g.sub(lo - 1..hi).matchings().len())
        } else {
            None
        }
    };
    let mut out = Vec::new();
    let id = h.diamond(i);
    let jb = h.bullet(j);
    if id < j {
        out.push(SegmentCount {
            kind: "prefix",
            start: i,
            end: id + 1,
            projections: proj(i, id + 1),
            closed_form: 2 * (id - i) + 3,
            matchings: matches(1, id - i + 2),
        });
    }
    for m in id..jb {
        if h.diamond(m) == m {
            let md = h.diamond(m + 1);
            out.push(SegmentCount {
                kind: "window",
                start: m + 1,
                end: md + 1,
                projections: proj(m + 1, md + 1),
                closed_form: 2 * (md - m) + 1,
                matchings: matches(m - i + 2, md - i + 2),
            });
        }
    }
    let ts = i.max(jb + 1);
    out.push(SegmentCount {
        kind: "tail",
        start: ts,
        end: j + 1,
        projections: proj(ts, j + 1),
        closed_form: j - ts + 2,
        matchings: None,
    });
    Ok(out)
}

/// Compares the multiset `{m^ε f^ε}` with the multiset of expansion terms.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub gamma_size: usize,
    pub matching_count: usize,
    pub multisets_equal: bool,
    pub terms_distinct: bool,
}

pub fn empirical_bijection_check(h: &HeightFunction, i: usize, j: usize) -> Result<BijectionReport, ExpansionError> {
    let ex = expand(h, i, j)?;
    let mut a: Vec<Monomial> =
        gamma_set(h, i, j).iter().map(|e| m_monomial(h, e, j).mul(&f_monomial(h, e, j))).collect();
    let mut b: Vec<Monomial> = ex.terms.iter().map(|t| t.value.clone()).collect();
    a.sort();
    b.sort();
    let mut c = b.clone();
    c.dedup();
    Ok(BijectionReport {
        gamma_size: a.len(),
        matching_count: b.len(),
        multisets_equal: a == b,
        terms_distinct: c.len() == b.len(),
    })
}
