//! Height functions on the `A_n` Dynkin diagram and the ice quiver `Q_ξ`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("height function needs n >= 2, got {0}")]
    TooShort(usize),
    #[error("|xi({0}) - xi({1})| must be 1")]
    NotAdjacent(usize, usize),
    #[error("index {0} outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("interval {0}:{1} is not valid for n = {2}")]
    BadInterval(usize, usize, usize),
}

/// A height function `ξ : {1..n} → Z` with `|ξ(i) - ξ(i+1)| = 1`.
///
/// `xi(0)` and `xi(n+1)` are the extension `ξ(0) = ξ(2)`, `ξ(n+1) = ξ(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HeightSpec", into = "HeightSpec")]
pub struct HeightFunction {
    ext: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct HeightSpec {
    #[serde(default)]
    n: Option<usize>,
    xi: Vec<i64>,
}

impl TryFrom<HeightSpec> for HeightFunction {
    type Error = QuiverError;
    fn try_from(s: HeightSpec) -> Result<Self, QuiverError> {
        if let Some(n) = s.n {
            if n != s.xi.len() {
                return Err(QuiverError::OutOfRange(s.xi.len(), n));
            }
        }
        HeightFunction::new(s.xi)
    }
}

impl From<HeightFunction> for HeightSpec {
    fn from(h: HeightFunction) -> Self {
        HeightSpec { n: Some(h.n()), xi: h.values().to_vec() }
    }
}

impl HeightFunction {
    pub fn new(values: Vec<i64>) -> Result<Self, QuiverError> {
        let n = values.len();
        if n < 2 {
            return Err(QuiverError::TooShort(n));
        }
        for k in 1..n {
            if (values[k] - values[k - 1]).abs() != 1 {
                return Err(QuiverError::NotAdjacent(k, k + 1));
            }
        }
        let mut ext = Vec::with_capacity(n + 2);
        ext.push(values[1]);
        ext.extend_from_slice(&values);
        ext.push(values[n - 2]);
        Ok(HeightFunction { ext })
    }

    /// Height function from a start value and step signs (`true` = +1).
    pub fn from_steps(start: i64, steps: &[bool]) -> Result<Self, QuiverError> {
        let mut v = vec![start];
        for &s in steps {
            let last = *v.last().unwrap();
            v.push(if s { last + 1 } else { last - 1 });
        }
        Self::new(v)
    }

    /// All height functions of rank `n` with `ξ(1) = 0`, in step-bit order.
    pub fn all_normalized(n: usize) -> Vec<HeightFunction> {
        (0..1u64 << (n - 1))
            .map(|bits| {
                let steps: Vec<bool> = (0..n - 1).map(|k| bits >> k & 1 == 1).collect();
                Self::from_steps(0, &steps).unwrap()
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.ext.len() - 2
    }

    /// `ξ(k)` for `0 <= k <= n+1`.
    pub fn xi(&self, k: usize) -> i64 {
        self.ext[k]
    }

    pub fn values(&self) -> &[i64] {
        &self.ext[1..self.ext.len() - 1]
    }

    pub fn check_interval(&self, i: usize, j: usize) -> Result<(), QuiverError> {
        if i < 1 || i > j || j > self.n() {
            return Err(QuiverError::BadInterval(i, j, self.n()));
        }
        Ok(())
    }

    /// Vertex `i` is a source or sink: `i = n` or `ξ(i) = ξ(i+2)`.
    pub fn is_source_or_sink(&self, i: usize) -> bool {
        i == self.n() || (i >= 1 && i < self.n() && self.xi(i) == self.xi(i + 2))
    }

    pub fn sources_sinks(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.is_source_or_sink(i)).collect()
    }

    /// `i⋄`: the least source or sink `>= i`.
    pub fn diamond(&self, i: usize) -> usize {
        (i..=self.n()).find(|&l| self.is_source_or_sink(l)).unwrap_or(self.n())
    }

    /// `δ_{i,i⋄}`, with indices outside `1..=n` counting as 0.
    pub fn d(&self, i: usize) -> i64 {
        (i >= 1 && i <= self.n() && self.diamond(i) == i) as i64
    }

    /// `j•`: 0 when `j <= 1⋄`, otherwise the greatest source or sink `< j`.
    pub fn bullet(&self, j: usize) -> usize {
        if j <= self.diamond(1) {
            return 0;
        }
        (1..j).rev().find(|&l| self.is_source_or_sink(l)).unwrap_or(0)
    }

    /// `k̄`: `k+1` if `k ≠ k⋄`, else `k•+1`.
    pub fn bar(&self, k: usize) -> usize {
        if self.diamond(k) != k {
            k + 1
        } else {
            self.bullet(k) + 1
        }
    }

    /// Step sign between `k` and `k+1` (uses the extension at `k = n`).
    pub fn goes_down(&self, k: usize) -> bool {
        self.xi(k) == self.xi(k + 1) + 1
    }
}

impl fmt::Display for HeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Quiver vertex: a mutable `i` or a frozen `i'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Mutable(u32),
    Frozen(u32),
}

impl Vertex {
    pub fn is_frozen(&self) -> bool {
        matches!(self, Vertex::Frozen(_))
    }

    pub fn index(&self) -> u32 {
        match *self {
            Vertex::Mutable(i) | Vertex::Frozen(i) => i,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Mutable(i) => write!(f, "{i}"),
            Vertex::Frozen(i) => write!(f, "{i}'"),
        }
    }
}

/// Quiver with arrow multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Quiver {
    vertices: BTreeSet<Vertex>,
    arrows: BTreeMap<(Vertex, Vertex), u32>,
}

impl Quiver {
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Quiver { vertices: vertices.into_iter().collect(), arrows: BTreeMap::new() }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn add_arrows(&mut self, from: Vertex, to: Vertex, k: u32) {
        if k > 0 {
            self.vertices.insert(from);
            self.vertices.insert(to);
            *self.arrows.entry((from, to)).or_insert(0) += k;
        }
    }

    pub fn multiplicity(&self, from: Vertex, to: Vertex) -> u32 {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn has_arrow(&self, from: Vertex, to: Vertex) -> bool {
        self.multiplicity(from, to) > 0
    }

    /// Arrows `(from, to, multiplicity)` in sorted order.
    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.arrows.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn arrow_count(&self) -> u32 {
        self.arrows.values().sum()
    }

    pub fn incoming(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows.iter().filter(|(k, _)| k.1 == v).map(|(k, &m)| (k.0, m)).collect()
    }

    pub fn outgoing(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows.iter().filter(|(k, _)| k.0 == v).map(|(k, &m)| (k.1, m)).collect()
    }

    /// Fomin-Zelevinsky mutation at a mutable vertex.
    pub fn mutate(&self, k: Vertex) -> Quiver {
        assert!(!k.is_frozen(), "cannot mutate at a frozen vertex");
        let mut arrows: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
        let inc = self.incoming(k);
        let out = self.outgoing(k);
        for &(u, a) in &inc {
            for &(v, b) in &out {
                if !(u.is_frozen() && v.is_frozen()) {
                    *arrows.entry((u, v)).or_insert(0) += a * b;
                }
            }
        }
        for (&(u, v), &m) in self.arrows.iter() {
            let key = if u == k || v == k { (v, u) } else { (u, v) };
            *arrows.entry(key).or_insert(0) += m;
        }
        let keys: Vec<(Vertex, Vertex)> = arrows.keys().copied().collect();
        for (u, v) in keys {
            if u < v {
                let a = arrows.get(&(u, v)).copied().unwrap_or(0);
                let b = arrows.get(&(v, u)).copied().unwrap_or(0);
                let c = a.min(b);
                if c > 0 {
                    arrows.insert((u, v), a - c);
                    arrows.insert((v, u), b - c);
                }
            }
        }
        arrows.retain(|_, m| *m > 0);
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Full subquiver on the given vertices.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> Quiver {
        Quiver {
            vertices: self.vertices.iter().copied().filter(|&v| keep(v)).collect(),
            arrows: self.arrows.iter().filter(|(k, _)| keep(k.0) && keep(k.1)).map(|(&k, &m)| (k, m)).collect(),
        }
    }

    /// True when some pair of vertices carries arrows both ways.
    pub fn has_two_cycle(&self) -> bool {
        self.arrows.keys().any(|&(a, b)| self.arrows.contains_key(&(b, a)))
    }

    /// Graphviz export with frozen vertices drawn as boxes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n  rankdir=LR;\n");
        for v in self.vertices.iter() {
            let shape = if v.is_frozen() { "box" } else { "circle" };
            s.push_str(&format!("  \"{v}\" [shape={shape}];\n"));
        }
        for (&(a, b), &m) in self.arrows.iter() {
            for _ in 0..m {
                s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows()
            .map(|(a, b, m)| if m == 1 { format!("{a}->{b}") } else { format!("{a}->{b} x{m}") })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// The ice quiver `Q_ξ`: mutable `1..n`, frozen `1'..n'`.
pub fn build_quiver(h: &HeightFunction) -> Quiver {
    let n = h.n() as u32;
    let mut q = Quiver::new((1..=n).map(Vertex::Mutable).chain((1..=n).map(Vertex::Frozen)));
    let inside = |v: Vertex| (1..=n).contains(&v.index());
    for i in 1..=n {
        let (m, f) = (Vertex::Mutable, Vertex::Frozen);
        let mut local = vec![(m(i), m(i.wrapping_sub(1))), (f(i), m(i))];
        if h.diamond(i as usize) == i as usize {
            local.push((m(i), m(i + 1)));
        } else {
            local.push((m(i + 1), m(i)));
            local.push((m(i), f(i + 1)));
        }
        let down = h.goes_down(i as usize);
        for (a, b) in local {
            let (a, b) = if down { (a, b) } else { (b, a) };
            if inside(a) && inside(b) && !q.has_arrow(a, b) {
                q.add_arrows(a, b, 1);
            }
        }
    }
    q
}

/// Mutable subquiver of `Q_ξ` as the sign of each step `ξ(k+1) - ξ(k)`.
///
/// The arrow between `k` and `k+1` points right exactly when the next step
/// goes up, so the mutable part fixes every step except the first.
pub fn steps_from_mutable_subquiver(q: &Quiver, n: usize) -> Option<Vec<Option<bool>>> {
    let mut steps = vec![None; n - 1];
    for k in 1..n - 1 {
        let right = q.has_arrow(Vertex::Mutable(k as u32), Vertex::Mutable(k as u32 + 1));
        let left = q.has_arrow(Vertex::Mutable(k as u32 + 1), Vertex::Mutable(k as u32));
        if right == left {
            return None;
        }
        steps[k] = Some(right);
    }
    let last_right = q.has_arrow(Vertex::Mutable(n as u32 - 1), Vertex::Mutable(n as u32));
    match steps[n - 2] {
        Some(s) if s == last_right => return None,
        _ => steps[n - 2] = Some(!last_right),
    }
    Some(steps)
}

/// Statistics table for every vertex: `(i, i⋄, i•, ī, source/sink)`.
pub fn statistics(h: &HeightFunction) -> Vec<(usize, usize, usize, usize, bool)> {
    (1..=h.n()).map(|i| (i, h.diamond(i), h.bullet(i), h.bar(i), h.is_source_or_sink(i))).collect()
}

/// Aligned text table with rows `I`, `xi`, `i◇`, `i•`, `ī`.
pub fn stats_table(h: &HeightFunction) -> String {
    let stats = statistics(h);
    let rows: [(&str, Vec<i64>); 5] = [
        ("I", stats.iter().map(|s| s.0 as i64).collect()),
        ("xi", (1..=h.n()).map(|k| h.xi(k)).collect()),
        ("i◇", stats.iter().map(|s| s.1 as i64).collect()),
        ("i•", stats.iter().map(|s| s.2 as i64).collect()),
        ("ī", stats.iter().map(|s| s.3 as i64).collect()),
    ];
    let w = rows.iter().flat_map(|r| r.1.iter()).map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for (name, vals) in rows.iter() {
        let pad = 2 - name.chars().count().min(2);
        out.push_str(name);
        out.push_str(&" ".repeat(pad));
        out.push_str(" |");
        for v in vals {
            out.push_str(&format!(" {:>w$}", v, w = w));
        }
        out.push('\n');
    }
    out
}
