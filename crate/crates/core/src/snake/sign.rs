use super::graph::{Side, SnakeGraph, Step};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

/// Signs of `e_0, …, e_d` and their run-length encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignData {
    /// `true` for `+`.
    pub signs: Vec<bool>,
    pub runs: Vec<usize>,
}

impl SignData {
    /// Partial sums `ℓ_0 = 0, ℓ_1, …, ℓ_n`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut v = vec![0];
        for &a in &self.runs {
            v.push(v.last().unwrap() + a);
        }
        v
    }

    /// 1-based indices of the tiles where the sign changes, `ℓ_1, …, ℓ_{n-1}`.
    pub fn sign_changed_tiles(&self) -> Vec<usize> {
        let l = self.partial_sums();
        l[1..l.len() - 1].to_vec()
    }

    pub fn render(&self) -> String {
        self.signs.iter().map(|&s| if s { '+' } else { '-' }).collect()
    }
}

fn entry_side(g: &SnakeGraph, t: usize) -> Side {
    if t == 0 {
        return Side::S;
    }
    match g.step(t - 1) {
        Step::East => Side::W,
        Step::North => Side::S,
    }
}

/// Sign function with `f(S(G_1)) = -`.
///
/// On each tile `N, W` share a sign and `S, E` carry the opposite one. The
/// closing edge `e_d` is the side of the last tile that keeps the sign.
pub fn sign_function(g: &SnakeGraph) -> SignData {
    let d = g.len();
    let mut signs = vec![false];
    for t in 0..d {
        let inn = entry_side(g, t);
        let out = if t + 1 < d {
            match g.step(t) {
                Step::East => Side::E,
                Step::North => Side::N,
            }
        } else if inn == Side::S {
            Side::E
        } else {
            Side::N
        };
        let keep = matches!((inn, out), (Side::S, Side::E) | (Side::W, Side::N));
        let prev = *signs.last().unwrap();
        signs.push(if keep { prev } else { !prev });
    }
    let mut runs = Vec::new();
    let mut k = 0;
    while k < signs.len() {
        let mut l = k;
        while l < signs.len() && signs[l] == signs[k] {
            l += 1;
        }
        runs.push(l - k);
        k = l;
    }
    SignData { signs, runs }
}

/// Continuant `N[a_1, …, a_n]`, with `N[] = 1`.
pub fn numerator(runs: &[usize]) -> BigUint {
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for &a in runs {
        let next = cur.clone() * BigUint::from(a) + prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Zigzag parts `H_1, …, H_n` as 0-based tile ranges (possibly empty).
pub fn zigzag_parts(sd: &SignData, d: usize) -> Vec<std::ops::Range<usize>> {
    let l = sd.partial_sums();
    let n = sd.runs.len();
    (1..=n)
        .map(|t| {
            let start = l[t - 1];
            let end = if t == n { d } else { l[t] - 1 };
            start..end.max(start)
        })
        .collect()
}
