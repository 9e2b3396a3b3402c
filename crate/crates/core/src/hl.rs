//! Hernandez-Leclerc dominant monomials, `ω(i,j)`, the cluster dictionary `ι`
//! and the reconstruction of a height function from a monomial.

use crate::algebra::{Generator, Monomial};
use crate::quiver::{HeightFunction, QuiverError};
use serde::Serialize;
use thiserror::Error;

/// Which defining condition a monomial breaks first.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum HlViolation {
    #[error("empty monomial")]
    Empty,
    #[error("not a dominant product of Y[i,r]")]
    NotDominant,
    #[error("condition (i): nodes must be strictly increasing (factor {0})")]
    Increasing(usize),
    #[error("condition (ii): spectral shifts must alternate (factor {0})")]
    Alternating(usize),
    #[error("condition (iii): |a_j - a_(j-1)| must equal i_j - i_(j-1) + 2 (factor {0})")]
    Gap(usize),
    #[error("node {0} outside 1..={1}")]
    NodeOutOfRange(u32, usize),
}

/// A monomial `Y_{i_1,a_1} ⋯ Y_{i_k,a_k}` given as its factor list.
pub fn factors(m: &Monomial) -> Result<Vec<(u32, i32)>, HlViolation> {
    let mut out = Vec::new();
    for (g, e) in m.iter() {
        match g {
            Generator::Y(i, r) if e > 0 => {
                for _ in 0..e {
                    out.push((i, r));
                }
            }
            _ => return Err(HlViolation::NotDominant),
        }
    }
    Ok(out)
}

pub fn y_monomial(fs: &[(u32, i32)]) -> Monomial {
    Monomial::from_pairs(fs.iter().map(|&(i, r)| (Generator::Y(i, r), 1)))
}

/// Checks the three HL conditions, returning the factor list on success.
pub fn check_hl(m: &Monomial, n: usize) -> Result<Vec<(u32, i32)>, HlViolation> {
    let f = factors(m)?;
    if f.is_empty() {
        return Err(HlViolation::Empty);
    }
    for &(i, _) in &f {
        if i < 1 || i as usize > n {
            return Err(HlViolation::NodeOutOfRange(i, n));
        }
    }
    for k in 1..f.len() {
        if f[k].0 <= f[k - 1].0 {
            return Err(HlViolation::Increasing(k + 1));
        }
    }
    for k in 1..f.len().saturating_sub(1) {
        let d1 = (f[k].1 - f[k - 1].1) as i64;
        let d2 = (f[k + 1].1 - f[k].1) as i64;
        if d1 * d2 >= 0 {
            return Err(HlViolation::Alternating(k + 1));
        }
    }
    for k in 1..f.len() {
        if (f[k].1 - f[k - 1].1).unsigned_abs() != f[k].0 - f[k - 1].0 + 2 {
            return Err(HlViolation::Gap(k + 1));
        }
    }
    Ok(f)
}

/// `ω(i,j)` for `i < j`: nodes `i`, the turning points strictly between, and `j`.
pub fn omega(h: &HeightFunction, i: usize, j: usize) -> Monomial {
    assert!(1 <= i && i < j && j <= h.n(), "omega needs 1 <= i < j <= n");
    let mut nodes = vec![i];
    nodes.extend((i + 1..j).filter(|&p| h.xi(p - 1) == h.xi(p + 1)));
    nodes.push(j);
    let mut fs = vec![(i as u32, (2 * h.xi(i) - h.xi(i + 1)) as i32)];
    for &p in &nodes[1..] {
        fs.push((p as u32, (2 * h.xi(p) - h.xi(p - 1)) as i32));
    }
    y_monomial(&fs)
}

/// `ι(x[α_{i,j}])`: the highest monomial of the HL module of `x[α_{i,j}]`.
pub fn dictionary(h: &HeightFunction, i: usize, j: usize) -> Monomial {
    if j == h.diamond(i) {
        y_monomial(&[(i as u32, (2 * h.xi(i) - h.xi(i + 1)) as i32)])
    } else {
        omega(h, i, h.bar(j))
    }
}

/// `ι(x_ℓ) = Y_{ℓ, ξ(ℓ+1)}`.
pub fn iota_x(h: &HeightFunction, l: usize) -> Monomial {
    y_monomial(&[(l as u32, h.xi(l + 1) as i32)])
}

/// `ι(x'_ℓ) = Y_{ℓ, ξ(ℓ)-1} Y_{ℓ, ξ(ℓ)+1}`.
pub fn iota_xprime(h: &HeightFunction, l: usize) -> Monomial {
    let r = h.xi(l) as i32;
    y_monomial(&[(l as u32, r - 1), (l as u32, r + 1)])
}

/// Highest monomial of a cluster monomial in `x`, `x'` under `ι`.
///
/// Generators indexed outside `1..=n` are ignored.
pub fn iota_monomial(h: &HeightFunction, m: &Monomial) -> Monomial {
    let mut out = Monomial::one();
    for (g, e) in m.iter() {
        let l = g.index() as usize;
        if l < 1 || l > h.n() {
            continue;
        }
        let base = match g {
            Generator::X(_) => iota_x(h, l),
            Generator::XPrime(_) => iota_xprime(h, l),
            _ => continue,
        };
        out = out.mul(&base.pow(e));
    }
    out
}

/// Lowest monomial of the fundamental module `L(Y_{i,a})`: `Y_{n+1-i, a+n+1}^{-1}`.
pub fn fundamental_lowest(n: usize, i: u32, a: i32) -> Monomial {
    Monomial::power(Generator::Y(n as u32 + 1 - i, a + n as i32 + 1), -1)
}

/// Lowest monomial of `L(m)` for a product of fundamentals, extended multiplicatively.
pub fn lowest_of(n: usize, m: &Monomial) -> Monomial {
    let mut out = Monomial::one();
    for (g, e) in m.iter() {
        if let Generator::Y(i, a) = g {
            out = out.mul(&fundamental_lowest(n, i, a).pow(e));
        }
    }
    out
}

/// Result of reconstructing a height function from an HL monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub xi: HeightFunction,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error(transparent)]
    NotHl(#[from] HlViolation),
    #[error(transparent)]
    Height(#[from] QuiverError),
    #[error("no interval reproduces the monomial")]
    NoInterval,
}

/// Builds `ξ` and `(i, j)` with `ι(x[α_{i,j}]) = m`.
///
/// The vertices `i_k - 1, …, n` come out as sources or sinks, and `j` is the
/// least index whose dictionary entry reproduces `m`.
pub fn reconstruct(m: &Monomial, n: usize) -> Result<Reconstruction, ReconstructError> {
    if n < 2 {
        return Err(QuiverError::TooShort(n).into());
    }
    let f = check_hl(m, n)?;
    let k = f.len();
    let i = f[0].0 as usize;
    let last = f[k - 1].0 as usize;
    let ascending_first = k == 1 || f[0].1 < f[1].1;
    // s = +1: first segment goes up.
    let s: i64 = if ascending_first { 1 } else { -1 };
    let mut v = vec![0i64; n + 2];
    v[i] = f[0].1 as i64 + s;
    for t in 0..k.saturating_sub(1) {
        let (p, q) = (f[t].0 as usize, f[t + 1].0 as usize);
        let dir = if t % 2 == 0 { s } else { -s };
        for x in p + 1..=q {
            v[x] = v[x - 1] + dir;
        }
    }
    for x in (1..i).rev() {
        v[x] = v[x + 1] + s;
    }
    if k == 1 {
        if i < n {
            v[i + 1] = v[i] + s;
        }
    }
    let start = if k == 1 { i + 1 } else { last };
    for x in start..n {
        v[x + 1] = v[x - 1];
    }
    let h = HeightFunction::new(v[1..=n].to_vec())?;
    for j in i..=n {
        if dictionary(&h, i, j) == *m {
            return Ok(Reconstruction { xi: h, i, j });
        }
    }
    Err(ReconstructError::NoInterval)
}
