//! q-characters of type `A_n` modules: fundamentals and Kirillov-Reshetikhin
//! modules by a Frenkel-Mukhin closure, and Hernandez-Leclerc modules by two
//! independent routes.

use crate::algebra::{AlgebraError, Generator, LaurentPolynomial, Monomial, Poly};
use crate::expansion::{expand, ExpansionError};
use crate::hl::{self, check_hl, dictionary, reconstruct, HlViolation, ReconstructError};
use crate::quiver::HeightFunction;
use num_traits::ToPrimitive;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// A q-character: Laurent polynomial in the `Y_{i,r}` with multiplicities.
pub type QChar = LaurentPolynomial<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QCharError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Hl(#[from] HlViolation),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
}

fn y(i: u32, r: i32) -> Generator {
    Generator::Y(i, r)
}

/// `A_{i,r} = Y_{i,r-1} Y_{i,r+1} Y_{i-1,r}^{-1} Y_{i+1,r}^{-1}`, with `Y_0 = Y_{n+1} = 1`.
pub fn a_monomial(n: usize, i: u32, r: i32) -> Monomial {
    let mut pairs = vec![(y(i, r - 1), 1), (y(i, r + 1), 1)];
    if i > 1 {
        pairs.push((y(i - 1, r), -1));
    }
    if (i as usize) < n {
        pairs.push((y(i + 1, r), -1));
    }
    Monomial::from_pairs(pairs)
}

/// Decomposes `u` as `∏ A_{i,r}^{c_{i,r}}`, peeling the lowest spectral parameter first.
pub fn a_exponents(n: usize, u: &Monomial) -> Option<BTreeMap<(u32, i32), i64>> {
    let mut cur = u.clone();
    let mut out: BTreeMap<(u32, i32), i64> = BTreeMap::new();
    let max_r = u.iter().map(|(g, _)| spectral(g)).max().unwrap_or(0);
    while !cur.is_one() {
        let (g, e) = cur.iter().min_by_key(|(g, _)| (spectral(*g), g.index()))?;
        let (i, r) = match g {
            Generator::Y(i, r) => (i, r),
            _ => return None,
        };
        if r > max_r + 2 * n as i32 + 4 {
            return None;
        }
        *out.entry((i, r + 1)).or_insert(0) += e as i64;
        cur = cur.div(&a_monomial(n, i, r + 1).pow(e));
    }
    out.retain(|_, c| *c != 0);
    Some(out)
}

fn spectral(g: Generator) -> i32 {
    match g {
        Generator::Y(_, r) => r,
        _ => i32::MIN,
    }
}

/// sl2 q-strings in general position covering the multiset of spectral parameters.
fn strings(mut points: Vec<i32>) -> Vec<(i32, usize)> {
    points.sort();
    let mut out = Vec::new();
    while let Some(&a) = points.first() {
        let mut len = 0;
        let mut next = a;
        while let Some(pos) = points.iter().position(|&p| p == next) {
            points.remove(pos);
            len += 1;
            next += 2;
        }
        out.push((a, len));
    }
    out
}

/// Monomials of the sl2 module with highest weight `∏ Y_{r}^{e_r}`, as lists of `A_r^{-1}`.
fn sl2_lowering(points: Vec<i32>) -> Vec<Vec<i32>> {
    let mut acc: Vec<Vec<i32>> = vec![vec![]];
    for (a, k) in strings(points) {
        let top = a + 2 * k as i32 - 1;
        let mut next = Vec::new();
        for base in &acc {
            for s in 0..=k {
                let mut v = base.clone();
                v.extend((0..s).map(|t| top - 2 * t as i32));
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Frenkel-Mukhin closure from a dominant monomial, for thin special modules
/// such as fundamental and Kirillov-Reshetikhin modules of type A.
pub fn fm_closure(n: usize, top: &Monomial) -> QChar {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = vec![top.clone()];
    seen.insert(top.clone());
    while let Some(m) = queue.pop() {
        for i in 1..=n as u32 {
            let part: Vec<(i32, i32)> = m
                .iter()
                .filter_map(|(g, e)| match g {
                    Generator::Y(k, r) if k == i => Some((r, e)),
                    _ => None,
                })
                .collect();
            if part.is_empty() || part.iter().any(|&(_, e)| e < 0) {
                continue;
            }
            let points: Vec<i32> = part.iter().flat_map(|&(r, e)| std::iter::repeat_n(r, e as usize)).collect();
            for lower in sl2_lowering(points) {
                let mut m2 = m.clone();
                for r in lower {
                    m2 = m2.div(&a_monomial(n, i, r));
                }
                if seen.insert(m2.clone()) {
                    queue.push(m2);
                }
            }
        }
    }
    QChar::from_terms(seen.into_iter().map(|m| (m, 1)))
}

pub fn fundamental(n: usize, i: u32, a: i32) -> QChar {
    fm_closure(n, &Monomial::var(y(i, a)))
}

/// Kirillov-Reshetikhin module `L(Y_{i,a} Y_{i,a+2})`.
pub fn kr2(n: usize, i: u32, a: i32) -> QChar {
    fm_closure(n, &Monomial::from_pairs([(y(i, a), 1), (y(i, a + 2), 1)]))
}

/// Monomials `m` of `q` dominating all others: every `m'/m` is a product of `A^{-1}`.
pub fn highest_monomials(n: usize, q: &QChar) -> Vec<Monomial> {
    extremal(n, q, -1)
}

/// Monomials `m` dominated by all others.
pub fn lowest_monomials(n: usize, q: &QChar) -> Vec<Monomial> {
    extremal(n, q, 1)
}

fn extremal(n: usize, q: &QChar, sign: i64) -> Vec<Monomial> {
    let ms: Vec<&Monomial> = q.monomials().collect();
    ms.iter()
        .filter(|m| {
            ms.iter().all(|o| match a_exponents(n, &o.div(m)) {
                Some(c) => c.values().all(|&v| v * sign >= 0),
                None => false,
            })
        })
        .map(|m| (*m).clone())
        .collect()
}

/// Multiset intersection size `Σ min(c_1(m), c_2(m))`.
pub fn overlap(a: &QChar, b: &QChar) -> i64 {
    a.terms().map(|(m, c)| (*c).min(b.coefficient(m)).max(0)).sum()
}

/// Total multiplicity.
pub fn dimension(q: &QChar) -> i64 {
    q.coefficient_sum()
}

/// Cache of `χ_q(ι(x_ℓ))` and `χ_q(ι(x'_ℓ))`.
struct IotaTable {
    h: HeightFunction,
    cache: HashMap<Generator, QChar>,
}

impl IotaTable {
    fn get(&mut self, g: Generator) -> QChar {
        let n = self.h.n();
        let l = g.index() as usize;
        if l < 1 || l > n {
            return QChar::one();
        }
        let h = &self.h;
        self.cache
            .entry(g)
            .or_insert_with(|| match g {
                Generator::X(_) => fundamental(n, l as u32, h.xi(l + 1) as i32),
                Generator::XPrime(_) => kr2(n, l as u32, h.xi(l) as i32 - 1),
                _ => QChar::monomial(Monomial::var(g)),
            })
            .clone()
    }
}

/// `χ_q ∘ ι` applied to a Laurent polynomial in `x`, `x'`.
///
/// The polynomial is cleared of denominators, substituted, and divided exactly
/// by the substituted denominator one factor at a time.
pub fn iota_substitute(h: &HeightFunction, p: &Poly) -> Result<QChar, QCharError> {
    let mut table = IotaTable { h: h.clone(), cache: HashMap::new() };
    let gens: BTreeSet<Generator> = p.monomials().flat_map(|m| m.iter().map(|(g, _)| g)).collect();
    let denom: Vec<(Generator, i32)> =
        gens.into_iter().map(|g| (g, -p.min_exponent(g))).filter(|&(_, e)| e > 0).collect();
    let cleared = p.mul_monomial(&Monomial::from_pairs(denom.clone()));
    let mut num = QChar::zero();
    for (m, c) in cleared.terms() {
        let c = c.to_i64().ok_or(QCharError::Overflow)?;
        let mut t = QChar::constant(c);
        for (g, e) in m.iter() {
            for _ in 0..e {
                t = &t * &table.get(g);
            }
        }
        num = &num + &t;
    }
    for (g, e) in denom {
        for _ in 0..e {
            num = num.div_exact(&table.get(g))?;
        }
    }
    Ok(num)
}

/// `χ_q(ι(x[α_{i,j}]))` from the snake-graph expansion.
pub fn qchar_hl_snake(h: &HeightFunction, i: usize, j: usize) -> Result<QChar, QCharError> {
    let ex = expand(h, i, j)?;
    iota_substitute(h, &ex.polynomial())
}

/// `χ_q(L(m))` for an HL monomial, by the product identity.
///
/// With `(ξ, i, j)` reconstructed from `m`, vertex `j-1` is a source or sink and
/// `χ(x[α_{i,j}]) = χ(x[α_{i,j-1}]) χ(x[α_{j,j}]) - χ(correction)`, where all
/// factors on the right have shorter monomials or are fundamental or KR.
pub fn qchar_hl_monomial(n: usize, m: &Monomial) -> Result<QChar, QCharError> {
    let mut memo = BTreeMap::new();
    hl_rec(n, m, &mut memo)
}

/// A factor in the product identity: an HL module or a KR module `L(Y_{i,a} Y_{i,a+2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Hl(Monomial),
    Kr2(u32, i32),
}

impl Factor {
    pub fn highest(&self) -> Monomial {
        match self {
            Factor::Hl(m) => m.clone(),
            Factor::Kr2(i, a) => Monomial::from_pairs([(y(*i, *a), 1), (y(*i, *a + 2), 1)]),
        }
    }
}

/// `χ(L(m)) = ∏ product - ∏ correction`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub product: Vec<Factor>,
    pub correction: Vec<Factor>,
}

/// One step of the product identity for an HL monomial with at least two factors.
pub fn decompose(n: usize, m: &Monomial) -> Result<Option<Decomposition>, QCharError> {
    let f = check_hl(m, n)?;
    if f.len() == 1 {
        return Ok(None);
    }
    let rec = reconstruct(m, n)?;
    let (h, i, j) = (&rec.xi, rec.i, rec.j);
    let jm = j - 1;
    let jb = h.bullet(jm);
    let delta = |a: usize, b: usize| (a == b) as i64;
    let a = 1 - delta(i, jb);
    let b = 1.min((1 - delta(jb, h.bullet(i))) * h.d(jb.saturating_sub(1)) + delta(jb, i));
    let dn = h.d(j);
    let k = (i - 1).max(jb.saturating_sub(1));
    let mut corr = Vec::new();
    if a == 1 {
        if k >= i {
            corr.push(Factor::Hl(dictionary(h, i, k)));
        } else if k >= 1 {
            corr.push(Factor::Hl(Monomial::var(y(k as u32, h.xi(k + 1) as i32))));
        }
    }
    if b == 1 {
        let v = i.max(jb);
        corr.push(Factor::Kr2(v as u32, h.xi(v) as i32 - 1));
    }
    if j < n {
        corr.push(if dn == 1 {
            Factor::Hl(Monomial::var(y(j as u32 + 1, h.xi(j + 2) as i32)))
        } else {
            Factor::Kr2(j as u32 + 1, h.xi(j + 1) as i32 - 1)
        });
    }
    Ok(Some(Decomposition {
        product: vec![Factor::Hl(dictionary(h, i, jm)), Factor::Hl(dictionary(h, j, j))],
        correction: corr,
    }))
}

fn factor_qchar(n: usize, f: &Factor, memo: &mut BTreeMap<Monomial, QChar>) -> Result<QChar, QCharError> {
    match f {
        Factor::Hl(m) => hl_rec(n, m, memo),
        Factor::Kr2(i, a) => Ok(kr2(n, *i, *a)),
    }
}

/// Product of the q-characters of `fs`.
pub fn product_qchar(n: usize, fs: &[Factor]) -> Result<QChar, QCharError> {
    let mut memo = BTreeMap::new();
    let mut out = QChar::one();
    for f in fs {
        out = &out * &factor_qchar(n, f, &mut memo)?;
    }
    Ok(out)
}

fn hl_rec(n: usize, m: &Monomial, memo: &mut BTreeMap<Monomial, QChar>) -> Result<QChar, QCharError> {
    if let Some(q) = memo.get(m) {
        return Ok(q.clone());
    }
    let q = match decompose(n, m)? {
        None => {
            let f = check_hl(m, n)?;
            fundamental(n, f[0].0, f[0].1)
        }
        Some(d) => {
            let mut prod = QChar::one();
            for f in &d.product {
                prod = &prod * &factor_qchar(n, f, memo)?;
            }
            let mut corr = QChar::one();
            for f in &d.correction {
                corr = &corr * &factor_qchar(n, f, memo)?;
            }
            &prod - &corr
        }
    };
    memo.insert(m.clone(), q.clone());
    Ok(q)
}

/// `χ_q(ι(x[α_{i,j}]))` by the product identity.
pub fn qchar_hl(h: &HeightFunction, i: usize, j: usize) -> Result<QChar, QCharError> {
    qchar_hl_monomial(h.n(), &dictionary(h, i, j))
}

/// Lowest monomial predicted for `L(m)` from the fundamental factors.
pub fn predicted_lowest(n: usize, m: &Monomial) -> Monomial {
    hl::lowest_of(n, m)
}

/// Prime modulus for randomised identity checks.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn signed_pow(b: u64, e: i64) -> u64 {
    if e >= 0 {
        powmod(b, e as u64)
    } else {
        powmod(powmod(b, MODULUS - 2), (-e) as u64)
    }
}

fn coeff_mod(c: i64) -> u64 {
    (c as i128).rem_euclid(MODULUS as i128) as u64
}

/// Value of a q-character modulo [`MODULUS`] at `Y_{i,r} ↦ point(i, r)`.
pub fn evaluate_mod(q: &QChar, point: &impl Fn(u32, i32) -> u64) -> u64 {
    q.terms().fold(0, |acc, (m, c)| {
        let v = m.iter().fold(coeff_mod(*c), |a, (g, e)| match g {
            Generator::Y(i, r) => mulmod(a, signed_pow(point(i, r), e as i64)),
            _ => a,
        });
        (acc + v) % MODULUS
    })
}

/// Value of `χ_q(ι(p))` modulo [`MODULUS`], computed in the fraction field.
pub fn evaluate_iota_mod(h: &HeightFunction, p: &Poly, point: &impl Fn(u32, i32) -> u64) -> Result<u64, QCharError> {
    let mut table = IotaTable { h: h.clone(), cache: HashMap::new() };
    let mut vals: HashMap<Generator, u64> = HashMap::new();
    let mut acc = 0;
    for (m, c) in p.terms() {
        let c = c.to_i64().ok_or(QCharError::Overflow)?;
        let mut v = coeff_mod(c);
        for (g, e) in m.iter() {
            let base = *vals.entry(g).or_insert_with(|| evaluate_mod(&table.get(g), point));
            if base == 0 {
                return Err(QCharError::Algebra(AlgebraError::DivisionByZero));
            }
            v = mulmod(v, signed_pow(base, e as i64));
        }
        acc = (acc + v) % MODULUS;
    }
    Ok(acc)
}

/// Randomised comparison of the snake route and the product-identity route:
/// both sides are evaluated at `trials` pseudo-random points modulo a prime.
pub fn routes_agree_mod(h: &HeightFunction, i: usize, j: usize, trials: u32, seed: u64) -> Result<bool, QCharError> {
    let rec = qchar_hl(h, i, j)?;
    let p = expand(h, i, j)?.polynomial();
    for t in 0..trials {
        let s = seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let point = move |a: u32, r: i32| {
            let mut z = s ^ ((a as u64) << 32) ^ (r as u32 as u64);
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            (z ^ (z >> 31)) % (MODULUS - 1) + 1
        };
        if evaluate_mod(&rec, &point) != evaluate_iota_mod(h, &p, &point)? {
            return Ok(false);
        }
    }
    Ok(true)
}
